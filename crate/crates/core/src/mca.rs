//! Multiple correspondence analysis of the cube's facts.
//!
//! The cube is flattened into the complete disjunctive table Z (one binary
//! column per modality, one 1 per dimension block per row), condensed into
//! the Burt table B = Z′Z, and the weighted eigenproblem
//! (1/d)·X⁻¹·B·φ = λ·φ is solved through its symmetric equivalent
//! W = (1/d)·X^{−1/2}·B·X^{−1/2}. Eigenvectors map back to modality
//! coordinates φ scaled so that Σ_j z_{.j}·φ_j² = n·d·λ, which makes every
//! axis's contributions sum to one.
//!
//! The trivial constant-coordinate solution (λ = 1) carries no association
//! information. Its eigenvector is known in closed form, so it is deflated
//! out of W before the solve; this stays correct even when λ = 1 is
//! degenerate and a variance test alone could not single the constant axis
//! out. Zero-weight (empty) modalities are excluded from the problem and
//! reported, since X would otherwise be singular.

use std::ops::Range;

use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::jacobi;

/// Eigenvalues at or below this threshold are structural zeros and dropped.
const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Backstop for the trivial axis: weighted coordinate spread below this is
/// a constant vector.
const COORDINATE_SPREAD_FLOOR: f64 = 1e-9;

/// Complete disjunctive table: n rows, one column block per dimension, each
/// row holding exactly one 1 inside each block.
///
/// Rows are stored sparsely as the d set-column indices; the binary view is
/// available through [`DisjunctiveTable::is_set`] and
/// [`DisjunctiveTable::dense_row`].
#[derive(Debug, Clone)]
pub struct DisjunctiveTable {
    n: usize,
    blocks: Vec<Range<usize>>,
    set_columns: Vec<u32>,
    column_sums: Vec<u64>,
}

impl DisjunctiveTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension count d.
    pub fn d(&self) -> usize {
        self.blocks.len()
    }

    /// Total column count p.
    pub fn p(&self) -> usize {
        self.blocks.last().map_or(0, |b| b.end)
    }

    /// Column range of each dimension block.
    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    /// Column sums z_{.j} (the weight of each modality in the cube).
    pub fn column_sums(&self) -> &[u64] {
        &self.column_sums
    }

    /// The d set columns of row i, in block order.
    pub fn row_columns(&self, i: usize) -> &[u32] {
        let d = self.d();
        &self.set_columns[i * d..(i + 1) * d]
    }

    pub fn is_set(&self, i: usize, j: usize) -> bool {
        self.row_columns(i).contains(&(j as u32))
    }

    /// Row i as a dense 0/1 vector of length p.
    pub fn dense_row(&self, i: usize) -> Vec<u8> {
        let mut row = vec![0u8; self.p()];
        for &j in self.row_columns(i) {
            row[j as usize] = 1;
        }
        row
    }
}

/// Flattens the cube by block-wise one-hot coding of every fact.
pub fn build_disjunctive(cube: &Cube) -> Result<DisjunctiveTable> {
    if cube.is_degenerate() {
        return Err(Error::EmptyCube);
    }
    let shape = cube.shape();
    let mut blocks = Vec::with_capacity(shape.len());
    let mut start = 0usize;
    for &p_t in &shape {
        blocks.push(start..start + p_t as usize);
        start += p_t as usize;
    }
    let p = start;
    let d = blocks.len();
    let n = cube.n();
    let mut set_columns = Vec::with_capacity(n * d);
    let mut column_sums = vec![0u64; p];
    for fact in cube.facts() {
        for (t, &j) in fact.coords.iter().enumerate() {
            let col = blocks[t].start + j as usize;
            set_columns.push(col as u32);
            column_sums[col] += 1;
        }
    }
    Ok(DisjunctiveTable {
        n,
        blocks,
        set_columns,
        column_sums,
    })
}

/// Burt table B = Z′Z: all pairwise cross-tabulations of the dimensions,
/// stacked into a p×p symmetric nonnegative integer matrix.
#[derive(Debug, Clone)]
pub struct BurtTable {
    order: usize,
    entries: Vec<u64>,
    diagonal_weights: Vec<u64>,
    n: usize,
    blocks: Vec<Range<usize>>,
}

impl BurtTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.order + j]
    }

    /// The diagonal of X (equal to the column sums of Z).
    pub fn diagonal_weights(&self) -> &[u64] {
        &self.diagonal_weights
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn trace(&self) -> u64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }
}

/// Accumulates B = Z′Z by iterating the set columns of each row.
pub fn burt(z: &DisjunctiveTable) -> BurtTable {
    let p = z.p();
    let mut entries = vec![0u64; p * p];
    for i in 0..z.n() {
        let cols = z.row_columns(i);
        for &a in cols {
            for &b in cols {
                entries[a as usize * p + b as usize] += 1;
            }
        }
    }
    let diagonal_weights = (0..p).map(|j| entries[j * p + j]).collect();
    BurtTable {
        order: p,
        entries,
        diagonal_weights,
        n: z.n(),
        blocks: z.blocks().to_vec(),
    }
}

/// One retained factorial axis: eigenvalue, p-long coordinate vector, and
/// its 1-based rank in descending-eigenvalue order.
#[derive(Debug, Clone)]
pub struct Axis {
    pub eigenvalue: f64,
    pub coordinates: Vec<f64>,
    pub axis_index: usize,
}

/// Retained axes of the MCA eigenproblem.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    axes: Vec<Axis>,
    dropped_modalities: Vec<usize>,
    blocks: Vec<Range<usize>>,
    n: usize,
    d: usize,
}

impl EigenSystem {
    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn retained_count(&self) -> usize {
        self.axes.len()
    }

    /// Looks an axis up by its 1-based index.
    pub fn axis(&self, axis_index: usize) -> Result<&Axis> {
        if axis_index == 0 || axis_index > self.axes.len() {
            return Err(Error::AxisOutOfRange {
                axis: axis_index,
                retained: self.axes.len(),
            });
        }
        Ok(&self.axes[axis_index - 1])
    }

    /// Global column indices of all-zero (empty) modalities excluded from
    /// the eigenproblem.
    pub fn dropped_modalities(&self) -> &[usize] {
        &self.dropped_modalities
    }

    pub fn is_dropped(&self, column: usize) -> bool {
        self.dropped_modalities.binary_search(&column).is_ok()
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[cfg(test)]
    pub(crate) fn new_for_tests(
        axes: Vec<Axis>,
        dropped_modalities: Vec<usize>,
        blocks: Vec<Range<usize>>,
        n: usize,
        d: usize,
    ) -> Self {
        EigenSystem {
            axes,
            dropped_modalities,
            blocks,
            n,
            d,
        }
    }
}

/// Solves the MCA eigenproblem for a Burt table.
///
/// Zero-weight columns are removed first. The symmetric matrix
/// W = (1/d)·X^{−1/2}·B·X^{−1/2} is deflated by the closed-form trivial
/// eigenvector and diagonalized with cyclic Jacobi rotations; surviving
/// eigenpairs (λ > 1e−12, at most p′−d of them) are mapped back to
/// coordinates, sign-fixed so the entry of largest magnitude is positive,
/// and ordered by descending eigenvalue.
pub fn solve_eigen(b: &BurtTable, d: usize) -> Result<EigenSystem> {
    if d == 0 || d != b.blocks().len() {
        return Err(Error::InvalidSchema(format!(
            "dimension count {d} does not match the Burt table's {} blocks",
            b.blocks().len()
        )));
    }
    let p = b.order();
    let weights = b.diagonal_weights();
    let live: Vec<usize> = (0..p).filter(|&j| weights[j] > 0).collect();
    let dropped: Vec<usize> = (0..p).filter(|&j| weights[j] == 0).collect();
    if live.is_empty() {
        return Err(Error::AllColumnsEmpty);
    }
    let q = live.len();
    let n = b.n() as f64;
    let df = d as f64;

    // Work in relative frequencies (B/n, z/n): duplicating the whole fact
    // multiset then leaves every intermediate bit-identical, and so the
    // eigenbasis too, even inside degenerate eigenspaces.
    let freq: Vec<f64> = live.iter().map(|&j| weights[j] as f64 / n).collect();
    let inv_sqrt: Vec<f64> = freq.iter().map(|f| 1.0 / f.sqrt()).collect();
    let mut w = vec![0.0; q * q];
    for (r, &jr) in live.iter().enumerate() {
        for (c, &jc) in live.iter().enumerate() {
            w[r * q + c] = b.get(jr, jc) as f64 / n / df * inv_sqrt[r] * inv_sqrt[c];
        }
    }
    // Deflate the trivial axis: its eigenvector is X^{1/2}·1 normalized.
    let trivial: Vec<f64> = freq.iter().map(|f| (f / df).sqrt()).collect();
    for r in 0..q {
        for c in 0..q {
            w[r * q + c] -= trivial[r] * trivial[c];
        }
    }

    let eig = jacobi::eigen_symmetric(w, q)?;

    let mut axes = Vec::new();
    for (lambda, vector) in eig.values.iter().zip(eig.vectors) {
        let lambda = *lambda;
        if lambda <= EIGENVALUE_FLOOR {
            continue;
        }
        // Remove any residual trivial component and renormalize.
        let mut vector = vector;
        let dot: f64 = vector.iter().zip(&trivial).map(|(v, t)| v * t).sum();
        for (v, t) in vector.iter_mut().zip(&trivial) {
            *v -= dot * t;
        }
        let norm: f64 = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        let scale = (df * lambda).sqrt() / norm;
        let mut coordinates = vec![0.0; p];
        for ((r, &j), inv) in live.iter().enumerate().zip(&inv_sqrt) {
            coordinates[j] = vector[r] * scale * inv;
        }
        if weighted_spread(&coordinates, live.iter().copied(), &freq, df) < COORDINATE_SPREAD_FLOOR
        {
            continue;
        }
        fix_sign(&mut coordinates);
        axes.push(Axis {
            eigenvalue: lambda,
            coordinates,
            axis_index: 0,
        });
    }

    axes.sort_by(|a, b| b.eigenvalue.partial_cmp(&a.eigenvalue).unwrap());
    let cap = q.saturating_sub(d);
    axes.truncate(cap);
    for (rank, axis) in axes.iter_mut().enumerate() {
        axis.axis_index = rank + 1;
    }

    Ok(EigenSystem {
        axes,
        dropped_modalities: dropped,
        blocks: b.blocks().to_vec(),
        n: b.n(),
        d,
    })
}

fn weighted_spread(
    coordinates: &[f64],
    live: impl Iterator<Item = usize> + Clone,
    freq: &[f64],
    d: f64,
) -> f64 {
    let mean: f64 = live
        .clone()
        .zip(freq)
        .map(|(j, f)| f * coordinates[j])
        .sum::<f64>()
        / d;
    let var: f64 = live
        .zip(freq)
        .map(|(j, f)| f * (coordinates[j] - mean) * (coordinates[j] - mean))
        .sum::<f64>()
        / d;
    var.sqrt()
}

/// Makes the coordinate of largest absolute value positive; on ties the
/// lowest column index decides.
fn fix_sign(coordinates: &mut [f64]) {
    let mut best = 0usize;
    for (j, phi) in coordinates.iter().enumerate() {
        if phi.abs() > coordinates[best].abs() {
            best = j;
        }
    }
    if coordinates[best] < 0.0 {
        for phi in coordinates.iter_mut() {
            *phi = -*phi;
        }
    }
}

/// Share of each axis's inertia explained by every modality and dimension.
#[derive(Debug, Clone)]
pub struct Contributions {
    per_modality: Vec<Vec<f64>>,
    per_dimension: Vec<Vec<f64>>,
}

impl Contributions {
    /// Cr_α(a_j): contribution of global modality column j to the axis at
    /// position `axis_pos` in the retained order.
    pub fn modality(&self, axis_pos: usize, column: usize) -> f64 {
        self.per_modality[axis_pos][column]
    }

    /// Cr_α(D_t): contribution of dimension t.
    pub fn dimension(&self, axis_pos: usize, dim: usize) -> f64 {
        self.per_dimension[axis_pos][dim]
    }

    pub fn per_modality(&self) -> &[Vec<f64>] {
        &self.per_modality
    }

    pub fn per_dimension(&self) -> &[Vec<f64>] {
        &self.per_dimension
    }

    #[cfg(test)]
    pub(crate) fn new_for_tests(per_modality: Vec<Vec<f64>>, per_dimension: Vec<Vec<f64>>) -> Self {
        Contributions {
            per_modality,
            per_dimension,
        }
    }
}

/// Contribution of modality j to axis α: z_{.j}·φ_{αj}² / (n·d·λ_α);
/// dimension contributions are the block sums.
pub fn contributions(eig: &EigenSystem, z: &DisjunctiveTable) -> Result<Contributions> {
    if z.p() != eig.blocks().last().map_or(0, |b| b.end) {
        return Err(Error::InvalidSchema(
            "disjunctive table and eigensystem disagree on column count".into(),
        ));
    }
    let nd = (z.n() as f64) * (z.d() as f64);
    let sums = z.column_sums();
    let mut per_modality = Vec::with_capacity(eig.axes().len());
    let mut per_dimension = Vec::with_capacity(eig.axes().len());
    for axis in eig.axes() {
        // A zero eigenvalue has no inertia to share; keep the row aligned
        // with the axis positions but all zero.
        let row: Vec<f64> = if axis.eigenvalue <= 0.0 {
            vec![0.0; z.p()]
        } else {
            let denom = nd * axis.eigenvalue;
            axis.coordinates
                .iter()
                .zip(sums)
                .map(|(phi, &w)| w as f64 * phi * phi / denom)
                .collect()
        };
        let dims: Vec<f64> = eig
            .blocks()
            .iter()
            .map(|block| row[block.clone()].iter().sum())
            .collect();
        per_modality.push(row);
        per_dimension.push(dims);
    }
    Ok(Contributions {
        per_modality,
        per_dimension,
    })
}

/// Worst-case row residual of the defining equation
/// (1/d)·X⁻¹·B·φ = λ·φ for one retained axis, evaluated over non-empty
/// modalities. Useful for cross-checking against external tools.
pub fn eigen_residual(b: &BurtTable, eig: &EigenSystem, axis_pos: usize) -> f64 {
    let axis = &eig.axes()[axis_pos];
    let p = b.order();
    let weights = b.diagonal_weights();
    let d = eig.d() as f64;
    let mut worst = 0.0f64;
    for (j, &weight) in weights.iter().enumerate() {
        if weight == 0 {
            continue;
        }
        let row: f64 = (0..p)
            .map(|k| b.get(j, k) as f64 * axis.coordinates[k])
            .sum();
        let lhs = row / (d * weight as f64);
        worst = worst.max((lhs - axis.eigenvalue * axis.coordinates[j]).abs());
    }
    worst
}

/// Structured text dump of B, X, λ and φ for cross-checking against
/// external statistics tools.
pub fn debug_dump(b: &BurtTable, eig: &EigenSystem) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    writeln!(out, "order = {}", b.order()).unwrap();
    writeln!(out, "n = {}", b.n()).unwrap();
    writeln!(out, "d = {}", eig.d()).unwrap();
    let weights: Vec<String> = b.diagonal_weights().iter().map(|w| w.to_string()).collect();
    writeln!(out, "x = [{}]", weights.join(", ")).unwrap();
    for i in 0..b.order() {
        let row: Vec<String> = (0..b.order()).map(|j| b.get(i, j).to_string()).collect();
        writeln!(out, "burt_{i} = [{}]", row.join(", ")).unwrap();
    }
    for axis in eig.axes() {
        writeln!(out, "lambda_{} = {}", axis.axis_index, axis.eigenvalue).unwrap();
        let coords: Vec<String> = axis.coordinates.iter().map(|c| c.to_string()).collect();
        writeln!(out, "phi_{} = [{}]", axis.axis_index, coords.join(", ")).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{Cube, CubeSchema, DimensionSpec, Fact};

    fn cube_2x2(facts: &[[u32; 2]]) -> Cube {
        let schema = CubeSchema::new(
            vec![
                DimensionSpec::new("P", vec!["a".into(), "b".into()]),
                DimensionSpec::new("Q", vec!["u".into(), "v".into()]),
            ],
            vec![],
        )
        .unwrap();
        let facts = facts
            .iter()
            .map(|c| Fact {
                coords: c.to_vec(),
                measures: vec![],
            })
            .collect();
        Cube::from_facts(schema, facts).unwrap()
    }

    #[test]
    fn disjunctive_rows_one_hot() {
        let cube = cube_2x2(&[[0, 0], [1, 1]]);
        let z = build_disjunctive(&cube).unwrap();
        assert_eq!(z.n(), 2);
        assert_eq!(z.p(), 4);
        assert_eq!(z.dense_row(0), vec![1, 0, 1, 0]);
        assert_eq!(z.dense_row(1), vec![0, 1, 0, 1]);
        assert_eq!(z.column_sums(), &[1, 1, 1, 1]);
        for i in 0..z.n() {
            let row_sum: u32 = z.dense_row(i).iter().map(|&v| v as u32).sum();
            assert_eq!(row_sum as usize, z.d());
        }
    }

    #[test]
    fn empty_cube_is_refused() {
        let schema = CubeSchema::new(
            vec![DimensionSpec::new("P", vec!["a".into(), "b".into()])],
            vec![],
        )
        .unwrap();
        let cube = Cube::from_facts(schema, vec![]).unwrap();
        assert!(matches!(build_disjunctive(&cube), Err(Error::EmptyCube)));
    }

    #[test]
    fn burt_by_hand() {
        let cube = cube_2x2(&[[0, 0], [1, 1]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let expected = [[1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1]];
        for (i, row) in expected.iter().enumerate() {
            for (j, &want) in row.iter().enumerate() {
                assert_eq!(b.get(i, j), want, "entry ({i},{j})");
            }
        }
        // Off-diagonal block (P,Q) is the 2×2 identity here.
        assert_eq!(b.trace(), (z.n() * z.d()) as u64);
        assert_eq!(b.diagonal_weights(), &[1, 1, 1, 1]);
    }

    #[test]
    fn perfectly_associated_pair() {
        // Each fact pairs modality k of P with modality k of Q: a single
        // non-degenerate axis remains and the eigenvalue sum is
        // (p′ − d)/d = (4 − 2)/2 = 1.
        let cube = cube_2x2(&[[0, 0], [1, 1]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        assert_eq!(eig.retained_count(), 1);
        let axis = &eig.axes()[0];
        assert!((axis.eigenvalue - 1.0).abs() < 1e-10);
        let total: f64 = eig.axes().iter().map(|a| a.eigenvalue).sum();
        assert!((total - 1.0).abs() < 1e-10);
        // Derived by hand: φ = (1, −1, 1, −1) after normalization and the
        // largest-|coordinate|, lowest-index sign rule.
        let expected = [1.0, -1.0, 1.0, -1.0];
        for (phi, want) in axis.coordinates.iter().zip(expected) {
            assert!((phi - want).abs() < 1e-9, "{:?}", axis.coordinates);
        }
    }

    #[test]
    fn trivial_axis_not_retained() {
        let cube = cube_2x2(&[[0, 0], [0, 1], [1, 0], [1, 1], [0, 0]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        let n = b.n() as f64;
        let freq: Vec<f64> = b.diagonal_weights().iter().map(|&w| w as f64 / n).collect();
        for axis in eig.axes() {
            assert!(axis.eigenvalue < 1.0 + 1e-9);
            let spread = weighted_spread(&axis.coordinates, 0..4usize, &freq, 2.0);
            assert!(spread > 1e-6, "constant axis retained");
        }
    }

    #[test]
    fn single_fact_cube_has_empty_spectrum() {
        // One fact over (2,2): p′ = d = 2 non-empty modalities, so no axis
        // survives and the eigenvalue sum (p′−d)/d is 0.
        let cube = cube_2x2(&[[0, 0]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        assert_eq!(eig.retained_count(), 0);
        assert_eq!(eig.dropped_modalities(), &[1, 3]);
    }

    #[test]
    fn empty_modalities_have_zero_coordinates() {
        let schema = CubeSchema::new(
            vec![
                DimensionSpec::new("P", vec!["a".into(), "b".into(), "unused".into()]),
                DimensionSpec::new("Q", vec!["u".into(), "v".into()]),
            ],
            vec![],
        )
        .unwrap();
        let facts = [[0u32, 0], [1, 1], [0, 1], [1, 0], [0, 0]]
            .iter()
            .map(|c| Fact {
                coords: c.to_vec(),
                measures: vec![],
            })
            .collect();
        let cube = Cube::from_facts(schema, facts).unwrap();
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        assert_eq!(eig.dropped_modalities(), &[2]);
        assert!(eig.is_dropped(2));
        for axis in eig.axes() {
            assert_eq!(axis.coordinates[2], 0.0);
        }
    }

    #[test]
    fn eigen_invariants_on_fixed_cube() {
        let cube = cube_2x2(&[[0, 0], [0, 1], [1, 1], [1, 1], [0, 0], [1, 0], [0, 0]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        assert!(eig.retained_count() >= 1);
        let nd = (z.n() * z.d()) as f64;
        let mut total = 0.0;
        for (pos, axis) in eig.axes().iter().enumerate() {
            total += axis.eigenvalue;
            // Defining equation.
            assert!(eigen_residual(&b, &eig, pos) < 1e-10);
            // Weighted centering.
            let centered: f64 = axis
                .coordinates
                .iter()
                .zip(z.column_sums())
                .map(|(phi, &w)| w as f64 * phi)
                .sum();
            assert!(centered.abs() < 1e-9);
            // Normalization that makes contributions sum to one.
            let norm: f64 = axis
                .coordinates
                .iter()
                .zip(z.column_sums())
                .map(|(phi, &w)| w as f64 * phi * phi)
                .sum();
            assert!((norm - nd * axis.eigenvalue).abs() < 1e-8);
        }
        let expected = (4.0 - 2.0) / 2.0;
        assert!((total - expected).abs() < 1e-10);
    }

    #[test]
    fn contribution_totals_are_one() {
        let cube = cube_2x2(&[[0, 0], [0, 1], [1, 1], [1, 1], [0, 0], [1, 0]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        let contrib = contributions(&eig, &z).unwrap();
        for axis_pos in 0..eig.retained_count() {
            let modality_total: f64 = contrib.per_modality()[axis_pos].iter().sum();
            assert!((modality_total - 1.0).abs() < 1e-8);
            let dim_total: f64 = contrib.per_dimension()[axis_pos].iter().sum();
            assert!((dim_total - 1.0).abs() < 1e-8);
            for value in &contrib.per_modality()[axis_pos] {
                assert!(*value >= -1e-12);
            }
        }
    }

    #[test]
    fn axis_count_at_scale() {
        // Two dimensions with 58 and 25 modalities and n = 311 959 facts:
        // the disjunctive table is 311 959 × 83 and, with every modality
        // used and rich associations, p − d = 81 axes remain.
        let p1 = 58u32;
        let p2 = 25u32;
        let n = 311_959usize;
        let dims = vec![
            DimensionSpec::new("D1", (0..p1).map(|i| format!("a{i}")).collect()),
            DimensionSpec::new("D2", (0..p2).map(|i| format!("b{i}")).collect()),
        ];
        let schema = CubeSchema::new(dims, vec![]).unwrap();
        let mut state = 0x853c49e6748fea9bu64;
        let mut facts = Vec::with_capacity(n);
        for i in 0..n {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let a = (i as u32) % p1;
            let b = ((i as u32) % p2 + (state >> 33) as u32 % 3) % p2;
            facts.push(Fact {
                coords: vec![a, b],
                measures: vec![],
            });
        }
        let cube = Cube::from_facts(schema, facts).unwrap();
        assert_eq!(cube.n(), 311_959);
        let z = build_disjunctive(&cube).unwrap();
        assert_eq!(z.p(), 83);
        assert_eq!(z.n(), 311_959);
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        assert_eq!(eig.dropped_modalities().len(), 0);
        assert_eq!(eig.retained_count(), 81);
    }

    #[test]
    fn debug_dump_lists_spectrum() {
        let cube = cube_2x2(&[[0, 0], [1, 1], [0, 1]]);
        let z = build_disjunctive(&cube).unwrap();
        let b = burt(&z);
        let eig = solve_eigen(&b, 2).unwrap();
        let dump = debug_dump(&b, &eig);
        assert!(dump.contains("order = 4"));
        assert!(dump.contains("lambda_1"));
        assert!(dump.contains("phi_1"));
    }
}
