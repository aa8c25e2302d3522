//! Maps each dimension to the factorial axis it explains best and orders its
//! modalities by ascending coordinate on that axis.
//!
//! The axis chosen for dimension t maximizes λ_α·Cr_α(D_t), equivalently the
//! weighted sum of squared projections of t's modalities, with ties broken
//! toward the larger eigenvalue, then the smaller axis index.
//! Modalities with no facts have no coordinates; they are appended after the
//! sorted non-empty ones, pushing guaranteed-empty hyperplanes toward the
//! cube's edge.

use serde::{Deserialize, Serialize};

use crate::cube::CubeSchema;
use crate::error::{Error, Result};
use crate::mca::{self, Contributions, EigenSystem};

pub const ARRANGEMENT_SCHEMA_VERSION: u32 = 1;

/// Why an axis was chosen for a dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxisSelection {
    /// 1-based rank of the axis in descending-eigenvalue order.
    pub axis: usize,
    pub eigenvalue: f64,
    /// Cr of the dimension on the chosen axis.
    pub contribution: f64,
    /// λ·Cr, the maximized quantity.
    pub score: f64,
}

/// New modality order for one dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionArrangement {
    pub name: String,
    /// Catalog order the arrangement was computed from (provenance).
    pub initial: Vec<String>,
    /// Modality labels in their new order.
    pub order: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selection: Option<AxisSelection>,
    /// `permutation[new] = old` index into `initial`.
    #[serde(skip)]
    pub permutation: Vec<u32>,
}

/// Per-dimension permutations plus the diagnostics that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Arrangement {
    pub schema_version: u32,
    pub dimensions: Vec<DimensionArrangement>,
}

impl Arrangement {
    /// The do-nothing arrangement for a schema.
    pub fn identity(schema: &CubeSchema) -> Self {
        let dimensions = schema
            .dimensions()
            .iter()
            .map(|dim| DimensionArrangement {
                name: dim.name().to_string(),
                initial: dim.labels().to_vec(),
                order: dim.labels().to_vec(),
                selection: None,
                permutation: (0..dim.len() as u32).collect(),
            })
            .collect();
        Arrangement {
            schema_version: ARRANGEMENT_SCHEMA_VERSION,
            dimensions,
        }
    }

    /// Builds an arrangement from explicit permutations
    /// (`perms[t][new] = old`), validating each is a bijection.
    pub fn from_permutations(schema: &CubeSchema, perms: &[Vec<u32>]) -> Result<Self> {
        if perms.len() != schema.d() {
            return Err(Error::InvalidPermutation {
                dimension: "<all>".into(),
                detail: format!("{} permutations for {} dimensions", perms.len(), schema.d()),
            });
        }
        let mut dimensions = Vec::with_capacity(perms.len());
        for (dim, perm) in schema.dimensions().iter().zip(perms) {
            validate_bijection(dim.name(), perm, dim.len())?;
            let order = perm
                .iter()
                .map(|&old| dim.labels()[old as usize].clone())
                .collect();
            dimensions.push(DimensionArrangement {
                name: dim.name().to_string(),
                initial: dim.labels().to_vec(),
                order,
                selection: None,
                permutation: perm.clone(),
            });
        }
        Ok(Arrangement {
            schema_version: ARRANGEMENT_SCHEMA_VERSION,
            dimensions,
        })
    }

    /// Resolves the stored label orders against a cube's catalogs, returning
    /// one `perm[new] = old` permutation per dimension.
    pub fn permutations_for(&self, schema: &CubeSchema) -> Result<Vec<Vec<u32>>> {
        if self.dimensions.len() != schema.d() {
            return Err(Error::ArrangementMismatch(format!(
                "{} arranged dimensions, cube has {}",
                self.dimensions.len(),
                schema.d()
            )));
        }
        let mut perms = Vec::with_capacity(schema.d());
        for (entry, dim) in self.dimensions.iter().zip(schema.dimensions()) {
            if entry.name != dim.name() {
                return Err(Error::ArrangementMismatch(format!(
                    "dimension {:?} does not match cube dimension {:?}",
                    entry.name,
                    dim.name()
                )));
            }
            if entry.order.len() != dim.len() {
                return Err(Error::InvalidPermutation {
                    dimension: dim.name().to_string(),
                    detail: format!(
                        "order lists {} modalities, catalog has {}",
                        entry.order.len(),
                        dim.len()
                    ),
                });
            }
            let mut perm = Vec::with_capacity(dim.len());
            let mut used = vec![false; dim.len()];
            for label in &entry.order {
                let old = dim
                    .labels()
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| {
                        Error::ArrangementMismatch(format!(
                            "modality {:?} not in dimension {:?}",
                            label,
                            dim.name()
                        ))
                    })?;
                if used[old] {
                    return Err(Error::ArrangementMismatch(format!(
                        "modality {:?} listed twice for dimension {:?}",
                        label,
                        dim.name()
                    )));
                }
                used[old] = true;
                perm.push(old as u32);
            }
            perms.push(perm);
        }
        Ok(perms)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("arrangement serializes")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let mut arrangement: Arrangement =
            toml::from_str(text).map_err(|e| Error::ArrangementParse(e.to_string()))?;
        for entry in &mut arrangement.dimensions {
            entry.permutation = permutation_from_labels(&entry.name, &entry.initial, &entry.order)?;
        }
        Ok(arrangement)
    }
}

fn validate_bijection(dimension: &str, perm: &[u32], p: usize) -> Result<()> {
    if perm.len() != p {
        return Err(Error::InvalidPermutation {
            dimension: dimension.to_string(),
            detail: format!("length {} does not match modality count {}", perm.len(), p),
        });
    }
    let mut used = vec![false; p];
    for &old in perm {
        if old as usize >= p || used[old as usize] {
            return Err(Error::InvalidPermutation {
                dimension: dimension.to_string(),
                detail: "not a bijection".into(),
            });
        }
        used[old as usize] = true;
    }
    Ok(())
}

fn permutation_from_labels(
    dimension: &str,
    initial: &[String],
    order: &[String],
) -> Result<Vec<u32>> {
    if order.len() != initial.len() {
        return Err(Error::InvalidPermutation {
            dimension: dimension.to_string(),
            detail: format!(
                "order lists {} modalities, initial lists {}",
                order.len(),
                initial.len()
            ),
        });
    }
    let mut perm = Vec::with_capacity(order.len());
    let mut used = vec![false; initial.len()];
    for label in order {
        let old = initial.iter().position(|l| l == label).ok_or_else(|| {
            Error::ArrangementParse(format!(
                "dimension {dimension:?}: ordered modality {label:?} missing from initial catalog"
            ))
        })?;
        if used[old] {
            return Err(Error::ArrangementParse(format!(
                "dimension {dimension:?}: modality {label:?} listed twice"
            )));
        }
        used[old] = true;
        perm.push(old as u32);
    }
    Ok(perm)
}

/// Scores within this window of the maximum count as tied. Solver noise sits
/// around 1e-12; genuinely distinct scores sit far above it. Without the
/// window the stated tie-break could never fire: axes whose scores are equal
/// in exact arithmetic (e.g. a block-indicator axis at λ=1, Cr=1/2 against a
/// within-block contrast at λ=1/2, Cr=1) come out of the solver a few ulps
/// apart, and noise would pick the axis.
const SCORE_TIE_WINDOW: f64 = 1e-9;

/// Index (1-based) of the retained axis maximizing λ_α·Cr_α(D_t).
///
/// Ties (within the numerical tie window) go to the larger eigenvalue, then
/// the smaller axis index.
pub fn select_axis(eig: &EigenSystem, contributions: &Contributions, dim: usize) -> Result<usize> {
    if dim >= eig.blocks().len() {
        return Err(Error::DimensionOutOfRange {
            index: dim,
            count: eig.blocks().len(),
        });
    }
    if eig.retained_count() == 0 {
        return Err(Error::NoRetainedAxes);
    }
    let scores: Vec<f64> = eig
        .axes()
        .iter()
        .enumerate()
        .map(|(pos, axis)| axis.eigenvalue * contributions.dimension(pos, dim))
        .collect();
    let best = scores.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    // Axes are sorted by descending eigenvalue then ascending index, so the
    // first score inside the window realizes the tie-break chain.
    let pos = scores
        .iter()
        .position(|&s| s >= best - SCORE_TIE_WINDOW)
        .expect("at least one retained axis");
    Ok(eig.axes()[pos].axis_index)
}

/// Permutation (`perm[new] = old`) ordering dimension `dim`'s non-empty
/// modalities by ascending coordinate on the given axis, stable on ties,
/// with empty modalities appended in their original relative order.
pub fn order_modalities(eig: &EigenSystem, dim: usize, axis_index: usize) -> Result<Vec<u32>> {
    if dim >= eig.blocks().len() {
        return Err(Error::DimensionOutOfRange {
            index: dim,
            count: eig.blocks().len(),
        });
    }
    let axis = eig.axis(axis_index)?;
    let block = eig.blocks()[dim].clone();
    let mut live: Vec<u32> = Vec::new();
    let mut empty: Vec<u32> = Vec::new();
    for (local, global) in block.clone().enumerate() {
        if eig.is_dropped(global) {
            empty.push(local as u32);
        } else {
            live.push(local as u32);
        }
    }
    live.sort_by(|&a, &b| {
        let pa = axis.coordinates[block.start + a as usize];
        let pb = axis.coordinates[block.start + b as usize];
        pa.partial_cmp(&pb).expect("finite coordinates")
    });
    live.extend(empty);
    Ok(live)
}

/// Runs the full pipeline: disjunctive coding, Burt table, eigensolve,
/// contributions, then per-dimension axis selection and ordering.
///
/// The analysis runs on a canonical presentation of the cube (every catalog
/// sorted by modality label) and the resulting permutations are composed
/// back onto the original catalogs. Catalog order and fact-row order are
/// then provably irrelevant to the output (the Burt accumulation is integer
/// and commutative), which keeps the arranged cube identical however the
/// input happened to be ordered, including through eigenvalue ties that a
/// presentation-dependent tie-break could not resolve consistently.
///
/// Single-modality dimensions get the identity permutation without axis
/// selection. When no axis survives (every dimension effectively takes one
/// value, e.g. a one-fact cube), every permutation scores the same and the
/// identity arrangement is returned.
pub fn arrange_cube(cube: &crate::cube::Cube) -> Result<Arrangement> {
    if cube.is_degenerate() {
        return Err(Error::EmptyCube);
    }
    let schema = cube.schema();
    if schema.dimensions().iter().all(|d| d.len() == 1) {
        return Ok(Arrangement::identity(schema));
    }

    let canonical_perms: Vec<Vec<u32>> = schema
        .dimensions()
        .iter()
        .map(|dim| {
            let mut order: Vec<u32> = (0..dim.len() as u32).collect();
            order.sort_by(|&a, &b| dim.labels()[a as usize].cmp(&dim.labels()[b as usize]));
            order
        })
        .collect();
    let to_canonical = Arrangement::from_permutations(schema, &canonical_perms)?;
    let canonical = cube.apply_arrangement(&to_canonical)?;

    let z = mca::build_disjunctive(&canonical)?;
    let b = mca::burt(&z);
    let eig = mca::solve_eigen(&b, schema.d())?;
    if eig.retained_count() == 0 {
        return Ok(Arrangement::identity(schema));
    }
    let contrib = mca::contributions(&eig, &z)?;

    let mut dimensions = Vec::with_capacity(schema.d());
    for (t, dim) in schema.dimensions().iter().enumerate() {
        let (selection, canonical_order) = if dim.len() == 1 {
            (None, vec![0u32])
        } else {
            let axis_index = select_axis(&eig, &contrib, t)?;
            let axis = eig.axis(axis_index)?;
            let pos = axis_index - 1;
            let contribution = contrib.dimension(pos, t);
            let selection = AxisSelection {
                axis: axis_index,
                eigenvalue: axis.eigenvalue,
                contribution,
                score: axis.eigenvalue * contribution,
            };
            (Some(selection), order_modalities(&eig, t, axis_index)?)
        };
        let permutation: Vec<u32> = canonical_order
            .iter()
            .map(|&canon| canonical_perms[t][canon as usize])
            .collect();
        let order = permutation
            .iter()
            .map(|&old| dim.labels()[old as usize].clone())
            .collect();
        dimensions.push(DimensionArrangement {
            name: dim.name().to_string(),
            initial: dim.labels().to_vec(),
            order,
            selection,
            permutation,
        });
    }
    Ok(Arrangement {
        schema_version: ARRANGEMENT_SCHEMA_VERSION,
        dimensions,
    })
}
