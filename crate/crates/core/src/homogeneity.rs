//! Neighborhood-based homogeneity of a cube's full cells.
//!
//! Two cells are neighbors when every coordinate differs by at most one
//! (the Moore neighborhood, 3^d − 1 offsets, no wraparound at the cube
//! edges). The raw index IHB counts ordered pairs of full neighboring
//! cells, i.e. each unordered pair twice. IHB_max is the same count with every
//! cell full, which has the closed form Π_t(3·p_t − 2) − Π_t p_t, and
//! IH = IHB / IHB_max grades a representation between 0 and 1.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::arrange::Arrangement;
use crate::cube::Cube;
use crate::error::{Error, Result};

/// Cell coordinates, one 0-based modality index per dimension.
pub type CellCoords = Vec<u32>;

/// All in-range cells within Chebyshev distance one of `cell`, excluding
/// `cell` itself.
pub fn neighbors(cell: &[u32], shape: &[u32]) -> Vec<CellCoords> {
    let mut out = Vec::new();
    for_each_neighbor(cell, shape, |probe| out.push(probe.to_vec()));
    out
}

fn for_each_neighbor(cell: &[u32], shape: &[u32], mut visit: impl FnMut(&[u32])) {
    let d = cell.len();
    debug_assert_eq!(d, shape.len());
    let mut offset = vec![-1i8; d];
    let mut probe = vec![0u32; d];
    loop {
        if offset.iter().any(|&o| o != 0) {
            let mut in_range = true;
            for t in 0..d {
                let v = cell[t] as i64 + offset[t] as i64;
                if v < 0 || v >= shape[t] as i64 {
                    in_range = false;
                    break;
                }
                probe[t] = v as u32;
            }
            if in_range {
                visit(&probe);
            }
        }
        let mut t = 0;
        loop {
            if t == d {
                return;
            }
            if offset[t] < 1 {
                offset[t] += 1;
                break;
            }
            offset[t] = -1;
            t += 1;
        }
    }
}

/// Number of full neighbors of `cell`, or 0 when `cell` itself is empty.
pub fn delta(cube: &Cube, cell: &[u32]) -> u64 {
    if !cube.is_full(cell) {
        return 0;
    }
    let mut count = 0;
    for_each_neighbor(cell, &cube.shape(), |probe| {
        if cube.occupancy().contains(probe) {
            count += 1;
        }
    });
    count
}

fn ihb_of_set(occupancy: &HashSet<CellCoords>, shape: &[u32]) -> u64 {
    let mut total = 0;
    for cell in occupancy {
        for_each_neighbor(cell, shape, |probe| {
            if occupancy.contains(probe) {
                total += 1;
            }
        });
    }
    total
}

/// Raw homogeneity index: the sum of Δ over all cells, i.e. twice the number
/// of unordered pairs of adjacent full cells.
pub fn ihb(cube: &Cube) -> u64 {
    ihb_of_set(cube.occupancy(), &cube.shape())
}

/// Maximum raw homogeneity: Σ_A |𝒱(A)| = Π_t(3·p_t − 2) − Π_t p_t.
pub fn ihb_max(shape: &[u32]) -> Result<u64> {
    let mut pairs_with_self: u64 = 1;
    let mut cells: u64 = 1;
    for &p in shape {
        let p = p as u64;
        pairs_with_self = pairs_with_self
            .checked_mul(3 * p - 2)
            .ok_or(Error::NumericOverflow {
                what: "maximum homogeneity index",
            })?;
        cells = cells
            .checked_mul(p)
            .ok_or(Error::NumericOverflow { what: "cell count" })?;
    }
    Ok(pairs_with_self - cells)
}

/// Homogeneity index IHB / IHB_max.
pub fn ih(cube: &Cube) -> Result<f64> {
    let denominator = ihb_max(&cube.shape())?;
    if denominator == 0 {
        return Err(Error::DegenerateShape);
    }
    Ok(ihb(cube) as f64 / denominator as f64)
}

/// Relative homogeneity gain of an arranged representation over the initial
/// one.
pub fn gain(ih_initial: f64, ih_arranged: f64) -> Result<f64> {
    if ih_initial == 0.0 {
        return Err(Error::ZeroBaseline);
    }
    Ok((ih_arranged - ih_initial) / ih_initial)
}

/// Exhaustive search over all modality-permutation combinations of a tiny
/// cube. Returns an arrangement maximizing IH (ties resolved toward the
/// lexicographically smallest permutation tuple) and the optimum value.
pub fn brute_force_best(cube: &Cube, limit: u64) -> Result<(Arrangement, f64)> {
    let shape = cube.shape();
    let denominator = ihb_max(&shape)?;
    if denominator == 0 {
        return Err(Error::DegenerateShape);
    }
    let mut configurations: u128 = 1;
    for &p in &shape {
        for k in 1..=(p as u128) {
            configurations = configurations
                .checked_mul(k)
                .ok_or(Error::SearchSpaceExceeded {
                    configurations: u128::MAX,
                    limit,
                })?;
        }
        if configurations > limit as u128 {
            return Err(Error::SearchSpaceExceeded {
                configurations,
                limit,
            });
        }
    }

    let perms_per_dim: Vec<Vec<Vec<u32>>> = shape
        .iter()
        .map(|&p| (0..p).permutations(p as usize).collect())
        .collect();
    let cells: Vec<&CellCoords> = cube.occupancy().iter().collect();

    let mut best_ihb = 0u64;
    let mut best: Option<Vec<Vec<u32>>> = None;
    let mut remapped: HashSet<CellCoords> = HashSet::with_capacity(cells.len());
    for combo in perms_per_dim
        .iter()
        .map(|perms| perms.iter())
        .multi_cartesian_product()
    {
        // combo[t][new] = old index; invert to relocate old coordinates.
        let inverses: Vec<Vec<u32>> = combo
            .iter()
            .map(|perm| {
                let mut inv = vec![0u32; perm.len()];
                for (new, &old) in perm.iter().enumerate() {
                    inv[old as usize] = new as u32;
                }
                inv
            })
            .collect();
        remapped.clear();
        for cell in &cells {
            remapped.insert(
                cell.iter()
                    .zip(&inverses)
                    .map(|(&old, inv)| inv[old as usize])
                    .collect(),
            );
        }
        let score = ihb_of_set(&remapped, &shape);
        if best.is_none() || score > best_ihb {
            best_ihb = score;
            best = Some(combo.into_iter().cloned().collect());
        }
    }

    let perms = best.expect("at least one configuration");
    let arrangement = Arrangement::from_permutations(cube.schema(), &perms)?;
    Ok((arrangement, best_ihb as f64 / denominator as f64))
}

/// Published homogeneity figures for one cube representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub schema_version: u32,
    pub ihb: u64,
    pub ihb_max: u64,
    pub ih: f64,
    pub sparsity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gain: Option<f64>,
}

pub const REPORT_SCHEMA_VERSION: u32 = 1;

impl HomogeneityReport {
    pub fn for_cube(cube: &Cube) -> Result<Self> {
        let shape = cube.shape();
        let denominator = ihb_max(&shape)?;
        if denominator == 0 {
            return Err(Error::DegenerateShape);
        }
        let raw = ihb(cube);
        Ok(HomogeneityReport {
            schema_version: REPORT_SCHEMA_VERSION,
            ihb: raw,
            ihb_max: denominator,
            ih: raw as f64 / denominator as f64,
            sparsity: cube.sparsity(),
            gain: None,
        })
    }

    pub fn with_gain(mut self, gain: f64) -> Self {
        self.gain = Some(gain);
        self
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::ReportParse(e.to_string()))
    }
}
