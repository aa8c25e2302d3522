//! Seeded synthetic cubes for tests, benchmarks and demos.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use crate::arrange::Arrangement;
use crate::cube::{Cube, CubeSchema, DimensionSpec, Fact};

fn grid_schema(rows: u32, cols: u32) -> CubeSchema {
    CubeSchema::new(
        vec![
            DimensionSpec::new("row", (0..rows).map(|i| format!("r{i:02}")).collect()),
            DimensionSpec::new("col", (0..cols).map(|i| format!("c{i:02}")).collect()),
        ],
        vec![],
    )
    .expect("valid grid schema")
}

/// 2-D cube whose full cells form two diagonal blocks (the top-left and
/// bottom-right quadrants) under a hidden label order, then presented with
/// seeded random catalog orders so the initial arrangement is shuffled.
///
/// Each full cell holds between 1 and `max_facts_per_cell` facts, varying
/// deterministically with the cell position, so subsampling the fact
/// multiset thins occupancy gradually.
pub fn planted_two_blocks(
    rows: u32,
    cols: u32,
    max_facts_per_cell: u32,
    shuffle_seed: u64,
) -> Cube {
    assert!(rows >= 2 && cols >= 2);
    let half_rows = rows / 2;
    let half_cols = cols / 2;
    let mut facts = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let in_first = r < half_rows && c < half_cols;
            let in_second = r >= half_rows && c >= half_cols;
            if in_first || in_second {
                let copies = 1 + (r + 2 * c) % max_facts_per_cell.max(1);
                for _ in 0..copies {
                    facts.push(Fact {
                        coords: vec![r, c],
                        measures: vec![],
                    });
                }
            }
        }
    }
    let cube = Cube::from_facts(grid_schema(rows, cols), facts).expect("valid planted cube");
    shuffle_catalogs(&cube, shuffle_seed)
}

/// Returns the cube with every dimension's catalog in a seeded random order.
pub fn shuffle_catalogs(cube: &Cube, seed: u64) -> Cube {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let perms: Vec<Vec<u32>> = cube
        .shape()
        .iter()
        .map(|&p| {
            let mut perm: Vec<u32> = (0..p).collect();
            perm.shuffle(&mut rng);
            perm
        })
        .collect();
    let arrangement = Arrangement::from_permutations(cube.schema(), &perms).expect("valid shuffle");
    cube.apply_arrangement(&arrangement).expect("applies")
}

/// Cube with `n` facts drawn uniformly over the cells of the given shape.
pub fn random_cube(shape: &[u32], n: usize, seed: u64) -> Cube {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims = shape
        .iter()
        .enumerate()
        .map(|(t, &p)| {
            DimensionSpec::new(
                format!("D{}", t + 1),
                (0..p).map(|j| format!("m{j:02}")).collect(),
            )
        })
        .collect();
    let schema = CubeSchema::new(dims, vec![]).expect("valid random schema");
    let facts = (0..n)
        .map(|_| Fact {
            coords: shape.iter().map(|&p| rng.gen_range(0..p)).collect(),
            measures: vec![],
        })
        .collect();
    Cube::from_facts(schema, facts).expect("valid random cube")
}

/// Cube with exactly `cells` distinct full cells (one fact each), drawn
/// uniformly without replacement.
pub fn random_occupancy_cube(shape: &[u32], cells: usize, seed: u64) -> Cube {
    let capacity: u64 = shape.iter().map(|&p| p as u64).product();
    assert!(cells as u64 <= capacity, "more cells than the shape holds");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: HashSet<Vec<u32>> = HashSet::with_capacity(cells);
    while chosen.len() < cells {
        let cell: Vec<u32> = shape.iter().map(|&p| rng.gen_range(0..p)).collect();
        chosen.insert(cell);
    }
    let mut ordered: Vec<Vec<u32>> = chosen.into_iter().collect();
    ordered.sort();
    let dims = shape
        .iter()
        .enumerate()
        .map(|(t, &p)| {
            DimensionSpec::new(
                format!("D{}", t + 1),
                (0..p).map(|j| format!("m{j:02}")).collect(),
            )
        })
        .collect();
    let schema = CubeSchema::new(dims, vec![]).expect("valid random schema");
    let facts = ordered
        .into_iter()
        .map(|coords| Fact {
            coords,
            measures: vec![],
        })
        .collect();
    Cube::from_facts(schema, facts).expect("valid random cube")
}
