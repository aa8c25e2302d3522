//! Cyclic Jacobi eigendecomposition for dense symmetric matrices.
//!
//! Rotations are applied in a fixed row-major sweep order, so the output is
//! fully deterministic for a given input. Convergence is declared when the
//! Frobenius norm of the off-diagonal part drops below the threshold; for the
//! matrix orders this crate works with (a few hundred at most) the quadratic
//! convergence of Jacobi reaches it in a handful of sweeps.

use crate::error::{Error, Result};

const OFF_DIAGONAL_THRESHOLD: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;

pub(crate) struct SymEigen {
    /// Eigenvalues, in the order the sweep left them (unsorted).
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector paired with `values[k]`.
    pub vectors: Vec<Vec<f64>>,
}

/// Diagonalizes a symmetric matrix given as a row-major buffer.
pub(crate) fn eigen_symmetric(mut a: Vec<f64>, order: usize) -> Result<SymEigen> {
    assert_eq!(a.len(), order * order, "matrix buffer size");
    let n = order;
    // v starts as identity; columns accumulate the rotations.
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    if n <= 1 {
        return Ok(extract(a, v, n));
    }

    for _sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= OFF_DIAGONAL_THRESHOLD {
            return Ok(extract(a, v, n));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Symmetric Schur decomposition of the 2×2 block.
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    let new_ip = c * aip - s * aiq;
                    let new_iq = s * aip + c * aiq;
                    a[i * n + p] = new_ip;
                    a[p * n + i] = new_ip;
                    a[i * n + q] = new_iq;
                    a[q * n + i] = new_iq;
                }
                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = c * vip - s * viq;
                    v[i * n + q] = s * vip + c * viq;
                }
            }
        }
    }

    let off = off_diagonal_norm(&a, n);
    if off <= OFF_DIAGONAL_THRESHOLD {
        return Ok(extract(a, v, n));
    }
    Err(Error::EigenNoConvergence {
        sweeps: MAX_SWEEPS,
        off_diagonal: off,
    })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let x = a[i * n + j];
            sum += 2.0 * x * x;
        }
    }
    sum.sqrt()
}

fn extract(a: Vec<f64>, v: Vec<f64>, n: usize) -> SymEigen {
    let values = (0..n).map(|i| a[i * n + i]).collect();
    let vectors = (0..n)
        .map(|k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    SymEigen { values, vectors }
}
