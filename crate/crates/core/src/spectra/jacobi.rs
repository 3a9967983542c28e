//! Cyclic Jacobi eigensolver for dense symmetric matrices.
//!
//! Rotations sweep the strict upper triangle in row order until the
//! off-diagonal Frobenius norm falls below 1e-12 of the full norm. Only
//! eigenvalues are returned; callers needing eigenvectors use the exact
//! kernel machinery instead, which is the source of truth for every
//! integer eigenvalue claim.

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;

const MAX_SWEEPS: usize = 100;
const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Eigenvalues of a symmetric integer matrix, sorted descending.
/// Symmetry is checked exactly on the integer entries.
pub fn eigenvalues(a: &ExactMatrix) -> Result<Vec<f64>> {
    if !a.is_square() {
        return Err(Error::InvalidParameter(format!(
            "eigenvalues need a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    for r in 0..a.rows() {
        for c in (r + 1)..a.cols() {
            if a.get(r, c) != a.get(c, r) {
                return Err(Error::NotSymmetric { row: r, col: c });
            }
        }
    }
    rotate_to_diagonal(a.to_f64())
}

/// Eigenvalues of a symmetric float matrix, sorted descending. Entries
/// must be finite and symmetry must hold exactly.
pub fn eigenvalues_f64(rows: &[Vec<f64>]) -> Result<Vec<f64>> {
    let n = rows.len();
    for row in rows {
        if row.len() != n {
            return Err(Error::InvalidParameter(format!(
                "row of length {} in a {n}-row matrix",
                row.len()
            )));
        }
        if row.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "matrix entries must be finite".into(),
            ));
        }
    }
    for r in 0..n {
        for c in (r + 1)..n {
            if rows[r][c] != rows[c][r] {
                return Err(Error::NotSymmetric { row: r, col: c });
            }
        }
    }
    rotate_to_diagonal(rows.to_vec())
}

fn rotate_to_diagonal(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let n = a.len();
    if n <= 1 {
        return Ok(a.first().map(|row| row[0]).into_iter().collect());
    }
    let target = RELATIVE_TOLERANCE * frobenius(&a);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal(&a) <= target {
            return Ok(sorted_diagonal(&a));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    if off_diagonal(&a) <= target {
        return Ok(sorted_diagonal(&a));
    }
    Err(Error::NonConvergence { sweeps: MAX_SWEEPS })
}

/// One Givens rotation annihilating entry (p, q).
fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    // Smaller-magnitude root of t^2 + 2*theta*t - 1 = 0, for stability.
    let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
    let c = 1.0 / t.hypot(1.0);
    let s = t * c;
    let n = a.len();
    for k in 0..n {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

fn frobenius(a: &[Vec<f64>]) -> f64 {
    a.iter()
        .flat_map(|row| row.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

fn off_diagonal(a: &[Vec<f64>]) -> f64 {
    let mut sum = 0.0;
    for (r, row) in a.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if r != c {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

fn sorted_diagonal(a: &[Vec<f64>]) -> Vec<f64> {
    let mut diag: Vec<f64> = a.iter().enumerate().map(|(i, row)| row[i]).collect();
    diag.sort_by(|x, y| y.total_cmp(x));
    diag
}
