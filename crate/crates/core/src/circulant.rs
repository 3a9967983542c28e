//! Integer circulant matrices.
//!
//! A circulant of order `l` is determined by its first row
//! `(c_0, ..., c_{l-1})`; every later row is the cyclic right shift of the
//! one above. Circulants of a fixed order form a commutative ring under
//! matrix addition and multiplication (multiplication is cyclic
//! convolution of first rows), and their eigenvalues are the discrete
//! Fourier transform of the first row:
//!
//! ```text
//! lambda_k = sum_j c_j * exp(-2*pi*i*j*k / l),   k = 0..l-1.
//! ```
//!
//! Because blocks drawn from this ring commute, a block matrix over the
//! ring has determinant computable in two stages: first the formal
//! determinant over the ring (a single circulant), then the determinant of
//! that circulant.

use crate::error::{Error, Result};
use crate::exact;
use crate::matrix::ExactMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantMatrix {
    first_row: Vec<BigInt>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<BigInt>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::InvalidParameter(
                "circulant order must be >= 1".into(),
            ));
        }
        Ok(Self { first_row })
    }

    pub fn from_i64(first_row: &[i64]) -> Result<Self> {
        Self::new(first_row.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// Circulant with a single 1 in the first row at position
    /// `shift mod order`. `unit(order, 0)` is the identity;
    /// `unit(order, 1)` is the cyclic shift.
    pub fn unit(order: usize, shift: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "circulant order must be >= 1".into(),
            ));
        }
        let pos = shift.rem_euclid(order as i64) as usize;
        let mut row = vec![BigInt::zero(); order];
        row[pos] = BigInt::from(1);
        Self::new(row)
    }

    pub fn zero(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParameter(
                "circulant order must be >= 1".into(),
            ));
        }
        Ok(Self {
            first_row: vec![BigInt::zero(); order],
        })
    }

    pub fn order(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[BigInt] {
        &self.first_row
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::MismatchedOperands(format!(
                "circulant orders {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            first_row: self
                .first_row
                .iter()
                .zip(&other.first_row)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(Self {
            first_row: self
                .first_row
                .iter()
                .zip(&other.first_row)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            first_row: self.first_row.iter().map(|a| -a).collect(),
        }
    }

    /// Ring product: cyclic convolution of first rows. Commutative.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let l = self.order();
        let mut row = vec![BigInt::zero(); l];
        for (j, a) in self.first_row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in other.first_row.iter().enumerate() {
                if !b.is_zero() {
                    row[(j + k) % l] += a * b;
                }
            }
        }
        Ok(Self { first_row: row })
    }

    /// Expands to the dense matrix with entry `(i, j) = c_{(j - i) mod l}`.
    pub fn expand(&self) -> ExactMatrix {
        let l = self.order();
        ExactMatrix::from_fn(l, l, |i, j| {
            self.first_row[(j + l - i) % l].clone()
        })
    }

    /// Eigenvalues as the discrete Fourier transform of the first row,
    /// in mode order `k = 0..l-1`.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let l = self.order();
        let mut out = Vec::with_capacity(l);
        for k in 0..l {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, c) in self.first_row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let angle = -2.0 * std::f64::consts::PI * (k as f64) * (j as f64) / (l as f64);
                acc += Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), angle);
            }
            out.push(acc);
        }
        out
    }

    /// Exact integer determinant of the expanded matrix.
    pub fn det(&self) -> BigInt {
        exact::det(&self.expand()).expect("expanded circulant is square")
    }

    pub fn is_singular(&self) -> bool {
        self.det().is_zero()
    }
}

/// The color-shift circulant `C(0,1,0,...,0)`: one step up. Order 1 gives
/// the 1x1 matrix (1).
pub fn shift_up(order: usize) -> Result<CirculantMatrix> {
    CirculantMatrix::unit(order, 1)
}

/// Sum of one step up and one step down: `C(0,1,0,...,0) + C(0,...,0,1)`.
/// Order 1 gives (2) and order 2 gives `C(0,2)`.
pub fn shift_both(order: usize) -> Result<CirculantMatrix> {
    CirculantMatrix::unit(order, 1)?.add(&CirculantMatrix::unit(order, -1)?)
}

/// Whether the order-`m` two-sided shift circulant is singular. Exact; the
/// determinant vanishes precisely when m is divisible by 4, because its
/// eigenvalues are `2 cos(2 pi k / m)` and 0 occurs among them iff 4 | m.
pub fn shift_both_singular(m: usize) -> Result<bool> {
    Ok(shift_both(m)?.is_singular())
}

/// Determinant of a square block matrix whose blocks are commuting
/// circulants of one order: the formal determinant is evaluated over the
/// circulant ring (Leibniz expansion over block positions), and the
/// determinant of the resulting single circulant is returned. Equals the
/// determinant of the fully expanded matrix.
///
/// `blocks` is row-major of shape `n x n`.
pub fn block_determinant(blocks: &[Vec<CirculantMatrix>]) -> Result<BigInt> {
    let n = blocks.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty block matrix".into()));
    }
    if blocks.iter().any(|row| row.len() != n) {
        return Err(Error::MismatchedOperands(
            "block matrix must be square".into(),
        ));
    }
    let order = blocks[0][0].order();
    for row in blocks {
        for b in row {
            if b.order() != order {
                return Err(Error::MismatchedOperands(format!(
                    "block orders {} vs {}",
                    order,
                    b.order()
                )));
            }
        }
    }
    let ring_det = ring_determinant(blocks, n, order)?;
    Ok(ring_det.det())
}

/// Formal determinant over the circulant ring by Leibniz expansion;
/// adequate for the block counts this crate works at.
fn ring_determinant(
    blocks: &[Vec<CirculantMatrix>],
    n: usize,
    order: usize,
) -> Result<CirculantMatrix> {
    let mut acc = CirculantMatrix::zero(order)?;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut parity_flips = 0usize;
    loop {
        let mut term = CirculantMatrix::unit(order, 0)?;
        for (r, &c) in perm.iter().enumerate() {
            term = term.mul(&blocks[r][c])?;
        }
        if parity_flips % 2 == 0 {
            acc = acc.add(&term)?;
        } else {
            acc = acc.sub(&term)?;
        }
        if !next_permutation(&mut perm, &mut parity_flips) {
            break;
        }
    }
    Ok(acc)
}

/// Steps `perm` to its lexicographic successor, tracking how many
/// transpositions were applied so the Leibniz sign stays known.
fn next_permutation(perm: &mut [usize], parity_flips: &mut usize) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    *parity_flips += 1;
    let suffix = &mut perm[i..];
    let len = suffix.len();
    suffix.reverse();
    *parity_flips += len / 2;
    true
}
