//! Dense matrices over arbitrary-precision integers.
//!
//! Everything spectral in this crate that carries a proof obligation is
//! checked in exact integer arithmetic; floating point only appears in the
//! dedicated eigenvalue solver. This module provides the shared dense
//! integer matrix type those checks run on.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Convenience constructor from machine integers, mostly for tests and
    /// small fixed matrices.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::MismatchedOperands("ragged rows".into()));
        }
        Ok(Self::from_fn(height, width, |r, c| BigInt::from(rows[r][c])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_assign_at(&mut self, r: usize, c: usize, v: &BigInt) {
        self.data[r * self.cols + c] += v;
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::MismatchedOperands(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::MismatchedOperands(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let prod = a * b;
                        out.add_assign_at(r, c, &prod);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::MismatchedOperands(format!(
                "{}x{} matrix, vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * &k).collect(),
        }
    }

    /// Exact halving. Errors if any entry is odd.
    pub fn half(&self) -> Result<Self> {
        let two = BigInt::from(2);
        let mut data = Vec::with_capacity(self.data.len());
        for a in &self.data {
            if (a % &two).is_zero() {
                data.push(a / &two);
            } else {
                return Err(Error::InvalidParameter(format!(
                    "entry {a} is odd, cannot halve exactly"
                )));
            }
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in (r + 1)..self.cols {
                if self.get(r, c) != self.get(c, r) {
                    return false;
                }
            }
        }
        true
    }

    pub fn trace(&self) -> BigInt {
        let mut t = BigInt::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows)
            .map(|r| {
                let mut s = BigInt::zero();
                for c in 0..self.cols {
                    s += self.get(r, c);
                }
                s
            })
            .collect()
    }

    /// The `size`x`size` submatrix at block position (`a`, `b`), 1-based.
    pub fn block(&self, a: usize, b: usize, size: usize) -> Result<Self> {
        if size == 0 || a == 0 || b == 0 || a * size > self.rows || b * size > self.cols {
            return Err(Error::IndexOutOfRange {
                index: a.max(b) as i64,
                min: 1,
                max: (self.rows.max(self.cols) / size.max(1)) as i64,
            });
        }
        let r0 = (a - 1) * size;
        let c0 = (b - 1) * size;
        Ok(Self::from_fn(size, size, |r, c| {
            self.get(r0 + r, c0 + c).clone()
        }))
    }

    /// Row-major CSV with no header; one line per row, entries separated by
    /// commas, trailing newline. Stable byte-for-byte across runs.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    out.push(',');
                }
                out.push_str(&self.get(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Lossy conversion for the floating-point eigenvalue solver.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|a| a.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// `lambda * I - M` for integer `lambda`; the kernel of this matrix is the
/// eigenspace of `lambda`.
pub fn shifted(m: &ExactMatrix, lambda: i64) -> Result<ExactMatrix> {
    if !m.is_square() {
        return Err(Error::MismatchedOperands(format!(
            "{}x{} is not square",
            m.rows(),
            m.cols()
        )));
    }
    let l = BigInt::from(lambda);
    Ok(ExactMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        if r == c {
            &l - m.get(r, c)
        } else {
            -m.get(r, c)
        }
    }))
}
