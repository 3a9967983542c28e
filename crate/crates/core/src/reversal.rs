//! Permutation matrices of prefix reversals and their sums.
//!
//! A prefix reversal acts not just on arrangements but on the decorated
//! symbols `j^k` themselves (symbol `j` carrying color `k`): a flip of the
//! first `i` symbols sends `j^k` to `(i-j+1)^{k+1 mod m}` for `j <= i` and
//! fixes the rest; a flop lowers the color instead. Listing the `m*n`
//! decorated symbols in order `1^0 < 1^1 < ... < n^{m-1}` turns each
//! reversal into a permutation matrix of size `mn`.
//!
//! Summed over all reversal indices, these matrices decompose in closed
//! form into an `n x n` grid of order-`m` circulant blocks plus a diagonal
//! correction: block `(a, b)` is the color-shift circulant when
//! `a + b <= n + 1` and zero otherwise, and the diagonal correction counts
//! the reversals that fix each decorated symbol.

use crate::circulant::{shift_both, shift_up};
use crate::colored::{PrefixReversal, ReversalSign};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

/// Which generator set a matrix or graph is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Flips and flops together; the associated graph is undirected.
    Undirected,
    /// Flips only; the associated graph is directed.
    Directed,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Undirected => "undirected",
            Variant::Directed => "directed",
        }
    }
}

/// A decorated symbol: `symbol` in `1..=n` carrying `color` in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntryIndex {
    pub symbol: u32,
    pub color: u32,
}

impl EntryIndex {
    pub fn new(symbol: u32, color: u32, m: u32, n: usize) -> Result<Self> {
        if symbol == 0 || symbol as usize > n {
            return Err(Error::IndexOutOfRange {
                index: symbol as i64,
                min: 1,
                max: n as i64,
            });
        }
        if color >= m {
            return Err(Error::IndexOutOfRange {
                index: color as i64,
                min: 0,
                max: m as i64 - 1,
            });
        }
        Ok(Self { symbol, color })
    }

    /// Row/column index of this decorated symbol: symbols ascending, colors
    /// ascending within a symbol.
    pub fn position(&self, m: u32) -> usize {
        (self.symbol as usize - 1) * m as usize + self.color as usize
    }

    /// Inverse of [`position`](Self::position).
    pub fn from_position(pos: usize, m: u32, n: usize) -> Result<Self> {
        if pos >= m as usize * n {
            return Err(Error::IndexOutOfRange {
                index: pos as i64,
                min: 0,
                max: (m as usize * n) as i64 - 1,
            });
        }
        Ok(Self {
            symbol: (pos / m as usize) as u32 + 1,
            color: (pos % m as usize) as u32,
        })
    }
}

/// Image of a decorated symbol under one prefix reversal.
pub fn entry_image(r: PrefixReversal, e: EntryIndex, m: u32, n: usize) -> Result<EntryIndex> {
    if r.index == 0 || r.index > n {
        return Err(Error::IndexOutOfRange {
            index: r.index as i64,
            min: 1,
            max: n as i64,
        });
    }
    let e = EntryIndex::new(e.symbol, e.color, m, n)?;
    if e.symbol as usize > r.index {
        return Ok(e);
    }
    let symbol = r.index as u32 - e.symbol + 1;
    let color = match r.sign {
        ReversalSign::Flip => (e.color + 1) % m,
        ReversalSign::Flop => (e.color + m - 1) % m,
    };
    Ok(EntryIndex { symbol, color })
}

/// The `mn x mn` permutation matrix of one reversal acting on decorated
/// symbols: entry `(e, image(e)) = 1`.
pub fn reversal_matrix(r: PrefixReversal, m: u32, n: usize) -> Result<ExactMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("need m >= 1 and n >= 1".into()));
    }
    let size = m as usize * n;
    let mut p = ExactMatrix::zero(size, size);
    for pos in 0..size {
        let e = EntryIndex::from_position(pos, m, n)?;
        let image = entry_image(r, e, m, n)?;
        p.set(pos, image.position(m), BigInt::from(1));
    }
    Ok(p)
}

/// The generators contributing to a variant, in a fixed order: flips
/// `r_1 ... r_n`, then (undirected only) flops `r_1 ... r_n`.
pub fn generator_list(n: usize, variant: Variant) -> Vec<PrefixReversal> {
    let mut gens: Vec<PrefixReversal> = (1..=n).map(PrefixReversal::flip).collect();
    if variant == Variant::Undirected {
        gens.extend((1..=n).map(PrefixReversal::flop));
    }
    gens
}

/// Diagonal correction matrix: block `i` (1-based) is `2(i-1) * I_m`. Its
/// entry at a decorated symbol counts the flips and flops fixing it.
pub fn diagonal_correction(m: u32, n: usize) -> Result<ExactMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("need m >= 1 and n >= 1".into()));
    }
    let size = m as usize * n;
    let mut d = ExactMatrix::zero(size, size);
    for pos in 0..size {
        let block = pos / m as usize; // 0-based symbol block
        d.set(pos, pos, BigInt::from(2 * block as i64));
    }
    Ok(d)
}

/// Sum of the reversal matrices over the variant's generator list.
pub fn generator_sum(m: u32, n: usize, variant: Variant) -> Result<ExactMatrix> {
    let size = m as usize * n;
    let mut acc = ExactMatrix::zero(size, size);
    for r in generator_list(n, variant) {
        acc = acc.add(&reversal_matrix(r, m, n)?)?;
    }
    Ok(acc)
}

/// The closed form of [`generator_sum`]: circulant blocks where
/// `a + b <= n + 1` plus the diagonal correction (halved exactly in the
/// flips-only case).
pub fn closed_form(m: u32, n: usize, variant: Variant) -> Result<ExactMatrix> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("need m >= 1 and n >= 1".into()));
    }
    let mm = m as usize;
    let block = match variant {
        Variant::Undirected => shift_both(mm)?.expand(),
        Variant::Directed => shift_up(mm)?.expand(),
    };
    let size = mm * n;
    let mut out = ExactMatrix::zero(size, size);
    for a in 1..=n {
        for b in 1..=n {
            if a + b <= n + 1 {
                for r in 0..mm {
                    for c in 0..mm {
                        let v = block.get(r, c);
                        if !v.is_zero() {
                            out.set((a - 1) * mm + r, (b - 1) * mm + c, v.clone());
                        }
                    }
                }
            }
        }
    }
    let d = diagonal_correction(m, n)?;
    let d = match variant {
        Variant::Undirected => d,
        Variant::Directed => d.half()?,
    };
    out.add(&d)
}
