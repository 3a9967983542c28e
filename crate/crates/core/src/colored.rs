//! Colored permutations and prefix reversals.
//!
//! An element of the group handled here arranges the symbols `1..=n` in some
//! order and attaches to each symbol a color in `0..m`. We write elements in
//! one-line notation, e.g. `3^1 5^0 2^0 4^2 1^0`: position 1 holds symbol 3
//! with color 1, and so on. The identity is `1^0 2^0 ... n^0`.
//!
//! Two operations generate the whole group:
//!
//! * a *flip* of the first `i` positions reverses their order and adds 1
//!   (mod m) to each of their colors;
//! * a *flop* reverses the same prefix but subtracts 1 (mod m) instead.
//!
//! The flop with index `i` is the group inverse of the flip with index `i`.

use crate::error::{Error, Result};
use std::fmt;

/// A colored permutation in one-line notation.
///
/// `symbols[j]` is the symbol at position `j + 1` (1-based positions,
/// symbol values in `1..=n`), and `colors[j]` is that symbol's color in
/// `0..m`. Values are immutable after construction; operations return new
/// elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredPermutation {
    m: u32,
    symbols: Vec<u32>,
    colors: Vec<u32>,
}

impl ColoredPermutation {
    /// The identity arrangement `1^0 2^0 ... n^0`.
    pub fn identity(m: u32, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("color count m must be >= 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("symbol count n must be >= 1".into()));
        }
        Ok(Self {
            m,
            symbols: (1..=n as u32).collect(),
            colors: vec![0; n],
        })
    }

    /// Builds an element from explicit symbol and color vectors, validating
    /// that `symbols` is a permutation of `1..=n` and every color is `< m`.
    pub fn from_parts(m: u32, symbols: Vec<u32>, colors: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("color count m must be >= 1".into()));
        }
        let n = symbols.len();
        if n == 0 {
            return Err(Error::InvalidParameter("symbol count n must be >= 1".into()));
        }
        if colors.len() != n {
            return Err(Error::MismatchedOperands(format!(
                "{} symbols but {} colors",
                n,
                colors.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &symbols {
            if s == 0 || s as usize > n {
                return Err(Error::InvalidParameter(format!(
                    "symbol {s} outside 1..={n}"
                )));
            }
            if seen[s as usize - 1] {
                return Err(Error::InvalidParameter(format!("symbol {s} repeated")));
            }
            seen[s as usize - 1] = true;
        }
        for &c in &colors {
            if c >= m {
                return Err(Error::InvalidParameter(format!(
                    "color {c} outside 0..{m}"
                )));
            }
        }
        Ok(Self { m, symbols, colors })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    /// Position (1-based) currently holding `symbol`.
    pub fn position_of(&self, symbol: u32) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&s| s == symbol)
            .map(|p| p + 1)
            .ok_or(Error::IndexOutOfRange {
                index: symbol as i64,
                min: 1,
                max: self.n() as i64,
            })
    }

    /// Reverses the first `i` positions and adds 1 (mod m) to their colors.
    pub fn flip(&self, i: usize) -> Result<Self> {
        self.reverse_prefix(i, 1)
    }

    /// Reverses the first `i` positions and subtracts 1 (mod m) from their
    /// colors. Inverse of [`flip`](Self::flip) with the same index.
    pub fn flop(&self, i: usize) -> Result<Self> {
        self.reverse_prefix(i, self.m - 1)
    }

    fn reverse_prefix(&self, i: usize, color_shift: u32) -> Result<Self> {
        let n = self.n();
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                min: 1,
                max: n as i64,
            });
        }
        let mut symbols = self.symbols.clone();
        let mut colors = self.colors.clone();
        symbols[..i].reverse();
        colors[..i].reverse();
        for c in &mut colors[..i] {
            *c = (*c + color_shift) % self.m;
        }
        Ok(Self {
            m: self.m,
            symbols,
            colors,
        })
    }

    /// Group product `self * other`, defined so that composing with a
    /// generator element on the left performs the corresponding prefix
    /// reversal: `g.element(m, n).compose(p) == g.apply(p)` for every
    /// prefix reversal `g`.
    ///
    /// Concretely, position `j` of the product holds the symbol that
    /// `other` has at position `self.symbols[j]`, with color equal to the
    /// sum of the two colors involved (mod m).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.m != other.m || self.n() != other.n() {
            return Err(Error::MismatchedOperands(format!(
                "({}, {}) vs ({}, {})",
                self.m,
                self.n(),
                other.m,
                other.n()
            )));
        }
        let n = self.n();
        let mut symbols = Vec::with_capacity(n);
        let mut colors = Vec::with_capacity(n);
        for j in 0..n {
            let through = self.symbols[j] as usize - 1;
            symbols.push(other.symbols[through]);
            colors.push((self.colors[j] + other.colors[through]) % self.m);
        }
        Ok(Self {
            m: self.m,
            symbols,
            colors,
        })
    }

    /// Group inverse: `p.compose(&p.inverse()) == identity`.
    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut symbols = vec![0u32; n];
        let mut colors = vec![0u32; n];
        for j in 0..n {
            let s = self.symbols[j] as usize - 1;
            symbols[s] = j as u32 + 1;
            colors[s] = (self.m - self.colors[j]) % self.m;
        }
        Self {
            m: self.m,
            symbols,
            colors,
        }
    }

    /// Number of elements of the group on `n` symbols with `m` colors,
    /// i.e. `m^n * n!`. Errors when the count overflows.
    pub fn group_order(m: u32, n: usize) -> Result<u128> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(
                "group order needs m >= 1 and n >= 1".into(),
            ));
        }
        let mut order: u128 = 1;
        for k in 1..=n as u128 {
            order = order.checked_mul(k).ok_or_else(|| {
                Error::InvalidParameter(format!("group order m={m} n={n} overflows"))
            })?;
        }
        for _ in 0..n {
            order = order.checked_mul(m as u128).ok_or_else(|| {
                Error::InvalidParameter(format!("group order m={m} n={n} overflows"))
            })?;
        }
        Ok(order)
    }

    /// Enumeration index of this element in `0..group_order(m, n)`.
    ///
    /// The index is a mixed-radix pair: the lexicographic rank of the symbol
    /// sequence is the most significant part, and the color vector read as a
    /// base-m number (position 1 most significant) is the least significant
    /// part. The identity has rank 0.
    pub fn rank(&self) -> u128 {
        let n = self.n();
        let mut perm_rank: u128 = 0;
        for j in 0..n {
            let smaller_after = self.symbols[j + 1..]
                .iter()
                .filter(|&&s| s < self.symbols[j])
                .count() as u128;
            perm_rank = perm_rank * (n - j) as u128 + smaller_after;
        }
        let mut color_rank: u128 = 0;
        for &c in &self.colors {
            color_rank = color_rank * self.m as u128 + c as u128;
        }
        let mut m_pow_n: u128 = 1;
        for _ in 0..n {
            m_pow_n *= self.m as u128;
        }
        perm_rank * m_pow_n + color_rank
    }

    /// Inverse of [`rank`](Self::rank): `unrank(m, n, p.rank()) == p`.
    pub fn unrank(m: u32, n: usize, index: u128) -> Result<Self> {
        let order = Self::group_order(m, n)?;
        if index >= order {
            return Err(Error::IndexOutOfRange {
                index: index.min(i64::MAX as u128) as i64,
                min: 0,
                max: (order - 1).min(i64::MAX as u128) as i64,
            });
        }
        let mut m_pow_n: u128 = 1;
        for _ in 0..n {
            m_pow_n *= m as u128;
        }
        let mut perm_rank = index / m_pow_n;
        let mut color_rank = index % m_pow_n;

        // Factorial digits, most significant first.
        let mut digits = vec![0u128; n];
        for j in (0..n).rev() {
            let base = (n - j) as u128;
            digits[j] = perm_rank % base;
            perm_rank /= base;
        }
        let mut pool: Vec<u32> = (1..=n as u32).collect();
        let mut symbols = Vec::with_capacity(n);
        for &d in &digits {
            symbols.push(pool.remove(d as usize));
        }

        let mut colors = vec![0u32; n];
        for j in (0..n).rev() {
            colors[j] = (color_rank % m as u128) as u32;
            color_rank /= m as u128;
        }
        Self::from_parts(m, symbols, colors)
    }

    /// Parses the one-line text form, e.g. `3^1 5^0 2^0 4^2 1^0`.
    /// The color count `m` is not part of the text and must be supplied.
    pub fn parse(text: &str, m: u32) -> Result<Self> {
        let mut symbols = Vec::new();
        let mut colors = Vec::new();
        for token in text.split_whitespace() {
            let (s, c) = token
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("token `{token}` is not of the form s^c")))?;
            let s: u32 = s
                .parse()
                .map_err(|_| Error::Parse(format!("bad symbol in `{token}`")))?;
            let c: u32 = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad color in `{token}`")))?;
            symbols.push(s);
            colors.push(c);
        }
        Self::from_parts(m, symbols, colors)
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.n() {
            if j > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", self.symbols[j], self.colors[j])?;
        }
        Ok(())
    }
}

/// Direction of the color shift a prefix reversal applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReversalSign {
    /// Colors increase by 1 (mod m).
    Flip,
    /// Colors decrease by 1 (mod m).
    Flop,
}

/// One generator: reverse the first `index` positions, shifting colors
/// up (flip) or down (flop).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrefixReversal {
    pub index: usize,
    pub sign: ReversalSign,
}

impl PrefixReversal {
    pub fn flip(index: usize) -> Self {
        Self {
            index,
            sign: ReversalSign::Flip,
        }
    }

    pub fn flop(index: usize) -> Self {
        Self {
            index,
            sign: ReversalSign::Flop,
        }
    }

    /// Applies this reversal to `p` (left action on the arrangement).
    pub fn apply(&self, p: &ColoredPermutation) -> Result<ColoredPermutation> {
        match self.sign {
            ReversalSign::Flip => p.flip(self.index),
            ReversalSign::Flop => p.flop(self.index),
        }
    }

    /// The group element realizing this reversal, i.e. the result of
    /// applying it to the identity. Composing with it on the left equals
    /// [`apply`](Self::apply).
    pub fn element(&self, m: u32, n: usize) -> Result<ColoredPermutation> {
        self.apply(&ColoredPermutation::identity(m, n)?)
    }

    /// The inverse generator: flips and flops with equal index invert each
    /// other.
    pub fn inverse(&self) -> Self {
        Self {
            index: self.index,
            sign: match self.sign {
                ReversalSign::Flip => ReversalSign::Flop,
                ReversalSign::Flop => ReversalSign::Flip,
            },
        }
    }

    /// Short label used in exports, e.g. `r3+` or `r2-`.
    pub fn label(&self) -> String {
        let sign = match self.sign {
            ReversalSign::Flip => '+',
            ReversalSign::Flop => '-',
        };
        format!("r{}{}", self.index, sign)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_uncolored_ascending() {
        let id = ColoredPermutation::identity(3, 4).unwrap();
        assert_eq!(id.symbols(), &[1, 2, 3, 4]);
        assert_eq!(id.colors(), &[0, 0, 0, 0]);
        assert_eq!(id.to_string(), "1^0 2^0 3^0 4^0");
    }

    #[test]
    fn zero_parameters_are_rejected() {
        assert!(ColoredPermutation::identity(0, 3).is_err());
        assert!(ColoredPermutation::identity(3, 0).is_err());
    }

    #[test]
    fn flip_reverses_prefix_and_raises_colors() {
        let p = ColoredPermutation::parse("3^1 5^0 2^0 4^2 1^0", 3).unwrap();
        let flipped = p.flip(3).unwrap();
        assert_eq!(flipped.to_string(), "2^1 5^1 3^2 4^2 1^0");
    }

    #[test]
    fn flip_of_top_entry_only_shifts_its_color() {
        for m in [1u32, 2, 3, 5] {
            let id = ColoredPermutation::identity(m, 2).unwrap();
            let once = id.flip(1).unwrap();
            assert_eq!(once.symbols(), &[1, 2]);
            assert_eq!(once.colors()[0], 1 % m);
        }
    }

    #[test]
    fn flip_out_of_range_is_rejected() {
        let id = ColoredPermutation::identity(3, 2).unwrap();
        assert!(id.flip(0).is_err());
        assert!(id.flip(3).is_err());
    }

    #[test]
    fn flop_undoes_flip_everywhere() {
        let p = ColoredPermutation::parse("3^1 5^0 2^0 4^2 1^0", 3).unwrap();
        for i in 1..=5 {
            assert_eq!(p.flip(i).unwrap().flop(i).unwrap(), p);
            assert_eq!(p.flop(i).unwrap().flip(i).unwrap(), p);
        }
    }

    #[test]
    fn flop_example() {
        let p = ColoredPermutation::parse("1^0 2^0", 3).unwrap();
        assert_eq!(p.flop(2).unwrap().to_string(), "2^2 1^2");
    }

    #[test]
    fn compose_by_generator_element_is_the_reversal() {
        // Every generator element, composed on the left, acts as the flip
        // or flop it came from.
        for (m, n) in [(3u32, 2usize), (3, 4), (4, 3), (2, 5), (1, 4)] {
            let mut p = ColoredPermutation::identity(m, n).unwrap();
            // Scramble deterministically.
            for i in 1..=n {
                p = p.flip(i).unwrap();
            }
            for i in 1..=n {
                for sign in [ReversalSign::Flip, ReversalSign::Flop] {
                    let g = PrefixReversal { index: i, sign };
                    let by_element = g.element(m, n).unwrap().compose(&p).unwrap();
                    let by_action = g.apply(&p).unwrap();
                    assert_eq!(by_element, by_action, "m={m} n={n} {}", g.label());
                }
            }
        }
    }

    #[test]
    fn flip_element_has_expected_one_line_form() {
        let r3 = PrefixReversal::flip(3).element(3, 5).unwrap();
        assert_eq!(r3.to_string(), "3^1 2^1 1^1 4^0 5^0");
        let r3m = PrefixReversal::flop(3).element(3, 5).unwrap();
        assert_eq!(r3m.to_string(), "3^2 2^2 1^2 4^0 5^0");
    }

    #[test]
    fn double_flip_of_whole_stack_squares_colors() {
        let id = ColoredPermutation::identity(3, 2).unwrap();
        let r1 = PrefixReversal::flip(1).element(3, 2).unwrap();
        let twice = r1.compose(&r1).unwrap();
        assert_eq!(twice.to_string(), "1^2 2^0");
        assert_eq!(id.flip(1).unwrap().flip(1).unwrap(), twice);
    }

    #[test]
    fn repeated_top_flip_has_order_m() {
        for m in 1..=6u32 {
            let id = ColoredPermutation::identity(m, 3).unwrap();
            let mut p = id.clone();
            for _ in 0..m {
                p = p.flip(1).unwrap();
            }
            assert_eq!(p, id, "m={m}");
        }
    }

    #[test]
    fn inverse_of_flip_element_is_flop_element() {
        for (m, n) in [(3u32, 4usize), (5, 3), (2, 4), (1, 3)] {
            for i in 1..=n {
                let flip = PrefixReversal::flip(i).element(m, n).unwrap();
                let flop = PrefixReversal::flop(i).element(m, n).unwrap();
                assert_eq!(flip.inverse(), flop, "m={m} n={n} i={i}");
            }
        }
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = ColoredPermutation::parse("3^1 5^0 2^0 4^2 1^0", 3).unwrap();
        let id = ColoredPermutation::identity(3, 5).unwrap();
        assert_eq!(p.compose(&p.inverse()).unwrap(), id);
        assert_eq!(p.inverse().compose(&p).unwrap(), id);
    }

    #[test]
    fn rank_of_identity_is_zero_and_unrank_inverts() {
        let id = ColoredPermutation::identity(3, 3).unwrap();
        assert_eq!(id.rank(), 0);
        assert_eq!(ColoredPermutation::unrank(3, 3, 0).unwrap(), id);

        let order = ColoredPermutation::group_order(3, 3).unwrap();
        assert_eq!(order, 162);
        for idx in 0..order {
            let p = ColoredPermutation::unrank(3, 3, idx).unwrap();
            assert_eq!(p.rank(), idx);
        }
    }

    #[test]
    fn unrank_rejects_out_of_range() {
        assert!(ColoredPermutation::unrank(3, 2, 18).is_err());
        assert!(ColoredPermutation::unrank(3, 2, 17).is_ok());
    }

    #[test]
    fn color_digits_are_least_significant() {
        // Ranks 0..m^n share the identity permutation and step through
        // color vectors with position n varying fastest.
        let p1 = ColoredPermutation::unrank(3, 2, 1).unwrap();
        assert_eq!(p1.to_string(), "1^0 2^1");
        let p3 = ColoredPermutation::unrank(3, 2, 3).unwrap();
        assert_eq!(p3.to_string(), "1^1 2^0");
        let p9 = ColoredPermutation::unrank(3, 2, 9).unwrap();
        assert_eq!(p9.to_string(), "2^0 1^0");
    }

    #[test]
    fn parse_validates_input() {
        assert!(ColoredPermutation::parse("1^0 1^0", 3).is_err());
        assert!(ColoredPermutation::parse("1^0 3^0", 3).is_err());
        assert!(ColoredPermutation::parse("1^3 2^0", 3).is_err());
        assert!(ColoredPermutation::parse("1 2", 3).is_err());
        assert!(ColoredPermutation::parse("", 3).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        let p = ColoredPermutation::parse("3^1 5^0 2^0 4^2 1^0", 3).unwrap();
        assert_eq!(ColoredPermutation::parse(&p.to_string(), 3).unwrap(), p);
    }
}
