//! Equitable vertex partitions and their quotient matrices.
//!
//! A partition of a graph's vertices is equitable when every vertex of a
//! class sees the same number of neighbors in each class; the class-level
//! count matrix is the quotient. For the prefix-reversal graphs built here
//! there is a canonical choice: group arrangements by where the tracked
//! decorated symbol `1^0` sits, i.e. by the pair (position of symbol 1,
//! color of symbol 1). That partition is equitable and its quotient is
//! exactly the generator-sum matrix, which is how spectral facts proved on
//! the small matrix transfer to the full graph: if `B v = lambda v` and
//! `M_P` is the characteristic matrix, then `A (M_P v) = lambda (M_P v)`.

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::reversal::EntryIndex;
use crate::ColoredPermutation;
use num_bigint::BigInt;
use num_traits::Zero;

/// A partition of `0..vertex_count` into numbered classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPartition {
    /// `class_of[v]` is the class index of vertex `v`.
    class_of: Vec<usize>,
    class_count: usize,
}

impl VertexPartition {
    /// Builds a partition from a class assignment; classes must be
    /// `0..class_count` with every class nonempty.
    pub fn new(class_of: Vec<usize>, class_count: usize) -> Result<Self> {
        if class_count == 0 || class_of.is_empty() {
            return Err(Error::InvalidParameter(
                "partition needs at least one class and one vertex".into(),
            ));
        }
        let mut seen = vec![false; class_count];
        for &c in &class_of {
            if c >= class_count {
                return Err(Error::IndexOutOfRange {
                    index: c as i64,
                    min: 0,
                    max: class_count as i64 - 1,
                });
            }
            seen[c] = true;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidParameter("empty partition class".into()));
        }
        Ok(Self {
            class_of,
            class_count,
        })
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.class_count];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    /// The 0/1 characteristic matrix: rows are vertices, columns classes.
    pub fn characteristic_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.vertex_count(), self.class_count);
        for (v, &c) in self.class_of.iter().enumerate() {
            m.set(v, c, BigInt::from(1));
        }
        m
    }

    /// Pushes a class-level vector up to the vertices: every vertex gets
    /// its class's coordinate. This is `characteristic_matrix() * v`.
    pub fn lift(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.class_count {
            return Err(Error::MismatchedOperands(format!(
                "{} classes, vector of length {}",
                self.class_count,
                v.len()
            )));
        }
        Ok(self.class_of.iter().map(|&c| v[c].clone()).collect())
    }
}

/// Partition of a prefix-reversal graph's vertices by where the tracked
/// decorated symbol `1^0` sits: the class of an arrangement is the
/// position of symbol 1 paired with its color, ordered like matrix rows
/// (position-major, color within). The identity arrangement lands in
/// class 0. Classes all have size `m^{n-1} * (n-1)!`.
pub fn position_partition(g: &CayleyGraph) -> Result<VertexPartition> {
    let m = g.m();
    let n = g.n();
    let count = g.vertex_count();
    let mut class_of = Vec::with_capacity(count);
    for v in 0..count {
        let p = ColoredPermutation::unrank(m, n, v as u128)?;
        let pos = p.position_of(1)?;
        let color = p.colors()[pos - 1];
        let class = EntryIndex::new(pos as u32, color, m, n)?.position(m);
        class_of.push(class);
    }
    VertexPartition::new(class_of, m as usize * n)
}

/// Neighbor orientation used when counting into classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Count along arcs `v -> r(v)`.
    Out,
    /// Count along arcs into `v`.
    In,
}

/// Outcome of an equitability check: either the quotient matrix, or the
/// first counterexample found.
#[derive(Clone, Debug)]
pub enum EquitableOutcome {
    Equitable { quotient: ExactMatrix },
    Violation(EquitableViolation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquitableViolation {
    pub class: usize,
    pub vertex: usize,
    pub target_class: usize,
    pub expected: u64,
    pub found: u64,
}

/// Checks every vertex of every class against the class representative's
/// neighbor counts. Returns the quotient on success and the first
/// violation (lowest class, then lowest vertex rank, then lowest target
/// class) otherwise.
pub fn check_equitable(
    g: &CayleyGraph,
    p: &VertexPartition,
    direction: Direction,
) -> Result<EquitableOutcome> {
    let vcount = g.vertex_count();
    if p.vertex_count() != vcount {
        return Err(Error::MismatchedOperands(format!(
            "partition over {} vertices, graph has {}",
            p.vertex_count(),
            vcount
        )));
    }
    let k = p.class_count();

    let in_neighbors: Option<Vec<Vec<u32>>> = match direction {
        Direction::Out => None,
        Direction::In => {
            let mut inn: Vec<Vec<u32>> = vec![Vec::new(); vcount];
            for u in 0..vcount {
                for &w in g.out_neighbors(u) {
                    inn[w as usize].push(u as u32);
                }
            }
            Some(inn)
        }
    };
    let counts_for = |v: usize| -> Vec<u64> {
        let mut row = vec![0u64; k];
        match &in_neighbors {
            None => {
                for &w in g.out_neighbors(v) {
                    row[p.class_of(w as usize)] += 1;
                }
            }
            Some(inn) => {
                for &w in &inn[v] {
                    row[p.class_of(w as usize)] += 1;
                }
            }
        }
        row
    };

    // Representatives: lowest-ranked vertex of each class.
    let mut rep_rows: Vec<Option<Vec<u64>>> = vec![None; k];
    for v in 0..vcount {
        let c = p.class_of(v);
        if rep_rows[c].is_none() {
            rep_rows[c] = Some(counts_for(v));
        }
    }

    for v in 0..vcount {
        let c = p.class_of(v);
        let expected = rep_rows[c].as_ref().expect("nonempty class");
        let found = counts_for(v);
        if &found != expected {
            let target_class = (0..k)
                .find(|&t| found[t] != expected[t])
                .expect("rows differ");
            return Ok(EquitableOutcome::Violation(EquitableViolation {
                class: c,
                vertex: v,
                target_class,
                expected: expected[target_class],
                found: found[target_class],
            }));
        }
    }

    let quotient = ExactMatrix::from_fn(k, k, |r, c| {
        BigInt::from(rep_rows[r].as_ref().expect("nonempty class")[c])
    });
    Ok(EquitableOutcome::Equitable { quotient })
}

/// Exact matrix-level statement of equitability for the out orientation:
/// `A * M_P == M_P * B`. Intended for small graphs where materializing the
/// products is cheap.
pub fn quotient_identity_holds(g: &CayleyGraph, p: &VertexPartition, b: &ExactMatrix) -> bool {
    let a = g.adjacency_matrix();
    let mp = p.characteristic_matrix();
    match (a.mul(&mp), mp.mul(b)) {
        (Ok(left), Ok(right)) => left == right,
        _ => false,
    }
}

/// Lifts a quotient eigenvector and verifies the eigenvalue equation on
/// the full adjacency matrix in exact arithmetic. Returns the lifted
/// vector on success and the first failing vertex otherwise.
pub fn lift_eigenpair(
    g: &CayleyGraph,
    p: &VertexPartition,
    lambda: i64,
    v: &[BigInt],
) -> Result<std::result::Result<Vec<BigInt>, usize>> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::InvalidParameter("zero eigenvector".into()));
    }
    let lifted = p.lift(v)?;
    let a = g.adjacency_matrix();
    let image = a.matvec(&lifted)?;
    let l = BigInt::from(lambda);
    for (u, (img, lif)) in image.iter().zip(&lifted).enumerate() {
        if img != &(&l * lif) {
            return Ok(Err(u));
        }
    }
    Ok(Ok(lifted))
}
