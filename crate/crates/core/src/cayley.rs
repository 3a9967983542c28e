//! Cayley graphs of colored permutations under prefix reversals.
//!
//! Vertices are all `m^n * n!` arrangements; each generator `r` contributes
//! the arcs `v -> r(v)`. With flips and flops together the arc relation is
//! symmetric and the graph is the undirected prefix-reversal graph (2n
//! generators, 2n-regular); with flips alone it is the directed variant
//! (n-regular). For one or two colors the classical graphs are available
//! through [`GeneratorChoice::Classical`], which uses flips only and, for a
//! single color, drops the trivial top flip.
//!
//! Vertices are numbered by their enumeration rank, so vertex 0 is the
//! identity arrangement.

use crate::colored::{ColoredPermutation, PrefixReversal};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::reversal::{generator_list, Variant};
use num_bigint::BigInt;
use num_rational::Ratio;

/// Default bound on the number of vertices a graph build will attempt.
pub const DEFAULT_VERTEX_CAP: u128 = 100_000;

/// Which generators a graph is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorChoice {
    /// Flips and flops (undirected), or flips only (directed), per variant.
    Standard(Variant),
    /// The classical pancake-style generator set: flips only, undirected
    /// (each flip is then an involution). Only meaningful for m <= 2; with
    /// m = 1 the trivial top flip is dropped.
    Classical,
}

#[derive(Clone, Debug)]
pub struct CayleyGraph {
    m: u32,
    n: usize,
    directed: bool,
    generators: Vec<PrefixReversal>,
    /// Flattened out-neighbor table: `targets[v * generators.len() + g]`.
    targets: Vec<u32>,
}

impl CayleyGraph {
    /// Builds the graph for the given variant with the default vertex cap.
    pub fn build(m: u32, n: usize, variant: Variant) -> Result<Self> {
        Self::build_with(m, n, GeneratorChoice::Standard(variant), DEFAULT_VERTEX_CAP)
    }

    pub fn build_with(m: u32, n: usize, choice: GeneratorChoice, cap: u128) -> Result<Self> {
        let order = ColoredPermutation::group_order(m, n)?;
        if order > cap {
            return Err(Error::SizeCapExceeded { order, cap });
        }
        let generators = match choice {
            GeneratorChoice::Standard(variant) => generator_list(n, variant),
            GeneratorChoice::Classical => {
                if m > 2 {
                    return Err(Error::Unsupported(format!(
                        "classical generator set needs m <= 2, got m={m}"
                    )));
                }
                let start = if m == 1 { 2 } else { 1 };
                if start > n {
                    return Err(Error::InvalidParameter(
                        "classical graph with one color needs n >= 2".into(),
                    ));
                }
                (start..=n).map(PrefixReversal::flip).collect()
            }
        };
        let directed = matches!(choice, GeneratorChoice::Standard(Variant::Directed));

        let count = order as usize;
        let mut targets = Vec::with_capacity(count * generators.len());
        for v in 0..count {
            let p = ColoredPermutation::unrank(m, n, v as u128)?;
            for r in &generators {
                let image = r.apply(&p)?;
                targets.push(image.rank() as u32);
            }
        }
        Ok(Self {
            m,
            n,
            directed,
            generators,
            targets,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn vertex_count(&self) -> usize {
        if self.generators.is_empty() {
            0
        } else {
            self.targets.len() / self.generators.len()
        }
    }

    pub fn generators(&self) -> &[PrefixReversal] {
        &self.generators
    }

    /// Out-neighbors of `v`, one per generator, in generator order.
    pub fn out_neighbors(&self, v: usize) -> &[u32] {
        let g = self.generators.len();
        &self.targets[v * g..(v + 1) * g]
    }

    pub fn degree(&self) -> usize {
        self.generators.len()
    }

    /// Adjacency matrix with multiplicities: entry `(u, w)` counts the
    /// generators sending `u` to `w`.
    pub fn adjacency_matrix(&self) -> ExactMatrix {
        let v = self.vertex_count();
        let mut a = ExactMatrix::zero(v, v);
        let one = BigInt::from(1);
        for u in 0..v {
            for &w in self.out_neighbors(u) {
                a.add_assign_at(u, w as usize, &one);
            }
        }
        a
    }

    /// Number of edges (with multiplicity) leaving the vertex set `s`.
    /// Undirected graphs only: every crossing edge is counted once.
    pub fn boundary_size(&self, s: &[usize]) -> Result<u64> {
        if self.directed {
            return Err(Error::DirectedUnsupported);
        }
        let v = self.vertex_count();
        let mut in_s = vec![false; v];
        for &x in s {
            if x >= v {
                return Err(Error::IndexOutOfRange {
                    index: x as i64,
                    min: 0,
                    max: v as i64 - 1,
                });
            }
            in_s[x] = true;
        }
        // The generator set is closed under inverses, so arcs pair up and
        // the count of arcs leaving `s` equals the count of crossing edges
        // with multiplicity.
        let mut boundary = 0u64;
        for u in 0..v {
            if !in_s[u] {
                continue;
            }
            for &w in self.out_neighbors(u) {
                if !in_s[w as usize] {
                    boundary += 1;
                }
            }
        }
        Ok(boundary)
    }

    /// Exact expansion constant by exhaustive search, with a witness set.
    pub fn expansion_ratio_exact(&self, vertex_cap: usize) -> Result<ExpansionResult> {
        if self.directed {
            return Err(Error::DirectedUnsupported);
        }
        let v = self.vertex_count();
        if v > vertex_cap {
            return Err(Error::SizeCapExceeded {
                order: v as u128,
                cap: vertex_cap as u128,
            });
        }
        let adj: Vec<Vec<usize>> = (0..v)
            .map(|u| self.out_neighbors(u).iter().map(|&w| w as usize).collect())
            .collect();
        expansion_ratio_adjacency(&adj)
    }

    /// Per-vertex profile of neighbor multiplicities: the sorted list of
    /// (multiplicity, is-loop) pairs over distinct targets. Equal profiles
    /// across all vertices witness the symmetry the constructions rely on.
    pub fn neighbor_profile(&self, v: usize) -> Vec<(u32, bool)> {
        let mut counts: std::collections::BTreeMap<u32, u32> = std::collections::BTreeMap::new();
        for &w in self.out_neighbors(v) {
            *counts.entry(w).or_insert(0) += 1;
        }
        let mut profile: Vec<(u32, bool)> = counts
            .into_iter()
            .map(|(w, c)| (c, w as usize == v))
            .collect();
        profile.sort_unstable();
        profile
    }

    /// Summary of parallel edges and self-loops across the whole graph.
    pub fn multi_edge_audit(&self) -> MultiEdgeAudit {
        let v = self.vertex_count();
        let mut vertices_with_parallel_edges = 0usize;
        let mut max_multiplicity = 0u32;
        let mut self_loops = 0usize;
        for u in 0..v {
            let profile = self.neighbor_profile(u);
            let mut best = 0u32;
            for &(c, is_loop) in &profile {
                best = best.max(c);
                if is_loop {
                    self_loops += c as usize;
                }
            }
            if best > 1 {
                vertices_with_parallel_edges += 1;
            }
            max_multiplicity = max_multiplicity.max(best);
        }
        MultiEdgeAudit {
            vertices_with_parallel_edges,
            max_multiplicity,
            self_loops,
        }
    }

    /// True when every vertex can be reached from vertex 0 along arcs
    /// (ignoring directions, which for the generator sets here coincide
    /// with ordinary connectivity).
    pub fn is_connected(&self) -> bool {
        let v = self.vertex_count();
        if v == 0 {
            return true;
        }
        let mut seen = vec![false; v];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut found = 1usize;
        while let Some(u) = stack.pop() {
            for &w in self.out_neighbors(u) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    found += 1;
                    stack.push(w);
                }
            }
        }
        found == v
    }

    /// Deterministic edge records: `(src, dst, generator label)`. Directed
    /// graphs list every arc in vertex-then-generator order; undirected
    /// graphs list each edge once, from its lower-ranked endpoint (parallel
    /// edges appear once per generator, loops once per flip).
    pub fn edge_records(&self) -> Vec<(u32, u32, String)> {
        let v = self.vertex_count();
        let mut records = Vec::new();
        for u in 0..v {
            for (g, &w) in self.out_neighbors(u).iter().enumerate() {
                let gen = &self.generators[g];
                let keep = if self.directed {
                    true
                } else if (w as usize) == u {
                    matches!(gen.sign, crate::colored::ReversalSign::Flip)
                } else {
                    (u as u32) < w
                };
                if keep {
                    records.push((u as u32, w, gen.label()));
                }
            }
        }
        records
    }

    /// DOT rendering of [`edge_records`](Self::edge_records).
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let (kind, arrow) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        out.push_str(&format!(
            "{} prefix_reversal_m{}_n{} {{\n",
            kind, self.m, self.n
        ));
        for (u, w, label) in self.edge_records() {
            out.push_str(&format!("  {u} {arrow} {w} [label=\"{label}\"];\n"));
        }
        out.push_str("}\n");
        out
    }

    /// CSV rendering of [`edge_records`](Self::edge_records) with a header.
    pub fn to_edge_csv(&self) -> String {
        let mut out = String::from("src,dst,generator\n");
        for (u, w, label) in self.edge_records() {
            out.push_str(&format!("{u},{w},{label}\n"));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiEdgeAudit {
    pub vertices_with_parallel_edges: usize,
    pub max_multiplicity: u32,
    pub self_loops: usize,
}

#[derive(Clone, Debug)]
pub struct ExpansionResult {
    /// Minimum of `|boundary(S)| / |S|` over nonempty `S` with
    /// `|S| <= |V| / 2`.
    pub ratio: Ratio<u64>,
    /// Lexicographically first minimizing set, as sorted vertex indices.
    pub witness: Vec<usize>,
}

/// Exhaustive expansion constant of an undirected multigraph given as
/// out-neighbor lists (arc-symmetric, loops allowed and never crossing).
pub fn expansion_ratio_adjacency(adj: &[Vec<usize>]) -> Result<ExpansionResult> {
    let v = adj.len();
    if v == 0 {
        return Err(Error::InvalidParameter("empty graph".into()));
    }
    if v > 24 {
        return Err(Error::SizeCapExceeded {
            order: v as u128,
            cap: 24,
        });
    }
    let half = v / 2;
    let mut best: Option<(u64, u64, u32)> = None; // (boundary, size, mask)
    for mask in 1u32..(1u32 << v) {
        let size = mask.count_ones() as u64;
        if size as usize > half {
            continue;
        }
        let mut boundary = 0u64;
        let mut bits = mask;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            for &w in &adj[u] {
                if w != u && (mask >> w) & 1 == 0 {
                    boundary += 1;
                }
            }
        }
        let better = match &best {
            None => true,
            // boundary / size < best.0 / best.1, exactly.
            Some((b, s, _)) => boundary * s < b * size,
        };
        if better {
            best = Some((boundary, size, mask));
        }
    }
    let (boundary, size, mask) = best.expect("at least one candidate set");
    let witness = (0..v).filter(|&u| (mask >> u) & 1 == 1).collect();
    Ok(ExpansionResult {
        ratio: Ratio::new(boundary, size),
        witness,
    })
}
