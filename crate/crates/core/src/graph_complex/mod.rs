//! The genus-one commutative graph complex `FT(Com)(1,m)`.
//!
//! Generators are isomorphism classes of connected stable graphs of total
//! genus one with legs `1..=m`, oriented by the determinant of their edge
//! set and graded by edge count. Classes admitting an automorphism that
//! permutes the edges oddly vanish. The differential sums over edge
//! contractions with the same ordering rule as the Stirling complexes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use crate::characters::stirling_unsigned;
use crate::error::Result;
use crate::linalg::{
    naive_betti, BettiVector, ChainComplex, HomologyReport, RankOptions, SparseIntMatrix,
};
use crate::perm::sorting_sign;
use crate::stirling::StirlingComplex;
use crate::trees::{graph_to_dot, CanonicalCode, DotMarks, Graph, ModularGraph};

/// One isomorphism class, stored in canonical layout so that its edge
/// indices give the reference orientation.
#[derive(Clone, Debug)]
pub struct GraphGenerator {
    pub graph: ModularGraph,
    pub code: CanonicalCode,
    /// Some automorphism acts oddly on the edges, so the class is zero.
    pub killed: bool,
}

impl GraphGenerator {
    fn from_graph(graph: &ModularGraph) -> Self {
        let graph = graph.canonical_representative();
        let code = graph.canonical_code();
        let killed = graph.has_odd_automorphism();
        GraphGenerator {
            graph,
            code,
            killed,
        }
    }

    pub fn to_dot(&self, name: &str) -> String {
        let marks = DotMarks {
            genus: Some(self.graph.genus_labels()),
            ..Default::default()
        };
        graph_to_dot(self.graph.graph(), name, &marks)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphOptions {
    /// Drop classes with an odd automorphism. Turning this off keeps them
    /// with their canonical-layout orientation.
    pub kill_odd: bool,
}

impl Default for GraphOptions {
    fn default() -> Self {
        GraphOptions { kill_odd: true }
    }
}

/// Every graph obtained by un-contracting one edge.
fn expansions(g: &ModularGraph) -> Vec<ModularGraph> {
    let graph = g.graph();
    let vertices = graph.vertex_count();
    let legs = graph.legs();
    let edges = graph.edges();
    let mut out = Vec::new();
    for v in 0..vertices {
        let flags = graph.flags_at(v);
        let genus = g.genus_label(v);
        // loop creation
        if genus >= 1 {
            let mut new_genus = g.genus_labels().to_vec();
            new_genus[v] -= 1;
            let mut new_edges: Vec<(usize, usize)> = edges
                .iter()
                .map(|&(a, b)| (graph.vertex_of(a), graph.vertex_of(b)))
                .collect();
            new_edges.push((v, v));
            let legs: Vec<(usize, usize)> =
                legs.iter().map(|&(l, f)| (l, graph.vertex_of(f))).collect();
            if let Ok(gr) = Graph::new(vertices, &legs, &new_edges) {
                if let Ok(mg) = ModularGraph::new(gr, new_genus) {
                    out.push(mg);
                }
            }
        }
        // vertex splitting: flags in `subset` move to the new vertex
        let w = vertices;
        for subset in 0u64..(1 << flags.len()) {
            let moved: FxHashSet<usize> = flags
                .iter()
                .enumerate()
                .filter(|(j, _)| subset >> j & 1 == 1)
                .map(|(_, &f)| f)
                .collect();
            let stay = flags.len() - moved.len();
            for g_new in 0..=genus {
                let g_old = genus - g_new;
                if 2 * g_old as usize + stay + 1 < 3 || 2 * g_new as usize + moved.len() + 1 < 3 {
                    continue;
                }
                let place = |f: usize| {
                    if moved.contains(&f) {
                        w
                    } else {
                        graph.vertex_of(f)
                    }
                };
                let mut new_edges: Vec<(usize, usize)> =
                    edges.iter().map(|&(a, b)| (place(a), place(b))).collect();
                new_edges.push((v, w));
                let new_legs: Vec<(usize, usize)> =
                    legs.iter().map(|&(l, f)| (l, place(f))).collect();
                let mut new_genus = g.genus_labels().to_vec();
                new_genus[v] = g_old;
                new_genus.push(g_new);
                if let Ok(gr) = Graph::new(vertices + 1, &new_legs, &new_edges) {
                    if let Ok(mg) = ModularGraph::new(gr, new_genus) {
                        out.push(mg);
                    }
                }
            }
        }
    }
    out
}

/// All classes (killed ones included) by edge count `0..=m`.
fn all_classes(m: usize) -> Vec<Vec<GraphGenerator>> {
    let corolla = ModularGraph::corolla(1, m).expect("genus-one corolla is stable");
    let mut levels = vec![vec![GraphGenerator::from_graph(&corolla)]];
    loop {
        let last = levels.last().expect("nonempty");
        let found: Vec<GraphGenerator> = last
            .par_iter()
            .flat_map_iter(|g| {
                expansions(&g.graph)
                    .into_iter()
                    .map(|h| GraphGenerator::from_graph(&h))
            })
            .collect();
        let mut seen = FxHashSet::default();
        let mut next: Vec<GraphGenerator> = found
            .into_iter()
            .filter(|g| seen.insert(g.code.clone()))
            .collect();
        if next.is_empty() {
            break;
        }
        next.sort_by(|a, b| a.code.cmp(&b.code));
        levels.push(next);
    }
    levels
}

/// Generators of `FT(Com)(1,m)` with `i` edges, surviving classes only.
pub fn enumerate_graph_generators(m: usize, i: usize) -> Vec<GraphGenerator> {
    GraphComplex::new(m).generators(i).to_vec()
}

#[derive(Clone, Debug)]
pub struct GraphComplex {
    m: usize,
    options: GraphOptions,
    degrees: Vec<Vec<GraphGenerator>>,
    odd_counts: Vec<usize>,
    index: Vec<FxHashMap<CanonicalCode, usize>>,
}

impl GraphComplex {
    pub fn new(m: usize) -> Self {
        Self::with_options(m, GraphOptions::default())
    }

    pub fn with_options(m: usize, options: GraphOptions) -> Self {
        let mut degrees = all_classes(m.max(1));
        let odd_counts = degrees
            .iter()
            .map(|d| d.iter().filter(|g| g.killed).count())
            .collect();
        if options.kill_odd {
            for d in &mut degrees {
                d.retain(|g| !g.killed);
            }
        }
        let index = degrees
            .iter()
            .map(|d| {
                d.iter()
                    .enumerate()
                    .map(|(j, g)| (g.code.clone(), j))
                    .collect()
            })
            .collect();
        GraphComplex {
            m,
            options,
            degrees,
            odd_counts,
            index,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn options(&self) -> GraphOptions {
        self.options
    }

    pub fn top(&self) -> usize {
        self.degrees.len().saturating_sub(1)
    }

    pub fn generators(&self, i: usize) -> &[GraphGenerator] {
        self.degrees.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Classes with an odd automorphism per edge count, whether or not they are kept.
    pub fn killed_counts(&self) -> Vec<usize> {
        self.odd_counts.clone()
    }

    /// `d γ` as (target index, sign) pairs in degree `i − 1`.
    pub fn boundary_terms(&self, g: &GraphGenerator) -> Vec<(usize, i32)> {
        let count = g.graph.edge_count();
        let mut out = Vec::new();
        for j in 0..count {
            let edge_sign = if (count - 1 - j).is_multiple_of(2) {
                1
            } else {
                -1
            };
            let contracted = g
                .graph
                .contract_edge(j)
                .expect("contractions of stable graphs are stable");
            let form = contracted.canonical_form();
            let Some(&row) = self.index[count - 1].get(&form.code) else {
                continue;
            };
            out.push((row, edge_sign * sorting_sign(&form.edge_position)));
        }
        out
    }

    pub fn differential(&self, i: usize) -> SparseIntMatrix {
        if i == 0 || i > self.top() {
            let rows = if i == 0 {
                0
            } else {
                self.generators(i - 1).len()
            };
            return SparseIntMatrix::zero(rows, self.generators(i).len());
        }
        let columns: Vec<Vec<(usize, i64)>> = self
            .generators(i)
            .par_iter()
            .map(|g| {
                self.boundary_terms(g)
                    .into_iter()
                    .map(|(r, s)| (r, i64::from(s)))
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_columns(self.generators(i - 1).len(), columns)
            .expect("indices in range")
    }

    /// Graded by edge count.
    pub fn chain_complex(&self) -> ChainComplex {
        let boundaries = (0..=self.top()).map(|i| self.differential(i)).collect();
        ChainComplex::new(0, self.dims(), boundaries).expect("shapes agree")
    }

    pub fn homology(&self, options: &RankOptions) -> Result<HomologyReport> {
        self.chain_complex().homology(options)
    }

    /// `dim − rank − rank` in each degree, returned even when `d² ≠ 0`.
    pub fn naive_betti(&self, options: &RankOptions) -> BTreeMap<i64, i64> {
        let cc = self.chain_complex();
        let ranks: Vec<usize> = cc.ranks(options).into_iter().map(|r| r.rank).collect();
        naive_betti(0, cc.dims(), &ranks)
    }
}

pub fn graph_betti(m: usize, options: &RankOptions) -> Result<BettiVector> {
    Ok(GraphComplex::new(m).homology(options)?.betti)
}

/// Comparison of the graph homology rank with `Σ_{i≥1} β_{m−1}(S_{m−1,2i})`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    pub m: usize,
    pub graph_degree: Option<i64>,
    pub graph_rank: u64,
    /// `(k, β_{m−1}(S_{m−1,k}))` for even `k`.
    pub stirling_terms: Vec<(usize, u64)>,
    pub stirling_sum: u64,
    pub expected: u64,
    pub ok: bool,
}

pub fn verify_decomposition(m: usize, options: &RankOptions) -> Result<DecompositionCheck> {
    let betti = graph_betti(m, options)?;
    let (graph_degree, graph_rank) = match betti.concentrated() {
        Some((d, b)) => (Some(d), b),
        None => (None, 0),
    };
    let n = m - 1;
    let mut stirling_terms = Vec::new();
    for k in (2..=n).step_by(2) {
        let h = StirlingComplex::new(n, k)?
            .chain_complex()
            .homology(options)?;
        stirling_terms.push((k, h.betti.get(n as i64)));
    }
    let stirling_sum = stirling_terms.iter().map(|&(_, b)| b).sum();
    let expected: BigUint = (2..=n).step_by(2).map(|k| stirling_unsigned(n, k)).sum();
    let expected = u64::try_from(expected).expect("small m");
    let ok = graph_degree.is_some() && graph_rank == stirling_sum && stirling_sum == expected;
    Ok(DecompositionCheck {
        m,
        graph_degree,
        graph_rank,
        stirling_terms,
        stirling_sum,
        expected,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m3_generators() {
        let c = GraphComplex::new(3);
        assert_eq!(c.generators(0).len(), 1);
        assert!(c.generators(4).is_empty());
        // the triangle and three tadpole chains survive; double edges are killed
        let three_vertex: Vec<_> = c
            .generators(3)
            .iter()
            .filter(|g| g.graph.graph().vertex_count() == 3)
            .collect();
        assert_eq!(three_vertex.len(), 4);
        let triangles: Vec<_> = three_vertex
            .iter()
            .filter(|g| {
                let graph = g.graph.graph();
                let mut at: Vec<usize> = graph
                    .legs()
                    .iter()
                    .map(|&(_, f)| graph.vertex_of(f))
                    .collect();
                at.sort_unstable();
                at.dedup();
                at.len() == 3
            })
            .collect();
        assert_eq!(triangles.len(), 1);
        assert!(!triangles[0].killed);
    }

    #[test]
    fn double_edges_are_killed() {
        let all = GraphComplex::with_options(4, GraphOptions { kill_odd: false });
        for d in 0..=all.top() {
            for g in all.generators(d) {
                let gr = g.graph.graph();
                let mut pairs: Vec<(usize, usize)> = gr
                    .edges()
                    .iter()
                    .map(|&(a, b)| {
                        let (u, v) = (gr.vertex_of(a), gr.vertex_of(b));
                        (u.min(v), u.max(v))
                    })
                    .filter(|(u, v)| u != v)
                    .collect();
                let n = pairs.len();
                pairs.sort_unstable();
                pairs.dedup();
                if pairs.len() < n {
                    assert!(g.killed, "{}", g.code);
                }
            }
        }
    }

    #[test]
    fn loop_contraction_targets_corolla() {
        let c = GraphComplex::new(3);
        let one_loop = c
            .generators(1)
            .iter()
            .position(|g| g.graph.graph().vertex_count() == 1)
            .expect("loop graph present");
        let terms = c.boundary_terms(&c.generators(1)[one_loop]);
        assert_eq!(terms, vec![(0, 1)]);
    }

    #[test]
    fn top_degree_is_m() {
        for m in 3..=5 {
            let c = GraphComplex::new(m);
            assert_eq!(c.top(), m);
        }
    }

    #[test]
    fn dot_has_genus_labels() {
        let c = GraphComplex::new(3);
        assert!(c.generators(0)[0].to_dot("g").contains("label=\"1\""));
    }
}
