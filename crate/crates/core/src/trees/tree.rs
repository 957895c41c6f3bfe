use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::trees::graph::{CanonicalCode, Graph};
use crate::trees::modular::ModularGraph;

/// A stable `n`-tree: connected, genus 0, legs labelled bijectively by
/// `0..=n`, every vertex of valence at least 3. Leg 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    graph: Graph,
    n: usize,
    root_vertex: usize,
    output: Vec<usize>,
}

/// Bit mask with bits `1..=n` set: the leaf set of the root vertex.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    ((1u32 << (n + 1)) - 1) & !1
}

impl Tree {
    pub fn from_graph(graph: Graph) -> Result<Self> {
        let legs = graph.legs();
        let n = legs
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::MalformedGraph("tree without legs".into()))?;
        if legs.iter().enumerate().any(|(j, &(label, _))| label != j) {
            return Err(Error::MalformedGraph(
                "tree legs must be labelled 0..=n".into(),
            ));
        }
        if !graph.is_connected() || graph.first_betti() != 0 {
            return Err(Error::MalformedGraph(
                "a tree is connected of genus 0".into(),
            ));
        }
        if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.valence(v) < 3) {
            return Err(Error::MalformedGraph(format!("vertex {v} is unstable")));
        }
        let root = legs[0].1;
        let root_vertex = graph.vertex_of(root);
        let mut output = vec![usize::MAX; graph.vertex_count()];
        output[root_vertex] = root;
        let mut queue = VecDeque::from([root_vertex]);
        while let Some(v) = queue.pop_front() {
            for (flag, w) in graph.neighbours(v) {
                if output[w] == usize::MAX {
                    output[w] = graph.partner(flag);
                    queue.push_back(w);
                }
            }
        }
        Ok(Tree {
            graph,
            n,
            root_vertex,
            output,
        })
    }

    /// Build the tree whose non-root vertices have the given leaf sets.
    /// Bit `j` of a mask stands for leg `j`; masks never contain bit 0.
    pub fn from_clades(n: usize, clades: &[u32]) -> Result<Self> {
        let full = full_mask(n);
        let mut masks: Vec<u32> = clades.to_vec();
        masks.sort_unstable();
        masks.dedup();
        if masks.len() != clades.len() {
            return Err(Error::MalformedGraph("repeated clade".into()));
        }
        for &c in &masks {
            if c & !full != 0 || c.count_ones() < 2 || c == full {
                return Err(Error::MalformedGraph(format!("bad clade {c:#b}")));
            }
        }
        for (i, &a) in masks.iter().enumerate() {
            for &b in &masks[i + 1..] {
                let meet = a & b;
                if meet != 0 && meet != a && meet != b {
                    return Err(Error::MalformedGraph(
                        "clades overlap without nesting".into(),
                    ));
                }
            }
        }
        // vertex 0 is the root vertex, vertex j+1 has leaf set masks[j]
        let mut vertex_masks = vec![full];
        vertex_masks.extend(&masks);
        let smallest_containing = |set: u32, skip: usize| -> usize {
            (0..vertex_masks.len())
                .filter(|&v| v != skip && vertex_masks[v] & set == set)
                .min_by_key(|&v| vertex_masks[v].count_ones())
                .expect("root contains everything")
        };
        let mut legs = vec![(0, 0)];
        for j in 1..=n {
            legs.push((j, smallest_containing(1 << j, usize::MAX)));
        }
        let edges: Vec<(usize, usize)> = (1..vertex_masks.len())
            .map(|v| (smallest_containing(vertex_masks[v], v), v))
            .collect();
        Tree::from_graph(Graph::new(vertex_masks.len(), &legs, &edges)?)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of non-root legs.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_vertex(&self) -> usize {
        self.root_vertex
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn output(&self, v: usize) -> usize {
        self.output[v]
    }

    pub fn inputs(&self, v: usize) -> Vec<usize> {
        self.graph
            .flags_at(v)
            .into_iter()
            .filter(|&f| f != self.output[v])
            .collect()
    }

    /// Vertex on the far side of an input flag, if the flag is half of an edge.
    pub fn child_through(&self, input: usize) -> Option<usize> {
        (!self.graph.is_leg(input)).then(|| self.graph.vertex_of(self.graph.partner(input)))
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let out = self.output[v];
        (!self.graph.is_leg(out)).then(|| self.graph.vertex_of(self.graph.partner(out)))
    }

    /// Legs above a flag (for an input flag) as a bit mask.
    pub fn flag_leaves(&self, flag: usize) -> u32 {
        match self.graph.label(flag) {
            Some(label) => 1 << label,
            None => self.vertex_leaves(self.graph.vertex_of(self.graph.partner(flag))),
        }
    }

    /// Leaf set of the subtree rooted at `v`.
    pub fn vertex_leaves(&self, v: usize) -> u32 {
        self.inputs(v)
            .into_iter()
            .fold(0, |acc, f| acc | self.flag_leaves(f))
    }

    /// Leaf sets of all non-root vertices, sorted.
    pub fn clades(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.graph.vertex_count())
            .filter(|&v| v != self.root_vertex)
            .map(|v| self.vertex_leaves(v))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn vertex_with_leaves(&self, leaves: u32) -> Option<usize> {
        (0..self.graph.vertex_count()).find(|&v| self.vertex_leaves(v) == leaves)
    }

    /// Unique shortest path between two vertices as a flag sequence.
    pub fn path(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        self.graph.shortest_path(from, to)
    }

    /// Contract an edge. Every tree edge is a bridge, so the endpoints merge.
    pub fn contract_edge(&self, edge: usize) -> Result<Tree> {
        let c = self.graph.contract(edge)?;
        Tree::from_graph(c.graph)
    }

    /// Recursive code `(sorted child codes|sorted leaf labels)` read from the
    /// root vertex. Leg-labelled trees have no non-trivial automorphisms, so
    /// any deterministic encoding of this kind is canonical.
    pub fn canonical_code(&self) -> CanonicalCode {
        CanonicalCode::from_string(self.vertex_code(self.root_vertex))
    }

    fn vertex_code(&self, v: usize) -> String {
        let mut children = Vec::new();
        let mut leaves = Vec::new();
        for f in self.inputs(v) {
            match self.graph.label(f) {
                Some(label) => leaves.push(label),
                None => {
                    children.push(self.vertex_code(self.graph.vertex_of(self.graph.partner(f))))
                }
            }
        }
        children.sort();
        leaves.sort_unstable();
        let leaves: Vec<String> = leaves.iter().map(usize::to_string).collect();
        format!("({}|{})", children.concat(), leaves.join(","))
    }

    /// The associated modular graph of type `(0, n+1)`: all genus labels 0,
    /// leg `0` relabelled `n+1`, other labels fixed.
    pub fn to_modular_graph(&self) -> ModularGraph {
        let g = &self.graph;
        let labels: Vec<Option<usize>> = (0..g.flag_count())
            .map(|f| g.label(f).map(|l| if l == 0 { self.n + 1 } else { l }))
            .collect();
        let adjacency = (0..g.flag_count()).map(|f| g.vertex_of(f)).collect();
        let involution = (0..g.flag_count()).map(|f| g.partner(f)).collect();
        let graph = Graph::from_flags(g.vertex_count(), adjacency, involution, labels)
            .expect("relabelling preserves validity");
        ModularGraph::new(graph, vec![0; g.vertex_count()])
            .expect("stable trees are stable modular graphs")
    }
}

/// One leaf-set hierarchy per isomorphism class of stable `n`-trees (all edge
/// counts). Each entry lists the leaf sets of the non-root vertices.
///
/// Built top-down: the root's inputs form a set partition of `{1..n}` into at
/// least two blocks, and each block of size ≥ 2 is recursively a subtree.
pub fn stable_tree_clades(n: usize) -> Vec<Vec<u32>> {
    if n < 2 {
        return Vec::new();
    }
    let mut memo = rustc_hash::FxHashMap::default();
    let full = full_mask(n);
    below(full, &mut memo)
}

/// Hierarchies strictly below `mask`.
fn below(mask: u32, memo: &mut rustc_hash::FxHashMap<u32, Vec<Vec<u32>>>) -> Vec<Vec<u32>> {
    if mask.count_ones() == 1 {
        return vec![Vec::new()];
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for blocks in set_partitions(mask) {
        if blocks.len() < 2 {
            continue;
        }
        let mut partial: Vec<Vec<u32>> = vec![Vec::new()];
        for &block in &blocks {
            let subs = below(block, memo);
            let mut next = Vec::with_capacity(partial.len() * subs.len());
            for p in &partial {
                for s in &subs {
                    let mut joined = p.clone();
                    if block.count_ones() > 1 {
                        joined.push(block);
                    }
                    joined.extend(s);
                    next.push(joined);
                }
            }
            partial = next;
        }
        for mut p in partial {
            p.sort_unstable();
            out.push(p);
        }
    }
    memo.insert(mask, out.clone());
    out
}

/// All set partitions of the bits of `mask`, each block a sub-mask.
pub fn set_partitions(mask: u32) -> Vec<Vec<u32>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // the block containing the lowest bit is `low | sub` for each sub-mask of `rest`
    let mut sub = rest;
    loop {
        let block = low | sub;
        for mut tail in set_partitions(rest & !sub) {
            tail.insert(0, block);
            out.push(tail);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
    out
}

/// Stable `n`-trees with `edges` edges, one per isomorphism class, sorted by
/// canonical code.
pub fn enumerate_stable_trees(n: usize, edges: usize) -> Vec<Tree> {
    let mut trees: Vec<Tree> = stable_tree_clades(n)
        .into_iter()
        .filter(|c| c.len() == edges)
        .map(|c| Tree::from_clades(n, &c).expect("enumeration yields valid hierarchies"))
        .collect();
    trees.sort_by_cached_key(Tree::canonical_code);
    trees
}
