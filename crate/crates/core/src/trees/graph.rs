use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A graph in the flag formalism: vertices, flags (half-edges), the map
/// `a: F → V` sending a flag to its vertex, and an involution `ι` on flags.
/// Legs are the fixed points of `ι` and carry labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    adjacency: Vec<usize>,
    involution: Vec<usize>,
    labels: Vec<Option<usize>>,
}

/// Order-comparable encoding of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn from_string(s: String) -> Self {
        CanonicalCode(s.into_bytes())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&String::from_utf8_lossy(&self.0))
    }
}

/// Result of contracting one edge: the new graph and where old vertices and
/// flags went.
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    pub vertex_map: Vec<usize>,
    pub flag_map: Vec<Option<usize>>,
    pub was_loop: bool,
}

impl Graph {
    /// Build a graph with the normalized flag layout: legs take the lowest
    /// flag indices, ordered by label, followed by edges as consecutive
    /// flag pairs `(u-side, v-side)` in the given order.
    pub fn new(
        vertex_count: usize,
        legs: &[(usize, usize)],
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut legs = legs.to_vec();
        legs.sort_unstable();
        let mut adjacency = Vec::with_capacity(legs.len() + 2 * edges.len());
        let mut involution = Vec::with_capacity(adjacency.capacity());
        let mut labels = Vec::with_capacity(adjacency.capacity());
        for (j, &(label, v)) in legs.iter().enumerate() {
            adjacency.push(v);
            involution.push(j);
            labels.push(Some(label));
        }
        for &(u, v) in edges {
            let f = adjacency.len();
            adjacency.extend([u, v]);
            involution.extend([f + 1, f]);
            labels.extend([None, None]);
        }
        Graph::from_flags(vertex_count, adjacency, involution, labels)
    }

    /// Build from raw flag data; `labels[f]` must be `Some` exactly on legs.
    pub fn from_flags(
        vertex_count: usize,
        adjacency: Vec<usize>,
        involution: Vec<usize>,
        labels: Vec<Option<usize>>,
    ) -> Result<Self> {
        let flags = adjacency.len();
        if vertex_count == 0 {
            return Err(Error::MalformedGraph(
                "a graph needs at least one vertex".into(),
            ));
        }
        if involution.len() != flags || labels.len() != flags {
            return Err(Error::MalformedGraph("flag arrays differ in length".into()));
        }
        if let Some(&v) = adjacency.iter().find(|&&v| v >= vertex_count) {
            return Err(Error::MalformedGraph(format!(
                "flag attached to missing vertex {v}"
            )));
        }
        for f in 0..flags {
            let g = involution[f];
            if g >= flags || involution[g] != f {
                return Err(Error::MalformedGraph(format!(
                    "involution is not an involution at flag {f}"
                )));
            }
            if (g == f) != labels[f].is_some() {
                return Err(Error::MalformedGraph(format!(
                    "flag {f}: legs and only legs carry labels"
                )));
            }
        }
        let mut seen: Vec<usize> = labels.iter().flatten().copied().collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedGraph("repeated leg label".into()));
        }
        Ok(Graph {
            vertex_count,
            adjacency,
            involution,
            labels,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn flag_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn vertex_of(&self, flag: usize) -> usize {
        self.adjacency[flag]
    }

    pub fn partner(&self, flag: usize) -> usize {
        self.involution[flag]
    }

    pub fn is_leg(&self, flag: usize) -> bool {
        self.involution[flag] == flag
    }

    pub fn label(&self, flag: usize) -> Option<usize> {
        self.labels[flag]
    }

    /// `(label, flag)` for every leg, sorted by label.
    pub fn legs(&self) -> Vec<(usize, usize)> {
        let mut legs: Vec<_> = (0..self.flag_count())
            .filter_map(|f| self.labels[f].map(|l| (l, f)))
            .collect();
        legs.sort_unstable();
        legs
    }

    pub fn leg_with_label(&self, label: usize) -> Option<usize> {
        (0..self.flag_count()).find(|&f| self.labels[f] == Some(label))
    }

    /// Edges as flag pairs `(f, ι f)` with `f < ι f`, in increasing order of `f`.
    /// The position in this list is the edge index used throughout.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.flag_count())
            .filter(|&f| self.involution[f] > f)
            .map(|f| (f, self.involution[f]))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.flag_count())
            .filter(|&f| self.involution[f] > f)
            .count()
    }

    pub fn flags_at(&self, v: usize) -> Vec<usize> {
        (0..self.flag_count())
            .filter(|&f| self.adjacency[f] == v)
            .collect()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adjacency.iter().filter(|&&w| w == v).count()
    }

    pub fn is_loop(&self, edge: (usize, usize)) -> bool {
        self.adjacency[edge.0] == self.adjacency[edge.1]
    }

    /// Vertex neighbours through edges, with multiplicity.
    pub fn neighbours(&self, v: usize) -> Vec<(usize, usize)> {
        self.flags_at(v)
            .into_iter()
            .filter(|&f| !self.is_leg(f))
            .map(|f| (f, self.adjacency[self.involution[f]]))
            .collect()
    }

    pub fn component_count(&self) -> usize {
        let mut comp = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for start in 0..self.vertex_count {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for (_, w) in self.neighbours(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// `β₁ = c − |V| + |E|`.
    pub fn first_betti(&self) -> usize {
        (self.component_count() + self.edge_count()) - self.vertex_count
    }

    /// Contract the edge with the given index. Bridges merge their endpoints
    /// (the higher-numbered vertex is absorbed into the lower one); loops are
    /// simply removed. Remaining flags keep their relative order.
    pub fn contract(&self, edge: usize) -> Result<Contraction> {
        let edges = self.edges();
        let &(f, g) = edges.get(edge).ok_or(Error::InvalidEdge {
            index: edge,
            edges: edges.len(),
        })?;
        let (u, w) = (self.adjacency[f], self.adjacency[g]);
        let was_loop = u == w;
        let (keep, gone) = (u.min(w), u.max(w));
        let vertex_map: Vec<usize> = (0..self.vertex_count)
            .map(|v| {
                if was_loop {
                    v
                } else if v == gone {
                    keep
                } else if v > gone {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        let mut flag_map = vec![None; self.flag_count()];
        let mut next = 0;
        for (h, slot) in flag_map.iter_mut().enumerate() {
            if h != f && h != g {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut adjacency = vec![0; next];
        let mut involution = vec![0; next];
        let mut labels = vec![None; next];
        for h in 0..self.flag_count() {
            if let Some(nh) = flag_map[h] {
                adjacency[nh] = vertex_map[self.adjacency[h]];
                involution[nh] = flag_map[self.involution[h]].expect("partner survives");
                labels[nh] = self.labels[h];
            }
        }
        let vertex_count = if was_loop {
            self.vertex_count
        } else {
            self.vertex_count - 1
        };
        let graph = Graph::from_flags(vertex_count, adjacency, involution, labels)?;
        Ok(Contraction {
            graph,
            vertex_map,
            flag_map,
            was_loop,
        })
    }

    /// Unique shortest path (as a flag sequence) between two vertices of a
    /// graph without cycles. Errors if the graph has more than one shortest
    /// path between them.
    pub fn shortest_path(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        if from >= self.vertex_count || to >= self.vertex_count {
            return Err(Error::MalformedGraph("path endpoint out of range".into()));
        }
        // BFS recording number of shortest paths and predecessor flag.
        let mut dist = vec![usize::MAX; self.vertex_count];
        let mut ways = vec![0usize; self.vertex_count];
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.vertex_count];
        dist[from] = 0;
        ways[from] = 1;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (flag, w) in self.neighbours(v) {
                if w == v {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    ways[w] = ways[v];
                    via[w] = Some((flag, self.involution[flag]));
                    queue.push_back(w);
                } else if dist[w] == dist[v] + 1 {
                    ways[w] += ways[v];
                }
            }
        }
        if dist[to] == usize::MAX {
            return Err(Error::MalformedGraph(format!(
                "no path from {from} to {to}"
            )));
        }
        if ways[to] != 1 {
            return Err(Error::MalformedGraph(format!(
                "{} shortest paths from {from} to {to}",
                ways[to]
            )));
        }
        let mut path = Vec::new();
        let mut v = to;
        while let Some((out, inn)) = via[v] {
            path.push(inn);
            path.push(out);
            v = self.adjacency[out];
        }
        path.reverse();
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_count_identity() {
        let g = Graph::new(3, &[(1, 0), (2, 1), (3, 2)], &[(0, 1), (1, 2), (2, 2)]).unwrap();
        assert_eq!(g.flag_count(), 2 * g.edge_count() + g.legs().len());
        assert_eq!(g.first_betti(), 1);
        assert!(g.is_connected());
    }

    #[test]
    fn rejects_broken_involution() {
        let err = Graph::from_flags(1, vec![0, 0], vec![1, 1], vec![None, None]);
        assert!(err.is_err());
        let err = Graph::from_flags(1, vec![0], vec![0], vec![None]);
        assert!(err.is_err());
        let err = Graph::new(1, &[(1, 0), (1, 0)], &[]);
        assert!(err.is_err());
    }

    #[test]
    fn contraction_of_bridge_and_loop() {
        let g = Graph::new(2, &[(1, 0), (2, 1)], &[(0, 1), (1, 1)]).unwrap();
        let c = g.contract(0).unwrap();
        assert!(!c.was_loop);
        assert_eq!(c.graph.vertex_count(), 1);
        assert_eq!(c.graph.edge_count(), 1);
        let c2 = c.graph.contract(0).unwrap();
        assert!(c2.was_loop);
        assert_eq!(c2.graph.edge_count(), 0);
        assert!(matches!(
            g.contract(5),
            Err(Error::InvalidEdge { index: 5, edges: 2 })
        ));
    }

    #[test]
    fn shortest_path_in_tree_and_ambiguity_in_cycle() {
        let path = Graph::new(3, &[(0, 0)], &[(0, 1), (1, 2)]).unwrap();
        let p = path.shortest_path(0, 2).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(path.vertex_of(p[0]), 0);
        assert_eq!(path.vertex_of(p[3]), 2);
        assert!(path.shortest_path(1, 1).unwrap().is_empty());
        let square = Graph::new(4, &[], &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(square.shortest_path(0, 2).is_err());
    }
}
