use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::trees::{full_mask, graph_to_dot, DotMarks, Tree};

/// A Stirling tree `(t, v, A)`: a stable `n`-tree with a distinguished
/// vertex and a set `A` of at least two of its input flags.
///
/// The tree is stored as the leaf sets of its non-root vertices (bit `j`
/// stands for leg `j`, bit 0 is never set). A vertex is named by its leaf
/// set, the root vertex by the full set `{1..n}`, and an input flag by the
/// set of legs above it. Edges are named by the leaf set of their upper
/// vertex. Leg-labelled trees are rigid, so this data is a canonical form:
/// two Stirling trees are isomorphic iff the stored fields coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StirlingTree {
    n: usize,
    edges: Vec<u32>,
    dv: u32,
    alt: Vec<u32>,
}

/// Input flags of the vertex with leaf set `vertex` in the tree whose edges
/// are `edges`: the maximal proper sub-clades and the uncovered leaves.
pub(crate) fn inputs_of(edges: &[u32], vertex: u32) -> Vec<u32> {
    let inside: Vec<u32> = edges
        .iter()
        .copied()
        .filter(|&c| c != vertex && c & vertex == c)
        .collect();
    let mut out: Vec<u32> = inside
        .iter()
        .copied()
        .filter(|&c| !inside.iter().any(|&d| d != c && d & c == c))
        .collect();
    let covered = out.iter().fold(0, |acc, &c| acc | c);
    let mut rest = vertex & !covered;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        out.push(bit);
        rest &= !bit;
    }
    out.sort_unstable();
    out
}

/// Smallest vertex strictly containing `clade` (the parent vertex of the clade).
pub(crate) fn parent_of(n: usize, edges: &[u32], clade: u32) -> u32 {
    edges
        .iter()
        .copied()
        .filter(|&c| c != clade && c & clade == clade)
        .min_by_key(|c| c.count_ones())
        .unwrap_or_else(|| full_mask(n))
}

impl StirlingTree {
    pub fn new(n: usize, mut edges: Vec<u32>, dv: u32, mut alt: Vec<u32>) -> Result<Self> {
        edges.sort_unstable();
        alt.sort_unstable();
        // validates the hierarchy
        Tree::from_clades(n, &edges)?;
        if dv != full_mask(n) && edges.binary_search(&dv).is_err() {
            return Err(Error::MalformedGraph(format!(
                "distinguished vertex {dv:#b} is not a vertex"
            )));
        }
        if alt.len() < 2 {
            return Err(Error::Domain(
                "a Stirling tree needs at least two alternating flags".into(),
            ));
        }
        let inputs = inputs_of(&edges, dv);
        if alt.windows(2).any(|w| w[0] == w[1])
            || alt.iter().any(|a| inputs.binary_search(a).is_err())
        {
            return Err(Error::MalformedGraph(
                "alternating flags must be distinct inputs of the distinguished vertex".into(),
            ));
        }
        Ok(StirlingTree { n, edges, dv, alt })
    }

    /// Trusted constructor; all fields already sorted and consistent.
    pub(crate) fn from_parts(n: usize, edges: Vec<u32>, dv: u32, alt: Vec<u32>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(alt.windows(2).all(|w| w[0] < w[1]));
        StirlingTree { n, edges, dv, alt }
    }

    /// From a flag-based tree, a vertex index and input flag indices at it.
    pub fn from_tree(tree: &Tree, dv: usize, alt_flags: &[usize]) -> Result<Self> {
        let inputs = tree.inputs(dv);
        if let Some(&f) = alt_flags.iter().find(|f| !inputs.contains(f)) {
            return Err(Error::MalformedGraph(format!(
                "flag {f} is not an input of vertex {dv}"
            )));
        }
        let alt = alt_flags.iter().map(|&f| tree.flag_leaves(f)).collect();
        StirlingTree::new(tree.n(), tree.clades(), tree.vertex_leaves(dv), alt)
    }

    /// The flag-based tree together with the distinguished vertex index and
    /// the alternating flag indices.
    pub fn to_tree(&self) -> (Tree, usize, Vec<usize>) {
        let tree = Tree::from_clades(self.n, &self.edges).expect("stored hierarchy is valid");
        let dv = tree
            .vertex_with_leaves(self.dv)
            .expect("distinguished vertex exists");
        let alt = tree
            .inputs(dv)
            .into_iter()
            .filter(|&f| self.alt.contains(&tree.flag_leaves(f)))
            .collect();
        (tree, dv, alt)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of alternating flags.
    pub fn k(&self) -> usize {
        self.alt.len()
    }

    pub fn edges(&self) -> &[u32] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn distinguished_vertex(&self) -> u32 {
        self.dv
    }

    pub fn alternating(&self) -> &[u32] {
        &self.alt
    }

    pub fn dv_is_root(&self) -> bool {
        self.dv == full_mask(self.n)
    }

    pub fn inputs(&self, vertex: u32) -> Vec<u32> {
        inputs_of(&self.edges, vertex)
    }

    pub fn parent(&self, clade: u32) -> u32 {
        parent_of(self.n, &self.edges, clade)
    }

    pub fn dv_valence(&self) -> usize {
        self.inputs(self.dv).len() + 1
    }

    /// Membership in the acyclic subcomplex: the distinguished vertex has
    /// valence above `k + 1`, or it is not the root vertex.
    pub fn in_acyclic_part(&self) -> bool {
        self.dv_valence() > self.k() + 1 || !self.dv_is_root()
    }

    /// Number of edges on the path from the root vertex to the distinguished vertex.
    pub fn path_length(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&c| c & self.dv == self.dv)
            .count()
    }

    /// `r = 2e − p − ν`, where `ν = 1` iff the distinguished vertex has
    /// valence exactly `k + 1`. Defined on the acyclic subcomplex only.
    pub fn reach(&self) -> Result<i64> {
        if !self.in_acyclic_part() {
            return Err(Error::Domain(format!(
                "reach is undefined on {self}: not in the acyclic subcomplex"
            )));
        }
        let nu = i64::from(self.dv_valence() == self.k() + 1);
        Ok(2 * self.edge_count() as i64 - self.path_length() as i64 - nu)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let (tree, dv, alt) = self.to_tree();
        let marks = DotMarks {
            genus: None,
            highlighted_vertex: Some(dv),
            highlighted_flags: &alt,
        };
        graph_to_dot(tree.graph(), name, &marks)
    }
}

pub(crate) fn mask_label(mask: u32) -> String {
    let bits: Vec<String> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b: u32| b.to_string())
        .collect();
    format!("{{{}}}", bits.join(","))
}

impl fmt::Display for StirlingTree {
    /// `E{..}{..};V{..};A{..}{..}`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: String = self.edges.iter().map(|&m| mask_label(m)).collect();
        let alt: String = self.alt.iter().map(|&m| mask_label(m)).collect();
        write!(f, "E{edges};V{};A{alt}", mask_label(self.dv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(bits: &[u32]) -> u32 {
        bits.iter().fold(0, |acc, b| acc | 1 << b)
    }

    #[test]
    fn reach_of_vcd_vertex_off_the_root() {
        // DV {1,2} at depth 2: root → {1,2,3,4,5} → {1,2,3} → {1,2}; A = {1},{2}; plus {4,5}
        let t = StirlingTree::new(
            7,
            vec![
                m(&[1, 2, 3, 4, 5]),
                m(&[1, 2, 3]),
                m(&[1, 2]),
                m(&[4, 5]),
                m(&[6, 7]),
            ],
            m(&[1, 2]),
            vec![m(&[1]), m(&[2])],
        )
        .unwrap();
        assert_eq!(t.edge_count(), 5);
        assert_eq!(t.path_length(), 3);
        assert_eq!(t.reach().unwrap(), 10 - 3 - 1);
    }

    #[test]
    fn reach_drops_to_non_vcd_vertex() {
        let left = StirlingTree::new(
            7,
            vec![m(&[1, 2, 3, 4, 5]), m(&[1, 2]), m(&[3, 4]), m(&[6, 7])],
            m(&[1, 2]),
            vec![m(&[1]), m(&[2])],
        )
        .unwrap();
        let right = StirlingTree::new(
            7,
            vec![m(&[1, 2, 3, 4, 5]), m(&[3, 4]), m(&[6, 7])],
            m(&[1, 2, 3, 4, 5]),
            vec![m(&[1]), m(&[2])],
        )
        .unwrap();
        assert_eq!(
            (left.edge_count(), left.path_length(), left.dv_valence()),
            (4, 2, 3)
        );
        assert_eq!(left.reach().unwrap(), 8 - 2 - 1);
        assert_eq!(
            (right.edge_count(), right.path_length(), right.dv_valence()),
            (3, 1, 5)
        );
        assert_eq!(right.reach().unwrap(), 6 - 1);
    }

    #[test]
    fn corolla_reach_is_zero() {
        let t = StirlingTree::new(4, vec![], m(&[1, 2, 3, 4]), vec![m(&[1]), m(&[2])]).unwrap();
        assert!(t.in_acyclic_part());
        assert_eq!(t.reach().unwrap(), 0);
        let top = StirlingTree::new(2, vec![], m(&[1, 2]), vec![m(&[1]), m(&[2])]).unwrap();
        assert!(!top.in_acyclic_part());
        assert!(top.reach().is_err());
    }

    #[test]
    fn validation() {
        let full = m(&[1, 2, 3]);
        assert!(StirlingTree::new(3, vec![], full, vec![m(&[1])]).is_err());
        assert!(StirlingTree::new(3, vec![m(&[1, 2])], full, vec![m(&[1]), m(&[3])]).is_err());
        assert!(StirlingTree::new(3, vec![m(&[1, 2])], full, vec![m(&[1, 2]), m(&[3])]).is_ok());
        assert!(
            StirlingTree::new(3, vec![m(&[1, 2])], m(&[2, 3]), vec![m(&[2]), m(&[3])]).is_err()
        );
    }

    #[test]
    fn tree_round_trip() {
        let t = StirlingTree::new(
            5,
            vec![m(&[1, 2]), m(&[1, 2, 3])],
            m(&[1, 2, 3, 4, 5]),
            vec![m(&[1, 2, 3]), m(&[4])],
        )
        .unwrap();
        let (tree, dv, alt) = t.to_tree();
        assert_eq!(dv, tree.root_vertex());
        assert_eq!(StirlingTree::from_tree(&tree, dv, &alt).unwrap(), t);
        assert_eq!(t.to_string(), "E{1,2}{1,2,3};V{1,2,3,4,5};A{1,2,3}{4}");
        assert!(t.to_dot("fig").contains("color=red"));
    }
}
