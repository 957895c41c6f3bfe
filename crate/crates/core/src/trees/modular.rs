use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::trees::graph::{CanonicalCode, Graph};

/// A connected, stable, genus-labelled graph with legs labelled `1..=m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularGraph {
    graph: Graph,
    genus: Vec<u32>,
}

/// Canonical form: the code plus the relabelling that realises it.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    pub code: CanonicalCode,
    /// `vertex_position[v]` is the position of vertex `v` in canonical order.
    pub vertex_position: Vec<usize>,
    /// `edge_position[e]` is the position of edge `e` in canonical order.
    /// Parallel edges are ordered by their index in this presentation.
    pub edge_position: Vec<usize>,
}

impl ModularGraph {
    pub fn new(graph: Graph, genus: Vec<u32>) -> Result<Self> {
        if genus.len() != graph.vertex_count() {
            return Err(Error::MalformedGraph("one genus label per vertex".into()));
        }
        let legs = graph.legs();
        if legs
            .iter()
            .enumerate()
            .any(|(j, &(label, _))| label != j + 1)
        {
            return Err(Error::MalformedGraph(
                "modular graph legs must be labelled 1..=m".into(),
            ));
        }
        if !graph.is_connected() {
            return Err(Error::MalformedGraph("modular graphs are connected".into()));
        }
        for (v, &g) in genus.iter().enumerate() {
            if 2 * g as usize + graph.valence(v) < 3 {
                return Err(Error::MalformedGraph(format!("vertex {v} is unstable")));
            }
        }
        Ok(ModularGraph { graph, genus })
    }

    /// The single-vertex graph of genus `g` with `m` legs.
    pub fn corolla(genus: u32, m: usize) -> Result<Self> {
        let legs: Vec<(usize, usize)> = (1..=m).map(|l| (l, 0)).collect();
        ModularGraph::new(Graph::new(1, &legs, &[])?, vec![genus])
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn genus_label(&self, v: usize) -> u32 {
        self.genus[v]
    }

    pub fn genus_labels(&self) -> &[u32] {
        &self.genus
    }

    pub fn leg_count(&self) -> usize {
        self.graph.legs().len()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// `β₁(γ) + Σ g(v)`.
    pub fn total_genus(&self) -> u32 {
        self.graph.first_betti() as u32 + self.genus.iter().sum::<u32>()
    }

    /// Contract an edge: a bridge merges its endpoints adding their genera,
    /// a loop disappears and raises its vertex's genus by one. Edges of the
    /// result are the remaining edges in their original order.
    pub fn contract_edge(&self, edge: usize) -> Result<ModularGraph> {
        let c = self.graph.contract(edge)?;
        let mut genus = vec![0; c.graph.vertex_count()];
        for (v, &g) in self.genus.iter().enumerate() {
            genus[c.vertex_map[v]] += g;
        }
        if c.was_loop {
            let (f, _) = self.graph.edges()[edge];
            genus[c.vertex_map[self.graph.vertex_of(f)]] += 1;
        }
        ModularGraph::new(c.graph, genus)
    }

    /// Adjacency multiplicities `mult[u][v]` (loops counted once per loop on the diagonal).
    fn edge_multiplicities(&self) -> Vec<Vec<usize>> {
        let n = self.graph.vertex_count();
        let mut mult = vec![vec![0; n]; n];
        for (f, g) in self.graph.edges() {
            let (u, v) = (self.graph.vertex_of(f), self.graph.vertex_of(g));
            mult[u][v] += 1;
            if u != v {
                mult[v][u] += 1;
            }
        }
        mult
    }

    /// Vertices carrying legs sorted by smallest leg label, then the legless
    /// vertices grouped by (genus, valence).
    fn vertex_classes(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let g = &self.graph;
        let mut with_legs: Vec<(usize, usize)> = Vec::new();
        let mut legless: Vec<((u32, usize), usize)> = Vec::new();
        for v in 0..g.vertex_count() {
            let min_leg = g.flags_at(v).into_iter().filter_map(|f| g.label(f)).min();
            match min_leg {
                Some(l) => with_legs.push((l, v)),
                None => legless.push(((self.genus[v], g.valence(v)), v)),
            }
        }
        with_legs.sort_unstable();
        legless.sort_unstable();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut last = None;
        for (class, v) in legless {
            if last != Some(class) {
                groups.push(Vec::new());
                last = Some(class);
            }
            groups.last_mut().unwrap().push(v);
        }
        (with_legs.into_iter().map(|(_, v)| v).collect(), groups)
    }

    /// Every vertex ordering allowed by the class structure.
    fn candidate_orders(&self) -> Vec<Vec<usize>> {
        let (fixed, groups) = self.vertex_classes();
        let mut orders = vec![fixed];
        for group in groups {
            let perms = permutations(&group);
            let mut next = Vec::with_capacity(orders.len() * perms.len());
            for o in &orders {
                for p in &perms {
                    let mut joined = o.clone();
                    joined.extend(p);
                    next.push(joined);
                }
            }
            orders = next;
        }
        orders
    }

    fn code_for_order(&self, order: &[usize]) -> (Vec<u32>, Vec<usize>, Vec<(usize, usize)>) {
        let g = &self.graph;
        let mut position = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let genus = order.iter().map(|&v| self.genus[v]).collect();
        let legs = g
            .legs()
            .into_iter()
            .map(|(_, f)| position[g.vertex_of(f)])
            .collect();
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(f, h)| {
                let (a, b) = (position[g.vertex_of(f)], position[g.vertex_of(h)]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        (genus, legs, edges)
    }

    #[allow(clippy::type_complexity)]
    fn best_order(&self) -> ((Vec<u32>, Vec<usize>, Vec<(usize, usize)>), Vec<usize>) {
        self.candidate_orders()
            .into_iter()
            .map(|order| (self.code_for_order(&order), order))
            .min()
            .expect("at least one vertex order")
    }

    /// The isomorphic graph whose vertices and edges are laid out in
    /// canonical order, so that edge `j` sits at canonical position `j`.
    pub fn canonical_representative(&self) -> ModularGraph {
        let ((genus, legs, edges), _) = self.best_order();
        let legs: Vec<(usize, usize)> = legs
            .into_iter()
            .enumerate()
            .map(|(j, v)| (j + 1, v))
            .collect();
        let graph = Graph::new(genus.len(), &legs, &edges).expect("canonical layout is a graph");
        ModularGraph { graph, genus }
    }

    /// Minimise the adjacency encoding over all class-respecting vertex orders.
    pub fn canonical_form(&self) -> CanonicalForm {
        let ((genus, legs, edges), order) = self.best_order();
        let g = &self.graph;
        let mut vertex_position = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            vertex_position[v] = p;
        }
        let mut keyed: Vec<((usize, usize), usize)> = g
            .edges()
            .into_iter()
            .enumerate()
            .map(|(e, (f, h))| {
                let (a, b) = (
                    vertex_position[g.vertex_of(f)],
                    vertex_position[g.vertex_of(h)],
                );
                ((a.min(b), a.max(b)), e)
            })
            .collect();
        keyed.sort_unstable();
        let mut edge_position = vec![0; keyed.len()];
        for (p, &(_, e)) in keyed.iter().enumerate() {
            edge_position[e] = p;
        }
        let join = |xs: Vec<String>| xs.join(",");
        let text = format!(
            "V{};G{};L{};E{}",
            order.len(),
            join(genus.iter().map(u32::to_string).collect()),
            join(legs.iter().map(usize::to_string).collect()),
            join(edges.iter().map(|(a, b)| format!("{a}-{b}")).collect()),
        );
        CanonicalForm {
            code: CanonicalCode::from_string(text),
            vertex_position,
            edge_position,
        }
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        self.canonical_form().code
    }

    /// All leg-, genus- and structure-preserving automorphisms, as
    /// permutations of the flag set. The identity comes first.
    pub fn automorphisms(&self) -> Vec<Permutation> {
        let g = &self.graph;
        let mult = self.edge_multiplicities();
        let (fixed, _) = self.vertex_classes();
        let reference: Vec<usize> = self.candidate_orders().swap_remove(0);
        let mut out = Vec::new();
        for order in self.candidate_orders() {
            // vertex map sending reference[p] to order[p]
            let mut vmap = vec![0; order.len()];
            for (p, &v) in reference.iter().enumerate() {
                vmap[v] = order[p];
            }
            debug_assert!(fixed.iter().all(|&v| vmap[v] == v));
            let vertices = g.vertex_count();
            let preserves = (0..vertices).all(|u| {
                self.genus[u] == self.genus[vmap[u]]
                    && (0..vertices).all(|w| mult[u][w] == mult[vmap[u]][vmap[w]])
            });
            if !preserves {
                continue;
            }
            self.extend_vertex_map(&vmap, &mut out);
        }
        out.sort_by_key(|p| !p.is_identity());
        out
    }

    /// All flag bijections lying over a fixed vertex automorphism.
    fn extend_vertex_map(&self, vmap: &[usize], out: &mut Vec<Permutation>) {
        let g = &self.graph;
        let edges = g.edges();
        let key = |(f, h): (usize, usize)| {
            let (a, b) = (g.vertex_of(f), g.vertex_of(h));
            (a.min(b), a.max(b))
        };
        // group edges by the unordered vertex pair they join
        let mut groups: Vec<((usize, usize), Vec<usize>)> = Vec::new();
        for (e, &edge) in edges.iter().enumerate() {
            let k = key(edge);
            match groups.iter_mut().find(|(gk, _)| *gk == k) {
                Some((_, list)) => list.push(e),
                None => groups.push((k, vec![e])),
            }
        }
        let mut partial: Vec<Vec<usize>> = vec![(0..g.flag_count()).collect()];
        for ((a, b), list) in &groups {
            let (ta, tb) = (vmap[*a], vmap[*b]);
            let target: Vec<usize> = groups
                .iter()
                .find(|(k, _)| *k == (ta.min(tb), ta.max(tb)))
                .map(|(_, l)| l.clone())
                .expect("multiplicities preserved");
            let is_loop = a == b;
            let mut next = Vec::new();
            for assignment in permutations(&target) {
                let flips = if is_loop { 1usize << list.len() } else { 1 };
                for flip in 0..flips {
                    for base in &partial {
                        let mut images = base.clone();
                        for (j, (&src, &dst)) in list.iter().zip(&assignment).enumerate() {
                            let (sf, sh) = edges[src];
                            let (df, dh) = edges[dst];
                            let (x, y) = if is_loop {
                                if flip >> j & 1 == 1 {
                                    (dh, df)
                                } else {
                                    (df, dh)
                                }
                            } else if g.vertex_of(df) == vmap[g.vertex_of(sf)] {
                                (df, dh)
                            } else {
                                (dh, df)
                            };
                            images[sf] = x;
                            images[sh] = y;
                        }
                        next.push(images);
                    }
                }
            }
            partial = next;
        }
        out.extend(
            partial
                .into_iter()
                .map(|images| Permutation::new(images).expect("flag bijection")),
        );
    }

    /// Permutation of edge indices induced by a flag automorphism.
    pub fn edge_permutation(&self, flag_perm: &Permutation) -> Permutation {
        let edges = self.graph.edges();
        let images = edges
            .iter()
            .map(|&(f, _)| {
                let image = flag_perm.apply(f);
                edges
                    .iter()
                    .position(|&(a, b)| a == image || b == image)
                    .expect("edges map to edges")
            })
            .collect();
        Permutation::new(images).expect("edge bijection")
    }

    /// True when some automorphism acts on the edge set by an odd permutation.
    pub fn has_odd_automorphism(&self) -> bool {
        self.automorphisms()
            .iter()
            .any(|a| self.edge_permutation(a).sign() < 0)
    }
}

/// All orderings of a slice.
pub(crate) fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trees::tree::enumerate_stable_trees;

    fn graph(
        vertices: usize,
        legs: &[(usize, usize)],
        edges: &[(usize, usize)],
        genus: Vec<u32>,
    ) -> ModularGraph {
        ModularGraph::new(Graph::new(vertices, legs, edges).unwrap(), genus).unwrap()
    }

    #[test]
    fn loop_contraction_raises_genus() {
        let g = graph(1, &[(1, 0)], &[(0, 0)], vec![0]);
        assert_eq!(g.total_genus(), 1);
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.edge_count(), 0);
        assert_eq!(c.genus_label(0), 1);
        assert_eq!(c.leg_count(), 1);
        assert_eq!(c.total_genus(), 1);
    }

    #[test]
    fn bridge_contraction_adds_genera() {
        let g = graph(2, &[(1, 0), (2, 0), (3, 1)], &[(0, 1)], vec![0, 1]);
        let c = g.contract_edge(0).unwrap();
        assert_eq!(c.genus_labels(), &[1]);
        assert_eq!(c.total_genus(), g.total_genus());
    }

    #[test]
    fn triangle_and_mirror_share_code() {
        let a = graph(
            3,
            &[(1, 0), (2, 1), (3, 2)],
            &[(0, 1), (1, 2), (2, 0)],
            vec![0; 3],
        );
        // same triangle presented with vertices listed in another order and edges reversed
        let b = graph(
            3,
            &[(1, 2), (2, 0), (3, 1)],
            &[(1, 0), (0, 2), (2, 1)],
            vec![0; 3],
        );
        assert_eq!(a.canonical_code(), b.canonical_code());
    }

    #[test]
    fn double_edge_has_order_two_group() {
        let g = graph(2, &[(1, 0), (2, 1)], &[(0, 1), (0, 1)], vec![0, 0]);
        let auts = g.automorphisms();
        assert_eq!(auts.len(), 2);
        assert!(auts[0].is_identity());
        assert_eq!(g.edge_permutation(&auts[1]).sign(), -1);
        assert!(g.has_odd_automorphism());
    }

    #[test]
    fn loop_flip_is_even() {
        let g = graph(1, &[(1, 0)], &[(0, 0)], vec![0]);
        let auts = g.automorphisms();
        assert_eq!(auts.len(), 2);
        assert!(!auts[1].is_identity());
        assert!(!g.has_odd_automorphism());
    }

    #[test]
    fn stable_trees_are_rigid() {
        for n in 2..=5 {
            for e in 0..=n - 2 {
                for t in enumerate_stable_trees(n, e) {
                    assert_eq!(t.to_modular_graph().automorphisms().len(), 1);
                }
            }
        }
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = graph(2, &[(1, 0), (2, 1)], &[(0, 1), (0, 1), (0, 0)], vec![0, 0]);
        let auts = g.automorphisms();
        assert_eq!(auts.len(), 4);
        for a in &auts {
            for b in &auts {
                assert!(auts.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn rejects_unstable() {
        let g = Graph::new(2, &[(1, 0), (2, 0)], &[(0, 1)]).unwrap();
        assert!(ModularGraph::new(g, vec![0, 0]).is_err());
    }
}
