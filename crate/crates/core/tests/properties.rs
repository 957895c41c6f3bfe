use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stirling_core::graph_complex::GraphComplex;
use stirling_core::linalg::{rank_fraction_free, rank_mod_p, SparseIntMatrix};
use stirling_core::perm::Permutation;
use stirling_core::stirling::{Convention, StirlingComplex};
use stirling_core::trees::{enumerate_stable_trees, Graph, ModularGraph};

fn matrix() -> impl Strategy<Value = SparseIntMatrix> {
    (1usize..8, 1usize..8).prop_flat_map(|(r, c)| {
        prop::collection::vec((0..r, 0..c, -3i64..=3), 0..(r * c + 1)).prop_map(move |t| {
            SparseIntMatrix::from_triplets(r, c, t.into_iter().map(|(a, b, v)| (a, b, v.into())))
                .unwrap()
        })
    })
}

fn permuted_presentation(g: &ModularGraph, seed: u64) -> ModularGraph {
    let gr = g.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fp = Permutation::random(gr.flag_count(), &mut rng);
    let vp = Permutation::random(gr.vertex_count(), &mut rng);
    let mut adjacency = vec![0; gr.flag_count()];
    let mut involution = vec![0; gr.flag_count()];
    let mut labels = vec![None; gr.flag_count()];
    let mut genus = vec![0; gr.vertex_count()];
    for f in 0..gr.flag_count() {
        adjacency[fp.apply(f)] = vp.apply(gr.vertex_of(f));
        involution[fp.apply(f)] = fp.apply(gr.partner(f));
        labels[fp.apply(f)] = gr.label(f);
    }
    for v in 0..gr.vertex_count() {
        genus[vp.apply(v)] = g.genus_label(v);
    }
    ModularGraph::new(
        Graph::from_flags(gr.vertex_count(), adjacency, involution, labels).unwrap(),
        genus,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(m in matrix()) {
        prop_assert_eq!(rank_fraction_free(&m), rank_fraction_free(&m.transpose()));
    }

    #[test]
    fn modular_rank_never_exceeds_rational_rank(m in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let exact = rank_fraction_free(&m);
        prop_assert!(rank_mod_p(&m, p) <= exact);
        prop_assert_eq!(rank_mod_p(&m, 2_305_843_009_213_693_951), exact);
    }

    #[test]
    fn matrix_market_round_trip(m in matrix()) {
        prop_assert_eq!(SparseIntMatrix::from_matrix_market(&m.to_matrix_market()).unwrap(), m);
    }

    #[test]
    fn tree_contractions_commute(n in 4usize..=6, pick in any::<prop::sample::Index>(), e in 0usize..8, f in 0usize..8) {
        let trees = enumerate_stable_trees(n, n - 2);
        let t = &trees[pick.index(trees.len())];
        let (e, f) = (e % t.edge_count(), f % t.edge_count());
        prop_assume!(e != f);
        let shift = |x: usize, y: usize| if x > y { x - 1 } else { x };
        let ef = t.contract_edge(e).unwrap().contract_edge(shift(f, e)).unwrap();
        let fe = t.contract_edge(f).unwrap().contract_edge(shift(e, f)).unwrap();
        prop_assert_eq!(ef.canonical_code(), fe.canonical_code());
    }

    #[test]
    fn graph_contractions_commute(pick in any::<prop::sample::Index>(), e in 0usize..4, f in 0usize..4) {
        let c = GraphComplex::new(4);
        let gens = c.generators(3);
        let g = &gens[pick.index(gens.len())].graph;
        prop_assume!(e != f && e < 3 && f < 3);
        let shift = |x: usize, y: usize| if x > y { x - 1 } else { x };
        let ef = g.contract_edge(e).unwrap().contract_edge(shift(f, e)).unwrap();
        let fe = g.contract_edge(f).unwrap().contract_edge(shift(e, f)).unwrap();
        prop_assert_eq!(ef.canonical_code(), fe.canonical_code());
    }

    #[test]
    fn canonical_code_ignores_presentation(pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let c = GraphComplex::new(5);
        let gens = c.generators(4);
        let g = &gens[pick.index(gens.len())].graph;
        let h = permuted_presentation(g, seed);
        prop_assert_eq!(h.canonical_code(), g.canonical_code());
        prop_assert_eq!(h.automorphisms().len(), g.automorphisms().len());
    }

    #[test]
    fn action_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = StirlingComplex::new(4, 2).unwrap();
        let s = Permutation::random(5, &mut rng);
        let t = Permutation::random(5, &mut rng);
        prop_assert!(c.verify_group_law(&s, &t).unwrap());
        prop_assert!(c.verify_equivariance(&s).unwrap());
    }

    #[test]
    fn perturbed_orientations_square_to_zero(seed in any::<u64>()) {
        let c = StirlingComplex::with_convention(5, 3, Convention::perturbed(seed)).unwrap();
        prop_assert!(c.verify_d_squared());
        prop_assert!(c.verify_reach_filtration().unwrap());
    }
}
