use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stirling_core::characters::{stirling_unsigned, Partition};
use stirling_core::linalg::RankOptions;
use stirling_core::perm::Permutation;
use stirling_core::stirling::{Convention, StirlingComplex};

#[test]
fn dimensions_match_hand_counts() {
    assert_eq!(
        StirlingComplex::new(5, 2).unwrap().dims(),
        vec![10, 165, 525, 420]
    );
    assert_eq!(StirlingComplex::new(4, 4).unwrap().dims(), vec![1]);
    assert_eq!(StirlingComplex::new(4, 3).unwrap().dims(), vec![4, 10]);
}

#[test]
fn d_squared_vanishes() {
    for n in 2..=6 {
        for k in 2..=n {
            assert!(
                StirlingComplex::new(n, k).unwrap().verify_d_squared(),
                "({n},{k})"
            );
        }
    }
}

#[test]
fn betti_numbers_small() {
    for n in 2..=6 {
        for k in 2..=n {
            let c = StirlingComplex::new(n, k).unwrap();
            let h = c.chain_complex().homology(&RankOptions::default()).unwrap();
            let expected = stirling_unsigned(n, k);
            assert_eq!(
                h.betti.concentrated().map(|(d, b)| (d, b.into())),
                Some((n as i64, expected)),
                "({n},{k})"
            );
        }
    }
}

#[test]
fn equivariant_under_transpositions_and_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=5 {
        for k in 2..=n {
            let c = StirlingComplex::new(n, k).unwrap();
            for i in 1..=n {
                let t = Permutation::transposition(n + 1, 0, i).unwrap();
                assert!(c.verify_equivariance(&t).unwrap(), "({n},{k}) (0 {i})");
            }
            for _ in 0..3 {
                let s = Permutation::random(n + 1, &mut rng);
                assert!(c.verify_equivariance(&s).unwrap(), "({n},{k}) {s:?}");
            }
        }
    }
}

#[test]
fn group_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 2), (5, 3)] {
        let c = StirlingComplex::new(n, k).unwrap();
        for _ in 0..5 {
            let s = Permutation::random(n + 1, &mut rng);
            let t = Permutation::random(n + 1, &mut rng);
            assert!(c.verify_group_law(&s, &t).unwrap(), "({n},{k})");
        }
    }
}

#[test]
fn top_corolla_is_sign() {
    for n in 2..=5 {
        let c = StirlingComplex::new(n, n).unwrap();
        for mu in Partition::all(n + 1) {
            let s = Permutation::from_cycle_type(&mu);
            assert_eq!(c.trace(0, &s).unwrap(), i64::from(s.sign()), "{n} {mu}");
        }
    }
}

#[test]
fn perturbed_convention() {
    let c = StirlingComplex::with_convention(5, 2, Convention::perturbed(99)).unwrap();
    assert!(c.verify_d_squared());
    assert!(c
        .verify_equivariance(&Permutation::transposition(6, 0, 3).unwrap())
        .unwrap());
}

#[test]
fn reach_filtration() {
    for n in 3..=6 {
        for k in 2..n {
            assert!(
                StirlingComplex::new(n, k)
                    .unwrap()
                    .verify_reach_filtration()
                    .unwrap(),
                "({n},{k})"
            );
        }
    }
}

#[test]
fn json_export() {
    let c = StirlingComplex::new(4, 3).unwrap();
    let value = serde_json::to_value(c.to_json(true)).unwrap();
    assert_eq!(value["schema"], 1);
    assert_eq!(value["degrees"][0]["degree"], 3);
    assert_eq!(value["degrees"][1]["dim"], 10);
    assert_eq!(value["differentials"][0]["rows"], 4);
    assert_eq!(
        serde_json::to_string(&c.to_json(true)).unwrap(),
        serde_json::to_string(&c.to_json(true)).unwrap()
    );
}

#[test]
fn generator_keys_agree_with_tree_codes() {
    use std::collections::HashMap;
    let c = StirlingComplex::new(5, 2).unwrap();
    let mut by_code: HashMap<(String, u32, Vec<u32>), usize> = HashMap::new();
    for i in 0..=c.top() {
        for g in c.generators(i) {
            let (tree, dv, alt) = g.to_tree();
            assert_eq!(
                &stirling_core::stirling::StirlingTree::from_tree(&tree, dv, &alt).unwrap(),
                g
            );
            let key = (
                tree.canonical_code().to_string(),
                tree.vertex_leaves(dv),
                g.alternating().to_vec(),
            );
            *by_code.entry(key).or_default() += 1;
        }
    }
    assert_eq!(by_code.len(), c.dims().iter().sum::<usize>());
    assert!(by_code.values().all(|&v| v == 1));
}
