use stirling_core::graph_complex::{graph_betti, verify_decomposition, GraphComplex, GraphOptions};
use stirling_core::linalg::RankOptions;
use stirling_core::perm::sorting_sign;
use stirling_core::trees::ModularGraph;

/// All flag bijections `a → b` preserving legs, the involution, incidence
/// and genus. Each is returned as the induced map on edge indices.
fn isomorphisms(a: &ModularGraph, b: &ModularGraph) -> Vec<Vec<usize>> {
    let (ga, gb) = (a.graph(), b.graph());
    if ga.flag_count() != gb.flag_count() || ga.vertex_count() != gb.vertex_count() {
        return Vec::new();
    }
    let flags = ga.flag_count();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; flags];
    let mut used = vec![false; flags];
    let mut vmap = vec![usize::MAX; ga.vertex_count()];
    fn go(
        f: usize,
        a: &ModularGraph,
        b: &ModularGraph,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        vmap: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let (ga, gb) = (a.graph(), b.graph());
        if f == ga.flag_count() {
            let eb = gb.edges();
            let edge_map = ga
                .edges()
                .iter()
                .map(|&(x, _)| {
                    eb.iter()
                        .position(|&(p, q)| p == image[x] || q == image[x])
                        .unwrap()
                })
                .collect();
            out.push(edge_map);
            return;
        }
        for g in 0..gb.flag_count() {
            if used[g] || ga.label(f) != gb.label(g) {
                continue;
            }
            let (u, v) = (ga.vertex_of(f), gb.vertex_of(g));
            if a.genus_label(u) != b.genus_label(v) {
                continue;
            }
            let fresh = vmap[u] == usize::MAX;
            if !fresh && vmap[u] != v {
                continue;
            }
            if fresh && vmap.contains(&v) {
                continue;
            }
            let pf = ga.partner(f);
            if pf < f && gb.partner(g) != image[pf] {
                continue;
            }
            if pf == f && gb.partner(g) != g {
                continue;
            }
            image[f] = g;
            used[g] = true;
            if fresh {
                vmap[u] = v;
            }
            go(f + 1, a, b, image, used, vmap, out);
            if fresh {
                vmap[u] = usize::MAX;
            }
            used[g] = false;
            image[f] = usize::MAX;
        }
    }
    go(0, a, b, &mut image, &mut used, &mut vmap, &mut out);
    out
}

fn killed_by_brute_force(g: &ModularGraph) -> bool {
    isomorphisms(g, g).iter().any(|m| sorting_sign(m) < 0)
}

#[test]
fn kill_rule_matches_brute_force() {
    let all = GraphComplex::with_options(4, GraphOptions { kill_odd: false });
    for i in 0..=all.top() {
        for g in all.generators(i) {
            assert_eq!(g.killed, killed_by_brute_force(&g.graph), "{}", g.code);
        }
    }
}

#[test]
fn differential_m4_i2_matches_brute_force() {
    let c = GraphComplex::new(4);
    let d = c.differential(2);
    let targets = c.generators(1);
    for (col, g) in c.generators(2).iter().enumerate() {
        let mut column = vec![0i64; targets.len()];
        for j in 0..2 {
            let sign = if j == 1 { 1 } else { -1 };
            let h = g.graph.contract_edge(j).unwrap();
            for (row, t) in targets.iter().enumerate() {
                let isos = isomorphisms(&h, &t.graph);
                if let Some(first) = isos.first() {
                    let s = sorting_sign(first);
                    assert!(isos.iter().all(|m| sorting_sign(m) == s));
                    column[row] += i64::from(sign * s);
                }
            }
        }
        for (row, &v) in column.iter().enumerate() {
            assert_eq!(
                d.get(row, col),
                v.into(),
                "{} -> {}",
                g.code,
                targets[row].code
            );
        }
    }
}

#[test]
fn homology_is_concentrated_in_top_degree() {
    for (m, rank) in [(3u64, 1u64), (4, 3), (5, 12)] {
        let betti = graph_betti(m as usize, &RankOptions::default()).unwrap();
        assert_eq!(betti.concentrated(), Some((m as i64, rank)), "m={m}");
    }
}

#[test]
fn ranks_match_even_stirling_complexes() {
    for m in 3..=5 {
        let check = verify_decomposition(m, &RankOptions::default()).unwrap();
        assert!(check.ok, "{check:?}");
    }
}

#[test]
fn d_squared_needs_the_kill_rule() {
    assert!(GraphComplex::new(5).chain_complex().verify_d_squared());
    let raw = GraphComplex::with_options(5, GraphOptions { kill_odd: false });
    assert!(!raw.chain_complex().verify_d_squared());
    let kept = raw.naive_betti(&RankOptions::default());
    let true_betti = graph_betti(5, &RankOptions::default()).unwrap();
    assert!(kept.iter().any(|(&d, &b)| b != true_betti.get(d) as i64));
}

#[test]
fn no_generators_beyond_m_edges() {
    for m in 3..=5 {
        let c = GraphComplex::new(m);
        assert_eq!(c.top(), m);
        assert!(c.generators(m + 1).is_empty());
    }
}
