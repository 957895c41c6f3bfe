use std::fmt::Write;
use std::time::Instant;

use anyhow::{bail, Result};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use stirling_core::characters::{
    factorial, homology_character, stirling_signed, stirling_unsigned, verify_identity_alt,
    StirlingTable,
};
use stirling_core::graph_complex::{verify_decomposition, GraphComplex, GraphOptions};
use stirling_core::linalg::{HomologyReport, RankOptions};
use stirling_core::perm::Permutation;
use stirling_core::stirling::StirlingComplex;

use crate::report::{mark, Report};
use crate::{Check, RunConfig};

fn rank_options(cfg: &RunConfig) -> RankOptions {
    RankOptions {
        seed: cfg.seed,
        ..RankOptions::default()
    }
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k < 2 || k > n {
        bail!("need 2 <= k <= n, got n = {n}, k = {k}");
    }
    if n > 9 {
        bail!("n = {n} is beyond what can be enumerated here (n <= 9)");
    }
    Ok(())
}

#[derive(Serialize)]
struct BettiRow {
    n: usize,
    k: usize,
    homology: HomologyReport,
    euler_characteristic: i64,
    expected: String,
    ok: bool,
    #[serde(skip)]
    seconds: f64,
}

fn betti_row(cfg: &RunConfig, n: usize, k: usize) -> Result<BettiRow> {
    let start = Instant::now();
    let complex = StirlingComplex::new(n, k)?;
    let chain = complex.chain_complex();
    let homology = chain.homology(&rank_options(cfg))?;
    let expected = stirling_unsigned(n, k);
    let ok = homology.betti.concentrated().map(|(d, b)| (d, b.into()))
        == Some((n as i64, expected.clone()));
    Ok(BettiRow {
        n,
        k,
        euler_characteristic: chain.euler_characteristic(),
        homology,
        expected: expected.to_string(),
        ok,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn betti(cfg: &RunConfig, pairs: &[(usize, usize)]) -> Result<Report> {
    for &(n, k) in pairs {
        check_range(n, k)?;
    }
    let rows: Result<Vec<BettiRow>> = pairs
        .par_iter()
        .map(|&(n, k)| betti_row(cfg, n, k))
        .collect();
    let rows = rows?;
    let mut text = String::new();
    let mut csv = String::from("n,k,degree,dim,rank,betti\n");
    for r in &rows {
        let h = &r.homology;
        let ranks: Vec<usize> = h.ranks.iter().map(|x| x.rank).collect();
        writeln!(
            text,
            "S_{{{},{}}}  dims {:?}  ranks {:?}",
            r.n, r.k, h.dims, ranks
        )?;
        let betti: Vec<String> = h
            .betti
            .0
            .iter()
            .map(|(d, b)| format!("β_{d}={b}"))
            .collect();
        writeln!(text, "  {}", betti.join(" "))?;
        writeln!(
            text,
            "  euler {}  expected β_{} = |s_{{{},{}}}| = {}  {}  ({:.2} s)",
            r.euler_characteristic,
            r.n,
            r.n,
            r.k,
            r.expected,
            mark(r.ok),
            r.seconds
        )?;
        for (i, dim) in h.dims.iter().enumerate() {
            let degree = i as i64 + h.offset;
            writeln!(
                csv,
                "{},{},{},{},{},{}",
                r.n,
                r.k,
                degree,
                dim,
                ranks[i],
                h.betti.get(degree)
            )?;
        }
    }
    let ok = rows.iter().all(|r| r.ok);
    Ok(Report::new(
        ok,
        text,
        json!({ "schema": 1, "command": "betti", "results": rows }),
    )
    .with_csv(csv))
}

#[derive(Serialize)]
struct CheckResult {
    check: Check,
    ok: bool,
    detail: String,
}

pub fn verify(
    cfg: &RunConfig,
    n: usize,
    k: usize,
    checks: &[Check],
    samples: usize,
) -> Result<Report> {
    check_range(n, k)?;
    let complex = StirlingComplex::new(n, k)?;
    let mut results = Vec::new();
    for &check in checks {
        let (ok, detail) = match check {
            Check::D2 => (
                complex.verify_d_squared(),
                format!("{} differentials", complex.top()),
            ),
            Check::Equivariance => {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                let mut perms: Vec<Permutation> = (1..=n)
                    .map(|i| Permutation::transposition(n + 1, 0, i))
                    .collect::<Result<_, _>>()?;
                perms.extend((0..samples).map(|_| Permutation::random(n + 1, &mut rng)));
                let commute = perms
                    .par_iter()
                    .map(|s| complex.verify_equivariance(s))
                    .collect::<Result<Vec<_>, _>>()?;
                let pairs: Vec<(Permutation, Permutation)> = (0..samples)
                    .map(|_| {
                        (
                            Permutation::random(n + 1, &mut rng),
                            Permutation::random(n + 1, &mut rng),
                        )
                    })
                    .collect();
                let law = pairs
                    .par_iter()
                    .map(|(s, t)| complex.verify_group_law(s, t))
                    .collect::<Result<Vec<_>, _>>()?;
                let ok = commute.iter().all(|&b| b) && law.iter().all(|&b| b);
                (
                    ok,
                    format!(
                        "{} permutations commute with d, {} group-law pairs",
                        perms.len(),
                        pairs.len()
                    ),
                )
            }
            Check::Reach => (
                complex.verify_reach_filtration()?,
                format!("bound 0..={}", 2 * (n - k) as i64 - 2),
            ),
            Check::Euler => {
                let shifted: i64 = complex
                    .dims()
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) })
                    .sum();
                let s = stirling_signed(n, k);
                (
                    BigInt::from(shifted) == s,
                    format!("Σ(−1)^i dim S_{{{n},{k},i}} = {shifted}, s_{{{n},{k}}} = {s}"),
                )
            }
        };
        results.push(CheckResult { check, ok, detail });
    }
    let mut text = String::new();
    for r in &results {
        writeln!(
            text,
            "{:<13} {}  {}",
            format!("{:?}", r.check).to_lowercase(),
            mark(r.ok),
            r.detail
        )?;
    }
    let ok = results.iter().all(|r| r.ok);
    Ok(Report::new(
        ok,
        text,
        json!({ "schema": 1, "command": "verify", "n": n, "k": k, "checks": results }),
    ))
}

pub fn characters(cfg: &RunConfig, n: usize, k: usize) -> Result<Report> {
    check_range(n, k)?;
    if n > 6 {
        bail!("characters are computed for n <= 6");
    }
    let complex = StirlingComplex::new(n, k)?;
    let homology = complex.chain_complex().homology(&rank_options(cfg))?;
    let chi = homology_character(&complex, &homology.betti)?;
    let decomposition = chi.decompose()?;
    let dim = decomposition.dimension();
    let ok = dim == stirling_unsigned(n, k);
    let mut text = format!("character of H_{n}(S_{{{n},{k}}}) on S_{}\n", n + 1);
    let mut csv = String::from("cycle_type,class_size,value\n");
    for (mu, v) in chi.values() {
        writeln!(
            text,
            "  {:<12} |C| = {:<6} χ = {}",
            mu.exponent_notation(),
            mu.class_size(),
            v
        )?;
        writeln!(
            csv,
            "\"{}\",{},{}",
            mu.exponent_notation(),
            mu.class_size(),
            v
        )?;
    }
    writeln!(text, "H_{n}(S_{{{n},{k}}}) = {decomposition}")?;
    writeln!(
        text,
        "dimension {dim}, |s_{{{n},{k}}}| = {}  {}",
        stirling_unsigned(n, k),
        mark(ok)
    )?;
    let irreducibles: Vec<_> = decomposition
        .terms
        .iter()
        .map(|(p, c)| json!({ "partition": p.exponent_notation(), "multiplicity": c.to_string(), "dimension": p.hook_length_dimension().to_string() }))
        .collect();
    let value = json!({
        "schema": 1,
        "command": "characters",
        "n": n,
        "k": k,
        "character": chi,
        "decomposition": irreducibles,
        "dimension": dim.to_string(),
        "ok": ok,
    });
    Ok(Report::new(ok, text, value).with_csv(csv))
}

pub fn graph(cfg: &RunConfig, m: usize, kill: bool) -> Result<Report> {
    if !(3..=6).contains(&m) {
        bail!("graph complexes are computed for 3 <= m <= 6");
    }
    let options = rank_options(cfg);
    let complex = GraphComplex::with_options(m, GraphOptions { kill_odd: kill });
    let chain = complex.chain_complex();
    let d2 = chain.verify_d_squared();
    let mut text = format!(
        "FT(Com)(1,{m}) graded by edge count, odd classes {}\n",
        if kill { "killed" } else { "kept" }
    );
    writeln!(text, "  dims {:?}", complex.dims())?;
    writeln!(text, "  odd classes {:?}", complex.killed_counts())?;
    writeln!(text, "  d² = 0: {}", mark(d2))?;
    let expected = factorial(m - 1) / 2u32;
    if !kill {
        let naive = complex.naive_betti(&options);
        let shown: Vec<String> = naive.iter().map(|(d, b)| format!("{d}:{b}")).collect();
        writeln!(text, "  dim − rank − rank: {}", shown.join(" "))?;
        let value = json!({
            "schema": 1, "command": "graph", "m": m, "kill_odd": false,
            "dims": complex.dims(), "killed": complex.killed_counts(), "d_squared_zero": d2, "naive_betti": naive,
        });
        return Ok(Report::new(true, text, value));
    }
    let check = verify_decomposition(m, &options)?;
    let concentrated = check.graph_degree.is_some() && expected == check.graph_rank.into();
    writeln!(
        text,
        "  homology rank {} in degree {}, (m−1)!/2 = {}  {}",
        check.graph_rank,
        check
            .graph_degree
            .map_or("none (not concentrated)".to_string(), |d| d.to_string()),
        expected,
        mark(concentrated)
    )?;
    let terms: Vec<String> = check
        .stirling_terms
        .iter()
        .map(|(k, b)| format!("β(S_{{{},{k}}})={b}", m - 1))
        .collect();
    writeln!(
        text,
        "  {} sum {}  {}",
        terms.join(" + "),
        check.stirling_sum,
        mark(check.ok)
    )?;
    let ok = d2 && concentrated && check.ok;
    let value = json!({
        "schema": 1, "command": "graph", "m": m, "kill_odd": true,
        "dims": complex.dims(), "d_squared_zero": d2, "expected": expected.to_string(), "check": check, "ok": ok,
    });
    Ok(Report::new(ok, text, value))
}

pub fn table(_cfg: &RunConfig, max_n: usize) -> Result<Report> {
    if max_n == 0 {
        bail!("--max-n must be at least 1");
    }
    let table = StirlingTable::new(max_n);
    let identities = table.basic_identities();
    let alt = (1..=max_n).all(|n| (1..=n).all(|k| verify_identity_alt(n, k)));
    let mut text = String::from("|s_{n,k}|\n");
    text.push_str(&table.to_text());
    for (name, ok) in &identities {
        writeln!(text, "{name}: {}", mark(*ok))?;
    }
    writeln!(text, "s_{{n,k}} = sum C(m-1,k) s_{{n+1,m}}: {}", mark(alt))?;
    let ok = alt && identities.iter().all(|(_, b)| *b);
    let flags: serde_json::Map<String, serde_json::Value> = identities
        .iter()
        .map(|(name, ok)| (name.to_string(), json!(ok)))
        .collect();
    let value = json!({ "schema": 1, "command": "table", "table": table, "identities": flags, "alternating_sum": alt });
    Ok(Report::new(ok, text, value).with_csv(table.to_csv()))
}

pub fn complex(_cfg: &RunConfig, n: usize, k: usize, i: usize, index: usize) -> Result<Report> {
    check_range(n, k)?;
    let complex = StirlingComplex::new(n, k)?;
    let mut text = String::new();
    for j in 0..=complex.top() {
        writeln!(text, "S_{{{n},{k},{j}}}: {} generators", complex.dim(j))?;
        for g in complex.generators(j) {
            writeln!(text, "  {g}")?;
        }
    }
    let mut report = Report::new(true, text, serde_json::to_value(complex.to_json(true))?);
    if let Some(g) = complex.generators(i).get(index) {
        report = report.with_dot(g.to_dot(&format!("S_{n}_{k}_{i}_{index}")));
    }
    Ok(report)
}
