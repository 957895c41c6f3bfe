use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::characters::partition::Partition;
use crate::error::{Error, Result};

fn beta_set(lambda: &Partition) -> Vec<usize> {
    let len = lambda.len();
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(j, &p)| p + len - 1 - j)
        .collect()
}

fn mn(beta: &mut Vec<usize>, mu: &[usize], memo: &mut FxHashMap<(Vec<usize>, usize), i64>) -> i64 {
    let Some(&r) = mu.first() else {
        return 1;
    };
    let key = {
        let mut sorted = beta.clone();
        sorted.sort_unstable();
        (sorted, mu.len())
    };
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[idx] = b - r;
        total += sign * mn(beta, &mu[1..], memo);
        beta[idx] = b;
    }
    memo.insert(key, total);
    total
}

/// `χ_λ(μ)` by the Murnaghan–Nakayama rule, removing border strips on the
/// beta-set (abacus) of `λ`.
pub fn irreducible_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            partition: lambda.weight(),
            cycle_type: mu.weight(),
        });
    }
    let mut beta = beta_set(lambda);
    Ok(mn(&mut beta, mu.parts(), &mut FxHashMap::default()))
}

/// Character table of `S_m`: rows are irreducibles, columns cycle types,
/// both in [`Partition::all`] order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub m: usize,
    pub partitions: Vec<Partition>,
    pub values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(m: usize) -> Self {
        let partitions = Partition::all(m);
        let values = partitions
            .iter()
            .map(|l| {
                partitions
                    .iter()
                    .map(|mu| irreducible_character(l, mu).expect("equal weights"))
                    .collect()
            })
            .collect();
        CharacterTable {
            m,
            partitions,
            values,
        }
    }

    pub fn to_csv(&self) -> String {
        let header: Vec<String> = self
            .partitions
            .iter()
            .map(|p| format!("\"{}\"", p.exponent_notation()))
            .collect();
        let mut out = format!("lambda,{}\n", header.join(","));
        for (lambda, row) in self.partitions.iter().zip(&self.values) {
            let cells: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&format!(
                "\"{}\",{}\n",
                lambda.exponent_notation(),
                cells.join(",")
            ));
        }
        out
    }
}
