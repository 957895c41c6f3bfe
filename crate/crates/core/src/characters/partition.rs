use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer partition with parts stored in weakly decreasing order.
///
/// Used both for irreducible representations `V_λ` and for cycle types of
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Zero parts are dropped and the rest sorted.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// The hook shape `(m - j, 1^j)`.
    pub fn hook(m: usize, leg: usize) -> Result<Self> {
        if m == 0 || leg >= m {
            return Err(Error::Domain(format!(
                "no hook ({}, 1^{leg})",
                m.saturating_sub(leg)
            )));
        }
        let mut parts = vec![m - leg];
        parts.extend(std::iter::repeat_n(1, leg));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        let parts = (0..width)
            .map(|j| self.0.iter().filter(|&&p| p > j).count())
            .collect();
        Partition(parts)
    }

    /// All partitions of `m`, starting from `(m)` in reverse lexicographic order.
    pub fn all(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                rec(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    /// Multiplicity of each part size: `counts[j]` is the number of parts equal to `j`.
    pub fn part_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.weight() + 1];
        for &p in &self.0 {
            counts[p] += 1;
        }
        counts
    }

    /// Order of the centralizer of a permutation with this cycle type.
    pub fn centralizer_order(&self) -> BigUint {
        let mut z = BigUint::one();
        for (size, &count) in self.part_counts().iter().enumerate().skip(1) {
            for c in 1..=count {
                z *= BigUint::from(size) * BigUint::from(c);
            }
        }
        z
    }

    /// Number of permutations of the given cycle type, `m! / z_μ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.weight()) / self.centralizer_order()
    }

    /// Hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j - 1) + (conj.0[j] - i - 1) + 1)
                    .collect()
            })
            .collect()
    }

    /// Dimension of `V_λ` by the hook length formula.
    pub fn hook_length_dimension(&self) -> BigUint {
        let product = self
            .hook_lengths()
            .iter()
            .flatten()
            .fold(BigUint::one(), |acc, &h| acc * BigUint::from(h));
        factorial(self.weight()) / product
    }

    /// Compact label such as `3,2,1^2`.
    pub fn exponent_notation(&self) -> String {
        let mut pieces = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let p = self.0[i];
            let run = self.0[i..].iter().take_while(|&&q| q == p).count();
            if run > 1 && p == 1 {
                pieces.push(format!("1^{run}"));
            } else {
                pieces.extend(std::iter::repeat_n(p.to_string(), run));
            }
            i += run;
        }
        pieces.join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.exponent_notation())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,2,1,1`, `3,2,1^2`, and optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for piece in trimmed.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (base, exp) = match piece.split_once('^') {
                Some((b, e)) => (b, e),
                None => (piece, "1"),
            };
            let bad = || Error::Domain(format!("cannot parse partition {s:?}"));
            let base: usize = base.trim().parse().map_err(|_| bad())?;
            let exp: usize = exp.trim().parse().map_err(|_| bad())?;
            if base == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        Ok(Partition::new(parts))
    }
}

pub fn factorial(m: usize) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, j| acc * BigUint::from(j))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, j| {
        acc * BigUint::from(n - j) / BigUint::from(j + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts_match_known_values() {
        let counts: Vec<usize> = (0..=8).map(|m| Partition::all(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for m in 1..=8 {
            let total: BigUint = Partition::all(m).iter().map(|p| p.class_size()).sum();
            assert_eq!(total, factorial(m));
        }
    }

    #[test]
    fn hook_dimensions() {
        assert_eq!(
            Partition::new(vec![4]).hook_length_dimension(),
            BigUint::from(1u32)
        );
        assert_eq!(
            Partition::new(vec![2, 1]).hook_length_dimension(),
            BigUint::from(2u32)
        );
        assert_eq!(
            Partition::new(vec![3, 2, 1]).hook_length_dimension(),
            BigUint::from(16u32)
        );
        assert_eq!(
            Partition::new(vec![3, 3]).hook_length_dimension(),
            BigUint::from(5u32)
        );
        // sum of squares of dimensions is m!
        for m in 1..=7 {
            let s: BigUint = Partition::all(m)
                .iter()
                .map(|p| {
                    let d = p.hook_length_dimension();
                    &d * &d
                })
                .sum();
            assert_eq!(s, factorial(m));
        }
    }

    #[test]
    fn parse_and_print() {
        let p: Partition = "3,2,1^2".parse().unwrap();
        assert_eq!(p.parts(), &[3, 2, 1, 1]);
        assert_eq!(p.exponent_notation(), "3,2,1^2");
        assert_eq!(
            "(2,2,1,1)".parse::<Partition>().unwrap().to_string(),
            "(2,2,1^2)"
        );
        assert!("3,x".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugate_is_involutive() {
        for p in Partition::all(7) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::default());
    }
}
