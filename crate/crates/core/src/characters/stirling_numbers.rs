use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::characters::partition::{binomial, factorial};

/// Signed Stirling numbers of the first kind `s_{n,k}` for `1 ≤ k ≤ n ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    max_n: usize,
    /// `rows[n][k]` for `0 ≤ k ≤ n`; column 0 is zero for `n ≥ 1`.
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
            let row = (0..=n)
                .map(|k| {
                    let left = if k == 0 { BigInt::zero() } else { at(k - 1) };
                    left - BigInt::from(n - 1) * at(k)
                })
                .collect();
            rows.push(row);
        }
        StirlingTable { max_n, rows }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `s_{n,k}`, zero outside `1 ≤ k ≤ n ≤ N`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if n == 0 || k == 0 || k > n || n > self.max_n {
            return BigInt::zero();
        }
        self.rows[n][k].clone()
    }

    pub fn row(&self, n: usize) -> Vec<BigInt> {
        (1..=n).map(|k| self.get(n, k)).collect()
    }

    /// The four elementary identities, for every row of the table:
    /// `Σ|s| = n!`, `s_{n,n−1} = −C(n,2)`, `s_{n,n−2} = C(n,3)(3n−1)/4`,
    /// and `Σ s = 0` for `n ≥ 2`.
    pub fn basic_identities(&self) -> Vec<(&'static str, bool)> {
        let rows = 1..=self.max_n;
        let abs_sum = rows.clone().all(|n| {
            let total: BigInt = self.row(n).iter().map(Signed::abs).sum();
            total == BigInt::from(factorial(n))
        });
        let sub_diagonal =
            (2..=self.max_n).all(|n| self.get(n, n - 1) == -BigInt::from(binomial(n, 2)));
        let second = (3..=self.max_n).all(|n| {
            let expected = BigInt::from(binomial(n, 3)) * BigInt::from(3 * n - 1) / 4;
            self.get(n, n - 2) == expected
        });
        let signed_sum = (2..=self.max_n).all(|n| self.row(n).iter().sum::<BigInt>().is_zero());
        vec![
            ("sum of |s_{n,k}| is n!", abs_sum),
            ("s_{n,n-1} = -C(n,2)", sub_diagonal),
            ("s_{n,n-2} = C(n,3)(3n-1)/4", second),
            ("sum of s_{n,k} is 0", signed_sum),
        ]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,s_nk,abs\n");
        for n in 1..=self.max_n {
            for k in 1..=n {
                let s = self.get(n, k);
                out.push_str(&format!("{n},{k},{s},{}\n", s.abs()));
            }
        }
        out
    }

    /// Right-aligned triangle of magnitudes, one row per `n`.
    pub fn to_text(&self) -> String {
        let width = self.rows.last().map_or(1, |r| {
            r.iter()
                .map(|v| v.abs().to_string().len())
                .max()
                .unwrap_or(1)
        });
        let mut out = String::new();
        for n in 1..=self.max_n {
            let cells: Vec<String> = self
                .row(n)
                .iter()
                .map(|v| format!("{:>width$}", v.abs().to_string()))
                .collect();
            out.push_str(&format!("{n:>3} | {}\n", cells.join(" ")));
        }
        out
    }
}

/// Serialized as `{max_n, rows}` with `rows[n-1]` listing `s_{n,1..=n}` as
/// decimal strings.
impl Serialize for StirlingTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (1..=self.max_n)
            .map(|n| self.row(n).iter().map(ToString::to_string).collect())
            .collect();
        let mut st = serializer.serialize_struct("StirlingTable", 2)?;
        st.serialize_field("max_n", &self.max_n)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// `s_{n,k}` from the recurrence; zero out of range.
pub fn stirling_signed(n: usize, k: usize) -> BigInt {
    StirlingTable::new(n).get(n, k)
}

pub fn stirling_unsigned(n: usize, k: usize) -> BigUint {
    stirling_signed(n, k).magnitude().clone()
}

/// `s_{n,k} = Σ_{m=k+1}^{n+1} C(m−1, k) s_{n+1,m}`.
pub fn verify_identity_alt(n: usize, k: usize) -> bool {
    let table = StirlingTable::new(n + 1);
    let rhs: BigInt = (k + 1..=n + 1)
        .map(|m| BigInt::from(binomial(m - 1, k)) * table.get(n + 1, m))
        .sum();
    table.get(n, k) == rhs
}

/// `Σ_{i≥1} |s_{n,2i}|`.
pub fn even_column_sum(n: usize) -> BigInt {
    let table = StirlingTable::new(n);
    (1..=n / 2).map(|i| table.get(n, 2 * i).abs()).sum()
}
