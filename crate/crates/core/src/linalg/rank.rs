//! Rank over the rationals.
//!
//! Small matrices are eliminated exactly with fraction-free integer row
//! operations. Larger ones are eliminated modulo two random primes above
//! 2^61; if those disagree the exact elimination is run as well.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::sparse::SparseIntMatrix;

/// Column count above which the modular path is used.
pub const MODULAR_THRESHOLD: usize = 2000;

pub const DEFAULT_SEED: u64 = 0x5EED_0F57_1211;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankOptions {
    pub modular_threshold: usize,
    pub seed: u64,
}

impl Default for RankOptions {
    fn default() -> Self {
        RankOptions {
            modular_threshold: MODULAR_THRESHOLD,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum RankMethod {
    Exact,
    Modular {
        primes: [u64; 2],
    },
    /// The primes disagreed and the exact rank was computed.
    Escalated {
        primes: [u64; 2],
        modular_ranks: [usize; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: usize,
    #[serde(flatten)]
    pub method: RankMethod,
}

/// Rank over `Q`, choosing the elimination route by size.
pub fn rank_exact(matrix: &SparseIntMatrix, options: &RankOptions) -> RankReport {
    if matrix.cols() <= options.modular_threshold || matrix.nnz() == 0 {
        return RankReport {
            rank: rank_fraction_free(matrix),
            method: RankMethod::Exact,
        };
    }
    let primes = prime_pair(options.seed ^ ((matrix.rows() as u64) << 32) ^ (matrix.cols() as u64));
    let (a, b) = rayon::join(
        || rank_mod_p(matrix, primes[0]),
        || rank_mod_p(matrix, primes[1]),
    );
    if a == b {
        RankReport {
            rank: a,
            method: RankMethod::Modular { primes },
        }
    } else {
        RankReport {
            rank: rank_fraction_free(matrix),
            method: RankMethod::Escalated {
                primes,
                modular_ranks: [a, b],
            },
        }
    }
}

/// Two distinct primes in `[2^61, 2^62)` drawn from a seeded generator.
pub fn prime_pair(seed: u64) -> [u64; 2] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let first = random_prime(&mut rng);
    let mut second = random_prime(&mut rng);
    while second == first {
        second = random_prime(&mut rng);
    }
    [first, second]
}

pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range(1u64 << 61..1u64 << 62) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Arithmetic used by the shared elimination loop. Reducing a row `t`
/// against a pivot row `p` at column `c` replaces it by `α·t − β·p`, with
/// `(α, β)` chosen so the entry at `c` vanishes.
trait Domain {
    type E: Clone;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn prepare_pivot(&self, row: &mut [(u32, Self::E)], pos: usize);
    fn coefficients(&self, target: &Self::E, pivot: &Self::E) -> (Self::E, Self::E);
    fn combine(
        &self,
        alpha: &Self::E,
        t: Option<&Self::E>,
        beta: &Self::E,
        p: Option<&Self::E>,
    ) -> Self::E;
    fn finish_row(&self, _row: &mut [(u32, Self::E)]) {}
}

struct ModP(u64);

impl Domain for ModP {
    type E = u64;

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn prepare_pivot(&self, row: &mut [(u32, u64)], pos: usize) {
        let inv = pow_mod(row[pos].1, self.0 - 2, self.0);
        for (_, v) in row.iter_mut() {
            *v = mul_mod(*v, inv, self.0);
        }
    }

    fn coefficients(&self, target: &u64, _pivot: &u64) -> (u64, u64) {
        (1, *target)
    }

    fn combine(&self, _alpha: &u64, t: Option<&u64>, beta: &u64, p: Option<&u64>) -> u64 {
        let t = t.copied().unwrap_or(0);
        let bp = p.map_or(0, |&p| mul_mod(*beta, p, self.0));
        if t >= bp {
            t - bp
        } else {
            self.0 - (bp - t)
        }
    }
}

struct Integers;

impl Domain for Integers {
    type E = BigInt;

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn prepare_pivot(&self, row: &mut [(u32, BigInt)], _pos: usize) {
        self.finish_row(row);
    }

    fn coefficients(&self, target: &BigInt, pivot: &BigInt) -> (BigInt, BigInt) {
        let g = target.gcd(pivot);
        (pivot / &g, target / &g)
    }

    fn combine(
        &self,
        alpha: &BigInt,
        t: Option<&BigInt>,
        beta: &BigInt,
        p: Option<&BigInt>,
    ) -> BigInt {
        let mut out = BigInt::zero();
        if let Some(t) = t {
            out += alpha * t;
        }
        if let Some(p) = p {
            out -= beta * p;
        }
        out
    }

    /// Divide out the content so entries stay small.
    fn finish_row(&self, row: &mut [(u32, BigInt)]) {
        let mut content = BigInt::zero();
        for (_, v) in row.iter() {
            content = content.gcd(v);
            if content.is_one() {
                return;
            }
        }
        if content.is_zero() || content.is_one() {
            return;
        }
        for (_, v) in row.iter_mut() {
            *v = &*v / &content;
        }
        if row.first().is_some_and(|(_, v)| v.is_negative()) {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
}

/// Sparse elimination with Markowitz-style pivoting: repeatedly take the
/// lightest remaining row and pivot on its entry whose column is shared by
/// the fewest other rows. Works on the columns of `matrix` as row vectors.
fn eliminate<D: Domain>(domain: &D, rows: Vec<Vec<(u32, D::E)>>, width: usize) -> usize {
    let mut rows = rows;
    let mut active = vec![true; rows.len()];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); width];
    let mut col_count = vec![0u32; width];
    let mut heap = BinaryHeap::with_capacity(rows.len());
    for (r, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(r as u32);
            col_count[c as usize] += 1;
        }
        heap.push(Reverse((row.len(), r as u32)));
    }
    let mut rank = 0;
    while let Some(Reverse((weight, r))) = heap.pop() {
        let r = r as usize;
        if !active[r] || rows[r].len() != weight {
            continue;
        }
        active[r] = false;
        if weight == 0 {
            continue;
        }
        rank += 1;
        let mut pivot = std::mem::take(&mut rows[r]);
        let pos = (0..pivot.len())
            .min_by_key(|&j| (col_count[pivot[j].0 as usize], pivot[j].0))
            .expect("non-empty row");
        let pivot_col = pivot[pos].0;
        domain.prepare_pivot(&mut pivot, pos);
        for &(c, _) in &pivot {
            col_count[c as usize] -= 1;
        }
        let others = std::mem::take(&mut col_rows[pivot_col as usize]);
        for s in others {
            let s = s as usize;
            if !active[s] {
                continue;
            }
            let Ok(tpos) = rows[s].binary_search_by_key(&pivot_col, |&(c, _)| c) else {
                continue;
            };
            let (alpha, beta) = domain.coefficients(&rows[s][tpos].1, &pivot[pos].1);
            let target = std::mem::take(&mut rows[s]);
            let mut merged = Vec::with_capacity(target.len() + pivot.len());
            let (mut i, mut j) = (0, 0);
            while i < target.len() || j < pivot.len() {
                let tc = target.get(i).map_or(u32::MAX, |e| e.0);
                let pc = pivot.get(j).map_or(u32::MAX, |e| e.0);
                if tc < pc {
                    let v = domain.combine(&alpha, Some(&target[i].1), &beta, None);
                    merged.push((tc, v));
                    i += 1;
                } else if pc < tc {
                    let v = domain.combine(&alpha, None, &beta, Some(&pivot[j].1));
                    if !domain.is_zero(&v) {
                        merged.push((pc, v));
                        col_count[pc as usize] += 1;
                        col_rows[pc as usize].push(s as u32);
                    }
                    j += 1;
                } else {
                    let v = domain.combine(&alpha, Some(&target[i].1), &beta, Some(&pivot[j].1));
                    if domain.is_zero(&v) {
                        col_count[tc as usize] -= 1;
                    } else {
                        merged.push((tc, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            domain.finish_row(&mut merged);
            heap.push(Reverse((merged.len(), s as u32)));
            rows[s] = merged;
        }
    }
    rank
}

/// Rank modulo a prime `p < 2^63`.
pub fn rank_mod_p(matrix: &SparseIntMatrix, p: u64) -> usize {
    let pb = BigInt::from(p);
    let rows = (0..matrix.cols())
        .map(|c| {
            matrix
                .column(c)
                .filter_map(|(r, v)| {
                    let residue = v.mod_floor(&pb);
                    let residue: u64 = residue.try_into().expect("reduced below p");
                    (residue != 0).then_some((r as u32, residue))
                })
                .collect()
        })
        .collect();
    eliminate(&ModP(p), rows, matrix.rows())
}

/// Exact rank by fraction-free elimination over the integers.
pub fn rank_fraction_free(matrix: &SparseIntMatrix) -> usize {
    let rows = (0..matrix.cols())
        .map(|c| {
            matrix
                .column(c)
                .map(|(r, v)| (r as u32, v.clone()))
                .collect()
        })
        .collect();
    eliminate(&Integers, rows, matrix.rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[Vec<i64>]) -> SparseIntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        let t = rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(move |(c, &v)| (r, c, BigInt::from(v)))
        });
        SparseIntMatrix::from_triplets(rows.len(), cols, t).unwrap()
    }

    #[test]
    fn zero_and_identity() {
        let opts = RankOptions::default();
        assert_eq!(rank_exact(&SparseIntMatrix::zero(4, 3), &opts).rank, 0);
        assert_eq!(rank_exact(&SparseIntMatrix::identity(5), &opts).rank, 5);
    }

    #[test]
    fn dependent_rows() {
        let m = from_dense(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank_fraction_free(&m), 2);
        assert_eq!(rank_mod_p(&m, 1_000_000_007), 2);
    }

    #[test]
    fn small_prime_can_drop_rank() {
        // det = 6, singular mod 2 and 3
        let m = from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_fraction_free(&m), 2);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }

    #[test]
    fn miller_rabin() {
        assert!(is_prime(2));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007u64 * 3));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(3215031751)); // strong pseudoprime to bases 2, 3, 5, 7
        let [p, q] = prime_pair(7);
        assert!(p >= 1 << 61 && q >= 1 << 61 && p != q);
        assert_eq!(prime_pair(7), [p, q]);
    }

    #[test]
    fn modular_route_used_above_threshold() {
        let opts = RankOptions {
            modular_threshold: 1,
            seed: 9,
        };
        let m = from_dense(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]);
        let report = rank_exact(&m, &opts);
        assert_eq!(report.rank, 2);
        assert!(matches!(report.method, RankMethod::Modular { .. }));
    }
}
