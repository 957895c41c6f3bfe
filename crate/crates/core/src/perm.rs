//! Permutations of `{0, …, n}`.
//!
//! The symmetric group `S_{n+1}` acts on trees with legs `0..=n`. Labels on
//! `{1, …, n+1}` are converted through the bijection that fixes `1..=n` and
//! exchanges `0` with `n+1`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::characters::Partition;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(len: usize) -> Self {
        Permutation {
            images: (0..len).collect(),
        }
    }

    pub fn transposition(len: usize, a: usize, b: usize) -> Result<Self> {
        if a >= len || b >= len {
            return Err(Error::NotAPermutation(format!("({a} {b}) on {len} points")));
        }
        let mut images: Vec<usize> = (0..len).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles(len: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..len).collect();
        let mut used = vec![false; len];
        for cycle in cycles {
            for (j, &x) in cycle.iter().enumerate() {
                if x >= len || used[x] {
                    return Err(Error::NotAPermutation(format!("cycles {cycles:?}")));
                }
                used[x] = true;
                images[x] = cycle[(j + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Representative of a conjugacy class: consecutive cycles `(0 1 … λ₁−1)(λ₁ …)…`,
    /// so `0` always lies in the first (longest) cycle.
    pub fn from_cycle_type(cycle_type: &Partition) -> Self {
        let mut images = Vec::with_capacity(cycle_type.weight());
        let mut start = 0;
        for &len in cycle_type.parts() {
            for j in 0..len {
                images.push(start + (j + 1) % len);
            }
            start += len;
        }
        Permutation { images }
    }

    /// Convert a permutation of `{1, …, n+1}` (given as `images[j-1] = σ(j)`)
    /// into a permutation of `{0, …, n}`, identifying `n+1` with `0`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let len = images.len();
        let to_zero = |x: usize| if x == len { 0 } else { x };
        let mut out = vec![0; len];
        for (j, &y) in images.iter().enumerate() {
            if y == 0 || y > len {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            out[to_zero(j + 1)] = to_zero(y);
        }
        Permutation::new(out)
    }

    /// The inverse of [`Permutation::from_one_based`].
    pub fn to_one_based(&self) -> Vec<usize> {
        let len = self.len();
        let from_zero = |x: usize| if x == 0 { len } else { x };
        (1..=len)
            .map(|j| from_zero(self.apply(if j == len { 0 } else { j })))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..len).collect();
        for i in (1..len).rev() {
            let j = rng.gen_range(0..=i);
            images.swap(i, j);
        }
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Image of a subset encoded as a bit mask.
    #[inline]
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            out |= 1 << self.images[b];
            m &= m - 1;
        }
        out
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect())
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i32 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2;
        if odd == 0 {
            1
        } else {
            -1
        }
    }
}

/// Sign of the permutation that sorts `seq` (distinct keys) increasingly.
pub fn sorting_sign<T: Ord>(seq: &[T]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
