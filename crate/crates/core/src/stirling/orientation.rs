use crate::perm::sorting_sign;

/// The reference order used to orient generators: `det(E) ⊗ det(A)` is
/// oriented by listing edges, then alternating flags, in increasing key
/// order. The default key is the leaf-set bitmask itself; a seeded
/// convention reorders by a pseudo-random key, which changes the basis by
/// signs only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Convention {
    seed: Option<u64>,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl Convention {
    pub fn standard() -> Self {
        Convention { seed: None }
    }

    pub fn perturbed(seed: u64) -> Self {
        Convention { seed: Some(seed) }
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    fn key(&self, mask: u32) -> (u64, u32) {
        match self.seed {
            None => (0, mask),
            Some(s) => (splitmix64(u64::from(mask) ^ s), mask),
        }
    }

    /// The elements of `set` in reference order.
    pub fn ordered(&self, set: &[u32]) -> Vec<u32> {
        let mut out = set.to_vec();
        out.sort_by_key(|&m| self.key(m));
        out
    }

    /// Sign of the permutation taking `seq` to reference order.
    pub fn sign_of(&self, seq: &[u32]) -> i32 {
        let keys: Vec<(u64, u32)> = seq.iter().map(|&m| self.key(m)).collect();
        sorting_sign(&keys)
    }
}
