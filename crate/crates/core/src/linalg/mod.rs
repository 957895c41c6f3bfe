//! Exact sparse linear algebra over the rationals and Betti numbers.

mod complex;
mod rank;
mod sparse;

pub use complex::{betti_from_ranks, naive_betti, BettiVector, ChainComplex, HomologyReport};
pub use rank::{
    is_prime, prime_pair, random_prime, rank_exact, rank_fraction_free, rank_mod_p, RankMethod,
    RankOptions, RankReport, DEFAULT_SEED, MODULAR_THRESHOLD,
};
pub use sparse::SparseIntMatrix;
