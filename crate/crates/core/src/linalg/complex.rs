use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::rank::{rank_exact, RankOptions, RankReport};
use crate::linalg::sparse::SparseIntMatrix;

/// A bounded chain complex of free modules `C_0, …, C_top` with boundary
/// maps `∂_i : C_i → C_{i-1}`. Index `i` sits in total degree `i + offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    offset: i64,
    dims: Vec<usize>,
    /// `boundaries[i]` is `∂_i`; `boundaries[0]` is the zero map to nothing.
    boundaries: Vec<SparseIntMatrix>,
}

/// Betti numbers keyed by total degree; every degree of the complex is present.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector(pub BTreeMap<i64, u64>);

impl BettiVector {
    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .map(|(&d, &b)| {
                if d.rem_euclid(2) == 0 {
                    b as i64
                } else {
                    -(b as i64)
                }
            })
            .sum()
    }

    /// Degrees with nonzero Betti number.
    pub fn support(&self) -> Vec<i64> {
        self.0
            .iter()
            .filter(|(_, &b)| b != 0)
            .map(|(&d, _)| d)
            .collect()
    }

    /// The single nonzero degree and value, if there is exactly one.
    pub fn concentrated(&self) -> Option<(i64, u64)> {
        match self.support()[..] {
            [d] => Some((d, self.get(d))),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub offset: i64,
    pub dims: Vec<usize>,
    /// `ranks[i] = rank ∂_i`.
    pub ranks: Vec<RankReport>,
    pub betti: BettiVector,
}

impl ChainComplex {
    pub fn new(offset: i64, dims: Vec<usize>, boundaries: Vec<SparseIntMatrix>) -> Result<Self> {
        if boundaries.len() != dims.len() {
            return Err(Error::Domain("one boundary map per chain group".into()));
        }
        for (i, d) in boundaries.iter().enumerate() {
            let rows = if i == 0 { 0 } else { dims[i - 1] };
            if d.cols() != dims[i] || d.rows() != rows {
                return Err(Error::Domain(format!(
                    "∂_{i} is {}×{}, expected {rows}×{}",
                    d.rows(),
                    d.cols(),
                    dims[i]
                )));
            }
        }
        Ok(ChainComplex {
            offset,
            dims,
            boundaries,
        })
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn boundary(&self, i: usize) -> &SparseIntMatrix {
        &self.boundaries[i]
    }

    pub fn boundaries(&self) -> &[SparseIntMatrix] {
        &self.boundaries
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `∂_{i-1} ∂_i = 0` for every `i`.
    pub fn verify_d_squared(&self) -> bool {
        (2..self.boundaries.len()).into_par_iter().all(|i| {
            self.boundaries[i - 1]
                .mul(&self.boundaries[i])
                .map(|p| p.is_zero())
                .unwrap_or(false)
        })
    }

    /// `Σ (−1)^deg dim C_deg`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                if (i as i64 + self.offset).rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// Ranks of all boundary maps, computed concurrently.
    pub fn ranks(&self, options: &RankOptions) -> Vec<RankReport> {
        self.boundaries
            .par_iter()
            .map(|d| rank_exact(d, options))
            .collect()
    }

    pub fn homology(&self, options: &RankOptions) -> Result<HomologyReport> {
        let ranks = self.ranks(options);
        let betti = betti_from_ranks(
            self.offset,
            &self.dims,
            &ranks.iter().map(|r| r.rank).collect::<Vec<_>>(),
        )?;
        Ok(HomologyReport {
            offset: self.offset,
            dims: self.dims.clone(),
            ranks,
            betti,
        })
    }
}

/// `dim C_i − rank ∂_i − rank ∂_{i+1}` without the sign check; only a
/// homology dimension when `∂² = 0`.
pub fn naive_betti(offset: i64, dims: &[usize], ranks: &[usize]) -> BTreeMap<i64, i64> {
    dims.iter()
        .enumerate()
        .map(|(i, &dim)| {
            let incoming = ranks.get(i + 1).copied().unwrap_or(0);
            (
                i as i64 + offset,
                dim as i64 - ranks[i] as i64 - incoming as i64,
            )
        })
        .collect()
}

/// `β_i = dim C_i − rank ∂_i − rank ∂_{i+1}`.
pub fn betti_from_ranks(offset: i64, dims: &[usize], ranks: &[usize]) -> Result<BettiVector> {
    let mut out = BTreeMap::new();
    for (i, &dim) in dims.iter().enumerate() {
        let incoming = ranks.get(i + 1).copied().unwrap_or(0);
        let outgoing = ranks[i];
        let beta = dim as i64 - outgoing as i64 - incoming as i64;
        if beta < 0 {
            return Err(Error::Internal(format!(
                "negative Betti number at index {i}: dim {dim}, ranks {outgoing} and {incoming}"
            )));
        }
        out.insert(i as i64 + offset, beta as u64);
    }
    Ok(BettiVector(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Simplicial chains of a filled triangle (offset 0: vertices, edges, face).
    fn triangle() -> ChainComplex {
        let d1 = SparseIntMatrix::from_columns(
            3,
            vec![
                vec![(0, -1i64), (1, 1)],
                vec![(1, -1), (2, 1)],
                vec![(0, -1), (2, 1)],
            ],
        )
        .unwrap();
        let d2 = SparseIntMatrix::from_columns(3, vec![vec![(0, 1i64), (1, 1), (2, -1)]]).unwrap();
        ChainComplex::new(0, vec![3, 3, 1], vec![SparseIntMatrix::zero(0, 3), d1, d2]).unwrap()
    }

    #[test]
    fn filled_triangle_is_contractible() {
        let cc = triangle();
        assert!(cc.verify_d_squared());
        let h = cc.homology(&RankOptions::default()).unwrap();
        assert_eq!(h.betti.support(), vec![0]);
        assert_eq!(h.betti.get(0), 1);
        assert_eq!(h.betti.euler_characteristic(), cc.euler_characteristic());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(ChainComplex::new(0, vec![1, 1], vec![SparseIntMatrix::zero(0, 1)]).is_err());
        assert!(ChainComplex::new(
            0,
            vec![1, 1],
            vec![SparseIntMatrix::zero(0, 1), SparseIntMatrix::zero(2, 1)]
        )
        .is_err());
    }

    #[test]
    fn bad_ranks_are_reported() {
        assert!(betti_from_ranks(0, &[1, 1], &[0, 2]).is_err());
    }
}
