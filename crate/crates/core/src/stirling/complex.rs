use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ChainComplex, SparseIntMatrix};
use crate::perm::Permutation;
use crate::stirling::orientation::Convention;
use crate::stirling::tree::{inputs_of, parent_of, StirlingTree};
use crate::trees::{full_mask, stable_tree_clades};

/// A generator together with the edge and alternating-flag orders that
/// orient it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrientedBasis {
    pub tree: StirlingTree,
    pub edge_order: Vec<u32>,
    pub alt_order: Vec<u32>,
}

/// The Stirling complex `S_{n,k}`, one graded piece per edge count
/// `i = 0..=n−k`; the total degree of piece `i` is `i + k`.
#[derive(Clone, Debug)]
pub struct StirlingComplex {
    n: usize,
    k: usize,
    convention: Convention,
    degrees: Vec<Vec<StirlingTree>>,
    index: Vec<FxHashMap<StirlingTree, usize>>,
}

fn k_subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(items: &[u32], k: usize, start: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - current.len() {
                break;
            }
            current.push(items[i]);
            go(items, k, i + 1, current, out);
            current.pop();
        }
    }
    go(items, k, 0, &mut current, &mut out);
    out
}

/// All generators of `S_{n,k}`, grouped by edge count and sorted.
fn all_generators(n: usize, k: usize) -> Vec<Vec<StirlingTree>> {
    let top = n.saturating_sub(k);
    let mut degrees = vec![Vec::new(); if k <= n { top + 1 } else { 0 }];
    if k > n || k < 2 {
        return degrees;
    }
    for clades in stable_tree_clades(n) {
        if clades.len() > top {
            continue;
        }
        let full = full_mask(n);
        for &vertex in std::iter::once(&full).chain(clades.iter()) {
            let inputs = inputs_of(&clades, vertex);
            for alt in k_subsets(&inputs, k) {
                degrees[clades.len()].push(StirlingTree::from_parts(
                    n,
                    clades.clone(),
                    vertex,
                    alt,
                ));
            }
        }
    }
    for d in &mut degrees {
        d.sort_unstable();
    }
    degrees
}

/// The oriented basis of `S_{n,k,i}` in the standard convention.
pub fn enumerate_generators(n: usize, k: usize, i: usize) -> Result<Vec<OrientedBasis>> {
    let complex = StirlingComplex::new(n, k)?;
    Ok((0..complex.dim(i))
        .map(|j| complex.oriented(&complex.generators(i)[j]))
        .collect())
}

impl StirlingComplex {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::with_convention(n, k, Convention::standard())
    }

    pub fn with_convention(n: usize, k: usize, convention: Convention) -> Result<Self> {
        if n < 2 || k < 2 || k > n {
            return Err(Error::Domain(format!("S_{{{n},{k}}} needs 2 <= k <= n")));
        }
        if n > 30 {
            return Err(Error::Domain(format!("n = {n} is too large")));
        }
        let degrees = all_generators(n, k);
        let index = degrees
            .iter()
            .map(|gens| {
                gens.iter()
                    .enumerate()
                    .map(|(j, g)| (g.clone(), j))
                    .collect()
            })
            .collect();
        Ok(StirlingComplex {
            n,
            k,
            convention,
            degrees,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Largest edge count with nonzero generators, `n − k`.
    pub fn top(&self) -> usize {
        self.n - self.k
    }

    pub fn generators(&self, i: usize) -> &[StirlingTree] {
        self.degrees.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn dim(&self, i: usize) -> usize {
        self.generators(i).len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    pub fn index_of(&self, g: &StirlingTree) -> Option<usize> {
        self.index.get(g.edge_count())?.get(g).copied()
    }

    pub fn oriented(&self, g: &StirlingTree) -> OrientedBasis {
        OrientedBasis {
            tree: g.clone(),
            edge_order: self.convention.ordered(g.edges()),
            alt_order: self.convention.ordered(g.alternating()),
        }
    }

    /// `d g` as a list of signed terms, one edge contraction at a time.
    pub fn boundary_terms(&self, g: &StirlingTree) -> Vec<(StirlingTree, i32)> {
        let conv = &self.convention;
        let order = conv.ordered(g.edges());
        let count = order.len();
        let mut out = Vec::new();
        for (j, &e) in order.iter().enumerate() {
            let edge_sign = if (count - 1 - j).is_multiple_of(2) {
                1
            } else {
                -1
            };
            let parent = parent_of(self.n, g.edges(), e);
            let edges: Vec<u32> = g.edges().iter().copied().filter(|&c| c != e).collect();
            if parent == g.distinguished_vertex() && g.alternating().contains(&e) {
                let alt_seq = conv.ordered(g.alternating());
                let pos = alt_seq.iter().position(|&a| a == e).expect("flag present");
                for b in inputs_of(g.edges(), e) {
                    let mut seq = alt_seq.clone();
                    seq[pos] = b;
                    let sign = edge_sign * conv.sign_of(&seq);
                    seq.sort_unstable();
                    out.push((
                        StirlingTree::from_parts(self.n, edges.clone(), parent, seq),
                        sign,
                    ));
                }
            } else {
                let dv = if g.distinguished_vertex() == e {
                    parent
                } else {
                    g.distinguished_vertex()
                };
                out.push((
                    StirlingTree::from_parts(self.n, edges, dv, g.alternating().to_vec()),
                    edge_sign,
                ));
            }
        }
        out
    }

    /// `d : S_{n,k,i} → S_{n,k,i−1}` with rows indexed by `generators(i − 1)`.
    pub fn differential(&self, i: usize) -> SparseIntMatrix {
        if i == 0 || i > self.top() {
            return SparseIntMatrix::zero(self.dim(i.wrapping_sub(1).min(self.top())), self.dim(i));
        }
        let columns: Vec<Vec<(usize, i64)>> = self
            .generators(i)
            .par_iter()
            .map(|g| {
                self.boundary_terms(g)
                    .into_iter()
                    .map(|(t, s)| {
                        (
                            self.index_of(&t).expect("boundary term is a generator"),
                            i64::from(s),
                        )
                    })
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_columns(self.dim(i - 1), columns).expect("indices in range")
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let boundaries = (0..=self.top())
            .map(|i| {
                if i == 0 {
                    SparseIntMatrix::zero(0, self.dim(0))
                } else {
                    self.differential(i)
                }
            })
            .collect();
        ChainComplex::new(self.k as i64, self.dims(), boundaries).expect("shapes agree")
    }

    /// `σ·g` for a permutation of the legs `{0..n}`, as signed terms.
    pub fn action_terms(
        &self,
        sigma: &Permutation,
        g: &StirlingTree,
    ) -> Result<Vec<(StirlingTree, i32)>> {
        if sigma.len() != self.n + 1 {
            return Err(Error::NotAPermutation(format!(
                "expected a permutation of 0..={}, got length {}",
                self.n,
                sigma.len()
            )));
        }
        let conv = &self.convention;
        let all = (1u32 << (self.n + 1)) - 1;
        let normalise = |m: u32| if m & 1 == 1 { all & !m } else { m };

        let edge_seq: Vec<u32> = conv
            .ordered(g.edges())
            .iter()
            .map(|&e| normalise(sigma.apply_mask(e)))
            .collect();
        let edge_sign = conv.sign_of(&edge_seq);
        let mut edges = edge_seq;
        edges.sort_unstable();

        let dv = g.distinguished_vertex();
        let mut blocks: Vec<u32> = g.inputs(dv).iter().map(|&b| sigma.apply_mask(b)).collect();
        blocks.push(sigma.apply_mask(all & !dv));
        let z = *blocks
            .iter()
            .find(|&&b| b & 1 == 1)
            .expect("one block holds leg 0");
        let new_dv = all & !z;

        let alt_seq: Vec<u32> = conv
            .ordered(g.alternating())
            .iter()
            .map(|&a| sigma.apply_mask(a))
            .collect();
        match alt_seq.iter().position(|&a| a == z) {
            None => {
                let sign = edge_sign * conv.sign_of(&alt_seq);
                let mut alt = alt_seq;
                alt.sort_unstable();
                Ok(vec![(
                    StirlingTree::from_parts(self.n, edges, new_dv, alt),
                    sign,
                )])
            }
            Some(pos) => Ok(blocks
                .iter()
                .copied()
                .filter(|&b| b != z && !alt_seq.contains(&b))
                .map(|b| {
                    let mut seq = alt_seq.clone();
                    seq[pos] = b;
                    let sign = -edge_sign * conv.sign_of(&seq);
                    seq.sort_unstable();
                    (
                        StirlingTree::from_parts(self.n, edges.clone(), new_dv, seq),
                        sign,
                    )
                })
                .collect()),
        }
    }

    /// Matrix of `σ` on `S_{n,k,i}`, columns indexed by source generators.
    pub fn action_matrix(&self, i: usize, sigma: &Permutation) -> Result<SparseIntMatrix> {
        let columns: Result<Vec<Vec<(usize, i64)>>> = self
            .generators(i)
            .par_iter()
            .map(|g| {
                self.action_terms(sigma, g)?
                    .into_iter()
                    .map(|(t, s)| {
                        self.index_of(&t)
                            .map(|row| (row, i64::from(s)))
                            .ok_or_else(|| Error::Internal(format!("image {t} is not a generator")))
                    })
                    .collect()
            })
            .collect();
        SparseIntMatrix::from_columns(self.dim(i), columns?)
    }

    /// Trace of `σ` on `S_{n,k,i}`.
    pub fn trace(&self, i: usize, sigma: &Permutation) -> Result<i64> {
        let parts: Result<Vec<i64>> = self
            .generators(i)
            .par_iter()
            .map(|g| {
                Ok(self
                    .action_terms(sigma, g)?
                    .into_iter()
                    .filter(|(t, _)| t == g)
                    .map(|(_, s)| i64::from(s))
                    .sum())
            })
            .collect();
        Ok(parts?.into_iter().sum())
    }

    pub fn verify_d_squared(&self) -> bool {
        self.chain_complex().verify_d_squared()
    }

    /// `d σ = σ d` on every graded piece.
    pub fn verify_equivariance(&self, sigma: &Permutation) -> Result<bool> {
        for i in 1..=self.top() {
            let d = self.differential(i);
            let left = d.mul(&self.action_matrix(i, sigma)?)?;
            let right = self.action_matrix(i - 1, sigma)?.mul(&d)?;
            if left != right {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `ρ(σ)ρ(τ) = ρ(στ)` on every graded piece.
    pub fn verify_group_law(&self, sigma: &Permutation, tau: &Permutation) -> Result<bool> {
        let composite = sigma.compose(tau);
        for i in 0..=self.top() {
            let lhs = self
                .action_matrix(i, sigma)?
                .mul(&self.action_matrix(i, tau)?)?;
            if lhs != self.action_matrix(i, &composite)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every boundary term of a generator of the acyclic subcomplex stays in
    /// it without raising reach, and reach lies in `0..=2(n−k)−2`.
    pub fn verify_reach_filtration(&self) -> Result<bool> {
        let bound = 2 * self.top() as i64 - 2;
        for i in 0..=self.top() {
            for g in self.generators(i) {
                if !g.in_acyclic_part() {
                    continue;
                }
                let r = g.reach()?;
                if r < 0 || r > bound {
                    return Ok(false);
                }
                for (t, _) in self.boundary_terms(g) {
                    if !t.in_acyclic_part() || t.reach()? > r {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.chain_complex().euler_characteristic()
    }

    pub fn to_json(&self, with_differentials: bool) -> ComplexJson {
        let degrees = (0..=self.top())
            .map(|i| DegreeJson {
                i,
                degree: i + self.k,
                dim: self.dim(i),
                generators: self.generators(i).iter().map(ToString::to_string).collect(),
            })
            .collect();
        let differentials = if with_differentials {
            (1..=self.top())
                .map(|i| DifferentialJson {
                    i,
                    rows: self.dim(i - 1),
                    cols: self.dim(i),
                    triplets: self
                        .differential(i)
                        .triplets()
                        .into_iter()
                        .map(|(r, c, v)| (r, c, i64::try_from(v).expect("unit entries")))
                        .collect(),
                })
                .collect()
        } else {
            Vec::new()
        };
        ComplexJson {
            schema: 1,
            n: self.n,
            k: self.k,
            degrees,
            differentials,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeJson {
    pub i: usize,
    pub degree: usize,
    pub dim: usize,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DifferentialJson {
    pub i: usize,
    pub rows: usize,
    pub cols: usize,
    pub triplets: Vec<(usize, usize, i64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub schema: u32,
    pub n: usize,
    pub k: usize,
    pub degrees: Vec<DegreeJson>,
    pub differentials: Vec<DifferentialJson>,
}
