use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::characters::class_function::ClassFunction;
use crate::characters::partition::Partition;
use crate::error::{Error, Result};
use crate::linalg::BettiVector;
use crate::perm::Permutation;
use crate::stirling::StirlingComplex;

/// Character of the chain group `S_{n,k,i}` as an `S_{n+1}`-module.
pub fn chain_group_character(complex: &StirlingComplex, i: usize) -> Result<ClassFunction> {
    let m = complex.n() + 1;
    let classes = Partition::all(m);
    let traces: Result<Vec<i64>> = classes
        .par_iter()
        .map(|mu| complex.trace(i, &Permutation::from_cycle_type(mu)))
        .collect();
    let traces = traces?;
    Ok(ClassFunction::from_fn(m, |mu| {
        let j = classes.iter().position(|c| c == mu).expect("listed class");
        BigRational::from_integer(BigInt::from(traces[j]))
    }))
}

/// `(−1)^n Σ_i (−1)^{i+k} tr(σ_μ | S_{n,k,i})`.
pub fn equivariant_euler_character(complex: &StirlingComplex) -> Result<ClassFunction> {
    let (n, k) = (complex.n(), complex.k());
    let mut total = ClassFunction::from_integers(n + 1, |_| 0);
    for i in 0..=complex.top() {
        let sign = if (n + i + k) % 2 == 0 { 1 } else { -1 };
        total = total.add(&chain_group_character(complex, i)?.scaled(sign))?;
    }
    Ok(total)
}

/// The character of `H_n(S_{n,k})`, computed as the equivariant Euler
/// characteristic once the Betti numbers are known to sit in degree `n`.
pub fn homology_character(complex: &StirlingComplex, betti: &BettiVector) -> Result<ClassFunction> {
    let n = complex.n();
    match betti.concentrated() {
        Some((degree, _)) if degree == n as i64 => {}
        _ => {
            return Err(Error::NotConcentrated(format!(
                "homology of S_{{{n},{}}} is not concentrated in degree {n}",
                complex.k()
            )))
        }
    }
    let chi = equivariant_euler_character(complex)?;
    let beta = BigRational::from_integer(BigInt::from(betti.get(n as i64)));
    if chi.degree() != beta {
        return Err(Error::Internal(format!(
            "Euler character has degree {} but β_{n} = {beta}",
            chi.degree()
        )));
    }
    Ok(chi)
}
