use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::characters::murnaghan::irreducible_character;
use crate::characters::partition::{factorial, Partition};
use crate::error::{Error, Result};

/// A rational-valued class function on `S_m`, keyed by cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    m: usize,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    pub fn new(m: usize, values: BTreeMap<Partition, BigRational>) -> Result<Self> {
        let classes = Partition::all(m);
        if values.len() != classes.len() || classes.iter().any(|c| !values.contains_key(c)) {
            return Err(Error::Domain(format!(
                "class function on S_{m} must be given on every cycle type"
            )));
        }
        Ok(ClassFunction { m, values })
    }

    pub fn from_fn<F: FnMut(&Partition) -> BigRational>(m: usize, mut f: F) -> Self {
        let values = Partition::all(m).into_iter().map(|mu| {
            let v = f(&mu);
            (mu, v)
        });
        ClassFunction {
            m,
            values: values.collect(),
        }
    }

    pub fn from_integers<F: FnMut(&Partition) -> i64>(m: usize, mut f: F) -> Self {
        Self::from_fn(m, |mu| BigRational::from_integer(BigInt::from(f(mu))))
    }

    pub fn irreducible(lambda: &Partition) -> Self {
        Self::from_integers(lambda.weight(), |mu| {
            irreducible_character(lambda, mu).expect("equal weights")
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn value(&self, mu: &Partition) -> Option<&BigRational> {
        self.values.get(mu)
    }

    pub fn values(&self) -> &BTreeMap<Partition, BigRational> {
        &self.values
    }

    /// Value at the identity class.
    pub fn degree(&self) -> BigRational {
        self.values[&Partition::new(vec![1; self.m])].clone()
    }

    /// `(1/m!) Σ_μ |C_μ| f(μ) g(μ)`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<BigRational> {
        if self.m != other.m {
            return Err(Error::Domain(format!(
                "class functions on S_{} and S_{}",
                self.m, other.m
            )));
        }
        let total: BigRational = self
            .values
            .iter()
            .map(|(mu, v)| {
                BigRational::from_integer(BigInt::from(mu.class_size())) * v * &other.values[mu]
            })
            .sum();
        Ok(total / BigRational::from_integer(BigInt::from(factorial(self.m))))
    }

    pub fn scaled(&self, c: i64) -> ClassFunction {
        let c = BigRational::from_integer(BigInt::from(c));
        ClassFunction {
            m: self.m,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v * &c))
                .collect(),
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        if self.m != other.m {
            return Err(Error::Domain(format!(
                "class functions on S_{} and S_{}",
                self.m, other.m
            )));
        }
        Ok(ClassFunction {
            m: self.m,
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v + &other.values[k]))
                .collect(),
        })
    }

    /// Restriction to the stabiliser `S_{m−1}` of one point.
    pub fn restrict(&self) -> Result<ClassFunction> {
        if self.m == 0 {
            return Err(Error::Domain("cannot restrict from S_0".into()));
        }
        Ok(Self::from_fn(self.m - 1, |mu| {
            let mut parts = mu.parts().to_vec();
            parts.push(1);
            self.values[&Partition::new(parts)].clone()
        }))
    }

    /// Multiplicities of the irreducibles. Any negative or non-integral
    /// multiplicity is an error.
    pub fn decompose(&self) -> Result<Decomposition> {
        let mut terms = Vec::new();
        for lambda in Partition::all(self.m) {
            let mult = self.inner_product(&ClassFunction::irreducible(&lambda))?;
            if !mult.is_integer() || mult.is_negative() {
                return Err(Error::Decomposition(format!(
                    "multiplicity of V_{{{}}} is {mult}",
                    lambda.exponent_notation()
                )));
            }
            if !mult.is_zero() {
                let m = mult.to_integer().to_biguint().expect("non-negative");
                terms.push((lambda, m));
            }
        }
        Ok(Decomposition { m: self.m, terms })
    }
}

impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len()))?;
        for (mu, v) in &self.values {
            map.serialize_entry(&mu.exponent_notation(), &v.to_string())?;
        }
        map.end()
    }
}

/// A representation written as a sum of irreducibles `V_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub m: usize,
    pub terms: Vec<(Partition, BigUint)>,
}

impl Decomposition {
    pub fn multiplicity(&self, lambda: &Partition) -> BigUint {
        self.terms
            .iter()
            .find(|(p, _)| p == lambda)
            .map(|(_, c)| c.clone())
            .unwrap_or_default()
    }

    /// `Σ mult(λ) dim V_λ`.
    pub fn dimension(&self) -> BigUint {
        self.terms
            .iter()
            .map(|(p, c)| c * p.hook_length_dimension())
            .sum()
    }

    /// True iff the irreducibles with multiplicity one are exactly `parts`.
    pub fn is_multiplicity_free_sum_of(&self, parts: &[Partition]) -> bool {
        self.terms.len() == parts.len()
            && parts
                .iter()
                .all(|p| self.multiplicity(p) == BigUint::from(1u32))
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (p, c) in &self.terms {
            map.serialize_entry(&p.exponent_notation(), &c.to_string())?;
        }
        map.end()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let pieces: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| {
                let v = format!("V_{{{}}}", p.exponent_notation());
                if *c == BigUint::from(1u32) {
                    v
                } else {
                    format!("{c}·{v}")
                }
            })
            .collect();
        write!(f, "{}", pieces.join(" ⊕ "))
    }
}
