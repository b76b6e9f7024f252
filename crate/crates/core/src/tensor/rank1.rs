use std::fmt;

use num_traits::Zero;

use super::dense::{DenseTensor, FactorShape};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

/// A decomposable tensor `v_1 ⊗ … ⊗ v_k` kept in factored form.
///
/// Two values compare equal when their expansions agree, so scalars may sit
/// on any factor.
#[derive(Clone)]
pub struct Rank1Tensor {
    shape: FactorShape,
    factors: Vec<Vec<Rational>>,
}

impl Rank1Tensor {
    /// Fails when any factor is the zero vector.
    pub fn new(factors: Vec<Vec<Rational>>) -> Result<Self> {
        let shape = FactorShape::new(factors.iter().map(Vec::len).collect())?;
        if let Some(i) = factors.iter().position(|f| f.iter().all(Zero::is_zero)) {
            return Err(Error::Validation(format!("factor {i} is the zero vector")));
        }
        Ok(Self { shape, factors })
    }

    pub fn from_i64(factors: &[&[i64]]) -> Result<Self> {
        Self::new(
            factors
                .iter()
                .map(|f| f.iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn factors(&self) -> &[Vec<Rational>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &[Rational] {
        &self.factors[i]
    }

    pub fn expand(&self) -> DenseTensor {
        let mut entries = vec![rational::one()];
        for f in &self.factors {
            let mut next = Vec::with_capacity(entries.len() * f.len());
            for a in &entries {
                for b in f {
                    next.push(a * b);
                }
            }
            entries = next;
        }
        DenseTensor::from_entries(self.shape.clone(), entries).expect("shape matches factors")
    }

    /// Scales the first factor.
    pub fn scaled(&self, s: &Rational) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::Validation("scaling a term by zero".into()));
        }
        let mut factors = self.factors.clone();
        for x in &mut factors[0] {
            *x *= s;
        }
        Ok(Self {
            shape: self.shape.clone(),
            factors,
        })
    }

    /// Canonical representative of each factor's line: the factor divided by
    /// its first nonzero coordinate.
    pub fn factor_lines(&self) -> Vec<Vec<Rational>> {
        self.factors.iter().map(|f| normalize_line(f)).collect()
    }
}

/// Divides by the first nonzero coordinate. The zero vector is returned as is.
pub fn normalize_line(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v.to_vec(),
    }
}

impl PartialEq for Rank1Tensor {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.expand() == other.expand()
    }
}

impl Eq for Rank1Tensor {}

impl fmt::Debug for Rank1Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(rational::format).collect();
                format!("[{}]", xs.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}
