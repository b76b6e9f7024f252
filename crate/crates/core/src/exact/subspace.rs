use num_traits::Zero;

use super::matrix::ExactMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// The RREF basis is unique, so derived equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: ExactMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: ExactMatrix::identity(ambient_dim),
        }
    }

    /// Span of `vectors` inside `Q^ambient_dim`.
    pub fn span<V: AsRef<[Rational]>>(vectors: &[V], ambient_dim: usize) -> Result<Self> {
        if let Some(bad) = vectors.iter().find(|v| v.as_ref().len() != ambient_dim) {
            return Err(Error::dim(format!(
                "vector of length {} in ambient dimension {ambient_dim}",
                bad.as_ref().len()
            )));
        }
        let rows: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| v.as_ref().to_vec())
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        if rows.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        let (red, rank) = ExactMatrix::from_rows(&rows)?.rref();
        let basis = ExactMatrix::from_rows(&red.row_vecs()[..rank])?;
        Ok(Self { ambient_dim, basis })
    }

    pub fn line(vector: &[Rational]) -> Result<Self> {
        let s = Self::span(&[vector], vector.len())?;
        if s.dim() != 1 {
            return Err(Error::input("a line needs a nonzero vector"));
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &ExactMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    pub fn is_line(&self) -> bool {
        self.dim() == 1
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        let mut rows = self.basis_vectors();
        rows.push(v.to_vec());
        Ok(Self::span(&rows, self.ambient_dim)?.dim() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim())
    }

    /// `self + other`.
    pub fn sum(&self, other: &Subspace) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::dim(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Self::span(&rows, self.ambient_dim)
    }

    /// `dim(self ∩ other)`, by the dimension formula.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }
}

/// Whether the lines span a space of dimension equal to their count, i.e.
/// their sum is direct.
pub fn is_independent(lines: &[Subspace]) -> Result<bool> {
    let Some(first) = lines.first() else {
        return Ok(true);
    };
    let ambient = first.ambient_dim();
    let mut rows = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        if !l.is_line() {
            return Err(Error::input(format!(
                "subspace {i} has dimension {}, expected a line",
                l.dim()
            )));
        }
        if l.ambient_dim() != ambient {
            return Err(Error::dim(format!(
                "line {i} lives in dimension {}, not {ambient}",
                l.ambient_dim()
            )));
        }
        rows.push(l.basis().row(0).to_vec());
    }
    Ok(Subspace::span(&rows, ambient)?.dim() == lines.len())
}
