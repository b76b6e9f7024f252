use std::ops::{Add, AddAssign};

use serde::Serialize;

use super::ring::Ring;
use crate::error::{Error, Result};

/// Ring operations performed during a computation. Subtractions count as
/// additions; actions of ground-field constants are not counted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OperationCounter {
    pub multiplications: u64,
    pub additions: u64,
}

impl OperationCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn merge(&mut self, other: &OperationCounter) {
        *self += *other;
    }
}

impl Add for OperationCounter {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            multiplications: self.multiplications + rhs.multiplications,
            additions: self.additions + rhs.additions,
        }
    }
}

impl AddAssign for OperationCounter {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

/// Row-major matrix over a [`Ring`].
#[derive(Clone, Debug, PartialEq)]
pub struct RingMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> RingMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[R] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: R) {
        self.data[r * self.cols + c] = value;
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::dim(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Entrywise sum, counting one addition per entry.
    pub fn add(&self, other: &Self, counter: &mut OperationCounter) -> Result<Self> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<Vec<_>>>()?;
        counter.additions += data.len() as u64;
        Ok(Self { data, ..*self })
    }

    pub fn sub(&self, other: &Self, counter: &mut OperationCounter) -> Result<Self> {
        self.check_same(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<Vec<_>>>()?;
        counter.additions += data.len() as u64;
        Ok(Self { data, ..*self })
    }

    pub fn scale(&self, c: &crate::exact::Rational) -> Result<Self> {
        let data = self.data.iter().map(|a| a.try_scale(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self { data, ..*self })
    }

    /// The `size × size` block whose top-left corner is `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, size: usize) -> Self {
        Self::from_fn(size, size, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    /// Zero-pads (or crops) to `rows × cols`, keeping the top-left corner.
    pub fn resized(&self, rows: usize, cols: usize) -> Self {
        if rows == self.rows && cols == self.cols {
            return self.clone();
        }
        Self::from_fn(rows, cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else {
                R::zero()
            }
        })
    }
}
