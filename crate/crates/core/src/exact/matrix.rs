use std::fmt;

use num_traits::{One, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::dim(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equal-length rows. An empty row list gives a 0x0
    /// matrix.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::dim("ragged rows"));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::dim(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = rhs.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * rhs.rows + k) * cols + j * rhs.cols + l] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row-echelon form and rank. Pivots are taken at the first
    /// nonzero entry of each column, scanning rows top-down.
    pub fn rref(&self) -> (Self, usize) {
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m.get(pivot_row, col).recip();
            for c in col..m.cols {
                let v = m.get(pivot_row, c) * &inv;
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let p = m.get(pivot_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &factor * p;
                    m.set(r, c, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dim(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Rational::one());
        }
        let (red, _) = aug.rref();
        for i in 0..n {
            if !red.get(i, i).is_one() {
                return Err(Error::Singular(format!("{n}x{n} matrix has rank below {n}")));
            }
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Basis of the right kernel `{x : self·x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (red, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for r in 0..rank {
            let c = (0..self.cols)
                .find(|&c| !red.get(r, c).is_zero())
                .expect("nonzero pivot row");
            pivots.push(c);
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    pub fn power(&self, exp: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::dim("power of non-square matrix"));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|r| self.row(r).iter().map(rational::format).collect())
            .collect();
        write!(f, "ExactMatrix{rows:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{frac, int};
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, data: &[i64]) -> ExactMatrix {
        ExactMatrix::from_i64(rows, cols, data).unwrap()
    }

    #[test]
    fn rref_identity() {
        let (r, rank) = ExactMatrix::identity(2).rref();
        assert_eq!(r, ExactMatrix::identity(2));
        assert_eq!(rank, 2);
    }

    #[test]
    fn rref_rank_one() {
        let (r, rank) = m(2, 2, &[1, 1, 1, 1]).rref();
        assert_eq!(r, m(2, 2, &[1, 1, 0, 0]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn rref_leaves_input_alone() {
        let a = m(2, 3, &[2, 4, 6, 1, 1, 1]);
        let before = a.clone();
        let (r, _) = a.rref();
        assert_eq!(a, before);
        assert_eq!(r, m(2, 3, &[1, 0, -1, 0, 1, 2]));
    }

    #[test]
    fn rref_of_delta_and_units() {
        // rows e11+e22, e11, e22 in coordinates (e11, e12, e21, e22)
        let a = m(3, 4, &[1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 1]);
        let (r, rank) = a.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, m(3, 4, &[1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn inverse_and_singular() {
        let t1 = m(2, 2, &[0, -1, 1, -1]);
        let inv = t1.inverse().unwrap();
        assert_eq!(inv, m(2, 2, &[-1, 1, -1, 0]));
        assert_eq!(t1.mul(&inv).unwrap(), ExactMatrix::identity(2));
        assert!(matches!(
            m(2, 2, &[1, 2, 2, 4]).inverse(),
            Err(Error::Singular(_))
        ));
        let half = ExactMatrix::from_vec(1, 1, vec![frac(1, 2)]).unwrap();
        assert_eq!(half.inverse().unwrap(), m(1, 1, &[2]));
    }

    #[test]
    fn nullspace_dimension() {
        let a = m(2, 4, &[1, 1, 0, 0, 0, 0, 1, 1]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kron_shape_and_entries() {
        let a = m(2, 2, &[1, 2, 3, 4]);
        let b = ExactMatrix::identity(2);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(2, 0), &int(3));
        assert_eq!(k.get(3, 1), &int(3));
        assert_eq!(k.get(0, 1), &int(0));
    }

    #[test]
    fn dimension_errors() {
        assert!(m(2, 3, &[0; 6]).mul(&m(2, 3, &[0; 6])).is_err());
        assert!(ExactMatrix::from_i64(2, 2, &[1, 2, 3]).is_err());
        assert!(m(2, 3, &[0; 6]).inverse().is_err());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ExactMatrix> {
        prop::collection::vec((-3i64..=3, 1i64..=3), rows * cols).prop_map(move |v| {
            ExactMatrix::from_vec(rows, cols, v.into_iter().map(|(a, b)| frac(a, b)).collect())
                .unwrap()
        })
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(a in small_matrix(4, 5)) {
            let (r, _) = a.rref();
            prop_assert_eq!(r.rref().0, r);
        }

        #[test]
        fn rank_of_transpose(a in small_matrix(4, 6)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }
    }
}
