use std::fmt;

use crate::error::{Error, Result};
use crate::exact::ExactMatrix;
use crate::tensor::dense::is_permutation;
use crate::tensor::{DenseTensor, FactorShape, Rank1Tensor};

/// A Segre automorphism: factor `i` is moved to position `perm[i]` after
/// applying the invertible map `maps[i]` to it.
#[derive(Clone, PartialEq, Eq)]
pub struct SegreMap {
    shape: FactorShape,
    perm: Vec<usize>,
    maps: Vec<ExactMatrix>,
}

impl SegreMap {
    pub fn new(shape: FactorShape, perm: Vec<usize>, maps: Vec<ExactMatrix>) -> Result<Self> {
        let k = shape.order();
        if !is_permutation(&perm, k) {
            return Err(Error::input(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        if maps.len() != k {
            return Err(Error::dim(format!("{} maps for {k} factors", maps.len())));
        }
        let dims = shape.dims();
        for (i, m) in maps.iter().enumerate() {
            if dims[perm[i]] != dims[i] {
                return Err(Error::dim(format!(
                    "factor {i} (dim {}) cannot move to position {} (dim {})",
                    dims[i], perm[i], dims[perm[i]]
                )));
            }
            if m.rows() != dims[i] || m.cols() != dims[i] {
                return Err(Error::dim(format!(
                    "map {i} is {}x{}, factor has dim {}",
                    m.rows(),
                    m.cols(),
                    dims[i]
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Singular(format!("map on factor {i}")));
            }
        }
        Ok(Self { shape, perm, maps })
    }

    pub fn identity(shape: FactorShape) -> Self {
        let maps = shape.dims().iter().map(|&d| ExactMatrix::identity(d)).collect();
        let perm = (0..shape.order()).collect();
        Self { shape, perm, maps }
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn maps(&self) -> &[ExactMatrix] {
        &self.maps
    }

    pub fn is_factor_preserving(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    fn check_shape(&self, shape: &FactorShape) -> Result<()> {
        if shape != &self.shape {
            return Err(Error::dim(format!(
                "map on {:?} applied to shape {:?}",
                self.shape.dims(),
                shape.dims()
            )));
        }
        Ok(())
    }

    pub fn apply(&self, t: &Rank1Tensor) -> Result<Rank1Tensor> {
        self.check_shape(t.shape())?;
        let mut out = vec![Vec::new(); self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            out[p] = self.maps[i].mul_vec(t.factor(i))?;
        }
        Rank1Tensor::new(out)
    }

    pub fn apply_dense(&self, t: &DenseTensor) -> Result<DenseTensor> {
        self.check_shape(t.shape())?;
        let mut cur = t.clone();
        for (i, m) in self.maps.iter().enumerate() {
            cur = cur.mode_product(i, m)?;
        }
        cur.permute_factors(&self.perm)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_shape(&other.shape)?;
        let mut perm = vec![0; self.perm.len()];
        let mut maps = Vec::with_capacity(self.maps.len());
        for (i, &p) in other.perm.iter().enumerate() {
            perm[i] = self.perm[p];
            maps.push(self.maps[p].mul(&other.maps[i])?);
        }
        Ok(Self {
            shape: self.shape.clone(),
            perm,
            maps,
        })
    }

    pub fn inverse(&self) -> Self {
        let k = self.perm.len();
        let mut perm = vec![0; k];
        let mut maps = vec![ExactMatrix::zeros(0, 0); k];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
            maps[p] = self.maps[i].inverse().expect("maps are invertible");
        }
        Self {
            shape: self.shape.clone(),
            perm,
            maps,
        }
    }

    pub fn power(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.shape.clone());
        for _ in 0..exp {
            acc = self.compose(&acc).expect("same shape");
        }
        acc
    }

    /// The induced linear map on the whole tensor space, rows and columns in
    /// row-major flat order. Two maps are the same group element exactly when
    /// these agree.
    pub fn induced_matrix(&self) -> ExactMatrix {
        let dims = self.shape.dims();
        let total = self.shape.total();
        let kron = self
            .maps
            .iter()
            .fold(ExactMatrix::identity(1), |acc, m| acc.kron(m));
        // Row r of `kron` has factor coordinates r_i in input order; the
        // output keeps r_i at position perm[i].
        let mut out = ExactMatrix::zeros(total, total);
        let mut dst = vec![0; dims.len()];
        for r in 0..total {
            let idx = self.shape.multi_index(r);
            for (i, &p) in self.perm.iter().enumerate() {
                dst[p] = idx[i];
            }
            let row = self.shape.flat_index(&dst);
            for c in 0..total {
                let v = kron.get(r, c);
                if !num_traits::Zero::is_zero(v) {
                    out.set(row, c, v.clone());
                }
            }
        }
        out
    }

    pub fn same_element(&self, other: &Self) -> bool {
        self.shape == other.shape && self.induced_matrix() == other.induced_matrix()
    }

    pub fn is_identity(&self) -> bool {
        self.induced_matrix() == ExactMatrix::identity(self.shape.total())
    }

    /// Smallest `k ≥ 1` with `self^k = 1`, searched up to `limit`.
    pub fn order(&self, limit: u32) -> Option<u32> {
        let id = ExactMatrix::identity(self.shape.total());
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.induced_matrix() == id {
                return Some(k);
            }
            acc = self.compose(&acc).expect("same shape");
        }
        None
    }
}

impl fmt::Debug for SegreMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SegreMap")
            .field("dims", &self.shape.dims())
            .field("perm", &self.perm)
            .field("maps", &self.maps)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;
    use crate::tensor::matrix_space::mat2;

    fn shape3() -> FactorShape {
        FactorShape::new(vec![2, 2, 2]).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> ExactMatrix {
        ExactMatrix::from_i64(2, 2, &[a, b, c, d]).unwrap()
    }

    #[test]
    fn cyclic_shift_moves_factors() {
        let g = SegreMap::new(shape3(), vec![2, 0, 1], vec![m(1, 0, 0, 1); 3]).unwrap();
        let t = Rank1Tensor::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let img = g.apply(&t).unwrap();
        assert_eq!(img, Rank1Tensor::from_i64(&[&[0, 1], &[1, 1], &[1, 0]]).unwrap());
        assert_eq!(g.apply_dense(&t.expand()).unwrap(), img.expand());
        assert_eq!(g.order(10), Some(3));
    }

    #[test]
    fn compose_and_inverse() {
        let g = SegreMap::new(shape3(), vec![1, 2, 0], vec![m(1, 1, 0, 1), m(0, 1, 1, 0), m(2, 0, 0, 1)])
            .unwrap();
        let h = SegreMap::new(shape3(), vec![1, 0, 2], vec![m(1, 0, 3, 1), m(1, 0, 0, -1), m(1, 2, 3, 4)])
            .unwrap();
        let t = Rank1Tensor::from_i64(&[&[1, 2], &[3, -1], &[0, 5]]).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.apply(&t).unwrap(), g.apply(&h.apply(&t).unwrap()).unwrap());
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
        assert_eq!(
            gh.induced_matrix(),
            g.induced_matrix().mul(&h.induced_matrix()).unwrap()
        );
    }

    #[test]
    fn scalars_may_migrate_between_factors() {
        let a = vec![m(0, -1, 1, -1), m(1, 1, 0, 1), m(2, 1, 1, 1)];
        let mut b = a.clone();
        b[0] = b[0].scale(&int(2));
        b[2] = b[2].scale(&crate::exact::rational::frac(1, 2));
        let g = SegreMap::new(shape3(), vec![0, 1, 2], a).unwrap();
        let h = SegreMap::new(shape3(), vec![0, 1, 2], b).unwrap();
        assert_ne!(g, h);
        assert!(g.same_element(&h));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SegreMap::new(shape3(), vec![0, 1, 2], vec![m(1, 1, 1, 1), m(1, 0, 0, 1), m(1, 0, 0, 1)]),
            Err(Error::Singular(_))
        ));
        assert!(SegreMap::new(shape3(), vec![0, 0, 1], vec![m(1, 0, 0, 1); 3]).is_err());
        let mixed = FactorShape::new(vec![2, 3]).unwrap();
        assert!(SegreMap::new(
            mixed.clone(),
            vec![1, 0],
            vec![ExactMatrix::identity(2), ExactMatrix::identity(3)]
        )
        .is_err());
        let t = Rank1Tensor::new(vec![mat2(1, 0, 0, 0)]).unwrap();
        assert!(SegreMap::identity(shape3()).apply(&t).is_err());
    }
}
