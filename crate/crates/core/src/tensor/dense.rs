use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};
use crate::exact::ExactMatrix;

/// Per-factor dimensions of a tensor product space, e.g. `[4, 4, 4]` for
/// `M2⊗M2⊗M2` or `[2; 6]` for `V⊗V*⊗V⊗V*⊗V⊗V*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FactorShape(Vec<usize>);

impl FactorShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::input("a tensor needs at least one factor"));
        }
        if dims.contains(&0) {
            return Err(Error::input(format!("zero factor dimension in {dims:?}")));
        }
        Ok(Self(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Row-major strides.
    pub fn strides(&self) -> Vec<usize> {
        let mut s = vec![1; self.0.len()];
        for i in (0..self.0.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * self.0[i + 1];
        }
        s
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.0.len()];
        for (slot, &d) in idx.iter_mut().zip(&self.0).rev() {
            *slot = flat % d;
            flat /= d;
        }
        idx
    }

    pub fn flat_index(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.0).fold(0, |acc, (&i, &d)| acc * d + i)
    }
}

impl TryFrom<Vec<usize>> for FactorShape {
    type Error = Error;

    fn try_from(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims)
    }
}

impl From<FactorShape> for Vec<usize> {
    fn from(s: FactorShape) -> Self {
        s.0
    }
}

/// A tensor with every coordinate stored, row-major over the factor
/// multi-index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseTensor {
    shape: FactorShape,
    entries: Vec<Rational>,
}

impl DenseTensor {
    pub fn zeros(shape: FactorShape) -> Self {
        let n = shape.total();
        Self {
            shape,
            entries: vec![Rational::zero(); n],
        }
    }

    pub fn from_entries(shape: FactorShape, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != shape.total() {
            return Err(Error::dim(format!(
                "{} entries for shape {:?}",
                entries.len(),
                shape.dims()
            )));
        }
        Ok(Self { shape, entries })
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn dims(&self) -> &[usize] {
        self.shape.dims()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.entries[self.shape.flat_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: Rational) {
        let i = self.shape.flat_index(idx);
        self.entries[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::dim(format!(
                "shapes {:?} and {:?}",
                self.dims(),
                other.dims()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }

    /// Same entries under a different factor split with the same total size.
    pub fn reshaped(&self, shape: FactorShape) -> Result<Self> {
        if shape.total() != self.shape.total() {
            return Err(Error::dim(format!(
                "cannot reshape {:?} into {:?}",
                self.dims(),
                shape.dims()
            )));
        }
        Ok(Self {
            shape,
            entries: self.entries.clone(),
        })
    }

    /// Applies `map` (of size `new_dim × dims[axis]`) along one factor.
    pub fn mode_product(&self, axis: usize, map: &ExactMatrix) -> Result<Self> {
        let dims = self.dims();
        if axis >= dims.len() || map.cols() != dims[axis] {
            return Err(Error::dim(format!(
                "{}x{} map on factor {axis} of shape {dims:?}",
                map.rows(),
                map.cols()
            )));
        }
        let mut new_dims = dims.to_vec();
        new_dims[axis] = map.rows();
        let out_shape = FactorShape::new(new_dims)?;
        let mut out = Self::zeros(out_shape);
        for (flat, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let mut idx = self.shape.multi_index(flat);
            let j = idx[axis];
            for i in 0..map.rows() {
                let a = map.get(i, j);
                if a.is_zero() {
                    continue;
                }
                idx[axis] = i;
                let target = out.shape.flat_index(&idx);
                out.entries[target] += a * x;
            }
        }
        Ok(out)
    }

    /// Moves factor `i` to position `perm[i]`.
    pub fn permute_factors(&self, perm: &[usize]) -> Result<Self> {
        let k = self.shape.order();
        if !is_permutation(perm, k) {
            return Err(Error::input(format!("{perm:?} is not a permutation of 0..{k}")));
        }
        let mut new_dims = vec![0; k];
        for (i, &p) in perm.iter().enumerate() {
            new_dims[p] = self.dims()[i];
        }
        let mut out = Self::zeros(FactorShape::new(new_dims)?);
        let mut dst = vec![0; k];
        for (flat, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let idx = self.shape.multi_index(flat);
            for (i, &p) in perm.iter().enumerate() {
                dst[p] = idx[i];
            }
            let t = out.shape.flat_index(&dst);
            out.entries[t] = x.clone();
        }
        Ok(out)
    }

    /// Matrix with rows indexed by the factors in `row_factors` (row-major in
    /// ascending factor order) and columns by the remaining factors.
    pub fn unfold(&self, row_factors: &[usize]) -> Result<ExactMatrix> {
        let k = self.shape.order();
        let mut sel = row_factors.to_vec();
        sel.sort_unstable();
        sel.dedup();
        if sel.len() != row_factors.len() || sel.iter().any(|&f| f >= k) {
            return Err(Error::input(format!(
                "invalid factor subset {row_factors:?} for order {k}"
            )));
        }
        let rest: Vec<usize> = (0..k).filter(|f| !sel.contains(f)).collect();
        let dims = self.dims();
        let row_dims: Vec<usize> = sel.iter().map(|&f| dims[f]).collect();
        let col_dims: Vec<usize> = rest.iter().map(|&f| dims[f]).collect();
        let rows: usize = row_dims.iter().product();
        let cols: usize = col_dims.iter().product();
        let mut m = ExactMatrix::zeros(rows, cols);
        for (flat, x) in self.entries.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let idx = self.shape.multi_index(flat);
            let r = sel.iter().fold(0, |acc, &f| acc * dims[f] + idx[f]);
            let c = rest.iter().fold(0, |acc, &f| acc * dims[f] + idx[f]);
            m.set(r, c, x.clone());
        }
        Ok(m)
    }

    /// Whether every single-factor flattening has rank at most one, which is
    /// equivalent to the tensor being zero or decomposable.
    pub fn is_rank_at_most_one(&self) -> bool {
        (0..self.shape.order()).all(|f| self.unfold(&[f]).is_ok_and(|m| m.rank() <= 1))
    }

    pub fn to_json(&self) -> TensorJson {
        TensorJson {
            dims: self.dims().to_vec(),
            entries: self.entries.iter().map(rational::format).collect(),
        }
    }

    pub fn from_json(json: &TensorJson) -> Result<Self> {
        let shape = FactorShape::new(json.dims.clone())?;
        let entries = json
            .entries
            .iter()
            .enumerate()
            .map(|(i, s)| {
                rational::parse(s).map_err(|e| Error::parse(format!("entries[{i}]"), e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_entries(shape, entries)
    }
}

/// Wire form: `{ "dims": [...], "entries": ["a/b", ...] }`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorJson {
    pub dims: Vec<usize>,
    pub entries: Vec<String>,
}

impl fmt::Debug for DenseTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<String> = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| format!("{:?}={}", self.shape.multi_index(i), x))
            .collect();
        write!(f, "DenseTensor{:?}{{{}}}", self.dims(), nz.join(", "))
    }
}

pub(crate) fn is_permutation(perm: &[usize], k: usize) -> bool {
    if perm.len() != k {
        return false;
    }
    let mut seen = vec![false; k];
    for &p in perm {
        if p >= k || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}
