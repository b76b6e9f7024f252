//! Matrix-space tensors: structure tensors of matrix multiplication and the
//! two views of `M2⊗M2⊗M2`.
//!
//! Matrix units of `M_{a×b}` are indexed row-major, `e_ij ↦ i·b + j`, so the
//! basis of `M2` is ordered `(e11, e12, e21, e22)`. Under `e_ij ↔ e_i⊗e^j`
//! this ordering makes the three-factor and six-factor views share the same
//! flat entry array; the reshape only relabels dimensions.

use num_traits::Zero;

use super::dense::{DenseTensor, FactorShape};
use super::rank1::Rank1Tensor;
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

/// Coordinates of the matrix unit `e_ij` (0-based) in `M_{rows×cols}`.
pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); rows * cols];
    v[i * cols + j] = rational::one();
    v
}

/// A 2×2 matrix `[[a, b], [c, d]]` as a coordinate vector.
pub fn mat2(a: i64, b: i64, c: i64, d: i64) -> Vec<Rational> {
    [a, b, c, d].iter().map(|&x| rational::int(x)).collect()
}

fn shape(dims: Vec<usize>) -> FactorShape {
    FactorShape::new(dims).expect("positive dimensions")
}

fn check_dims(m: usize, n: usize, p: usize) -> Result<()> {
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::input(format!("matrix format ({m},{n},{p}) has a zero side")));
    }
    Ok(())
}

/// `S(m,n,p) = Σ e_ij ⊗ e_jk ⊗ e_ki` in `M_{m×n} ⊗ M_{n×p} ⊗ M_{p×m}`.
pub fn structure_tensor(m: usize, n: usize, p: usize) -> Result<DenseTensor> {
    check_dims(m, n, p)?;
    let mut t = DenseTensor::zeros(shape(vec![m * n, n * p, p * m]));
    for i in 0..m {
        for j in 0..n {
            for k in 0..p {
                t.set(&[i * n + j, j * p + k, k * m + i], rational::one());
            }
        }
    }
    Ok(t)
}

/// Structure tensor of matrix multiplication `Σ e'_ij ⊗ e'_jk ⊗ e_ik` in
/// `M*_{m×n} ⊗ M*_{n×p} ⊗ M_{m×p}`, dual factors given by coordinates.
pub fn mu_structure_tensor(m: usize, n: usize, p: usize) -> Result<DenseTensor> {
    check_dims(m, n, p)?;
    let mut t = DenseTensor::zeros(shape(vec![m * n, n * p, m * p]));
    for i in 0..m {
        for j in 0..n {
            for k in 0..p {
                t.set(&[i * n + j, j * p + k, i * p + k], rational::one());
            }
        }
    }
    Ok(t)
}

/// The reindexing `e'_ij ↦ e_ij`, `e'_jk ↦ e_jk`, `e_ik ↦ e_ki` carrying the
/// multiplication tensor to `S(m,n,p)`: transposes the third factor.
pub fn mu_to_structure_form(t: &DenseTensor, m: usize, n: usize, p: usize) -> Result<DenseTensor> {
    if t.dims() != [m * n, n * p, m * p] {
        return Err(Error::dim(format!(
            "expected shape [{}, {}, {}], got {:?}",
            m * n,
            n * p,
            m * p,
            t.dims()
        )));
    }
    let mut out = DenseTensor::zeros(shape(vec![m * n, n * p, p * m]));
    for a in 0..m * n {
        for b in 0..n * p {
            for i in 0..m {
                for k in 0..p {
                    let x = t.get(&[a, b, i * p + k]);
                    if !x.is_zero() {
                        out.set(&[a, b, k * m + i], x.clone());
                    }
                }
            }
        }
    }
    Ok(out)
}

fn six_shape() -> FactorShape {
    shape(vec![2; 6])
}

fn three_shape() -> FactorShape {
    shape(vec![4; 3])
}

/// `M2⊗M2⊗M2 → V⊗V*⊗V⊗V*⊗V⊗V*` under `e_ij ↔ e_i⊗e^j`.
pub fn reshape_3to6(t: &DenseTensor) -> Result<DenseTensor> {
    if t.dims() != [4, 4, 4] {
        return Err(Error::dim(format!("expected [4, 4, 4], got {:?}", t.dims())));
    }
    t.reshaped(six_shape())
}

pub fn reshape_6to3(t: &DenseTensor) -> Result<DenseTensor> {
    if t.dims() != [2; 6] {
        return Err(Error::dim(format!("expected [2; 6], got {:?}", t.dims())));
    }
    t.reshaped(three_shape())
}

/// The product of identity tensors `δ = e_1⊗e^1 + e_2⊗e^2` placed on the
/// factor pairs `{1,i1}, {3,i2}, {5,i3}` (1-based positions) of the six-factor
/// space; `pairing` must be a permutation of `(2, 4, 6)`.
pub fn delta_product(pairing: [usize; 3]) -> Result<DenseTensor> {
    let mut sorted = pairing;
    sorted.sort_unstable();
    if sorted != [2, 4, 6] {
        return Err(Error::input(format!("{pairing:?} is not a permutation of (2, 4, 6)")));
    }
    let mut t = DenseTensor::zeros(six_shape());
    for bits in 0..8usize {
        let vals = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
        let mut idx = [0usize; 6];
        for (slot, (&odd, &even)) in [1usize, 3, 5].iter().zip(&pairing).enumerate() {
            idx[odd - 1] = vals[slot];
            idx[even - 1] = vals[slot];
        }
        t.set(&idx, rational::one());
    }
    Ok(t)
}

/// Writes a rank-one 2×2 matrix `[[a,b],[c,d]]` as `x ⊗ y`, `x ∈ V`, `y ∈ V*`.
pub fn split_matrix_unit_form(v: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    if v.len() != 4 {
        return Err(Error::dim(format!("expected a 2x2 matrix, got {} coordinates", v.len())));
    }
    let Some(r) = (0..2).find(|&r| !v[2 * r].is_zero() || !v[2 * r + 1].is_zero()) else {
        return Err(Error::input("zero matrix has no outer-product form"));
    };
    let y = vec![v[2 * r].clone(), v[2 * r + 1].clone()];
    let j = if y[0].is_zero() { 1 } else { 0 };
    let x: Vec<Rational> = (0..2).map(|i| &v[2 * i + j] / &y[j]).collect();
    for i in 0..2 {
        for k in 0..2 {
            if &x[i] * &y[k] != v[2 * i + k] {
                return Err(Error::input("matrix has rank two"));
            }
        }
    }
    Ok((x, y))
}

/// Six-factor form of a three-factor decomposable tensor whose matrix factors
/// all have rank one.
pub fn rank1_to_six(t: &Rank1Tensor) -> Result<Rank1Tensor> {
    if t.shape().dims() != [4, 4, 4] {
        return Err(Error::dim(format!("expected [4, 4, 4], got {:?}", t.shape().dims())));
    }
    let mut factors = Vec::with_capacity(6);
    for f in t.factors() {
        let (x, y) = split_matrix_unit_form(f)?;
        factors.push(x);
        factors.push(y);
    }
    Rank1Tensor::new(factors)
}

/// Three-factor form of a six-factor decomposable tensor.
pub fn rank1_to_three(t: &Rank1Tensor) -> Result<Rank1Tensor> {
    if t.shape().dims() != [2; 6] {
        return Err(Error::dim(format!("expected [2; 6], got {:?}", t.shape().dims())));
    }
    let factors = t
        .factors()
        .chunks(2)
        .map(|pair| {
            let mut m = Vec::with_capacity(4);
            for a in &pair[0] {
                for b in &pair[1] {
                    m.push(a * b);
                }
            }
            m
        })
        .collect();
    Rank1Tensor::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn structure_tensor_counts() {
        let s = structure_tensor(2, 2, 2).unwrap();
        assert_eq!(s.nonzero_count(), 8);
        assert!(s.entries().iter().all(|x| x.is_zero() || *x == int(1)));
        let one = structure_tensor(1, 1, 1).unwrap();
        assert_eq!(one.entries(), &[int(1)]);
        let s3 = structure_tensor(3, 3, 3).unwrap();
        assert_eq!(s3.dims(), &[9, 9, 9]);
        assert_eq!(s3.nonzero_count(), 27);
        assert!(structure_tensor(0, 1, 1).is_err());
    }

    #[test]
    fn structure_tensor_positions() {
        // e_12 ⊗ e_23 ⊗ e_31 for (2,3,4), 0-based (0,1),(1,2),(2,0)
        let s = structure_tensor(2, 3, 4).unwrap();
        assert_eq!(s.dims(), &[6, 12, 8]);
        assert_eq!(s.get(&[1, 6, 4]), &int(1));
        assert_eq!(s.nonzero_count(), 24);
    }

    #[test]
    fn mu_reindexes_to_structure() {
        for (m, n, p) in [(2, 2, 2), (1, 1, 1), (2, 3, 4), (3, 1, 2)] {
            let mu = mu_structure_tensor(m, n, p).unwrap();
            assert_eq!(mu.nonzero_count(), m * n * p);
            assert_eq!(
                mu_to_structure_form(&mu, m, n, p).unwrap(),
                structure_tensor(m, n, p).unwrap()
            );
        }
    }

    #[test]
    fn delta_products() {
        // δ⊗δ⊗δ as the six-factor expansion of (e11+e22)^⊗3
        let delta = Rank1Tensor::new(vec![mat2(1, 0, 0, 1); 3]).unwrap();
        assert_eq!(
            delta_product([2, 4, 6]).unwrap(),
            reshape_3to6(&delta.expand()).unwrap()
        );
        assert_eq!(
            delta_product([6, 2, 4]).unwrap(),
            reshape_3to6(&structure_tensor(2, 2, 2).unwrap()).unwrap()
        );
        assert!(delta_product([2, 4, 4]).is_err());
        assert!(delta_product([1, 4, 6]).is_err());
    }

    #[test]
    fn delta_product_462_matches_printed_expansion() {
        // 1-based basis labels of the eight printed terms, V and V* alternating
        let printed: [[usize; 6]; 8] = [
            [1, 1, 1, 1, 1, 1],
            [1, 2, 1, 1, 2, 1],
            [1, 1, 2, 1, 1, 2],
            [1, 2, 2, 1, 2, 2],
            [2, 1, 1, 2, 1, 1],
            [2, 2, 1, 2, 2, 1],
            [2, 1, 2, 2, 1, 2],
            [2, 2, 2, 2, 2, 2],
        ];
        let mut expected = DenseTensor::zeros(FactorShape::new(vec![2; 6]).unwrap());
        for term in printed {
            let idx: Vec<usize> = term.iter().map(|x| x - 1).collect();
            expected.set(&idx, int(1));
        }
        assert_eq!(delta_product([4, 6, 2]).unwrap(), expected);
    }

    #[test]
    fn reshape_roundtrip_and_errors() {
        let s = structure_tensor(2, 2, 2).unwrap();
        assert_eq!(reshape_6to3(&reshape_3to6(&s).unwrap()).unwrap(), s);
        let z = DenseTensor::zeros(FactorShape::new(vec![4, 4, 4]).unwrap());
        assert!(reshape_3to6(&z).unwrap().is_zero());
        assert!(reshape_3to6(&structure_tensor(1, 2, 2).unwrap()).is_err());
    }

    #[test]
    fn reshape_of_first_strassen_term() {
        // e11 ⊗ (e12+e22) ⊗ (e21-e22)
        let s1 = Rank1Tensor::new(vec![mat2(1, 0, 0, 0), mat2(0, 1, 0, 1), mat2(0, 0, 1, -1)])
            .unwrap();
        // e1⊗e^1⊗(e1+e2)⊗e^2⊗e2⊗(e^1-e^2)
        let six = Rank1Tensor::from_i64(&[&[1, 0], &[1, 0], &[1, 1], &[0, 1], &[0, 1], &[1, -1]])
            .unwrap();
        assert_eq!(reshape_3to6(&s1.expand()).unwrap(), six.expand());
        assert_eq!(rank1_to_six(&s1).unwrap(), six);
        assert_eq!(rank1_to_three(&six).unwrap(), s1);
    }

    #[test]
    fn split_rejects_rank_two() {
        assert!(split_matrix_unit_form(&mat2(1, 0, 0, 1)).is_err());
        assert!(split_matrix_unit_form(&mat2(0, 0, 0, 0)).is_err());
        let (x, y) = split_matrix_unit_form(&mat2(0, 0, 2, -2)).unwrap();
        assert_eq!((x, y), (vec![int(0), int(1)], vec![int(2), int(-2)]));
    }
}
