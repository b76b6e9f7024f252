//! Bilinear algorithms: finite sequences of decomposable tensors meant to sum
//! to a structure tensor.

pub mod io;

use crate::engine::matrix::{OperationCounter, RingMatrix};
use crate::engine::multiply::execute_entrywise;
use crate::engine::Ring;
use crate::error::{Error, Result};
use crate::tensor::matrix_space::{mat2, rank1_to_six, reshape_3to6, unit};
use crate::tensor::{structure_tensor, DenseTensor, FactorShape, Rank1Tensor};

pub use io::{from_json_str, load, save, to_json_string};

/// Rank-one terms in `M_{m×n} ⊗ M_{n×p} ⊗ M_{p×m}` together with the target
/// `S(m,n,p)` they are supposed to sum to.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearAlgorithm {
    mnp: (usize, usize, usize),
    shape: FactorShape,
    terms: Vec<Rank1Tensor>,
    target: DenseTensor,
}

impl BilinearAlgorithm {
    /// Checks shapes only; the terms need not sum to the target.
    pub fn new(mnp: (usize, usize, usize), terms: Vec<Rank1Tensor>) -> Result<Self> {
        let (m, n, p) = mnp;
        let target = structure_tensor(m, n, p)?;
        let shape = target.shape().clone();
        if let Some(i) = terms.iter().position(|t| t.shape() != &shape) {
            return Err(Error::Validation(format!(
                "term {i} has shape {:?}, expected {:?}",
                terms[i].shape().dims(),
                shape.dims()
            )));
        }
        Ok(Self {
            mnp,
            shape,
            terms,
            target,
        })
    }

    pub fn mnp(&self) -> (usize, usize, usize) {
        self.mnp
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn terms(&self) -> &[Rank1Tensor] {
        &self.terms
    }

    pub fn target(&self) -> &DenseTensor {
        &self.target
    }

    pub fn term_sum(&self) -> DenseTensor {
        self.terms
            .iter()
            .fold(DenseTensor::zeros(self.shape.clone()), |acc, t| {
                acc.add(&t.expand()).expect("shapes checked at construction")
            })
    }

    /// Exact check that the terms sum to the target.
    pub fn verify(&self) -> bool {
        self.term_sum() == self.target
    }

    /// Dense expansions of the terms, sorted, for multiset comparison.
    pub fn term_multiset(&self) -> Vec<DenseTensor> {
        sorted_multiset(self.terms.iter().map(Rank1Tensor::expand).collect())
    }

    pub fn same_terms_as(&self, other: &Self) -> bool {
        self.shape == other.shape && self.term_multiset() == other.term_multiset()
    }
}

pub(crate) fn sorted_multiset(mut xs: Vec<DenseTensor>) -> Vec<DenseTensor> {
    xs.sort_by(|a, b| a.entries().cmp(b.entries()));
    xs
}

/// Computes `AB = Σ (A,u_i)(B,v_i) w_iᵀ` over any ring, using exactly one ring
/// multiplication per term. Fails on mismatched sizes or an algorithm that
/// does not verify.
pub fn execute_bilinear<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
) -> Result<RingMatrix<R>> {
    execute_entrywise(alg, a, b, &mut OperationCounter::new())
}

/// As [`execute_bilinear`], also reporting operation counts.
pub fn execute_bilinear_counted<R: Ring>(
    alg: &BilinearAlgorithm,
    a: &RingMatrix<R>,
    b: &RingMatrix<R>,
    counter: &mut OperationCounter,
) -> Result<RingMatrix<R>> {
    execute_entrywise(alg, a, b, counter)
}

/// The seven Strassen terms `s1..s7`:
///
/// ```text
/// s1 = e11 ⊗ (e12+e22) ⊗ (e21-e22)      s2 = (-e11+e12) ⊗ e22 ⊗ (e11+e21)
/// s3 = (e21-e22) ⊗ e11 ⊗ (e12+e22)      s4 = e22 ⊗ (e11+e21) ⊗ (-e11+e12)
/// s5 = (e11+e21) ⊗ (-e11+e12) ⊗ e22     s6 = (e12+e22) ⊗ (e21-e22) ⊗ e11
/// s7 = δ ⊗ δ ⊗ δ,  δ = e11+e22
/// ```
pub fn strassen_terms() -> Vec<Rank1Tensor> {
    let e11 = mat2(1, 0, 0, 0);
    let e22 = mat2(0, 0, 0, 1);
    let e12_e22 = mat2(0, 1, 0, 1);
    let e21_e22 = mat2(0, 0, 1, -1);
    let e11_e21 = mat2(1, 0, 1, 0);
    let m_e11_e12 = mat2(-1, 1, 0, 0);
    let delta = mat2(1, 0, 0, 1);
    [
        [e11.clone(), e12_e22.clone(), e21_e22.clone()],
        [m_e11_e12.clone(), e22.clone(), e11_e21.clone()],
        [e21_e22.clone(), e11.clone(), e12_e22.clone()],
        [e22.clone(), e11_e21.clone(), m_e11_e12.clone()],
        [e11_e21, m_e11_e12, e22],
        [e12_e22, e21_e22, e11],
        [delta.clone(), delta.clone(), delta],
    ]
    .into_iter()
    .map(|f| Rank1Tensor::new(f.to_vec()).expect("nonzero factors"))
    .collect()
}

pub fn strassen_algorithm() -> BilinearAlgorithm {
    BilinearAlgorithm::new((2, 2, 2), strassen_terms()).expect("well-formed constant")
}

/// One term `e_ij ⊗ e_jk ⊗ e_ki` per index triple.
pub fn naive_algorithm(m: usize, n: usize, p: usize) -> Result<BilinearAlgorithm> {
    if m == 0 || n == 0 || p == 0 {
        return Err(Error::input(format!("matrix format ({m},{n},{p}) has a zero side")));
    }
    let mut terms = Vec::with_capacity(m * n * p);
    for i in 0..m {
        for j in 0..n {
            for k in 0..p {
                terms.push(Rank1Tensor::new(vec![
                    unit(m, n, i, j),
                    unit(n, p, j, k),
                    unit(p, m, k, i),
                ])?);
            }
        }
    }
    BilinearAlgorithm::new((m, n, p), terms)
}

/// Members in the six-factor space `V⊗V*⊗V⊗V*⊗V⊗V*` whose sum is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtendedAlgorithm {
    shape: FactorShape,
    members: Vec<DenseTensor>,
}

impl ExtendedAlgorithm {
    pub fn new(members: Vec<DenseTensor>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::Validation("no members".into()));
        };
        let shape = first.shape().clone();
        if members.iter().any(|m| m.shape() != &shape) {
            return Err(Error::Validation("members have different shapes".into()));
        }
        Ok(Self { shape, members })
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn members(&self) -> &[DenseTensor] {
        &self.members
    }

    pub fn member_sum(&self) -> DenseTensor {
        self.members
            .iter()
            .fold(DenseTensor::zeros(self.shape.clone()), |acc, m| {
                acc.add(m).expect("shapes checked at construction")
            })
    }

    pub fn sums_to_zero(&self) -> bool {
        self.member_sum().is_zero()
    }
}

/// The six regular Strassen terms `s1..s6` in six-factor form.
pub fn regular_terms_six() -> Vec<Rank1Tensor> {
    strassen_terms()[..6]
        .iter()
        .map(|t| rank1_to_six(t).expect("regular terms have rank-one matrix factors"))
        .collect()
}

/// `{-S(2,2,2), δ⊗δ⊗δ} ∪ {s1..s6}` in six-factor form, in that order.
pub fn extended_strassen() -> ExtendedAlgorithm {
    let s = structure_tensor(2, 2, 2).expect("valid format");
    let terms = strassen_terms();
    let mut members = vec![
        reshape_3to6(&s).expect("shape [4,4,4]").neg(),
        reshape_3to6(&terms[6].expand()).expect("shape [4,4,4]"),
    ];
    members.extend(regular_terms_six().iter().map(Rank1Tensor::expand));
    ExtendedAlgorithm::new(members).expect("common shape")
}
