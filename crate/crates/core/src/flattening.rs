//! Quasiprojections, flattening ranks and line-configuration analysis.
//!
//! Factor indices are 0-based throughout this module.

use crate::algorithm::BilinearAlgorithm;
use crate::error::{Error, Result};
use crate::exact::{is_independent, ExactMatrix, Rational, Subspace};
use crate::tensor::{DenseTensor, FactorShape};

/// A span `L` of tensors and a set `U` of factor positions; the other
/// positions form `V`.
#[derive(Clone, Debug)]
pub struct QuasiprojectionQuery {
    shape: FactorShape,
    tensor_span: Vec<DenseTensor>,
    target_factors: Vec<usize>,
}

fn check_subset(shape: &FactorShape, factors: &[usize]) -> Result<Vec<usize>> {
    let k = shape.order();
    let mut sel = factors.to_vec();
    sel.sort_unstable();
    sel.dedup();
    if sel.len() != factors.len() || sel.iter().any(|&f| f >= k) {
        return Err(Error::input(format!("invalid factor subset {factors:?} for order {k}")));
    }
    if sel.is_empty() || sel.len() == k {
        return Err(Error::input(format!(
            "factor subset {factors:?} must be nonempty and proper"
        )));
    }
    Ok(sel)
}

impl QuasiprojectionQuery {
    pub fn new(shape: FactorShape, tensor_span: Vec<DenseTensor>, target_factors: &[usize]) -> Result<Self> {
        let target_factors = check_subset(&shape, target_factors)?;
        if let Some(t) = tensor_span.iter().find(|t| t.shape() != &shape) {
            return Err(Error::dim(format!(
                "tensor of shape {:?} in a span over {:?}",
                t.dims(),
                shape.dims()
            )));
        }
        Ok(Self {
            shape,
            tensor_span,
            target_factors,
        })
    }

    /// Query for the span of a single tensor.
    pub fn of(t: &DenseTensor, target_factors: &[usize]) -> Result<Self> {
        Self::new(t.shape().clone(), vec![t.clone()], target_factors)
    }

    pub fn shape(&self) -> &FactorShape {
        &self.shape
    }

    pub fn target_factors(&self) -> &[usize] {
        &self.target_factors
    }

    pub fn tensor_span(&self) -> &[DenseTensor] {
        &self.tensor_span
    }

    /// Dimension of the grouped factor space `U`.
    pub fn target_dim(&self) -> usize {
        self.target_factors.iter().map(|&f| self.shape.dims()[f]).product()
    }
}

/// The least subspace `X ⊆ U` with `L ⊆ X ⊗ V`: the span of the columns of
/// every unfolding with rows indexed by `U`.
pub fn quasiprojection(q: &QuasiprojectionQuery) -> Result<Subspace> {
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for t in &q.tensor_span {
        let m = t.unfold(&q.target_factors)?;
        for c in 0..m.cols() {
            let col = m.column(c);
            if col.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                columns.push(col);
            }
        }
    }
    Subspace::span(&columns, q.target_dim())
}

/// Rank of `t` unfolded with rows indexed by `factors`.
pub fn flattening_rank(t: &DenseTensor, factors: &[usize]) -> Result<usize> {
    check_subset(t.shape(), factors)?;
    Ok(t.unfold(factors)?.rank())
}

/// Whether every tensor of the query lies in `x ⊗ V`.
pub fn lies_in(q: &QuasiprojectionQuery, x: &Subspace) -> Result<bool> {
    for t in &q.tensor_span {
        let m = t.unfold(&q.target_factors)?;
        for c in 0..m.cols() {
            if !x.contains(&m.column(c))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The line spanned by each term's factor at position `factor`.
pub fn term_quasiprojection_profile(alg: &BilinearAlgorithm, factor: usize) -> Result<Vec<Subspace>> {
    if factor >= alg.shape().order() {
        return Err(Error::input(format!("factor {factor} out of range")));
    }
    alg.terms()
        .iter()
        .map(|t| Subspace::line(t.factor(factor)))
        .collect()
}

/// All index triples `i < j < k` whose lines are linearly dependent.
pub fn dependent_triples(lines: &[Subspace]) -> Result<Vec<[usize; 3]>> {
    let mut out = Vec::new();
    for [i, j, k] in combinations3(lines.len()) {
        let triple = [lines[i].clone(), lines[j].clone(), lines[k].clone()];
        if !is_independent(&triple)? {
            out.push([i, j, k]);
        }
    }
    Ok(out)
}

fn check_lines(lines: &[Subspace]) -> Result<usize> {
    let Some(first) = lines.first() else {
        return Err(Error::input("empty line configuration"));
    };
    let d = first.ambient_dim();
    if lines.iter().any(|l| l.ambient_dim() != d || !l.is_line()) {
        return Err(Error::input("expected lines in a common ambient space"));
    }
    Ok(d)
}

/// Linear constraints on the `d²` entries of `X` (row-major) expressing
/// `X v ∈ <v>` for each line `<v>`.
pub fn line_fixing_constraints(lines: &[Subspace]) -> Result<ExactMatrix> {
    let d = check_lines(lines)?;
    let mut rows = Vec::new();
    for l in lines {
        let v = &l.basis_vectors()[0];
        // (Xv)_a v_b - (Xv)_b v_a = 0
        for a in 0..d {
            for b in a + 1..d {
                let mut row = vec![Rational::default(); d * d];
                for c in 0..d {
                    row[a * d + c] += &v[c] * &v[b];
                    row[b * d + c] -= &v[c] * &v[a];
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return Ok(ExactMatrix::zeros(0, d * d));
    }
    ExactMatrix::from_rows(&rows)
}

/// Dimension of the space of `d×d` matrices mapping every line into itself.
pub fn line_fixing_dimension(lines: &[Subspace]) -> Result<usize> {
    let c = line_fixing_constraints(lines)?;
    Ok(c.cols() - c.rank())
}

/// Whether the lines split into two nonempty groups whose spans form a
/// direct sum equal to the span of all lines.
pub fn has_direct_sum_split(lines: &[Subspace]) -> Result<bool> {
    let d = check_lines(lines)?;
    let n = lines.len();
    if n < 2 {
        return Ok(false);
    }
    let span_of = |mask: u64| -> Result<usize> {
        let vs: Vec<Vec<Rational>> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| lines[i].basis_vectors()[0].clone())
            .collect();
        Ok(Subspace::span(&vs, d)?.dim())
    };
    if n > 20 {
        return Err(Error::input("too many lines for exhaustive bipartition"));
    }
    let all = (1u64 << n) - 1;
    let total = span_of(all)?;
    // Fix line 0 on the first side so each bipartition is seen once.
    for mask in (1..all).filter(|m| m & 1 == 1) {
        if span_of(mask)? + span_of(all ^ mask)? == total {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Quasiprojection dimension of `<t>` for every pair of factor positions.
pub fn pair_quasiprojection_dims(t: &DenseTensor) -> Result<Vec<([usize; 2], usize)>> {
    let k = t.shape().order();
    let mut out = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            out.push(([i, j], flattening_rank(t, &[i, j])?));
        }
    }
    Ok(out)
}

/// All `[i, j, k]` with `i < j < k < n`, in lexicographic order.
fn combinations3(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithm::{naive_algorithm, strassen_algorithm};
    use crate::exact::rational::int;
    use crate::tensor::matrix_space::mat2;
    use crate::tensor::{delta_product, reshape_3to6, structure_tensor};

    fn line(v: &[i64]) -> Subspace {
        Subspace::line(&v.iter().map(|&x| int(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn s7_first_factor() {
        let s7 = strassen_algorithm().terms()[6].expand();
        let x = quasiprojection(&QuasiprojectionQuery::of(&s7, &[0]).unwrap()).unwrap();
        assert_eq!(x, Subspace::line(&mat2(1, 0, 0, 1)).unwrap());
    }

    #[test]
    fn structure_tensor_flattenings() {
        let s = structure_tensor(2, 2, 2).unwrap();
        for f in 0..3 {
            assert_eq!(flattening_rank(&s, &[f]).unwrap(), 4);
        }
        let s3 = structure_tensor(3, 3, 3).unwrap();
        assert_eq!(flattening_rank(&s3, &[0]).unwrap(), 9);
        let s123 = structure_tensor(1, 2, 3).unwrap();
        assert_eq!(flattening_rank(&s123, &[0]).unwrap(), 2);
        assert_eq!(flattening_rank(&s123, &[1]).unwrap(), 6);
    }

    #[test]
    fn delta_pairs() {
        let d = delta_product([2, 4, 6]).unwrap();
        let dims = pair_quasiprojection_dims(&d).unwrap();
        for ([i, j], dim) in dims {
            let expected = if [[0, 1], [2, 3], [4, 5]].contains(&[i, j]) { 1 } else { 4 };
            assert_eq!(dim, expected, "pair {i},{j}");
        }
        let s6 = reshape_3to6(&structure_tensor(2, 2, 2).unwrap()).unwrap();
        assert_eq!(s6, delta_product([6, 2, 4]).unwrap());
    }

    #[test]
    fn empty_span_is_zero() {
        let shape = FactorShape::new(vec![2, 3]).unwrap();
        let q = QuasiprojectionQuery::new(shape, vec![], &[1]).unwrap();
        assert_eq!(quasiprojection(&q).unwrap(), Subspace::zero(3));
    }

    #[test]
    fn improper_subsets_rejected() {
        let s = structure_tensor(2, 2, 2).unwrap();
        assert!(flattening_rank(&s, &[]).is_err());
        assert!(flattening_rank(&s, &[0, 1, 2]).is_err());
        assert!(flattening_rank(&s, &[3]).is_err());
    }

    #[test]
    fn naive_profile() {
        let p = term_quasiprojection_profile(&naive_algorithm(2, 2, 2).unwrap(), 0).unwrap();
        assert_eq!(p.len(), 8);
        let units: Vec<Subspace> = (0..4)
            .map(|i| {
                let mut v = vec![0; 4];
                v[i] = 1;
                line(&v)
            })
            .collect();
        assert!(p.iter().all(|l| units.contains(l)));
    }

    #[test]
    fn small_dependency_cases() {
        let coords = [line(&[1, 0, 0]), line(&[0, 1, 0]), line(&[0, 0, 1])];
        assert!(dependent_triples(&coords).unwrap().is_empty());
        let planar = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])];
        assert_eq!(dependent_triples(&planar).unwrap(), vec![[0, 1, 2]]);
    }

    #[test]
    fn fixing_dimension_and_split() {
        let coords = [line(&[1, 0]), line(&[0, 1])];
        // diagonal matrices
        assert_eq!(line_fixing_dimension(&coords).unwrap(), 2);
        assert!(has_direct_sum_split(&coords).unwrap());
        let planar = [line(&[1, 0]), line(&[0, 1]), line(&[1, 1])];
        assert_eq!(line_fixing_dimension(&planar).unwrap(), 1);
        assert!(!has_direct_sum_split(&planar).unwrap());
    }
}
