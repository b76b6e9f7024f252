//! Pairing, regularity and adjacency of decomposable tensors.

use std::collections::HashSet;

use num_traits::Zero;

use super::rank1::{normalize_line, Rank1Tensor};
use crate::error::{Error, Result};
use crate::exact::rational::{self, Rational};

/// `(x, y) = Σ x_i y_i` between `V` and `V*` in dual coordinates.
pub fn pairing(x: &[Rational], y: &[Rational]) -> Result<Rational> {
    if x.len() != y.len() {
        return Err(Error::dim(format!("pairing lengths {} and {}", x.len(), y.len())));
    }
    Ok(x.iter()
        .zip(y)
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

fn line_set(vectors: &[&[i64]]) -> HashSet<Vec<Rational>> {
    vectors
        .iter()
        .map(|v| normalize_line(&v.iter().map(|&x| rational::int(x)).collect::<Vec<_>>()))
        .collect()
}

/// Whether a six-factor decomposable tensor `x1⊗…⊗x6` satisfies
///
/// 1. `{<x1>,<x3>,<x5>} = {<e1>,<e2>,<e1+e2>}` and
///    `{<x2>,<x4>,<x6>} = {<e^1>,<e^2>,<e^1-e^2>}`;
/// 2. `(x1,x4) = (x3,x6) = (x5,x2) = 0`;
/// 3. `(x1,x2)(x3,x4)(x5,x6) = -1`.
pub fn is_regular_element(t: &Rank1Tensor) -> Result<bool> {
    if t.shape().dims() != [2; 6] {
        return Err(Error::dim(format!(
            "regularity needs shape [2; 6], got {:?}",
            t.shape().dims()
        )));
    }
    let x = t.factors();
    let lines = t.factor_lines();
    let primal: HashSet<Vec<Rational>> = [0, 2, 4].iter().map(|&i| lines[i].clone()).collect();
    let dual: HashSet<Vec<Rational>> = [1, 3, 5].iter().map(|&i| lines[i].clone()).collect();
    if primal != line_set(&[&[1, 0], &[0, 1], &[1, 1]])
        || dual != line_set(&[&[1, 0], &[0, 1], &[1, -1]])
    {
        return Ok(false);
    }
    for (a, b) in [(0, 3), (2, 5), (4, 1)] {
        if !pairing(&x[a], &x[b])?.is_zero() {
            return Ok(false);
        }
    }
    let product = pairing(&x[0], &x[1])? * pairing(&x[2], &x[3])? * pairing(&x[4], &x[5])?;
    Ok(rational::is_negative_one(&product))
}

/// Whether `u` and `v` span different lines and their factor lines differ in
/// exactly one position.
pub fn are_adjacent(u: &Rank1Tensor, v: &Rank1Tensor) -> Result<bool> {
    if u.shape() != v.shape() {
        return Err(Error::dim(format!(
            "shapes {:?} and {:?}",
            u.shape().dims(),
            v.shape().dims()
        )));
    }
    let (lu, lv) = (u.factor_lines(), v.factor_lines());
    let differing = lu.iter().zip(&lv).filter(|(a, b)| a != b).count();
    // Equal factor lines everywhere means proportional tensors.
    Ok(differing == 1)
}
