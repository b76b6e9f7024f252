//! Explicit generators of the symmetry groups of the Strassen algorithm and
//! of its extended form.

use super::map::SegreMap;
use crate::exact::{rational, ExactMatrix};
use crate::tensor::FactorShape;

pub const AUT_S_NAMES: [&str; 4] = ["A1", "A2", "B1", "B2"];
pub const AUT_EXTENDED_NAMES: [&str; 4] = ["~A2", "~A3", "~B1", "~B2"];

fn m2(a: i64, b: i64, c: i64, d: i64) -> ExactMatrix {
    ExactMatrix::from_i64(2, 2, &[a, b, c, d]).expect("2x2")
}

pub fn t1() -> ExactMatrix {
    m2(0, -1, 1, -1)
}

pub fn t2() -> ExactMatrix {
    m2(0, 1, 1, 0)
}

/// `[[a,b],[c,d]] ↦ [[d,-b],[-c,a]]` on row-major coordinates.
pub fn rho() -> ExactMatrix {
    ExactMatrix::from_i64(4, 4, &[0, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0])
        .expect("4x4")
}

/// `x ↦ T x T⁻¹` on row-major coordinates of 2×2 matrices.
pub fn conjugation(t: &ExactMatrix) -> ExactMatrix {
    t.kron(&t.inverse().expect("invertible").transpose())
}

/// `V → V*`, `e_1 ↦ e^2`, `e_2 ↦ -e^1`.
pub fn phi() -> ExactMatrix {
    m2(0, -1, 1, 0)
}

/// `V* → V`, `e^1 ↦ e_2`, `e^2 ↦ -e_1`.
pub fn psi() -> ExactMatrix {
    m2(0, -1, 1, 0)
}

/// The contragredient `T* = (T⁻¹)ᵀ` acting on `V*`.
pub fn dual(t: &ExactMatrix) -> ExactMatrix {
    t.inverse().expect("invertible").transpose()
}

fn three() -> FactorShape {
    FactorShape::new(vec![4; 3]).expect("valid")
}

fn six() -> FactorShape {
    FactorShape::new(vec![2; 6]).expect("valid")
}

/// `A1(x⊗y⊗z) = y⊗z⊗x`.
pub fn a1() -> SegreMap {
    SegreMap::new(three(), vec![2, 0, 1], vec![ExactMatrix::identity(4); 3]).expect("valid")
}

/// `A2(x⊗y⊗z) = ρ(x)⊗ρ(z)⊗ρ(y)`.
pub fn a2() -> SegreMap {
    SegreMap::new(three(), vec![0, 2, 1], vec![rho(); 3]).expect("valid")
}

fn b_from(t: &ExactMatrix) -> SegreMap {
    SegreMap::new(three(), vec![0, 1, 2], vec![conjugation(t); 3]).expect("valid")
}

pub fn b1() -> SegreMap {
    b_from(&t1())
}

pub fn b2() -> SegreMap {
    b_from(&t2())
}

/// `[A1, A2, B1, B2]` on `M2⊗M2⊗M2`.
pub fn generators_aut_s() -> Vec<SegreMap> {
    vec![a1(), a2(), b1(), b2()]
}

/// `x1⊗y1⊗x2⊗y2⊗x3⊗y3 ↦ ψy1⊗φx1⊗ψy3⊗φx3⊗ψy2⊗φx2`.
pub fn a2_tilde() -> SegreMap {
    let maps = (0..6).map(|i| if i % 2 == 0 { phi() } else { psi() }).collect();
    SegreMap::new(six(), vec![1, 0, 5, 4, 3, 2], maps).expect("valid")
}

/// `x1⊗y1⊗x2⊗y2⊗x3⊗y3 ↦ -x1⊗y3⊗x3⊗y2⊗x2⊗y1`, the sign carried by the first
/// factor map.
pub fn a3_tilde() -> SegreMap {
    let mut maps = vec![ExactMatrix::identity(2); 6];
    maps[0] = maps[0].scale(&rational::int(-1));
    SegreMap::new(six(), vec![0, 5, 4, 3, 2, 1], maps).expect("valid")
}

fn b_tilde_from(t: &ExactMatrix) -> SegreMap {
    let maps = (0..6).map(|i| if i % 2 == 0 { t.clone() } else { dual(t) }).collect();
    SegreMap::new(six(), (0..6).collect(), maps).expect("valid")
}

pub fn b1_tilde() -> SegreMap {
    b_tilde_from(&t1())
}

pub fn b2_tilde() -> SegreMap {
    b_tilde_from(&t2())
}

/// `[Ã2, Ã3, B̃1, B̃2]` on `V⊗V*⊗V⊗V*⊗V⊗V*`.
pub fn generators_aut_extended() -> Vec<SegreMap> {
    vec![a2_tilde(), a3_tilde(), b1_tilde(), b2_tilde()]
}
