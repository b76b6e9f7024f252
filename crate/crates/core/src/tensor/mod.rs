//! Dense and decomposable tensors over explicit factor shapes.

pub mod dense;
pub mod matrix_space;
pub mod predicates;
pub mod rank1;

pub use dense::{DenseTensor, FactorShape, TensorJson};
pub use matrix_space::{
    delta_product, mu_structure_tensor, mu_to_structure_form, rank1_to_six, rank1_to_three,
    reshape_3to6, reshape_6to3, structure_tensor,
};
pub use predicates::{are_adjacent, is_regular_element, pairing};
pub use rank1::Rank1Tensor;
