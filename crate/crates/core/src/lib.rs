//! Exact tools for bilinear matrix multiplication algorithms: structure
//! tensors, the Strassen decomposition and its symmetry groups, flattening
//! bounds, and a recursive Strassen engine with operation counting.

pub mod algorithm;
pub mod engine;
pub mod error;
pub mod exact;
pub mod flattening;
pub mod segre;
pub mod tensor;

pub use algorithm::{
    execute_bilinear, extended_strassen, naive_algorithm, strassen_algorithm, BilinearAlgorithm,
    ExtendedAlgorithm,
};
pub use error::{Error, Result};
pub use exact::{ExactMatrix, Rational, Subspace};
pub use segre::{GroupClosure, SegreMap};
pub use tensor::{DenseTensor, FactorShape, Rank1Tensor};
