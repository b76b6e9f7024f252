//! Recursive Strassen multiplication over generic rings with exact operation
//! counting.

pub mod bench;
pub mod matrix;
pub mod multiply;
pub mod ring;

pub use bench::{bench, BenchConfig, BenchReport, BenchRow, Method, RingKind};
pub use matrix::{OperationCounter, RingMatrix};
pub use multiply::{
    algorithm_multiply, algorithm_multiply_recursive, naive_multiply, strassen_multiply,
    strassen_multiply_parallel, strassen_op_counts,
};
pub use ring::Ring;
