//! Fibonacci-sum graphs `G_n`: vertices `1..=n`, edges between distinct
//! vertices whose sum is a Fibonacci number.
//!
//! Every structural result here comes in two forms: a closed form or direct
//! construction, and an independent brute-force check it can be compared
//! against.

pub mod automorphism;
pub mod bipartition;
pub mod cycles;
pub mod decomposition;
pub mod error;
pub mod explicit;
pub mod export;
pub mod fibcore;
pub mod graph;
pub mod hamilton;

pub use error::{Error, Result};
pub use explicit::{Adjacency, ExplicitGraph};
pub use graph::FibSumGraph;
