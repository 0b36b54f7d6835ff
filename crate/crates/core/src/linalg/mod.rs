//! Exact linear algebra over `Z`, `Q` and `F_p`.

mod complex;
mod matrix;
mod module;
mod ring;
mod snf;

pub use complex::{
    cone, cone_inclusion, cone_projection, exact_at, is_quasi_iso, les_exact, ChainMap,
    FreeChainComplex, LesDefect, TorAmplitude,
};
pub use matrix::Matrix;
pub use module::{FGModule, K0Class};
pub use ring::{Scalar, ScalarRing};
pub use snf::{invariant_factors, kernel, rank, snf, ColumnSpan, SmithForm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, ScalarRing),
    #[error("ring mismatch")]
    RingMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("d∘d is nonzero starting in degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with differentials in degree {0}")]
    NotAChainMap(i32),
}
