//! The real spectrum of `ℚ[t]`: exact real algebraic numbers, sign
//! conditions, constructible sets in cell form and Euler calculus along
//! polynomial maps.

mod algebraic;
mod cells;
mod formula;
mod point;
mod poly;
mod push;

pub use algebraic::{real_roots, AlgNumber, SturmSequence};
pub use cells::{cell_poset, separate, CellMap, LineFunction, SperConstructible};
pub use formula::{from_formula, Formula, Relation};
pub use point::{sign_at, PolyMap, SperPoint};
pub use poly::Poly;
pub use push::{line_euler, preimage_formula, preimage_set, pull_cons, pullback_cells, push_cons};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SperError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("polynomial map is constant")]
    ConstantMap,
    #[error("samples disagree inside a cell: {0}")]
    InconsistentSamples(String),
}

#[cfg(test)]
mod tests;
