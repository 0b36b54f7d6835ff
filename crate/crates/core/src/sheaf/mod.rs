//! Bounded complexes of constructible sheaves on finite spectral spaces.
//!
//! A sheaf on a finite poset is a covariant diagram: stalks at the points
//! and generization maps `F_x → F_y` for `x ≤ y`. Derived functors are
//! computed with the cochain complex of the nerve, which is the Hom out of
//! the bar resolution by the cell projectives `j_!Λ_{↑x}`.

mod base_change;
mod cells;
mod complex;
mod dual;
mod functors;
mod nerve;
mod triangle;


pub use base_change::{base_change_compare, base_change_locus, BaseChange, BaseChangeLocus, CartesianSquare};
pub use cells::{cell_decompose, CellDecomposition};
pub use complex::{SheafComplex, SheafMap};
pub use dual::{is_dualizable, Dualizability};
pub use functors::{
    derived_hom, derived_hom_in, derived_tensor, derived_tensor_in, i_star, i_upper_shriek, j_shriek,
    pullback, pushforward, pushforward_comparison, rgamma, rgamma_on, unit_map,
};
pub use triangle::{localization_triangle, LocalizationTriangle, Triangle, TriangleDefect};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::space::SpaceError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheafError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("generization maps along {lower}<{upper} depend on the path")]
    PathIndependenceViolation { lower: String, upper: String },
    #[error("generization map {lower}<{upper} is not a chain map: {source}")]
    NotAChainMap { lower: String, upper: String, source: LinalgError },
    #[error("`{0}<{1}` is not a cover relation")]
    NotACover(String, String),
    #[error("stalk at `{point}` is invalid: {source}")]
    BadStalk { point: String, source: LinalgError },
    #[error("map component at `{point}` is invalid: {source}")]
    BadComponent { point: String, source: LinalgError },
    #[error("map is not natural along {lower}<{upper}")]
    NotNatural { lower: String, upper: String },
    #[error("expected {expected} stalks, got {actual}")]
    StalkCount { expected: usize, actual: usize },
    #[error("subset is not open")]
    NotOpen,
    #[error("subset is not closed")]
    NotClosed,
    #[error("complexes live on different spaces")]
    SpaceMismatch,
    #[error("complexes have different coefficient rings")]
    RingMismatch,
    #[error("degrees [{lo}, {hi}] leave the window [{}, {}]", window.lo, window.hi)]
    DegreeOverflow { lo: i32, hi: i32, window: DegreeWindow },
    #[error("square is not Cartesian")]
    NotCartesian,
}

/// Degrees that derived operations may produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeWindow {
    pub lo: i32,
    pub hi: i32,
}

impl Default for DegreeWindow {
    fn default() -> Self {
        DegreeWindow { lo: -16, hi: 16 }
    }
}

impl DegreeWindow {
    pub fn check(&self, k: &SheafComplex) -> Result<(), SheafError> {
        match k.degree_range() {
            Some((lo, hi)) if lo < self.lo || hi > self.hi => {
                Err(SheafError::DegreeOverflow { lo, hi, window: *self })
            }
            _ => Ok(()),
        }
    }
}
