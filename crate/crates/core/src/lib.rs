//! Constructible complexes of sheaves on finite spectral spaces, their
//! local Euler-Poincaré indices, and an exact model of the real spectrum
//! of the affine line over `Q`.

pub mod k0;
pub mod linalg;
pub mod random;
pub mod sheaf;
pub mod space;
pub mod sper;
