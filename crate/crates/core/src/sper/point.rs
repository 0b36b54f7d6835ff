//! Points of the real spectrum of `ℚ[t]` and polynomial maps of the line.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::algebraic::{real_roots, AlgNumber};
use crate::linalg::{Matrix, ScalarRing};

use super::poly::{from_rational_coeffs, Poly};
use super::SperError;

/// A real algebraic point, a cut infinitesimally left or right of one, or
/// one of the two infinite orderings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SperPoint {
    Alg(AlgNumber),
    CutMinus(AlgNumber),
    CutPlus(AlgNumber),
    NegInf,
    PosInf,
}

impl SperPoint {
    pub fn rational(r: &BigRational) -> Self {
        SperPoint::Alg(AlgNumber::from_rational(r))
    }

    /// `self ⤳ other`: `other` lies in the closure of `self`.
    pub fn specializes_to(&self, other: &SperPoint) -> bool {
        match (self, other) {
            (a, b) if a == b => true,
            (SperPoint::CutMinus(a) | SperPoint::CutPlus(a), SperPoint::Alg(b)) => a == b,
            _ => false,
        }
    }

    pub fn is_closed_point(&self) -> bool {
        !matches!(self, SperPoint::CutMinus(_) | SperPoint::CutPlus(_))
    }
}

impl fmt::Display for SperPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SperPoint::Alg(a) => write!(f, "{a}"),
            SperPoint::CutMinus(a) => write!(f, "{a}-"),
            SperPoint::CutPlus(a) => write!(f, "{a}+"),
            SperPoint::NegInf => write!(f, "-inf"),
            SperPoint::PosInf => write!(f, "+inf"),
        }
    }
}

/// Order of the first derivative of `f` not vanishing at `a`, and its sign.
fn first_nonvanishing(f: &Poly, a: &AlgNumber) -> (u32, i32) {
    let mut d = f.clone();
    let mut k = 0;
    loop {
        let s = a.sign_of(&d);
        if s != 0 || d.is_constant() {
            return (k, s);
        }
        d = d.derivative();
        k += 1;
    }
}

/// Sign of `f` in the ordering `x`.
pub fn sign_at(f: &Poly, x: &SperPoint) -> i32 {
    if f.is_zero() {
        return 0;
    }
    let lead = if f.leading().is_positive() { 1 } else { -1 };
    match x {
        SperPoint::Alg(a) => a.sign_of(f),
        SperPoint::CutPlus(a) => first_nonvanishing(f, a).1,
        SperPoint::CutMinus(a) => {
            let (k, s) = first_nonvanishing(f, a);
            if k % 2 == 0 {
                s
            } else {
                -s
            }
        }
        SperPoint::PosInf => lead,
        SperPoint::NegInf => {
            if f.degree().unwrap_or(0).is_multiple_of(2) {
                lead
            } else {
                -lead
            }
        }
    }
}

/// A nonconstant polynomial map of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMap {
    p: Poly,
}

impl PolyMap {
    pub fn new(p: Poly) -> Result<Self, SperError> {
        if p.is_constant() {
            return Err(SperError::ConstantMap);
        }
        Ok(PolyMap { p })
    }

    pub fn poly(&self) -> &Poly {
        &self.p
    }

    /// `Alg(p(a))`.
    pub fn image_of(&self, a: &AlgNumber) -> AlgNumber {
        if let Some(r) = a.as_rational() {
            return AlgNumber::from_rational(&self.p.eval(&r));
        }
        let h = image_poly(&self.p, a.poly());
        let mut candidates = real_roots(&h).expect("characteristic polynomial is nonzero");
        let mut a = a.clone();
        loop {
            let (lo, hi) = self.p.eval_interval(a.lo(), a.hi());
            candidates.retain(|b| b.hi() > &lo && b.lo() < &hi);
            if candidates.len() == 1 {
                return candidates.pop().unwrap();
            }
            a = a.refine();
            candidates = candidates.iter().map(AlgNumber::refine).collect();
        }
    }

    /// Whether `p(x) = b`, given that `p(x)` is a root of `b`'s polynomial.
    pub(crate) fn maps_onto(&self, x: &AlgNumber, b: &AlgNumber) -> bool {
        let mut x = x.clone();
        loop {
            let (lo, hi) = self.p.eval_interval(x.lo(), x.hi());
            if &lo > b.lo() && &hi < b.hi() {
                return true;
            }
            if &hi <= b.lo() || &lo >= b.hi() {
                return false;
            }
            x = x.refine();
        }
    }

    pub fn push_point(&self, x: &SperPoint) -> SperPoint {
        let lead = self.p.leading().is_positive();
        match x {
            SperPoint::Alg(a) => SperPoint::Alg(self.image_of(a)),
            SperPoint::CutPlus(a) | SperPoint::CutMinus(a) => {
                let b = self.image_of(a);
                // Sign of p(t) - p(a) beside a, from the first nonvanishing
                // derivative p^(k)(a), k >= 1.
                let (j, s) = first_nonvanishing(&self.p.derivative(), a);
                let left = matches!(x, SperPoint::CutMinus(_));
                let s = if left && j % 2 == 0 { -s } else { s };
                if s > 0 {
                    SperPoint::CutPlus(b)
                } else {
                    SperPoint::CutMinus(b)
                }
            }
            SperPoint::PosInf => {
                if lead {
                    SperPoint::PosInf
                } else {
                    SperPoint::NegInf
                }
            }
            SperPoint::NegInf => {
                let even = self.p.degree().unwrap_or(0).is_multiple_of(2);
                if lead == even {
                    SperPoint::PosInf
                } else {
                    SperPoint::NegInf
                }
            }
        }
    }
}

/// Square-free polynomial vanishing at `p(α)` for every root `α` of `q`:
/// the characteristic polynomial of `p` evaluated at the companion matrix.
fn image_poly(p: &Poly, q: &Poly) -> Poly {
    let ring = ScalarRing::Rationals;
    let d = q.degree().expect("nonzero");
    let lc = BigRational::from_integer(q.leading());
    let c = Matrix::from_fn(ring, d, d, |i, j| {
        if j == d - 1 {
            -BigRational::from_integer(q.coeff(i)) / &lc
        } else if i == j + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let mut m = Matrix::zeros(ring, d, d);
    for coeff in p.coeffs().iter().rev() {
        m = m.mul(&c).add(&Matrix::identity(ring, d).scale(&BigRational::from_integer(coeff.clone())));
    }
    from_rational_coeffs(&charpoly(&m)).square_free()
}

/// Faddeev–LeVerrier; coefficients from the constant term up.
fn charpoly(a: &Matrix) -> Vec<BigRational> {
    let ring = ScalarRing::Rationals;
    let n = a.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut m = Matrix::zeros(ring, n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&Matrix::identity(ring, n).scale(&coeffs[n - k + 1]));
        let am = a.mul(&m);
        let tr = (0..n).fold(BigRational::zero(), |t, i| t + &am[(i, i)]);
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    coeffs
}
