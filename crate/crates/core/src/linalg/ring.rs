use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Exact scalar. Every ring stores its elements as rationals in a canonical
/// form: integers for `Integers`, residues in `[0, p)` for `PrimeField(p)`.
pub type Scalar = BigRational;

/// The coefficient ring of all modules and complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarRing {
    Integers,
    Rationals,
    PrimeField(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarRing {
    pub fn prime_field(p: u64) -> Result<Self, LinalgError> {
        if is_prime(p) {
            Ok(ScalarRing::PrimeField(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, ScalarRing::Integers)
    }

    pub fn zero(self) -> Scalar {
        Scalar::zero()
    }

    pub fn one(self) -> Scalar {
        Scalar::one()
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.reduce(Scalar::from_integer(BigInt::from(v)))
    }

    /// Canonical representative. Fails for a non-integer over `Integers`
    /// or a denominator divisible by `p` over `PrimeField(p)`.
    pub fn try_reduce(self, x: Scalar) -> Result<Scalar, LinalgError> {
        match self {
            ScalarRing::Rationals => Ok(x),
            ScalarRing::Integers => {
                if x.is_integer() {
                    Ok(x)
                } else {
                    Err(LinalgError::NotInRing(x.to_string(), self))
                }
            }
            ScalarRing::PrimeField(p) => {
                let p = BigInt::from(p);
                let den = x.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(LinalgError::NotInRing(x.to_string(), self));
                }
                let inv = mod_inverse(&den, &p);
                let v = (x.numer().mod_floor(&p) * inv).mod_floor(&p);
                Ok(Scalar::from_integer(v))
            }
        }
    }

    pub fn reduce(self, x: Scalar) -> Scalar {
        self.try_reduce(x).expect("scalar outside the ring")
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            ScalarRing::PrimeField(_) => self.reduce(a + b),
            _ => a + b,
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            ScalarRing::PrimeField(_) => self.reduce(a - b),
            _ => a - b,
        }
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            ScalarRing::PrimeField(_) => self.reduce(a * b),
            _ => a * b,
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match self {
            ScalarRing::PrimeField(_) => self.reduce(-a),
            _ => -a,
        }
    }

    pub fn is_unit(self, a: &Scalar) -> bool {
        match self {
            ScalarRing::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse of a unit.
    pub fn inverse(self, a: &Scalar) -> Scalar {
        assert!(self.is_unit(a), "inverse of a non-unit");
        match self {
            ScalarRing::Integers => a.clone(),
            ScalarRing::Rationals => a.recip(),
            ScalarRing::PrimeField(_) => self.reduce(a.recip()),
        }
    }

    /// Euclidean size used for pivot selection; 0 only for zero.
    pub fn norm(self, a: &Scalar) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else if self.is_field() {
            BigInt::one()
        } else {
            a.numer().abs()
        }
    }

    /// Euclidean division `a = q * b + r` with `norm(r) < norm(b)`.
    pub fn div_rem(self, a: &Scalar, b: &Scalar) -> (Scalar, Scalar) {
        assert!(!b.is_zero(), "division by zero");
        match self {
            ScalarRing::Integers => {
                let (q, r) = a.numer().div_mod_floor(b.numer());
                (Scalar::from_integer(q), Scalar::from_integer(r))
            }
            _ => (self.mul(a, &self.inverse(b)), Scalar::zero()),
        }
    }

    /// Unit `u` such that `u * a` is the canonical associate of `a`
    /// (positive over the integers, one over a field).
    pub fn normalizing_unit(self, a: &Scalar) -> Scalar {
        if a.is_zero() {
            return Scalar::one();
        }
        match self {
            ScalarRing::Integers => {
                if a.is_negative() {
                    -Scalar::one()
                } else {
                    Scalar::one()
                }
            }
            _ => self.inverse(a),
        }
    }

    pub fn divides(self, a: &Scalar, b: &Scalar) -> bool {
        if a.is_zero() {
            return b.is_zero();
        }
        self.div_rem(b, a).1.is_zero()
    }

    /// Symbol used when printing modules over this ring.
    pub fn symbol(self) -> String {
        match self {
            ScalarRing::Integers => "Z".to_string(),
            ScalarRing::Rationals => "Q".to_string(),
            ScalarRing::PrimeField(p) => format!("F_{p}"),
        }
    }
}

impl fmt::Display for ScalarRing {
    /// The header form used in sheaf files: `Z`, `Q` or `F p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarRing::Integers => write!(f, "Z"),
            ScalarRing::Rationals => write!(f, "Q"),
            ScalarRing::PrimeField(p) => write!(f, "F {p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}
