//! Dense univariate polynomials with integer coefficients in the variable `t`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients from the constant term up; never has a zero leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `den·t - num`, vanishing exactly at `r`.
    pub fn linear_root(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()]).normalized()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| acc.mul(inner).add(&Poly::constant(c.clone())))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of the value at a rational point.
    pub fn sign_at_rational(&self, x: &BigRational) -> i32 {
        sign_of(&self.eval(x))
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Poly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Divided by its content, keeping the sign.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.content();
        Poly { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Remainder of `lc(d)^m · self` by `d`, with the power `m` used.
    pub fn pseudo_rem(&self, d: &Poly) -> (Poly, u32) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.clone();
        let mut m = 0;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let c = r.leading();
            let shifted = Poly::new(
                std::iter::repeat_n(BigInt::zero(), dr - dd).chain(d.coeffs.iter().map(|x| x * &c)).collect(),
            );
            r = r.scale(&lc).sub(&shifted);
            m += 1;
        }
        (r, m)
    }

    /// Exact quotient over the rationals when `d` divides `self` in `ℤ[t]`
    /// after clearing contents; returns the primitive quotient.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem_rational(d);
        assert!(r.iter().all(Zero::is_zero), "exact division with remainder");
        rational_to_primitive(&q)
    }

    fn div_rem_rational(&self, d: &Poly) -> (Vec<BigRational>, Vec<BigRational>) {
        let to_q = |p: &Poly| -> Vec<BigRational> {
            p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let mut r = to_q(self);
        let dv = to_q(d);
        let dd = dv.len() - 1;
        if r.len() <= dd {
            return (Vec::new(), r);
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &dv[dd];
            for (j, dj) in dv.iter().enumerate() {
                r[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        r.truncate(dd);
        (q, r)
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).0.primitive();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Product of the distinct irreducible factors, normalized.
    pub fn square_free(&self) -> Poly {
        if self.is_constant() {
            return self.normalized();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).normalized()
    }

    /// Value range over `[lo, hi]` by interval Horner evaluation.
    pub fn eval_interval(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let mut acc = (BigRational::zero(), BigRational::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let min = prods.iter().min().unwrap().clone();
            let max = prods.iter().max().unwrap().clone();
            let c = BigRational::from_integer(c.clone());
            acc = (min + &c, max + &c);
        }
        acc
    }

    /// `1 + max |a_i / a_n|`; every real root lies strictly inside.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = BigRational::from_integer(self.leading().abs());
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| BigRational::from_integer(c.abs()) / &lc)
            .max()
            .unwrap_or_else(BigRational::zero);
        m + BigRational::one()
    }
}

fn rational_to_primitive(q: &[BigRational]) -> Poly {
    let l = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    Poly::new(q.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()).primitive()
}

/// Primitive integer polynomial proportional to rational coefficients.
pub(crate) fn from_rational_coeffs(q: &[BigRational]) -> Poly {
    rational_to_primitive(q)
}

pub(crate) fn sign_of(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for Poly {
    /// Highest degree first, e.g. `t^3 - 2*t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}
