//! Sturm sequences, real root isolation and real algebraic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{sign_of, Poly};
use super::SperError;

/// Signed remainder sequence `f, f', -rem(f, f'), ...`, kept primitive.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    seq: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(f: &Poly) -> Self {
        assert!(!f.is_zero(), "Sturm sequence of the zero polynomial");
        let mut seq = vec![f.primitive()];
        let d = f.derivative().primitive();
        if !d.is_zero() {
            seq.push(d);
        }
        while seq.len() >= 2 {
            let (a, b) = (&seq[seq.len() - 2], &seq[seq.len() - 1]);
            let (r, m) = a.pseudo_rem(b);
            if r.is_zero() {
                break;
            }
            // rem = r / lc(b)^m, so -rem has the sign of -sign(lc)^m · r.
            let flip = !(b.leading().is_negative() && m % 2 == 1);
            let next = if flip { r.neg() } else { r };
            seq.push(next.primitive());
        }
        SturmSequence { seq }
    }

    fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    pub fn variations(&self, x: &BigRational) -> usize {
        Self::count_changes(self.seq.iter().map(|p| p.sign_at_rational(x)))
    }

    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::count_changes(self.seq.iter().map(|p| {
            let s = sign_of(&BigRational::from_integer(p.leading()));
            if positive || p.degree().unwrap_or(0) % 2 == 0 {
                s
            } else {
                -s
            }
        }))
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }

    /// Distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false).saturating_sub(self.variations_at_infinity(true))
    }
}

/// A real root of a square-free primitive polynomial, isolated by an open
/// rational interval whose endpoints are not roots.
#[derive(Clone, Debug)]
pub struct AlgNumber {
    poly: Poly,
    lo: BigRational,
    hi: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl AlgNumber {
    pub fn from_rational(r: &BigRational) -> Self {
        AlgNumber {
            poly: Poly::linear_root(r),
            lo: r - BigRational::one(),
            hi: r + BigRational::one(),
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    /// Checks every invariant.
    pub fn new(poly: Poly, lo: BigRational, hi: BigRational) -> Option<Self> {
        let poly = poly.normalized();
        if poly.is_constant() || lo >= hi || poly.square_free() != poly {
            return None;
        }
        if poly.eval(&lo).is_zero() || poly.eval(&hi).is_zero() {
            return None;
        }
        if SturmSequence::new(&poly).count(&lo, &hi) != 1 {
            return None;
        }
        Some(AlgNumber { poly, lo, hi })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.poly.degree() == Some(1))
            .then(|| BigRational::new(-self.poly.coeff(0), self.poly.coeff(1)))
    }

    /// Halves the isolating interval.
    pub fn refine(&self) -> AlgNumber {
        if let Some(r) = self.as_rational() {
            let w = self.width() * half() * half();
            return AlgNumber { poly: self.poly.clone(), lo: &r - &w, hi: &r + &w };
        }
        let mid = (&self.lo + &self.hi) * half();
        let s = self.poly.sign_at_rational(&mid);
        if s == 0 {
            let w = self.width() * half() * half();
            return AlgNumber { poly: Poly::linear_root(&mid), lo: &mid - &w, hi: &mid + &w };
        }
        if self.poly.sign_at_rational(&self.lo) != s {
            AlgNumber { poly: self.poly.clone(), lo: self.lo.clone(), hi: mid }
        } else {
            AlgNumber { poly: self.poly.clone(), lo: mid, hi: self.hi.clone() }
        }
    }

    pub fn refine_below(&self, width: &BigRational) -> AlgNumber {
        let mut a = self.clone();
        while a.width() > *width {
            a = a.refine();
        }
        a
    }

    fn same_number(&self, other: &AlgNumber) -> bool {
        let lo = (&self.lo).max(&other.lo);
        let hi = (&self.hi).min(&other.hi);
        if lo >= hi {
            return false;
        }
        let g = self.poly.gcd(&other.poly);
        !g.is_constant() && SturmSequence::new(&g).count(lo, hi) > 0
    }

    /// Exact comparison, refining both intervals until they separate.
    pub fn compare(&self, other: &AlgNumber) -> Ordering {
        if self.same_number(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a = a.refine();
            b = b.refine();
        }
    }

    /// Sign of `f` at this number.
    pub fn sign_of(&self, f: &Poly) -> i32 {
        if f.is_zero() {
            return 0;
        }
        if let Some(r) = self.as_rational() {
            return f.sign_at_rational(&r);
        }
        let g = f.gcd(&self.poly);
        if !g.is_constant() && SturmSequence::new(&g).count(&self.lo, &self.hi) > 0 {
            return 0;
        }
        let sf = f.square_free();
        let sturm = SturmSequence::new(&sf);
        let mut a = self.clone();
        loop {
            if sf.sign_at_rational(&a.lo) != 0 && sturm.count(&a.lo, &a.hi) == 0 {
                return f.sign_at_rational(&a.lo);
            }
            a = a.refine();
        }
    }

    /// Rational strictly between `self < other`.
    pub fn rational_between(&self, other: &AlgNumber) -> BigRational {
        let (mut a, mut b) = (self.clone(), other.clone());
        while a.hi > b.lo {
            a = a.refine();
            b = b.refine();
        }
        (&a.hi + &b.lo) * half()
    }

    /// Floating-point approximation for display.
    pub fn approx(&self) -> f64 {
        let a = self.refine_below(&BigRational::new(BigInt::one(), BigInt::from(1u64 << 40)));
        ((&a.lo + &a.hi) * half()).to_f64().unwrap_or(f64::NAN)
    }
}

impl PartialEq for AlgNumber {
    fn eq(&self, other: &Self) -> bool {
        self.same_number(other)
    }
}

impl Eq for AlgNumber {}

impl PartialOrd for AlgNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for AlgNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root({}, {}, {})", self.poly, self.lo, self.hi)
    }
}

const DIVISOR_LIMIT: u64 = 1 << 40;

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64().filter(|&v| v > 0 && v <= DIVISOR_LIMIT)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

/// Rational roots by the rational root theorem, when coefficients are small
/// enough to enumerate divisors.
fn rational_roots(f: &Poly) -> Vec<BigRational> {
    let mut f = f.clone();
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.push(BigRational::zero());
        let shifted: Vec<BigInt> = f.coeffs().iter().skip_while(|c| c.is_zero()).cloned().collect();
        f = Poly::new(shifted);
    }
    if f.is_constant() {
        return out;
    }
    let (Some(ps), Some(qs)) = (divisors(&f.coeff(0)), divisors(&f.leading())) else {
        return out;
    };
    for p in &ps {
        for q in &qs {
            if p.gcd(q) != BigInt::one() {
                continue;
            }
            for sgn in [1, -1] {
                let r = BigRational::new(p * BigInt::from(sgn), q.clone());
                if f.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// All real roots in increasing order, with pairwise disjoint open
/// isolating intervals.
pub fn real_roots(f: &Poly) -> Result<Vec<AlgNumber>, SperError> {
    if f.is_zero() {
        return Err(SperError::ZeroPolynomial);
    }
    let sf = f.square_free();
    if sf.is_constant() {
        return Ok(Vec::new());
    }
    let mut found: Vec<AlgNumber> = rational_roots(&sf).iter().map(AlgNumber::from_rational).collect();
    let mut rest = sf.clone();
    for r in &found {
        rest = rest.exact_div(&Poly::linear_root(&r.as_rational().unwrap()));
    }
    let rest = rest.normalized();
    if !rest.is_constant() {
        let sturm = SturmSequence::new(&rest);
        let b = rest.cauchy_bound();
        isolate(&rest, &sturm, -b.clone(), b, &mut found);
    }
    Ok(super::cells::separate(found))
}

fn isolate(f: &Poly, sturm: &SturmSequence, lo: BigRational, hi: BigRational, out: &mut Vec<AlgNumber>) {
    match sturm.count(&lo, &hi) {
        0 => {}
        1 => {
            if f.eval(&hi).is_zero() {
                let w = (&hi - &lo) * half();
                out.push(AlgNumber { poly: Poly::linear_root(&hi), lo: &hi - &w, hi: &hi + &w });
                return;
            }
            let mut a = AlgNumber { poly: f.clone(), lo, hi };
            while a.poly.degree() != Some(1) && a.poly.eval(&a.lo).is_zero() {
                let mid = (&a.lo + &a.hi) * half();
                if f.eval(&mid).is_zero() {
                    let w = (&a.hi - &mid) * half();
                    a = AlgNumber { poly: Poly::linear_root(&mid), lo: &mid - &w, hi: &mid + &w };
                } else if sturm.count(&a.lo, &mid) == 1 {
                    a.hi = mid;
                } else {
                    a.lo = mid;
                }
            }
            out.push(a);
        }
        _ => {
            let mid = (&lo + &hi) * half();
            isolate(f, sturm, lo, mid.clone(), out);
            isolate(f, sturm, mid, hi, out);
        }
    }
}
