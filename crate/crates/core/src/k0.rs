//! Constructible functions and the local Euler–Poincaré index.
//!
//! `K_0` of constructible complexes is identified with `Cons(M, ℤ)`
//! through `chi`; `realize` is an explicit inverse on classes.

use std::collections::BTreeMap;
use std::fmt;

use crate::linalg::{ChainMap, FreeChainComplex, K0Class, ScalarRing};
use crate::sheaf::{rgamma, SheafComplex};
use crate::space::{FinSpec, Point, PointSet, SpaceError};

/// A function from the points of a finite space to `K_0(Λ) = ℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsFunction {
    carrier: FinSpec,
    values: Vec<i64>,
}

impl ConsFunction {
    pub fn new(carrier: FinSpec, values: Vec<i64>) -> Self {
        assert_eq!(carrier.len(), values.len(), "one value per point");
        ConsFunction { carrier, values }
    }

    pub fn zero(carrier: &FinSpec) -> Self {
        Self::new(carrier.clone(), vec![0; carrier.len()])
    }

    /// Characteristic function of `s`.
    pub fn indicator(carrier: &FinSpec, s: &PointSet) -> Self {
        let values = carrier.points().map(|x| s.contains(&x) as i64).collect();
        Self::new(carrier.clone(), values)
    }

    /// From `(id, value)` pairs; unlisted points get 0.
    pub fn from_pairs<S: AsRef<str>>(carrier: &FinSpec, pairs: &[(S, i64)]) -> Result<Self, SpaceError> {
        let mut values = vec![0; carrier.len()];
        for (id, v) in pairs {
            values[carrier.lookup(id.as_ref())?] = *v;
        }
        Ok(Self::new(carrier.clone(), values))
    }

    pub fn carrier(&self) -> &FinSpec {
        &self.carrier
    }

    pub fn value(&self, x: Point) -> i64 {
        self.values[x]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn zip(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        assert_eq!(self.carrier, other.carrier, "functions on different spaces");
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        Self::new(self.carrier.clone(), values)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a * b)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.carrier.clone(), self.values.iter().map(|v| c * v).collect())
    }

    /// `Σ_x φ(x)`, the Euler integral with respect to counting.
    pub fn sum(&self) -> i64 {
        self.values.iter().sum()
    }
}

impl fmt::Display for ConsFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi:")?;
        for x in self.carrier.points() {
            write!(f, " {}={}", self.carrier.id(x), self.values[x])?;
        }
        Ok(())
    }
}

/// `x ↦ χ(K_x)`.
pub fn chi(k: &SheafComplex) -> ConsFunction {
    let values = k.stalks().iter().map(|c| c.k0_rank().value()).collect();
    ConsFunction::new(k.space().clone(), values)
}

/// `⊕_x j_{x!}Λ^{|φ(x)|}`, placed in degree 0 for positive values and
/// degree 1 for negative ones.
pub fn realize(phi: &ConsFunction, ring: ScalarRing) -> SheafComplex {
    let m = phi.carrier();
    let stalks: Vec<FreeChainComplex> = m
        .points()
        .map(|x| {
            let v = phi.value(x);
            FreeChainComplex::concentrated(ring, if v < 0 { 1 } else { 0 }, v.unsigned_abs() as usize)
        })
        .collect();
    SheafComplex::new(m.clone(), ring, stalks, BTreeMap::<(Point, Point), ChainMap>::new())
        .expect("zero generization maps are valid")
}

/// `φ = Σ c_k · 1_{Z_k}` with `Z_k = ↓x_k`, scanning generic points first.
pub fn closed_support_decomposition(phi: &ConsFunction) -> Vec<(PointSet, i64)> {
    let m = phi.carrier();
    let mut residual = phi.values.clone();
    let mut out = Vec::new();
    for &x in m.admissible_order().points().iter().rev() {
        let c = residual[x];
        if c == 0 {
            continue;
        }
        let z = m.down(x);
        for &y in &z {
            residual[y] -= c;
        }
        out.push((z, c));
    }
    out
}

/// `χ(RΓ(M, K))`.
pub fn global_euler(k: &SheafComplex) -> K0Class {
    rgamma(k).k0_rank()
}
