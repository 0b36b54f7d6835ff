use std::fmt;

use num_traits::Zero;

use super::ring::{Scalar, ScalarRing};

/// A finitely generated module `Λ^r ⊕ Λ/d_1 ⊕ ... ⊕ Λ/d_k` with
/// `d_1 | d_2 | ... | d_k`, every `d_i` a nonzero non-unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FGModule {
    ring: ScalarRing,
    torsion: Vec<Scalar>,
    free_rank: usize,
}

impl FGModule {
    pub fn zero(ring: ScalarRing) -> Self {
        FGModule { ring, torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(ring: ScalarRing, rank: usize) -> Self {
        FGModule { ring, torsion: Vec::new(), free_rank: rank }
    }

    /// Builds the module from a divisibility chain of invariant factors;
    /// units are dropped. Panics if the chain is not a divisibility chain.
    pub fn new(ring: ScalarRing, factors: Vec<Scalar>, free_rank: usize) -> Self {
        let torsion: Vec<Scalar> = factors
            .into_iter()
            .map(|d| {
                assert!(!d.is_zero(), "zero invariant factor");
                let u = ring.normalizing_unit(&d);
                ring.mul(&d, &u)
            })
            .filter(|d| !ring.is_unit(d))
            .collect();
        assert!(
            torsion.windows(2).all(|w| ring.divides(&w[0], &w[1])),
            "invariant factors must form a divisibility chain"
        );
        FGModule { ring, torsion, free_rank }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn torsion(&self) -> &[Scalar] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl fmt::Display for FGModule {
    /// `0`, `Z`, `Z^2 + Z/2 + Z/6`, `Q^3`, `F_5^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let sym = self.ring.symbol();
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(sym.clone()),
            r => parts.push(format!("{sym}^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("{sym}/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// A class in `K_0(Λ) ≅ Z`, identified by rank.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct K0Class(pub i64);

impl K0Class {
    pub fn value(self) -> i64 {
        self.0
    }
}

impl std::ops::Add for K0Class {
    type Output = K0Class;
    fn add(self, rhs: K0Class) -> K0Class {
        K0Class(self.0 + rhs.0)
    }
}

impl std::ops::Sub for K0Class {
    type Output = K0Class;
    fn sub(self, rhs: K0Class) -> K0Class {
        K0Class(self.0 - rhs.0)
    }
}

impl std::ops::Neg for K0Class {
    type Output = K0Class;
    fn neg(self) -> K0Class {
        K0Class(-self.0)
    }
}

impl std::iter::Sum for K0Class {
    fn sum<I: Iterator<Item = K0Class>>(iter: I) -> K0Class {
        K0Class(iter.map(|k| k.0).sum())
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
