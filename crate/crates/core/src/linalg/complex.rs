//! Bounded complexes of finitely generated free modules, cohomologically
//! indexed: `d_n` maps degree `n` to degree `n + 1`.

use std::collections::BTreeMap;
use std::fmt;

use super::matrix::Matrix;
use super::module::{FGModule, K0Class};
use super::ring::ScalarRing;
use super::snf::{invariant_factors, kernel, ColumnSpan};
use super::LinalgError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeChainComplex {
    ring: ScalarRing,
    lo: i32,
    ranks: Vec<usize>,
    /// `diffs[i]` maps degree `lo + i` to `lo + i + 1`.
    diffs: Vec<Matrix>,
}

impl FreeChainComplex {
    pub fn zero(ring: ScalarRing) -> Self {
        FreeChainComplex { ring, lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// `Λ^rank` placed in a single degree.
    pub fn concentrated(ring: ScalarRing, degree: i32, rank: usize) -> Self {
        FreeChainComplex { ring, lo: degree, ranks: vec![rank], diffs: Vec::new() }.trimmed()
    }

    /// `Λ^cols --m--> Λ^rows` in degrees `lo`, `lo + 1`.
    pub fn two_term(lo: i32, m: Matrix) -> Self {
        let ring = m.ring();
        FreeChainComplex { ring, lo, ranks: vec![m.cols(), m.rows()], diffs: vec![m] }.trimmed()
    }

    /// Builds a complex from ranks and differentials indexed by source
    /// degree; missing differentials are zero.
    pub fn from_maps(
        ring: ScalarRing,
        ranks: &BTreeMap<i32, usize>,
        diffs: &BTreeMap<i32, Matrix>,
    ) -> Result<Self, LinalgError> {
        let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
        let nonzero: Vec<i32> = ranks.iter().filter(|(_, &r)| r > 0).map(|(&n, _)| n).collect();
        for (&n, m) in diffs {
            if m.ring() != ring {
                return Err(LinalgError::RingMismatch);
            }
            if m.shape() != (rank(n + 1), rank(n)) {
                return Err(LinalgError::Shape(format!(
                    "d_{n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    rank(n + 1),
                    rank(n)
                )));
            }
        }
        let (Some(&lo), Some(&hi)) = (nonzero.first(), nonzero.last()) else {
            return Ok(Self::zero(ring));
        };
        let ranks_v: Vec<usize> = (lo..=hi).map(rank).collect();
        let diffs_v: Vec<Matrix> = (lo..hi)
            .map(|n| {
                diffs.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(ring, rank(n + 1), rank(n)))
            })
            .collect();
        let c = FreeChainComplex { ring, lo, ranks: ranks_v, diffs: diffs_v };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<(), LinalgError> {
        for w in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[w + 1].mul(&self.diffs[w]).is_zero() {
                return Err(LinalgError::NotAComplex(self.lo + w as i32));
            }
        }
        Ok(())
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        if self.ranks.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest and highest degree with a nonzero term.
    pub fn support(&self) -> Option<(i32, i32)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i32 - 1))
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> {
        let n = self.ranks.len() as i32;
        self.lo..self.lo + n
    }

    pub fn rank(&self, n: i32) -> usize {
        let i = n - self.lo;
        if i < 0 {
            0
        } else {
            self.ranks.get(i as usize).copied().unwrap_or(0)
        }
    }

    /// Total rank over all degrees.
    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// The differential leaving degree `n` (zero outside the support).
    pub fn d(&self, n: i32) -> Matrix {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zeros(self.ring, self.rank(n + 1), self.rank(n))
        }
    }

    pub fn ranks_map(&self) -> BTreeMap<i32, usize> {
        self.degrees().map(|n| (n, self.rank(n))).collect()
    }

    pub fn diffs_map(&self) -> BTreeMap<i32, Matrix> {
        self.diffs.iter().enumerate().map(|(i, m)| (self.lo + i as i32, m.clone())).collect()
    }

    /// `C[k]^n = C^{n+k}` with differential multiplied by `(-1)^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        FreeChainComplex {
            ring: self.ring,
            lo: self.lo - k,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|m| m.signed(k as i64)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "ring mismatch in direct sum");
        let (ranks, diffs) = union_degrees(self, other)
            .map(|n| {
                ((n, self.rank(n) + other.rank(n)), (n, self.d(n).block_diag(&other.d(n))))
            })
            .unzip();
        Self::from_maps(self.ring, &ranks, &diffs).expect("direct sum of complexes")
    }

    /// Total complex of the tensor product, with Koszul sign
    /// `d(a ⊗ b) = da ⊗ b + (-1)^|a| a ⊗ db`.
    pub fn tensor(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.ring != other.ring {
            return Err(LinalgError::RingMismatch);
        }
        let ring = self.ring;
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.support(), other.support()) else {
            return Ok(Self::zero(ring));
        };
        let mut ranks = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for n in alo + blo..=ahi + bhi {
            ranks.insert(n, tensor_layout(self, other, n).iter().map(|b| b.size).sum());
        }
        for n in alo + blo..ahi + bhi {
            let src = tensor_layout(self, other, n);
            let tgt = tensor_layout(self, other, n + 1);
            let mut m = Matrix::zeros(ring, ranks[&(n + 1)], ranks[&n]);
            for b in &src {
                let q = n - b.p;
                if let Some(t) = tgt.iter().find(|t| t.p == b.p + 1) {
                    let blk = self.d(b.p).kron(&Matrix::identity(ring, other.rank(q)));
                    m.set_block(t.offset, b.offset, &blk);
                }
                if let Some(t) = tgt.iter().find(|t| t.p == b.p) {
                    let blk = Matrix::identity(ring, self.rank(b.p))
                        .kron(&other.d(q))
                        .signed(b.p as i64);
                    m.set_block(t.offset, b.offset, &blk);
                }
            }
            diffs.insert(n, m);
        }
        Self::from_maps(ring, &ranks, &diffs)
    }

    /// `H^n = ker d_n / im d_{n-1}` over the support.
    pub fn homology(&self) -> BTreeMap<i32, FGModule> {
        self.degrees().map(|n| (n, self.homology_at(n))).collect()
    }

    pub fn homology_at(&self, n: i32) -> FGModule {
        let out = invariant_factors(&self.d(n)).len();
        let incoming = invariant_factors(&self.d(n - 1));
        let free = self.rank(n) - out - incoming.len();
        FGModule::new(self.ring, incoming, free)
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.homology_at(n).is_zero())
    }

    /// `Σ (-1)^n rank_n`, the class in `K_0(Λ)`.
    pub fn k0_rank(&self) -> K0Class {
        K0Class(
            self.degrees()
                .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
                .sum(),
        )
    }

    /// Smallest window outside which `H^n(C ⊗^L N)` vanishes for every
    /// module `N`. By universal coefficients `H^n(C ⊗ N)` is
    /// `H^n(C) ⊗ N ⊕ Tor(H^{n+1}(C), N)`.
    pub fn tor_amplitude(&self) -> TorAmplitude {
        let h = self.homology();
        let nonzero = |n: i32| h.get(&n).is_some_and(|m| !m.is_zero());
        let torsion = |n: i32| h.get(&n).is_some_and(|m| !m.is_free());
        let Some(b) = self.degrees().filter(|&n| nonzero(n)).max() else {
            return TorAmplitude::Empty;
        };
        let a = self
            .degrees()
            .chain(self.degrees().map(|n| n - 1))
            .filter(|&n| nonzero(n) || torsion(n + 1))
            .min()
            .expect("nonzero homology exists");
        TorAmplitude::Window(a, b)
    }
}

impl fmt::Display for FreeChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .degrees()
            .map(|n| format!("{}^{}@{}", self.ring.symbol(), self.rank(n), n))
            .collect();
        write!(f, "{}", parts.join(" -> "))
    }
}

/// Tor-amplitude window, or `Empty` for an acyclic complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorAmplitude {
    Empty,
    Window(i32, i32),
}

struct TensorBlock {
    p: i32,
    offset: usize,
    size: usize,
}

/// Summands `A^p ⊗ B^{n-p}` of `(A ⊗ B)^n`, in increasing `p`.
fn tensor_layout(a: &FreeChainComplex, b: &FreeChainComplex, n: i32) -> Vec<TensorBlock> {
    let mut out = Vec::new();
    let mut offset = 0;
    for p in a.degrees() {
        let size = a.rank(p) * b.rank(n - p);
        if size > 0 {
            out.push(TensorBlock { p, offset, size });
            offset += size;
        }
    }
    out
}

#[allow(clippy::reversed_empty_ranges)]
fn union_degrees(a: &FreeChainComplex, b: &FreeChainComplex) -> std::ops::RangeInclusive<i32> {
    match (a.support(), b.support()) {
        (None, None) => 1..=0,
        (Some(s), None) | (None, Some(s)) => s.0..=s.1,
        (Some(x), Some(y)) => x.0.min(y.0)..=x.1.max(y.1),
    }
}

/// A degree-preserving map of complexes; absent components are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    ring: ScalarRing,
    comps: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn zero(ring: ScalarRing) -> Self {
        ChainMap { ring, comps: BTreeMap::new() }
    }

    pub fn identity(c: &FreeChainComplex) -> Self {
        ChainMap {
            ring: c.ring,
            comps: c.degrees().map(|n| (n, Matrix::identity(c.ring, c.rank(n)))).collect(),
        }
    }

    pub fn from_components(ring: ScalarRing, comps: BTreeMap<i32, Matrix>) -> Self {
        ChainMap { ring, comps }
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn components(&self) -> &BTreeMap<i32, Matrix> {
        &self.comps
    }

    pub fn component(&self, n: i32, src: &FreeChainComplex, tgt: &FreeChainComplex) -> Matrix {
        self.comps
            .get(&n)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.ring, tgt.rank(n), src.rank(n)))
    }

    /// Checks shapes and `d ∘ f = f ∘ d` in every degree.
    pub fn check(&self, src: &FreeChainComplex, tgt: &FreeChainComplex) -> Result<(), LinalgError> {
        for (&n, m) in &self.comps {
            if m.shape() != (tgt.rank(n), src.rank(n)) {
                return Err(LinalgError::Shape(format!(
                    "chain map component in degree {n} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    tgt.rank(n),
                    src.rank(n)
                )));
            }
        }
        for n in union_degrees(src, tgt) {
            let lhs = tgt.d(n).mul(&self.component(n, src, tgt));
            let rhs = self.component(n + 1, src, tgt).mul(&src.d(n));
            if lhs != rhs {
                return Err(LinalgError::NotAChainMap(n));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Matrix::is_zero)
    }

    /// Same map with one explicit component for every degree of `src`, so
    /// that equal maps compare equal.
    pub fn normalized(&self, src: &FreeChainComplex, tgt: &FreeChainComplex) -> ChainMap {
        let comps = src.degrees().map(|n| (n, self.component(n, src, tgt))).collect();
        ChainMap { ring: self.ring, comps }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let comps = self
            .comps
            .iter()
            .filter_map(|(n, f)| other.comps.get(n).map(|g| (*n, f.mul(g))))
            .collect();
        ChainMap { ring: self.ring, comps }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let mut comps = self.comps.clone();
        for (n, g) in &other.comps {
            let v = match comps.get(n) {
                Some(f) => f.add(g),
                None => g.clone(),
            };
            comps.insert(*n, v);
        }
        ChainMap { ring: self.ring, comps }
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap { ring: self.ring, comps: self.comps.iter().map(|(n, f)| (*n, f.neg())).collect() }
    }

    /// `f[k]^n = f^{n+k}`.
    pub fn shift(&self, k: i32) -> ChainMap {
        ChainMap {
            ring: self.ring,
            comps: self.comps.iter().map(|(n, f)| (n - k, f.clone())).collect(),
        }
    }

    pub fn direct_sum(
        &self,
        other: &ChainMap,
        srcs: (&FreeChainComplex, &FreeChainComplex),
        tgts: (&FreeChainComplex, &FreeChainComplex),
    ) -> ChainMap {
        let lo = srcs.0.support().into_iter().chain(srcs.1.support()).map(|s| s.0).min();
        let hi = srcs.0.support().into_iter().chain(srcs.1.support()).map(|s| s.1).max();
        let mut comps = BTreeMap::new();
        if let (Some(lo), Some(hi)) = (lo, hi) {
            for n in lo..=hi {
                let f = self.component(n, srcs.0, tgts.0);
                let g = other.component(n, srcs.1, tgts.1);
                comps.insert(n, f.block_diag(&g));
            }
        }
        ChainMap { ring: self.ring, comps }
    }

    /// `f ⊗ g : A ⊗ C → B ⊗ D` in the layout of [`FreeChainComplex::tensor`].
    pub fn tensor(
        f: &ChainMap,
        (a, b): (&FreeChainComplex, &FreeChainComplex),
        g: &ChainMap,
        (c, d): (&FreeChainComplex, &FreeChainComplex),
    ) -> ChainMap {
        let ring = f.ring;
        let (Some((alo, ahi)), Some((clo, chi))) = (a.support(), c.support()) else {
            return ChainMap::zero(ring);
        };
        let mut comps = BTreeMap::new();
        for n in alo + clo..=ahi + chi {
            let src = tensor_layout(a, c, n);
            let tgt = tensor_layout(b, d, n);
            let rows = tgt.iter().map(|t| t.size).sum();
            let cols = src.iter().map(|s| s.size).sum();
            let mut m = Matrix::zeros(ring, rows, cols);
            for s in &src {
                if let Some(t) = tgt.iter().find(|t| t.p == s.p) {
                    let blk = f.component(s.p, a, b).kron(&g.component(n - s.p, c, d));
                    m.set_block(t.offset, s.offset, &blk);
                }
            }
            comps.insert(n, m);
        }
        ChainMap { ring, comps }
    }
}

/// Mapping cone of `f : A → B`: `Cone^n = A^{n+1} ⊕ B^n`,
/// `d(a, b) = (-da, f(a) + db)`.
pub fn cone(f: &ChainMap, a: &FreeChainComplex, b: &FreeChainComplex) -> FreeChainComplex {
    let ring = a.ring;
    let shifted = a.shift(1);
    let mut ranks = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in union_degrees(&shifted, b) {
        ranks.insert(n, shifted.rank(n) + b.rank(n));
    }
    for n in union_degrees(&shifted, b) {
        let (ra1, rb) = (shifted.rank(n), b.rank(n));
        let (ra2, rb2) = (shifted.rank(n + 1), b.rank(n + 1));
        let mut m = Matrix::zeros(ring, ra2 + rb2, ra1 + rb);
        m.set_block(0, 0, &shifted.d(n));
        m.set_block(ra2, 0, &f.component(n + 1, a, b));
        m.set_block(ra2, ra1, &b.d(n));
        diffs.insert(n, m);
    }
    FreeChainComplex::from_maps(ring, &ranks, &diffs).expect("mapping cone of a chain map")
}

/// `B → Cone(f)`, `b ↦ (0, b)`.
pub fn cone_inclusion(a: &FreeChainComplex, b: &FreeChainComplex) -> ChainMap {
    let ring = a.ring;
    let comps = b
        .degrees()
        .map(|n| {
            let ra = a.rank(n + 1);
            let rb = b.rank(n);
            let mut m = Matrix::zeros(ring, ra + rb, rb);
            m.set_block(ra, 0, &Matrix::identity(ring, rb));
            (n, m)
        })
        .collect();
    ChainMap { ring, comps }
}

/// `Cone(f) → A[1]`, `(a, b) ↦ a`.
pub fn cone_projection(a: &FreeChainComplex, b: &FreeChainComplex) -> ChainMap {
    let ring = a.ring;
    let comps = a
        .shift(1)
        .degrees()
        .map(|n| {
            let ra = a.rank(n + 1);
            let rb = b.rank(n);
            let mut m = Matrix::zeros(ring, ra, ra + rb);
            m.set_block(0, 0, &Matrix::identity(ring, ra));
            (n, m)
        })
        .collect();
    ChainMap { ring, comps }
}

pub fn is_quasi_iso(f: &ChainMap, a: &FreeChainComplex, b: &FreeChainComplex) -> bool {
    cone(f, a, b).is_acyclic()
}

/// Exactness of `H^n(X) → H^n(Y) → H^n(W)` induced by `f`, `g`.
pub fn exact_at(
    (x, y, w): (&FreeChainComplex, &FreeChainComplex, &FreeChainComplex),
    f: &ChainMap,
    g: &ChainMap,
    n: i32,
) -> bool {
    let fn_ = f.component(n, x, y);
    let gn = g.component(n, y, w);
    let zx = kernel(&x.d(n));
    let zy = kernel(&y.d(n));
    let bw = ColumnSpan::new(&w.d(n - 1));
    let gf_cycles = gn.mul(&fn_).mul(&zx);
    if (0..gf_cycles.cols()).any(|j| !bw.contains(&gf_cycles.column(j))) {
        return false;
    }
    // Cycles of Y sent to boundaries of W.
    let stacked = gn.mul(&zy).hstack(&w.d(n - 1));
    let rel = kernel(&stacked);
    let coeff = rel.block(0, 0, zy.cols(), rel.cols());
    let preimage = zy.mul(&coeff);
    let image = ColumnSpan::new(&fn_.mul(&zx).hstack(&y.d(n - 1)));
    (0..preimage.cols()).all(|j| image.contains(&preimage.column(j)))
}

/// Where a long exact sequence check failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesDefect {
    pub position: &'static str,
    pub degree: i32,
}

/// Checks exactness of the long exact sequence of
/// `A --u--> B --v--> C --w--> A[1]` at every degree.
pub fn les_exact(
    (a, b, c): (&FreeChainComplex, &FreeChainComplex, &FreeChainComplex),
    u: &ChainMap,
    v: &ChainMap,
    w: &ChainMap,
) -> Result<(), LesDefect> {
    let a1 = a.shift(1);
    let b1 = b.shift(1);
    let u1 = u.shift(1);
    let supports: Vec<(i32, i32)> =
        [a, b, c].iter().filter_map(|x| x.support()).collect();
    let Some(lo) = supports.iter().map(|s| s.0).min() else {
        return Ok(());
    };
    let hi = supports.iter().map(|s| s.1).max().unwrap();
    for n in lo - 1..=hi + 1 {
        if !exact_at((a, b, c), u, v, n) {
            return Err(LesDefect { position: "B", degree: n });
        }
        if !exact_at((b, c, &a1), v, w, n) {
            return Err(LesDefect { position: "C", degree: n });
        }
        if !exact_at((c, &a1, &b1), w, &u1, n) {
            return Err(LesDefect { position: "A[1]", degree: n });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ScalarRing::{Integers as Z, Rationals as Q};

    fn mult(lo: i32, c: i64) -> FreeChainComplex {
        FreeChainComplex::two_term(lo, Matrix::from_i64(Z, &[&[c]]))
    }

    #[test]
    fn homology_of_multiplication_by_two() {
        let c = mult(-1, 2);
        assert_eq!(c.homology_at(-1), FGModule::zero(Z));
        assert_eq!(c.homology_at(0).to_string(), "Z/2");
        assert_eq!(c.tor_amplitude(), TorAmplitude::Window(-1, 0));
        assert_eq!(c.k0_rank(), K0Class(0));
    }

    #[test]
    fn zero_differentials_and_identity() {
        let c = FreeChainComplex::two_term(0, Matrix::zeros(Z, 2, 1));
        assert_eq!(c.homology_at(0), FGModule::free(Z, 1));
        assert_eq!(c.homology_at(1), FGModule::free(Z, 2));
        assert_eq!(c.k0_rank(), K0Class(-1));
        let id = FreeChainComplex::two_term(0, Matrix::identity(Q, 1));
        assert!(id.is_acyclic());
        assert_eq!(id.tor_amplitude(), TorAmplitude::Empty);
    }

    #[test]
    fn free_and_shift() {
        let c = FreeChainComplex::concentrated(Z, 0, 3);
        assert_eq!(c.tor_amplitude(), TorAmplitude::Window(0, 0));
        assert_eq!(c.shift(2).k0_rank(), K0Class(3));
        assert_eq!(c.shift(1).k0_rank(), K0Class(-3));
        assert_eq!(c.shift(1).support(), Some((-1, -1)));
        let two = FreeChainComplex::concentrated(Z, 1, 2);
        assert_eq!(two.k0_rank(), K0Class(-2));
    }

    #[test]
    fn koszul_complex_of_coprime_elements_is_acyclic() {
        let t = mult(-1, 2).tensor(&mult(-1, 3)).unwrap();
        assert_eq!(t.ranks_map(), BTreeMap::from([(-2, 1), (-1, 2), (0, 1)]));
        assert!(t.is_acyclic());
        let t = mult(-1, 2).tensor(&mult(-1, 2)).unwrap();
        assert_eq!(t.homology_at(0).to_string(), "Z/2");
        assert_eq!(t.homology_at(-1).to_string(), "Z/2");
        assert!(t.homology_at(-2).is_zero());
    }

    #[test]
    fn cone_of_identity_is_acyclic_and_triangle_is_exact() {
        let c = mult(-1, 2);
        let id = ChainMap::identity(&c);
        let k = cone(&id, &c, &c);
        assert!(k.is_acyclic());
        assert_eq!(k.k0_rank(), K0Class(0));
        let inc = cone_inclusion(&c, &c);
        let proj = cone_projection(&c, &c);
        inc.check(&c, &k).unwrap();
        proj.check(&k, &c.shift(1)).unwrap();
        assert_eq!(les_exact((&c, &c, &k), &id, &inc, &proj), Ok(()));
    }

    #[test]
    fn cone_of_multiplication() {
        let a = FreeChainComplex::concentrated(Z, 0, 1);
        let f = ChainMap::from_components(Z, BTreeMap::from([(0, Matrix::from_i64(Z, &[&[5]]))]));
        let k = cone(&f, &a, &a);
        assert_eq!(k.homology_at(0).to_string(), "Z/5");
        assert!(!is_quasi_iso(&f, &a, &a));
        let inc = cone_inclusion(&a, &a);
        let proj = cone_projection(&a, &a);
        assert_eq!(les_exact((&a, &a, &k), &f, &inc, &proj), Ok(()));
        // For the zero map the connecting map must be onto.
        let zero = ChainMap::zero(Z);
        let k0 = cone(&zero, &a, &a);
        let proj = cone_projection(&a, &a);
        assert_eq!(les_exact((&a, &a, &k0), &zero, &inc, &proj), Ok(()));
        assert!(les_exact((&a, &a, &k0), &zero, &inc, &zero).is_err());
    }

    #[test]
    fn non_complexes_are_rejected() {
        let ranks = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let one = Matrix::identity(Z, 1);
        let diffs = BTreeMap::from([(0, one.clone()), (1, one)]);
        assert_eq!(FreeChainComplex::from_maps(Z, &ranks, &diffs), Err(LinalgError::NotAComplex(0)));
        let bad = BTreeMap::from([(0, Matrix::zeros(Z, 2, 1))]);
        assert!(matches!(FreeChainComplex::from_maps(Z, &ranks, &bad), Err(LinalgError::Shape(_))));
    }
}
