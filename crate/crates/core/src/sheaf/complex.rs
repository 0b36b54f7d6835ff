use std::collections::BTreeMap;

use crate::linalg::{cone, cone_inclusion, cone_projection, ChainMap, FreeChainComplex, ScalarRing};
use crate::space::{FinSpec, Point, PointSet};

use super::SheafError;

/// A bounded complex of sheaves: a stalk complex at every point and
/// generization chain maps, stored for every pair `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafComplex {
    space: FinSpec,
    ring: ScalarRing,
    stalks: Vec<FreeChainComplex>,
    gens: BTreeMap<(Point, Point), ChainMap>,
}

impl SheafComplex {
    /// Validates stalks and cover maps and composes them along every path.
    /// Covers without an entry get the zero map.
    pub fn new(
        space: FinSpec,
        ring: ScalarRing,
        stalks: Vec<FreeChainComplex>,
        cover_maps: BTreeMap<(Point, Point), ChainMap>,
    ) -> Result<Self, SheafError> {
        if stalks.len() != space.len() {
            return Err(SheafError::StalkCount { expected: space.len(), actual: stalks.len() });
        }
        if stalks.iter().any(|c| c.ring() != ring) {
            return Err(SheafError::RingMismatch);
        }
        for &(x, y) in cover_maps.keys() {
            if x >= space.len() || y >= space.len() || !space.is_cover(x, y) {
                let name = |p: Point| space.ids().get(p).cloned().unwrap_or_else(|| format!("#{p}"));
                return Err(SheafError::NotACover(name(x), name(y)));
            }
        }
        let mut covers = BTreeMap::new();
        for &(x, y) in space.covers() {
            let f = cover_maps.get(&(x, y)).cloned().unwrap_or_else(|| ChainMap::zero(ring));
            if f.ring() != ring {
                return Err(SheafError::RingMismatch);
            }
            f.check(&stalks[x], &stalks[y]).map_err(|source| SheafError::NotAChainMap {
                lower: space.id(x).to_string(),
                upper: space.id(y).to_string(),
                source,
            })?;
            covers.insert((x, y), f.normalized(&stalks[x], &stalks[y]));
        }
        let order = space.linear_extension();
        let mut gens = BTreeMap::new();
        for &x in &order {
            gens.insert((x, x), ChainMap::identity(&stalks[x]));
            for &y in order.iter().filter(|&&y| space.lt(x, y)) {
                let mut composite: Option<ChainMap> = None;
                for &(z, w) in space.covers() {
                    if w != y || !space.leq(x, z) {
                        continue;
                    }
                    let via = covers[&(z, y)].compose(&gens[&(x, z)]).normalized(&stalks[x], &stalks[y]);
                    match &composite {
                        None => composite = Some(via),
                        Some(c) if *c == via => {}
                        Some(_) => {
                            return Err(SheafError::PathIndependenceViolation {
                                lower: space.id(x).to_string(),
                                upper: space.id(y).to_string(),
                            })
                        }
                    }
                }
                gens.insert((x, y), composite.expect("a cover below y lies above x"));
            }
        }
        Ok(SheafComplex { space, ring, stalks, gens })
    }

    /// Builds from stalks and maps for every pair `x ≤ y`, trusted.
    pub(crate) fn from_parts(
        space: FinSpec,
        ring: ScalarRing,
        stalks: Vec<FreeChainComplex>,
        mut gen: impl FnMut(Point, Point) -> ChainMap,
    ) -> Self {
        let mut gens = BTreeMap::new();
        for x in space.points() {
            for y in space.points().filter(|&y| space.leq(x, y)) {
                let f = if x == y { ChainMap::identity(&stalks[x]) } else { gen(x, y) };
                gens.insert((x, y), f.normalized(&stalks[x], &stalks[y]));
            }
        }
        SheafComplex { space, ring, stalks, gens }
    }

    pub fn zero(space: &FinSpec, ring: ScalarRing) -> Self {
        let stalks = vec![FreeChainComplex::zero(ring); space.len()];
        Self::from_parts(space.clone(), ring, stalks, |_, _| ChainMap::zero(ring))
    }

    /// Constant complex with identity generization maps.
    pub fn constant(space: &FinSpec, c: &FreeChainComplex) -> Self {
        let stalks = vec![c.clone(); space.len()];
        Self::from_parts(space.clone(), c.ring(), stalks, |_, _| ChainMap::identity(c))
    }

    /// The constant sheaf `Λ` in degree 0, the tensor unit.
    pub fn unit(space: &FinSpec, ring: ScalarRing) -> Self {
        Self::constant(space, &FreeChainComplex::concentrated(ring, 0, 1))
    }

    /// `c` at the point `x`, zero elsewhere: extension by zero from the
    /// locally closed subset `{x}`.
    pub fn point_extension(space: &FinSpec, x: Point, c: &FreeChainComplex) -> Self {
        let ring = c.ring();
        let stalks = space
            .points()
            .map(|y| if y == x { c.clone() } else { FreeChainComplex::zero(ring) })
            .collect();
        Self::from_parts(space.clone(), ring, stalks, |_, _| ChainMap::zero(ring))
    }

    /// Cell projective `P_x = j_!Λ` on `↑x`.
    pub fn cell_projective(space: &FinSpec, ring: ScalarRing, x: Point) -> Self {
        let lam = FreeChainComplex::concentrated(ring, 0, 1);
        let up = space.up(x);
        let stalks = space
            .points()
            .map(|y| if up.contains(&y) { lam.clone() } else { FreeChainComplex::zero(ring) })
            .collect();
        Self::from_parts(space.clone(), ring, stalks, |a, _| {
            if up.contains(&a) {
                ChainMap::identity(&lam)
            } else {
                ChainMap::zero(ring)
            }
        })
    }

    pub fn space(&self) -> &FinSpec {
        &self.space
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn stalk(&self, x: Point) -> &FreeChainComplex {
        &self.stalks[x]
    }

    pub fn stalks(&self) -> &[FreeChainComplex] {
        &self.stalks
    }

    /// Generization map `K_x → K_y`; requires `x ≤ y`.
    pub fn gen(&self, x: Point, y: Point) -> &ChainMap {
        &self.gens[&(x, y)]
    }

    pub fn is_zero(&self) -> bool {
        self.stalks.iter().all(FreeChainComplex::is_zero)
    }

    /// Acyclic at every stalk, i.e. zero in the derived category.
    pub fn is_acyclic(&self) -> bool {
        self.stalks.iter().all(FreeChainComplex::is_acyclic)
    }

    /// Points with non-acyclic stalk.
    pub fn support(&self) -> PointSet {
        self.space.points().filter(|&x| !self.stalks[x].is_acyclic()).collect()
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let sup: Vec<(i32, i32)> = self.stalks.iter().filter_map(|c| c.support()).collect();
        let lo = sup.iter().map(|s| s.0).min()?;
        let hi = sup.iter().map(|s| s.1).max()?;
        Some((lo, hi))
    }

    /// `K[k]`.
    pub fn shift(&self, k: i32) -> Self {
        SheafComplex {
            space: self.space.clone(),
            ring: self.ring,
            stalks: self.stalks.iter().map(|c| c.shift(k)).collect(),
            gens: self.gens.iter().map(|(&e, f)| (e, f.shift(k))).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, SheafError> {
        self.compatible(other)?;
        let stalks = self.stalks.iter().zip(&other.stalks).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(Self::from_parts(self.space.clone(), self.ring, stalks, |x, y| {
            self.gen(x, y).direct_sum(
                other.gen(x, y),
                (self.stalk(x), other.stalk(x)),
                (self.stalk(y), other.stalk(y)),
            )
        }))
    }

    pub(crate) fn compatible(&self, other: &Self) -> Result<(), SheafError> {
        if self.space != other.space {
            return Err(SheafError::SpaceMismatch);
        }
        if self.ring != other.ring {
            return Err(SheafError::RingMismatch);
        }
        Ok(())
    }
}

/// A morphism of sheaf complexes: a chain map per point, natural in the
/// generization maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SheafMap {
    source: SheafComplex,
    target: SheafComplex,
    comps: Vec<ChainMap>,
}

impl SheafMap {
    pub fn new(source: SheafComplex, target: SheafComplex, comps: Vec<ChainMap>) -> Result<Self, SheafError> {
        source.compatible(&target)?;
        let space = source.space();
        if comps.len() != space.len() {
            return Err(SheafError::StalkCount { expected: space.len(), actual: comps.len() });
        }
        let mut normal = Vec::with_capacity(comps.len());
        for (x, f) in comps.iter().enumerate() {
            f.check(source.stalk(x), target.stalk(x))
                .map_err(|e| SheafError::BadComponent { point: space.id(x).to_string(), source: e })?;
            normal.push(f.normalized(source.stalk(x), target.stalk(x)));
        }
        for &(x, y) in space.covers() {
            let lhs = target.gen(x, y).compose(&normal[x]).normalized(source.stalk(x), target.stalk(y));
            let rhs = normal[y].compose(source.gen(x, y)).normalized(source.stalk(x), target.stalk(y));
            if lhs != rhs {
                return Err(SheafError::NotNatural {
                    lower: space.id(x).to_string(),
                    upper: space.id(y).to_string(),
                });
            }
        }
        Ok(SheafMap { source, target, comps: normal })
    }

    pub fn identity(k: &SheafComplex) -> Self {
        let comps = k.stalks().iter().map(ChainMap::identity).collect();
        SheafMap { source: k.clone(), target: k.clone(), comps }
    }

    pub fn source(&self) -> &SheafComplex {
        &self.source
    }

    pub fn target(&self) -> &SheafComplex {
        &self.target
    }

    pub fn component(&self, x: Point) -> &ChainMap {
        &self.comps[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &SheafMap) -> Result<SheafMap, SheafError> {
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.compose(f)).collect();
        SheafMap::new(first.source.clone(), self.target.clone(), comps)
    }

    pub fn shift(&self, k: i32) -> SheafMap {
        SheafMap {
            source: self.source.shift(k),
            target: self.target.shift(k),
            comps: self.comps.iter().map(|f| f.shift(k)).collect(),
        }
    }

    /// Stalkwise mapping cone.
    pub fn cone(&self) -> SheafComplex {
        let (a, b) = (&self.source, &self.target);
        let stalks = a
            .space()
            .points()
            .map(|x| cone(&self.comps[x], a.stalk(x), b.stalk(x)))
            .collect();
        SheafComplex::from_parts(a.space().clone(), a.ring(), stalks, |x, y| {
            a.gen(x, y).shift(1).direct_sum(
                b.gen(x, y),
                (&a.stalk(x).shift(1), b.stalk(x)),
                (&a.stalk(y).shift(1), b.stalk(y)),
            )
        })
    }

    /// `B → Cone(f)`.
    pub fn cone_inclusion(&self, cone: &SheafComplex) -> SheafMap {
        let comps = self
            .source
            .space()
            .points()
            .map(|x| cone_inclusion(self.source.stalk(x), self.target.stalk(x)))
            .collect();
        SheafMap::normalize(self.target.clone(), cone.clone(), comps)
    }

    /// `Cone(f) → A[1]`.
    pub fn cone_projection(&self, cone: &SheafComplex) -> SheafMap {
        let comps = self
            .source
            .space()
            .points()
            .map(|x| cone_projection(self.source.stalk(x), self.target.stalk(x)))
            .collect();
        SheafMap::normalize(cone.clone(), self.source.shift(1), comps)
    }

    pub(crate) fn normalize(source: SheafComplex, target: SheafComplex, comps: Vec<ChainMap>) -> SheafMap {
        let comps = comps
            .iter()
            .enumerate()
            .map(|(x, f)| f.normalized(source.stalk(x), target.stalk(x)))
            .collect();
        SheafMap { source, target, comps }
    }

    /// Stalkwise quasi-isomorphism.
    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_acyclic()
    }
}
