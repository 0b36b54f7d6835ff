use crate::linalg::{ChainMap, FreeChainComplex};
use crate::space::{FinSpec, MonotoneMap, PointSet};

use super::nerve::{coaugmentation, HomNerve};
use super::{DegreeWindow, SheafComplex, SheafError, SheafMap};

/// `RΓ(M, K)` as the cochain complex of the nerve with coefficients in `K`.
pub fn rgamma(k: &SheafComplex) -> FreeChainComplex {
    rgamma_on(k, &k.space().all())
}

/// `RΓ(S, K|_S)` for any subset `S`.
pub fn rgamma_on(k: &SheafComplex, s: &PointSet) -> FreeChainComplex {
    sections_nerve(k, s).complex
}

fn sections_nerve(k: &SheafComplex, s: &PointSet) -> HomNerve {
    let unit = SheafComplex::unit(k.space(), k.ring());
    HomNerve::build(k.space(), s, &unit, k)
}

fn same_poset(a: &FinSpec, b: &FinSpec) -> bool {
    a.ids() == b.ids() && a.points().all(|x| a.points().all(|y| a.leq(x, y) == b.leq(x, y)))
}

impl SheafComplex {
    /// Restriction to a subset, living on the induced subspace.
    pub fn restrict(&self, s: &PointSet, name: &str) -> SheafComplex {
        let inc = MonotoneMap::inclusion(self.space(), s, name);
        pullback(&inc, self).expect("restriction along an inclusion")
    }

    /// Extension by zero from a subset on which the sheaf lives.
    fn extend_by_zero(m: &FinSpec, s: &PointSet, k: &SheafComplex) -> Result<SheafComplex, SheafError> {
        let (sub, emb) = m.subspace(s, k.space().name());
        if !same_poset(&sub, k.space()) {
            return Err(SheafError::SpaceMismatch);
        }
        let ring = k.ring();
        let mut local = vec![None; m.len()];
        for (i, &x) in emb.iter().enumerate() {
            local[x] = Some(i);
        }
        let stalks = m
            .points()
            .map(|x| match local[x] {
                Some(i) => k.stalk(i).clone(),
                None => FreeChainComplex::zero(ring),
            })
            .collect();
        Ok(SheafComplex::from_parts(m.clone(), ring, stalks, |x, y| match (local[x], local[y]) {
            (Some(a), Some(b)) => k.gen(a, b).clone(),
            _ => ChainMap::zero(ring),
        }))
    }
}

/// `f^*K`: stalk at `x` is `K_{f(x)}`.
pub fn pullback(f: &MonotoneMap, k: &SheafComplex) -> Result<SheafComplex, SheafError> {
    if f.target() != k.space() {
        return Err(SheafError::SpaceMismatch);
    }
    let stalks = f.source().points().map(|x| k.stalk(f.apply(x)).clone()).collect();
    Ok(SheafComplex::from_parts(f.source().clone(), k.ring(), stalks, |x, y| {
        k.gen(f.apply(x), f.apply(y)).clone()
    }))
}

pub(crate) fn pushforward_nerves(f: &MonotoneMap, k: &SheafComplex) -> Result<(SheafComplex, Vec<HomNerve>), SheafError> {
    if f.source() != k.space() {
        return Err(SheafError::SpaceMismatch);
    }
    let s = f.target();
    let nerves: Vec<HomNerve> = s.points().map(|q| sections_nerve(k, &f.preimage(&s.up(q)))).collect();
    let stalks = nerves.iter().map(|n| n.complex.clone()).collect();
    let push = SheafComplex::from_parts(s.clone(), k.ring(), stalks, |x, y| nerves[x].projection(&nerves[y]));
    Ok((push, nerves))
}

/// `Rf_*K`: stalk at `q` is `RΓ(f⁻¹(↑q), K)`, generization is restriction.
pub fn pushforward(f: &MonotoneMap, k: &SheafComplex) -> Result<SheafComplex, SheafError> {
    pushforward_nerves(f, k).map(|(p, _)| p)
}

/// Unit of adjunction `K → Rf_*f^*K` for `K` on the target of `f`.
pub fn unit_map(f: &MonotoneMap, k: &SheafComplex) -> Result<SheafMap, SheafError> {
    let pulled = pullback(f, k)?;
    let (push, nerves) = pushforward_nerves(f, &pulled)?;
    let comps = f
        .target()
        .points()
        .map(|q| coaugmentation(&nerves[q], &pulled, k.stalk(q), |y| k.gen(q, f.apply(y)).clone()))
        .collect();
    Ok(SheafMap::normalize(k.clone(), push, comps))
}

/// Comparison `R(g∘f)_*K → Rg_*Rf_*K`, a quasi-isomorphism.
pub fn pushforward_comparison(
    f: &MonotoneMap,
    g: &MonotoneMap,
    k: &SheafComplex,
) -> Result<SheafMap, SheafError> {
    let gf = g.after(f)?;
    let (direct, direct_nerves) = pushforward_nerves(&gf, k)?;
    let (mid, mid_nerves) = pushforward_nerves(f, k)?;
    let (two_step, outer) = pushforward_nerves(g, &mid)?;
    let comps = g
        .target()
        .points()
        .map(|r| {
            coaugmentation(&outer[r], &mid, direct.stalk(r), |s| {
                direct_nerves[r].projection(&mid_nerves[s])
            })
        })
        .collect();
    Ok(SheafMap::normalize(direct, two_step, comps))
}

/// `j_!K` for `K` on the open subspace `U`.
pub fn j_shriek(m: &FinSpec, u: &PointSet, k: &SheafComplex) -> Result<SheafComplex, SheafError> {
    if !m.is_open(u) {
        return Err(SheafError::NotOpen);
    }
    SheafComplex::extend_by_zero(m, u, k)
}

/// `i_*K` for `K` on the closed subspace `Z`; extension by zero, since
/// `↑x ∩ Z` is empty for `x ∉ Z`.
pub fn i_star(m: &FinSpec, z: &PointSet, k: &SheafComplex) -> Result<SheafComplex, SheafError> {
    if !m.is_closed(z) {
        return Err(SheafError::NotClosed);
    }
    SheafComplex::extend_by_zero(m, z, k)
}

/// `Ri^!K` on `Z`, the restriction of the fiber of `K → Rj_*j^*K`.
pub fn i_upper_shriek(k: &SheafComplex, z: &PointSet) -> Result<SheafComplex, SheafError> {
    let m = k.space();
    if !m.is_closed(z) {
        return Err(SheafError::NotClosed);
    }
    let j = MonotoneMap::inclusion(m, &m.complement(z), "U");
    let u = unit_map(&j, k)?;
    Ok(u.cone().shift(-1).restrict(z, "Z"))
}

pub fn derived_tensor(k: &SheafComplex, l: &SheafComplex) -> Result<SheafComplex, SheafError> {
    derived_tensor_in(k, l, DegreeWindow::default())
}

/// Stalkwise tensor product; stalks are free so no resolution is needed.
pub fn derived_tensor_in(
    k: &SheafComplex,
    l: &SheafComplex,
    window: DegreeWindow,
) -> Result<SheafComplex, SheafError> {
    k.compatible(l)?;
    let stalks = k
        .space()
        .points()
        .map(|x| k.stalk(x).tensor(l.stalk(x)))
        .collect::<Result<Vec<_>, _>>()?;
    let t = SheafComplex::from_parts(k.space().clone(), k.ring(), stalks, |x, y| {
        ChainMap::tensor(k.gen(x, y), (k.stalk(x), k.stalk(y)), l.gen(x, y), (l.stalk(x), l.stalk(y)))
    });
    window.check(&t)?;
    Ok(t)
}

pub fn derived_hom(k: &SheafComplex, l: &SheafComplex) -> Result<SheafComplex, SheafError> {
    derived_hom_in(k, l, DegreeWindow::default())
}

/// Internal `RHom`: stalk at `x` is `RHom(K|↑x, L|↑x)`.
pub fn derived_hom_in(
    k: &SheafComplex,
    l: &SheafComplex,
    window: DegreeWindow,
) -> Result<SheafComplex, SheafError> {
    derived_hom_nerves(k, l, window).map(|(h, _)| h)
}

pub(crate) fn derived_hom_nerves(
    k: &SheafComplex,
    l: &SheafComplex,
    window: DegreeWindow,
) -> Result<(SheafComplex, Vec<HomNerve>), SheafError> {
    k.compatible(l)?;
    let m = k.space();
    let nerves: Vec<HomNerve> = m.points().map(|x| HomNerve::build(m, &m.up(x), k, l)).collect();
    let stalks = nerves.iter().map(|n| n.complex.clone()).collect();
    let h = SheafComplex::from_parts(m.clone(), k.ring(), stalks, |x, y| nerves[x].projection(&nerves[y]));
    window.check(&h)?;
    Ok((h, nerves))
}

