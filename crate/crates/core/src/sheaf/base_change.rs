use std::collections::BTreeMap;

use crate::linalg::{ChainMap, Matrix};
use crate::space::{fiber_product, FiberProduct, MonotoneMap, PointSet, SubsetFlags};

use super::functors::pushforward_nerves;
use super::{pullback, SheafComplex, SheafError, SheafMap};

/// `X' = X ×_S T` over `f : X → S` and `p : T → S`.
#[derive(Clone, Debug)]
pub struct CartesianSquare {
    pub f: MonotoneMap,
    pub p: MonotoneMap,
    pub product: FiberProduct,
}

impl CartesianSquare {
    pub fn new(f: &MonotoneMap, p: &MonotoneMap) -> Result<Self, SheafError> {
        let product = fiber_product(f, p)?;
        Ok(CartesianSquare { f: f.clone(), p: p.clone(), product })
    }

    /// Accepts a supplied square only if it is the fiber product.
    pub fn from_parts(f: &MonotoneMap, p: &MonotoneMap, product: FiberProduct) -> Result<Self, SheafError> {
        let expected = fiber_product(f, p)?;
        let same = expected.space == product.space
            && expected.to_first == product.to_first
            && expected.to_second == product.to_second;
        if !same {
            return Err(SheafError::NotCartesian);
        }
        Ok(CartesianSquare { f: f.clone(), p: p.clone(), product })
    }
}

#[derive(Clone, Debug)]
pub struct BaseChange {
    /// `p^*Rf_*K → Rg_*q^*K` on `T`.
    pub comparison: SheafMap,
    pub iso: bool,
    pub defect: SheafComplex,
}

/// The base-change map, built from pulling cochains back along
/// `q : X' → X`; chains collapsing under `q` receive zero.
pub fn base_change_compare(square: &CartesianSquare, k: &SheafComplex) -> Result<BaseChange, SheafError> {
    let (f, p) = (&square.f, &square.p);
    let (q, g) = (&square.product.to_first, &square.product.to_second);
    let (push, src_nerves) = pushforward_nerves(f, k)?;
    let lhs = pullback(p, &push)?;
    let (rhs, tgt_nerves) = pushforward_nerves(g, &pullback(q, k)?)?;
    let ring = k.ring();
    let comps = p
        .source()
        .points()
        .map(|t| {
            let (src, tgt) = (&src_nerves[p.apply(t)], &tgt_nerves[t]);
            let mut maps = BTreeMap::new();
            for deg in src.complex.degrees() {
                maps.insert(deg, Matrix::zeros(ring, tgt.complex.rank(deg), src.complex.rank(deg)));
            }
            for (&deg, blocks) in &tgt.layout {
                for b in blocks {
                    let image: Vec<usize> = tgt.chains[b.chain].iter().map(|&x| q.apply(x)).collect();
                    if image.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    if let Some((_, s)) = src.block(&image, b.q, b.r) {
                        let m = maps.get_mut(&deg).expect("degree present in source");
                        m.set_block(b.offset, s.offset, &Matrix::identity(ring, b.size()));
                    }
                }
            }
            ChainMap::from_components(ring, maps)
        })
        .collect();
    let comparison = SheafMap::new(lhs, rhs, comps)?;
    let defect = comparison.cone();
    Ok(BaseChange { iso: defect.is_acyclic(), comparison, defect })
}

#[derive(Clone, Debug)]
pub struct BaseChangeLocus {
    pub locus: PointSet,
    pub flags: SubsetFlags,
    /// Verdict per point of `S`.
    pub verdicts: Vec<bool>,
}

/// Points `s` of `S` where base change along `{s} → S` is an isomorphism.
pub fn base_change_locus(f: &MonotoneMap, k: &SheafComplex) -> Result<BaseChangeLocus, SheafError> {
    let s = f.target();
    let mut verdicts = Vec::with_capacity(s.len());
    for x in s.points() {
        let inc = MonotoneMap::inclusion(s, &PointSet::from([x]), s.id(x));
        verdicts.push(base_change_compare(&CartesianSquare::new(f, &inc)?, k)?.iso);
    }
    let locus: PointSet = s.points().filter(|&x| verdicts[x]).collect();
    let flags = s.classify_subset(&locus)?;
    Ok(BaseChangeLocus { locus, flags, verdicts })
}
