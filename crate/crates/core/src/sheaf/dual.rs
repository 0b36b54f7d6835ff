use std::collections::BTreeMap;

use crate::linalg::{ChainMap, Matrix};
use crate::space::PointSet;

use super::functors::derived_hom_nerves;
use super::{derived_tensor, DegreeWindow, SheafComplex, SheafError, SheafMap};

#[derive(Clone, Debug)]
pub struct Dualizability {
    pub dualizable: bool,
    /// `K^∨ = RHom(K, Λ)`.
    pub dual: SheafComplex,
    /// `K ⊗ K^∨ → RHom(K, K)`.
    pub evaluation: SheafMap,
    /// Cone of the evaluation map.
    pub defect: SheafComplex,
    /// Points where the evaluation map is not a quasi-isomorphism.
    pub failing: PointSet,
}

/// Tests whether `a ⊗ φ ↦ (σ ↦ ρ(a)·φ(σ))` is a quasi-isomorphism.
pub fn is_dualizable(k: &SheafComplex) -> Result<Dualizability, SheafError> {
    let window = DegreeWindow::default();
    let m = k.space();
    let ring = k.ring();
    let unit = SheafComplex::unit(m, ring);
    let (dual, dual_nerves) = derived_hom_nerves(k, &unit, window)?;
    let (end, end_nerves) = derived_hom_nerves(k, k, window)?;
    let source = derived_tensor(k, &dual)?;
    let mut comps = Vec::with_capacity(m.len());
    for x in m.points() {
        let (kx, dx) = (k.stalk(x), dual.stalk(x));
        let (dn, en) = (&dual_nerves[x], &end_nerves[x]);
        let t = source.stalk(x);
        let mut maps = BTreeMap::new();
        for total in t.degrees() {
            let mut f = Matrix::zeros(ring, end.stalk(x).rank(total), t.rank(total));
            let mut tensor_offset = 0;
            for p in kx.degrees() {
                let e = total - p;
                let width = dx.rank(e);
                if kx.rank(p) * width == 0 {
                    continue;
                }
                for beta in dn.layout.get(&e).into_iter().flatten() {
                    let chain = &dn.chains[beta.chain];
                    let n = chain.len() as i32 - 1;
                    let last = *chain.last().unwrap();
                    let Some((_, target)) = en.block(chain, beta.q, p) else { continue };
                    let rho = k.gen(x, last).component(p, kx, k.stalk(last));
                    let sign = ring.from_i64(if (p * n).rem_euclid(2) == 0 { 1 } else { -1 });
                    for i in 0..kx.rank(p) {
                        for j in 0..beta.cols {
                            let col = tensor_offset + i * width + beta.offset + j;
                            for a in 0..rho.rows() {
                                let row = target.offset + a * beta.cols + j;
                                f[(row, col)] = ring.mul(&sign, &rho[(a, i)]);
                            }
                        }
                    }
                }
                tensor_offset += kx.rank(p) * width;
            }
            maps.insert(total, f);
        }
        comps.push(ChainMap::from_components(ring, maps));
    }
    let evaluation = SheafMap::new(source, end, comps)?;
    let defect = evaluation.cone();
    let failing = defect.support();
    Ok(Dualizability { dualizable: failing.is_empty(), dual, evaluation, defect, failing })
}
