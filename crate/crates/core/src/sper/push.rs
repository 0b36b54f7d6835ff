
use super::algebraic::{real_roots, AlgNumber};
use super::cells::{separate, CellMap, LineFunction, SperConstructible};
use super::formula::{from_formula, Formula};
use super::point::{PolyMap, SperPoint};
use super::poly::Poly;
use super::SperError;
use crate::k0::{global_euler, realize};
use crate::linalg::{K0Class, ScalarRing};

/// `V ∘ p` on the cells cut out by the preimages of the roots. Each new
/// root is tagged with the root it maps onto, so point cells never need
/// the image computed.
pub fn pullback_cells<V: Clone + PartialEq>(p: &PolyMap, s: &CellMap<V>) -> CellMap<V> {
    let mut tagged: Vec<(AlgNumber, usize)> = Vec::new();
    for (i, a) in s.roots().iter().enumerate() {
        let pre = real_roots(&a.poly().compose(p.poly())).expect("nonconstant composite");
        tagged.extend(pre.into_iter().filter(|x| p.maps_onto(x, a)).map(|x| (x, i)));
    }
    tagged.sort_by(|x, y| x.0.compare(&y.0));
    let image: Vec<usize> = tagged.iter().map(|t| t.1).collect();
    let frame: CellMap<()> = CellMap::new(tagged.into_iter().map(|t| t.0).collect(), vec![(); 2 * image.len() + 1]);
    let values = (0..frame.cell_count())
        .map(|c| {
            if c % 2 == 1 {
                s.values()[2 * image[c / 2] + 1].clone()
            } else {
                let r = frame.interval_sample(c / 2, 1, 2);
                s.value_at(&SperPoint::rational(&p.poly().eval(&r))).clone()
            }
        })
        .collect();
    CellMap::new(frame.roots().to_vec(), values).normalized()
}

/// `p⁻¹(S)`, computed through the cells of `S`.
pub fn preimage_set(p: &PolyMap, s: &SperConstructible) -> SperConstructible {
    pullback_cells(p, s)
}

/// `p⁻¹` of the set defined by `phi`, by substituting `p` into its atoms.
pub fn preimage_formula(p: &PolyMap, phi: &Formula) -> SperConstructible {
    from_formula(&phi.substitute(p.poly()))
}

/// `ψ ∘ p`.
pub fn pull_cons(p: &PolyMap, psi: &LineFunction) -> LineFunction {
    pullback_cells(p, psi)
}

/// The real points of `p⁻¹(b)`.
fn fiber(p: &PolyMap, b: &AlgNumber) -> Vec<AlgNumber> {
    match b.as_rational() {
        Some(r) => {
            let f = p.poly().scale(r.denom()).sub(&Poly::constant(r.numer().clone()));
            real_roots(&f).expect("nonconstant")
        }
        None => real_roots(&b.poly().compose(p.poly()))
            .expect("nonconstant")
            .into_iter()
            .filter(|x| p.maps_onto(x, b))
            .collect(),
    }
}

fn fiber_sum(p: &PolyMap, phi: &LineFunction, b: &AlgNumber) -> i64 {
    fiber(p, b).iter().map(|x| *phi.value_at(&SperPoint::Alg(x.clone()))).sum()
}

/// Euler pushforward `y ↦ Σ_{p(x) = y} φ(x)` along a finite map, on the
/// cells of the images of the roots of `φ` and of the critical points.
pub fn push_cons(p: &PolyMap, phi: &LineFunction) -> Result<LineFunction, SperError> {
    let crit = real_roots(&p.poly().derivative()).unwrap_or_default();
    let images: Vec<AlgNumber> = phi.roots().iter().chain(&crit).map(|a| p.image_of(a)).collect();
    let roots = separate(images);
    let frame: LineFunction = CellMap::new(roots.clone(), vec![0; 2 * roots.len() + 1]);
    let mut values = Vec::with_capacity(frame.cell_count());
    for c in 0..frame.cell_count() {
        let v = match frame.sample(c) {
            SperPoint::Alg(b) => fiber_sum(p, phi, &b),
            _ => unreachable!("samples are algebraic points"),
        };
        if c % 2 == 0 {
            for (num, den) in [(1, 3), (2, 3)] {
                let r = frame.interval_sample(c / 2, num, den);
                let w = fiber_sum(p, phi, &AlgNumber::from_rational(&r));
                if w != v {
                    return Err(SperError::InconsistentSamples(format!(
                        "cell {c}: {v} at the midpoint, {w} at {r}"
                    )));
                }
            }
        }
        values.push(v);
    }
    Ok(CellMap::new(roots, values).normalized())
}

/// `χ(RΓ(ℝ, K))` for a complex realizing `φ` on its cell space.
pub fn line_euler(phi: &LineFunction) -> K0Class {
    global_euler(&realize(&phi.to_cons(), ScalarRing::Integers))
}

