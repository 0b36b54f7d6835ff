use std::collections::BTreeMap;

use crate::linalg::{les_exact, ChainMap, Matrix};
use crate::space::{Point, PointSet};

use super::{i_star, j_shriek, SheafComplex, SheafError, SheafMap};

/// `A --u--> B --v--> C --w--> A[1]` with `C` the mapping cone of `u`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub a: SheafComplex,
    pub b: SheafComplex,
    pub c: SheafComplex,
    pub u: SheafMap,
    pub v: SheafMap,
    pub w: SheafMap,
}

/// First failure of stalkwise exactness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleDefect {
    pub point: Point,
    pub position: &'static str,
    pub degree: i32,
}

impl Triangle {
    pub fn from_map(u: SheafMap) -> Triangle {
        let c = u.cone();
        let v = u.cone_inclusion(&c);
        let w = u.cone_projection(&c);
        Triangle { a: u.source().clone(), b: u.target().clone(), c, u, v, w }
    }

    /// Long exact homology sequence at every stalk.
    pub fn check_exact(&self) -> Result<(), TriangleDefect> {
        for x in self.a.space().points() {
            les_exact(
                (self.a.stalk(x), self.b.stalk(x), self.c.stalk(x)),
                self.u.component(x),
                self.v.component(x),
                self.w.component(x),
            )
            .map_err(|d| TriangleDefect { point: x, position: d.position, degree: d.degree })?;
        }
        Ok(())
    }
}

/// `j_!j^*K → K → Cone ≃ i_*i^*K`, with the explicit comparison from the
/// cone to `i_*i^*K`.
#[derive(Clone, Debug)]
pub struct LocalizationTriangle {
    pub triangle: Triangle,
    /// `i_*i^*K`.
    pub closed_part: SheafComplex,
    /// Stalkwise quasi-isomorphism `Cone → i_*i^*K`.
    pub certificate: SheafMap,
}

pub fn localization_triangle(k: &SheafComplex, z: &PointSet) -> Result<LocalizationTriangle, SheafError> {
    let m = k.space();
    if !m.is_closed(z) {
        return Err(SheafError::NotClosed);
    }
    let ring = k.ring();
    let u = m.complement(z);
    let open_part = j_shriek(m, &u, &k.restrict(&u, "U"))?;
    let closed_part = i_star(m, z, &k.restrict(z, "Z"))?;
    let inc = m
        .points()
        .map(|x| if u.contains(&x) { ChainMap::identity(k.stalk(x)) } else { ChainMap::zero(ring) })
        .collect();
    let triangle = Triangle::from_map(SheafMap::new(open_part, k.clone(), inc)?);
    let comps = m
        .points()
        .map(|x| {
            let (a, b) = (triangle.a.stalk(x), triangle.b.stalk(x));
            let mut out = BTreeMap::new();
            if z.contains(&x) {
                for n in triangle.c.stalk(x).degrees() {
                    let mut f = Matrix::zeros(ring, b.rank(n), a.rank(n + 1) + b.rank(n));
                    f.set_block(0, a.rank(n + 1), &Matrix::identity(ring, b.rank(n)));
                    out.insert(n, f);
                }
            }
            ChainMap::from_components(ring, out)
        })
        .collect();
    let certificate = SheafMap::new(triangle.c.clone(), closed_part.clone(), comps)?;
    Ok(LocalizationTriangle { triangle, closed_part, certificate })
}
