use std::collections::BTreeMap;

use crate::linalg::{ChainMap, FreeChainComplex, Matrix};
use crate::space::{Point, PointSet};

use super::{j_shriek, SheafComplex, SheafError, SheafMap, Triangle};

/// Filtration of `K` by extensions by zero from the opens
/// `V_k` = the last `k` points of an admissible order.
#[derive(Clone, Debug)]
pub struct CellDecomposition {
    /// Nonzero stalks `(x, K_x)`, in admissible order.
    pub pieces: Vec<(Point, FreeChainComplex)>,
    /// `K_{V_{k-1}} → K_{V_k} → Cone`, one per nonzero piece, in filtration
    /// order (generic points first).
    pub tower: Vec<Triangle>,
    /// Quasi-isomorphisms from each cone to `j_{x!}K_x`.
    pub certificates: Vec<SheafMap>,
    /// The point sheaves `j_{x!}K_x`, aligned with `tower`.
    pub point_sheaves: Vec<SheafComplex>,
}

pub fn cell_decompose(k: &SheafComplex) -> Result<CellDecomposition, SheafError> {
    let m = k.space();
    let ring = k.ring();
    let order = m.admissible_order().points();
    let pieces = order
        .iter()
        .filter(|&&x| !k.stalk(x).is_zero())
        .map(|&x| (x, k.stalk(x).clone()))
        .collect();
    let mut tower = Vec::new();
    let mut certificates = Vec::new();
    let mut point_sheaves = Vec::new();
    let mut open = PointSet::new();
    let mut prev = SheafComplex::zero(m, ring);
    for &x in order.iter().rev() {
        open.insert(x);
        if k.stalk(x).is_zero() {
            continue;
        }
        let next = j_shriek(m, &open, &k.restrict(&open, "V"))?;
        let inc = m
            .points()
            .map(|y| {
                if open.contains(&y) && y != x {
                    ChainMap::identity(k.stalk(y))
                } else {
                    ChainMap::zero(ring)
                }
            })
            .collect();
        let tri = Triangle::from_map(SheafMap::new(prev, next.clone(), inc)?);
        let piece = SheafComplex::point_extension(m, x, k.stalk(x));
        let comps = m
            .points()
            .map(|y| {
                let mut out = BTreeMap::new();
                if y == x {
                    for n in tri.c.stalk(y).degrees() {
                        let (a, b) = (tri.a.stalk(y), tri.b.stalk(y));
                        let mut f = Matrix::zeros(ring, b.rank(n), a.rank(n + 1) + b.rank(n));
                        f.set_block(0, a.rank(n + 1), &Matrix::identity(ring, b.rank(n)));
                        out.insert(n, f);
                    }
                }
                ChainMap::from_components(ring, out)
            })
            .collect();
        certificates.push(SheafMap::new(tri.c.clone(), piece.clone(), comps)?);
        point_sheaves.push(piece);
        tower.push(tri);
        prev = next;
    }
    Ok(CellDecomposition { pieces, tower, certificates, point_sheaves })
}
