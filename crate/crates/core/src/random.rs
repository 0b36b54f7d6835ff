//! Seeded generators for randomized checks.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::k0::ConsFunction;
use crate::linalg::{kernel, ChainMap, FreeChainComplex, Matrix, ScalarRing};
use crate::sheaf::{SheafComplex, SheafMap};
use crate::space::{FinSpec, MonotoneMap, Point, PointSet};
use crate::sper::{real_roots, AlgNumber, CellMap, Formula, LineFunction, Poly, Relation};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A poset on `1..=max_points` points; each pair `i < j` is related with
/// probability `density`.
pub fn poset(rng: &mut impl Rng, max_points: usize, density: f64) -> FinSpec {
    let n = rng.gen_range(1..=max_points.max(1));
    let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    FinSpec::build("rand", &ids, &rel).expect("index order is acyclic")
}

pub fn subset(rng: &mut impl Rng, space: &FinSpec) -> PointSet {
    space.points().filter(|_| rng.gen_bool(0.5)).collect()
}

pub fn closed_subset(rng: &mut impl Rng, space: &FinSpec) -> PointSet {
    let s = subset(rng, space);
    space.down_closure(&s)
}

pub fn open_subset(rng: &mut impl Rng, space: &FinSpec) -> PointSet {
    let s = subset(rng, space);
    space.up_closure(&s)
}

pub fn matrix(rng: &mut impl Rng, ring: ScalarRing, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| ring.from_i64(rng.gen_range(-bound..=bound)))
}

pub fn ring(rng: &mut impl Rng) -> ScalarRing {
    match rng.gen_range(0..4) {
        0 | 1 => ScalarRing::Integers,
        2 => ScalarRing::Rationals,
        _ => ScalarRing::PrimeField([2, 3, 5][rng.gen_range(0..3)]),
    }
}

/// `Λ` on the closed set `↓z`, zero off it.
fn closed_constant(space: &FinSpec, ring: ScalarRing, z: Point) -> SheafComplex {
    let lam = FreeChainComplex::concentrated(ring, 0, 1);
    let down = space.down(z);
    let stalks = space
        .points()
        .map(|y| if down.contains(&y) { lam.clone() } else { FreeChainComplex::zero(ring) })
        .collect();
    SheafComplex::from_parts(space.clone(), ring, stalks, |a, b| {
        if down.contains(&a) && down.contains(&b) {
            ChainMap::identity(&lam)
        } else {
            ChainMap::zero(ring)
        }
    })
}

fn sum_all(space: &FinSpec, ring: ScalarRing, parts: Vec<SheafComplex>) -> SheafComplex {
    parts
        .into_iter()
        .fold(SheafComplex::zero(space, ring), |acc, k| acc.direct_sum(&k).expect("same space"))
}

/// A random map `⊕ P_{x_i} → ⊕ Λ_{↓z_j}`; entry `(j, i)` may be nonzero
/// only when `x_i ≤ z_j`.
pub fn sheaf_map(rng: &mut impl Rng, space: &FinSpec, ring: ScalarRing) -> SheafMap {
    let n = space.len();
    if n == 0 {
        return SheafMap::identity(&SheafComplex::zero(space, ring));
    }
    let xs: Vec<Point> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
    let zs: Vec<Point> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
    let coeff: Vec<Vec<i64>> = zs
        .iter()
        .map(|&z| xs.iter().map(|&x| if space.leq(x, z) { rng.gen_range(-3..=3) } else { 0 }).collect())
        .collect();
    let src = sum_all(space, ring, xs.iter().map(|&x| SheafComplex::cell_projective(space, ring, x)).collect());
    let tgt = sum_all(space, ring, zs.iter().map(|&z| closed_constant(space, ring, z)).collect());
    let comps = space
        .points()
        .map(|y| {
            let rows: Vec<usize> = (0..zs.len()).filter(|&j| space.leq(y, zs[j])).collect();
            let cols: Vec<usize> = (0..xs.len()).filter(|&i| space.leq(xs[i], y)).collect();
            let m = Matrix::from_fn(ring, rows.len(), cols.len(), |a, b| ring.from_i64(coeff[rows[a]][cols[b]]));
            ChainMap::from_components(ring, BTreeMap::from([(0, m)]))
        })
        .collect();
    SheafMap::new(src, tgt, comps).expect("natural by construction")
}

/// A small random bounded complex: a direct sum of shifted cell projectives,
/// closed constants, point sheaves and cones of maps between them.
pub fn sheaf(rng: &mut impl Rng, space: &FinSpec, ring: ScalarRing) -> SheafComplex {
    let n = space.len();
    if n == 0 {
        return SheafComplex::zero(space, ring);
    }
    let lam = FreeChainComplex::concentrated(ring, 0, 1);
    let parts = (0..rng.gen_range(1..=2))
        .map(|_| {
            let x = rng.gen_range(0..n);
            let k = match rng.gen_range(0..5) {
                0 => SheafComplex::cell_projective(space, ring, x),
                1 => closed_constant(space, ring, x),
                2 => SheafComplex::point_extension(space, x, &lam),
                _ => sheaf_map(rng, space, ring).cone(),
            };
            k.shift(rng.gen_range(-1..=1))
        })
        .collect();
    sum_all(space, ring, parts)
}

pub fn cons_function(rng: &mut impl Rng, space: &FinSpec, bound: i64) -> ConsFunction {
    ConsFunction::new(space.clone(), space.points().map(|_| rng.gen_range(-bound..=bound)).collect())
}

/// A monotone map with discrete fibers: source points `(y,i)` over a random
/// target, related only over strictly related targets.
pub fn discrete_fiber_map(rng: &mut impl Rng, max_target: usize) -> MonotoneMap {
    let target = poset(rng, max_target, 0.4);
    let mut ids = Vec::new();
    let mut over = Vec::new();
    for y in target.points() {
        for i in 0..rng.gen_range(0..=2) {
            ids.push(format!("{}.{i}", target.id(y)));
            over.push(y);
        }
    }
    let mut rel = Vec::new();
    for a in 0..ids.len() {
        for b in 0..ids.len() {
            if target.lt(over[a], over[b]) && rng.gen_bool(0.6) {
                rel.push((ids[a].clone(), ids[b].clone()));
            }
        }
    }
    let source = FinSpec::build("src", &ids, &rel).expect("lies over an order");
    MonotoneMap::new(source, target, over).expect("monotone by construction")
}

pub fn poly(rng: &mut impl Rng, max_degree: usize, bound: i64) -> Poly {
    let d = rng.gen_range(1..=max_degree.max(1));
    let mut c: Vec<i64> = (0..=d).map(|_| rng.gen_range(-bound..=bound)).collect();
    if c[d] == 0 {
        c[d] = 1;
    }
    Poly::from_i64(&c)
}

pub fn relation(rng: &mut impl Rng) -> Relation {
    Relation::ALL[rng.gen_range(0..6)]
}

pub fn formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return Formula::atom(poly(rng, 3, 4), relation(rng));
    }
    match rng.gen_range(0..3) {
        0 => formula(rng, depth - 1).not(),
        1 => formula(rng, depth - 1).and(formula(rng, depth - 1)),
        _ => formula(rng, depth - 1).or(formula(rng, depth - 1)),
    }
}

/// A constructible function cut at the real roots of a random polynomial.
pub fn line_function(rng: &mut impl Rng, bound: i64) -> LineFunction {
    let roots: Vec<AlgNumber> = real_roots(&poly(rng, 3, 5)).expect("nonzero");
    let values = (0..2 * roots.len() + 1).map(|_| rng.gen_range(-bound..=bound)).collect();
    CellMap::new(roots, values)
}

/// A monotone map `source → target`, if the random greedy assignment
/// along a linear extension succeeds.
pub fn monotone_map_between(rng: &mut impl Rng, source: &FinSpec, target: &FinSpec) -> Option<MonotoneMap> {
    let mut assignment: Vec<Option<Point>> = vec![None; source.len()];
    for x in source.linear_extension() {
        let below: Vec<Point> = source.points().filter(|&z| source.lt(z, x)).collect();
        let cands: Vec<Point> = target
            .points()
            .filter(|&y| below.iter().all(|&z| target.leq(assignment[z].expect("earlier"), y)))
            .collect();
        if cands.is_empty() {
            return None;
        }
        assignment[x] = Some(cands[rng.gen_range(0..cands.len())]);
    }
    let assignment = assignment.into_iter().map(|y| y.expect("assigned")).collect();
    Some(MonotoneMap::new(source.clone(), target.clone(), assignment).expect("monotone by construction"))
}

/// A random monotone map between random posets.
pub fn monotone_map(rng: &mut impl Rng, max_source: usize, max_target: usize) -> MonotoneMap {
    loop {
        let source = poset(rng, max_source, 0.35);
        let target = poset(rng, max_target, 0.4);
        if let Some(f) = monotone_map_between(rng, &source, &target) {
            return f;
        }
    }
}

/// A cochain complex with at most three nonzero terms of rank ≤ 3, starting
/// in degree -1, 0 or 1; the second differential factors through the left
/// kernel of the first.
pub fn complex(rng: &mut impl Rng, ring: ScalarRing, bound: i64) -> FreeChainComplex {
    let lo = rng.gen_range(-1..=1);
    let r: Vec<usize> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
    let a = matrix(rng, ring, r[1], r[0], bound);
    let left = kernel(&a.transpose()).transpose();
    let b = matrix(rng, ring, r[2], left.rows(), 2).mul(&left);
    let ranks = BTreeMap::from([(lo, r[0]), (lo + 1, r[1]), (lo + 2, r[2])]);
    let diffs = BTreeMap::from([(lo, a), (lo + 1, b)]);
    FreeChainComplex::from_maps(ring, &ranks, &diffs).expect("d∘d = 0 by construction")
}
