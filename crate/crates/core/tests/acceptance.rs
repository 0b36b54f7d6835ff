//! End-to-end acceptance suite; prints one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use conspec::k0::{chi, global_euler, realize, ConsFunction};
use conspec::linalg::{snf, FreeChainComplex, Matrix, ScalarRing};
use conspec::random;
use conspec::sheaf::{
    base_change_compare, base_change_locus, cell_decompose, localization_triangle, pushforward, rgamma,
    CartesianSquare, SheafComplex,
};
use conspec::space::{Dimension, FinSpec, MonotoneMap, PointSet};
use conspec::sper::{
    cell_poset, from_formula, push_cons, real_roots, sign_at, Formula, LineFunction, PolyMap, Poly, Relation,
    SperPoint,
};

const Z: ScalarRing = ScalarRing::Integers;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn homology_text(c: &FreeChainComplex) -> BTreeMap<i32, String> {
    c.homology().into_iter().filter(|(_, m)| !m.is_zero()).map(|(n, m)| (n, m.to_string())).collect()
}

fn pseudo_circle() -> FinSpec {
    FinSpec::build("P", &["a", "b", "x", "y"], &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")]).unwrap()
}

fn sierpinski() -> FinSpec {
    FinSpec::build("S", &["s", "eta"], &[("s", "eta")]).unwrap()
}

fn pseudo_circle_cohomology() -> Outcome {
    let h = homology_text(&rgamma(&SheafComplex::unit(&pseudo_circle(), Z)));
    let expected = BTreeMap::from([(0, "Z".to_string()), (1, "Z".to_string())]);
    ensure(h == expected, || format!("got {h:?}"))
}

/// Top degree carrying stalk cohomology.
fn top_stalk_degree(k: &SheafComplex) -> Option<i32> {
    k.stalks().iter().flat_map(|c| c.homology().into_iter().filter(|(_, m)| !m.is_zero()).map(|(n, _)| n)).max()
}

fn dimension_bound() -> Outcome {
    let mut rng = random::seeded(2);
    for trial in 0..200 {
        let space = random::poset(&mut rng, 7, 0.3);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let Dimension::Finite(d) = space.krull_dim() else { continue };
        let Some(b) = top_stalk_degree(&k) else { continue };
        let g = rgamma(&k);
        for n in g.degrees().filter(|&n| n > b + d as i32) {
            ensure(g.homology_at(n).is_zero(), || format!("trial {trial}: H^{n} nonzero, dim {d}, top {b}"))?;
        }
    }
    Ok(())
}

fn localization_exactness() -> Outcome {
    let mut rng = random::seeded(3);
    for trial in 0..300 {
        let space = random::poset(&mut rng, 5, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let z = random::closed_subset(&mut rng, &space);
        let loc = localization_triangle(&k, &z).map_err(|e| format!("trial {trial}: {e}"))?;
        loc.triangle.check_exact().map_err(|d| format!("trial {trial}: {d:?}"))?;
        ensure(loc.certificate.is_quasi_iso(), || format!("trial {trial}: certificate not a quasi-iso"))?;
    }
    Ok(())
}

fn euler_isomorphism() -> Outcome {
    let mut rng = random::seeded(4);
    for trial in 0..200 {
        let space = random::poset(&mut rng, 4, 0.4);
        let phi = random::cons_function(&mut rng, &space, 3);
        let back = chi(&realize(&phi, Z));
        ensure(back == phi, || format!("trial {trial}: {phi} came back as {back}"))?;
    }
    for trial in 0..100 {
        let space = random::poset(&mut rng, 5, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let cells = cell_decompose(&k).map_err(|e| format!("trial {trial}: {e}"))?;
        let total = cells.point_sheaves.iter().fold(ConsFunction::zero(&space), |acc, p| acc.add(&chi(p)));
        ensure(total == chi(&k), || format!("trial {trial}: pieces sum to {total}, chi is {}", chi(&k)))?;
    }
    Ok(())
}

fn factorization() -> Outcome {
    let mut rng = random::seeded(5);
    for trial in 0..100 {
        let space = random::poset(&mut rng, 5, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let lhs = global_euler(&k);
        let rhs = global_euler(&realize(&chi(&k), ring));
        ensure(lhs == rhs, || format!("trial {trial}: {lhs:?} vs {rhs:?}"))?;
    }
    Ok(())
}

fn base_change() -> Outcome {
    let s = sierpinski();
    let eta = PointSet::from([1]);
    let j = MonotoneMap::inclusion(&s, &eta, "U");
    let k = SheafComplex::unit(j.source(), Z);
    let closed = MonotoneMap::inclusion(&s, &PointSet::from([0]), "Z");
    let bc = base_change_compare(&CartesianSquare::new(&j, &closed).map_err(|e| e.to_string())?, &k)
        .map_err(|e| e.to_string())?;
    ensure(!bc.iso, || "closed-point square reported iso".into())?;
    let defect = homology_text(bc.defect.stalk(0));
    ensure(defect.values().eq(["Z"].iter()), || format!("defect homology {defect:?}"))?;
    let locus = base_change_locus(&j, &k).map_err(|e| e.to_string())?;
    ensure(locus.locus == eta && locus.flags.open, || format!("locus {:?}", locus.locus))?;
    let mut rng = random::seeded(6);
    for trial in 0..100 {
        let f = random::monotone_map(&mut rng, 4, 4);
        let u = random::open_subset(&mut rng, f.target());
        let p = MonotoneMap::inclusion(f.target(), &u, "U");
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, f.source(), ring);
        let square = CartesianSquare::new(&f, &p).map_err(|e| format!("trial {trial}: {e}"))?;
        let bc = base_change_compare(&square, &k).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(bc.iso, || format!("trial {trial}: open base change not iso"))?;
    }
    Ok(())
}

fn conservativity() -> Outcome {
    let mut rng = random::seeded(7);
    let mut done = 0;
    while done < 200 {
        let f = random::discrete_fiber_map(&mut rng, 4);
        if f.source().is_empty() {
            continue;
        }
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, f.source(), ring);
        if k.is_acyclic() {
            continue;
        }
        let push = pushforward(&f, &k).map_err(|e| format!("trial {done}: {e}"))?;
        ensure(!push.is_acyclic(), || format!("trial {done}: pushforward acyclic"))?;
        done += 1;
    }
    Ok(())
}

fn p(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

fn sturm() -> Outcome {
    let roots = real_roots(&p(&[0, -2, 0, 1])).map_err(|e| e.to_string())?;
    ensure(roots.len() == 3, || format!("{} roots of t^3 - 2t", roots.len()))?;
    ensure(roots[1].as_rational() == Some(BigRational::zero()), || "middle root not exactly 0".into())?;
    let quintic = (1..=5).fold(p(&[1]), |acc, r| acc.mul(&p(&[-r, 1])));
    let roots = real_roots(&quintic).map_err(|e| e.to_string())?;
    ensure(roots.len() == 5, || format!("{} roots of the quintic", roots.len()))?;
    for w in roots.windows(2) {
        ensure(w[0].hi() <= w[1].lo(), || format!("intervals overlap: {} {}", w[0], w[1]))?;
    }
    let sqrt2 = real_roots(&p(&[-2, 0, 1])).map_err(|e| e.to_string())?.pop().unwrap();
    let s = sign_at(&p(&[-2, 0, 1]), &SperPoint::CutPlus(sqrt2));
    ensure(s == 1, || format!("sign at the right cut of sqrt 2 is {s}"))
}

fn sper_cells() -> Outcome {
    let s = from_formula(&Formula::atom(p(&[-2, 0, 1]), Relation::Lt));
    ensure(s.included_cells().len() == 1, || format!("cells {:?}", s.included_cells()))?;
    let c = s.closure();
    let added: Vec<usize> = c.included_cells().into_iter().filter(|i| !s.included_cells().contains(i)).collect();
    ensure(added == vec![1, 3], || format!("closure added {added:?}"))?;
    let fence = cell_poset(s.roots().len());
    ensure(fence.krull_dim() == Dimension::Finite(1), || format!("dimension {}", fence.krull_dim()))?;
    let h = homology_text(&rgamma(&SheafComplex::unit(&fence, Z)));
    ensure(h == BTreeMap::from([(0, "Z".to_string())]), || format!("fence cohomology {h:?}"))
}

/// Number of real roots of `f - c` in `[-8, 8]`: exact zeros on the grid of
/// step 1/8 plus sign changes between adjacent nonzero grid values.
/// Independent of the cell machinery.
fn fiber_count(f: &Poly, c: &BigRational) -> i64 {
    let signs: Vec<i32> = (-64..=64)
        .map(|i| {
            let t = BigRational::new(BigInt::from(i), BigInt::from(8));
            let v = f.eval(&t) - c;
            if v.is_zero() {
                0
            } else if v.is_positive() {
                1
            } else {
                -1
            }
        })
        .collect();
    let zeros = signs.iter().filter(|&&s| s == 0).count();
    let changes = signs.windows(2).filter(|w| w[0] * w[1] < 0).count();
    (zeros + changes) as i64
}

fn euler_pushforward() -> Outcome {
    let one = LineFunction::constant(1);
    let sq = PolyMap::new(p(&[0, 0, 1])).map_err(|e| e.to_string())?;
    let pushed = push_cons(&sq, &one).map_err(|e| e.to_string())?;
    ensure(pushed.values() == [0, 1, 2], || format!("t^2 gives {:?}", pushed.values()))?;
    let f = p(&[0, -3, 0, 1]);
    let cubic = PolyMap::new(f.clone()).map_err(|e| e.to_string())?;
    let pushed = push_cons(&cubic, &one).map_err(|e| e.to_string())?;
    ensure(pushed.values() == [1, 2, 3, 2, 1], || format!("t^3 - 3t gives {:?}", pushed.values()))?;
    let cuts: Vec<_> = pushed.roots().iter().map(|r| r.as_rational()).collect();
    let two = BigRational::from_integer(BigInt::from(2));
    ensure(cuts == vec![Some(-two.clone()), Some(two)], || format!("cut points {cuts:?}"))?;
    for (v, c) in [(1, -3), (2, -2), (3, 0), (2, 2), (1, 3)] {
        let n = fiber_count(&f, &BigRational::from_integer(BigInt::from(c)));
        ensure(n == v, || format!("oracle count at {c}: {n}"))?;
    }
    Ok(())
}

fn smith_form() -> Outcome {
    let f = snf(&Matrix::from_i64(Z, &[&[4, 6], &[2, 2]]));
    ensure(f.diagonal() == vec![Z.from_i64(2), Z.from_i64(2)], || format!("diagonal {:?}", f.diagonal()))?;
    let mut rng = random::seeded(11);
    for trial in 0..500 {
        let ring = random::ring(&mut rng);
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let m = random::matrix(&mut rng, ring, r, c, 9);
        let f = snf(&m);
        ensure(f.u.mul(&m).mul(&f.v) == f.s, || format!("trial {trial}: u m v != s"))?;
        let unimodular = |x: &Matrix| {
            let d = x.determinant();
            if ring.is_field() {
                !d.is_zero()
            } else {
                d.abs().is_one()
            }
        };
        ensure(unimodular(&f.u) && unimodular(&f.v), || format!("trial {trial}: transform not invertible"))?;
        for i in 0..r {
            for j in 0..c {
                ensure(i == j || f.s[(i, j)].is_zero(), || format!("trial {trial}: off-diagonal entry"))?;
            }
        }
        let d = f.diagonal();
        for w in d.windows(2) {
            ensure(ring.divides(&w[0], &w[1]), || format!("trial {trial}: divisibility chain broken"))?;
        }
        ensure((d.len()..r.min(c)).all(|i| f.s[(i, i)].is_zero()), || format!("trial {trial}: zeros not trailing"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("pseudo-circle cohomology", pseudo_circle_cohomology),
        ("cohomological dimension bound", dimension_bound),
        ("localization exactness", localization_exactness),
        ("chi and realize are inverse", euler_isomorphism),
        ("global Euler factorization", factorization),
        ("base change", base_change),
        ("conservativity", conservativity),
        ("Sturm root isolation", sturm),
        ("sper cells", sper_cells),
        ("Euler pushforward", euler_pushforward),
        ("Smith normal form", smith_form),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
