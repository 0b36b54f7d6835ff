//! Seeded invariant suites behind the `selftest` command.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;

use num_integer::Integer;
use num_traits::{One, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use conspec::k0::{chi, global_euler, realize};
use conspec::linalg::{snf, ScalarRing};
use conspec::random;
use conspec::sheaf::{base_change_compare, localization_triangle, pushforward, rgamma, CartesianSquare};
use conspec::space::{Dimension, MonotoneMap};
use conspec::sper::{from_formula, push_cons, Poly, PolyMap};

use crate::parse;
use crate::print;
use crate::report::Report;

type Case = fn(&mut ChaCha8Rng) -> bool;

fn smith(rng: &mut ChaCha8Rng) -> bool {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let m = random::matrix(rng, ScalarRing::Integers, r, c, 20);
    let f = snf(&m);
    let d = f.diagonal();
    f.u.mul(&m).mul(&f.v) == f.s
        && f.u.determinant().abs().is_one()
        && f.v.determinant().abs().is_one()
        && d.windows(2).all(|w| w[1].to_integer().is_multiple_of(&w[0].to_integer()))
}

fn dimension_bound(rng: &mut ChaCha8Rng) -> bool {
    let space = random::poset(rng, 6, 0.35);
    let ring = random::ring(rng);
    let k = random::sheaf(rng, &space, ring);
    let Dimension::Finite(d) = space.krull_dim() else { return true };
    let top = k.degree_range().map_or(0, |(_, hi)| hi.max(0));
    let g = rgamma(&k);
    g.degrees().filter(|&n| n > top + d as i32).all(|n| g.homology_at(n).is_zero())
}

fn localization(rng: &mut ChaCha8Rng) -> bool {
    let space = random::poset(rng, 5, 0.4);
    let ring = random::ring(rng);
    let k = random::sheaf(rng, &space, ring);
    let z = random::closed_subset(rng, &space);
    let loc = localization_triangle(&k, &z).expect("closed subset");
    loc.triangle.check_exact().is_ok() && loc.certificate.is_quasi_iso()
}

fn realization(rng: &mut ChaCha8Rng) -> bool {
    let space = random::poset(rng, 4, 0.4);
    let phi = random::cons_function(rng, &space, 3);
    let ring = random::ring(rng);
    let k = random::sheaf(rng, &space, ring);
    chi(&realize(&phi, ring)) == phi && global_euler(&k) == global_euler(&realize(&chi(&k), ScalarRing::Integers))
}

fn open_base_change(rng: &mut ChaCha8Rng) -> bool {
    let f = random::monotone_map(rng, 4, 4);
    let u = random::open_subset(rng, f.target());
    let p = MonotoneMap::inclusion(f.target(), &u, "U");
    let ring = random::ring(rng);
    let k = random::sheaf(rng, f.source(), ring);
    base_change_compare(&CartesianSquare::new(&f, &p).expect("shared target"), &k).expect("valid square").iso
}

fn conservativity(rng: &mut ChaCha8Rng) -> bool {
    let f = random::discrete_fiber_map(rng, 4);
    let ring = random::ring(rng);
    let k = random::sheaf(rng, f.source(), ring);
    k.is_acyclic() || !pushforward(&f, &k).expect("same space").is_acyclic()
}

fn formulas(rng: &mut ChaCha8Rng) -> bool {
    let a = random::formula(rng, 2);
    let b = random::formula(rng, 2);
    let (sa, sb) = (from_formula(&a), from_formula(&b));
    from_formula(&a.clone().and(b.clone())) == sa.intersect(&sb)
        && from_formula(&a.clone().or(b)) == sa.union(&sb)
        && from_formula(&a.not()) == sa.complement()
        && sa.closure().closure() == sa.closure()
}

fn euler_pushforward(rng: &mut ChaCha8Rng) -> bool {
    let p = PolyMap::new(random::poly(rng, 3, 3)).expect("nonconstant");
    let phi = random::line_function(rng, 3);
    let id = PolyMap::new(Poly::t()).expect("nonconstant");
    let pushed = push_cons(&p, &phi).expect("consistent samples");
    push_cons(&id, &phi.normalized()).expect("consistent samples") == phi.normalized()
        && conspec::sper::line_euler(&pushed) == conspec::sper::line_euler(&phi)
}

fn round_trips(rng: &mut ChaCha8Rng) -> bool {
    let f = random::poly(rng, 5, 9);
    let space = random::poset(rng, 5, 0.4);
    let ring = random::ring(rng);
    let k = random::sheaf(rng, &space, ring);
    let phi = random::cons_function(rng, &space, 5);
    let map = random::monotone_map(rng, 3, 3);
    parse::parse_poly(&f.to_string()).ok() == Some(f)
        && parse::parse_space(&space.to_string()).ok() == Some(space.clone())
        && parse::parse_sheaf(&print::sheaf(&k)).map(|l| print::sheaf(&l)).ok() == Some(print::sheaf(&k))
        && parse::parse_cons(&phi.to_string(), &space).ok() == Some(phi)
        && parse::parse_map(&print::map(&map)).ok() == Some(map)
}

const SUITES: [(&str, usize, Case); 9] = [
    ("smith normal form", 200, smith),
    ("dimension bound", 50, dimension_bound),
    ("localization", 50, localization),
    ("chi and realize", 50, realization),
    ("open base change", 30, open_base_change),
    ("conservativity", 50, conservativity),
    ("formulas", 100, formulas),
    ("euler pushforward", 20, euler_pushforward),
    ("round trips", 100, round_trips),
];

fn run_suite(index: usize, seed: u64) -> usize {
    let (_, count, case) = SUITES[index];
    (0..count as u64)
        .filter(|&i| {
            let mut rng = random::seeded(seed ^ ((index as u64) << 48) ^ i);
            catch_unwind(AssertUnwindSafe(|| case(&mut rng))).unwrap_or(false)
        })
        .count()
}

/// Runs all suites concurrently; returns the report and the number of
/// failed cases.
pub fn run(seed: u64) -> (Report, usize) {
    let passed: Vec<usize> = thread::scope(|s| {
        let handles: Vec<_> = (0..SUITES.len()).map(|i| s.spawn(move || run_suite(i, seed))).collect();
        handles.into_iter().map(|h| h.join().unwrap_or(0)).collect()
    });
    let mut report = Report::default();
    report.field("seed", seed.to_string());
    let mut failed = 0;
    for ((name, count, _), ok) in SUITES.iter().zip(&passed) {
        report.field(*name, format!("{ok}/{count} passed"));
        failed += count - ok;
    }
    let total: usize = SUITES.iter().map(|s| s.1).sum();
    report.field("total", format!("{}/{total} passed", total - failed));
    (report, failed)
}
