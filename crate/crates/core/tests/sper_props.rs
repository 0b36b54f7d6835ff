use proptest::prelude::*;
use rand::Rng;

use conspec::random;
use conspec::space::Dimension;
use conspec::sper::{
    cell_poset, from_formula, pull_cons, push_cons, real_roots, sign_at, AlgNumber, CellMap, PolyMap, SperConstructible,
    SperPoint,
};

/// Every point kind around the roots of `f` and a few rationals.
fn probe_points(rng: &mut impl Rng, roots: &[AlgNumber]) -> Vec<SperPoint> {
    let mut out = vec![SperPoint::NegInf, SperPoint::PosInf];
    for a in roots {
        out.push(SperPoint::Alg(a.clone()));
        out.push(SperPoint::CutMinus(a.clone()));
        out.push(SperPoint::CutPlus(a.clone()));
    }
    for _ in 0..3 {
        let r = AlgNumber::from_i64(rng.gen_range(-4..=4));
        out.push(SperPoint::Alg(r.clone()));
        out.push(SperPoint::CutPlus(r));
    }
    out
}

fn random_set(rng: &mut impl Rng) -> SperConstructible {
    from_formula(&random::formula(rng, 2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sign_is_multiplicative(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let f = random::poly(&mut rng, 3, 4);
        let g = random::poly(&mut rng, 3, 4);
        let mut roots = real_roots(&f).unwrap();
        roots.extend(real_roots(&g).unwrap());
        for x in probe_points(&mut rng, &roots) {
            prop_assert_eq!(sign_at(&f.mul(&g), &x), sign_at(&f, &x) * sign_at(&g, &x), "at {}", x);
        }
    }

    #[test]
    fn formulas_respect_boolean_structure(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let a = random::formula(&mut rng, 2);
        let b = random::formula(&mut rng, 2);
        let (sa, sb) = (from_formula(&a), from_formula(&b));
        prop_assert_eq!(from_formula(&a.clone().and(b.clone())), sa.intersect(&sb));
        prop_assert_eq!(from_formula(&a.clone().or(b.clone())), sa.union(&sb));
        prop_assert_eq!(from_formula(&a.not()), sa.complement());
    }

    #[test]
    fn closure_laws(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let s = random_set(&mut rng);
        let t = random_set(&mut rng);
        let c = s.closure();
        prop_assert_eq!(c.closure(), c.clone());
        prop_assert!(c.is_closed());
        prop_assert_eq!(s.union(&c), c.clone());
        let st = s.union(&t);
        prop_assert_eq!(st.closure().union(&c), st.closure());
        prop_assert_eq!(s.interior(), s.complement().closure().complement());
        prop_assert!(s.interior().is_open());
    }

    #[test]
    fn cell_poset_dimension(k in 0usize..6) {
        let d = cell_poset(k).krull_dim();
        prop_assert_eq!(d, Dimension::Finite(if k == 0 { 0 } else { 1 }));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn projection_formula(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let p = PolyMap::new(random::poly(&mut rng, 3, 3)).unwrap();
        let phi = random::line_function(&mut rng, 3);
        let psi = random::line_function(&mut rng, 3);
        let lhs = push_cons(&p, &phi.mul(&pull_cons(&p, &psi))).unwrap();
        let rhs = push_cons(&p, &phi).unwrap().mul(&psi);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn push_point_respects_specialization(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let p = PolyMap::new(random::poly(&mut rng, 4, 4)).unwrap();
        let mut centers = real_roots(&p.poly().derivative()).unwrap_or_default();
        centers.extend(real_roots(&random::poly(&mut rng, 3, 4)).unwrap());
        centers.extend((-2..=2).map(AlgNumber::from_i64));
        for a in centers {
            let y = p.push_point(&SperPoint::Alg(a.clone()));
            for cut in [SperPoint::CutMinus(a.clone()), SperPoint::CutPlus(a.clone())] {
                let x = p.push_point(&cut);
                prop_assert!(x == y || x.specializes_to(&y), "{} -> {} but {} -> {}", cut, x, a, y);
            }
        }
    }

    #[test]
    fn pushforward_along_identity(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let phi = random::line_function(&mut rng, 3).normalized();
        let id = PolyMap::new(conspec::sper::Poly::from_i64(&[0, 1])).unwrap();
        prop_assert_eq!(push_cons(&id, &phi).unwrap(), phi);
        let c = CellMap::constant(1i64);
        prop_assert_eq!(push_cons(&id, &c).unwrap(), c);
    }
}
