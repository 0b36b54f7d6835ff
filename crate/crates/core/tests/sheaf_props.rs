use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;

use conspec::k0::chi;
use conspec::linalg::{FGModule, FreeChainComplex};
use conspec::random;
use conspec::sheaf::{
    base_change_compare, derived_hom, derived_tensor, localization_triangle, pushforward, pushforward_comparison,
    rgamma, rgamma_on, CartesianSquare, SheafComplex,
};
use conspec::space::{Dimension, FinSpec, MonotoneMap};

fn homology(c: &FreeChainComplex) -> BTreeMap<i32, FGModule> {
    c.homology().into_iter().filter(|(_, m)| !m.is_zero()).collect()
}

fn same_stalk_homology(a: &SheafComplex, b: &SheafComplex) -> bool {
    a.space().points().all(|x| homology(a.stalk(x)) == homology(b.stalk(x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sheaves_vanish_above_dimension(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 6, 0.35);
        let ring = random::ring(&mut rng);
        let f = random::sheaf_map(&mut rng, &space, ring);
        let Dimension::Finite(d) = space.krull_dim() else { return Ok(()) };
        for k in [f.source(), f.target()] {
            let g = rgamma(k);
            for n in g.degrees().filter(|&n| n > d as i32) {
                prop_assert!(g.homology_at(n).is_zero(), "H^{} nonzero above dimension {}", n, d);
            }
        }
    }

    #[test]
    fn sections_over_a_star_are_the_stalk(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 5, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        for x in space.points() {
            prop_assert_eq!(homology(&rgamma_on(&k, &space.up(x))), homology(k.stalk(x)));
        }
        let c = random::complex(&mut rng, ring, 3);
        let pt = FinSpec::point("pt", "*");
        prop_assert_eq!(homology(&rgamma(&SheafComplex::constant(&pt, &c))), homology(&c));
    }

    #[test]
    fn pushforward_composes(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let x = random::poset(&mut rng, 4, 0.4);
        let y = random::poset(&mut rng, 3, 0.4);
        let s = random::poset(&mut rng, 3, 0.4);
        let (Some(f), Some(g)) =
            (random::monotone_map_between(&mut rng, &x, &y), random::monotone_map_between(&mut rng, &y, &s))
        else {
            return Ok(());
        };
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &x, ring);
        let cmp = pushforward_comparison(&f, &g, &k).unwrap();
        prop_assert!(cmp.is_quasi_iso());
    }

    #[test]
    fn localization_triangles_are_exact(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 6, 0.35);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let z = random::closed_subset(&mut rng, &space);
        let loc = localization_triangle(&k, &z).unwrap();
        prop_assert!(loc.triangle.check_exact().is_ok());
        prop_assert!(loc.certificate.is_quasi_iso());
    }

    #[test]
    fn hom_from_cell_projective_is_the_stalk(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 4, 0.4);
        let ring = random::ring(&mut rng);
        let l = random::sheaf(&mut rng, &space, ring);
        let x = rng.gen_range(0..space.len());
        let h = derived_hom(&SheafComplex::cell_projective(&space, ring, x), &l).unwrap();
        prop_assert_eq!(homology(h.stalk(x)), homology(l.stalk(x)));
    }

    #[test]
    fn open_base_change_is_iso(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let f = random::monotone_map(&mut rng, 4, 4);
        let u = random::open_subset(&mut rng, f.target());
        let p = MonotoneMap::inclusion(f.target(), &u, "U");
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, f.source(), ring);
        let bc = base_change_compare(&CartesianSquare::new(&f, &p).unwrap(), &k).unwrap();
        prop_assert!(bc.iso);
    }

    #[test]
    fn discrete_fiber_pushforward_is_conservative(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let f = random::discrete_fiber_map(&mut rng, 4);
        prop_assume!(!f.source().is_empty());
        prop_assert!(f.fibers_discrete());
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, f.source(), ring);
        prop_assume!(!k.is_acyclic());
        prop_assert!(!pushforward(&f, &k).unwrap().is_acyclic());
    }

    #[test]
    fn tensor_unit_associativity_and_ranks(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 4, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let l = random::sheaf(&mut rng, &space, ring);
        let m = random::sheaf(&mut rng, &space, ring);
        let unit = SheafComplex::unit(&space, ring);
        prop_assert!(same_stalk_homology(&derived_tensor(&k, &unit).unwrap(), &k));
        let left = derived_tensor(&derived_tensor(&k, &l).unwrap(), &m).unwrap();
        let right = derived_tensor(&k, &derived_tensor(&l, &m).unwrap()).unwrap();
        prop_assert!(same_stalk_homology(&left, &right));
        prop_assert_eq!(chi(&derived_tensor(&k, &l).unwrap()), chi(&k).mul(&chi(&l)));
    }
}
