use proptest::prelude::*;

use conspec::random;
use conspec_cli::parse::{parse_cons, parse_formula, parse_map, parse_poly, parse_sheaf, parse_space};
use conspec_cli::print;
use conspec::sper::from_formula;

fn same_sheaf(a: &conspec::sheaf::SheafComplex, b: &conspec::sheaf::SheafComplex) -> bool {
    a.space() == b.space()
        && a.ring() == b.ring()
        && a.space().points().all(|x| a.stalk(x) == b.stalk(x))
        && a.space().covers().iter().all(|&(x, y)| {
            a.stalk(x).degrees().all(|n| {
                a.gen(x, y).component(n, a.stalk(x), a.stalk(y)) == b.gen(x, y).component(n, b.stalk(x), b.stalk(y))
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn polynomials(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let f = random::poly(&mut rng, 6, 50);
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn spaces(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let s = random::poset(&mut rng, 7, 0.4);
        let parsed = parse_space(&s.to_string()).unwrap();
        prop_assert_eq!(parsed.ids(), s.ids());
        prop_assert_eq!(parsed.covers(), s.covers());
        prop_assert_eq!(parsed, s);
    }

    #[test]
    fn sheaves(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 5, 0.4);
        let ring = random::ring(&mut rng);
        let k = random::sheaf(&mut rng, &space, ring);
        let text = print::sheaf(&k);
        let parsed = parse_sheaf(&text).unwrap();
        prop_assert!(same_sheaf(&parsed, &k), "{}", text);
        prop_assert_eq!(print::sheaf(&parsed), text);
    }

    #[test]
    fn constructible_functions(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let space = random::poset(&mut rng, 6, 0.4);
        let phi = random::cons_function(&mut rng, &space, 9);
        prop_assert_eq!(parse_cons(&phi.to_string(), &space).unwrap(), phi);
    }

    #[test]
    fn maps(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let f = random::monotone_map(&mut rng, 4, 4);
        prop_assert_eq!(parse_map(&print::map(&f)).unwrap(), f);
    }

    #[test]
    fn formulas_keep_their_sets(seed in any::<u64>()) {
        let mut rng = random::seeded(seed);
        let phi = random::formula(&mut rng, 3);
        let parsed = parse_formula(&phi.to_string()).unwrap();
        prop_assert_eq!(from_formula(&parsed), from_formula(&phi));
    }
}
