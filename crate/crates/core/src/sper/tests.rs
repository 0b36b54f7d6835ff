use num_bigint::BigInt;
use num_rational::BigRational;

use super::*;
use crate::space::Dimension;

fn p(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn sqrt2() -> AlgNumber {
    real_roots(&p(&[-2, 0, 1])).unwrap().pop().unwrap()
}

fn lt(f: Poly) -> Formula {
    Formula::atom(f, Relation::Lt)
}

#[test]
fn cubic_roots_middle_exact() {
    let roots = real_roots(&p(&[0, -2, 0, 1])).unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(roots[1].as_rational(), Some(q(0, 1)));
    assert!(roots[0] < roots[1] && roots[1] < roots[2]);
    assert_eq!(roots[2].compare(&sqrt2()), std::cmp::Ordering::Equal);
    assert!(real_roots(&p(&[1, 0, 1])).unwrap().is_empty());
    assert_eq!(real_roots(&Poly::zero()), Err(SperError::ZeroPolynomial));
}

#[test]
fn quintic_roots_separated_by_half_integers() {
    let f = (1..=5).fold(p(&[1]), |acc, r| acc.mul(&p(&[-r, 1])));
    let roots = real_roots(&f).unwrap();
    assert_eq!(roots.len(), 5);
    for (i, a) in roots.iter().enumerate() {
        let k = i as i64 + 1;
        let a = a.refine_below(&q(1, 2));
        assert!(*a.lo() >= q(2 * k - 1, 2) && *a.hi() <= q(2 * k + 1, 2));
    }
}

#[test]
fn sign_examples() {
    let f = p(&[-2, 0, 1]);
    assert_eq!(sign_at(&f, &SperPoint::Alg(AlgNumber::from_i64(1))), -1);
    assert_eq!(sign_at(&f, &SperPoint::PosInf), 1);
    assert_eq!(sign_at(&f, &SperPoint::NegInf), 1);
    assert_eq!(sign_at(&f, &SperPoint::CutPlus(sqrt2())), 1);
    assert_eq!(sign_at(&f, &SperPoint::CutMinus(sqrt2())), -1);
    assert_eq!(sign_at(&f, &SperPoint::Alg(sqrt2())), 0);
    assert_eq!(sign_at(&Poly::zero(), &SperPoint::PosInf), 0);
    let cube = p(&[0, 0, 0, 1]);
    assert_eq!(sign_at(&cube, &SperPoint::CutMinus(AlgNumber::from_i64(0))), -1);
    assert_eq!(sign_at(&cube, &SperPoint::NegInf), -1);
}

#[test]
fn formula_examples() {
    let s = from_formula(&lt(p(&[-2, 0, 1])));
    assert_eq!(s.roots().len(), 2);
    assert_eq!(s.included_cells(), vec![2]);
    let whole = from_formula(&Formula::atom(p(&[0, 1]).sub(&p(&[0, 1])), Relation::Eq));
    assert_eq!(whole, SperConstructible::whole());
    let ge = from_formula(&Formula::atom(p(&[0, 1]), Relation::Ge));
    assert_eq!(ge.roots().len(), 1);
    assert_eq!(ge.values(), &[false, true, true]);
}

#[test]
fn set_algebra_examples() {
    let s = from_formula(&lt(p(&[-2, 0, 1])));
    let pos = from_formula(&Formula::atom(p(&[0, 1]), Relation::Gt));
    let both = s.intersect(&pos);
    assert_eq!(both.roots().len(), 2);
    assert_eq!(both.roots()[0].as_rational(), Some(q(0, 1)));
    assert_eq!(both.included_cells(), vec![2]);
    assert_eq!(s.complement().complement(), s);
    assert_eq!(s.union(&s.complement()), SperConstructible::whole());
    let conj = from_formula(&lt(p(&[-2, 0, 1])).and(Formula::atom(p(&[0, 1]), Relation::Gt)));
    assert_eq!(conj, both);
}

#[test]
fn closure_and_interior() {
    let s = from_formula(&lt(p(&[-2, 0, 1])));
    let c = s.closure();
    assert_eq!(c.included_cells(), vec![1, 2, 3]);
    assert!(c.is_closed() && !s.is_closed() && s.is_open());
    assert_eq!(c.closure(), c);
    let point = from_formula(&Formula::atom(p(&[0, 1]), Relation::Eq));
    assert_eq!(point.closure(), point);
    let ge = from_formula(&Formula::atom(p(&[0, 1]), Relation::Ge));
    assert_eq!(ge.interior(), from_formula(&Formula::atom(p(&[0, 1]), Relation::Gt)));
}

#[test]
fn cell_poset_fences() {
    assert_eq!(cell_poset(0).len(), 1);
    let fence = cell_poset(1);
    assert_eq!(fence.len(), 3);
    assert_eq!(fence.krull_dim(), Dimension::Finite(1));
    assert_eq!(cell_poset(2).len(), 5);
    assert_eq!(cell_poset(2).krull_dim(), Dimension::Finite(1));
}

#[test]
fn push_point_examples() {
    let sq = PolyMap::new(p(&[0, 0, 1])).unwrap();
    let neg = real_roots(&p(&[-2, 0, 1])).unwrap().remove(0);
    assert_eq!(sq.push_point(&SperPoint::Alg(neg)), SperPoint::Alg(AlgNumber::from_i64(2)));
    let zero = AlgNumber::from_i64(0);
    assert_eq!(sq.push_point(&SperPoint::CutMinus(zero.clone())), SperPoint::CutPlus(zero.clone()));
    assert_eq!(sq.push_point(&SperPoint::CutPlus(zero.clone())), SperPoint::CutPlus(zero));
    assert_eq!(sq.push_point(&SperPoint::NegInf), SperPoint::PosInf);
    assert_eq!(PolyMap::new(p(&[3])).unwrap_err(), SperError::ConstantMap);
    let cube = PolyMap::new(p(&[0, -3, 0, 1])).unwrap();
    let one = AlgNumber::from_i64(1);
    assert_eq!(
        cube.push_point(&SperPoint::CutMinus(one.clone())),
        SperPoint::CutPlus(AlgNumber::from_i64(-2))
    );
    assert_eq!(cube.push_point(&SperPoint::CutPlus(one)), SperPoint::CutPlus(AlgNumber::from_i64(-2)));
}

#[test]
fn preimage_examples() {
    let sq = PolyMap::new(p(&[0, 0, 1])).unwrap();
    let pos = from_formula(&Formula::atom(p(&[0, 1]), Relation::Gt));
    let nonzero = from_formula(&Formula::atom(p(&[0, 1]), Relation::Ne));
    assert_eq!(preimage_set(&sq, &pos), nonzero);
    assert_eq!(preimage_formula(&sq, &Formula::atom(p(&[0, 1]), Relation::Gt)), nonzero);
    assert_eq!(preimage_set(&sq, &SperConstructible::whole()), SperConstructible::whole());
    let below = from_formula(&lt(p(&[1, 1])));
    assert_eq!(preimage_set(&sq, &below), SperConstructible::empty());
}

#[test]
fn pushforward_examples() {
    let one = LineFunction::constant(1);
    let sq = PolyMap::new(p(&[0, 0, 1])).unwrap();
    assert_eq!(push_cons(&sq, &one).unwrap().values(), &[0, 1, 2]);
    let cubic = PolyMap::new(p(&[0, -3, 0, 1])).unwrap();
    let pushed = push_cons(&cubic, &one).unwrap();
    assert_eq!(pushed.values(), &[1, 2, 3, 2, 1]);
    assert_eq!(pushed.roots()[0].as_rational(), Some(q(-2, 1)));
    let id = PolyMap::new(p(&[0, 1])).unwrap();
    let phi = LineFunction::indicator(&from_formula(&lt(p(&[-2, 0, 1])))).map(|v| v * 3);
    assert_eq!(push_cons(&id, &phi).unwrap(), phi);
}

#[test]
fn printing() {
    assert_eq!(p(&[0, -2, 0, 1]).to_string(), "t^3 - 2*t");
    let f = lt(p(&[-2, 0, 1])).and(Formula::atom(p(&[0, 1]), Relation::Ne).not());
    assert_eq!(f.to_string(), "(t^2 - 2 < 0 & !(t != 0))");
    let labels = from_formula(&lt(p(&[-2, 0, 1]))).cell_labels();
    assert_eq!(labels.len(), 5);
    assert!(labels[0].starts_with("(-inf,"));
}
