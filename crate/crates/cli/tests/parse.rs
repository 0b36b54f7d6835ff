use num_bigint::BigInt;

use conspec::sheaf::SheafError;
use conspec::space::SpaceError;
use conspec::sper::{from_formula, Poly};
use conspec_cli::parse::{parse_cons, parse_formula, parse_map, parse_poly, parse_sheaf, parse_space, ParseError};

fn coeffs(p: &Poly) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn polynomials() {
    assert_eq!(coeffs(&parse_poly("t^3 - 2*t").unwrap()), [0, -2, 0, 1]);
    assert!(parse_poly("0").unwrap().is_zero());
    assert_eq!(coeffs(&parse_poly("-(t - 1)^2").unwrap()), [-1, 2, -1]);
    assert_eq!(coeffs(&parse_poly("2*t*t + 3").unwrap()), [3, 0, 2]);
    assert_eq!(parse_poly("123456789012345678901234567890").unwrap().coeff(0), "123456789012345678901234567890".parse::<BigInt>().unwrap());
}

#[test]
fn polynomial_errors() {
    for bad in ["t^(1+1)", "t^-1", "t^t", "", "t +", "x", "(t", "t)", "t^1000"] {
        assert!(matches!(parse_poly(bad), Err(ParseError::Syntax { .. })), "{bad:?} parsed");
    }
    let Err(ParseError::Syntax { line, col, .. }) = parse_poly("t^(1+1)") else { unreachable!() };
    assert_eq!((line, col), (1, 3));
}

#[test]
fn formulas() {
    let f = parse_formula("t^2 - 2 < 0").unwrap();
    assert_eq!(from_formula(&f).included_cells(), [2]);
    let g = parse_formula("(t > 0 & t^2 < 2) | !(t >= -1)").unwrap();
    assert_eq!(g.to_string(), "((t > 0 & t^2 - 2 < 0) | !(t + 1 >= 0))");
    assert_eq!(parse_formula("(t - 1) * (t + 1) != 0").unwrap().to_string(), "t^2 - 1 != 0");
    assert!(from_formula(&parse_formula("t = t").unwrap()).values().iter().all(|v| *v));
    for bad in ["t", "t < ", "t < 0 &", "(t < 0", "t <> 0"] {
        assert!(parse_formula(bad).is_err(), "{bad:?} parsed");
    }
}

#[test]
fn spaces() {
    let s = parse_space("space S\npoints: s eta\ncovers: s<eta\n").unwrap();
    assert_eq!(s.len(), 2);
    assert!(s.lt(s.lookup("s").unwrap(), s.lookup("eta").unwrap()));
    let empty = parse_space("space E\npoints:\n").unwrap();
    assert!(empty.is_empty());
    assert!(matches!(parse_space("space S\npoints: a a\n"), Err(ParseError::Space(SpaceError::DuplicatePoint(_)))));
    assert!(matches!(
        parse_space("space S\npoints: a b\ncovers: a<b b<a\n"),
        Err(ParseError::Space(SpaceError::CycleDetected(_)))
    ));
    assert!(matches!(
        parse_space("space S\npoints: a\ncovers: a<z\n"),
        Err(ParseError::Space(SpaceError::UnknownPoint(_)))
    ));
    assert!(matches!(parse_space("space S\ncovers: a<b\n"), Err(ParseError::Syntax { line: 2, .. })));
}

const HEADER: &str = "ring Z\nspace D\npoints: b l r t\ncovers: b<l b<r l<t r<t\n";

#[test]
fn non_commuting_square_is_rejected() {
    let text = format!(
        "{HEADER}stalk b: deg 0 rank 1\nstalk l: deg 0 rank 1\nstalk r: deg 0 rank 1\nstalk t: deg 0 rank 1\n\
         gen b<l: deg 0 = [[1]]\ngen b<r: deg 0 = [[1]]\ngen l<t: deg 0 = [[1]]\ngen r<t: deg 0 = [[-1]]\n"
    );
    match parse_sheaf(&text) {
        Err(ParseError::Sheaf(SheafError::PathIndependenceViolation { lower, upper })) => {
            assert_eq!((lower.as_str(), upper.as_str()), ("b", "t"));
        }
        other => panic!("expected a path independence violation, got {other:?}"),
    }
}

#[test]
fn sheaf_validation() {
    let not_complex = "ring Z\nspace P\npoints: p\nstalk p: deg 0 rank 1; deg 1 rank 1; deg 2 rank 1; d_0 = [[1]]; d_1 = [[1]]\n";
    assert!(matches!(parse_sheaf(not_complex), Err(ParseError::Sheaf(SheafError::BadStalk { .. }))));
    let wrong_shape = "ring Z\nspace P\npoints: p\nstalk p: deg 0 rank 1; deg 1 rank 2; d_0 = [[1]]\n";
    assert!(matches!(parse_sheaf(wrong_shape), Err(ParseError::Syntax { line: 4, .. })));
    let rational_over_z = "ring Z\nspace P\npoints: p\nstalk p: deg 0 rank 1; deg 1 rank 1; d_0 = [[1/2]]\n";
    assert!(parse_sheaf(rational_over_z).is_err());
    let over_q = "ring Q\nspace P\npoints: p\nstalk p: deg 0 rank 1; deg 1 rank 1; d_0 = [[1/2]]\n";
    assert!(parse_sheaf(over_q).unwrap().is_acyclic());
    let mod_p = "ring F 5\nspace P\npoints: p\nstalk p: deg 0 rank 1; deg 1 rank 1; d_0 = [[10]]\n";
    assert!(!parse_sheaf(mod_p).unwrap().is_acyclic());
    let not_cover = format!("{HEADER}stalk b: deg 0 rank 1\nstalk t: deg 0 rank 1\ngen b<t: deg 0 = [[1]]\n");
    assert!(matches!(parse_sheaf(&not_cover), Err(ParseError::Sheaf(SheafError::NotACover(..)))));
    assert!(parse_sheaf("ring R\nspace P\npoints: p\n").is_err());
}

#[test]
fn maps_and_functions() {
    let text = "source U\npoints: eta\ntarget S\npoints: s eta\ncovers: s<eta\nassign: eta=eta\n";
    let f = parse_map(text).unwrap();
    assert_eq!(f.apply(0), 1);
    let bad = "source X\npoints: a b\ncovers: a<b\ntarget S\npoints: s eta\ncovers: s<eta\nassign: a=eta b=s\n";
    assert!(matches!(parse_map(bad), Err(ParseError::Space(SpaceError::NotMonotone(..)))));
    let phi = parse_cons("phi: eta=3", f.target()).unwrap();
    assert_eq!(phi.values(), [0, 3]);
    assert!(parse_cons("phi: eta=x", f.target()).is_err());
    assert!(parse_cons("phi: q=1", f.target()).is_err());
}
