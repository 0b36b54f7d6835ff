use std::fmt;

use super::algebraic::real_roots;
use super::cells::{CellMap, SperConstructible};
use super::point::sign_at;
use super::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Lt,
    Le,
    Eq,
    Ne,
    Ge,
    Gt,
}

impl Relation {
    pub const ALL: [Relation; 6] =
        [Relation::Lt, Relation::Le, Relation::Eq, Relation::Ne, Relation::Ge, Relation::Gt];

    /// Whether `f σ 0` holds when `f` has the given sign.
    pub fn holds(self, sign: i32) -> bool {
        match self {
            Relation::Lt => sign < 0,
            Relation::Le => sign <= 0,
            Relation::Eq => sign == 0,
            Relation::Ne => sign != 0,
            Relation::Ge => sign >= 0,
            Relation::Gt => sign > 0,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }
}

/// Boolean combination of sign conditions `f σ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom(Poly, Relation),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(f: Poly, rel: Relation) -> Self {
        Formula::Atom(f, rel)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        Formula::Not(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Self {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn atoms(&self) -> Vec<&Poly> {
        match self {
            Formula::Atom(f, _) => vec![f],
            Formula::Not(a) => a.atoms(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                let mut v = a.atoms();
                v.extend(b.atoms());
                v
            }
        }
    }

    /// Truth value given the sign of each atom polynomial.
    pub fn eval(&self, sign: &mut impl FnMut(&Poly) -> i32) -> bool {
        match self {
            Formula::Atom(f, rel) => rel.holds(sign(f)),
            Formula::Not(a) => !a.eval(sign),
            Formula::And(a, b) => a.eval(sign) & b.eval(sign),
            Formula::Or(a, b) => a.eval(sign) | b.eval(sign),
        }
    }

    /// Replaces every atom polynomial `f` by `f ∘ p`.
    pub fn substitute(&self, p: &Poly) -> Formula {
        match self {
            Formula::Atom(f, rel) => Formula::Atom(f.compose(p), *rel),
            Formula::Not(a) => a.substitute(p).not(),
            Formula::And(a, b) => a.substitute(p).and(b.substitute(p)),
            Formula::Or(a, b) => a.substitute(p).or(b.substitute(p)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, rel) => write!(f, "{p} {} 0", rel.symbol()),
            Formula::Not(a) => write!(f, "!({a})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

/// Canonical cell form of the set defined by `phi`. Atoms with the zero
/// polynomial are constant truth values.
pub fn from_formula(phi: &Formula) -> SperConstructible {
    let roots = phi
        .atoms()
        .into_iter()
        .filter(|f| !f.is_zero())
        .flat_map(|f| real_roots(f).expect("nonzero"))
        .collect();
    CellMap::from_samples(roots, |x| phi.eval(&mut |f| sign_at(f, x))).normalized()
}
