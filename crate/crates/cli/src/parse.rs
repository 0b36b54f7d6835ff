//! Parsers for polynomials, formulas, spaces, sheaves, maps and
//! constructible functions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use conspec::k0::ConsFunction;
use conspec::linalg::{ChainMap, FreeChainComplex, LinalgError, Matrix, Scalar, ScalarRing};
use conspec::sheaf::{SheafComplex, SheafError};
use conspec::space::{FinSpec, MonotoneMap, SpaceError};
use conspec::sper::{Formula, Poly, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Sheaf(#[from] SheafError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn syntax<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError::Syntax { line, col, msg: msg.into() })
}

/// Character cursor over one line of input; columns are 1-based.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek2(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos + 1).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn col(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        syntax(self.line, self.col(), msg)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => self.err(format!("expected `{c}`, found `{d}`")),
            None => self.err(format!("expected `{c}`, found end of input")),
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Some(digits.parse().expect("ascii digits"))
    }
}

// expr := term (('+' | '-') term)*
// term := unary ('*' unary)*
// unary := '-' unary | power
// power := atom ('^' INT)?
// atom := INT | 't' | '(' expr ')'
fn poly_expr(c: &mut Cursor) -> Result<Poly, ParseError> {
    let mut acc = poly_term(c)?;
    loop {
        match c.peek() {
            Some('+') => {
                c.bump();
                acc = acc.add(&poly_term(c)?);
            }
            Some('-') => {
                c.bump();
                acc = acc.sub(&poly_term(c)?);
            }
            _ => return Ok(acc),
        }
    }
}

fn poly_term(c: &mut Cursor) -> Result<Poly, ParseError> {
    let mut acc = poly_unary(c)?;
    while c.peek() == Some('*') {
        c.bump();
        acc = acc.mul(&poly_unary(c)?);
    }
    Ok(acc)
}

fn poly_unary(c: &mut Cursor) -> Result<Poly, ParseError> {
    if c.peek() == Some('-') {
        c.bump();
        return Ok(poly_unary(c)?.neg());
    }
    let base = poly_atom(c)?;
    if c.peek() != Some('^') {
        return Ok(base);
    }
    c.bump();
    let col = c.col();
    match c.integer() {
        Some(e) => match e.to_u32() {
            Some(e) if e <= 256 => Ok(base.pow(e)),
            _ => syntax(c.line, col, "exponent too large"),
        },
        None => syntax(c.line, col, "exponent must be a nonnegative integer literal"),
    }
}

fn poly_atom(c: &mut Cursor) -> Result<Poly, ParseError> {
    match c.peek() {
        Some('t') => {
            c.bump();
            Ok(Poly::t())
        }
        Some('(') => {
            c.bump();
            let p = poly_expr(c)?;
            c.expect(')')?;
            Ok(p)
        }
        Some(d) if d.is_ascii_digit() => Ok(Poly::constant(c.integer().expect("digit present"))),
        Some(d) => c.err(format!("unexpected `{d}` in polynomial")),
        None => c.err("unexpected end of polynomial"),
    }
}

/// Integer polynomial in `t`.
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let mut c = Cursor::new(text, 1);
    let p = poly_expr(&mut c)?;
    if let Some(d) = c.peek() {
        return c.err(format!("unexpected `{d}` after polynomial"));
    }
    Ok(p)
}

fn relation(c: &mut Cursor) -> Result<Relation, ParseError> {
    let rel = match (c.peek(), c.peek2()) {
        (Some('<'), Some('=')) => Relation::Le,
        (Some('>'), Some('=')) => Relation::Ge,
        (Some('!'), Some('=')) => Relation::Ne,
        (Some('<'), _) => Relation::Lt,
        (Some('>'), _) => Relation::Gt,
        (Some('='), _) => Relation::Eq,
        _ => return c.err("expected a relation `<`, `<=`, `=`, `!=`, `>=` or `>`"),
    };
    let width = if matches!(rel, Relation::Le | Relation::Ge | Relation::Ne) { 2 } else { 1 };
    c.pos += width;
    Ok(rel)
}

/// `f σ g`, read as `f - g σ 0`.
fn formula_atom(c: &mut Cursor) -> Result<Formula, ParseError> {
    let lhs = poly_expr(c)?;
    let rel = relation(c)?;
    let rhs = poly_expr(c)?;
    Ok(Formula::atom(lhs.sub(&rhs), rel))
}

// formula := conj ('|' conj)*
// conj := neg ('&' neg)*
// neg := '!' neg | '(' formula ')' | atom
fn formula_or(c: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = formula_and(c)?;
    while c.peek() == Some('|') {
        c.bump();
        acc = acc.or(formula_and(c)?);
    }
    Ok(acc)
}

fn formula_and(c: &mut Cursor) -> Result<Formula, ParseError> {
    let mut acc = formula_not(c)?;
    while c.peek() == Some('&') {
        c.bump();
        acc = acc.and(formula_not(c)?);
    }
    Ok(acc)
}

fn formula_not(c: &mut Cursor) -> Result<Formula, ParseError> {
    if c.peek() == Some('!') && c.peek2() != Some('=') {
        c.bump();
        return Ok(formula_not(c)?.not());
    }
    // A parenthesis opens either a polynomial or a subformula; try the atom
    // reading first and fall back to grouping.
    let start = c.pos;
    match formula_atom(c) {
        Ok(f) => Ok(f),
        Err(atom_err) => {
            c.pos = start;
            if c.peek() != Some('(') {
                return Err(atom_err);
            }
            c.bump();
            let f = formula_or(c)?;
            c.expect(')')?;
            Ok(f)
        }
    }
}

/// Boolean combination of sign conditions.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut c = Cursor::new(text, 1);
    let f = formula_or(&mut c)?;
    if let Some(d) = c.peek() {
        return c.err(format!("unexpected `{d}` after formula"));
    }
    Ok(f)
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn keyword<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let rest = line.strip_prefix(key)?;
    if rest.is_empty() || rest.starts_with(char::is_whitespace) || key.ends_with(':') {
        Some(rest.trim())
    } else {
        None
    }
}

/// Reads `space NAME` / `points:` / `covers:` starting at `lines[i]`.
fn space_block(lines: &[(usize, &str)], i: &mut usize, header: &str) -> Result<FinSpec, ParseError> {
    let Some(&(n, l)) = lines.get(*i) else {
        return syntax(lines.last().map_or(1, |l| l.0), 1, format!("expected `{header} NAME`"));
    };
    let Some(name) = keyword(l, header) else {
        return syntax(n, 1, format!("expected `{header} NAME`"));
    };
    if name.is_empty() || name.contains(char::is_whitespace) {
        return syntax(n, header.len() + 2, "space name must be a single token");
    }
    *i += 1;
    let Some(points) = lines.get(*i).and_then(|&(_, l)| keyword(l, "points:")) else {
        return syntax(lines.get(*i).map_or(n + 1, |l| l.0), 1, "expected `points:`");
    };
    let points: Vec<&str> = points.split_whitespace().collect();
    *i += 1;
    let mut relations = Vec::new();
    if let Some(covers) = lines.get(*i).and_then(|&(_, l)| keyword(l, "covers:")) {
        let line = lines[*i].0;
        for tok in covers.split_whitespace() {
            match tok.split_once('<') {
                Some((a, b)) if !a.is_empty() && !b.is_empty() && !b.contains('<') => relations.push((a, b)),
                _ => return syntax(line, 1, format!("bad relation `{tok}`, expected `a<b`")),
            }
        }
        *i += 1;
    }
    Ok(FinSpec::build(name, &points, &relations)?)
}

/// The `space` / `points:` / `covers:` format.
pub fn parse_space(text: &str) -> Result<FinSpec, ParseError> {
    let ls = lines(text);
    let mut i = 0;
    let space = space_block(&ls, &mut i, "space")?;
    if let Some(&(n, _)) = ls.get(i) {
        return syntax(n, 1, "unexpected line after space block");
    }
    Ok(space)
}

pub fn parse_ring(text: &str) -> Result<ScalarRing, ParseError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.as_slice() {
        ["Z"] => Ok(ScalarRing::Integers),
        ["Q"] => Ok(ScalarRing::Rationals),
        ["F", p] | ["F_p", p] => {
            let p: u64 = p.parse().map_err(|_| ParseError::Syntax {
                line: 1,
                col: 1,
                msg: format!("bad characteristic `{p}`"),
            })?;
            Ok(ScalarRing::prime_field(p)?)
        }
        _ => syntax(1, 1, format!("unknown ring `{text}`, expected Z, Q or F p")),
    }
}

fn scalar(ring: ScalarRing, tok: &str, line: usize) -> Result<Scalar, ParseError> {
    let bad = || ParseError::Syntax { line, col: 1, msg: format!("bad matrix entry `{tok}`") };
    let value = match tok.split_once('/') {
        Some((p, q)) => {
            let (p, q): (BigInt, BigInt) = (p.parse().map_err(|_| bad())?, q.parse().map_err(|_| bad())?);
            if q.is_zero() {
                return Err(bad());
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(tok.parse().map_err(|_| bad())?),
    };
    Ok(ring.try_reduce(value)?)
}

/// `[[a, b], [c, d]]`, or `[]` for a matrix with no rows; the shape is
/// checked against `(rows, cols)`.
fn matrix(ring: ScalarRing, text: &str, line: usize, rows: usize, cols: usize) -> Result<Matrix, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: String| ParseError::Syntax { line, col: 1, msg: m };
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| bad(format!("bad matrix `{text}`")))?;
    let mut entries: Vec<Vec<Scalar>> = Vec::new();
    if !inner.is_empty() {
        let body = inner
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| bad(format!("bad matrix `{text}`")))?;
        for row in body.split("],[") {
            let row = if row.is_empty() { Vec::new() } else { row.split(',').map(|t| scalar(ring, t, line)).collect::<Result<_, _>>()? };
            entries.push(row);
        }
    }
    if rows == 0 && entries.iter().all(|r| r.is_empty()) && entries.len() <= 1 {
        return Ok(Matrix::zeros(ring, 0, cols));
    }
    if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
        let got = entries.first().map_or(0, |r| r.len());
        return Err(bad(format!("matrix is {}x{got}, expected {rows}x{cols}", entries.len())));
    }
    Ok(Matrix::from_rows(ring, entries))
}

/// `deg d rank r` and `d_n = [[...]]` items of a stalk line.
fn stalk(ring: ScalarRing, body: &str, line: usize, point: &str) -> Result<FreeChainComplex, ParseError> {
    let mut ranks = BTreeMap::new();
    let mut raw = Vec::new();
    for item in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "0" {
            continue;
        }
        if let Some(rest) = item.strip_prefix("deg ") {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let parsed = match toks.as_slice() {
                [d, "rank", r] => d.parse::<i32>().ok().zip(r.parse::<usize>().ok()),
                _ => None,
            };
            let Some((d, r)) = parsed else {
                return syntax(line, 1, format!("bad stalk item `{item}`, expected `deg d rank r`"));
            };
            if ranks.insert(d, r).is_some() {
                return syntax(line, 1, format!("degree {d} given twice at `{point}`"));
            }
        } else if let Some((lhs, m)) = item.split_once('=') {
            let Some(d) = lhs.trim().strip_prefix("d_").and_then(|d| d.parse::<i32>().ok()) else {
                return syntax(line, 1, format!("bad differential name `{}`", lhs.trim()));
            };
            raw.push((d, m.trim().to_string()));
        } else {
            return syntax(line, 1, format!("bad stalk item `{item}`"));
        }
    }
    let rank = |n: i32| ranks.get(&n).copied().unwrap_or(0);
    let mut diffs = BTreeMap::new();
    for (d, m) in raw {
        diffs.insert(d, matrix(ring, &m, line, rank(d + 1), rank(d))?);
    }
    FreeChainComplex::from_maps(ring, &ranks, &diffs)
        .map_err(|source| SheafError::BadStalk { point: point.to_string(), source }.into())
}

/// The sheaf format: `ring`, an embedded space block, then `stalk` and
/// `gen` lines. Points without a stalk line have zero stalk.
pub fn parse_sheaf(text: &str) -> Result<SheafComplex, ParseError> {
    let ls = lines(text);
    let Some(&(n, first)) = ls.first() else {
        return syntax(1, 1, "empty sheaf file");
    };
    let Some(ring) = keyword(first, "ring") else {
        return syntax(n, 1, "expected `ring Z|Q|F p`");
    };
    let ring = parse_ring(ring).map_err(|e| match e {
        ParseError::Syntax { msg, .. } => ParseError::Syntax { line: n, col: 6, msg },
        other => other,
    })?;
    let mut i = 1;
    let space = space_block(&ls, &mut i, "space")?;
    let mut stalks: Vec<Option<FreeChainComplex>> = vec![None; space.len()];
    let mut gen_lines = Vec::new();
    for &(n, l) in &ls[i..] {
        if let Some(rest) = keyword(l, "stalk") {
            let Some((x, body)) = rest.split_once(':') else {
                return syntax(n, 1, "expected `stalk x: ...`");
            };
            let x = x.trim();
            let p = space.lookup(x)?;
            if stalks[p].is_some() {
                return syntax(n, 1, format!("stalk `{x}` given twice"));
            }
            stalks[p] = Some(stalk(ring, body, n, x)?);
        } else if let Some(rest) = keyword(l, "gen") {
            gen_lines.push((n, rest));
        } else {
            return syntax(n, 1, format!("expected `stalk` or `gen`, found `{l}`"));
        }
    }
    let stalks: Vec<FreeChainComplex> =
        stalks.into_iter().map(|s| s.unwrap_or_else(|| FreeChainComplex::zero(ring))).collect();
    let mut covers = BTreeMap::new();
    for (n, rest) in gen_lines {
        let Some((rel, body)) = rest.split_once(':') else {
            return syntax(n, 1, "expected `gen x<y: ...`");
        };
        let Some((a, b)) = rel.trim().split_once('<') else {
            return syntax(n, 1, format!("bad relation `{}`", rel.trim()));
        };
        let (x, y) = (space.lookup(a.trim())?, space.lookup(b.trim())?);
        let mut comps = BTreeMap::new();
        for item in body.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let parsed = item
                .strip_prefix("deg ")
                .and_then(|r| r.split_once('='))
                .and_then(|(d, m)| d.trim().parse::<i32>().ok().map(|d| (d, m.trim())));
            let Some((d, m)) = parsed else {
                return syntax(n, 1, format!("bad generization item `{item}`, expected `deg d = [[...]]`"));
            };
            comps.insert(d, matrix(ring, m, n, stalks[y].rank(d), stalks[x].rank(d))?);
        }
        if covers.insert((x, y), ChainMap::from_components(ring, comps)).is_some() {
            return syntax(n, 1, format!("generization `{}<{}` given twice", a.trim(), b.trim()));
        }
    }
    Ok(SheafComplex::new(space, ring, stalks, covers)?)
}

/// `source` and `target` space blocks followed by `assign: x=s y=t ...`.
pub fn parse_map(text: &str) -> Result<MonotoneMap, ParseError> {
    let ls = lines(text);
    let mut i = 0;
    let source = space_block(&ls, &mut i, "source")?;
    let target = space_block(&ls, &mut i, "target")?;
    let Some(&(n, l)) = ls.get(i) else {
        return syntax(ls.last().map_or(1, |l| l.0), 1, "expected `assign:`");
    };
    let Some(body) = keyword(l, "assign:") else {
        return syntax(n, 1, "expected `assign:`");
    };
    let mut pairs = Vec::new();
    for tok in body.split_whitespace() {
        match tok.split_once('=') {
            Some((a, b)) if !a.is_empty() && !b.is_empty() => pairs.push((a, b)),
            _ => return syntax(n, 1, format!("bad assignment `{tok}`, expected `x=s`")),
        }
    }
    if let Some(&(n, _)) = ls.get(i + 1) {
        return syntax(n, 1, "unexpected line after assignment");
    }
    Ok(MonotoneMap::from_ids(source, target, &pairs)?)
}

/// `phi: x=1 y=-2`; points not mentioned get 0.
pub fn parse_cons(text: &str, carrier: &FinSpec) -> Result<ConsFunction, ParseError> {
    let body = text.trim();
    let body = body.strip_prefix("phi:").unwrap_or(body);
    let mut pairs = Vec::new();
    for tok in body.split_whitespace() {
        let parsed = tok.split_once('=').and_then(|(x, v)| v.parse::<i64>().ok().map(|v| (x, v)));
        match parsed {
            Some(p) => pairs.push(p),
            None => return syntax(1, 1, format!("bad value `{tok}`, expected `point=integer`")),
        }
    }
    Ok(ConsFunction::from_pairs(carrier, &pairs)?)
}
