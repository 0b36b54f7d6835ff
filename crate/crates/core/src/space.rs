//! Finite spectral spaces presented as finite posets under specialization.
//!
//! `x ≤ y` means `x` lies in the closure of `y` (x is more special). Open
//! sets are up-sets, closed sets are down-sets, and the minimal open
//! neighbourhood of `x` is `↑x`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

/// Index of a point in its [`FinSpec`].
pub type Point = usize;

/// A set of points, by index.
pub type PointSet = BTreeSet<Point>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("specialization relations contain a cycle through `{0}`")]
    CycleDetected(String),
    #[error("assignment is not monotone: {0} <= {1} but images are not related")]
    NotMonotone(String, String),
    #[error("map assignment is incomplete: missing `{0}`")]
    MissingAssignment(String),
    #[error("maps do not share a target")]
    TargetMismatch,
    #[error("invalid stratification: {0}")]
    InvalidStratification(String),
}

#[derive(Clone, Debug)]
pub struct FinSpec {
    name: String,
    ids: Vec<String>,
    index: HashMap<String, Point>,
    /// `leq[x][y]` iff `x ≤ y`.
    leq: Vec<Vec<bool>>,
    covers: Vec<(Point, Point)>,
}

impl PartialEq for FinSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.leq == other.leq
    }
}

impl Eq for FinSpec {}

/// Krull dimension; `Empty` stands for the `-∞` of the empty space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dimension {
    Empty,
    Finite(usize),
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Empty => write!(f, "-inf"),
            Dimension::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetFlags {
    pub open: bool,
    pub closed: bool,
    pub locally_closed: bool,
}

impl FinSpec {
    /// Validates points and relations. Relations need not be covers; the
    /// order is their reflexive-transitive closure.
    pub fn build<S: AsRef<str>>(
        name: &str,
        points: &[S],
        relations: &[(S, S)],
    ) -> Result<FinSpec, SpaceError> {
        let mut index = HashMap::new();
        let mut ids = Vec::new();
        for p in points {
            let p = p.as_ref().to_string();
            if index.insert(p.clone(), ids.len()).is_some() {
                return Err(SpaceError::DuplicatePoint(p));
            }
            ids.push(p);
        }
        let n = ids.len();
        let mut edges = vec![Vec::new(); n];
        for (a, b) in relations {
            let lookup = |s: &str| index.get(s).copied().ok_or(SpaceError::UnknownPoint(s.into()));
            let (x, y) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if x == y {
                return Err(SpaceError::CycleDetected(ids[x].clone()));
            }
            edges[x].push(y);
        }
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            let mut stack = vec![x];
            row[x] = true;
            while let Some(z) = stack.pop() {
                for &w in &edges[z] {
                    if !row[w] {
                        row[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(SpaceError::CycleDetected(ids[x.min(y)].clone()));
                }
            }
        }
        Ok(Self::from_order(name.to_string(), ids, leq))
    }

    fn from_order(name: String, ids: Vec<String>, leq: Vec<Vec<bool>>) -> FinSpec {
        let n = ids.len();
        let mut covers = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y
                    && leq[x][y]
                    && !(0..n).any(|z| z != x && z != y && leq[x][z] && leq[z][y])
                {
                    covers.push((x, y));
                }
            }
        }
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        FinSpec { name, ids, index, leq, covers }
    }

    pub fn empty(name: &str) -> FinSpec {
        Self::from_order(name.to_string(), Vec::new(), Vec::new())
    }

    pub fn point(name: &str, id: &str) -> FinSpec {
        Self::from_order(name.to_string(), vec![id.to_string()], vec![vec![true]])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> FinSpec {
        self.name = name.to_string();
        self
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<Point> {
        0..self.ids.len()
    }

    pub fn id(&self, x: Point) -> &str {
        &self.ids[x]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn lookup(&self, id: &str) -> Result<Point, SpaceError> {
        self.index.get(id).copied().ok_or_else(|| SpaceError::UnknownPoint(id.to_string()))
    }

    pub fn leq(&self, x: Point, y: Point) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: Point, y: Point) -> bool {
        x != y && self.leq[x][y]
    }

    /// Cover relations `x < y`, sorted by index.
    pub fn covers(&self) -> &[(Point, Point)] {
        &self.covers
    }

    pub fn is_cover(&self, x: Point, y: Point) -> bool {
        self.covers.binary_search(&(x, y)).is_ok()
    }

    /// `↑x`, the minimal open neighbourhood.
    pub fn up(&self, x: Point) -> PointSet {
        self.points().filter(|&y| self.leq[x][y]).collect()
    }

    /// `↓x`, the closure of `{x}`.
    pub fn down(&self, x: Point) -> PointSet {
        self.points().filter(|&y| self.leq[y][x]).collect()
    }

    pub fn up_closure(&self, s: &PointSet) -> PointSet {
        self.points().filter(|&y| s.iter().any(|&x| self.leq[x][y])).collect()
    }

    pub fn down_closure(&self, s: &PointSet) -> PointSet {
        self.points().filter(|&y| s.iter().any(|&x| self.leq[y][x])).collect()
    }

    pub fn all(&self) -> PointSet {
        self.points().collect()
    }

    pub fn complement(&self, s: &PointSet) -> PointSet {
        self.points().filter(|x| !s.contains(x)).collect()
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        self.up_closure(s) == *s
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.down_closure(s) == *s
    }

    /// Open in its closure, equivalently convex.
    pub fn is_locally_closed(&self, s: &PointSet) -> bool {
        let down = self.down_closure(s);
        let up = self.up_closure(s);
        down.intersection(&up).copied().collect::<PointSet>() == *s
    }

    pub fn classify_subset(&self, s: &PointSet) -> Result<SubsetFlags, SpaceError> {
        if let Some(&bad) = s.iter().find(|&&x| x >= self.len()) {
            return Err(SpaceError::UnknownPoint(format!("#{bad}")));
        }
        Ok(SubsetFlags {
            open: self.is_open(s),
            closed: self.is_closed(s),
            locally_closed: self.is_locally_closed(s),
        })
    }

    pub fn subset_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<PointSet, SpaceError> {
        ids.iter().map(|s| self.lookup(s.as_ref())).collect()
    }

    pub fn format_subset(&self, s: &PointSet) -> String {
        let names: Vec<&str> = s.iter().map(|&x| self.id(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Length of the longest strict chain.
    pub fn krull_dim(&self) -> Dimension {
        if self.is_empty() {
            return Dimension::Empty;
        }
        let order = self.linear_extension();
        let mut height = vec![0usize; self.len()];
        for &y in &order {
            for &x in &order {
                if self.lt(x, y) {
                    height[y] = height[y].max(height[x] + 1);
                }
            }
        }
        Dimension::Finite(height.into_iter().max().unwrap_or(0))
    }

    /// Linear extension listing minimal elements first; ties broken by
    /// identifier order.
    pub fn linear_extension(&self) -> Vec<Point> {
        let n = self.len();
        let mut remaining_below: Vec<usize> =
            (0..n).map(|y| (0..n).filter(|&x| self.lt(x, y)).count()).collect();
        let mut ready: BTreeMap<&str, Point> = (0..n)
            .filter(|&y| remaining_below[y] == 0)
            .map(|y| (self.ids[y].as_str(), y))
            .collect();
        let mut out = Vec::with_capacity(n);
        while let Some((_, x)) = ready.pop_first() {
            out.push(x);
            for (y, below) in remaining_below.iter_mut().enumerate() {
                if self.lt(x, y) {
                    *below -= 1;
                    if *below == 0 {
                        ready.insert(self.ids[y].as_str(), y);
                    }
                }
            }
        }
        out
    }

    /// Stratification by singletons in an admissible order: every prefix
    /// union is closed.
    pub fn admissible_order(&self) -> Stratification {
        let strata = self.linear_extension().into_iter().map(|x| PointSet::from([x])).collect();
        Stratification { space: self.clone(), strata }
    }

    /// Induced subspace with points kept in index order, plus the embedding.
    pub fn subspace(&self, s: &PointSet, name: &str) -> (FinSpec, Vec<Point>) {
        let emb: Vec<Point> = s.iter().copied().collect();
        let ids = emb.iter().map(|&x| self.ids[x].clone()).collect();
        let leq = emb.iter().map(|&x| emb.iter().map(|&y| self.leq[x][y]).collect()).collect();
        (Self::from_order(name.to_string(), ids, leq), emb)
    }

    /// Strict chains `x_0 < ... < x_n` inside `s`, ordered by length, then
    /// lexicographically by point index.
    pub fn chains_in(&self, s: &PointSet) -> Vec<Vec<Point>> {
        let pts: Vec<Point> = s.iter().copied().collect();
        let mut all = Vec::new();
        let mut frontier: Vec<Vec<Point>> = pts.iter().map(|&x| vec![x]).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for c in &frontier {
                let last = *c.last().unwrap();
                for &y in &pts {
                    if self.lt(last, y) {
                        let mut d = c.clone();
                        d.push(y);
                        next.push(d);
                    }
                }
            }
            all.append(&mut frontier);
            next.sort();
            frontier = next;
        }
        all
    }
}

impl fmt::Display for FinSpec {
    /// The `space` / `points:` / `covers:` text block.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space {}", self.name)?;
        writeln!(f, "points: {}", self.ids.join(" "))?;
        let covers: Vec<String> =
            self.covers.iter().map(|&(x, y)| format!("{}<{}", self.ids[x], self.ids[y])).collect();
        write!(f, "covers: {}", covers.join(" "))
    }
}

/// Ordered partition into locally closed strata such that the union of the
/// first `k` strata is closed for every `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    space: FinSpec,
    strata: Vec<PointSet>,
}

impl Stratification {
    pub fn new(space: FinSpec, strata: Vec<PointSet>) -> Result<Self, SpaceError> {
        let bad = |m: &str| Err(SpaceError::InvalidStratification(m.to_string()));
        let mut seen = PointSet::new();
        for s in &strata {
            if s.is_empty() {
                return bad("empty stratum");
            }
            if !space.is_locally_closed(s) {
                return bad("stratum is not locally closed");
            }
            for &x in s {
                if x >= space.len() || !seen.insert(x) {
                    return bad("strata overlap or reference unknown points");
                }
            }
            if !space.is_closed(&seen) {
                return bad("prefix union is not closed");
            }
        }
        if seen.len() != space.len() {
            return bad("strata do not cover the space");
        }
        Ok(Stratification { space, strata })
    }

    pub fn space(&self) -> &FinSpec {
        &self.space
    }

    pub fn strata(&self) -> &[PointSet] {
        &self.strata
    }

    /// Points in stratum order, for singleton stratifications.
    pub fn points(&self) -> Vec<Point> {
        self.strata.iter().flatten().copied().collect()
    }
}

/// Order-preserving map of finite posets (a continuous map of the
/// associated spaces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: FinSpec,
    target: FinSpec,
    assignment: Vec<Point>,
}

impl MonotoneMap {
    pub fn new(source: FinSpec, target: FinSpec, assignment: Vec<Point>) -> Result<Self, SpaceError> {
        if assignment.len() != source.len() {
            let missing = source.ids.get(assignment.len()).cloned().unwrap_or_default();
            return Err(SpaceError::MissingAssignment(missing));
        }
        if let Some(&bad) = assignment.iter().find(|&&q| q >= target.len()) {
            return Err(SpaceError::UnknownPoint(format!("#{bad}")));
        }
        for x in source.points() {
            for y in source.points() {
                if source.leq(x, y) && !target.leq(assignment[x], assignment[y]) {
                    return Err(SpaceError::NotMonotone(source.ids[x].clone(), source.ids[y].clone()));
                }
            }
        }
        Ok(MonotoneMap { source, target, assignment })
    }

    pub fn from_ids<S: AsRef<str>>(
        source: FinSpec,
        target: FinSpec,
        pairs: &[(S, S)],
    ) -> Result<Self, SpaceError> {
        let mut assignment = vec![None; source.len()];
        for (a, b) in pairs {
            let x = source.lookup(a.as_ref())?;
            assignment[x] = Some(target.lookup(b.as_ref())?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(x, q)| q.ok_or_else(|| SpaceError::MissingAssignment(source.ids[x].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, assignment)
    }

    pub fn identity(space: &FinSpec) -> Self {
        MonotoneMap { source: space.clone(), target: space.clone(), assignment: space.points().collect() }
    }

    /// Inclusion of a subspace.
    pub fn inclusion(space: &FinSpec, s: &PointSet, name: &str) -> Self {
        let (sub, emb) = space.subspace(s, name);
        MonotoneMap { source: sub, target: space.clone(), assignment: emb }
    }

    /// Map from `source` to the one-point space.
    pub fn to_point(source: &FinSpec) -> Self {
        MonotoneMap {
            source: source.clone(),
            target: FinSpec::point("pt", "*"),
            assignment: vec![0; source.len()],
        }
    }

    pub fn source(&self) -> &FinSpec {
        &self.source
    }

    pub fn target(&self) -> &FinSpec {
        &self.target
    }

    pub fn apply(&self, x: Point) -> Point {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[Point] {
        &self.assignment
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &MonotoneMap) -> Result<MonotoneMap, SpaceError> {
        if first.target != self.source {
            return Err(SpaceError::TargetMismatch);
        }
        Ok(MonotoneMap {
            source: first.source.clone(),
            target: self.target.clone(),
            assignment: first.assignment.iter().map(|&y| self.assignment[y]).collect(),
        })
    }

    pub fn preimage(&self, s: &PointSet) -> PointSet {
        self.source.points().filter(|&x| s.contains(&self.assignment[x])).collect()
    }

    pub fn fiber(&self, q: Point) -> PointSet {
        self.source.points().filter(|&x| self.assignment[x] == q).collect()
    }

    /// Every fiber is an antichain.
    pub fn fibers_discrete(&self) -> bool {
        self.source.points().all(|x| {
            self.source.points().all(|y| !(self.source.lt(x, y) && self.assignment[x] == self.assignment[y]))
        })
    }
}

/// `X ×_S T` with its two projections.
#[derive(Clone, Debug)]
pub struct FiberProduct {
    pub space: FinSpec,
    /// Projection to the source of the first map.
    pub to_first: MonotoneMap,
    /// Projection to the source of the second map.
    pub to_second: MonotoneMap,
}

/// Pairs with equal image under the componentwise order.
pub fn fiber_product(f: &MonotoneMap, p: &MonotoneMap) -> Result<FiberProduct, SpaceError> {
    if f.target != p.target {
        return Err(SpaceError::TargetMismatch);
    }
    let (x, t) = (&f.source, &p.source);
    let pairs: Vec<(Point, Point)> = x
        .points()
        .flat_map(|a| t.points().map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == p.apply(b))
        .collect();
    let ids = pairs.iter().map(|&(a, b)| format!("({},{})", x.id(a), t.id(b))).collect();
    let leq = pairs
        .iter()
        .map(|&(a, b)| pairs.iter().map(|&(c, d)| x.leq(a, c) && t.leq(b, d)).collect())
        .collect();
    let name = format!("{}x{}", x.name(), t.name());
    let space = FinSpec::from_order(name, ids, leq);
    let to_first = MonotoneMap {
        source: space.clone(),
        target: x.clone(),
        assignment: pairs.iter().map(|pr| pr.0).collect(),
    };
    let to_second = MonotoneMap {
        source: space.clone(),
        target: t.clone(),
        assignment: pairs.iter().map(|pr| pr.1).collect(),
    };
    Ok(FiberProduct { space, to_first, to_second })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sierpinski() -> FinSpec {
        FinSpec::build("S", &["s", "eta"], &[("s", "eta")]).unwrap()
    }

    fn set(xs: &[Point]) -> PointSet {
        xs.iter().copied().collect()
    }

    /// All subsets, as bitmasks, that are open.
    fn open_masks(m: &FinSpec) -> Vec<u64> {
        (0..1u64 << m.len())
            .filter(|&mask| {
                let s: PointSet = m.points().filter(|&x| mask >> x & 1 == 1).collect();
                m.is_open(&s)
            })
            .collect()
    }

    #[test]
    fn sierpinski_opens() {
        let m = sierpinski();
        assert_eq!(open_masks(&m), vec![0b00, 0b10, 0b11]);
    }

    #[test]
    fn build_errors() {
        assert!(matches!(
            FinSpec::build("X", &["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(SpaceError::CycleDetected(_))
        ));
        assert!(matches!(
            FinSpec::build("X", &["a", "a"], &[]),
            Err(SpaceError::DuplicatePoint(_))
        ));
        let one = FinSpec::build::<&str>("X", &["x"], &[]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.krull_dim(), Dimension::Finite(0));
    }

    #[test]
    fn non_cover_relations_are_reduced() {
        let m = FinSpec::build("C", &["x", "y", "z"], &[("x", "y"), ("y", "z"), ("x", "z")]).unwrap();
        assert_eq!(m.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(m.krull_dim(), Dimension::Finite(2));
    }

    #[test]
    fn classify_examples() {
        let m = sierpinski();
        let eta = m.classify_subset(&set(&[1])).unwrap();
        assert_eq!(eta, SubsetFlags { open: true, closed: false, locally_closed: true });
        let s = m.classify_subset(&set(&[0])).unwrap();
        assert_eq!(s, SubsetFlags { open: false, closed: true, locally_closed: true });
        let e = m.classify_subset(&PointSet::new()).unwrap();
        assert_eq!(e, SubsetFlags { open: true, closed: true, locally_closed: true });
        assert!(m.classify_subset(&set(&[5])).is_err());
        let chain = FinSpec::build("C", &["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
        assert!(!chain.is_locally_closed(&set(&[0, 2])));
    }

    #[test]
    fn dimensions() {
        assert_eq!(sierpinski().krull_dim(), Dimension::Finite(1));
        let anti = FinSpec::build::<&str>("A", &["a", "b", "c", "d", "e"], &[]).unwrap();
        assert_eq!(anti.krull_dim(), Dimension::Finite(0));
        let chain =
            FinSpec::build("C", &["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d")]).unwrap();
        assert_eq!(chain.krull_dim(), Dimension::Finite(3));
        assert_eq!(FinSpec::empty("E").krull_dim(), Dimension::Empty);
        assert_eq!(Dimension::Empty.to_string(), "-inf");
    }

    #[test]
    fn admissible_orders() {
        let m = sierpinski();
        assert_eq!(m.admissible_order().points(), vec![0, 1]);
        let anti = FinSpec::build::<&str>("A", &["b", "a"], &[]).unwrap();
        assert_eq!(anti.admissible_order().points(), vec![1, 0]);
        let chain = FinSpec::build("C", &["z", "y", "x"], &[("x", "y"), ("y", "z")]).unwrap();
        assert_eq!(chain.admissible_order().points(), vec![2, 1, 0]);
    }

    #[test]
    fn fiber_product_examples() {
        let s = sierpinski();
        let j = MonotoneMap::inclusion(&s, &set(&[1]), "U");
        let i = MonotoneMap::inclusion(&s, &set(&[0]), "Z");
        assert!(fiber_product(&j, &i).unwrap().space.is_empty());
        let id = MonotoneMap::identity(&s);
        let diag = fiber_product(&id, &id).unwrap();
        assert_eq!(diag.space.len(), 2);
        assert_eq!(diag.space.krull_dim(), Dimension::Finite(1));
        let anti = FinSpec::build::<&str>("X", &["a", "b"], &[]).unwrap();
        let f = MonotoneMap::to_point(&anti);
        let pt = MonotoneMap::identity(f.target());
        let fp = fiber_product(&f, &pt).unwrap();
        assert_eq!(fp.space.len(), 2);
        assert!(fp.space.covers().is_empty());
    }

    #[test]
    fn discrete_fibers() {
        let s = sierpinski();
        let anti = FinSpec::build::<&str>("X", &["a", "b"], &[]).unwrap();
        let f = MonotoneMap::new(anti, s.clone(), vec![0, 1]).unwrap();
        assert!(f.fibers_discrete());
        assert!(!MonotoneMap::to_point(&s).fibers_discrete());
        assert!(MonotoneMap::identity(&s).fibers_discrete());
    }

    #[test]
    fn monotonicity_is_enforced() {
        let s = sierpinski();
        assert!(matches!(
            MonotoneMap::new(s.clone(), s.clone(), vec![1, 0]),
            Err(SpaceError::NotMonotone(_, _))
        ));
    }

    #[test]
    fn chains_of_the_pseudo_circle() {
        let m = FinSpec::build(
            "P",
            &["a", "b", "x", "y"],
            &[("a", "x"), ("a", "y"), ("b", "x"), ("b", "y")],
        )
        .unwrap();
        let chains = m.chains_in(&m.all());
        assert_eq!(chains.len(), 8);
        assert_eq!(chains.iter().filter(|c| c.len() == 2).count(), 4);
    }
}
