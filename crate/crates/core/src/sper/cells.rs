//! Functions on the cells of a finite set of real algebraic numbers, and
//! constructible subsets of the real spectrum of the line.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::algebraic::AlgNumber;
use super::point::SperPoint;
use crate::k0::ConsFunction;
use crate::space::FinSpec;

/// Separates isolating intervals: sorted, distinct, with `hi_i <= lo_{i+1}`.
pub fn separate(mut roots: Vec<AlgNumber>) -> Vec<AlgNumber> {
    roots.sort();
    roots.dedup();
    loop {
        let mut clean = true;
        for i in 1..roots.len() {
            while roots[i - 1].hi() > roots[i].lo() {
                clean = false;
                roots[i - 1] = roots[i - 1].refine();
                roots[i] = roots[i].refine();
            }
        }
        if clean {
            return roots;
        }
    }
}

/// A value on every cell `I_0, {a_1}, I_1, ..., {a_k}, I_k` of a sorted root
/// set; cell `2j` is the interval `I_j`, cell `2j + 1` the point `a_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap<V> {
    roots: Vec<AlgNumber>,
    values: Vec<V>,
}

pub type SperConstructible = CellMap<bool>;

/// A constructible function on the real line.
pub type LineFunction = CellMap<i64>;

impl<V: Clone + PartialEq> CellMap<V> {
    pub fn constant(v: V) -> Self {
        CellMap { roots: Vec::new(), values: vec![v] }
    }

    /// Roots are separated; `values` has one entry per cell of the result.
    pub fn new(roots: Vec<AlgNumber>, values: Vec<V>) -> Self {
        let roots = separate(roots);
        assert_eq!(values.len(), 2 * roots.len() + 1, "one value per cell");
        CellMap { roots, values }
    }

    /// Values computed at a sample of every cell.
    pub fn from_samples(roots: Vec<AlgNumber>, mut f: impl FnMut(&SperPoint) -> V) -> Self {
        let roots = separate(roots);
        let cells = CellMap::<V> { roots, values: Vec::new() };
        let values = (0..2 * cells.roots.len() + 1).map(|c| f(&cells.sample(c))).collect();
        CellMap { roots: cells.roots, values }
    }

    pub fn roots(&self) -> &[AlgNumber] {
        &self.roots
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn cell_count(&self) -> usize {
        self.values.len()
    }

    pub fn is_point_cell(c: usize) -> bool {
        c % 2 == 1
    }

    /// A rational sample in interval cell `I_j`, or the root itself.
    pub fn sample(&self, c: usize) -> SperPoint {
        if Self::is_point_cell(c) {
            return SperPoint::Alg(self.roots[c / 2].clone());
        }
        SperPoint::rational(&self.interval_sample(c / 2, 1, 2))
    }

    /// The point `num/den` of the way across `I_j`; unbounded intervals use
    /// distance `num` beyond the last root.
    pub fn interval_sample(&self, j: usize, num: i64, den: i64) -> BigRational {
        let k = self.roots.len();
        let frac = BigRational::new(BigInt::from(num), BigInt::from(den));
        let step = BigRational::from_integer(BigInt::from(num));
        if k == 0 {
            return frac;
        }
        if j == 0 {
            return self.roots[0].lo() - BigRational::one() - step;
        }
        if j == k {
            return self.roots[k - 1].hi() + BigRational::one() + step;
        }
        let (lo, hi) = (self.roots[j - 1].hi(), self.roots[j].lo());
        lo + (hi - lo) * frac
    }

    /// Cell containing the algebraic point `b`.
    pub fn locate_alg(&self, b: &AlgNumber) -> usize {
        let mut j = 0;
        for (i, a) in self.roots.iter().enumerate() {
            match b.compare(a) {
                std::cmp::Ordering::Equal => return 2 * i + 1,
                std::cmp::Ordering::Greater => j = i + 1,
                std::cmp::Ordering::Less => break,
            }
        }
        2 * j
    }

    pub fn locate(&self, x: &SperPoint) -> usize {
        match x {
            SperPoint::NegInf => 0,
            SperPoint::PosInf => 2 * self.roots.len(),
            SperPoint::Alg(b) => self.locate_alg(b),
            SperPoint::CutPlus(b) => {
                let c = self.locate_alg(b);
                if Self::is_point_cell(c) {
                    c + 1
                } else {
                    c
                }
            }
            SperPoint::CutMinus(b) => {
                let c = self.locate_alg(b);
                if Self::is_point_cell(c) {
                    c - 1
                } else {
                    c
                }
            }
        }
    }

    pub fn value_at(&self, x: &SperPoint) -> &V {
        &self.values[self.locate(x)]
    }

    /// The same function on a finer root set containing this one's roots.
    pub fn refine_to(&self, roots: &[AlgNumber]) -> Self {
        let roots = separate(roots.to_vec());
        let mut values = Vec::with_capacity(2 * roots.len() + 1);
        for j in 0..=roots.len() {
            let left = if j == 0 { SperPoint::NegInf } else { SperPoint::CutPlus(roots[j - 1].clone()) };
            values.push(self.value_at(&left).clone());
            if j < roots.len() {
                values.push(self.values[self.locate_alg(&roots[j])].clone());
            }
        }
        CellMap { roots, values }
    }

    pub fn map<W: Clone + PartialEq>(&self, f: impl Fn(&V) -> W) -> CellMap<W> {
        CellMap { roots: self.roots.clone(), values: self.values.iter().map(f).collect() }
    }

    /// Pointwise combination on the common refinement, normalized.
    pub fn zip_with<U: Clone + PartialEq, W: Clone + PartialEq>(
        &self,
        other: &CellMap<U>,
        f: impl Fn(&V, &U) -> W,
    ) -> CellMap<W> {
        let roots = separate(self.roots.iter().chain(&other.roots).cloned().collect());
        let a = self.refine_to(&roots);
        let b = other.refine_to(&roots);
        let values = a.values.iter().zip(&b.values).map(|(x, y)| f(x, y)).collect();
        CellMap { roots, values }.normalized()
    }

    /// Drops roots whose three surrounding cells agree.
    pub fn normalized(&self) -> Self {
        let mut roots = Vec::new();
        let mut values = vec![self.values[0].clone()];
        for (i, a) in self.roots.iter().enumerate() {
            let (p, r) = (&self.values[2 * i + 1], &self.values[2 * i + 2]);
            if values.last() == Some(p) && p == r {
                continue;
            }
            roots.push(a.clone());
            values.push(p.clone());
            values.push(r.clone());
        }
        CellMap { roots, values }
    }

    /// Labels `(-inf,a1) {a1} (a1,a2) ... (ak,+inf)`.
    pub fn cell_labels(&self) -> Vec<String> {
        cell_labels(self.roots.len())
    }
}

pub(crate) fn cell_labels(k: usize) -> Vec<String> {
    let end = |j: usize| if j == 0 { "-inf".to_string() } else { format!("a{j}") };
    let start = |j: usize| if j == k { "+inf".to_string() } else { format!("a{}", j + 1) };
    let mut out = Vec::new();
    for j in 0..=k {
        out.push(format!("({},{})", end(j), start(j)));
        if j < k {
            out.push(format!("{{a{}}}", j + 1));
        }
    }
    out
}

impl SperConstructible {
    pub fn whole() -> Self {
        Self::constant(true)
    }

    pub fn empty() -> Self {
        Self::constant(false)
    }

    pub fn contains(&self, x: &SperPoint) -> bool {
        *self.value_at(x)
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a || *b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| *a && *b)
    }

    pub fn complement(&self) -> Self {
        self.map(|a| !a).normalized()
    }

    /// Adds the finite endpoints of every included interval: cuts
    /// specialize to their centers.
    pub fn closure(&self) -> Self {
        let mut values = self.values.clone();
        for j in 0..=self.roots.len() {
            if self.values[2 * j] {
                if j > 0 {
                    values[2 * j - 1] = true;
                }
                if j < self.roots.len() {
                    values[2 * j + 1] = true;
                }
            }
        }
        CellMap { roots: self.roots.clone(), values }.normalized()
    }

    pub fn interior(&self) -> Self {
        self.complement().closure().complement()
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    pub fn is_open(&self) -> bool {
        self.interior() == *self
    }

    /// Cells that are included.
    pub fn included_cells(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&c| self.values[c]).collect()
    }
}

impl LineFunction {
    /// The same function on the finite cell space.
    pub fn to_cons(&self) -> ConsFunction {
        ConsFunction::new(cell_poset(self.roots.len()), self.values.clone())
    }

    pub fn from_cons(roots: Vec<AlgNumber>, phi: &ConsFunction) -> Self {
        Self::new(roots, phi.values().to_vec())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn indicator(s: &SperConstructible) -> Self {
        s.map(|&b| b as i64)
    }
}

/// Finite space of the cells of `k` roots, with every point cell `a_i` a
/// specialization of the intervals `I_{i-1}` and `I_i` beside it. Points
/// are named `I0 a1 I1 ... ak Ik`, in cell order.
pub fn cell_poset(k: usize) -> FinSpec {
    let mut ids = Vec::new();
    for j in 0..=k {
        ids.push(format!("I{j}"));
        if j < k {
            ids.push(format!("a{}", j + 1));
        }
    }
    let mut rel = Vec::new();
    for i in 1..=k {
        rel.push((format!("a{i}"), format!("I{}", i - 1)));
        rel.push((format!("a{i}"), format!("I{i}")));
    }
    FinSpec::build("cells", &ids, &rel).expect("cell poset is a fence")
}
