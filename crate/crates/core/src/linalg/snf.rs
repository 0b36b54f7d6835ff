//! Smith normal form over a Euclidean ring (the integers or a field).

use num_bigint::BigInt;
use num_traits::Zero;

use super::matrix::Matrix;
use super::ring::{Scalar, ScalarRing};

/// `u * m * v = s` with `u`, `v` invertible and `s` diagonal,
/// `s[0][0] | s[1][1] | ...`, each diagonal entry a canonical associate.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        let n = self.s.rows().min(self.s.cols());
        (0..n).take_while(|&i| !self.s[(i, i)].is_zero()).count()
    }

    /// Nonzero diagonal entries.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank()).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: Matrix,
    u: Option<Matrix>,
    v: Option<Matrix>,
}

impl Reducer {
    fn ring(&self) -> ScalarRing {
        self.a.ring()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_row_multiple(target, source, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, c);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, c: &Scalar) {
        self.a.add_col_multiple(target, source, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Scalar) {
        self.a.scale_row(i, c);
        if let Some(u) = &mut self.u {
            u.scale_row(i, c);
        }
    }

    /// Position of a nonzero entry of minimal norm among `cells`.
    fn min_norm(&self, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
        let ring = self.ring();
        let mut best: Option<((usize, usize), BigInt)> = None;
        for (i, j) in cells {
            let x = &self.a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let n = ring.norm(x);
            if best.as_ref().is_none_or(|(_, b)| n < *b) {
                best = Some(((i, j), n));
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(&mut self) {
        let ring = self.ring();
        let (rows, cols) = self.a.shape();
        for t in 0..rows.min(cols) {
            let sub = (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)));
            let Some((pi, pj)) = self.min_norm(sub) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..rows {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[(i, t)], &pivot);
                    self.add_row(i, t, &ring.neg(&q));
                    clean &= r.is_zero();
                }
                for j in t + 1..cols {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = ring.div_rem(&self.a[(t, j)], &pivot);
                    self.add_col(j, t, &ring.neg(&q));
                    clean &= r.is_zero();
                }
                if !clean {
                    let line = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
                    let (pi, pj) = self.min_norm(line).expect("pivot line cannot vanish");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // Row and column are clear; enforce divisibility of the rest.
                let offender = (t + 1..rows)
                    .find(|&i| (t + 1..cols).any(|j| !ring.divides(&pivot, &self.a[(i, j)])));
                match offender {
                    Some(i) => self.add_row(t, i, &ring.one()),
                    None => break,
                }
            }
            let unit = ring.normalizing_unit(&self.a[(t, t)]);
            self.scale_row(t, &unit);
        }
    }
}

pub fn snf(m: &Matrix) -> SmithForm {
    let ring = m.ring();
    let mut r = Reducer {
        a: m.clone(),
        u: Some(Matrix::identity(ring, m.rows())),
        v: Some(Matrix::identity(ring, m.cols())),
    };
    r.run();
    SmithForm { s: r.a, u: r.u.unwrap(), v: r.v.unwrap() }
}

/// Nonzero diagonal of the Smith form, without tracking transforms.
pub fn invariant_factors(m: &Matrix) -> Vec<Scalar> {
    let mut r = Reducer { a: m.clone(), u: None, v: None };
    r.run();
    let n = m.rows().min(m.cols());
    (0..n).map(|i| r.a[(i, i)].clone()).take_while(|x| !x.is_zero()).collect()
}

pub fn rank(m: &Matrix) -> usize {
    invariant_factors(m).len()
}

/// Basis (as columns) of the kernel of `m`; a direct summand of the source.
pub fn kernel(m: &Matrix) -> Matrix {
    let form = snf(m);
    let r = form.rank();
    let idx: Vec<usize> = (r..m.cols()).collect();
    form.v.select_columns(&idx)
}

/// Column span of a matrix, prepared for repeated membership queries.
#[derive(Clone, Debug)]
pub struct ColumnSpan {
    form: SmithForm,
    rank: usize,
}

impl ColumnSpan {
    pub fn new(m: &Matrix) -> Self {
        let form = snf(m);
        let rank = form.rank();
        ColumnSpan { form, rank }
    }

    /// Whether `y` is a ring-linear combination of the columns.
    pub fn contains(&self, y: &[Scalar]) -> bool {
        let ring = self.form.s.ring();
        let z = self.form.u.mul_vec(y);
        z.iter().enumerate().all(|(i, zi)| {
            if i < self.rank {
                ring.divides(&self.form.s[(i, i)], zi)
            } else {
                zi.is_zero()
            }
        })
    }
}
