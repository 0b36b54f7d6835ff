use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;

use super::ring::{Scalar, ScalarRing};

/// Dense row-major matrix over a [`ScalarRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    ring: ScalarRing,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(ring: ScalarRing, rows: usize, cols: usize) -> Self {
        Matrix { ring, rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(ring: ScalarRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m[(i, i)] = ring.one();
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry into the ring.
    /// Panics on ragged input or entries outside the ring.
    pub fn from_rows(ring: ScalarRing, rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        let data = rows.into_iter().flatten().map(|x| ring.reduce(x)).collect();
        Matrix { ring, rows: r, cols: c, data }
    }

    pub fn from_i64(ring: ScalarRing, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            ring,
            rows.iter().map(|row| row.iter().map(|&v| ring.from_i64(v)).collect()).collect(),
        )
    }

    pub fn from_fn(
        ring: ScalarRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(ring.reduce(f(i, j)));
            }
        }
        Matrix { ring, rows, cols, data }
    }

    /// Diagonal `rows x cols` matrix with the given leading diagonal entries.
    pub fn diagonal(ring: ScalarRing, rows: usize, cols: usize, diag: &[Scalar]) -> Self {
        let mut m = Self::zeros(ring, rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = ring.reduce(d.clone());
        }
        m
    }

    pub fn ring(&self) -> ScalarRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in product");
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let ring = self.ring;
        let mut out = Matrix::zeros(ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    let slot = &mut out.data[i * rhs.cols + j];
                    *slot = ring.add(slot, &prod);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = self.ring.add(&acc, &self.ring.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sum");
        let ring = self.ring;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| ring.add(a, b)).collect();
        Matrix { ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let ring = self.ring;
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| ring.neg(a)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let ring = self.ring;
        let c = ring.reduce(c.clone());
        Matrix {
            ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| ring.mul(a, &c)).collect(),
        }
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, k: i64) -> Matrix {
        if k.rem_euclid(2) == 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    /// Kronecker product; row index `i * rhs.rows + k`, column `j * rhs.cols + l`.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.ring, rhs.ring, "ring mismatch in Kronecker product");
        let ring = self.ring;
        let mut out = Matrix::zeros(ring, self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        let b = &rhs[(k, l)];
                        if !b.is_zero() {
                            out[(i * rhs.rows + k, j * rhs.cols + l)] = ring.mul(a, b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "row mismatch in hstack");
        Matrix::from_fn(self.ring, self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - self.cols)].clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols, "column mismatch in vstack");
        Matrix::from_fn(self.ring, self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self[(i, j)].clone()
            } else {
                rhs[(i - self.rows, j)].clone()
            }
        })
    }

    pub fn block_diag(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows + rhs.rows, self.cols + rhs.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, rhs);
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r, c)`.
    pub fn set_block(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r + i, c + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Adds `block` into `self` at `(r, c)`.
    pub fn add_block(&mut self, r: usize, c: usize, block: &Matrix) {
        assert!(r + block.rows <= self.rows && c + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                let b = &block[(i, j)];
                if !b.is_zero() {
                    let slot = &mut self.data[(r + i) * self.cols + c + j];
                    *slot = self.ring.add(slot, b);
                }
            }
        }
    }

    pub fn block(&self, r: usize, c: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.ring, rows, cols, |i, j| self[(r + i, c + j)].clone())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let v = self.ring.mul(s, c);
            let slot = &mut self.data[target * self.cols + j];
            *slot = self.ring.add(slot, &v);
        }
    }

    /// `col[target] += c * col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let v = self.ring.mul(s, c);
            let slot = &mut self.data[i * self.cols + target];
            *slot = self.ring.add(slot, &v);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.ring.mul(&self.data[i * self.cols + j], c);
            self.data[i * self.cols + j] = v;
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Scalar) {
        for i in 0..self.rows {
            let v = self.ring.mul(&self.data[i * self.cols + j], c);
            self.data[i * self.cols + j] = v;
        }
    }

    /// Determinant computed by elimination over the fraction field.
    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let ring = self.ring;
        // Integer matrices are eliminated over Q; the result is integral.
        let field = if ring == ScalarRing::Integers { ScalarRing::Rationals } else { ring };
        let mut a = self.clone();
        a.ring = field;
        let mut det = field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Scalar::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = field.neg(&det);
            }
            let pivot = a[(k, k)].clone();
            det = field.mul(&det, &pivot);
            let inv = field.inverse(&pivot);
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let c = field.neg(&field.mul(&a[(i, k)], &inv));
                a.add_row_multiple(i, k, &c);
            }
        }
        ring.reduce(det)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    /// Row-major bracket form `[[a,b],[c,d]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
