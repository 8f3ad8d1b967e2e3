use std::fmt;

use super::scalar::{Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over one field. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Mat { field, rows, cols, data }
    }

    /// Builds a matrix from rows; every row needs `cols` entries.
    pub fn from_rows(field: Field, rows: usize, cols: usize, entries: Vec<Vec<Scalar>>) -> Result<Mat> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::Input(format!("expected a {rows}x{cols} matrix")));
        }
        Ok(Mat { field, rows, cols, data: entries.into_iter().flatten().collect() })
    }

    pub fn from_ints(field: Field, entries: &[Vec<i64>]) -> Mat {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        assert!(entries.iter().all(|r| r.len() == cols), "ragged integer matrix");
        Mat::from_fn(field, rows, cols, |r, c| field.from_i64(entries[r][c]))
    }

    /// Column matrix of a vector.
    pub fn column(field: Field, v: &[Scalar]) -> Mat {
        Mat { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        Mat::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// Reshapes a flat row-major vector.
    pub fn from_flat(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Mat {
        assert_eq!(data.len(), rows * cols);
        Mat { field, rows, cols, data }
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn flat(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_flat(self) -> Vec<Scalar> {
        self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.scale(&self.field.one().neg())
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(s)).collect(),
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, c0, p);
            c0 += p.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.set_block(r0, 0, p);
            r0 += p.rows;
        }
        out
    }

    pub fn block_diag(field: Field, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|p| p.rows).sum();
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for p in parts {
            out.set_block(r0, c0, p);
            r0 += p.rows;
            c0 += p.cols;
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv();
            m.scale_row(row, &inv);
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.add_row_multiple(r, row, &factor.neg());
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, r: usize, s: &Scalar) {
        for c in 0..self.cols {
            let idx = r * self.cols + c;
            self.data[idx] = self.data[idx].mul(s);
        }
    }

    /// row[target] += s * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, s: &Scalar) {
        for c in 0..self.cols {
            let v = self.data[source * self.cols + c].clone();
            if !v.is_zero() {
                let idx = target * self.cols + c;
                self.data[idx].add_mul(s, &v);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Right null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut vectors = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, free).neg();
            }
            vectors.push(v);
        }
        Subspace::span(self.field, self.cols, &vectors)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..self.cols).map(|c| self.col(c)).collect();
        Subspace::span(self.field, self.rows, &cols)
    }

    /// Solves `self * x = b`. Returns `None` when inconsistent, otherwise a
    /// particular solution and the kernel.
    pub fn solve_affine(&self, b: &[Scalar]) -> Result<Option<(Vec<Scalar>, Subspace)>> {
        if b.len() != self.rows {
            return Err(Error::Input(format!(
                "right-hand side has length {} but the matrix has {} rows",
                b.len(),
                self.rows
            )));
        }
        let aug = Mat::hstack(self.field, self.rows, &[self, &Mat::column(self.field, b)]);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Ok(Some((x, self.kernel())))
    }

    /// Solves `self * x = b` assuming shapes agree; `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        self.solve_affine(b).expect("shape checked").map(|(x, _)| x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(self.field, n, &[self, &Mat::identity(self.field, n)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Repeated solves of `a * x = b` for one matrix `a`.
#[derive(Clone, Debug)]
pub struct Solver {
    transform: Mat,
    pivots: Vec<usize>,
    cols: usize,
}

impl Solver {
    pub fn new(a: &Mat) -> Solver {
        let aug = Mat::hstack(a.field, a.rows, &[a, &Mat::identity(a.field, a.rows)]);
        let (r, mut pivots) = aug.rref();
        pivots.retain(|&p| p < a.cols);
        let transform = r.submatrix(0, a.rows, a.cols, a.cols + a.rows);
        Solver { transform, pivots, cols: a.cols }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A particular solution, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.transform.mul_vec(b);
        if c[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![self.transform.field.zero(); self.cols];
        for (row, &p) in self.pivots.iter().enumerate() {
            x[p] = c[row].clone();
        }
        Some(x)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

pub fn zero_vec(field: Field, n: usize) -> Vec<Scalar> {
    vec![field.zero(); n]
}

pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vec(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// acc += s * v
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        a.add_mul(s, x);
    }
}

/// Linear combination Σ c_i v_i of vectors of length n.
pub fn combine(field: Field, n: usize, coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = zero_vec(field, n);
    for (c, v) in coeffs.iter().zip(vectors) {
        axpy(&mut out, c, v);
    }
    out
}
