use super::matrix::{zero_vec, Mat};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `field^ambient` held by its reduced echelon basis, so two
/// subspaces are equal exactly when their stored data agree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let basis = (0..ambient).map(|i| super::matrix::unit_vec(field, ambient, i)).collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let m = Mat::from_fn(field, vectors.len(), ambient, |r, c| vectors[r][c].clone());
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace { field, ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&i| !is_pivot[i]).collect()
    }

    /// Subtracts the pivot part of `v`, leaving zeros at every pivot.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let c = out[p].clone();
                for (o, b) in out.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *o = o.sub(&c.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of the class of `v` in `ambient / self`, relative to the
    /// unit vectors at non-pivot positions.
    pub fn quotient_coords(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.reduce(v);
        self.non_pivots().into_iter().map(|i| r[i].clone()).collect()
    }

    /// The matrix of `v ↦ quotient_coords(v)`.
    pub fn quotient_matrix(&self) -> Mat {
        let np = self.non_pivots();
        let mut m = Mat::zeros(self.field, np.len(), self.ambient);
        for (r, &i) in np.iter().enumerate() {
            m.set(r, i, self.field.one());
        }
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            for (r, &i) in np.iter().enumerate() {
                if !row[i].is_zero() {
                    let cur = m.get(r, p).clone();
                    m.set(r, p, cur.sub(&row[i]));
                }
            }
        }
        m
    }

    /// Coordinates in the stored basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut recon = zero_vec(self.field, self.ambient);
        for (ci, b) in c.iter().zip(&self.basis) {
            super::matrix::axpy(&mut recon, ci, b);
        }
        if recon.as_slice() == v {
            Some(c)
        } else {
            None
        }
    }

    pub fn is_subset(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Input(format!(
                "ambient dimensions differ ({} vs {})",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.check_ambient(other).expect("subspace sum");
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &all)
    }

    /// Intersection: coefficient vectors x with Σ x_i a_i ∈ other.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.check_ambient(other).expect("subspace intersection");
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        let a = Mat::from_columns(self.field, self.ambient, &self.basis);
        let k = other.quotient_matrix().mul(&a).kernel();
        let vecs: Vec<Vec<Scalar>> = k.basis().iter().map(|x| a.mul_vec(x)).collect();
        Subspace::span(self.field, self.ambient, &vecs)
    }

    /// Vectors of `self` extending a basis of `sub` to a basis of `self`.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Vec<Vec<Scalar>>> {
        self.check_ambient(sub)?;
        if !sub.is_subset(self) {
            return Err(Error::Precondition("quotient basis needs sub ⊆ self".into()));
        }
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.sum(&Subspace::span(self.field, self.ambient, &[b.clone()]));
            }
        }
        Ok(out)
    }

    /// Image under `m` (acting on column vectors).
    pub fn image(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vecs: Vec<Vec<Scalar>> = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::span(self.field, m.rows(), &vecs)
    }

    /// `{v : m v ∈ target}`.
    pub fn preimage(m: &Mat, target: &Subspace) -> Subspace {
        assert_eq!(m.rows(), target.ambient());
        target.quotient_matrix().mul(m).kernel()
    }

    /// Matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Mat {
        Mat::from_columns(self.field, self.ambient, &self.basis)
    }
}

/// Coordinates relative to an arbitrary linearly independent family.
#[derive(Clone, Debug)]
pub struct Coordinatizer {
    columns: Vec<Vec<Scalar>>,
    left_inverse: Mat,
    span: Subspace,
}

impl Coordinatizer {
    pub fn new(field: Field, ambient: usize, columns: Vec<Vec<Scalar>>) -> Result<Coordinatizer> {
        let k = columns.len();
        let b = Mat::from_columns(field, ambient, &columns);
        let aug = Mat::hstack(field, ambient, &[&b, &Mat::identity(field, ambient)]);
        let (r, pivots) = aug.rref();
        if pivots.len() < k || pivots[..k].iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Internal("coordinatizer family is linearly dependent".into()));
        }
        let left_inverse = r.submatrix(0, k, k, k + ambient);
        let span = Subspace::span(field, ambient, &columns);
        Ok(Coordinatizer { columns, left_inverse, span })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[Vec<Scalar>] {
        &self.columns
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Coordinates of `v`, assumed to lie in the span.
    pub fn coords_unchecked(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.left_inverse.mul_vec(v)
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if self.span.contains(v) {
            Some(self.coords_unchecked(v))
        } else {
            None
        }
    }
}
