use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactla::{unit_vec, Coordinatizer, Field, Scalar, Subspace};

use crate::category::Vector;

/// A finite-dimensional ring by structure constants on a named basis.
/// `constants[i][j]` is the product of basis elements `i` then `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingPresentation {
    pub field: Field,
    pub labels: Vec<String>,
    pub constants: Vec<Vec<Vector>>,
    pub unit: Vector,
    pub provenance: Vec<(String, String)>,
}

/// A ring realised inside an ambient space, modulo an ideal, with the
/// coordinate map onto the quotient basis.
pub struct Subquotient {
    pub ring: RingPresentation,
    /// Representatives in ambient coordinates, one per quotient basis element.
    pub reps: Vec<Vector>,
    coord: Coordinatizer,
}

impl Subquotient {
    /// Coordinates in the quotient basis of an element of the ring.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.coord.coords(v).map(|c| c[..self.reps.len()].to_vec())
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }
}

impl RingPresentation {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let d = self.dim();
        let mut out = vec![self.field.zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                for (o, t) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !t.is_zero() {
                        o.add_mul(&c, t);
                    }
                }
            }
        }
        out
    }

    /// Associativity and unit, as for any presented algebra.
    pub fn check_axioms(&self) -> Result<()> {
        self.to_algebra().map(|_| ())
    }

    pub fn to_algebra(&self) -> Result<Algebra> {
        Algebra::from_structure_constants(self.field, self.labels.clone(), self.constants.clone(), self.unit.clone())
    }

    /// `ring / ideal` where both are subspaces of an ambient space with the
    /// given bilinear multiplication. Labels name the ambient coordinates.
    pub fn subquotient(
        field: Field,
        ring: &Subspace,
        ideal: &Subspace,
        unit: &[Scalar],
        mul: impl Fn(&[Scalar], &[Scalar]) -> Vector,
        label: impl Fn(&[Scalar]) -> String,
    ) -> Result<Subquotient> {
        if !ideal.is_subset(ring) {
            return Err(Error::Internal("ideal is not contained in the ring".into()));
        }
        if !ring.contains(unit) {
            return Err(Error::Internal("unit does not lie in the ring".into()));
        }
        for a in ideal.basis() {
            for b in ring.basis() {
                if !ideal.contains(&mul(a, b)) || !ideal.contains(&mul(b, a)) {
                    return Err(Error::Internal("ideal is not two-sided under the computed multiplication".into()));
                }
            }
        }
        let reps = ring.quotient_basis(ideal)?;
        let mut cols = reps.clone();
        cols.extend(ideal.basis().iter().cloned());
        let coord = Coordinatizer::new(field, ring.ambient(), cols)?;
        let r = reps.len();
        let take = |v: &[Scalar]| -> Result<Vector> {
            coord
                .coords(v)
                .map(|c| c[..r].to_vec())
                .ok_or_else(|| Error::Internal("product left the ring".into()))
        };
        let mut constants = Vec::with_capacity(r);
        for a in &reps {
            let mut row = Vec::with_capacity(r);
            for b in &reps {
                row.push(take(&mul(a, b))?);
            }
            constants.push(row);
        }
        let unit = take(unit)?;
        let labels = reps.iter().map(|v| label(v)).collect();
        let ring = RingPresentation { field, labels, constants, unit, provenance: Vec::new() };
        Ok(Subquotient { ring, reps, coord })
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.field, self.dim(), i)
    }
}
