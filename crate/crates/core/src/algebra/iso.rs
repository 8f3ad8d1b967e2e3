use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactla::{Field, Scalar, Subspace};

use super::module::{hom_module, ModMap, ModuleRep};

pub const RANDOM_RETRIES: usize = 64;
/// Largest coefficient space enumerated exhaustively over small fields.
pub const EXHAUSTIVE_CAP: u64 = 4096;

#[derive(Clone, Debug)]
pub enum IsoOutcome {
    Iso(ModMap),
    NotIsomorphic(String),
    Undecided(String),
}

impl IsoOutcome {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoOutcome::Iso(_))
    }
}

/// Searches Hom(M, N) for an isomorphism: basis elements first, then random
/// combinations (fields with at least 5 elements), or exhaustive enumeration
/// over smaller fields when the space is small enough.
pub fn find_iso(m: &Arc<ModuleRep>, n: &Arc<ModuleRep>, seed: u64) -> Result<IsoOutcome> {
    if m.dims() != n.dims() {
        return Ok(IsoOutcome::NotIsomorphic(format!(
            "dimension vectors differ: {:?} vs {:?}",
            m.dims(),
            n.dims()
        )));
    }
    let h = hom_module(m, n)?;
    let field = m.field();
    // If the images of all of Hom(M, N) miss part of N, no map is onto.
    for v in 0..m.dims().len() {
        let mut span = Subspace::zero(field, n.dim_at(v));
        for f in h.basis_maps() {
            span = span.sum(&f.mats[v].column_space());
        }
        if span.dim() < n.dim_at(v) {
            return Ok(IsoOutcome::NotIsomorphic(format!(
                "homomorphisms from M cover only {} of {} dimensions at vertex {}",
                span.dim(),
                n.dim_at(v),
                m.algebra().vertex_name(v)
            )));
        }
    }
    if m.total_dim() == 0 {
        return Ok(IsoOutcome::Iso(ModMap::zero(m.clone(), n.clone())));
    }
    for f in h.basis_maps() {
        if f.is_iso() {
            return Ok(IsoOutcome::Iso(f));
        }
    }
    let d = h.dim();
    let small = field.size().filter(|&q| q < 5);
    if let Some(q) = small {
        let total = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
        if total <= EXHAUSTIVE_CAP as u128 {
            for idx in 0..total as u64 {
                let coeffs = digits(field, q, d, idx);
                let f = h.combine(&coeffs);
                if f.is_iso() {
                    return Ok(IsoOutcome::Iso(f));
                }
            }
            return Ok(IsoOutcome::NotIsomorphic("exhaustive search found no isomorphism".into()));
        }
        return Ok(IsoOutcome::Undecided(format!("Hom space of size {q}^{d} too large to enumerate")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_RETRIES {
        let coeffs: Vec<Scalar> = (0..d).map(|_| field.random(&mut rng)).collect();
        let f = h.combine(&coeffs);
        if f.is_iso() {
            return Ok(IsoOutcome::Iso(f));
        }
    }
    Ok(IsoOutcome::Undecided(format!("no isomorphism among {RANDOM_RETRIES} random combinations")))
}

fn digits(field: Field, q: u64, d: usize, mut idx: u64) -> Vec<Scalar> {
    (0..d)
        .map(|_| {
            let x = idx % q;
            idx /= q;
            field.from_i64(x as i64)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{path_algebra, Quiver};
    use crate::algebra::structure::{projective, simple};

    #[test]
    fn iso_search_small() {
        for field in [Field::Rationals, Field::prime(2).unwrap()] {
            let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
            let a = Arc::new(path_algebra(field, q, &[]).unwrap());
            let p1 = Arc::new(projective(&a, 0).unwrap());
            let p1b = Arc::new(projective(&a, 0).unwrap());
            let s1 = Arc::new(simple(&a, 0).unwrap());
            let s2 = Arc::new(simple(&a, 1).unwrap());
            let sum = Arc::new(
                (*crate::algebra::module::direct_sum(&[s1.clone(), s2.clone()]).unwrap().module).clone(),
            );
            match find_iso(&p1, &p1b, 0).unwrap() {
                IsoOutcome::Iso(f) => {
                    let inv = f.inverse().unwrap();
                    assert_eq!(f.then(&inv).unwrap(), ModMap::identity(p1.clone()));
                }
                other => panic!("expected iso, got {other:?}"),
            }
            assert!(matches!(find_iso(&p1, &s1, 0).unwrap(), IsoOutcome::NotIsomorphic(_)));
            assert!(matches!(find_iso(&p1, &sum, 0).unwrap(), IsoOutcome::NotIsomorphic(_)));
        }
    }
}
