use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::exactla::{Field, Scalar};

use super::{AtomId, Vector};

/// Products of basis morphisms, `t[k][l] = e_k · e_l`, memoised per triple.
type Table = Arc<Vec<Vec<Vector>>>;

#[derive(Default)]
pub struct TensorCache {
    tables: Mutex<HashMap<(AtomId, AtomId, AtomId), Table>>,
}

impl TensorCache {
    pub fn new() -> TensorCache {
        TensorCache::default()
    }

    /// Bilinear extension of the cached basis products; `build` fills missing tables.
    pub fn compose(
        &self,
        field: Field,
        key: (AtomId, AtomId, AtomId),
        out_dim: usize,
        f: &[Scalar],
        g: &[Scalar],
        build: impl FnOnce() -> Vec<Vec<Vector>>,
    ) -> Vector {
        let table = {
            let cached = self.tables.lock().unwrap().get(&key).cloned();
            match cached {
                Some(t) => t,
                None => {
                    let t = Arc::new(build());
                    self.tables.lock().unwrap().insert(key, t.clone());
                    t
                }
            }
        };
        let mut out = vec![field.zero(); out_dim];
        for (k, fk) in f.iter().enumerate() {
            if fk.is_zero() {
                continue;
            }
            for (l, gl) in g.iter().enumerate() {
                if gl.is_zero() {
                    continue;
                }
                let c = fk.mul(gl);
                for (o, t) in out.iter_mut().zip(&table[k][l]) {
                    if !t.is_zero() {
                        o.add_mul(&c, t);
                    }
                }
            }
        }
        out
    }
}
