use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use crate::algebra::{direct_sum, hom_module, same_algebra, Algebra, HomSpace, ModMap, ModuleRep, QuiverTwist};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};

use super::{layout, AtomId, LinCat, Mor, Obj, Vector};

/// Finitely generated modules over one algebra, with Hom spaces cached.
pub struct ModCat {
    alg: Arc<Algebra>,
    atoms: RwLock<Vec<Arc<ModuleRep>>>,
    homs: Mutex<HashMap<(AtomId, AtomId), Arc<HomSpace>>>,
    twists: Mutex<HashMap<(AtomId, usize), AtomId>>,
}

impl ModCat {
    pub fn new(alg: Arc<Algebra>) -> ModCat {
        ModCat {
            alg,
            atoms: RwLock::new(Vec::new()),
            homs: Mutex::new(HashMap::new()),
            twists: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// Registers a module, returning the existing id for an equal module.
    pub fn atom(&self, m: impl Into<Arc<ModuleRep>>) -> Result<AtomId> {
        let m = m.into();
        if !same_algebra(m.algebra(), &self.alg) {
            return Err(Error::Input("module over a different algebra".into()));
        }
        let mut atoms = self.atoms.write().unwrap();
        if let Some(i) = atoms.iter().position(|x| **x == *m) {
            return Ok(AtomId(i));
        }
        atoms.push(m);
        Ok(AtomId(atoms.len() - 1))
    }

    pub fn obj(&self, ms: &[Arc<ModuleRep>]) -> Result<Obj> {
        Ok(Obj(ms.iter().map(|m| self.atom(m.clone())).collect::<Result<_>>()?))
    }

    pub fn module(&self, a: AtomId) -> Arc<ModuleRep> {
        self.atoms.read().unwrap()[a.0].clone()
    }

    pub fn hom_space(&self, a: AtomId, b: AtomId) -> Arc<HomSpace> {
        if let Some(h) = self.homs.lock().unwrap().get(&(a, b)) {
            return h.clone();
        }
        let h = Arc::new(hom_module(&self.module(a), &self.module(b)).expect("atoms share the algebra"));
        self.homs.lock().unwrap().insert((a, b), h.clone());
        h
    }

    pub fn to_map(&self, a: AtomId, b: AtomId, v: &[Scalar]) -> ModMap {
        self.hom_space(a, b).combine(v)
    }

    /// Coordinates of a module map between atoms.
    pub fn coords(&self, a: AtomId, b: AtomId, f: &ModMap) -> Result<Vector> {
        self.hom_space(a, b)
            .coords(f)
            .ok_or_else(|| Error::Input("map is not a module homomorphism between the given modules".into()))
    }

    /// The direct sum module of an object.
    pub fn realize(&self, o: &Obj) -> Arc<ModuleRep> {
        if o.is_empty() {
            return Arc::new(ModuleRep::zero(self.alg.clone()));
        }
        if o.len() == 1 {
            return self.module(o.0[0]);
        }
        let parts: Vec<_> = o.0.iter().map(|&a| self.module(a)).collect();
        direct_sum(&parts).expect("nonempty").module
    }

    /// A morphism between objects as a map of the direct sum modules.
    pub fn realize_mor(&self, f: &Mor) -> ModMap {
        let field = self.field();
        let src = self.realize(&f.src);
        let tgt = self.realize(&f.tgt);
        let nv = self.alg.vertex_count();
        let lay = layout(self, &f.src, &f.tgt);
        let mut mats: Vec<Mat> = (0..nv).map(|v| Mat::zeros(field, tgt.dim_at(v), src.dim_at(v))).collect();
        let mut col = vec![0usize; nv];
        for (i, &x) in f.src.0.iter().enumerate() {
            let mut row = vec![0usize; nv];
            let xm = self.module(x);
            for (j, &y) in f.tgt.0.iter().enumerate() {
                let (o, d) = lay[i][j];
                let ym = self.module(y);
                if d > 0 {
                    let m = self.to_map(x, y, &f.v[o..o + d]);
                    for v in 0..nv {
                        mats[v].set_block(row[v], col[v], &m.mats[v]);
                    }
                }
                for v in 0..nv {
                    row[v] += ym.dim_at(v);
                }
            }
            for v in 0..nv {
                col[v] += xm.dim_at(v);
            }
        }
        ModMap { source: src, target: tgt, mats }
    }

    /// Inverse of `realize_mor`: coordinates of a map between realized objects.
    pub fn mor_from_map(&self, src: &Obj, tgt: &Obj, f: &ModMap) -> Result<Mor> {
        let nv = self.alg.vertex_count();
        let mut v = Vec::new();
        let mut col = vec![0usize; nv];
        for &x in &src.0 {
            let xm = self.module(x);
            let mut row = vec![0usize; nv];
            for &y in &tgt.0 {
                let ym = self.module(y);
                let mats = (0..nv)
                    .map(|u| f.mats[u].submatrix(row[u], row[u] + ym.dim_at(u), col[u], col[u] + xm.dim_at(u)))
                    .collect();
                let block = ModMap { source: xm.clone(), target: ym.clone(), mats };
                v.extend(self.coords(x, y, &block)?);
                for u in 0..nv {
                    row[u] += ym.dim_at(u);
                }
            }
            for u in 0..nv {
                col[u] += xm.dim_at(u);
            }
        }
        Ok(Mor { src: src.clone(), tgt: tgt.clone(), v })
    }

    /// Twist applied `k` times (negative `k` inverts), memoised by `k` modulo the order.
    pub fn twist_atom(&self, tw: &QuiverTwist, a: AtomId, k: i64) -> AtomId {
        let ord = tw.order() as i64;
        let k = k.rem_euclid(ord) as usize;
        if k == 0 {
            return a;
        }
        if let Some(&b) = self.twists.lock().unwrap().get(&(a, k)) {
            return b;
        }
        let prev = self.twist_atom(tw, a, k as i64 - 1);
        let m = tw.apply_module(&self.module(prev));
        let b = self.atom(m).expect("twist preserves the algebra");
        self.twists.lock().unwrap().insert((a, k), b);
        b
    }

    pub fn twist_mor(&self, tw: &QuiverTwist, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        let ord = tw.order() as i64;
        let k = k.rem_euclid(ord);
        let mut map = self.to_map(a, b, f);
        let (mut x, mut y) = (a, b);
        for _ in 0..k {
            let (x2, y2) = (self.twist_atom(tw, x, 1), self.twist_atom(tw, y, 1));
            map = tw.apply_map(&map, self.module(x2), self.module(y2));
            x = x2;
            y = y2;
        }
        self.coords(x, y, &map).expect("twisted map is a homomorphism")
    }
}

impl LinCat for ModCat {
    fn field(&self) -> Field {
        self.alg.field()
    }

    fn hom_dim(&self, a: AtomId, b: AtomId) -> usize {
        self.hom_space(a, b).dim()
    }

    fn compose(&self, a: AtomId, b: AtomId, c: AtomId, f: &[Scalar], g: &[Scalar]) -> Vector {
        let fm = self.to_map(a, b, f);
        let gm = self.to_map(b, c, g);
        let h = fm.then(&gm).expect("composable");
        let hs = self.hom_space(a, c);
        let flat = h.flatten();
        hs.space().pivots().iter().map(|&p| flat[p].clone()).collect()
    }

    fn identity(&self, a: AtomId) -> Vector {
        let m = self.module(a);
        self.coords(a, a, &ModMap::identity(m)).expect("identity is a homomorphism")
    }

    fn atom_label(&self, a: AtomId) -> String {
        crate::algebra::structure::describe_module(&self.module(a))
    }
}
