use std::collections::HashMap;

use crate::category::{AtomId, LinCat, Mor, Obj, Suspended, Vector};
use crate::error::{Error, Result};
use crate::exactla::{is_zero_vec, unit_vec, zero_vec, Field, Mat, Scalar};
use crate::report::Check;

use super::{identity_angle, Angulated, NAngle};

/// Raw data of a finite linear category with an automorphism Σ and a
/// supplied list of n-angles.
#[derive(Clone, Debug)]
pub struct TableSpec {
    pub field: Field,
    pub labels: Vec<String>,
    pub hom_dims: Vec<Vec<usize>>,
    /// `products[(a, b, c)][k][l]`: basis `k` of Hom(a, b) then basis `l` of Hom(b, c).
    /// Missing triples compose to zero.
    pub products: HashMap<(usize, usize, usize), Vec<Vec<Vector>>>,
    pub identities: Vec<Vector>,
    /// Σ on atoms, a permutation.
    pub shift: Vec<usize>,
    /// Σ on Hom(a, b) as a matrix into Hom(Σa, Σb), on column vectors.
    pub shift_mats: HashMap<(usize, usize), Mat>,
    pub n: usize,
    pub angles: Vec<NAngle>,
}

/// A validated [`TableSpec`].
pub struct TableCat {
    spec: TableSpec,
    inv_shift: Vec<usize>,
    inv_mats: HashMap<(usize, usize), Mat>,
}

impl TableCat {
    pub fn new(spec: TableSpec) -> Result<TableCat> {
        let k = spec.labels.len();
        let field = spec.field;
        if spec.hom_dims.len() != k || spec.hom_dims.iter().any(|r| r.len() != k) {
            return Err(Error::Input("hom_dims must be a square table over the atoms".into()));
        }
        if spec.identities.len() != k || (0..k).any(|a| spec.identities[a].len() != spec.hom_dims[a][a]) {
            return Err(Error::Input("one identity vector per atom, of length dim End".into()));
        }
        for (&(a, b, c), t) in &spec.products {
            if a >= k || b >= k || c >= k {
                return Err(Error::Input(format!("product table ({a},{b},{c}) names an unknown atom")));
            }
            let (n1, n2, n3) = (spec.hom_dims[a][b], spec.hom_dims[b][c], spec.hom_dims[a][c]);
            if t.len() != n1 || t.iter().any(|r| r.len() != n2 || r.iter().any(|v| v.len() != n3)) {
                return Err(Error::Input(format!("product table ({a},{b},{c}) has the wrong shape")));
            }
        }
        let mut seen = vec![false; k];
        if spec.shift.len() != k || !spec.shift.iter().all(|&x| x < k && !std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Input("shift must be a permutation of the atoms".into()));
        }
        let mut inv_shift = vec![0; k];
        for (a, &b) in spec.shift.iter().enumerate() {
            inv_shift[b] = a;
        }
        let mut inv_mats = HashMap::new();
        for a in 0..k {
            for b in 0..k {
                let (d, sd) = (spec.hom_dims[a][b], spec.hom_dims[spec.shift[a]][spec.shift[b]]);
                let m = match spec.shift_mats.get(&(a, b)) {
                    Some(m) => m.clone(),
                    None if d == 0 && sd == 0 => Mat::zeros(field, 0, 0),
                    None => return Err(Error::Input(format!("missing shift matrix on Hom({a},{b})"))),
                };
                if m.shape() != (sd, d) {
                    return Err(Error::Input(format!("shift matrix on Hom({a},{b}) has the wrong shape")));
                }
                let inv = m.inverse().ok_or_else(|| Error::Input(format!("shift is not invertible on Hom({a},{b})")))?;
                inv_mats.insert((spec.shift[a], spec.shift[b]), inv);
            }
        }
        let cat = TableCat { spec, inv_shift, inv_mats };
        cat.check_axioms()?;
        let angles = cat.spec.angles.clone();
        for t in &angles {
            NAngle::new(&cat, t.objs.clone(), t.maps.clone())?;
            if t.n() != cat.spec.n {
                return Err(Error::Input(format!("supplied angle has length {} but n = {}", t.n(), cat.spec.n)));
            }
        }
        Ok(cat)
    }

    /// Identity laws, associativity on basis triples, and functoriality of Σ.
    fn check_axioms(&self) -> Result<()> {
        let k = self.spec.labels.len();
        let field = self.spec.field;
        let basis = |a: usize, b: usize| -> Vec<Vector> {
            let d = self.spec.hom_dims[a][b];
            (0..d).map(|i| unit_vec(field, d, i)).collect()
        };
        for a in 0..k {
            for b in 0..k {
                for f in basis(a, b) {
                    let (ia, ib) = (AtomId(a), AtomId(b));
                    if self.compose(ia, ia, ib, &self.identity(ia), &f) != f
                        || self.compose(ia, ib, ib, &f, &self.identity(ib)) != f
                    {
                        return Err(Error::Input(format!("identity law fails on Hom({a},{b})")));
                    }
                    let sa = self.shift_atom(ia, 1);
                    if self.shift_mor(ia, ia, 1, &self.identity(ia)) != self.identity(sa) {
                        return Err(Error::Input(format!("shift does not preserve the identity of atom {a}")));
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (ia, ib, ic) = (AtomId(a), AtomId(b), AtomId(c));
                    for f in basis(a, b) {
                        for g in basis(b, c) {
                            let fg = self.compose(ia, ib, ic, &f, &g);
                            let lhs = self.shift_mor(ia, ic, 1, &fg);
                            let rhs = self.compose(
                                self.shift_atom(ia, 1),
                                self.shift_atom(ib, 1),
                                self.shift_atom(ic, 1),
                                &self.shift_mor(ia, ib, 1, &f),
                                &self.shift_mor(ib, ic, 1, &g),
                            );
                            if lhs != rhs {
                                return Err(Error::Input(format!("shift does not preserve composition on ({a},{b},{c})")));
                            }
                            for e in 0..k {
                                let ie = AtomId(e);
                                for h in basis(c, e) {
                                    let l = self.compose(ia, ic, ie, &fg, &h);
                                    let r = self.compose(ia, ib, ie, &f, &self.compose(ib, ic, ie, &g, &h));
                                    if l != r {
                                        return Err(Error::Input(format!("composition is not associative on ({a},{b},{c},{e})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn atoms(&self) -> Vec<Obj> {
        (0..self.spec.labels.len()).map(|a| Obj::atom(AtomId(a))).collect()
    }

    pub fn angles(&self) -> &[NAngle] {
        &self.spec.angles
    }

    pub fn atom_by_label(&self, name: &str) -> Result<AtomId> {
        self.spec
            .labels
            .iter()
            .position(|l| l == name)
            .map(AtomId)
            .ok_or_else(|| Error::Input(format!("unknown object `{name}`")))
    }
}

impl LinCat for TableCat {
    fn field(&self) -> Field {
        self.spec.field
    }

    fn hom_dim(&self, a: AtomId, b: AtomId) -> usize {
        self.spec.hom_dims[a.0][b.0]
    }

    fn compose(&self, a: AtomId, b: AtomId, c: AtomId, f: &[Scalar], g: &[Scalar]) -> Vector {
        let field = self.spec.field;
        let n = self.spec.hom_dims[a.0][c.0];
        let mut out = zero_vec(field, n);
        let Some(t) = self.spec.products.get(&(a.0, b.0, c.0)) else { return out };
        if is_zero_vec(f) || is_zero_vec(g) {
            return out;
        }
        for (k, fk) in f.iter().enumerate() {
            for (l, gl) in g.iter().enumerate() {
                if fk.is_zero() || gl.is_zero() {
                    continue;
                }
                let s = fk.mul(gl);
                for (o, x) in out.iter_mut().zip(&t[k][l]) {
                    o.add_mul(&s, x);
                }
            }
        }
        out
    }

    fn identity(&self, a: AtomId) -> Vector {
        self.spec.identities[a.0].clone()
    }

    fn atom_label(&self, a: AtomId) -> String {
        self.spec.labels[a.0].clone()
    }
}

impl Suspended for TableCat {
    fn shift_atom(&self, a: AtomId, k: i64) -> AtomId {
        let mut x = a.0;
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 { self.spec.shift[x] } else { self.inv_shift[x] };
        }
        AtomId(x)
    }

    fn shift_mor(&self, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        let (mut x, mut y) = (a.0, b.0);
        let mut v = f.to_vec();
        for _ in 0..k.unsigned_abs() {
            if k > 0 {
                v = self.spec.shift_mats.get(&(x, y)).map_or_else(Vec::new, |m| m.mul_vec(&v));
                x = self.spec.shift[x];
                y = self.spec.shift[y];
            } else {
                v = self.inv_mats.get(&(x, y)).map_or_else(Vec::new, |m| m.mul_vec(&v));
                x = self.inv_shift[x];
                y = self.inv_shift[y];
            }
        }
        v
    }
}

impl Angulated for TableCat {
    fn angle_size(&self) -> usize {
        self.spec.n
    }

    /// Membership in the supplied class: a supplied angle or an identity angle.
    fn angle_membership(&self, t: &NAngle) -> Result<Check> {
        let name = "angle belongs to the supplied class";
        let found = self.spec.angles.iter().any(|a| a == t)
            || (t.n() == self.spec.n && *t == identity_angle(self, &t.objs[0], self.spec.n));
        Ok(Check::when(name, found, || "not among the supplied angles".into()))
    }
}

/// A morphism of the table category from block coordinates.
pub fn table_mor(c: &TableCat, src: Obj, tgt: Obj, v: Vector) -> Result<Mor> {
    if v.len() != crate::category::hom_dim(c, &src, &tgt) {
        return Err(Error::Input("morphism coordinates have the wrong length".into()));
    }
    Ok(Mor { src, tgt, v })
}
