use std::collections::HashMap;
use std::sync::{Arc, Mutex, RwLock};

use crate::algebra::{is_projective, QuiverTwist};
use crate::category::{hom_dim, inverse, post_matrix, pre_matrix, AtomId, LinCat, ModCat, Mor, Obj, Suspended, TensorCache, Vector};
use crate::complexes::{homotopy_classes, ChainMap, Complex, HomotopyClasses};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::report::Check;

use super::{Angulated, NAngle};

/// The bounded homotopy category of projective modules over one algebra.
/// Atoms are complexes of projectives, interned by equality; Hom spaces are
/// chain maps modulo homotopy.
pub struct KbProj {
    base: Arc<ModCat>,
    atoms: RwLock<Vec<Complex>>,
    homs: Mutex<HashMap<(AtomId, AtomId), Arc<HomotopyClasses>>>,
    shifts: Mutex<HashMap<(AtomId, i64), AtomId>>,
    projective: Mutex<HashMap<AtomId, bool>>,
    tensor: TensorCache,
}

/// Positions of each part's summands inside the concatenated degree-`p` term.
fn ranges(parts: &[Complex], p: i64) -> Vec<Vec<usize>> {
    let mut off = 0;
    parts
        .iter()
        .map(|x| {
            let n = x.obj(p).len();
            let r = (off..off + n).collect();
            off += n;
            r
        })
        .collect()
}

/// Degreewise direct sum of complexes.
pub fn sum_complex<C: LinCat + ?Sized>(c: &C, parts: &[Complex]) -> Complex {
    if parts.is_empty() {
        return Complex::stalk(Obj::zero(), 0);
    }
    let lo = parts.iter().map(|x| x.lo).min().unwrap();
    let hi = parts.iter().map(|x| x.hi()).max().unwrap();
    let objs: Vec<Obj> = (lo..=hi).map(|p| Obj(parts.iter().flat_map(|x| x.obj(p).0).collect())).collect();
    let diffs = (lo..hi)
        .map(|p| {
            let ds: Vec<Mor> = parts.iter().map(|x| x.diff(c, p)).collect();
            Mor::diag(c, &ds.iter().collect::<Vec<_>>())
        })
        .collect();
    Complex { lo, objs, diffs }
}

impl KbProj {
    pub fn new(base: Arc<ModCat>) -> KbProj {
        KbProj {
            base,
            atoms: RwLock::new(Vec::new()),
            homs: Mutex::new(HashMap::new()),
            shifts: Mutex::new(HashMap::new()),
            projective: Mutex::new(HashMap::new()),
            tensor: TensorCache::new(),
        }
    }

    pub fn base(&self) -> &Arc<ModCat> {
        &self.base
    }

    fn is_projective_atom(&self, a: AtomId) -> Result<bool> {
        if let Some(&b) = self.projective.lock().unwrap().get(&a) {
            return Ok(b);
        }
        let b = is_projective(&self.base.module(a))?;
        self.projective.lock().unwrap().insert(a, b);
        Ok(b)
    }

    /// Registers a complex of projectives over the base category.
    pub fn atom(&self, x: Complex) -> Result<AtomId> {
        for p in x.degrees() {
            for &a in x.obj(p).atoms() {
                if !self.is_projective_atom(a)? {
                    return Err(Error::Input(format!(
                        "term {} in degree {p} is not projective",
                        self.base.atom_label(a)
                    )));
                }
            }
        }
        let mut atoms = self.atoms.write().unwrap();
        if let Some(i) = atoms.iter().position(|y| *y == x) {
            return Ok(AtomId(i));
        }
        atoms.push(x);
        Ok(AtomId(atoms.len() - 1))
    }

    /// The stalk complex of a base object in one degree.
    pub fn stalk(&self, o: &Obj, degree: i64) -> Result<AtomId> {
        self.atom(Complex::stalk(o.clone(), degree))
    }

    pub fn complex(&self, a: AtomId) -> Complex {
        self.atoms.read().unwrap()[a.0].clone()
    }

    pub fn classes(&self, a: AtomId, b: AtomId) -> Arc<HomotopyClasses> {
        if let Some(h) = self.homs.lock().unwrap().get(&(a, b)) {
            return h.clone();
        }
        let h = Arc::new(homotopy_classes(&*self.base, &self.complex(a), &self.complex(b)));
        self.homs.lock().unwrap().insert((a, b), h.clone());
        h
    }

    /// A representing chain map of a class.
    pub fn chain_map(&self, a: AtomId, b: AtomId, f: &[Scalar]) -> ChainMap {
        let h = self.classes(a, b);
        h.total.chain_map(&*self.base, &h.lift(f))
    }

    /// The class of a chain map between atoms.
    pub fn class_of(&self, a: AtomId, b: AtomId, f: &ChainMap) -> Result<Vector> {
        let h = self.classes(a, b);
        let v = h.total.chain_vector(&*self.base, f);
        h.coords(&v).ok_or_else(|| Error::Input("not a chain map".into()))
    }

    fn parts(&self, o: &Obj) -> Vec<Complex> {
        o.atoms().iter().map(|&a| self.complex(a)).collect()
    }

    /// The object as one complex over the base category.
    pub fn realize(&self, o: &Obj) -> Complex {
        sum_complex(&*self.base, &self.parts(o))
    }

    /// A representing chain map `realize(src) → realize(tgt)`.
    pub fn realize_mor(&self, f: &Mor) -> ChainMap {
        let c = &*self.base;
        let (sp, tp) = (self.parts(&f.src), self.parts(&f.tgt));
        let (src, tgt) = (sum_complex(c, &sp), sum_complex(c, &tp));
        let blocks: Vec<Vec<ChainMap>> = f
            .src
            .atoms()
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                f.tgt.atoms().iter().enumerate().map(|(j, &b)| self.chain_map(a, b, &f.block(self, i, j))).collect()
            })
            .collect();
        let comps = src
            .degrees()
            .map(|p| {
                let srcs: Vec<Obj> = sp.iter().map(|x| x.obj(p)).collect();
                let tgts: Vec<Obj> = tp.iter().map(|x| x.obj(p)).collect();
                let cs: Vec<Vec<Mor>> = blocks.iter().map(|row| row.iter().map(|m| m.comp(c, p)).collect()).collect();
                let grid: Vec<Vec<Option<&Mor>>> = cs.iter().map(|row| row.iter().map(Some).collect()).collect();
                Mor::from_grid(c, &srcs, &tgts, &grid)
            })
            .collect();
        ChainMap { src, tgt, comps }
    }

    /// The morphism `src → tgt` represented by a chain map between the realizations.
    pub fn reflect(&self, src: &Obj, tgt: &Obj, f: &ChainMap) -> Result<Mor> {
        let c = &*self.base;
        let (sp, tp) = (self.parts(src), self.parts(tgt));
        let mut v = Vec::with_capacity(hom_dim(self, src, tgt));
        for (i, &a) in src.atoms().iter().enumerate() {
            for (j, &b) in tgt.atoms().iter().enumerate() {
                let comps = sp[i]
                    .degrees()
                    .map(|p| {
                        let (ri, rj) = (&ranges(&sp, p)[i], &ranges(&tp, p)[j]);
                        f.comp(c, p).restrict(c, ri, rj)
                    })
                    .collect();
                let block = ChainMap { src: sp[i].clone(), tgt: tp[j].clone(), comps };
                v.extend(self.class_of(a, b, &block)?);
            }
        }
        Ok(Mor { src: src.clone(), tgt: tgt.clone(), v })
    }

    /// The morphism given by a chain map of base complexes, interning both ends as atoms.
    pub fn mor_of_chain_map(&self, f: &ChainMap) -> Result<Mor> {
        let a = Obj::atom(self.atom(f.src.clone())?);
        let b = Obj::atom(self.atom(f.tgt.clone())?);
        self.reflect(&a, &b, f)
    }

    /// `Cone(f)^i = src^{i+1} ⊕ tgt^i` with `d = [[−d_src, f], [0, d_tgt]]`,
    /// its inclusion of `tgt` and its projection onto `Σ src`.
    pub fn cone(&self, f: &Mor) -> Result<(Obj, Mor, Mor)> {
        let c = &*self.base;
        let fr = self.realize_mor(f);
        let (x, y) = (&fr.src, &fr.tgt);
        let lo = (x.lo - 1).min(y.lo);
        let hi = (x.hi() - 1).max(y.hi());
        let objs: Vec<Obj> = (lo..=hi).map(|p| Obj::sum(&[&x.obj(p + 1), &y.obj(p)])).collect();
        let diffs: Vec<Mor> = (lo..hi)
            .map(|p| {
                let dx = x.diff(c, p + 1).neg();
                let fp = fr.comp(c, p + 1);
                let dy = y.diff(c, p);
                Mor::from_grid(
                    c,
                    &[x.obj(p + 1), y.obj(p)],
                    &[x.obj(p + 2), y.obj(p + 1)],
                    &[vec![Some(&dx), Some(&fp)], vec![None, Some(&dy)]],
                )
            })
            .collect();
        let cone = Complex::new(c, lo, objs, diffs)?;
        let co = Obj::atom(self.atom(cone.clone())?);
        let inc_comps = y
            .degrees()
            .map(|p| {
                let id = Mor::identity(c, &y.obj(p));
                Mor::from_grid(c, &[y.obj(p)], &[x.obj(p + 1), y.obj(p)], &[vec![None, Some(&id)]])
            })
            .collect();
        let inc = self.reflect(&f.tgt, &co, &ChainMap { src: y.clone(), tgt: cone.clone(), comps: inc_comps })?;
        let sx = f.src.shift(self, 1);
        let sxr = self.realize(&sx);
        let proj_comps = cone
            .degrees()
            .map(|p| {
                let id = Mor::identity(c, &x.obj(p + 1));
                Mor::from_grid(c, &[x.obj(p + 1), y.obj(p)], &[sxr.obj(p)], &[vec![Some(&id)], vec![None]])
            })
            .collect();
        let proj = self.reflect(&co, &sx, &ChainMap { src: cone, tgt: sxr, comps: proj_comps })?;
        Ok((co, inc, proj))
    }

    /// The standard triangle `X → Y → Cone(f) → ΣX`.
    pub fn cone_triangle(&self, f: &Mor) -> Result<NAngle> {
        let (co, inc, proj) = self.cone(f)?;
        NAngle::new(self, vec![f.src.clone(), f.tgt.clone(), co], vec![f.clone(), inc, proj])
    }

    /// Compares a triangle `X →u Y →v Z →w ΣX` with the cone triangle of `u`:
    /// it is distinguished exactly when some `φ: Z → Cone(u)` with `v φ = i`
    /// and `φ p = w` exists, and then every such `φ` is invertible.
    pub fn is_distinguished(&self, t: &NAngle) -> Result<Check> {
        let name = "triangle is isomorphic to a cone triangle";
        if t.n() != 3 {
            return Ok(Check::fail(name, format!("{}-angle in a triangulated instance", t.n())));
        }
        let (u, v, w) = (&t.maps[0], &t.maps[1], &t.maps[2]);
        let (co, inc, proj) = self.cone(u)?;
        let z = &t.objs[2];
        let field = self.field();
        let a = pre_matrix(self, v, &co);
        let b = post_matrix(self, z, &proj);
        let n = hom_dim(self, z, &co);
        let m = Mat::vstack(field, n, &[&a, &b]);
        let mut rhs = inc.v.clone();
        rhs.extend(w.v.iter().cloned());
        let Some(phi) = m.solve(&rhs) else {
            return Ok(Check::fail(name, "no comparison morphism to the cone"));
        };
        let phi = Mor { src: z.clone(), tgt: co, v: phi };
        Ok(Check::when(name, inverse(self, &phi).is_some(), || "comparison morphism is not invertible".into()))
    }

    /// The twist applied degreewise to a complex of projectives.
    pub fn twist_atom(&self, tw: &QuiverTwist, a: AtomId, k: i64) -> AtomId {
        let c = &*self.base;
        let x = self.complex(a);
        let objs: Vec<Obj> = x.objs.iter().map(|o| Obj(o.atoms().iter().map(|&b| c.twist_atom(tw, b, k)).collect())).collect();
        let diffs = x.diffs.iter().map(|d| twist_base_mor(c, tw, d, k)).collect();
        self.atom(Complex { lo: x.lo, objs, diffs }).expect("twist preserves projectives")
    }

    pub fn twist_mor(&self, tw: &QuiverTwist, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        let c = &*self.base;
        let fm = self.chain_map(a, b, f);
        let (ta, tb) = (self.twist_atom(tw, a, k), self.twist_atom(tw, b, k));
        let comps = fm.comps.iter().map(|m| twist_base_mor(c, tw, m, k)).collect();
        let g = ChainMap { src: self.complex(ta), tgt: self.complex(tb), comps };
        self.class_of(ta, tb, &g).expect("twisted chain map")
    }
}

fn twist_base_mor(c: &ModCat, tw: &QuiverTwist, f: &Mor, k: i64) -> Mor {
    let src = Obj(f.src.atoms().iter().map(|&b| c.twist_atom(tw, b, k)).collect());
    let tgt = Obj(f.tgt.atoms().iter().map(|&b| c.twist_atom(tw, b, k)).collect());
    let mut v = Vec::new();
    for (i, &x) in f.src.atoms().iter().enumerate() {
        for (j, &y) in f.tgt.atoms().iter().enumerate() {
            v.extend(c.twist_mor(tw, x, y, k, &f.block(c, i, j)));
        }
    }
    Mor { src, tgt, v }
}

impl LinCat for KbProj {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn hom_dim(&self, a: AtomId, b: AtomId) -> usize {
        self.classes(a, b).dim()
    }

    fn compose(&self, a: AtomId, b: AtomId, c: AtomId, f: &[Scalar], g: &[Scalar]) -> Vector {
        let out = self.hom_dim(a, c);
        self.tensor.compose(self.field(), (a, b, c), out, f, g, || {
            let (hab, hbc, hac) = (self.classes(a, b), self.classes(b, c), self.classes(a, c));
            let base = &*self.base;
            let gs: Vec<ChainMap> = hbc.reps.iter().map(|r| hbc.total.chain_map(base, r)).collect();
            hab.reps
                .iter()
                .map(|r| {
                    let fm = hab.total.chain_map(base, r);
                    gs.iter()
                        .map(|gm| {
                            let v = hac.total.chain_vector(base, &fm.then(base, gm));
                            hac.coords(&v).expect("composite of chain maps is a chain map")
                        })
                        .collect()
                })
                .collect()
        })
    }

    fn identity(&self, a: AtomId) -> Vector {
        let x = self.complex(a);
        self.class_of(a, a, &ChainMap::identity(&*self.base, &x)).expect("identity chain map")
    }

    fn atom_label(&self, a: AtomId) -> String {
        let x = self.complex(a);
        let terms: Vec<String> = x.objs.iter().map(|o| o.label(&*self.base)).collect();
        format!("[{}]@{}", terms.join(" > "), x.lo)
    }
}

impl Suspended for KbProj {
    fn shift_atom(&self, a: AtomId, k: i64) -> AtomId {
        if k == 0 {
            return a;
        }
        if let Some(&b) = self.shifts.lock().unwrap().get(&(a, k)) {
            return b;
        }
        let b = self.atom(self.complex(a).shift(&*self.base, k)).expect("shift keeps projective terms");
        self.shifts.lock().unwrap().insert((a, k), b);
        b
    }

    fn shift_mor(&self, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        let base = &*self.base;
        let fm = self.chain_map(a, b, f);
        let (sa, sb) = (self.shift_atom(a, k), self.shift_atom(b, k));
        let (xa, xb) = (self.complex(sa), self.complex(sb));
        let comps = xa.degrees().map(|p| fm.comp(base, p + k)).collect();
        self.class_of(sa, sb, &ChainMap { src: xa, tgt: xb, comps }).expect("shifted chain map")
    }
}

impl Angulated for KbProj {
    fn angle_size(&self) -> usize {
        3
    }

    fn angle_membership(&self, t: &NAngle) -> Result<Check> {
        self.is_distinguished(t)
    }
}
