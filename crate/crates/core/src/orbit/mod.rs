//! Admissible subsets of the integers and orbit categories under strict
//! automorphisms: graded Hom spaces, Yoneda algebras, graded
//! approximations, and derived equivalences between their quotients.

mod ideals;

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::QuiverTwist;
use crate::angulate::{Angulated, KbProj, NAngle};
use crate::catideal::{approximation_failure, end_ring_mod, RingPresentation, Side, Subcat};
use crate::category::{hom_dim, layout, AtomId, LinCat, ModCat, Mor, Obj, Suspended, Vector};
use crate::error::{Error, Result};
use crate::exactla::{is_zero_vec, zero_vec, Field, Scalar, Subspace};
use crate::report::{Check, Report};

pub use ideals::{corollary_orbit_verify, ideals_ij, IdealsIJ};

/// Outcome of the admissibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Admissibility {
    Admissible,
    MissingZero,
    /// `i + j + k ∈ Φ` but exactly one of `i + j`, `j + k` is.
    Violated(i64, i64, i64),
}

pub fn admissibility(s: &BTreeSet<i64>) -> Admissibility {
    if !s.contains(&0) {
        return Admissibility::MissingZero;
    }
    for &i in s {
        for &j in s {
            for &k in s {
                if s.contains(&(i + j + k)) && s.contains(&(i + j)) != s.contains(&(j + k)) {
                    return Admissibility::Violated(i, j, k);
                }
            }
        }
    }
    Admissibility::Admissible
}

pub fn is_admissible(s: &BTreeSet<i64>) -> bool {
    admissibility(s) == Admissibility::Admissible
}

/// A finite admissible set, or the window `mℤ ∩ [−w, w]` of the infinite
/// admissible set `mℤ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    elems: BTreeSet<i64>,
    window: Option<(i64, i64)>,
}

impl AdmissibleSet {
    pub fn new(elems: impl IntoIterator<Item = i64>) -> Result<AdmissibleSet> {
        let elems: BTreeSet<i64> = elems.into_iter().collect();
        match admissibility(&elems) {
            Admissibility::Admissible => Ok(AdmissibleSet { elems, window: None }),
            Admissibility::MissingZero => Err(Error::Input("an admissible set must contain 0".into())),
            Admissibility::Violated(i, j, k) => {
                Err(Error::Input(format!("not admissible: witness (i, j, k) = ({i}, {j}, {k})")))
            }
        }
    }

    /// `mℤ` truncated to `[−window, window]`; `m = 0` gives `{0}`.
    pub fn multiples(m: i64, window: i64) -> AdmissibleSet {
        let elems = if m == 0 {
            BTreeSet::from([0])
        } else {
            (-window / m.abs()..=window / m.abs()).map(|k| k * m.abs()).collect()
        };
        AdmissibleSet { elems, window: Some((m.abs(), window)) }
    }

    pub fn zero() -> AdmissibleSet {
        AdmissibleSet { elems: BTreeSet::from([0]), window: None }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.elems.contains(&i)
    }

    pub fn elems(&self) -> impl Iterator<Item = i64> + '_ {
        self.elems.iter().copied()
    }

    pub fn is_window(&self) -> bool {
        self.window.is_some()
    }

    pub fn describe(&self) -> String {
        let list = self.elems.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        match self.window {
            Some((m, w)) => format!("{m}Z truncated to [-{w}, {w}] = {{{list}}}"),
            None => format!("{{{list}}}"),
        }
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> Result<AdmissibleSet> {
        AdmissibleSet::new(self.elems.iter().map(|&i| f(i)))
    }

    pub fn negate(&self) -> Result<AdmissibleSet> {
        self.map(|i| -i)
    }

    pub fn nonnegative(&self) -> Result<AdmissibleSet> {
        AdmissibleSet::new(self.elems.iter().copied().filter(|&i| i >= 0))
    }

    pub fn nonpositive(&self) -> Result<AdmissibleSet> {
        AdmissibleSet::new(self.elems.iter().copied().filter(|&i| i <= 0))
    }

    pub fn scale(&self, m: i64) -> Result<AdmissibleSet> {
        self.map(|i| m * i)
    }

    pub fn power(&self, m: u32) -> Result<AdmissibleSet> {
        self.map(|i| i.pow(m))
    }
}

/// An automorphism acting strictly: `F^u F^v = F^{u+v}` on atoms and on
/// morphisms, with `F^0` the identity.
pub trait StrictAuto<C: ?Sized> {
    fn name(&self) -> String;
    fn atom(&self, c: &C, a: AtomId, k: i64) -> AtomId;
    /// `F^k` on `f: a → b`.
    fn mor(&self, c: &C, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector;
}

/// The suspension of the category itself.
#[derive(Clone, Copy, Debug)]
pub struct ShiftAuto;

impl<C: Suspended + ?Sized> StrictAuto<C> for ShiftAuto {
    fn name(&self) -> String {
        "shift".into()
    }

    fn atom(&self, c: &C, a: AtomId, k: i64) -> AtomId {
        c.shift_atom(a, k)
    }

    fn mor(&self, c: &C, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        c.shift_mor(a, b, k, f)
    }
}

/// Twist by a quiver automorphism, on modules or degreewise on complexes.
#[derive(Clone, Debug)]
pub struct Twist(pub QuiverTwist);

impl StrictAuto<ModCat> for Twist {
    fn name(&self) -> String {
        "quiver twist".into()
    }

    fn atom(&self, c: &ModCat, a: AtomId, k: i64) -> AtomId {
        c.twist_atom(&self.0, a, k)
    }

    fn mor(&self, c: &ModCat, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        c.twist_mor(&self.0, a, b, k, f)
    }
}

impl StrictAuto<KbProj> for Twist {
    fn name(&self) -> String {
        "quiver twist".into()
    }

    fn atom(&self, c: &KbProj, a: AtomId, k: i64) -> AtomId {
        c.twist_atom(&self.0, a, k)
    }

    fn mor(&self, c: &KbProj, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        c.twist_mor(&self.0, a, b, k, f)
    }
}

/// `F^k` on an object of the additive hull.
pub fn apply_obj<C: ?Sized, F: StrictAuto<C>>(c: &C, f: &F, o: &Obj, k: i64) -> Obj {
    Obj(o.atoms().iter().map(|&a| f.atom(c, a, k)).collect())
}

/// `F^k` on a morphism of the additive hull.
pub fn apply_mor<C: LinCat + ?Sized, F: StrictAuto<C>>(c: &C, f: &F, m: &Mor, k: i64) -> Mor {
    let mut v = Vec::with_capacity(m.v.len());
    for (i, &x) in m.src.atoms().iter().enumerate() {
        for (j, &y) in m.tgt.atoms().iter().enumerate() {
            v.extend(f.mor(c, x, y, k, &m.block(c, i, j)));
        }
    }
    Mor { src: apply_obj(c, f, &m.src, k), tgt: apply_obj(c, f, &m.tgt, k), v }
}

/// Identities, composition on Hom bases, and strictness on the given atoms
/// for the degrees in `degrees`.
pub fn check_functor<C: LinCat + ?Sized, F: StrictAuto<C>>(c: &C, f: &F, atoms: &[AtomId], degrees: &[i64]) -> Report {
    let mut r = Report::new();
    let mut bad_id = Vec::new();
    let mut bad_comp = Vec::new();
    let mut bad_strict = Vec::new();
    for &k in degrees {
        for &a in atoms {
            let fa = f.atom(c, a, k);
            if f.mor(c, a, a, k, &c.identity(a)) != c.identity(fa) {
                bad_id.push(format!("{} at {k}", c.atom_label(a)));
            }
            for &l in degrees {
                if f.atom(c, fa, l) != f.atom(c, a, k + l) {
                    bad_strict.push(format!("{} at ({k}, {l})", c.atom_label(a)));
                }
            }
            for &b in atoms {
                for &e in atoms {
                    for x in Mor::basis_all(c, &Obj::atom(a), &Obj::atom(b)) {
                        for y in Mor::basis_all(c, &Obj::atom(b), &Obj::atom(e)) {
                            let lhs = f.mor(c, a, e, k, &c.compose(a, b, e, &x.v, &y.v));
                            let (fa, fb, fe) = (f.atom(c, a, k), f.atom(c, b, k), f.atom(c, e, k));
                            let rhs = c.compose(fa, fb, fe, &f.mor(c, a, b, k, &x.v), &f.mor(c, b, e, k, &y.v));
                            if lhs != rhs {
                                bad_comp.push(format!("({},{},{}) at {k}", a.0, b.0, e.0));
                            }
                        }
                    }
                }
            }
        }
    }
    r.push(Check::when("functor preserves identities", bad_id.is_empty(), || bad_id.join(", ")));
    r.push(Check::when("functor preserves composition", bad_comp.is_empty(), || bad_comp.join(", ")));
    r.push(Check::when("functor is strict on atoms", bad_strict.is_empty(), || bad_strict.join(", ")));
    r
}

/// The orbit category: same atoms, `Hom(a, b) = ⊕_{i ∈ Φ} Hom(a, F^i b)`
/// with components in ascending degree.
pub struct OrbitCat<'a, C: ?Sized, F> {
    pub base: &'a C,
    pub functor: F,
    pub phi: AdmissibleSet,
}

impl<'a, C: LinCat + ?Sized, F: StrictAuto<C>> OrbitCat<'a, C, F> {
    pub fn new(base: &'a C, functor: F, phi: AdmissibleSet) -> OrbitCat<'a, C, F> {
        OrbitCat { base, functor, phi }
    }

    /// `(degree, offset, dim)` of each component of Hom(a, b).
    fn offsets(&self, a: AtomId, b: AtomId) -> Vec<(i64, usize, usize)> {
        let mut off = 0;
        self.phi
            .elems()
            .map(|i| {
                let d = self.base.hom_dim(a, self.functor.atom(self.base, b, i));
                let r = (i, off, d);
                off += d;
                r
            })
            .collect()
    }

    /// The degree-`i` component of an orbit morphism, a base morphism `src → F^i tgt`.
    pub fn component(&self, m: &Mor, i: i64) -> Mor {
        let tgt = apply_obj(self.base, &self.functor, &m.tgt, i);
        let lay = layout(self, &m.src, &m.tgt);
        let mut v = Vec::new();
        for (p, &a) in m.src.atoms().iter().enumerate() {
            for (q, &b) in m.tgt.atoms().iter().enumerate() {
                let (o, _) = lay[p][q];
                for (deg, off, d) in self.offsets(a, b) {
                    if deg == i {
                        v.extend_from_slice(&m.v[o + off..o + off + d]);
                    }
                }
            }
        }
        Mor { src: m.src.clone(), tgt, v }
    }

    /// The homogeneous orbit morphism `src → tgt` of degree `i` with the
    /// given component `src → F^i tgt`.
    pub fn homogeneous(&self, src: &Obj, tgt: &Obj, i: i64, comp: &Mor) -> Result<Mor> {
        if !self.phi.contains(i) {
            return Err(Error::Input(format!("degree {i} is not in the admissible set")));
        }
        if comp.src != *src || comp.tgt != apply_obj(self.base, &self.functor, tgt, i) {
            return Err(Error::Input("component has the wrong source or target".into()));
        }
        let lc = layout(self.base, &comp.src, &comp.tgt);
        let mut v = Vec::with_capacity(hom_dim(self, src, tgt));
        for (p, &a) in src.atoms().iter().enumerate() {
            for (q, &b) in tgt.atoms().iter().enumerate() {
                for (deg, _, d) in self.offsets(a, b) {
                    if deg == i {
                        let (o, _) = lc[p][q];
                        v.extend_from_slice(&comp.v[o..o + d]);
                    } else {
                        v.extend(zero_vec(self.base.field(), d));
                    }
                }
            }
        }
        Ok(Mor { src: src.clone(), tgt: tgt.clone(), v })
    }

    /// A base morphism as a homogeneous morphism of degree 0.
    pub fn embed(&self, m: &Mor) -> Mor {
        self.homogeneous(&m.src, &m.tgt, 0, m).expect("degree 0 lies in every admissible set")
    }

    /// Degree-0 component when every other component vanishes.
    pub fn degree_zero(&self, m: &Mor) -> Option<Mor> {
        let nonzero = self.phi.elems().filter(|&i| i != 0).any(|i| !self.component(m, i).is_zero());
        (!nonzero).then(|| self.component(m, 0))
    }

    /// The subspace of degree-0 morphisms `src → tgt` given by a base subspace.
    pub fn embed_subspace(&self, src: &Obj, tgt: &Obj, s: &Subspace) -> Subspace {
        let vs: Vec<Vector> =
            s.basis().iter().map(|v| self.embed(&Mor { src: src.clone(), tgt: tgt.clone(), v: v.clone() }).v).collect();
        Subspace::span(self.base.field(), hom_dim(self, src, tgt), &vs)
    }
}

impl<C: LinCat + ?Sized, F: StrictAuto<C>> LinCat for OrbitCat<'_, C, F> {
    fn field(&self) -> Field {
        self.base.field()
    }

    fn hom_dim(&self, a: AtomId, b: AtomId) -> usize {
        self.phi.elems().map(|i| self.base.hom_dim(a, self.functor.atom(self.base, b, i))).sum()
    }

    /// `(fg)_i = Σ_{u+v=i} f_u · F^u(g_v)`.
    fn compose(&self, a: AtomId, b: AtomId, c: AtomId, f: &[Scalar], g: &[Scalar]) -> Vector {
        let (base, func) = (self.base, &self.functor);
        let out_offs = self.offsets(a, c);
        let mut out = zero_vec(base.field(), self.hom_dim(a, c));
        for (u, ou, du) in self.offsets(a, b) {
            let fu = &f[ou..ou + du];
            if du == 0 || is_zero_vec(fu) {
                continue;
            }
            let fb = func.atom(base, b, u);
            for (v, ov, dv) in self.offsets(b, c) {
                let gv = &g[ov..ov + dv];
                let Some(&(_, oi, _)) = out_offs.iter().find(|(i, _, _)| *i == u + v) else { continue };
                if dv == 0 || is_zero_vec(gv) {
                    continue;
                }
                let fvc = func.atom(base, c, v);
                let fuvc = func.atom(base, c, u + v);
                assert_eq!(func.atom(base, fvc, u), fuvc, "functor is not strict");
                let shifted = func.mor(base, b, fvc, u, gv);
                let prod = base.compose(a, fb, fuvc, fu, &shifted);
                for (k, s) in prod.iter().enumerate() {
                    if !s.is_zero() {
                        out[oi + k] = out[oi + k].add(s);
                    }
                }
            }
        }
        out
    }

    fn identity(&self, a: AtomId) -> Vector {
        let mut out = zero_vec(self.base.field(), self.hom_dim(a, a));
        for (i, o, d) in self.offsets(a, a) {
            if i == 0 {
                out[o..o + d].clone_from_slice(&self.base.identity(a));
            }
        }
        out
    }

    fn atom_label(&self, a: AtomId) -> String {
        self.base.atom_label(a)
    }
}

impl<C: Suspended + ?Sized, F: StrictAuto<C>> Suspended for OrbitCat<'_, C, F> {
    fn shift_atom(&self, a: AtomId, k: i64) -> AtomId {
        self.base.shift_atom(a, k)
    }

    fn shift_mor(&self, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector {
        let (base, func) = (self.base, &self.functor);
        let sb = base.shift_atom(b, k);
        let mut out = Vec::with_capacity(f.len());
        for (i, o, d) in self.offsets(a, b) {
            let fib = func.atom(base, b, i);
            assert_eq!(base.shift_atom(fib, k), func.atom(base, sb, i), "shift and functor do not commute on atoms");
            out.extend(base.shift_mor(a, fib, k, &f[o..o + d]));
        }
        out
    }
}

impl<C: Angulated + ?Sized, F: StrictAuto<C>> Angulated for OrbitCat<'_, C, F> {
    fn angle_size(&self) -> usize {
        self.base.angle_size()
    }

    /// Angles with all maps in degree 0 are decided in the base category;
    /// anything else is left undecided and reported as a failure.
    fn angle_membership(&self, t: &NAngle) -> Result<Check> {
        let maps: Option<Vec<Mor>> = t.maps.iter().map(|m| self.degree_zero(m)).collect();
        match maps {
            Some(maps) => self.base.angle_membership(&NAngle::new(self.base, t.objs.clone(), maps)?),
            None => Ok(Check::fail(
                "angle in the orbit category",
                "undecided: a map has nonzero components outside degree 0",
            )),
        }
    }
}

/// A graded morphism `src → tgt` by its components `src → F^i tgt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitHom {
    pub src: Obj,
    pub tgt: Obj,
    pub comps: BTreeMap<i64, Mor>,
}

impl OrbitHom {
    pub fn from_mor<C: LinCat + ?Sized, F: StrictAuto<C>>(oc: &OrbitCat<'_, C, F>, m: &Mor) -> OrbitHom {
        let comps = oc.phi.elems().map(|i| (i, oc.component(m, i))).collect();
        OrbitHom { src: m.src.clone(), tgt: m.tgt.clone(), comps }
    }

    pub fn to_mor<C: LinCat + ?Sized, F: StrictAuto<C>>(&self, oc: &OrbitCat<'_, C, F>) -> Result<Mor> {
        let mut total = Mor::zero(oc, &self.src, &self.tgt);
        for (&i, m) in &self.comps {
            if m.is_zero() {
                continue;
            }
            total = total.add(&oc.homogeneous(&self.src, &self.tgt, i, m)?);
        }
        Ok(total)
    }
}

/// Graded composition on components, truncated to Φ.
pub fn orbit_compose<C: LinCat + ?Sized, F: StrictAuto<C>>(
    oc: &OrbitCat<'_, C, F>,
    f: &OrbitHom,
    g: &OrbitHom,
) -> Result<OrbitHom> {
    if f.tgt != g.src {
        return Err(Error::Input("composing non-composable graded morphisms".into()));
    }
    let (base, func) = (oc.base, &oc.functor);
    let mut comps: BTreeMap<i64, Mor> = oc
        .phi
        .elems()
        .map(|i| {
            let tgt = apply_obj(base, func, &g.tgt, i);
            (i, Mor::zero(base, &f.src, &tgt))
        })
        .collect();
    for (&u, fu) in &f.comps {
        for (&v, gv) in &g.comps {
            if fu.is_zero() || gv.is_zero() {
                continue;
            }
            let Some(acc) = comps.get_mut(&(u + v)) else { continue };
            let shifted = apply_mor(base, func, gv, u);
            if shifted.src != fu.tgt {
                return Err(Error::Internal("component targets do not match after applying the functor".into()));
            }
            *acc = acc.add(&fu.then(base, &shifted));
        }
    }
    Ok(OrbitHom { src: f.src.clone(), tgt: g.tgt.clone(), comps })
}

/// End of `x` in the orbit category.
pub fn yoneda_algebra<C: LinCat + ?Sized, F: StrictAuto<C>>(oc: &OrbitCat<'_, C, F>, x: &Obj) -> Result<RingPresentation> {
    let n = hom_dim(oc, x, x);
    let mut sq = end_ring_mod(oc, x, &Subspace::zero(oc.field(), n), "none".into())?;
    sq.ring.provenance.push(("functor".into(), oc.functor.name()));
    sq.ring.provenance.push(("phi".into(), oc.phi.describe()));
    Ok(sq.ring)
}

/// The mutually inverse homogeneous maps `x → F^i x` of degree `−i` and
/// `F^i x → x` of degree `i`, both identities of the base category.
pub fn orbit_iso<C: LinCat + ?Sized, F: StrictAuto<C>>(oc: &OrbitCat<'_, C, F>, x: &Obj, i: i64) -> Result<(Mor, Mor, Check)> {
    if !(oc.phi.contains(i) && oc.phi.contains(-i)) {
        return Err(Error::Input(format!("both {i} and {} must lie in the admissible set", -i)));
    }
    let fx = apply_obj(oc.base, &oc.functor, x, i);
    if apply_obj(oc.base, &oc.functor, &fx, -i) != *x {
        return Err(Error::Input("the functor is not invertible on this object".into()));
    }
    let f = oc.homogeneous(x, &fx, -i, &Mor::identity(oc.base, x))?;
    let g = oc.homogeneous(&fx, x, i, &Mor::identity(oc.base, &fx))?;
    let ok = f.then(oc, &g) == Mor::identity(oc, x) && g.then(oc, &f) == Mor::identity(oc, &fx);
    let check = Check::when(format!("X and F^{i}X isomorphic in the orbit category"), ok, || "composites are not identities".into());
    Ok((f, g, check))
}

/// Is the base morphism `f`, in degree 0, a left (right) `add(M)`-approximation
/// in the orbit category?
pub fn orbit_approximation_check<C: LinCat + ?Sized, F: StrictAuto<C>>(
    oc: &OrbitCat<'_, C, F>,
    f: &Mor,
    d: &Subcat,
    side: Side,
) -> Check {
    let tag = match side {
        Side::Left => "left",
        Side::Right => "right",
    };
    let fail = approximation_failure(oc, &oc.embed(f), d, side);
    Check::when(format!("{tag} approximation in the orbit category"), fail.is_none(), || fail.clone().unwrap_or_default())
}
