//! Annihilator ideals relative to `D = add(M)`, approximations, and quotient
//! endomorphism rings.
//!
//! With left-to-right composition:
//! * `L(a, b)`: morphisms `f` with `f·h = 0` for every `h: b → M`;
//! * `R(a, b)`: morphisms `f` with `g·f = 0` for every `g: M → a`;
//! * `F(a, b)`: morphisms factoring through `add(M)`;
//! * `I = L ∩ F` and `J = R ∩ F`.

mod ring;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use crate::category::{
    block_subspace, hom_dim, post_matrix, pre_matrix, AtomId, LinCat, Mor, Obj, Vector,
};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::report::{fmt_vec, Check, Report};

pub use ring::{RingPresentation, Subquotient};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealKind {
    L,
    R,
    F,
    I,
    J,
}

impl IdealKind {
    pub const ALL: [IdealKind; 5] = [IdealKind::L, IdealKind::R, IdealKind::F, IdealKind::I, IdealKind::J];
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdealKind::L => "L",
            IdealKind::R => "R",
            IdealKind::F => "F",
            IdealKind::I => "I",
            IdealKind::J => "J",
        };
        f.write_str(s)
    }
}

impl FromStr for IdealKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<IdealKind> {
        match s {
            "L" | "l" => Ok(IdealKind::L),
            "R" | "r" => Ok(IdealKind::R),
            "F" | "f" => Ok(IdealKind::F),
            "I" | "i" => Ok(IdealKind::I),
            "J" | "j" => Ok(IdealKind::J),
            _ => Err(Error::Input(format!("unknown ideal kind `{s}` (expected L, R, F, I or J)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// `D = add(M)` for a generator `M`, with cached ideal spaces on atom pairs.
/// The cache is not keyed by category: use one `Subcat` per category.
pub struct Subcat {
    pub m: Obj,
    gens: Vec<AtomId>,
    cache: Mutex<HashMap<(IdealKind, AtomId, AtomId), Subspace>>,
}

impl Clone for Subcat {
    fn clone(&self) -> Subcat {
        Subcat::new(self.m.clone())
    }
}

impl fmt::Debug for Subcat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "add({:?})", self.m.0)
    }
}

impl Subcat {
    pub fn new(m: Obj) -> Subcat {
        let mut gens = m.0.clone();
        gens.sort();
        gens.dedup();
        Subcat { m, gens, cache: Mutex::new(HashMap::new()) }
    }

    /// Distinct atoms of `M`.
    pub fn generators(&self) -> &[AtomId] {
        &self.gens
    }

    /// Structural membership: every summand is a summand of `M`.
    pub fn contains(&self, o: &Obj) -> bool {
        o.0.iter().all(|a| self.gens.contains(a))
    }

    /// The ideal on a pair of atoms.
    pub fn atom_space<C: LinCat + ?Sized>(&self, c: &C, kind: IdealKind, a: AtomId, b: AtomId) -> Subspace {
        if let Some(s) = self.cache.lock().unwrap().get(&(kind, a, b)) {
            return s.clone();
        }
        let s = match kind {
            IdealKind::L => annihilator_left(c, &self.gens, a, b),
            IdealKind::R => annihilator_right(c, &self.gens, a, b),
            IdealKind::F => factoring(c, &self.gens, a, b),
            IdealKind::I => {
                self.atom_space(c, IdealKind::L, a, b).intersect(&self.atom_space(c, IdealKind::F, a, b))
            }
            IdealKind::J => {
                self.atom_space(c, IdealKind::R, a, b).intersect(&self.atom_space(c, IdealKind::F, a, b))
            }
        };
        self.cache.lock().unwrap().insert((kind, a, b), s.clone());
        s
    }

    /// The ideal as a subspace of Hom(a, b).
    pub fn space<C: LinCat + ?Sized>(&self, c: &C, kind: IdealKind, a: &Obj, b: &Obj) -> Subspace {
        block_subspace(c, a, b, |i, j| self.atom_space(c, kind, a.0[i], b.0[j]))
    }
}

fn stack_kernel(field: crate::exactla::Field, cols: usize, blocks: Vec<Mat>) -> Subspace {
    let blocks: Vec<&Mat> = blocks.iter().filter(|m| m.rows() > 0).collect();
    if blocks.is_empty() {
        return Subspace::full(field, cols);
    }
    Mat::vstack(field, cols, &blocks).kernel()
}

fn annihilator_left<C: LinCat + ?Sized>(c: &C, gens: &[AtomId], a: AtomId, b: AtomId) -> Subspace {
    let (ao, bo) = (Obj::atom(a), Obj::atom(b));
    let n = c.hom_dim(a, b);
    let mut blocks = Vec::new();
    for &m in gens {
        let mo = Obj::atom(m);
        for h in Mor::basis_all(c, &bo, &mo) {
            blocks.push(post_matrix(c, &ao, &h));
        }
    }
    stack_kernel(c.field(), n, blocks)
}

fn annihilator_right<C: LinCat + ?Sized>(c: &C, gens: &[AtomId], a: AtomId, b: AtomId) -> Subspace {
    let (ao, bo) = (Obj::atom(a), Obj::atom(b));
    let n = c.hom_dim(a, b);
    let mut blocks = Vec::new();
    for &m in gens {
        let mo = Obj::atom(m);
        for g in Mor::basis_all(c, &mo, &ao) {
            blocks.push(pre_matrix(c, &g, &bo));
        }
    }
    stack_kernel(c.field(), n, blocks)
}

fn factoring<C: LinCat + ?Sized>(c: &C, gens: &[AtomId], a: AtomId, b: AtomId) -> Subspace {
    let (ao, bo) = (Obj::atom(a), Obj::atom(b));
    let mut vecs = Vec::new();
    for &m in gens {
        let mo = Obj::atom(m);
        let qs = Mor::basis_all(c, &mo, &bo);
        for p in Mor::basis_all(c, &ao, &mo) {
            for q in &qs {
                vecs.push(p.then(c, q).v);
            }
        }
    }
    Subspace::span(c.field(), c.hom_dim(a, b), &vecs)
}

/// Universal approximation: left `x → ⊕ m^{dim Hom(x, m)}`, right
/// `⊕ m^{dim Hom(m, x)} → x`, over the distinct summands `m` of `M`.
pub fn approximation<C: LinCat + ?Sized>(c: &C, x: &Obj, d: &Subcat, side: Side) -> Mor {
    let mut parts = Vec::new();
    for &m in d.generators() {
        let mo = Obj::atom(m);
        match side {
            Side::Left => parts.extend(Mor::basis_all(c, x, &mo)),
            Side::Right => parts.extend(Mor::basis_all(c, &mo, x)),
        }
    }
    if parts.is_empty() {
        return match side {
            Side::Left => Mor::zero(c, x, &Obj::zero()),
            Side::Right => Mor::zero(c, &Obj::zero(), x),
        };
    }
    let refs: Vec<&Mor> = parts.iter().collect();
    match side {
        Side::Left => Mor::row(c, &refs),
        Side::Right => Mor::column(c, &refs),
    }
}

/// Is `f` a left (right) `D`-approximation: every map from `f.src` to `M`
/// (from `M` to `f.tgt`) factors through it? Returns a non-factoring witness.
pub fn approximation_failure<C: LinCat + ?Sized>(c: &C, f: &Mor, d: &Subcat, side: Side) -> Option<String> {
    for &m in d.generators() {
        let mo = Obj::atom(m);
        match side {
            Side::Left => {
                let img = pre_matrix(c, f, &mo).column_space();
                for h in Mor::basis_all(c, &f.src, &mo) {
                    if !img.contains(&h.v) {
                        return Some(format!("{} → {} map {} does not factor", f.src.label(c), c.atom_label(m), fmt_vec(&h.v)));
                    }
                }
            }
            Side::Right => {
                let img = post_matrix(c, &mo, f).column_space();
                for h in Mor::basis_all(c, &mo, &f.tgt) {
                    if !img.contains(&h.v) {
                        return Some(format!("{} → {} map {} does not factor", c.atom_label(m), f.tgt.label(c), fmt_vec(&h.v)));
                    }
                }
            }
        }
    }
    None
}

/// Verifies the four clauses of the annihilator lemma on the pair (a, b).
pub fn lemma_ann_verify<C: LinCat + ?Sized>(c: &C, a: &Obj, b: &Obj, d: &Subcat) -> Report {
    let mut rep = Report::new();
    let l = d.space(c, IdealKind::L, a, b);
    let r = d.space(c, IdealKind::R, a, b);
    let i = d.space(c, IdealKind::I, a, b);
    let j = d.space(c, IdealKind::J, a, b);

    let fa = approximation(c, a, d, Side::Right);
    let r_alt = pre_matrix(c, &fa, b).kernel();
    rep.push(Check::when("clause1: R(a,b) = {g : f_a g = 0}", r == r_alt, || {
        format!("dims {} vs {}", r.dim(), r_alt.dim())
    }));

    let fb = approximation(c, b, d, Side::Left);
    let l_alt = post_matrix(c, a, &fb).kernel();
    rep.push(Check::when("clause2: L(a,b) = {g : g f^b = 0}", l == l_alt, || {
        format!("dims {} vs {}", l.dim(), l_alt.dim())
    }));

    if d.contains(a) {
        rep.push(Check::when("clause3: R(a,b) = 0", r.is_zero(), || fmt_vec(&r.basis()[0])));
        rep.push(Check::when("clause3: L(a,b) = I(a,b)", l == i, || format!("dims {} vs {}", l.dim(), i.dim())));
    } else {
        rep.note("clause3 skipped: a not built from summands of M");
    }
    if d.contains(b) {
        rep.push(Check::when("clause4: L(a,b) = 0", l.is_zero(), || fmt_vec(&l.basis()[0])));
        rep.push(Check::when("clause4: R(a,b) = J(a,b)", r == j, || format!("dims {} vs {}", r.dim(), j.dim())));
    } else {
        rep.note("clause4 skipped: b not built from summands of M");
    }
    rep
}

/// Label of an ambient coordinate vector of End(o): its first nonzero block.
pub fn end_label<C: LinCat + ?Sized>(c: &C, o: &Obj, v: &[crate::exactla::Scalar]) -> String {
    let lay = crate::category::layout(c, o, o);
    for (i, row) in lay.iter().enumerate() {
        for (j, &(off, d)) in row.iter().enumerate() {
            if let Some(k) = (0..d).find(|&k| !v[off + k].is_zero()) {
                return format!("{}>{}#{}", i, j, k);
            }
        }
    }
    "0".into()
}

/// End(o), or End(o)/ideal when `kind` is given.
pub fn end_ring<C: LinCat + ?Sized>(c: &C, o: &Obj, kind: Option<IdealKind>, d: &Subcat) -> Result<Subquotient> {
    let n = hom_dim(c, o, o);
    let ideal = match kind {
        Some(k) => d.space(c, k, o, o),
        None => Subspace::zero(c.field(), n),
    };
    end_ring_mod(c, o, &ideal, kind.map(|k| k.to_string()).unwrap_or_else(|| "none".into()))
}

/// End(o) modulo a given ideal subspace.
pub fn end_ring_mod<C: LinCat + ?Sized>(c: &C, o: &Obj, ideal: &Subspace, tag: String) -> Result<Subquotient> {
    let n = hom_dim(c, o, o);
    let full = Subspace::full(c.field(), n);
    let id = Mor::identity(c, o);
    let mul = |x: &[crate::exactla::Scalar], y: &[crate::exactla::Scalar]| -> Vector {
        let fx = Mor { src: o.clone(), tgt: o.clone(), v: x.to_vec() };
        let fy = Mor { src: o.clone(), tgt: o.clone(), v: y.to_vec() };
        fx.then(c, &fy).v
    };
    let mut sq = RingPresentation::subquotient(c.field(), &full, ideal, &id.v, mul, |v| end_label(c, o, v))?;
    sq.ring.provenance.push(("object".into(), o.label(c)));
    sq.ring.provenance.push(("ideal".into(), tag));
    Ok(sq)
}
