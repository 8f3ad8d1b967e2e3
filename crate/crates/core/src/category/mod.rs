//! Finite-dimensional linear categories and their additive hulls.
//!
//! A category exposes indecomposable-or-not "atoms" with Hom spaces given in
//! coordinates. Objects are formal direct sums of atoms and morphisms are
//! block matrices of coordinate vectors, laid out row-major over
//! (source summand, target summand).

mod modcat;
mod tensor;

use std::fmt;

use crate::exactla::{is_zero_vec, unit_vec, zero_vec, Field, Mat, Scalar, Subspace};

pub use modcat::ModCat;
pub use tensor::TensorCache;

pub type Vector = Vec<Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomId(pub usize);

pub trait LinCat {
    fn field(&self) -> Field;
    fn hom_dim(&self, a: AtomId, b: AtomId) -> usize;
    /// `f: a → b` followed by `g: b → c`.
    fn compose(&self, a: AtomId, b: AtomId, c: AtomId, f: &[Scalar], g: &[Scalar]) -> Vector;
    fn identity(&self, a: AtomId) -> Vector;
    fn atom_label(&self, a: AtomId) -> String;
}

/// A category with an automorphism Σ acting strictly on atoms.
pub trait Suspended: LinCat {
    fn shift_atom(&self, a: AtomId, k: i64) -> AtomId;
    /// Σ^k applied to `f: a → b`.
    fn shift_mor(&self, a: AtomId, b: AtomId, k: i64, f: &[Scalar]) -> Vector;
}

/// Formal direct sum of atoms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub Vec<AtomId>);

impl Obj {
    pub fn zero() -> Obj {
        Obj(Vec::new())
    }

    pub fn atom(a: AtomId) -> Obj {
        Obj(vec![a])
    }

    pub fn sum(parts: &[&Obj]) -> Obj {
        Obj(parts.iter().flat_map(|p| p.0.iter().copied()).collect())
    }

    pub fn power(&self, n: usize) -> Obj {
        Obj((0..n).flat_map(|_| self.0.iter().copied()).collect())
    }

    pub fn atoms(&self) -> &[AtomId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn label<C: LinCat + ?Sized>(&self, c: &C) -> String {
        if self.0.is_empty() {
            return "0".into();
        }
        self.0.iter().map(|&a| c.atom_label(a)).collect::<Vec<_>>().join("+")
    }

    pub fn shift<C: Suspended + ?Sized>(&self, c: &C, k: i64) -> Obj {
        Obj(self.0.iter().map(|&a| c.shift_atom(a, k)).collect())
    }
}

/// Offsets of each (i, j) block in the coordinates of Hom(a, b).
pub fn layout<C: LinCat + ?Sized>(c: &C, a: &Obj, b: &Obj) -> Vec<Vec<(usize, usize)>> {
    let mut off = 0;
    a.0.iter()
        .map(|&x| {
            b.0.iter()
                .map(|&y| {
                    let d = c.hom_dim(x, y);
                    let r = (off, d);
                    off += d;
                    r
                })
                .collect()
        })
        .collect()
}

pub fn hom_dim<C: LinCat + ?Sized>(c: &C, a: &Obj, b: &Obj) -> usize {
    a.0.iter().map(|&x| b.0.iter().map(|&y| c.hom_dim(x, y)).sum::<usize>()).sum()
}

#[derive(Clone, PartialEq, Eq)]
pub struct Mor {
    pub src: Obj,
    pub tgt: Obj,
    pub v: Vector,
}

impl fmt::Debug for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mor({:?} -> {:?}: {:?})", self.src.0, self.tgt.0, self.v)
    }
}

impl Mor {
    pub fn new<C: LinCat + ?Sized>(c: &C, src: Obj, tgt: Obj, v: Vector) -> Mor {
        assert_eq!(v.len(), hom_dim(c, &src, &tgt), "morphism coordinates have the wrong length");
        Mor { src, tgt, v }
    }

    pub fn zero<C: LinCat + ?Sized>(c: &C, src: &Obj, tgt: &Obj) -> Mor {
        Mor { src: src.clone(), tgt: tgt.clone(), v: zero_vec(c.field(), hom_dim(c, src, tgt)) }
    }

    pub fn identity<C: LinCat + ?Sized>(c: &C, a: &Obj) -> Mor {
        let lay = layout(c, a, a);
        let mut v = zero_vec(c.field(), hom_dim(c, a, a));
        for (i, &x) in a.0.iter().enumerate() {
            let (o, _) = lay[i][i];
            for (k, s) in c.identity(x).into_iter().enumerate() {
                v[o + k] = s;
            }
        }
        Mor { src: a.clone(), tgt: a.clone(), v }
    }

    pub fn atomic(a: AtomId, b: AtomId, v: Vector) -> Mor {
        Mor { src: Obj::atom(a), tgt: Obj::atom(b), v }
    }

    /// Basis morphism `k` of Hom(a, b).
    pub fn basis<C: LinCat + ?Sized>(c: &C, a: &Obj, b: &Obj, k: usize) -> Mor {
        let n = hom_dim(c, a, b);
        Mor { src: a.clone(), tgt: b.clone(), v: unit_vec(c.field(), n, k) }
    }

    pub fn basis_all<C: LinCat + ?Sized>(c: &C, a: &Obj, b: &Obj) -> Vec<Mor> {
        (0..hom_dim(c, a, b)).map(|k| Mor::basis(c, a, b, k)).collect()
    }

    pub fn block<C: LinCat + ?Sized>(&self, c: &C, i: usize, j: usize) -> Vector {
        let (o, d) = layout(c, &self.src, &self.tgt)[i][j];
        self.v[o..o + d].to_vec()
    }

    /// Composite `self` then `g`.
    pub fn then<C: LinCat + ?Sized>(&self, c: &C, g: &Mor) -> Mor {
        assert_eq!(self.tgt, g.src, "composing non-composable morphisms");
        let lf = layout(c, &self.src, &self.tgt);
        let lg = layout(c, &g.src, &g.tgt);
        let lo = layout(c, &self.src, &g.tgt);
        let mut v = zero_vec(c.field(), hom_dim(c, &self.src, &g.tgt));
        for (i, &x) in self.src.0.iter().enumerate() {
            for (j, &y) in self.tgt.0.iter().enumerate() {
                let (of, df) = lf[i][j];
                let fb = &self.v[of..of + df];
                if df == 0 || is_zero_vec(fb) {
                    continue;
                }
                for (k, &z) in g.tgt.0.iter().enumerate() {
                    let (og, dg) = lg[j][k];
                    let gb = &g.v[og..og + dg];
                    if dg == 0 || is_zero_vec(gb) {
                        continue;
                    }
                    let prod = c.compose(x, y, z, fb, gb);
                    let (oo, _) = lo[i][k];
                    for (t, s) in prod.iter().enumerate() {
                        if !s.is_zero() {
                            v[oo + t] = v[oo + t].add(s);
                        }
                    }
                }
            }
        }
        Mor { src: self.src.clone(), tgt: g.tgt.clone(), v }
    }

    pub fn add(&self, other: &Mor) -> Mor {
        assert!(self.src == other.src && self.tgt == other.tgt);
        Mor { src: self.src.clone(), tgt: self.tgt.clone(), v: crate::exactla::add_vec(&self.v, &other.v) }
    }

    pub fn sub(&self, other: &Mor) -> Mor {
        assert!(self.src == other.src && self.tgt == other.tgt);
        Mor { src: self.src.clone(), tgt: self.tgt.clone(), v: crate::exactla::sub_vec(&self.v, &other.v) }
    }

    pub fn scale(&self, s: &Scalar) -> Mor {
        Mor { src: self.src.clone(), tgt: self.tgt.clone(), v: crate::exactla::scale_vec(s, &self.v) }
    }

    pub fn neg(&self) -> Mor {
        Mor { src: self.src.clone(), tgt: self.tgt.clone(), v: self.v.iter().map(Scalar::neg).collect() }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.v)
    }

    /// Assembles a morphism `⊕ srcs → ⊕ tgts` from a grid of blocks; `None`
    /// entries are zero.
    pub fn from_grid<C: LinCat + ?Sized>(c: &C, srcs: &[Obj], tgts: &[Obj], grid: &[Vec<Option<&Mor>>]) -> Mor {
        let src = Obj::sum(&srcs.iter().collect::<Vec<_>>());
        let tgt = Obj::sum(&tgts.iter().collect::<Vec<_>>());
        let lay = layout(c, &src, &tgt);
        let mut v = zero_vec(c.field(), hom_dim(c, &src, &tgt));
        let mut r0 = 0;
        for (bi, s) in srcs.iter().enumerate() {
            let mut c0 = 0;
            for (bj, t) in tgts.iter().enumerate() {
                if let Some(m) = grid[bi][bj] {
                    assert!(&m.src == s && &m.tgt == t, "grid block has the wrong shape");
                    let ml = layout(c, s, t);
                    for i in 0..s.len() {
                        for j in 0..t.len() {
                            let (om, d) = ml[i][j];
                            let (o, _) = lay[r0 + i][c0 + j];
                            v[o..o + d].clone_from_slice(&m.v[om..om + d]);
                        }
                    }
                }
                c0 += t.len();
            }
            r0 += s.len();
        }
        Mor { src, tgt, v }
    }

    pub fn diag<C: LinCat + ?Sized>(c: &C, parts: &[&Mor]) -> Mor {
        let srcs: Vec<Obj> = parts.iter().map(|m| m.src.clone()).collect();
        let tgts: Vec<Obj> = parts.iter().map(|m| m.tgt.clone()).collect();
        let grid: Vec<Vec<Option<&Mor>>> =
            (0..parts.len()).map(|i| (0..parts.len()).map(|j| (i == j).then_some(parts[i])).collect()).collect();
        Mor::from_grid(c, &srcs, &tgts, &grid)
    }

    /// `[f_1, …, f_k]: a → t_1 ⊕ … ⊕ t_k`.
    pub fn row<C: LinCat + ?Sized>(c: &C, parts: &[&Mor]) -> Mor {
        let src = parts[0].src.clone();
        let tgts: Vec<Obj> = parts.iter().map(|m| m.tgt.clone()).collect();
        let grid = vec![parts.iter().map(|&m| Some(m)).collect()];
        Mor::from_grid(c, &[src], &tgts, &grid)
    }

    /// `[f_1; …; f_k]: s_1 ⊕ … ⊕ s_k → b`.
    pub fn column<C: LinCat + ?Sized>(c: &C, parts: &[&Mor]) -> Mor {
        let tgt = parts[0].tgt.clone();
        let srcs: Vec<Obj> = parts.iter().map(|m| m.src.clone()).collect();
        let grid: Vec<Vec<Option<&Mor>>> = parts.iter().map(|&m| vec![Some(m)]).collect();
        Mor::from_grid(c, &srcs, &[tgt], &grid)
    }

    /// Restriction to the summands `rows` of the source and `cols` of the target.
    pub fn restrict<C: LinCat + ?Sized>(&self, c: &C, rows: &[usize], cols: &[usize]) -> Mor {
        let src = Obj(rows.iter().map(|&i| self.src.0[i]).collect());
        let tgt = Obj(cols.iter().map(|&j| self.tgt.0[j]).collect());
        let lay = layout(c, &self.src, &self.tgt);
        let mut v = Vec::with_capacity(hom_dim(c, &src, &tgt));
        for &i in rows {
            for &j in cols {
                let (o, d) = lay[i][j];
                v.extend_from_slice(&self.v[o..o + d]);
            }
        }
        Mor { src, tgt, v }
    }

    pub fn shift<C: Suspended + ?Sized>(&self, c: &C, k: i64) -> Mor {
        let src = self.src.shift(c, k);
        let tgt = self.tgt.shift(c, k);
        let lay = layout(c, &self.src, &self.tgt);
        let mut v = Vec::new();
        for (i, &x) in self.src.0.iter().enumerate() {
            for (j, &y) in self.tgt.0.iter().enumerate() {
                let (o, d) = lay[i][j];
                v.extend(c.shift_mor(x, y, k, &self.v[o..o + d]));
            }
        }
        Mor { src, tgt, v }
    }
}

/// Inclusion of summand block `idx` when `whole` is written as `parts` concatenated.
pub fn injection<C: LinCat + ?Sized>(c: &C, parts: &[&Obj], idx: usize) -> Mor {
    let id = Mor::identity(c, parts[idx]);
    let tgts: Vec<Obj> = parts.iter().map(|&p| p.clone()).collect();
    let grid = vec![(0..parts.len()).map(|j| (j == idx).then_some(&id)).collect()];
    Mor::from_grid(c, &[parts[idx].clone()], &tgts, &grid)
}

pub fn projection<C: LinCat + ?Sized>(c: &C, parts: &[&Obj], idx: usize) -> Mor {
    let id = Mor::identity(c, parts[idx]);
    let srcs: Vec<Obj> = parts.iter().map(|&p| p.clone()).collect();
    let grid: Vec<Vec<Option<&Mor>>> = (0..parts.len()).map(|i| vec![(i == idx).then_some(&id)]).collect();
    Mor::from_grid(c, &srcs, &[parts[idx].clone()], &grid)
}

/// Matrix of `f ↦ f·g` from Hom(a, g.src) to Hom(a, g.tgt).
pub fn post_matrix<C: LinCat + ?Sized>(c: &C, a: &Obj, g: &Mor) -> Mat {
    let n = hom_dim(c, a, &g.src);
    let m = hom_dim(c, a, &g.tgt);
    let cols: Vec<Vector> = (0..n).map(|k| Mor::basis(c, a, &g.src, k).then(c, g).v).collect();
    Mat::from_columns(c.field(), m, &cols)
}

/// Matrix of `h ↦ f·h` from Hom(f.tgt, b) to Hom(f.src, b).
pub fn pre_matrix<C: LinCat + ?Sized>(c: &C, f: &Mor, b: &Obj) -> Mat {
    let n = hom_dim(c, &f.tgt, b);
    let m = hom_dim(c, &f.src, b);
    let cols: Vec<Vector> = (0..n).map(|k| f.then(c, &Mor::basis(c, &f.tgt, b, k)).v).collect();
    Mat::from_columns(c.field(), m, &cols)
}

/// Is `f: a → b` invertible? Returns the inverse when it is.
pub fn inverse<C: LinCat + ?Sized>(c: &C, f: &Mor) -> Option<Mor> {
    // Solve f·g = 1, then confirm g·f = 1.
    let m = pre_matrix(c, f, &f.src);
    let target = Mor::identity(c, &f.src);
    let x = m.solve(&target.v)?;
    let g = Mor { src: f.tgt.clone(), tgt: f.src.clone(), v: x };
    (g.then(c, f) == Mor::identity(c, &f.tgt)).then_some(g)
}

/// Direct sum of subspaces placed in the blocks of Hom(a, b).
pub fn block_subspace<C: LinCat + ?Sized>(
    c: &C,
    a: &Obj,
    b: &Obj,
    mut block: impl FnMut(usize, usize) -> Subspace,
) -> Subspace {
    let lay = layout(c, a, b);
    let n = hom_dim(c, a, b);
    let mut vecs = Vec::new();
    for (i, row) in lay.iter().enumerate() {
        for (j, &(o, d)) in row.iter().enumerate() {
            let s = block(i, j);
            assert_eq!(s.ambient(), d);
            for bv in s.basis() {
                let mut v = zero_vec(c.field(), n);
                v[o..o + d].clone_from_slice(bv);
                vecs.push(v);
            }
        }
    }
    Subspace::span(c.field(), n, &vecs)
}
