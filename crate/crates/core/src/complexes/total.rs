use std::collections::BTreeMap;

use crate::category::{hom_dim, post_matrix, pre_matrix, LinCat, Mor, Obj, Vector};
use crate::error::{Error, Result};
use crate::exactla::{sign, zero_vec, Coordinatizer, Field, Mat, Scalar, Subspace};

use super::{ChainMap, Complex};

/// Degree-indexed vector spaces with `maps[k]: dims[k] → dims[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectComplex {
    pub field: Field,
    pub lo: i64,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl VectComplex {
    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo || n > self.hi() {
            0
        } else {
            self.dims[(n - self.lo) as usize]
        }
    }

    /// The map out of degree `n` (a zero matrix outside the range).
    pub fn map(&self, n: i64) -> Mat {
        if n >= self.lo && n < self.hi() {
            self.maps[(n - self.lo) as usize].clone()
        } else {
            Mat::zeros(self.field, self.dim(n + 1), self.dim(n))
        }
    }
}

/// `dim ker d^n − rank d^{n−1}` in every degree.
pub fn homology_dims(v: &VectComplex) -> Result<BTreeMap<i64, usize>> {
    if v.maps.len() + 1 != v.dims.len() && !(v.dims.is_empty() && v.maps.is_empty()) {
        return Err(Error::Input("vector complex needs one map between consecutive degrees".into()));
    }
    for (k, m) in v.maps.iter().enumerate() {
        if m.shape() != (v.dims[k + 1], v.dims[k]) {
            return Err(Error::Input(format!("map out of degree {} has the wrong shape", v.lo + k as i64)));
        }
    }
    for k in 0..v.maps.len().saturating_sub(1) {
        if !v.maps[k + 1].mul(&v.maps[k]).is_zero() {
            return Err(Error::Input(format!("consecutive maps at degree {} do not compose to zero", v.lo + k as i64)));
        }
    }
    let mut out = BTreeMap::new();
    for n in v.lo..=v.hi() {
        let ker = v.dim(n) - v.map(n).rank();
        let im = v.map(n - 1).rank();
        out.insert(n, ker - im);
    }
    Ok(out)
}

/// Hom•(x, y) together with the layout of its terms.
#[derive(Clone, Debug)]
pub struct HomTotal {
    pub x: Complex,
    pub y: Complex,
    pub complex: VectComplex,
    /// For each degree, the blocks `(p, offset, len)` of `Hom(x^p, y^{p+n})`.
    terms: Vec<Vec<(i64, usize, usize)>>,
}

pub fn hom_total_complex<C: LinCat + ?Sized>(c: &C, x: &Complex, y: &Complex) -> HomTotal {
    let field = c.field();
    let lo = y.lo - x.hi();
    let hi = y.hi() - x.lo;
    let mut terms = Vec::new();
    let mut dims = Vec::new();
    for n in lo..=hi {
        let mut blocks = Vec::new();
        let mut off = 0;
        for p in x.degrees() {
            if p + n >= y.lo && p + n <= y.hi() {
                let d = hom_dim(c, &x.obj(p), &y.obj(p + n));
                blocks.push((p, off, d));
                off += d;
            }
        }
        terms.push(blocks);
        dims.push(off);
    }
    let mut ht = HomTotal { x: x.clone(), y: y.clone(), complex: VectComplex { field, lo, dims, maps: Vec::new() }, terms };
    let mut maps = Vec::new();
    for n in lo..hi {
        maps.push(ht.build_diff(c, n));
    }
    ht.complex.maps = maps;
    ht
}

impl HomTotal {
    pub fn lo(&self) -> i64 {
        self.complex.lo
    }

    pub fn hi(&self) -> i64 {
        self.complex.hi()
    }

    pub fn dim(&self, n: i64) -> usize {
        self.complex.dim(n)
    }

    pub fn diff(&self, n: i64) -> Mat {
        self.complex.map(n)
    }

    fn blocks(&self, n: i64) -> &[(i64, usize, usize)] {
        if n < self.lo() || n > self.hi() {
            &[]
        } else {
            &self.terms[(n - self.lo()) as usize]
        }
    }

    fn block_of(&self, n: i64, p: i64) -> Option<(usize, usize)> {
        self.blocks(n).iter().find(|b| b.0 == p).map(|b| (b.1, b.2))
    }

    fn build_diff<C: LinCat + ?Sized>(&self, c: &C, n: i64) -> Mat {
        let field = c.field();
        let mut m = Mat::zeros(field, self.dim(n + 1), self.dim(n));
        let s = sign(&field, n).neg();
        for &(p, off, _) in self.blocks(n) {
            let xp = self.x.obj(p);
            if let Some((o2, _)) = self.block_of(n + 1, p) {
                m.set_block(o2, off, &post_matrix(c, &xp, &self.y.diff(c, p + n)));
            }
            if let Some((o2, _)) = self.block_of(n + 1, p - 1) {
                let pre = pre_matrix(c, &self.x.diff(c, p - 1), &self.y.obj(p + n));
                m.set_block(o2, off, &pre.scale(&s));
            }
        }
        m
    }

    /// Components `f_p: x^p → y^{p+n}` of a degree-`n` element.
    pub fn components<C: LinCat + ?Sized>(&self, _c: &C, n: i64, v: &[Scalar]) -> Vec<(i64, Mor)> {
        self.blocks(n)
            .iter()
            .map(|&(p, off, len)| {
                (p, Mor { src: self.x.obj(p), tgt: self.y.obj(p + n), v: v[off..off + len].to_vec() })
            })
            .collect()
    }

    /// Degree-`n` element from components `f_p` (missing ones are zero).
    pub fn vector<C: LinCat + ?Sized>(&self, c: &C, n: i64, comp: impl Fn(i64) -> Option<Mor>) -> Vector {
        let mut v = zero_vec(c.field(), self.dim(n));
        for &(p, off, len) in self.blocks(n) {
            if let Some(m) = comp(p) {
                assert_eq!(m.v.len(), len);
                v[off..off + len].clone_from_slice(&m.v);
            }
        }
        v
    }

    /// The degree-0 element as a chain map `x → y`.
    pub fn chain_map<C: LinCat + ?Sized>(&self, c: &C, v: &[Scalar]) -> ChainMap {
        let comps = self.components(c, 0, v);
        let all = self
            .x
            .degrees()
            .map(|p| {
                comps
                    .iter()
                    .find(|(q, _)| *q == p)
                    .map(|(_, m)| m.clone())
                    .unwrap_or_else(|| Mor::zero(c, &self.x.obj(p), &self.y.obj(p)))
            })
            .collect();
        ChainMap { src: self.x.clone(), tgt: self.y.clone(), comps: all }
    }

    /// Degreewise composite `u` then `v` of two degree-0 elements of Hom•(x, x).
    pub fn endo_product<C: LinCat + ?Sized>(&self, c: &C, u: &[Scalar], v: &[Scalar]) -> Vector {
        assert_eq!(self.x, self.y, "degree-0 product needs an endomorphism complex");
        let fu = self.components(c, 0, u);
        let fv = self.components(c, 0, v);
        let prods: Vec<(i64, Mor)> = fu.iter().zip(&fv).map(|((p, a), (_, b))| (*p, a.then(c, b))).collect();
        self.vector(c, 0, |p| prods.iter().find(|(q, _)| *q == p).map(|(_, m)| m.clone()))
    }

    pub fn chain_vector<C: LinCat + ?Sized>(&self, c: &C, f: &ChainMap) -> Vector {
        self.vector(c, 0, |p| Some(f.comp(c, p)))
    }

    /// `⊕_p S(x^p, y^{p+n})` for an ideal `S`.
    pub fn ideal_subspace(&self, n: i64, ideal: &dyn Fn(&Obj, &Obj) -> Subspace) -> Subspace {
        let field = self.complex.field;
        let d = self.dim(n);
        let mut vecs = Vec::new();
        for &(p, off, len) in self.blocks(n) {
            let s = ideal(&self.x.obj(p), &self.y.obj(p + n));
            assert_eq!(s.ambient(), len);
            for b in s.basis() {
                let mut v = zero_vec(field, d);
                v[off..off + len].clone_from_slice(b);
                vecs.push(v);
            }
        }
        Subspace::span(field, d, &vecs)
    }

    pub fn cycles(&self, n: i64) -> Subspace {
        self.diff(n).kernel()
    }

    pub fn boundaries(&self, n: i64) -> Subspace {
        self.diff(n - 1).column_space()
    }
}

/// Homology of Hom• over the quotient by an ideal `S`:
/// cycles `D⁻¹(S_{n+1})` modulo `Im D + S_n`.
#[derive(Clone, Debug)]
pub struct QuotientHomology {
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

impl QuotientHomology {
    pub fn dim(&self) -> usize {
        self.cycles.dim() - self.boundaries.dim()
    }
}

pub fn quotient_homology(ht: &HomTotal, n: i64, ideal: &dyn Fn(&Obj, &Obj) -> Subspace) -> QuotientHomology {
    let s_next = ht.ideal_subspace(n + 1, ideal);
    let s_here = ht.ideal_subspace(n, ideal);
    let cycles = Subspace::preimage(&ht.diff(n), &s_next);
    let boundaries = ht.boundaries(n).sum(&s_here);
    QuotientHomology { cycles, boundaries }
}

/// Chain maps `x → y` as degree-0 cycles.
pub fn chain_maps<C: LinCat + ?Sized>(c: &C, x: &Complex, y: &Complex) -> (HomTotal, Subspace) {
    let ht = hom_total_complex(c, x, y);
    let z = ht.cycles(0);
    (ht, z)
}

pub fn null_homotopic(ht: &HomTotal) -> Subspace {
    ht.boundaries(0)
}

/// Hom in the homotopy category: chain maps modulo null-homotopic ones, with
/// a fixed set of representatives and a coordinate map.
#[derive(Clone, Debug)]
pub struct HomotopyClasses {
    pub total: HomTotal,
    pub cycles: Subspace,
    pub boundaries: Subspace,
    pub reps: Vec<Vector>,
    coord: Coordinatizer,
}

impl HomotopyClasses {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class coordinates of a degree-0 cycle.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vector> {
        self.coord.coords(v).map(|c| c[..self.reps.len()].to_vec())
    }

    pub fn lift(&self, coords: &[Scalar]) -> Vector {
        crate::exactla::combine(self.total.complex.field, self.total.dim(0), coords, &self.reps)
    }
}

pub fn homotopy_classes<C: LinCat + ?Sized>(c: &C, x: &Complex, y: &Complex) -> HomotopyClasses {
    let total = hom_total_complex(c, x, y);
    let cycles = total.cycles(0);
    let boundaries = total.boundaries(0);
    let reps = cycles.quotient_basis(&boundaries).expect("boundaries are cycles");
    let mut cols = reps.clone();
    cols.extend(boundaries.basis().iter().cloned());
    let coord = Coordinatizer::new(c.field(), total.dim(0), cols).expect("independent family");
    HomotopyClasses { total, cycles, boundaries, reps, coord }
}
