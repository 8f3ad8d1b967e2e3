//! Bounded cochain complexes over a linear category, the Hom-total complex,
//! homology (also over quotient categories), and the hypothesis checks used
//! by the derived-equivalence engines.
//!
//! Sign conventions: the degree-`n` term of Hom•(x, y) is `⊕_p Hom(x^p, y^{p+n})`
//! and `(D f)_p = f_p·d_y^{p+n} − (−1)^n d_x^p·f_{p+1}`. The shift `y[1]` has
//! `y[1]^i = y^{i+1}` and differential `−d_y`.

mod checks;
mod total;

use std::fmt;

use crate::category::{hom_dim, LinCat, Mor, Obj};
use crate::error::{Error, Result};
use crate::exactla::sign;

pub use checks::{check_thm1_conditions, self_orthogonality_check, Orthogonality};
pub use total::{
    chain_maps, hom_total_complex, homology_dims, homotopy_classes, null_homotopic, quotient_homology, HomTotal,
    HomotopyClasses, QuotientHomology, VectComplex,
};

#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    pub lo: i64,
    pub objs: Vec<Obj>,
    /// `diffs[k]: objs[k] → objs[k+1]`.
    pub diffs: Vec<Mor>,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex(lo={}, objs={:?})", self.lo, self.objs.iter().map(|o| &o.0).collect::<Vec<_>>())
    }
}

impl Complex {
    /// Validates shapes and `d^i d^{i+1} = 0`.
    pub fn new<C: LinCat + ?Sized>(c: &C, lo: i64, objs: Vec<Obj>, diffs: Vec<Mor>) -> Result<Complex> {
        if objs.is_empty() {
            return Err(Error::Input("complex with no terms".into()));
        }
        if diffs.len() + 1 != objs.len() {
            return Err(Error::Input(format!("{} terms need {} differentials", objs.len(), objs.len() - 1)));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.src != objs[k] || d.tgt != objs[k + 1] {
                return Err(Error::Input(format!("differential in degree {} has the wrong shape", lo + k as i64)));
            }
            if d.v.len() != hom_dim(c, &d.src, &d.tgt) {
                return Err(Error::Input(format!("differential in degree {} has bad coordinates", lo + k as i64)));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k].then(c, &diffs[k + 1]).is_zero() {
                return Err(Error::Input(format!("d^{0} d^{1} ≠ 0 (degrees {0}, {1})", lo + k as i64, lo + k as i64 + 1)));
            }
        }
        Ok(Complex { lo, objs, diffs })
    }

    pub fn stalk(o: Obj, degree: i64) -> Complex {
        Complex { lo: degree, objs: vec![o], diffs: Vec::new() }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.objs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.objs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objs.iter().all(Obj::is_empty)
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn obj(&self, p: i64) -> Obj {
        if p < self.lo || p > self.hi() {
            Obj::zero()
        } else {
            self.objs[(p - self.lo) as usize].clone()
        }
    }

    /// `d^p: x^p → x^{p+1}`, zero outside the stored range.
    pub fn diff<C: LinCat + ?Sized>(&self, c: &C, p: i64) -> Mor {
        if p >= self.lo && p < self.hi() {
            self.diffs[(p - self.lo) as usize].clone()
        } else {
            Mor::zero(c, &self.obj(p), &self.obj(p + 1))
        }
    }

    /// `x[k]`: terms `x^{i+k}` in degree `i`, differentials times `(−1)^k`.
    pub fn shift<C: LinCat + ?Sized>(&self, c: &C, k: i64) -> Complex {
        let s = sign(&c.field(), k);
        Complex { lo: self.lo - k, objs: self.objs.clone(), diffs: self.diffs.iter().map(|d| d.scale(&s)).collect() }
    }

    pub fn total_atoms(&self) -> usize {
        self.objs.iter().map(Obj::len).sum()
    }
}

/// Degreewise morphisms `f^p: src^p → tgt^p` for `p` in the source range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub src: Complex,
    pub tgt: Complex,
    pub comps: Vec<Mor>,
}

impl ChainMap {
    pub fn new<C: LinCat + ?Sized>(c: &C, src: &Complex, tgt: &Complex, comps: Vec<Mor>) -> Result<ChainMap> {
        if comps.len() != src.len() {
            return Err(Error::Input("chain map needs one component per source degree".into()));
        }
        for (k, p) in src.degrees().enumerate() {
            if comps[k].src != src.obj(p) || comps[k].tgt != tgt.obj(p) {
                return Err(Error::Input(format!("chain map component in degree {p} has the wrong shape")));
            }
        }
        let f = ChainMap { src: src.clone(), tgt: tgt.clone(), comps };
        if let Some(p) = f.failing_degree(c) {
            return Err(Error::Input(format!("not a chain map in degree {p}")));
        }
        Ok(f)
    }

    pub fn identity<C: LinCat + ?Sized>(c: &C, x: &Complex) -> ChainMap {
        ChainMap { src: x.clone(), tgt: x.clone(), comps: x.objs.iter().map(|o| Mor::identity(c, o)).collect() }
    }

    pub fn comp<C: LinCat + ?Sized>(&self, c: &C, p: i64) -> Mor {
        if p < self.src.lo || p > self.src.hi() {
            Mor::zero(c, &self.src.obj(p), &self.tgt.obj(p))
        } else {
            self.comps[(p - self.src.lo) as usize].clone()
        }
    }

    /// First degree `p` with `f^p d_tgt^p ≠ d_src^p f^{p+1}`.
    pub fn failing_degree<C: LinCat + ?Sized>(&self, c: &C) -> Option<i64> {
        let lo = self.src.lo.min(self.tgt.lo) - 1;
        let hi = self.src.hi().max(self.tgt.hi());
        (lo..=hi).find(|&p| {
            let a = self.comp(c, p).then(c, &self.tgt.diff(c, p));
            let b = self.src.diff(c, p).then(c, &self.comp(c, p + 1));
            a != b
        })
    }

    pub fn then<C: LinCat + ?Sized>(&self, c: &C, g: &ChainMap) -> ChainMap {
        let comps = self.src.degrees().map(|p| self.comp(c, p).then(c, &g.comp(c, p))).collect();
        ChainMap { src: self.src.clone(), tgt: g.tgt.clone(), comps }
    }
}

#[cfg(test)]
mod tests;
