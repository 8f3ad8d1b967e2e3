#![allow(dead_code)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tiltkit::algebra::{injective, projective, simple, Algebra};
use tiltkit::category::{hom_dim, pre_matrix, AtomId, LinCat, ModCat, Mor, Obj};
use tiltkit::complexes::Complex;
use tiltkit::examples::{a2, a3, nakayama4};
use tiltkit::exactla::{Field, Mat, Scalar, Subspace};

pub fn f5() -> Field {
    Field::prime(5).unwrap()
}

pub fn algebra(which: usize, field: Field) -> Arc<Algebra> {
    match which % 4 {
        0 => a2(field),
        1 => a3(field, false),
        2 => a3(field, true),
        _ => nakayama4(field),
    }
}

/// A module category with projectives, simples and injectives registered.
pub struct Zoo {
    pub c: ModCat,
    pub atoms: Vec<AtomId>,
    pub projectives: Vec<AtomId>,
}

pub fn zoo(alg: Arc<Algebra>) -> Zoo {
    let c = ModCat::new(alg.clone());
    let mut atoms = Vec::new();
    let mut projectives = Vec::new();
    for v in 0..alg.vertex_count() {
        let p = c.atom(projective(&alg, v).unwrap()).unwrap();
        projectives.push(p);
        atoms.push(p);
        atoms.push(c.atom(simple(&alg, v).unwrap()).unwrap());
        atoms.push(c.atom(injective(&alg, v).unwrap()).unwrap());
    }
    atoms.sort();
    atoms.dedup();
    Zoo { c, atoms, projectives }
}

impl Zoo {
    /// A sum of atoms picked by index, keeping total dimension at most `cap`.
    pub fn pick(&self, idx: &[usize], cap: usize) -> Obj {
        let mut out = Vec::new();
        let mut dim = 0;
        for &i in idx {
            let a = self.atoms[i % self.atoms.len()];
            let d = self.c.module(a).total_dim();
            if dim + d <= cap {
                dim += d;
                out.push(a);
            }
        }
        Obj(out)
    }

    pub fn pick_nonzero(&self, idx: &[usize], cap: usize) -> Obj {
        let o = self.pick(idx, cap);
        if o.is_empty() { Obj::atom(self.atoms[idx[0] % self.atoms.len()]) } else { o }
    }
}

fn random_in<C: LinCat>(c: &C, s: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut v = vec![c.field().zero(); s.ambient()];
    for b in s.basis() {
        let t = c.field().random(rng);
        for (x, y) in v.iter_mut().zip(b) {
            x.add_mul(&t, y);
        }
    }
    v
}

/// A random complex on the given terms: each differential is drawn from the
/// maps killed by the previous one.
pub fn random_complex<C: LinCat>(c: &C, lo: i64, objs: Vec<Obj>, seed: u64) -> Complex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diffs: Vec<Mor> = Vec::new();
    for i in 0..objs.len().saturating_sub(1) {
        let (a, b) = (&objs[i], &objs[i + 1]);
        let allowed = match diffs.last() {
            Some(prev) => pre_matrix(c, prev, b).kernel(),
            None => Subspace::full(c.field(), hom_dim(c, a, b)),
        };
        // Occasionally force a zero differential.
        let v = if rng.gen_ratio(1, 6) { vec![c.field().zero(); allowed.ambient()] } else { random_in(c, &allowed, &mut rng) };
        diffs.push(Mor::new(c, a.clone(), b.clone(), v));
    }
    Complex::new(c, lo, objs, diffs).expect("differentials square to zero")
}

fn block_offsets(dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for d in dims {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// dim of chain maps x → z modulo null-homotopic ones, by a direct solve
/// over degreewise components.
pub fn homotopy_oracle<C: LinCat>(c: &C, x: &Complex, z: &Complex) -> usize {
    let field = c.field();
    let degs: Vec<i64> = (x.lo - 1..=x.hi() + 1).collect();
    let fdims: Vec<usize> = degs.iter().map(|&p| hom_dim(c, &x.obj(p), &z.obj(p))).collect();
    let cdims: Vec<usize> = degs.iter().map(|&p| hom_dim(c, &x.obj(p), &z.obj(p + 1))).collect();
    let (fo, co) = (block_offsets(&fdims), block_offsets(&cdims));
    let (nf, nc) = (*fo.last().unwrap(), *co.last().unwrap());

    let mut cols = Vec::new();
    for (i, &p) in degs.iter().enumerate() {
        for f in Mor::basis_all(c, &x.obj(p), &z.obj(p)) {
            let mut col = vec![field.zero(); nc];
            if i > 0 {
                let v = x.diff(c, p - 1).then(c, &f).v;
                col[co[i - 1]..co[i]].clone_from_slice(&v);
            }
            let w = f.then(c, &z.diff(c, p)).neg().v;
            for (k, s) in w.into_iter().enumerate() {
                col[co[i] + k] = col[co[i] + k].add(&s);
            }
            cols.push(col);
        }
    }
    let cycles = Mat::from_columns(field, nc, &cols).kernel();

    let mut bcols = Vec::new();
    for (i, &p) in degs.iter().enumerate() {
        for h in Mor::basis_all(c, &x.obj(p), &z.obj(p - 1)) {
            let mut col = vec![field.zero(); nf];
            if i > 0 {
                let v = x.diff(c, p - 1).then(c, &h).v;
                col[fo[i - 1]..fo[i]].clone_from_slice(&v);
            }
            let w = h.then(c, &z.diff(c, p - 1)).v;
            for (k, s) in w.into_iter().enumerate() {
                col[fo[i] + k] = col[fo[i] + k].add(&s);
            }
            bcols.push(col);
        }
    }
    let bounds = Subspace::span(field, nf, &bcols);
    assert!(bounds.is_subset(&cycles), "null-homotopic maps are chain maps");
    cycles.dim() - bounds.dim()
}
