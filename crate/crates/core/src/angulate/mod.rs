//! Weakly n-angulated categories: n-angles, rotation and sums, the axiom
//! and long-exact-sequence checks, the homotopy category of projectives as
//! a triangulated instance, finite tabulated instances, and derived
//! equivalences from angles whose middle terms lie in `add(M)`.

mod kbproj;
mod table;
mod theorem2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{hom_dim, post_matrix, pre_matrix, Mor, Obj, Suspended, Vector};
use crate::error::{Error, Result};
use crate::exactla::{combine, sign, Mat, Subspace};
use crate::report::{Check, Report};

pub use kbproj::{sum_complex, KbProj};
pub use table::{table_mor, TableCat, TableSpec};
pub use theorem2::{augmented_angle, theorem2_hypotheses, verify_theorem2, Theorem2Engine};

/// `X_1 → X_2 → … → X_n → ΣX_1`; `maps[k]: objs[k] → objs[k+1]` and the
/// last map lands in `Σ objs[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NAngle {
    pub objs: Vec<Obj>,
    pub maps: Vec<Mor>,
}

/// A category with a class of n-angles whose membership can be witnessed.
pub trait Angulated: Suspended {
    fn angle_size(&self) -> usize;
    fn angle_membership(&self, t: &NAngle) -> Result<Check>;
}

impl NAngle {
    pub fn new<C: Suspended + ?Sized>(c: &C, objs: Vec<Obj>, maps: Vec<Mor>) -> Result<NAngle> {
        let n = objs.len();
        if n < 2 || maps.len() != n {
            return Err(Error::Input(format!("an angle needs n ≥ 2 objects and n maps, got {} and {}", n, maps.len())));
        }
        for (k, f) in maps.iter().enumerate() {
            let tgt = if k + 1 < n { objs[k + 1].clone() } else { objs[0].shift(c, 1) };
            if f.src != objs[k] || f.tgt != tgt {
                return Err(Error::Input(format!("map {} of the angle has the wrong shape", k + 1)));
            }
            if f.v.len() != hom_dim(c, &f.src, &f.tgt) {
                return Err(Error::Input(format!("map {} of the angle has bad coordinates", k + 1)));
            }
        }
        Ok(NAngle { objs, maps })
    }

    pub fn n(&self) -> usize {
        self.objs.len()
    }

    pub fn labels<C: Suspended + ?Sized>(&self, c: &C) -> Vec<String> {
        self.objs.iter().map(|o| o.label(c)).collect()
    }
}

/// `X → X → 0 → … → 0 → ΣX`.
pub fn identity_angle<C: Suspended + ?Sized>(c: &C, x: &Obj, n: usize) -> NAngle {
    let mut objs = vec![x.clone(), x.clone()];
    objs.resize(n, Obj::zero());
    let mut maps = vec![Mor::identity(c, x)];
    for k in 1..n {
        let tgt = if k + 1 < n { objs[k + 1].clone() } else { x.shift(c, 1) };
        maps.push(Mor::zero(c, &objs[k], &tgt));
    }
    NAngle { objs, maps }
}

/// `X_2 → … → X_n → ΣX_1 → ΣX_2` with last map `(−1)^n Σf_1`.
pub fn rotate<C: Suspended + ?Sized>(c: &C, t: &NAngle) -> NAngle {
    let n = t.n();
    let mut objs = t.objs[1..].to_vec();
    objs.push(t.objs[0].shift(c, 1));
    let mut maps = t.maps[1..].to_vec();
    maps.push(t.maps[0].shift(c, 1).scale(&sign(&c.field(), n as i64)));
    NAngle { objs, maps }
}

pub fn direct_sum<C: Suspended + ?Sized>(c: &C, a: &NAngle, b: &NAngle) -> Result<NAngle> {
    if a.n() != b.n() {
        return Err(Error::Input("direct sum of angles of different lengths".into()));
    }
    let objs = a.objs.iter().zip(&b.objs).map(|(x, y)| Obj::sum(&[x, y])).collect();
    let maps = a.maps.iter().zip(&b.maps).map(|(f, g)| Mor::diag(c, &[f, g])).collect();
    NAngle::new(c, objs, maps)
}

/// Lemma clause (1): `f_i f_{i+1} = 0` for `i = 1, …, n−1`.
pub fn composites_vanish<C: Suspended + ?Sized>(c: &C, t: &NAngle) -> Check {
    let bad: Vec<String> = (0..t.n() - 1)
        .filter(|&k| !t.maps[k].then(c, &t.maps[k + 1]).is_zero())
        .map(|k| format!("f{} f{} ≠ 0", k + 1, k + 2))
        .collect();
    Check::when("consecutive composites vanish", bad.is_empty(), || bad.join(", "))
}

/// Solves for the unknown vertical maps `h_k: top_k → bottom_k` (the `None`
/// entries of `known`) of a morphism of angles. `known[0]` must be given,
/// since `Σh_1` closes the diagram.
pub fn fill<C: Suspended + ?Sized>(c: &C, top: &NAngle, bottom: &NAngle, known: &[Option<Mor>]) -> Result<Option<Vec<Mor>>> {
    let n = top.n();
    if bottom.n() != n || known.len() != n {
        return Err(Error::Input("filler data of mismatched lengths".into()));
    }
    let h0 = known[0].clone().ok_or_else(|| Error::Input("the first vertical map must be given".into()))?;
    let field = c.field();
    let mut offsets = vec![None; n];
    let mut total = 0;
    for k in 0..n {
        if known[k].is_none() {
            offsets[k] = Some(total);
            total += hom_dim(c, &top.objs[k], &bottom.objs[k]);
        }
    }
    let sh0 = h0.shift(c, 1);
    let h = |k: usize| -> Option<Mor> { if k == n { Some(sh0.clone()) } else { known[k].clone() } };
    let tgt = |k: usize| -> Obj { if k + 1 == n { bottom.objs[0].shift(c, 1) } else { bottom.objs[k + 1].clone() } };
    let mut blocks = Vec::new();
    let mut rhs = Vec::new();
    // f_k h_{k+1} − h_k g_k = 0 in Hom(top_k, bottom_{k+1})
    for k in 0..n {
        let (f, g) = (&top.maps[k], &bottom.maps[k]);
        let rows = hom_dim(c, &top.objs[k], &tgt(k));
        let mut m = Mat::zeros(field, rows, total);
        let mut r = vec![field.zero(); rows];
        match h(k + 1) {
            Some(hk1) => r = crate::exactla::sub_vec(&r, &f.then(c, &hk1).v),
            None => m.set_block(0, offsets[k + 1].unwrap(), &pre_matrix(c, f, &tgt(k))),
        }
        match h(k) {
            Some(hk) => r = crate::exactla::add_vec(&r, &hk.then(c, g).v),
            None => m.set_block(0, offsets[k].unwrap(), &post_matrix(c, &top.objs[k], g).neg()),
        }
        blocks.push(m);
        rhs.extend(r);
    }
    let m = Mat::vstack(field, total, &blocks.iter().collect::<Vec<_>>());
    let Some(sol) = m.solve(&rhs) else { return Ok(None) };
    let out = (0..n)
        .map(|k| match &known[k] {
            Some(m) => m.clone(),
            None => {
                let o = offsets[k].unwrap();
                let d = hom_dim(c, &top.objs[k], &bottom.objs[k]);
                Mor { src: top.objs[k].clone(), tgt: bottom.objs[k].clone(), v: sol[o..o + d].to_vec() }
            }
        })
        .collect();
    Ok(Some(out))
}

/// A seeded random solution `(h_1, …, h_i)` of the first `i − 1` squares.
fn random_partial<C: Suspended + ?Sized>(c: &C, top: &NAngle, bottom: &NAngle, i: usize, rng: &mut ChaCha8Rng) -> Vec<Mor> {
    let field = c.field();
    let dims: Vec<usize> = (0..i).map(|k| hom_dim(c, &top.objs[k], &bottom.objs[k])).collect();
    let total: usize = dims.iter().sum();
    let offs: Vec<usize> = dims.iter().scan(0, |s, d| { let o = *s; *s += d; Some(o) }).collect();
    let mut blocks = Vec::new();
    for k in 0..i - 1 {
        let (f, g) = (&top.maps[k], &bottom.maps[k]);
        let rows = hom_dim(c, &top.objs[k], &bottom.objs[k + 1]);
        let mut m = Mat::zeros(field, rows, total);
        m.set_block(0, offs[k + 1], &pre_matrix(c, f, &bottom.objs[k + 1]));
        m.set_block(0, offs[k], &post_matrix(c, &top.objs[k], g).neg());
        blocks.push(m);
    }
    let ker = if blocks.is_empty() {
        Subspace::full(field, total)
    } else {
        Mat::vstack(field, total, &blocks.iter().collect::<Vec<_>>()).kernel()
    };
    let coeffs: Vector = (0..ker.dim()).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
    let v = combine(field, total, &coeffs, ker.basis());
    (0..i)
        .map(|k| Mor { src: top.objs[k].clone(), tgt: bottom.objs[k].clone(), v: v[offs[k]..offs[k] + dims[k]].to_vec() })
        .collect()
}

/// Exactness of `Hom(P, −)` (covariant) or `Hom(−, P)` along the angle and
/// its shifts `Σ^k`, `|k| ≤ window`; failing positions as `(k, index)`.
pub fn hom_exactness<C: Suspended + ?Sized>(c: &C, t: &NAngle, probe: &Obj, window: i64, covariant: bool) -> Vec<(i64, usize)> {
    let n = t.n();
    let mut bad = Vec::new();
    for k in -window..=window {
        for j in 0..n {
            let out = t.maps[j].shift(c, k);
            let inc = if j > 0 { t.maps[j - 1].shift(c, k) } else { t.maps[n - 1].shift(c, k - 1) };
            let here = out.src.clone();
            let (a, b, dim) = if covariant {
                (post_matrix(c, probe, &inc), post_matrix(c, probe, &out), hom_dim(c, probe, &here))
            } else {
                (pre_matrix(c, &out, probe), pre_matrix(c, &inc, probe), hom_dim(c, &here, probe))
            };
            let zero = b.mul(&a).is_zero();
            if !zero || a.rank() + b.rank() != dim {
                bad.push((k, j + 1));
            }
        }
    }
    bad
}

/// The three clauses of the n-angle lemma on one angle.
pub fn lemma_nangle_check<C: Suspended + ?Sized>(c: &C, t: &NAngle, probes: &[Obj], window: i64, seed: u64) -> Result<Report> {
    let mut rep = Report::new();
    rep.push(composites_vanish(c, t));
    for p in probes {
        for (cov, tag) in [(true, "Hom(P,-)"), (false, "Hom(-,P)")] {
            let bad = hom_exactness(c, t, p, window, cov);
            rep.push(Check::when(format!("{tag} exact for P = {}", p.label(c)), bad.is_empty(), || {
                bad.iter().map(|(k, j)| format!("shift {k} position {j}")).collect::<Vec<_>>().join(", ")
            }));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = t.n();
    let mut bad = Vec::new();
    for i in 2..n {
        let hs = random_partial(c, t, t, i, &mut rng);
        let mut known: Vec<Option<Mor>> = hs.into_iter().map(Some).collect();
        known.resize(n, None);
        if fill(c, t, t, &known)?.is_none() {
            bad.push(i);
        }
    }
    rep.push(Check::when("extended fillers exist", bad.is_empty(), || format!("no filler from index {bad:?}")));
    rep.note(format!("window {window}, seed {seed}"));
    Ok(rep)
}

/// Axioms (1)–(3) on a sample: identity angles, sums, rotations, and fillers
/// for random commuting squares between sampled angles.
pub fn verify_weak_axioms<C: Angulated + ?Sized>(
    c: &C,
    angles: &[NAngle],
    objects: &[Obj],
    squares: usize,
    seed: u64,
) -> Result<Report> {
    let mut rep = Report::new();
    let n = c.angle_size();
    let member = |t: &NAngle, what: String| -> Result<Check> {
        let m = c.angle_membership(t)?;
        Ok(Check { name: what, pass: m.pass, witness: m.witness })
    };
    for x in objects {
        rep.push(member(&identity_angle(c, x, n), format!("axiom1: identity angle on {}", x.label(c)))?);
    }
    for (i, t) in angles.iter().enumerate() {
        rep.push(member(t, format!("sample {i} is an angle"))?);
        rep.push(member(&rotate(c, t), format!("axiom2: rotation of sample {i}"))?);
        for (j, u) in angles.iter().enumerate().skip(i) {
            rep.push(member(&direct_sum(c, t, u)?, format!("axiom1: sum of samples {i} and {j}"))?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for (i, t) in angles.iter().enumerate() {
        for (j, u) in angles.iter().enumerate() {
            let mut failed = 0;
            for _ in 0..squares {
                let mut known: Vec<Option<Mor>> = random_partial(c, t, u, 2, &mut rng).into_iter().map(Some).collect();
                known.resize(t.n(), None);
                if fill(c, t, u, &known)?.is_none() {
                    failed += 1;
                }
            }
            rep.push(Check::when(format!("axiom3: fillers from sample {i} to {j}"), failed == 0, || {
                format!("{failed} of {squares} squares have no filler")
            }));
        }
    }
    rep.note(format!("{} samples, {} objects, {squares} squares per pair, seed {seed}", angles.len(), objects.len()));
    rep.note("closure under isomorphism is assumed, not checked");
    Ok(rep)
}
