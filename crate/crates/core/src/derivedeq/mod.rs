//! Derived equivalences from complexes whose inner terms lie in `add(M)`:
//! the tilting complex, the maps θ and φ, the certificate, and the
//! ν-stable pipeline.

mod certificate;
mod nu;

use std::cell::Cell;

use crate::catideal::{end_ring, IdealKind, Subcat, Subquotient};
use crate::category::{pre_matrix, AtomId, LinCat, Mor, Obj, Vector};
use crate::complexes::{
    check_thm1_conditions, hom_total_complex, homology_dims, quotient_homology, self_orthogonality_check, ChainMap,
    Complex, HomTotal, Orthogonality,
};
use crate::error::{Error, Result};
use crate::exactla::{Coordinatizer, Field, Mat, Scalar, Solver, Subspace};
use crate::report::{Check, Report};

pub use certificate::EquivCertificate;
pub(crate) use certificate::{compare_maps, MapComparison};
pub use nu::{dsplit_from_right, dsplit_report, nu_stability, nu_stable_sequence, NuSequence, DEFAULT_NU_STEPS};

/// `Q•`, the complex `P•` with `M` adjoined in the top two degrees, and its
/// truncation `T•` to degrees `[0, n]`.
#[derive(Clone, Debug)]
pub struct TiltingData {
    pub q: Complex,
    pub p: Complex,
    pub t: Complex,
    pub n: i64,
    pub m: Obj,
    pub x: Obj,
    pub y: Obj,
    /// `d̃^n: Q^n ⊕ M → Y ⊕ M`.
    pub d_top: Mor,
    pub provenance: Vec<(String, String)>,
}

fn homology_zero_except(h: &std::collections::BTreeMap<i64, usize>, allowed: &[i64]) -> bool {
    h.iter().all(|(n, d)| *d == 0 || allowed.contains(n))
}

pub fn build_tilting<C: LinCat + ?Sized>(c: &C, q: &Complex, d: &Subcat) -> Result<TiltingData> {
    let conds = check_thm1_conditions(c, q, d)?;
    if let Some(f) = conds.failures().first() {
        return Err(Error::Hypothesis(format!("{} fails: {}", f.name, f.witness.clone().unwrap_or_default())));
    }
    let n = q.len() as i64 - 2;
    let m = d.m.clone();
    let x = q.obj(0);
    let y = q.obj(n + 1);
    let qn = q.obj(n);
    let qn_m = Obj::sum(&[&qn, &m]);
    let y_m = Obj::sum(&[&y, &m]);
    let d_top = Mor::diag(c, &[&q.diff(c, n), &Mor::identity(c, &m)]);
    let prev = q.diff(c, n - 1);
    let d_prev = Mor::row(c, &[&prev, &Mor::zero(c, &prev.src, &m)]);

    let mut objs: Vec<Obj> = (0..n).map(|i| q.obj(i)).collect();
    objs.push(qn_m);
    let mut diffs: Vec<Mor> = (0..n - 1).map(|i| q.diff(c, i)).collect();
    diffs.push(d_prev);
    let t = Complex::new(c, 0, objs.clone(), diffs.clone())?;
    objs.push(y_m.clone());
    diffs.push(d_top.clone());
    let p = Complex::new(c, 0, objs, diffs)?;

    let ms = Complex::stalk(m.clone(), 0);
    let h = |a: &Complex, b: &Complex| homology_dims(&hom_total_complex(c, a, b).complex).expect("complex");
    let fact_a = homology_zero_except(&h(&ms, &p), &[0]);
    let fact_b = homology_zero_except(&h(&p, &ms), &[-n - 1]);
    let hx = h(&Complex::stalk(x.clone(), 0), &p);
    let hy = h(&p, &Complex::stalk(y_m, 0));
    let fact_c = hx.get(&1).copied().unwrap_or(0) == 0 && hy.get(&-n).copied().unwrap_or(0) == 0;
    let verdict = |b: bool| if b { "holds" } else { "fails" }.to_string();
    let provenance = vec![
        ("n".to_string(), n.to_string()),
        ("fact a: H^i(Hom(M,P)) = 0, i != 0".to_string(), verdict(fact_a)),
        ("fact b: H^i(Hom(P,M)) = 0, i != -n-1".to_string(), verdict(fact_b)),
        ("fact c: H^1(Hom(X,P)) = 0 = H^-n(Hom(P,Y+M))".to_string(), verdict(fact_c)),
    ];
    if !(fact_a && fact_b && fact_c) {
        return Err(Error::Internal("conditions hold for Q but not for P".into()));
    }
    Ok(TiltingData { q: q.clone(), p, t, n, m, x, y, d_top, provenance })
}

/// Everything needed to evaluate θ and φ repeatedly.
pub struct Theorem1Engine {
    pub data: TiltingData,
    pub total: HomTotal,
    pub chain_maps: Subspace,
    pub right: Subquotient,
    pub homotopy: Subquotient,
    solver: Solver,
}

fn counter_labels(prefix: &'static str) -> impl Fn(&[Scalar]) -> String {
    let n = Cell::new(0usize);
    move |_| {
        let k = n.get();
        n.set(k + 1);
        format!("{prefix}{k}")
    }
}

impl Theorem1Engine {
    pub fn new<C: LinCat + ?Sized>(c: &C, data: TiltingData, d: &Subcat) -> Result<Theorem1Engine> {
        let total = hom_total_complex(c, &data.t, &data.t);
        let chain_maps = total.cycles(0);
        let y_m = Obj::sum(&[&data.y, &data.m]);
        let right = end_ring(c, &y_m, Some(IdealKind::R), d)?;
        let solver = Solver::new(&pre_matrix(c, &data.d_top, &y_m));
        let ideal = |a: &Obj, b: &Obj| d.space(c, IdealKind::L, a, b);
        let qh = quotient_homology(&total, 0, &ideal);
        let unit = total.chain_vector(c, &ChainMap::identity(c, &data.t));
        let mul = |u: &[Scalar], v: &[Scalar]| total.endo_product(c, u, v);
        let homotopy = crate::catideal::RingPresentation::subquotient(
            c.field(),
            &qh.cycles,
            &qh.boundaries,
            &unit,
            mul,
            counter_labels("t"),
        )?;
        Ok(Theorem1Engine { data, total, chain_maps, right, homotopy, solver })
    }

    /// A solution `g` of `d̃^n g = f^n d̃^n`.
    pub fn lift_top<C: LinCat + ?Sized>(&self, c: &C, f: &[Scalar]) -> Result<Vector> {
        let n = self.data.n;
        let fnn = self
            .total
            .components(c, 0, f)
            .into_iter()
            .find(|(p, _)| *p == n)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Internal("missing top component".into()))?;
        let rhs = fnn.then(c, &self.data.d_top);
        self.solver
            .solve(&rhs.v)
            .ok_or_else(|| Error::Internal("no g with d̃ g = f d̃: fact c) is violated".into()))
    }

    pub fn theta<C: LinCat + ?Sized>(&self, c: &C, f: &[Scalar]) -> Result<Vector> {
        let g = self.lift_top(c, f)?;
        self.right.coords(&g).ok_or_else(|| Error::Internal("lift outside End(Y+M)".into()))
    }

    pub fn phi(&self, f: &[Scalar]) -> Result<Vector> {
        self.homotopy.coords(f).ok_or_else(|| Error::Internal("chain map is not a cycle modulo L".into()))
    }
}

/// θ on a single chain map of `T•`: class of `g` in End(Y⊕M)/R.
pub fn theta<C: LinCat + ?Sized>(c: &C, t: &TiltingData, d: &Subcat, f: &ChainMap) -> Result<Vector> {
    let e = Theorem1Engine::new(c, t.clone(), d)?;
    let v = e.total.chain_vector(c, f);
    e.theta(c, &v)
}

/// φ on a single chain map of `T•`: class in End of `T•` over `C/L`.
pub fn phi<C: LinCat + ?Sized>(c: &C, t: &TiltingData, d: &Subcat, f: &ChainMap) -> Result<Vector> {
    let e = Theorem1Engine::new(c, t.clone(), d)?;
    let v = e.total.chain_vector(c, f);
    e.phi(&v)
}

/// `full / ideal` with coordinates on a fixed set of representatives.
struct Quot {
    reps: Vec<Vector>,
    coord: Coordinatizer,
}

impl Quot {
    fn new(field: Field, ideal: &Subspace) -> Result<Quot> {
        let n = ideal.ambient();
        let reps = Subspace::full(field, n).quotient_basis(ideal)?;
        let mut cols = reps.clone();
        cols.extend(ideal.basis().iter().cloned());
        Ok(Quot { coord: Coordinatizer::new(field, n, cols)?, reps })
    }

    fn coords(&self, v: &[Scalar]) -> Vector {
        self.coord.coords_unchecked(v)[..self.reps.len()].to_vec()
    }
}

/// Checks that `Hom(V, −)` over `C/S` is full on the given atoms by comparing
/// `dim Hom_{C/S}(a, b)` with the dimension of `End_{C/S}(V)`-linear maps
/// `Hom_{C/S}(V, a) → Hom_{C/S}(V, b)`.
pub fn full_embedding_check<C: LinCat + ?Sized>(
    c: &C,
    v: &Obj,
    atoms: &[AtomId],
    d: &Subcat,
    kind: IdealKind,
) -> Result<Check> {
    let field = c.field();
    let e = Quot::new(field, &d.space(c, kind, v, v))?;
    let mut mods = Vec::new();
    for &a in atoms {
        let ao = Obj::atom(a);
        let q = Quot::new(field, &d.space(c, kind, v, &ao))?;
        let acts: Vec<Mat> = e
            .reps
            .iter()
            .map(|er| {
                let em = Mor { src: v.clone(), tgt: v.clone(), v: er.clone() };
                let cols: Vec<Vector> = q
                    .reps
                    .iter()
                    .map(|x| q.coords(&em.then(c, &Mor { src: v.clone(), tgt: ao.clone(), v: x.clone() }).v))
                    .collect();
                Mat::from_columns(field, q.reps.len(), &cols)
            })
            .collect();
        mods.push(acts);
    }
    let mut bad = Vec::new();
    for (ia, &a) in atoms.iter().enumerate() {
        for (ib, &b) in atoms.iter().enumerate() {
            let quot_dim = Quot::new(field, &d.space(c, kind, &Obj::atom(a), &Obj::atom(b)))?.reps.len();
            let na = mods[ia].first().map_or(0, |m| m.rows());
            let nb = mods[ib].first().map_or(0, |m| m.rows());
            // vec(Φ) ↦ (Φ A_e − B_e Φ) over all e
            let mut rows = Vec::new();
            for (ae, be) in mods[ia].iter().zip(&mods[ib]) {
                for i in 0..nb {
                    for j in 0..na {
                        let mut row = vec![field.zero(); nb * na];
                        for s in 0..na {
                            row[i * na + s] = row[i * na + s].add(ae.get(s, j));
                        }
                        for r in 0..nb {
                            row[r * na + j] = row[r * na + j].sub(be.get(i, r));
                        }
                        rows.push(row);
                    }
                }
            }
            let hom_e = if rows.is_empty() {
                nb * na
            } else {
                Mat::from_rows(field, rows.len(), nb * na, rows)?.kernel().dim()
            };
            if hom_e != quot_dim {
                bad.push(format!("{}→{}: {} vs {}", c.atom_label(a), c.atom_label(b), quot_dim, hom_e));
            }
        }
    }
    Ok(Check::when(format!("full embedding of Hom(V,-) modulo {kind}"), bad.is_empty(), || bad.join(", ")))
}

fn distinct_atoms(cx: &Complex) -> Vec<AtomId> {
    let mut v: Vec<AtomId> = cx.objs.iter().flat_map(|o| o.0.iter().copied()).collect();
    v.sort();
    v.dedup();
    v
}

/// Runs the whole verification for `0 → X → Q^1 → … → Q^n → Y → 0`.
pub fn verify_theorem1<C: LinCat + ?Sized>(c: &C, q: &Complex, d: &Subcat) -> Result<EquivCertificate> {
    let data = build_tilting(c, q, d)?;
    let mut checks = check_thm1_conditions(c, q, d)?;
    let so = self_orthogonality_check(c, &data.t, d, Orthogonality::Left);
    checks.extend(so);

    let x_m = Obj::sum(&[&data.x, &data.m]);
    let y_m = Obj::sum(&[&data.y, &data.m]);
    checks.push(full_embedding_check(c, &x_m, &distinct_atoms(&data.t), d, IdealKind::L)?);
    let left = end_ring(c, &x_m, Some(IdealKind::L), d)?;
    let left_ideal_dim = d.space(c, IdealKind::L, &x_m, &x_m).dim();
    let right_ideal_dim = d.space(c, IdealKind::R, &y_m, &y_m).dim();

    let engine = Theorem1Engine::new(c, data.clone(), d)?;
    let unit = engine.total.chain_vector(c, &ChainMap::identity(c, &data.t));
    let mul = |u: &[Scalar], v: &[Scalar]| engine.total.endo_product(c, u, v);
    let th = |v: &[Scalar]| engine.theta(c, v);
    let ph = |v: &[Scalar]| engine.phi(v);
    let cmp = compare_maps(
        c.field(),
        &engine.chain_maps,
        &mul,
        &unit,
        &th,
        &engine.right.ring,
        &ph,
        &engine.homotopy.ring,
    )?;
    let MapComparison { checks: mc, theta, phi, ker_theta, ker_phi } = cmp;
    checks.extend(mc);
    checks.note("generation: the terms of T lie in add(X+M) and X, M are summands of terms, recorded not re-proved");

    let mut provenance = data.provenance.clone();
    provenance.push(("X".into(), data.x.label(c)));
    provenance.push(("Y".into(), data.y.label(c)));
    provenance.push(("M".into(), data.m.label(c)));
    provenance.push(("T".into(), format!("{:?}", data.t.objs.iter().map(|o| o.label(c)).collect::<Vec<_>>())));

    Ok(EquivCertificate {
        theorem: "theorem1".into(),
        checks,
        left_ring: left.ring,
        right_ring: engine.right.ring.clone(),
        homotopy_ring: engine.homotopy.ring.clone(),
        left_ideal_dim,
        right_ideal_dim,
        chain_dim: engine.chain_maps.dim(),
        theta,
        phi,
        ker_theta,
        ker_phi,
        provenance,
    })
}

/// The ring-theoretic conclusion is also visible in dimensions.
pub fn certificate_dims(cert: &EquivCertificate) -> Report {
    let mut r = Report::new();
    let kt = cert.ker_theta.len();
    r.push(Check::when("dim End(T) - dim Ker theta = dim target", cert.chain_dim - kt == cert.right_ring.dim(), || {
        format!("{} - {} vs {}", cert.chain_dim, kt, cert.right_ring.dim())
    }));
    r
}

#[cfg(test)]
mod tests;
