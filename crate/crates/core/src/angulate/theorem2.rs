use std::cell::Cell;

use crate::catideal::{approximation_failure, end_ring, IdealKind, RingPresentation, Side, Subcat, Subquotient};
use crate::category::{hom_dim, post_matrix, pre_matrix, AtomId, Mor, Obj, Vector};
use crate::complexes::{quotient_homology, self_orthogonality_check, hom_total_complex, ChainMap, Complex, HomTotal, Orthogonality};
use crate::derivedeq::{compare_maps, full_embedding_check, EquivCertificate, MapComparison};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar, Solver, Subspace};
use crate::report::{Check, Report};

use super::{composites_vanish, Angulated, NAngle};

/// `X → M_1 → … → M_N ⊕ M → Y ⊕ M → ΣX` from an angle
/// `X → M_1 → … → M_N → Y → ΣX` with `N = n − 2`.
pub fn augmented_angle<C: Angulated + ?Sized>(c: &C, t: &NAngle, m: &Obj) -> Result<NAngle> {
    let n = t.n();
    let nm = n - 2;
    let mut objs = t.objs.clone();
    objs[nm] = Obj::sum(&[&t.objs[nm], m]);
    objs[nm + 1] = Obj::sum(&[&t.objs[nm + 1], m]);
    let mut maps = t.maps.clone();
    let prev = &t.maps[nm - 1];
    maps[nm - 1] = Mor::row(c, &[prev, &Mor::zero(c, &prev.src, m)]);
    maps[nm] = Mor::diag(c, &[&t.maps[nm], &Mor::identity(c, m)]);
    let eta = &t.maps[nm + 1];
    maps[nm + 1] = Mor::column(c, &[eta, &Mor::zero(c, m, &eta.tgt)]);
    NAngle::new(c, objs, maps)
}

/// θ and φ for an angle satisfying the approximation hypotheses.
pub struct Theorem2Engine {
    pub angle: NAngle,
    pub augmented: NAngle,
    /// `0 → X → M_1 → … → M_N ⊕ M → 0` with `X` in degree 0.
    pub t: Complex,
    pub total: HomTotal,
    pub chain_maps: Subspace,
    pub right: Subquotient,
    pub homotopy: Subquotient,
    /// Solutions of the comparison diagram for the zero chain map.
    pub ambiguity: Subspace,
    solver: Solver,
    y_m: Obj,
}

fn counter_labels(prefix: &'static str) -> impl Fn(&[Scalar]) -> String {
    let n = Cell::new(0usize);
    move |_| {
        let k = n.get();
        n.set(k + 1);
        format!("{prefix}{k}")
    }
}

/// Hypotheses of the construction as checks: middle terms in `add(M)`, `f`
/// a left and `g` a right approximation.
pub fn theorem2_hypotheses<C: Angulated + ?Sized>(c: &C, t: &NAngle, d: &Subcat) -> Report {
    let n = t.n();
    let mut r = Report::new();
    let outside: Vec<usize> = (1..n - 1).filter(|&i| !d.contains(&t.objs[i])).collect();
    r.push(Check::when("middle terms in add(M)", outside.is_empty(), || {
        outside.iter().map(|i| format!("M{} = {}", i, t.objs[*i].label(c))).collect::<Vec<_>>().join(", ")
    }));
    let lf = approximation_failure(c, &t.maps[0], d, Side::Left);
    r.push(Check::when("f left approximation", lf.is_none(), || lf.clone().unwrap_or_default()));
    let rg = approximation_failure(c, &t.maps[n - 2], d, Side::Right);
    r.push(Check::when("g right approximation", rg.is_none(), || rg.clone().unwrap_or_default()));
    r
}

impl Theorem2Engine {
    pub fn new<C: Angulated + ?Sized>(c: &C, t: &NAngle, d: &Subcat) -> Result<Theorem2Engine> {
        let n = t.n();
        if n < 3 {
            return Err(Error::Input("the construction needs an n-angle with n ≥ 3".into()));
        }
        let hyp = theorem2_hypotheses(c, t, d);
        if let Some(f) = hyp.failures().first() {
            let who = match f.name.as_str() {
                "f left approximation" => "f",
                "g right approximation" => "g",
                _ => "middle terms",
            };
            return Err(Error::Hypothesis(format!("{who}: {} fails: {}", f.name, f.witness.clone().unwrap_or_default())));
        }
        let m = d.m.clone();
        let nm = n - 2;
        let aug = augmented_angle(c, t, &m)?;
        let t_cx = Complex::new(c, 0, aug.objs[..=nm].to_vec(), aug.maps[..nm].to_vec())?;
        let total = hom_total_complex(c, &t_cx, &t_cx);
        let chain_maps = total.cycles(0);
        let y_m = aug.objs[nm + 1].clone();
        let right = end_ring(c, &y_m, Some(IdealKind::J), d)?;
        let (gt, et) = (&aug.maps[nm], &aug.maps[nm + 1]);
        let k = hom_dim(c, &y_m, &y_m);
        let sys = Mat::vstack(c.field(), k, &[&pre_matrix(c, gt, &y_m), &post_matrix(c, &y_m, et)]);
        let ambiguity = sys.kernel();
        let solver = Solver::new(&sys);
        let ideal = |a: &Obj, b: &Obj| d.space(c, IdealKind::I, a, b);
        let qh = quotient_homology(&total, 0, &ideal);
        let unit = total.chain_vector(c, &ChainMap::identity(c, &t_cx));
        let mul = |u: &[Scalar], v: &[Scalar]| total.endo_product(c, u, v);
        let homotopy =
            RingPresentation::subquotient(c.field(), &qh.cycles, &qh.boundaries, &unit, mul, counter_labels("t"))?;
        Ok(Theorem2Engine {
            angle: t.clone(),
            augmented: aug,
            t: t_cx,
            total,
            chain_maps,
            right,
            homotopy,
            ambiguity,
            solver,
            y_m,
        })
    }

    /// A solution `u` of `g̃ u = f^N g̃` and `u η̃ = η̃ Σf^0`.
    pub fn comparison<C: Angulated + ?Sized>(&self, c: &C, f: &[Scalar]) -> Result<Vector> {
        let nm = self.t.hi();
        let comps = self.total.components(c, 0, f);
        let get = |p: i64| comps.iter().find(|(q, _)| *q == p).map(|(_, m)| m.clone());
        let (top, bottom) = (get(nm), get(0));
        let (Some(top), Some(bottom)) = (top, bottom) else {
            return Err(Error::Internal("missing chain map component".into()));
        };
        let (gt, et) = (&self.augmented.maps[nm as usize], &self.augmented.maps[nm as usize + 1]);
        let mut rhs = top.then(c, gt).v;
        rhs.extend(et.then(c, &bottom.shift(c, 1)).v);
        self.solver
            .solve(&rhs)
            .ok_or_else(|| Error::Internal("no morphism completes the comparison diagram".into()))
    }

    pub fn theta<C: Angulated + ?Sized>(&self, c: &C, f: &[Scalar]) -> Result<Vector> {
        let u = self.comparison(c, f)?;
        self.right.coords(&u).ok_or_else(|| Error::Internal("comparison outside End(Y+M)".into()))
    }

    pub fn phi(&self, f: &[Scalar]) -> Result<Vector> {
        self.homotopy.coords(f).ok_or_else(|| Error::Internal("chain map is not a cycle modulo I".into()))
    }

    pub fn y_m(&self) -> &Obj {
        &self.y_m
    }
}

fn distinct_atoms(cx: &Complex) -> Vec<AtomId> {
    let mut v: Vec<AtomId> = cx.objs.iter().flat_map(|o| o.0.iter().copied()).collect();
    v.sort();
    v.dedup();
    v
}

/// Certifies that End(X⊕M)/I and End(Y⊕M)/J are derived equivalent for an
/// angle `X → M_1 → … → M_N → Y → ΣX` with the approximation hypotheses.
pub fn verify_theorem2<C: Angulated + ?Sized>(c: &C, t: &NAngle, d: &Subcat) -> Result<EquivCertificate> {
    let engine = Theorem2Engine::new(c, t, d)?;
    let nm = t.n() - 2;
    let mut checks = theorem2_hypotheses(c, t, d);
    let member = c.angle_membership(t)?;
    checks.push(Check { name: "input is an angle".into(), ..member });
    let member = c.angle_membership(&engine.augmented)?;
    checks.push(Check { name: "augmented sequence is an angle".into(), ..member });
    checks.push(composites_vanish(c, t));
    checks.extend(self_orthogonality_check(c, &engine.t, d, Orthogonality::Left));

    let x = t.objs[0].clone();
    let x_m = Obj::sum(&[&x, &d.m]);
    let y_m = engine.y_m().clone();
    checks.push(full_embedding_check(c, &x_m, &distinct_atoms(&engine.t), d, IdealKind::I)?);
    let j = d.space(c, IdealKind::J, &y_m, &y_m);
    checks.push(Check::when("comparison unique modulo J", engine.ambiguity.is_subset(&j), || {
        format!("{} independent solutions for the zero map, J has dim {}", engine.ambiguity.dim(), j.dim())
    }));
    let left = end_ring(c, &x_m, Some(IdealKind::I), d)?;
    let left_ideal_dim = d.space(c, IdealKind::I, &x_m, &x_m).dim();
    let right_ideal_dim = j.dim();

    let unit = engine.total.chain_vector(c, &ChainMap::identity(c, &engine.t));
    let mul = |u: &[Scalar], v: &[Scalar]| engine.total.endo_product(c, u, v);
    let th = |v: &[Scalar]| engine.theta(c, v);
    let ph = |v: &[Scalar]| engine.phi(v);
    let MapComparison { checks: mc, theta, phi, ker_theta, ker_phi } =
        compare_maps(c.field(), &engine.chain_maps, &mul, &unit, &th, &engine.right.ring, &ph, &engine.homotopy.ring)?;
    checks.extend(mc);
    checks.note("generation: the terms of T lie in add(X+M) and X, M are summands of terms, recorded not re-proved");

    let provenance = vec![
        ("n".to_string(), t.n().to_string()),
        ("X".to_string(), x.label(c)),
        ("Y".to_string(), t.objs[nm + 1].label(c)),
        ("M".to_string(), d.m.label(c)),
        ("T".to_string(), format!("{:?}", engine.t.objs.iter().map(|o| o.label(c)).collect::<Vec<_>>())),
    ];
    Ok(EquivCertificate {
        theorem: "theorem2".into(),
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
