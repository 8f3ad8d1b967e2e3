use crate::catideal::{IdealKind, Subcat};
use crate::category::{LinCat, Obj};
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::report::{Check, Report};

use super::total::{hom_total_complex, homology_dims, quotient_homology};
use super::Complex;

/// Degrees (with dimensions) where homology is nonzero and not allowed.
fn bad_degrees(h: &std::collections::BTreeMap<i64, usize>, allowed: &[i64]) -> Vec<(i64, usize)> {
    h.iter().filter(|(n, d)| **d > 0 && !allowed.contains(n)).map(|(n, d)| (*n, *d)).collect()
}

fn degree_check(name: &str, bad: Vec<(i64, usize)>) -> Check {
    Check::when(name, bad.is_empty(), || {
        let parts: Vec<String> = bad.iter().map(|(n, d)| format!("H^{n} has dim {d}")).collect();
        parts.join(", ")
    })
}

fn homology<C: LinCat + ?Sized>(c: &C, x: &Complex, y: &Complex) -> std::collections::BTreeMap<i64, usize> {
    homology_dims(&hom_total_complex(c, x, y).complex).expect("Hom-total complex is a complex")
}

/// The three homological conditions on `0 → X → Q^1 → … → Q^n → Y → 0`.
pub fn check_thm1_conditions<C: LinCat + ?Sized>(c: &C, q: &Complex, d: &Subcat) -> Result<Report> {
    if q.lo != 0 || q.len() < 3 {
        return Err(Error::Input("expected 0 → X → Q^1 → … → Q^n → Y → 0 with X in degree 0 and n ≥ 1".into()));
    }
    let n = q.len() as i64 - 2;
    for i in 1..=n {
        if !d.contains(&q.obj(i)) {
            return Err(Error::Input(format!("Q^{i} is not built from summands of M")));
        }
    }
    let m = Complex::stalk(d.m.clone(), 0);
    let x = Complex::stalk(q.obj(0), 0);
    let y = Complex::stalk(q.obj(n + 1), 0);
    let mut rep = Report::new();
    rep.push(degree_check("c1: H^i(Hom(M,Q)) = 0 for i != 0", bad_degrees(&homology(c, &m, q), &[0])));
    rep.push(degree_check("c2: H^i(Hom(Q,M)) = 0 for i != -n-1", bad_degrees(&homology(c, q, &m), &[-n - 1])));
    let hx = homology(c, &x, q);
    let hy = homology(c, q, &y);
    let mut bad = Vec::new();
    if let Some(&v) = hx.get(&1).filter(|v| **v > 0) {
        bad.push(format!("H^1(Hom(X,Q)) has dim {v}"));
    }
    if let Some(&v) = hy.get(&-n).filter(|v| **v > 0) {
        bad.push(format!("H^-n(Hom(Q,Y)) has dim {v}"));
    }
    rep.push(Check::when("c3: H^1(Hom(X,Q)) = 0 = H^-n(Hom(Q,Y))", bad.is_empty(), || bad.join(", ")));
    rep.note(format!("n = {n}"));
    Ok(rep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orthogonality {
    /// Terms in `D` in positive degrees on `[0, n]`; quotients by `L` and `I`.
    Left,
    /// Terms in `D` in negative degrees on `[−n, 0]`; quotients by `R` and `J`.
    Right,
}

/// Checks the two hypotheses of the self-orthogonality lemma and then the
/// conclusion directly, whatever the hypotheses gave.
pub fn self_orthogonality_check<C: LinCat + ?Sized>(c: &C, p: &Complex, d: &Subcat, variant: Orthogonality) -> Report {
    let mut rep = Report::new();
    let m = Complex::stalk(d.m.clone(), 0);
    let n = p.len() as i64 - 1;
    let (shape_ok, allowed_m_p, allowed_p_m, kinds) = match variant {
        Orthogonality::Left => (
            p.lo == 0 && (1..=n).all(|i| d.contains(&p.obj(i))),
            vec![0, n],
            vec![-n],
            [IdealKind::L, IdealKind::I],
        ),
        Orthogonality::Right => (
            p.hi() == 0 && (-n..0).all(|i| d.contains(&p.obj(i))),
            vec![-n],
            vec![0, n],
            [IdealKind::R, IdealKind::J],
        ),
    };
    rep.push(Check::when("shape", shape_ok, || "terms outside the expected range or not in add(M)".into()));
    rep.push(degree_check("hypothesis1: Hom(M,P)", bad_degrees(&homology(c, &m, p), &allowed_m_p)));
    rep.push(degree_check("hypothesis2: Hom(P,M)", bad_degrees(&homology(c, p, &m), &allowed_p_m)));
    let ht = hom_total_complex(c, p, p);
    for kind in kinds {
        let ideal = |a: &Obj, b: &Obj| -> Subspace { d.space(c, kind, a, b) };
        let mut bad = Vec::new();
        for i in ht.lo()..=ht.hi() {
            if i == 0 {
                continue;
            }
            let h = quotient_homology(&ht, i, &ideal);
            if h.dim() > 0 {
                bad.push((i, h.dim()));
            }
        }
        rep.push(degree_check(&format!("self-orthogonal modulo {kind}"), bad));
    }
    rep
}
