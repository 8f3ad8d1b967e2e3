use std::sync::Arc;

use crate::algebra::{find_iso, is_projective, kernel_module, nakayama_projective, IsoOutcome, ModuleRep};
use crate::catideal::{approximation_failure, Side, Subcat};
use crate::category::{LinCat, ModCat, Mor, Obj};
use crate::complexes::{hom_total_complex, homology_dims, Complex};
use crate::error::{Error, Result};
use crate::report::{Check, Report};

pub const DEFAULT_NU_STEPS: usize = 16;

/// `0 → X → P_n → … → P_0 → Y → 0` with `X` in degree 0.
#[derive(Clone, Debug)]
pub struct NuSequence {
    pub complex: Complex,
    pub x: Obj,
    pub steps: usize,
    pub report: Report,
}

/// Checks `ν(P) ≅ P` by explicit isomorphism search.
pub fn nu_stability(c: &ModCat, p: &Obj, seed: u64) -> Result<Check> {
    let pm = c.realize(p);
    if !is_projective(&pm)? {
        return Err(Error::Hypothesis("P is not projective".into()));
    }
    let nu = Arc::new(nakayama_projective(&pm)?);
    Ok(match find_iso(&nu, &pm, seed)? {
        IsoOutcome::Iso(_) => Check::ok("nu(P) isomorphic to P"),
        IsoOutcome::NotIsomorphic(w) => Check::fail("nu(P) isomorphic to P", w),
        IsoOutcome::Undecided(w) => Check::fail("nu(P) isomorphic to P", format!("undecided: {w}")),
    })
}

/// Right approximation `P' → x` built from Hom basis maps, with redundant
/// summands removed one at a time while the approximation property holds.
pub fn pruned_right_approximation(c: &ModCat, x: &Obj, d: &Subcat) -> Mor {
    let mut parts: Vec<Mor> = Vec::new();
    for &m in d.generators() {
        parts.extend(Mor::basis_all(c, &Obj::atom(m), x));
    }
    let build = |ps: &[Mor]| -> Mor {
        if ps.is_empty() {
            Mor::zero(c, &Obj::zero(), x)
        } else {
            let refs: Vec<&Mor> = ps.iter().collect();
            Mor::column(c, &refs)
        }
    };
    let mut k = parts.len();
    while k > 0 {
        k -= 1;
        let mut trial = parts.clone();
        trial.remove(k);
        if approximation_failure(c, &build(&trial), d, Side::Right).is_none() {
            parts = trial;
        }
    }
    build(&parts)
}

/// Kernel of a morphism as a new atom (or the zero object) with its inclusion.
fn kernel(c: &ModCat, f: &Mor) -> Result<(Obj, Mor)> {
    let (k, inc) = kernel_module(&c.realize_mor(f))?;
    if k.is_zero() {
        return Ok((Obj::zero(), Mor::zero(c, &Obj::zero(), &f.src)));
    }
    let ko = Obj::atom(c.atom(k)?);
    let inc = c.mor_from_map(&ko, &f.src, &inc)?;
    Ok((ko, inc))
}

fn all_vanish(h: &std::collections::BTreeMap<i64, usize>) -> Option<String> {
    let bad: Vec<String> = h.iter().filter(|(_, d)| **d > 0).map(|(n, d)| format!("H^{n} = {d}")).collect();
    if bad.is_empty() {
        None
    } else {
        Some(bad.join(", "))
    }
}

/// Builds the sequence of the ν-stable construction from a ν-stable
/// projective `p` and a module `y` with an add(p)-presentation. With
/// `steps = None` it continues until the kernel vanishes or
/// [`DEFAULT_NU_STEPS`] approximations have been taken.
pub fn nu_stable_sequence(c: &ModCat, p: &Obj, y: Arc<ModuleRep>, steps: Option<usize>, seed: u64) -> Result<NuSequence> {
    let field = c.field();
    let mut report = Report::new();
    let nu = nu_stability(c, p, seed)?;
    if !nu.pass {
        return Err(Error::Hypothesis(format!("nu-stability fails: {}", nu.witness.unwrap_or_default())));
    }
    report.push(nu);
    let d = Subcat::new(p.clone());
    let yo = if y.is_zero() { Obj::zero() } else { Obj::atom(c.atom(y)?) };

    let f0 = pruned_right_approximation(c, &yo, &d);
    if !c.realize_mor(&f0).is_surjective() {
        return Err(Error::Hypothesis("Y has no add(P)-presentation: P_0 → Y is not surjective".into()));
    }
    let (mut k, mut inc) = kernel(c, &f0)?;
    // maps P_i → P_{i−1}, starting with f_1
    let mut fs: Vec<Mor> = Vec::new();
    let mut ps: Vec<Obj> = vec![f0.src.clone()];
    let bound = steps.unwrap_or(DEFAULT_NU_STEPS);
    let mut i = 0;
    while i < bound {
        i += 1;
        let a = pruned_right_approximation(c, &k, &d);
        if i == 1 && !c.realize_mor(&a).is_surjective() {
            return Err(Error::Hypothesis("Y has no add(P)-presentation: P_1 → Ker f_0 is not surjective".into()));
        }
        let fi = a.then(c, &inc);
        let (k2, inc2) = kernel(c, &fi)?;
        ps.push(fi.src.clone());
        fs.push(fi);
        k = k2;
        inc = inc2;
        if steps.is_none() && k.is_empty() {
            break;
        }
    }
    let n = ps.len() - 1;
    // degrees: X, P_n, …, P_0, Y
    let mut objs = vec![k.clone()];
    objs.extend(ps.iter().rev().cloned());
    objs.push(yo);
    let mut diffs = vec![inc];
    diffs.extend(fs.into_iter().rev());
    diffs.push(f0);
    let complex = Complex::new(c, 0, objs, diffs)?;

    let ps_stalk = Complex::stalk(p.clone(), 0);
    let h1 = homology_dims(&hom_total_complex(c, &ps_stalk, &complex).complex)?;
    let w1 = all_vanish(&h1);
    report.push(Check::when("H^i(Hom(P,Q)) = 0 for all i", w1.is_none(), || w1.clone().unwrap_or_default()));
    let h2 = homology_dims(&hom_total_complex(c, &complex, &ps_stalk).complex)?;
    let w2 = all_vanish(&h2);
    report.push(Check::when("H^i(Hom(Q,P)) = 0 for all i", w2.is_none(), || w2.clone().unwrap_or_default()));
    report.note(format!("n = {n} approximation steps after P_0, field {field:?}"));
    Ok(NuSequence { complex, x: k, steps: n, report })
}

/// `0 → X → M' → Y → 0` from a pruned right approximation of `y` and its kernel.
pub fn dsplit_from_right(c: &ModCat, y: &Obj, d: &Subcat) -> Result<Complex> {
    let g = pruned_right_approximation(c, y, d);
    let (x, f) = kernel(c, &g)?;
    Complex::new(c, 0, vec![x, g.src.clone(), y.clone()], vec![f, g])
}

/// The defining properties of a D-split sequence `X → M' → Y` in degrees 0, 1, 2.
pub fn dsplit_report(c: &ModCat, q: &Complex, d: &Subcat) -> Report {
    let mut r = Report::new();
    let (f, g) = (q.diff(c, 0), q.diff(c, 1));
    let fm = c.realize_mor(&f);
    let gm = c.realize_mor(&g);
    r.push(Check::when("middle term in D", d.contains(&q.obj(1)), || q.obj(1).label(c)));
    r.push(Check::when("f injective", fm.is_injective(), String::new));
    r.push(Check::when("g surjective", gm.is_surjective(), String::new));
    let exact = {
        let composite_zero = f.then(c, &g).is_zero();
        let rank_f: usize = fm.mats.iter().map(|m| m.rank()).sum();
        let ker_g: usize = gm.mats.iter().map(|m| m.cols() - m.rank()).sum();
        composite_zero && rank_f == ker_g
    };
    r.push(Check::when("exact in the middle", exact, String::new));
    let lf = approximation_failure(c, &f, d, Side::Left);
    r.push(Check::when("f left approximation", lf.is_none(), || lf.clone().unwrap_or_default()));
    let rg = approximation_failure(c, &g, d, Side::Right);
    r.push(Check::when("g right approximation", rg.is_none(), || rg.clone().unwrap_or_default()));
    r
}
