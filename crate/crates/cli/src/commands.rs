use std::collections::BTreeSet;
use std::time::Instant;

use tiltkit::algebra::loewy_label;
use tiltkit::angulate::{KbProj, NAngle};
use tiltkit::catideal::{
    approximation, approximation_failure, end_ring, lemma_ann_verify, IdealKind, Side, Subcat,
};
use tiltkit::category::{hom_dim, LinCat, ModCat, Mor, Obj};
use tiltkit::complexes::check_thm1_conditions;
use tiltkit::derivedeq::{certificate_dims, nu_stable_sequence, verify_theorem1, EquivCertificate};
use tiltkit::exactla::Field;
use tiltkit::orbit::{
    admissibility, check_functor, corollary_orbit_verify, ideals_ij, yoneda_algebra, Admissibility, AdmissibleSet,
    OrbitCat, ShiftAuto, StrictAuto, Twist,
};
use tiltkit::report::{fmt_vec, Check};

use crate::doc::{builtin, load, split_sum, Session};
use crate::report::{lits, ring_doc, ReportDocument};
use crate::{CliError, Command, Flags, OrbitArgs, SideArg, TriangleArgs};

const DEFAULT_WINDOW: i64 = 3;

fn parse_ints(text: &str) -> Result<Vec<i64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| CliError::Parse(format!("`{s}` is not an integer"))))
        .collect()
}

fn field_flag(flags: &Flags) -> Result<Option<Field>, CliError> {
    flags.field.as_deref().map(|f| f.parse::<Field>().map_err(CliError::from)).transpose()
}

fn session(flags: &Flags) -> Result<Session, CliError> {
    let name = flags.doc.as_deref().ok_or_else(|| CliError::Parse("this command needs --doc".into()))?;
    Session::new(load(name)?, field_flag(flags)?)
}

/// A failing `hypotheses` check instead of an error.
fn hypothesis<T>(rep: &mut ReportDocument, r: tiltkit::Result<T>) -> Result<Option<T>, CliError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(tiltkit::Error::Hypothesis(m)) => {
            rep.check(&Check::fail("hypotheses", m));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn complex_labels<C: LinCat + ?Sized>(c: &C, objs: &[Obj]) -> String {
    objs.iter().map(|o| o.label(c)).collect::<Vec<_>>().join(" -> ")
}

/// Objects of the homotopy category: `name` or `name[k]` (k-fold shift),
/// joined by `+`. Names are document complexes or modules (as stalks in degree 0).
fn kb_obj(s: &Session, kb: &KbProj, expr: &str) -> Result<Obj, CliError> {
    let mut parts = Vec::new();
    for term in split_sum(expr) {
        let (name, k) = match term.strip_suffix(']').and_then(|t| t.split_once('[')) {
            Some((n, k)) => (n.trim(), k.trim().parse::<i64>().map_err(|_| CliError::Parse(format!("bad shift in `{term}`")))?),
            None => (term, 0),
        };
        let o = match s.complexes.get(name) {
            Some(cx) => Obj::atom(kb.atom(cx.clone())?),
            None => {
                let base = s.obj(name)?;
                if base.is_empty() {
                    Obj::zero()
                } else {
                    Obj(base.atoms().iter().map(|&a| kb.stalk(&Obj::atom(a), 0)).collect::<tiltkit::Result<_>>()?)
                }
            }
        };
        parts.push(o.shift(kb, k));
    }
    let refs: Vec<&Obj> = parts.iter().collect();
    Ok(Obj::sum(&refs))
}

fn base_map<C: LinCat + ?Sized>(c: &C, src: &Obj, tgt: &Obj, coeffs: Option<&str>) -> Result<Mor, CliError> {
    let n = hom_dim(c, src, tgt);
    match coeffs {
        None if n == 0 => Err(CliError::Parse("Hom between the given objects is zero; pass --coeffs".into())),
        None => Ok(Mor::basis(c, src, tgt, 0)),
        Some(text) => {
            let f = c.field();
            let v = text
                .split(',')
                .map(|x| f.parse(x))
                .collect::<tiltkit::Result<Vec<_>>>()?;
            if v.len() != n {
                return Err(CliError::Parse(format!("--coeffs has {} entries, Hom has dimension {n}", v.len())));
            }
            Ok(Mor::new(c, src.clone(), tgt.clone(), v))
        }
    }
}

fn phi_of(flags: &Flags, o: &OrbitArgs) -> Result<AdmissibleSet, CliError> {
    match (&o.set, o.multiples) {
        (Some(text), _) => Ok(AdmissibleSet::new(parse_ints(text)?)?),
        (None, Some(m)) => Ok(AdmissibleSet::multiples(m, flags.window.unwrap_or(DEFAULT_WINDOW))),
        (None, None) => Ok(AdmissibleSet::zero()),
    }
}

fn yoneda_report<C: LinCat + ?Sized, F: StrictAuto<C>>(
    rep: &mut ReportDocument,
    c: &C,
    f: F,
    phi: AdmissibleSet,
    x: &Obj,
) -> Result<(), CliError> {
    let degrees: Vec<i64> = phi.elems().collect();
    rep.report(&check_functor(c, &f, x.atoms(), &degrees));
    rep.value("phi", phi.describe());
    rep.value("functor", f.name());
    let oc = OrbitCat::new(c, f, phi);
    let ring = yoneda_algebra(&oc, x)?;
    rep.check(&Check::when("ring axioms", ring.check_axioms().is_ok(), || "structure constants".into()));
    rep.dim("yoneda algebra", ring.dim());
    for i in degrees {
        let fx = tiltkit::orbit::apply_obj(c, &oc.functor, x, i);
        rep.dim(&format!("degree {i}"), hom_dim(c, x, &fx));
    }
    rep.payload.rings.insert("yoneda".into(), ring_doc(&ring));
    Ok(())
}

fn orbit_verify_report<F: StrictAuto<KbProj>>(
    rep: &mut ReportDocument,
    kb: &KbProj,
    f: F,
    phi: AdmissibleSet,
    t: &NAngle,
    m: &Obj,
) -> Result<(), CliError> {
    rep.value("phi", phi.describe());
    let oc = OrbitCat::new(kb, f, phi);
    let ij = ideals_ij(&oc, t, m)?;
    rep.dim("I", ij.i.dim());
    rep.dim("J", ij.j.dim());
    rep.dim("I_D", ij.i_d.dim());
    rep.dim("J_D", ij.j_d.dim());
    rep.flag("hypotheses for I", ij.hypotheses_i);
    rep.flag("hypotheses for J", ij.hypotheses_j);
    // the certificate repeats the ideal checks
    if ij.hypotheses_i && ij.hypotheses_j {
        if let Some(cert) = hypothesis(rep, corollary_orbit_verify(&oc, t, m))? {
            rep.certificate(&cert);
            return Ok(());
        }
    }
    rep.report(&ij.report);
    Ok(())
}

fn thm2_report(rep: &mut ReportDocument, kb: &KbProj, t: &NAngle, d: &Subcat) -> Result<Option<EquivCertificate>, CliError> {
    rep.value("triangle", complex_labels(kb, &t.objs));
    let cert = hypothesis(rep, tiltkit::angulate::verify_theorem2(kb, t, d))?;
    if let Some(c) = &cert {
        rep.certificate(c);
    }
    Ok(cert)
}

fn kb_triangle(s: &Session, tri: &TriangleArgs) -> Result<(KbProj, NAngle, Obj), CliError> {
    let kb = KbProj::new(s.cat.clone());
    let x = kb_obj(s, &kb, &tri.from)?;
    let y = kb_obj(s, &kb, &tri.to)?;
    let m = kb_obj(s, &kb, &tri.sub)?;
    let u = base_map(&kb, &x, &y, tri.coeffs.as_deref())?;
    let t = kb.cone_triangle(&u)?;
    Ok((kb, t, m))
}

fn example_nakayama(rep: &mut ReportDocument, flags: &Flags) -> Result<(), CliError> {
    let s = Session::new(builtin("nakayama4").expect("built-in"), field_flag(flags)?)?;
    let c = s.cat.as_ref();
    rep.dim("algebra", s.algebra.dim());
    for v in ["1", "2", "3", "4"] {
        rep.dim(&format!("P{v}"), s.module(&format!("P{v}"))?.total_dim());
    }
    let p = s.obj("P1+P3")?;
    let y = s.module("Y")?;
    rep.value("Y", loewy_label(&y)?);
    let steps = flags.max_steps.unwrap_or(2);
    let Some(seq) = hypothesis(rep, nu_stable_sequence(c, &p, y, Some(steps), flags.seed))? else {
        return Ok(());
    };
    rep.report(&seq.report);
    let x = c.realize(&seq.x);
    rep.dim("X", x.total_dim());
    rep.value("X", loewy_label(&x)?);
    let terms: Vec<String> = seq.complex.objs.iter().map(|o| loewy_label(&c.realize(o)).unwrap_or_else(|_| "?".into())).collect();
    rep.value("sequence", terms.join(" -> "));
    let d = Subcat::new(p.clone());
    let px = Obj::sum(&[&p, &seq.x]);
    let py = Obj::sum(&[&p, &seq.complex.objs[seq.complex.len() - 1]]);
    let l = d.space(c, IdealKind::L, &px, &px).dim();
    let r = d.space(c, IdealKind::R, &py, &py).dim();
    rep.check(&Check::when("L_D(P+X) = 0", l == 0, || format!("dim {l}")));
    rep.check(&Check::when("R_D(P+Y) = 0", r == 0, || format!("dim {r}")));
    if let Some(cert) = hypothesis(rep, verify_theorem1(c, &seq.complex, &d))? {
        rep.certificate(&cert);
        rep.report(&certificate_dims(&cert));
    }
    rep.provenance.push(("seed".into(), flags.seed.to_string()));
    rep.provenance.push(("steps".into(), steps.to_string()));
    Ok(())
}

fn a2_kb_session(flags: &Flags) -> Result<Session, CliError> {
    Session::new(builtin("A2").expect("built-in"), field_flag(flags)?)
}

/// Runs one command; `echo` is recorded in the report.
pub fn run_command(cmd: &Command, flags: &Flags, echo: Vec<String>) -> Result<ReportDocument, CliError> {
    let start = Instant::now();
    let mut rep = ReportDocument::new(echo);
    match cmd {
        Command::CheckAdmissible { set } => {
            let s: BTreeSet<i64> = parse_ints(set)?.into_iter().collect();
            rep.value("set", format!("{s:?}"));
            let c = match admissibility(&s) {
                Admissibility::Admissible => Check::ok("admissible"),
                Admissibility::MissingZero => Check::fail("admissible", "0 is missing"),
                Admissibility::Violated(i, j, k) => Check::fail(
                    "admissible",
                    format!("(i, j, k) = ({i}, {j}, {k}): i+j+k = {} in the set, i+j = {} {}, j+k = {} {}", i + j + k, i + j,
                        if s.contains(&(i + j)) { "in" } else { "not in" }, j + k,
                        if s.contains(&(j + k)) { "in" } else { "not in" }),
                ),
            };
            rep.check(&c);
        }
        Command::Hom { m, n } => {
            let s = session(flags)?;
            let (a, b) = (s.obj(m)?, s.obj(n)?);
            rep.dim("hom", hom_dim(s.cat.as_ref(), &a, &b));
        }
        Command::Ideal { kind, sub, m, n } => {
            let s = session(flags)?;
            let c = s.cat.as_ref();
            let kind: IdealKind = kind.parse()?;
            let d = Subcat::new(s.obj(sub)?);
            let (a, b) = (s.obj(m)?, s.obj(n)?);
            let sp = d.space(c, kind, &a, &b);
            rep.dim("hom", hom_dim(c, &a, &b));
            rep.dim(&kind.to_string(), sp.dim());
            rep.payload.matrices.insert("basis".into(), sp.basis().iter().map(|v| lits(v)).collect());
            rep.report(&lemma_ann_verify(c, &a, &b, &d));
        }
        Command::Approx { side, m, sub } => {
            let s = session(flags)?;
            let c = s.cat.as_ref();
            let d = Subcat::new(s.obj(sub)?);
            let x = s.obj(m)?;
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let f = approximation(c, &x, &d, side);
            let fail = approximation_failure(c, &f, &d, side);
            rep.check(&Check::when("approximation property", fail.is_none(), || fail.clone().unwrap_or_default()));
            let other = if matches!(side, Side::Left) { &f.tgt } else { &f.src };
            rep.value("object", other.label(c));
            rep.dim("summands", other.len());
            rep.value("coordinates", fmt_vec(&f.v));
        }
        Command::EndRing { m, kind, sub } => {
            let s = session(flags)?;
            let c = s.cat.as_ref();
            let x = s.obj(m)?;
            let kind = kind.as_deref().map(str::parse::<IdealKind>).transpose()?;
            let d = Subcat::new(match sub {
                Some(sub) => s.obj(sub)?,
                None => Obj::zero(),
            });
            let q = end_ring(c, &x, kind, &d)?;
            rep.check(&Check::when("ring axioms", q.ring.check_axioms().is_ok(), || "structure constants".into()));
            rep.dim("ring", q.ring.dim());
            rep.payload.rings.insert("end".into(), ring_doc(&q.ring));
        }
        Command::CheckThm1 { complex, sub } => {
            let s = session(flags)?;
            let q = s.complex(complex)?;
            let d = Subcat::new(s.obj(sub)?);
            rep.value("complex", complex_labels(s.cat.as_ref(), &q.objs));
            rep.report(&check_thm1_conditions(s.cat.as_ref(), q, &d)?);
        }
        Command::VerifyThm1 { complex, sub } => {
            let s = session(flags)?;
            let q = s.complex(complex)?;
            let d = Subcat::new(s.obj(sub)?);
            rep.value("complex", complex_labels(s.cat.as_ref(), &q.objs));
            if let Some(cert) = hypothesis(&mut rep, verify_theorem1(s.cat.as_ref(), q, &d))? {
                rep.certificate(&cert);
                rep.report(&certificate_dims(&cert));
            }
        }
        Command::NuPipeline { p, y } => {
            let s = session(flags)?;
            let c: &ModCat = s.cat.as_ref();
            let po = s.obj(p)?;
            let ym = s.module(y)?;
            if let Some(seq) = hypothesis(&mut rep, nu_stable_sequence(c, &po, ym, flags.max_steps, flags.seed))? {
                rep.report(&seq.report);
                let x = c.realize(&seq.x);
                rep.dim("X", x.total_dim());
                rep.dim("steps", seq.steps);
                rep.value("X", loewy_label(&x).unwrap_or_else(|_| x.total_dim().to_string()));
                rep.value("sequence", complex_labels(c, &seq.complex.objs));
                let d = Subcat::new(po);
                if let Some(cert) = hypothesis(&mut rep, verify_theorem1(c, &seq.complex, &d))? {
                    rep.certificate(&cert);
                }
            }
            rep.provenance.push(("seed".into(), flags.seed.to_string()));
        }
        Command::VerifyThm2 { tri } => {
            let s = session(flags)?;
            let (kb, t, m) = kb_triangle(&s, tri)?;
            thm2_report(&mut rep, &kb, &t, &Subcat::new(m))?;
        }
        Command::OrbitYoneda { x, orbit } => {
            let s = session(flags)?;
            let phi = phi_of(flags, orbit)?;
            if orbit.functor == "shift" {
                let kb = KbProj::new(s.cat.clone());
                let xo = kb_obj(&s, &kb, x)?;
                yoneda_report(&mut rep, &kb, ShiftAuto, phi, &xo)?;
            } else {
                let tw = Twist(s.functor(&orbit.functor)?);
                let xo = s.obj(x)?;
                yoneda_report(&mut rep, s.cat.as_ref(), tw, phi, &xo)?;
            }
        }
        Command::OrbitVerify { tri, orbit } => {
            let s = session(flags)?;
            let phi = phi_of(flags, orbit)?;
            let (kb, t, m) = kb_triangle(&s, tri)?;
            rep.value("triangle", complex_labels(&kb, &t.objs));
            if orbit.functor == "shift" {
                orbit_verify_report(&mut rep, &kb, ShiftAuto, phi, &t, &m)?;
            } else {
                let tw = Twist(s.functor(&orbit.functor)?);
                orbit_verify_report(&mut rep, &kb, tw, phi, &t, &m)?;
            }
        }
        Command::Example { name } => match name.as_str() {
            "nakayama" => example_nakayama(&mut rep, flags)?,
            "a2-triangle" => {
                let s = a2_kb_session(flags)?;
                let tri = TriangleArgs { from: "P2".into(), to: "P1".into(), coeffs: None, sub: "P1".into() };
                let (kb, t, m) = kb_triangle(&s, &tri)?;
                thm2_report(&mut rep, &kb, &t, &Subcat::new(m))?;
            }
            "a2-orbit" => {
                let s = a2_kb_session(flags)?;
                let tri = TriangleArgs { from: "P2".into(), to: "P1".into(), coeffs: None, sub: "P1".into() };
                let (kb, t, m) = kb_triangle(&s, &tri)?;
                rep.value("triangle", complex_labels(&kb, &t.objs));
                orbit_verify_report(&mut rep, &kb, ShiftAuto, AdmissibleSet::new([0, 1])?, &t, &m)?;
            }
            other => return Err(CliError::Parse(format!("unknown example `{other}` (nakayama, a2-triangle, a2-orbit)"))),
        },
    }
    if flags.timing {
        rep.timing_us = Some(start.elapsed().as_micros() as u64);
    }
    rep.finish();
    Ok(rep)
}

