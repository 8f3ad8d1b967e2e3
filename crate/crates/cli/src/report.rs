//! Machine-readable reports and their text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use tiltkit::catideal::RingPresentation;
use tiltkit::derivedeq::EquivCertificate;
use tiltkit::exactla::{Mat, Scalar};
use tiltkit::report::{Check, Report};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// A finite-dimensional ring: basis labels, unit and structure constants as
/// field literals. `constants[i][j]` is the product of basis elements `i` then `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDoc {
    pub field: String,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    pub constants: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Payload {
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub flags: BTreeMap<String, bool>,
    #[serde(default)]
    pub values: BTreeMap<String, String>,
    #[serde(default)]
    pub rings: BTreeMap<String, RingDoc>,
    /// Matrices and bases, one row per list entry.
    #[serde(default)]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub pass: bool,
    pub checks: Vec<CheckDoc>,
    #[serde(default)]
    pub notes: Vec<String>,
    #[serde(default)]
    pub payload: Payload,
    /// Wall time in microseconds; only recorded with `--timing`.
    #[serde(default)]
    pub timing_us: Option<u64>,
    #[serde(default)]
    pub provenance: Vec<(String, String)>,
}

pub fn lits(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_literal).collect()
}

pub fn ring_doc(r: &RingPresentation) -> RingDoc {
    RingDoc {
        field: r.field.label(),
        labels: r.labels.clone(),
        unit: lits(&r.unit),
        constants: r.constants.iter().map(|row| row.iter().map(|v| lits(v)).collect()).collect(),
    }
}

pub fn mat_rows(m: &Mat) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| lits(r)).collect()
}

impl ReportDocument {
    pub fn new(command: Vec<String>) -> ReportDocument {
        ReportDocument {
            schema_version: REPORT_VERSION,
            command,
            pass: true,
            checks: Vec::new(),
            notes: Vec::new(),
            payload: Payload::default(),
            timing_us: None,
            provenance: Vec::new(),
        }
    }

    pub fn check(&mut self, c: &Check) {
        self.checks.push(CheckDoc { name: c.name.clone(), pass: c.pass, witness: c.witness.clone() });
    }

    pub fn report(&mut self, r: &Report) {
        for c in &r.checks {
            self.check(c);
        }
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn dim(&mut self, k: &str, v: usize) {
        self.payload.dims.insert(k.into(), v);
    }

    pub fn flag(&mut self, k: &str, v: bool) {
        self.payload.flags.insert(k.into(), v);
    }

    pub fn value(&mut self, k: &str, v: impl Into<String>) {
        self.payload.values.insert(k.into(), v.into());
    }

    pub fn certificate(&mut self, cert: &EquivCertificate) {
        self.report(&cert.checks);
        self.value("theorem", cert.theorem.clone());
        self.dim("left ring", cert.left_ring.dim());
        self.dim("right ring", cert.right_ring.dim());
        self.dim("homotopy ring", cert.homotopy_ring.dim());
        self.dim("left ideal", cert.left_ideal_dim);
        self.dim("right ideal", cert.right_ideal_dim);
        self.dim("chain maps", cert.chain_dim);
        self.dim("ker theta", cert.ker_theta.len());
        self.dim("ker phi", cert.ker_phi.len());
        self.payload.rings.insert("left".into(), ring_doc(&cert.left_ring));
        self.payload.rings.insert("right".into(), ring_doc(&cert.right_ring));
        self.payload.rings.insert("homotopy".into(), ring_doc(&cert.homotopy_ring));
        self.payload.matrices.insert("theta".into(), mat_rows(&cert.theta));
        self.payload.matrices.insert("phi".into(), mat_rows(&cert.phi));
        self.payload.matrices.insert("ker theta".into(), cert.ker_theta.iter().map(|v| lits(v)).collect());
        self.payload.matrices.insert("ker phi".into(), cert.ker_phi.iter().map(|v| lits(v)).collect());
        self.flag("certificate", cert.passes());
        self.provenance.extend(cert.provenance.iter().cloned());
    }

    /// Sets `pass`: every check and every flag true.
    pub fn finish(&mut self) {
        self.pass = self.checks.iter().all(|c| c.pass) && self.payload.flags.values().all(|&f| f);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<ReportDocument> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tiltkit {}", self.command.join(" "));
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            match &c.witness {
                Some(w) => _ = writeln!(s, "{mark} {}: {w}", c.name),
                None => _ = writeln!(s, "{mark} {}", c.name),
            }
        }
        for (k, v) in &self.payload.flags {
            let _ = writeln!(s, "{} {k}", if *v { "PASS" } else { "FAIL" });
        }
        for (k, v) in &self.payload.dims {
            let _ = writeln!(s, "dim {k} = {v}");
        }
        for (k, v) in &self.payload.values {
            let _ = writeln!(s, "{k} = {v}");
        }
        for (k, r) in &self.payload.rings {
            let _ = writeln!(s, "ring {k}: dim {} over {}, basis [{}]", r.labels.len(), r.field, r.labels.join(", "));
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for (k, v) in &self.provenance {
            let _ = writeln!(s, "{k}: {v}");
        }
        if let Some(t) = self.timing_us {
            let _ = writeln!(s, "time: {t} us");
        }
        let _ = writeln!(s, "{}", if self.pass { "result: PASS" } else { "result: FAIL" });
        s
    }
}
