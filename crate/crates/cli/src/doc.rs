//! Input documents: an algebra by quiver and monomial relations, with named
//! modules, complexes and quiver automorphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use tiltkit::algebra::{injective, path_algebra, projective, simple, Algebra, ModMap, ModuleRep, Quiver, QuiverTwist};
use tiltkit::complexes::Complex;
use tiltkit::category::{ModCat, Mor, Obj};
use tiltkit::exactla::{Field, Mat, Scalar};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A matrix entry: an integer or an `"a/b"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn parse(&self, field: Field) -> tiltkit::Result<Scalar> {
        match self {
            Literal::Int(v) => Ok(field.from_i64(*v)),
            Literal::Text(s) => field.parse(s),
        }
    }
}

pub type MatrixDoc = Vec<Vec<Literal>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub arrows: Vec<ArrowDoc>,
}

/// Either explicit vertex dimensions with one matrix per arrow (target
/// dimension rows, source dimension columns), or a standard module at a vertex.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arrows: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projective: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simple: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injective: Option<String>,
}

/// Terms are module expressions (`"P1+S2"`, `"0"`); each differential is a
/// list of vertex matrices between the realized terms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    #[serde(default)]
    pub lo: i64,
    pub terms: Vec<String>,
    #[serde(default)]
    pub differentials: Vec<Vec<MatrixDoc>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    /// Image of each vertex, in vertex order.
    pub vertex_map: Vec<String>,
    /// Image of each arrow, in arrow order.
    pub arrow_map: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema_version: u32,
    pub field: String,
    pub quiver: QuiverDoc,
    /// Zero paths, as space-separated arrow names.
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleDoc>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexDoc>,
    #[serde(default)]
    pub functors: BTreeMap<String, FunctorDoc>,
}

fn at(loc: &str) -> impl Fn(tiltkit::Error) -> CliError + '_ {
    move |e| CliError::Parse(format!("{loc}: {e}"))
}

fn perr(loc: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Parse(format!("{loc}: {msg}"))
}

pub fn parse_matrix(field: Field, m: &MatrixDoc, rows: usize, cols: usize, loc: &str) -> Result<Mat, CliError> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        let got: Vec<usize> = m.iter().map(Vec::len).collect();
        return Err(perr(loc, format!("expected a {rows}x{cols} matrix, got {} rows of lengths {got:?}", m.len())));
    }
    let entries = m
        .iter()
        .map(|r| r.iter().map(|x| x.parse(field)).collect::<tiltkit::Result<Vec<_>>>())
        .collect::<tiltkit::Result<Vec<_>>>()
        .map_err(at(loc))?;
    Mat::from_rows(field, rows, cols, entries).map_err(at(loc))
}

fn from_json(text: &str, origin: &str) -> Result<InputDocument, CliError> {
    serde_json::from_str(text).map_err(|e| perr(origin, format!("line {} column {}: {e}", e.line(), e.column())))
}

/// Reads a document from a file.
pub fn parse_input(path: &str) -> Result<InputDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| perr(path, e))?;
    from_json(&text, path)
}

pub fn parse_str(text: &str) -> Result<InputDocument, CliError> {
    from_json(text, "<input>")
}

/// A validated document: the algebra with every named module and complex built.
pub struct Session {
    pub doc: InputDocument,
    pub field: Field,
    pub algebra: Arc<Algebra>,
    pub cat: Arc<ModCat>,
    pub modules: BTreeMap<String, Arc<ModuleRep>>,
    pub complexes: BTreeMap<String, Complex>,
    pub functors: BTreeMap<String, QuiverTwist>,
}

impl Session {
    /// Validates `doc`; `field` overrides the document's field.
    pub fn new(doc: InputDocument, field: Option<Field>) -> Result<Session, CliError> {
        if doc.schema_version != SCHEMA_VERSION {
            return Err(perr("schema_version", format!("unsupported version {}", doc.schema_version)));
        }
        let field = match field {
            Some(f) => f,
            None => doc.field.parse().map_err(at("field"))?,
        };
        let arrows: Vec<(String, String, String)> =
            doc.quiver.arrows.iter().map(|a| (a.name.clone(), a.source.clone(), a.target.clone())).collect();
        let quiver = Quiver::from_named(doc.quiver.vertices.clone(), arrows).map_err(at("quiver"))?;
        let rels: Vec<Vec<String>> =
            doc.relations.iter().map(|w| w.split_whitespace().map(str::to_string).collect()).collect();
        let algebra = Arc::new(path_algebra(field, quiver, &rels).map_err(at("relations"))?);
        let cat = Arc::new(ModCat::new(algebra.clone()));
        let mut s = Session {
            doc: doc.clone(),
            field,
            algebra,
            cat,
            modules: BTreeMap::new(),
            complexes: BTreeMap::new(),
            functors: BTreeMap::new(),
        };
        for (name, m) in &doc.modules {
            let loc = format!("modules.{name}");
            let built = s.build_module(m, &loc)?;
            s.modules.insert(name.clone(), Arc::new(built));
        }
        for (name, cx) in &doc.complexes {
            let built = s.build_complex(cx, &format!("complexes.{name}"))?;
            s.complexes.insert(name.clone(), built);
        }
        for (name, f) in &doc.functors {
            let built = s.build_functor(f, &format!("functors.{name}"))?;
            s.functors.insert(name.clone(), built);
        }
        Ok(s)
    }

    fn quiver(&self) -> &Quiver {
        self.algebra.quiver().expect("documents define algebras by quivers")
    }

    fn vertex(&self, name: &str, loc: &str) -> Result<usize, CliError> {
        self.quiver().vertex_index(name).map_err(at(loc))
    }

    fn build_module(&self, m: &ModuleDoc, loc: &str) -> Result<ModuleRep, CliError> {
        let std_forms = [(&m.projective, "projective"), (&m.simple, "simple"), (&m.injective, "injective")];
        let given: Vec<_> = std_forms.iter().filter(|(v, _)| v.is_some()).collect();
        let explicit = m.dims.is_some() || !m.arrows.is_empty();
        if given.len() + usize::from(explicit) != 1 {
            return Err(perr(loc, "give exactly one of dims/arrows, projective, simple, injective"));
        }
        if let Some((Some(v), kind)) = given.first().map(|p| (p.0.clone(), p.1)) {
            let i = self.vertex(&v, loc)?;
            let built = match kind {
                "projective" => projective(&self.algebra, i),
                "simple" => simple(&self.algebra, i),
                _ => injective(&self.algebra, i),
            };
            return built.map_err(at(loc));
        }
        let dims = m.dims.clone().ok_or_else(|| perr(loc, "missing dims"))?;
        if dims.len() != self.quiver().vertex_count() {
            return Err(perr(loc, format!("{} dims for {} vertices", dims.len(), self.quiver().vertex_count())));
        }
        for name in m.arrows.keys() {
            self.quiver().arrow_index(name).map_err(at(loc))?;
        }
        let mut acts = Vec::new();
        for arr in &self.quiver().arrows {
            let (s, t) = (dims[arr.source], dims[arr.target]);
            let aloc = format!("{loc}.arrows.{}", arr.name);
            let mat = match m.arrows.get(&arr.name) {
                Some(doc) => parse_matrix(self.field, doc, t, s, &aloc)?,
                None if s == 0 || t == 0 => Mat::zeros(self.field, t, s),
                None => return Err(perr(&aloc, "missing matrix")),
            };
            acts.push(mat);
        }
        ModuleRep::new(self.algebra.clone(), dims, acts).map_err(at(loc))
    }

    /// A module by document name, or `P<v>`, `S<v>`, `I<v>` for a vertex `v`.
    pub fn module(&self, name: &str) -> Result<Arc<ModuleRep>, CliError> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        let loc = format!("module `{name}`");
        let mut chars = name.chars();
        let kind = chars.next();
        let v = chars.as_str();
        let built = match (kind, self.quiver().vertex_index(v)) {
            (Some('P'), Ok(i)) => projective(&self.algebra, i),
            (Some('S'), Ok(i)) => simple(&self.algebra, i),
            (Some('I'), Ok(i)) => injective(&self.algebra, i),
            _ => return Err(CliError::Parse(format!("unresolved name `{name}`"))),
        };
        Ok(Arc::new(built.map_err(at(&loc))?))
    }

    /// A sum of modules written `A+B+…`; `0` is the zero object.
    pub fn obj(&self, expr: &str) -> Result<Obj, CliError> {
        let mut atoms = Vec::new();
        for part in split_sum(expr) {
            let m = self.module(part)?;
            if !m.is_zero() {
                atoms.push(self.cat.atom(m).map_err(at(part))?);
            }
        }
        Ok(Obj(atoms))
    }

    pub fn map_between(&self, src: &Obj, tgt: &Obj, mats: &[MatrixDoc], loc: &str) -> Result<Mor, CliError> {
        let (sm, tm) = (self.cat.realize(src), self.cat.realize(tgt));
        let nv = self.quiver().vertex_count();
        if mats.len() != nv {
            return Err(perr(loc, format!("{} vertex matrices for {nv} vertices", mats.len())));
        }
        let ms = (0..nv)
            .map(|v| parse_matrix(self.field, &mats[v], tm.dim_at(v), sm.dim_at(v), &format!("{loc}[{v}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let f = ModMap::new(sm, tm, ms).map_err(at(loc))?;
        self.cat.mor_from_map(src, tgt, &f).map_err(at(loc))
    }

    fn build_complex(&self, cx: &ComplexDoc, loc: &str) -> Result<Complex, CliError> {
        let objs = cx.terms.iter().map(|t| self.obj(t)).collect::<Result<Vec<_>, _>>()?;
        if cx.differentials.len() + 1 != objs.len().max(1) {
            return Err(perr(loc, format!("{} terms need {} differentials", objs.len(), objs.len().saturating_sub(1))));
        }
        let diffs = cx
            .differentials
            .iter()
            .enumerate()
            .map(|(k, d)| self.map_between(&objs[k], &objs[k + 1], d, &format!("{loc}.differentials[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Complex::new(self.cat.as_ref(), cx.lo, objs, diffs).map_err(at(loc))
    }

    fn build_functor(&self, f: &FunctorDoc, loc: &str) -> Result<QuiverTwist, CliError> {
        let q = self.quiver();
        let vm = f.vertex_map.iter().map(|v| q.vertex_index(v)).collect::<tiltkit::Result<Vec<_>>>().map_err(at(loc))?;
        let am = f.arrow_map.iter().map(|a| q.arrow_index(a)).collect::<tiltkit::Result<Vec<_>>>().map_err(at(loc))?;
        QuiverTwist::new(&self.algebra, vm, am).map_err(at(loc))
    }

    pub fn complex(&self, name: &str) -> Result<&Complex, CliError> {
        self.complexes.get(name).ok_or_else(|| CliError::Parse(format!("unresolved complex `{name}`")))
    }

    pub fn functor(&self, name: &str) -> Result<QuiverTwist, CliError> {
        if let Some(f) = self.functors.get(name) {
            return Ok(f.clone());
        }
        if name == "rotation" {
            return QuiverTwist::cyclic_rotation(&self.algebra).map_err(at("functor `rotation`"));
        }
        Err(CliError::Parse(format!("unresolved functor `{name}`")))
    }
}

pub fn split_sum(expr: &str) -> impl Iterator<Item = &str> {
    expr.split('+').map(str::trim).filter(|p| !p.is_empty() && *p != "0")
}

fn arrow(name: &str, s: &str, t: &str) -> ArrowDoc {
    ArrowDoc { name: name.into(), source: s.into(), target: t.into() }
}

fn std_module(kind: &str, v: &str) -> ModuleDoc {
    let mut m = ModuleDoc::default();
    match kind {
        "projective" => m.projective = Some(v.into()),
        "simple" => m.simple = Some(v.into()),
        _ => m.injective = Some(v.into()),
    }
    m
}

/// Built-in documents: `A2`, `A3`, `A3rad` and `nakayama4`.
pub fn builtin(name: &str) -> Option<InputDocument> {
    let doc = |vertices: &[&str], arrows: Vec<ArrowDoc>, relations: &[&str]| InputDocument {
        schema_version: SCHEMA_VERSION,
        field: "q".into(),
        quiver: QuiverDoc { vertices: vertices.iter().map(|v| v.to_string()).collect(), arrows },
        relations: relations.iter().map(|r| r.to_string()).collect(),
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
        functors: BTreeMap::new(),
    };
    match name {
        "A2" => {
            let mut d = doc(&["1", "2"], vec![arrow("a", "1", "2")], &[]);
            // the almost split sequence S2 → P1 → S1
            d.complexes.insert(
                "ar".into(),
                ComplexDoc {
                    lo: 0,
                    terms: vec!["S2".into(), "P1".into(), "S1".into()],
                    differentials: vec![
                        vec![vec![vec![]], vec![vec![Literal::Int(1)]]],
                        vec![vec![vec![Literal::Int(1)]], vec![]],
                    ],
                },
            );
            Some(d)
        }
        "A3" => Some(doc(&["1", "2", "3"], vec![arrow("a", "1", "2"), arrow("b", "2", "3")], &[])),
        "A3rad" => Some(doc(&["1", "2", "3"], vec![arrow("a", "1", "2"), arrow("b", "2", "3")], &["a b"])),
        "nakayama4" => {
            let mut d = doc(
                &["1", "2", "3", "4"],
                vec![arrow("alpha", "1", "2"), arrow("beta", "2", "3"), arrow("gamma", "3", "4"), arrow("delta", "4", "1")],
                &[
                    "alpha beta gamma delta alpha",
                    "beta gamma delta alpha beta",
                    "gamma delta alpha beta gamma",
                    "delta alpha beta gamma delta",
                ],
            );
            let mut y = ModuleDoc { dims: Some(vec![1, 1, 0, 0]), ..ModuleDoc::default() };
            y.arrows.insert("alpha".into(), vec![vec![Literal::Int(1)]]);
            d.modules.insert("Y".into(), y);
            d.modules.insert("P1".into(), std_module("projective", "1"));
            d.modules.insert("P3".into(), std_module("projective", "3"));
            d.functors.insert(
                "rotation".into(),
                FunctorDoc {
                    vertex_map: ["2", "3", "4", "1"].map(String::from).to_vec(),
                    arrow_map: ["beta", "gamma", "delta", "alpha"].map(String::from).to_vec(),
                },
            );
            Some(d)
        }
        _ => None,
    }
}

/// A built-in document by name, otherwise a file path.
pub fn load(name_or_path: &str) -> Result<InputDocument, CliError> {
    match builtin(name_or_path) {
        Some(d) => Ok(d),
        None => parse_input(name_or_path),
    }
}
