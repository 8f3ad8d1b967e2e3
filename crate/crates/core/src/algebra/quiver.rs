use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{zero_vec, Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let arrows = arrows
            .iter()
            .map(|(n, s, t)| (n.to_string(), s.to_string(), t.to_string()))
            .collect();
        Quiver::from_named(vertices, arrows)
    }

    pub fn from_named(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Quiver> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::Input(format!("duplicate vertex `{v}`")));
            }
        }
        let find = |v: &str| {
            vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::Input(format!("arrow endpoint `{v}` is not a vertex")))
        };
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            if out.iter().any(|a: &Arrow| a.name == name) {
                return Err(Error::Input(format!("duplicate arrow `{name}`")));
            }
            out.push(Arrow { source: find(&s)?, target: find(&t)?, name });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::Input(format!("unknown vertex `{name}`")))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows
            .iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::Input(format!("unknown arrow `{name}`")))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
}

/// A path read left to right: `arrows[0]` is traversed first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", q.vertices[self.source])
        } else {
            self.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Vec<usize>>,
    pub paths: Vec<Path>,
}

/// Finite-dimensional algebra by structure constants: `mult[i][j]` is the
/// product of basis elements i and j, where `xy` means x first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    labels: Vec<String>,
    mult: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
    presentation: Option<Presentation>,
}

const PATH_CAP: usize = 20_000;

/// Monomial quotient of the path algebra. Relations are arrow-name words.
pub fn path_algebra(field: Field, quiver: Quiver, relations: &[Vec<String>]) -> Result<Algebra> {
    let mut rels = Vec::new();
    for word in relations {
        if word.len() < 2 {
            return Err(Error::Input(format!("relation {word:?} has length below 2")));
        }
        let idx: Vec<usize> = word.iter().map(|n| quiver.arrow_index(n)).collect::<Result<_>>()?;
        for w in idx.windows(2) {
            if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                return Err(Error::Input(format!("relation {word:?} is not a composable path")));
            }
        }
        rels.push(idx);
    }
    let r = rels.iter().map(Vec::len).max().unwrap_or(1);
    let state_bound = quiver.vertex_count().max(quiver.arrows.len().pow((r.max(2) - 1) as u32));
    let length_bound = r + state_bound + 1;

    let ends_with_relation = |arrows: &[usize]| rels.iter().any(|rel| arrows.ends_with(rel));
    let mut paths: Vec<Path> =
        (0..quiver.vertex_count()).map(|v| Path { source: v, target: v, arrows: vec![] }).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &pi in &frontier {
            for (ai, a) in quiver.arrows.iter().enumerate() {
                if a.source != paths[pi].target {
                    continue;
                }
                let mut arrows = paths[pi].arrows.clone();
                arrows.push(ai);
                if ends_with_relation(&arrows) {
                    continue;
                }
                if arrows.len() > length_bound || paths.len() >= PATH_CAP {
                    return Err(Error::NotFiniteDimensional(format!(
                        "surviving paths exceed length {length_bound}; the relations do not cut the path algebra down to finite dimension"
                    )));
                }
                paths.push(Path { source: paths[pi].source, target: a.target, arrows });
                next.push(paths.len() - 1);
            }
        }
        frontier = next;
    }

    let index: HashMap<(usize, Vec<usize>), usize> =
        paths.iter().enumerate().map(|(i, p)| ((p.source, p.arrows.clone()), i)).collect();
    let d = paths.len();
    let mut mult = vec![vec![zero_vec(field, d); d]; d];
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if p.target != q.source {
                continue;
            }
            let mut arrows = p.arrows.clone();
            arrows.extend_from_slice(&q.arrows);
            if let Some(&k) = index.get(&(p.source, arrows)) {
                mult[i][j][k] = field.one();
            }
        }
    }
    let mut unit = zero_vec(field, d);
    for v in 0..quiver.vertex_count() {
        unit[v] = field.one();
    }
    let labels = paths.iter().map(|p| p.label(&quiver)).collect();
    Ok(Algebra {
        field,
        labels,
        mult,
        unit,
        presentation: Some(Presentation { quiver, relations: rels, paths }),
    })
}

impl Algebra {
    /// Algebra from explicit structure constants; associativity and the unit
    /// are verified.
    pub fn from_structure_constants(
        field: Field,
        labels: Vec<String>,
        mult: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Algebra> {
        let d = labels.len();
        let shape_ok = mult.len() == d
            && mult.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::Input("structure constants do not match the basis size".into()));
        }
        let a = Algebra { field, labels, mult, unit, presentation: None };
        a.check_axioms()?;
        Ok(a)
    }

    /// Associativity on all basis triples and two-sided unit.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = crate::exactla::unit_vec(self.field, d, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Input(format!("unit fails on basis element {}", self.labels[i])));
            }
            for j in 0..d {
                for k in 0..d {
                    let left = self.mul(&self.mult[i][j], &crate::exactla::unit_vec(self.field, d, k));
                    let right = self.mul(&crate::exactla::unit_vec(self.field, d, i), &self.mult[j][k]);
                    if left != right {
                        return Err(Error::Input(format!(
                            "multiplication is not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        &self.mult[i][j]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = zero_vec(self.field, d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi.mul(yj);
                crate::exactla::axpy(&mut out, &c, &self.mult[i][j]);
            }
        }
        out
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        self.presentation.as_ref()
    }

    pub fn quiver(&self) -> Result<&Quiver> {
        self.presentation
            .as_ref()
            .map(|p| &p.quiver)
            .ok_or_else(|| Error::Input("algebra has no quiver presentation".into()))
    }

    /// Number of grading vertices (1 without a quiver).
    pub fn vertex_count(&self) -> usize {
        self.presentation.as_ref().map_or(1, |p| p.quiver.vertex_count())
    }

    pub fn vertex_name(&self, v: usize) -> String {
        match &self.presentation {
            Some(p) => p.quiver.vertices[v].clone(),
            None => "*".to_string(),
        }
    }

    /// Generators whose action defines a module: arrows for a quiver
    /// presentation, every basis element otherwise. Each is (source, target).
    pub fn generators(&self) -> Vec<(usize, usize)> {
        match &self.presentation {
            Some(p) => p.quiver.arrows.iter().map(|a| (a.source, a.target)).collect(),
            None => vec![(0, 0); self.dim()],
        }
    }

    pub fn generator_name(&self, g: usize) -> String {
        match &self.presentation {
            Some(p) => p.quiver.arrows[g].name.clone(),
            None => self.labels[g].clone(),
        }
    }

    /// Index of a basis path given by its arrows (`source` needed for trivial paths).
    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        let p = self.presentation.as_ref()?;
        p.paths.iter().position(|q| q.source == source && q.arrows == arrows)
    }
}
