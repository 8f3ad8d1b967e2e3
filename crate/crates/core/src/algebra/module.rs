use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar, Subspace};

use super::quiver::Algebra;

/// A module given by one vector space per vertex and one matrix per
/// generator. For a generator `i → j` the matrix is `dims[j] × dims[i]`.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    alg: Arc<Algebra>,
    dims: Vec<usize>,
    acts: Vec<Mat>,
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.acts == other.acts
    }
}

pub fn same_algebra(a: &Arc<Algebra>, b: &Arc<Algebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl ModuleRep {
    /// Validates shapes and that relations (or structure constants) hold.
    pub fn new(alg: Arc<Algebra>, dims: Vec<usize>, acts: Vec<Mat>) -> Result<ModuleRep> {
        let gens = alg.generators();
        if dims.len() != alg.vertex_count() {
            return Err(Error::Input(format!(
                "module has {} vertex dimensions, algebra has {} vertices",
                dims.len(),
                alg.vertex_count()
            )));
        }
        if acts.len() != gens.len() {
            return Err(Error::Input(format!("expected {} action matrices, got {}", gens.len(), acts.len())));
        }
        for (g, (&(s, t), m)) in gens.iter().zip(&acts).enumerate() {
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::Input(format!(
                    "action of `{}` has shape {:?}, expected {:?}",
                    alg.generator_name(g),
                    m.shape(),
                    (dims[t], dims[s])
                )));
            }
            if m.field() != alg.field() {
                return Err(Error::Input("action matrix over the wrong field".into()));
            }
        }
        let m = ModuleRep { alg, dims, acts };
        m.check_relations()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<Algebra>, dims: Vec<usize>, acts: Vec<Mat>) -> ModuleRep {
        ModuleRep { alg, dims, acts }
    }

    pub fn zero(alg: Arc<Algebra>) -> ModuleRep {
        let dims = vec![0; alg.vertex_count()];
        let f = alg.field();
        let acts = alg.generators().iter().map(|_| Mat::zeros(f, 0, 0)).collect();
        ModuleRep { alg, dims, acts }
    }

    fn check_relations(&self) -> Result<()> {
        let alg = &self.alg;
        match alg.presentation() {
            Some(p) => {
                for rel in &p.relations {
                    let m = self.path_action(p.quiver.arrows[rel[0]].source, rel);
                    if !m.is_zero() {
                        return Err(Error::Input(format!(
                            "relation {} does not act as zero",
                            rel.iter().map(|&a| p.quiver.arrows[a].name.as_str()).collect::<String>()
                        )));
                    }
                }
            }
            None => {
                let d = alg.dim();
                let n = self.dims[0];
                let act_of = |v: &[Scalar]| {
                    let mut m = Mat::zeros(alg.field(), n, n);
                    for (k, c) in v.iter().enumerate() {
                        if !c.is_zero() {
                            m = m.add(&self.acts[k].scale(c));
                        }
                    }
                    m
                };
                if act_of(alg.unit()) != Mat::identity(alg.field(), n) {
                    return Err(Error::Input("unit does not act as the identity".into()));
                }
                for i in 0..d {
                    for j in 0..d {
                        // x·y acts as x first, then y
                        let lhs = self.acts[j].mul(&self.acts[i]);
                        if lhs != act_of(alg.basis_product(i, j)) {
                            return Err(Error::Input(format!(
                                "action violates the product {}·{}",
                                alg.labels()[i],
                                alg.labels()[j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of a path starting at `source` (quiver case).
    pub fn path_action(&self, source: usize, arrows: &[usize]) -> Mat {
        let f = self.alg.field();
        let mut m = Mat::identity(f, self.dims[source]);
        for &a in arrows {
            m = self.acts[a].mul(&m);
        }
        m
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn field(&self) -> Field {
        self.alg.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn act(&self, g: usize) -> &Mat {
        &self.acts[g]
    }

    pub fn acts(&self) -> &[Mat] {
        &self.acts
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A module homomorphism: one matrix per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct ModMap {
    pub source: Arc<ModuleRep>,
    pub target: Arc<ModuleRep>,
    pub mats: Vec<Mat>,
}

impl ModMap {
    pub fn new(source: Arc<ModuleRep>, target: Arc<ModuleRep>, mats: Vec<Mat>) -> Result<ModMap> {
        if !same_algebra(source.algebra(), target.algebra()) {
            return Err(Error::Input("modules over different algebras".into()));
        }
        if mats.len() != source.dims().len() {
            return Err(Error::Input("wrong number of vertex matrices".into()));
        }
        for (v, m) in mats.iter().enumerate() {
            if m.shape() != (target.dim_at(v), source.dim_at(v)) {
                return Err(Error::Input(format!("vertex {v} matrix has shape {:?}", m.shape())));
            }
        }
        let f = ModMap { source, target, mats };
        if !f.intertwines() {
            return Err(Error::Input("matrices do not commute with the module actions".into()));
        }
        Ok(f)
    }

    pub fn zero(source: Arc<ModuleRep>, target: Arc<ModuleRep>) -> ModMap {
        let f = source.field();
        let mats = (0..source.dims().len())
            .map(|v| Mat::zeros(f, target.dim_at(v), source.dim_at(v)))
            .collect();
        ModMap { source, target, mats }
    }

    pub fn identity(m: Arc<ModuleRep>) -> ModMap {
        let f = m.field();
        let mats = m.dims().iter().map(|&d| Mat::identity(f, d)).collect();
        ModMap { source: m.clone(), target: m, mats }
    }

    pub fn intertwines(&self) -> bool {
        let gens = self.source.algebra().generators();
        gens.iter().enumerate().all(|(g, &(i, j))| {
            self.target.act(g).mul(&self.mats[i]) == self.mats[j].mul(self.source.act(g))
        })
    }

    /// `self` then `other`.
    pub fn then(&self, other: &ModMap) -> Result<ModMap> {
        if *self.target != *other.source {
            return Err(Error::Input("composition of non-composable maps".into()));
        }
        let mats = self.mats.iter().zip(&other.mats).map(|(f, g)| g.mul(f)).collect();
        Ok(ModMap { source: self.source.clone(), target: other.target.clone(), mats })
    }

    pub fn add(&self, other: &ModMap) -> ModMap {
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn scale(&self, s: &Scalar) -> ModMap {
        let mats = self.mats.iter().map(|a| a.scale(s)).collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.mats.iter().flat_map(|m| m.flat().iter().cloned()).collect()
    }

    pub fn is_iso(&self) -> bool {
        self.mats.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<ModMap> {
        let mats = self.mats.iter().map(Mat::inverse).collect::<Option<Vec<_>>>()?;
        Some(ModMap { source: self.target.clone(), target: self.source.clone(), mats })
    }

    pub fn is_injective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.mats.iter().all(|m| m.rank() == m.rows())
    }
}

/// Hom(M, N) as a subspace of the flattened per-vertex matrices, with the
/// reduced echelon basis as the distinguished basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Arc<ModuleRep>,
    pub target: Arc<ModuleRep>,
    space: Subspace,
    offsets: Vec<usize>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn unflatten(&self, v: &[Scalar]) -> ModMap {
        let f = self.source.field();
        let mats = (0..self.source.dims().len())
            .map(|u| {
                let (r, c) = (self.target.dim_at(u), self.source.dim_at(u));
                Mat::from_flat(f, r, c, v[self.offsets[u]..self.offsets[u] + r * c].to_vec())
            })
            .collect();
        ModMap { source: self.source.clone(), target: self.target.clone(), mats }
    }

    pub fn basis_map(&self, k: usize) -> ModMap {
        self.unflatten(&self.space.basis()[k])
    }

    pub fn basis_maps(&self) -> Vec<ModMap> {
        (0..self.dim()).map(|k| self.basis_map(k)).collect()
    }

    /// Coordinates of a homomorphism relative to the basis.
    pub fn coords(&self, f: &ModMap) -> Option<Vec<Scalar>> {
        self.space.coords(&f.flatten())
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> ModMap {
        let v = crate::exactla::combine(self.source.field(), self.space.ambient(), coeffs, self.space.basis());
        self.unflatten(&v)
    }
}

/// Solves the intertwining equations for Hom(M, N).
pub fn hom_module(m: &Arc<ModuleRep>, n: &Arc<ModuleRep>) -> Result<HomSpace> {
    if !same_algebra(m.algebra(), n.algebra()) {
        return Err(Error::Input("Hom between modules over different algebras".into()));
    }
    let field = m.field();
    let nv = m.dims().len();
    let mut offsets = Vec::with_capacity(nv);
    let mut vars = 0;
    for v in 0..nv {
        offsets.push(vars);
        vars += n.dim_at(v) * m.dim_at(v);
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dim_at(v) + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (g, &(i, j)) in m.algebra().generators().iter().enumerate() {
        let (na, ma) = (n.act(g), m.act(g));
        // N(g) f_i - f_j M(g) = 0, an n_j × m_i system
        for r in 0..n.dim_at(j) {
            for c in 0..m.dim_at(i) {
                let mut eq = vec![field.zero(); vars];
                for k in 0..n.dim_at(i) {
                    let a = na.get(r, k);
                    if !a.is_zero() {
                        let idx = var(i, k, c);
                        eq[idx] = eq[idx].add(a);
                    }
                }
                for k in 0..m.dim_at(j) {
                    let b = ma.get(k, c);
                    if !b.is_zero() {
                        let idx = var(j, r, k);
                        eq[idx] = eq[idx].sub(b);
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(field, vars)
    } else {
        Mat::from_rows(field, rows.len(), vars, rows)?.kernel()
    };
    Ok(HomSpace { source: m.clone(), target: n.clone(), space, offsets })
}

/// Submodule spanned at each vertex by the given subspace, with its inclusion.
pub fn submodule(m: &Arc<ModuleRep>, spaces: &[Subspace]) -> Result<(Arc<ModuleRep>, ModMap)> {
    let field = m.field();
    let gens = m.algebra().generators();
    let mut acts = Vec::with_capacity(gens.len());
    for (g, &(i, j)) in gens.iter().enumerate() {
        let mut cols = Vec::new();
        for b in spaces[i].basis() {
            let img = m.act(g).mul_vec(b);
            let c = spaces[j]
                .coords(&img)
                .ok_or_else(|| Error::Precondition("subspaces are not closed under the action".into()))?;
            cols.push(c);
        }
        acts.push(Mat::from_columns(field, spaces[j].dim(), &cols));
    }
    let dims = spaces.iter().map(Subspace::dim).collect();
    let sub = Arc::new(ModuleRep::new_unchecked(m.algebra().clone(), dims, acts));
    let mats = spaces.iter().map(Subspace::basis_matrix).collect();
    let inc = ModMap { source: sub.clone(), target: m.clone(), mats };
    Ok((sub, inc))
}

/// Quotient by per-vertex subspaces, with the canonical projection.
pub fn quotient_module(m: &Arc<ModuleRep>, spaces: &[Subspace]) -> Result<(Arc<ModuleRep>, ModMap)> {
    let field = m.field();
    let gens = m.algebra().generators();
    let mut acts = Vec::with_capacity(gens.len());
    for (g, &(i, j)) in gens.iter().enumerate() {
        for b in spaces[i].basis() {
            if !spaces[j].contains(&m.act(g).mul_vec(b)) {
                return Err(Error::Precondition("subspaces are not closed under the action".into()));
            }
        }
        let cols: Vec<Vec<Scalar>> = spaces[i]
            .non_pivots()
            .into_iter()
            .map(|c| spaces[j].quotient_coords(&m.act(g).col(c)))
            .collect();
        acts.push(Mat::from_columns(field, m.dim_at(j) - spaces[j].dim(), &cols));
    }
    let dims = spaces.iter().enumerate().map(|(v, s)| m.dim_at(v) - s.dim()).collect();
    let q = Arc::new(ModuleRep::new_unchecked(m.algebra().clone(), dims, acts));
    let mats = spaces.iter().map(Subspace::quotient_matrix).collect();
    let proj = ModMap { source: m.clone(), target: q.clone(), mats };
    Ok((q, proj))
}

pub fn kernel_module(f: &ModMap) -> Result<(Arc<ModuleRep>, ModMap)> {
    let spaces: Vec<Subspace> = f.mats.iter().map(Mat::kernel).collect();
    submodule(&f.source, &spaces)
}

pub fn image_module(f: &ModMap) -> Result<(Arc<ModuleRep>, ModMap)> {
    let spaces: Vec<Subspace> = f.mats.iter().map(Mat::column_space).collect();
    submodule(&f.target, &spaces)
}

pub fn cokernel_module(f: &ModMap) -> Result<(Arc<ModuleRep>, ModMap)> {
    let spaces: Vec<Subspace> = f.mats.iter().map(Mat::column_space).collect();
    quotient_module(&f.target, &spaces)
}

/// Direct sum with injections and projections.
pub struct DirectSum {
    pub module: Arc<ModuleRep>,
    pub injections: Vec<ModMap>,
    pub projections: Vec<ModMap>,
}

pub fn direct_sum(parts: &[Arc<ModuleRep>]) -> Result<DirectSum> {
    let first = parts
        .first()
        .ok_or_else(|| Error::Input("direct sum of no modules; use ModuleRep::zero".into()))?;
    let alg = first.algebra().clone();
    if parts.iter().any(|p| !same_algebra(p.algebra(), &alg)) {
        return Err(Error::Input("direct sum over different algebras".into()));
    }
    let f = alg.field();
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dim_at(v)).sum()).collect();
    let acts = (0..alg.generators().len())
        .map(|g| Mat::block_diag(f, &parts.iter().map(|p| p.act(g)).collect::<Vec<_>>()))
        .collect();
    let module = Arc::new(ModuleRep::new_unchecked(alg, dims.clone(), acts));
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offs = vec![0usize; nv];
    for p in parts {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..nv {
            let mut i = Mat::zeros(f, dims[v], p.dim_at(v));
            i.set_block(offs[v], 0, &Mat::identity(f, p.dim_at(v)));
            proj.push(i.transpose());
            inj.push(i);
            offs[v] += p.dim_at(v);
        }
        injections.push(ModMap { source: p.clone(), target: module.clone(), mats: inj });
        projections.push(ModMap { source: module.clone(), target: p.clone(), mats: proj });
    }
    Ok(DirectSum { module, injections, projections })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{path_algebra, Quiver};
    use crate::algebra::structure::{projective, simple};

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(path_algebra(Field::Rationals, q, &[]).unwrap())
    }

    #[test]
    fn hom_examples_a2() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0).unwrap());
        let s1 = Arc::new(simple(&a, 0).unwrap());
        let s2 = Arc::new(simple(&a, 1).unwrap());
        assert_eq!(hom_module(&p1, &s1).unwrap().dim(), 1);
        assert_eq!(hom_module(&p1, &s2).unwrap().dim(), 0);
        assert_eq!(hom_module(&s2, &s2).unwrap().dim(), 1);
        assert_eq!(hom_module(&s2, &p1).unwrap().dim(), 1);
    }

    #[test]
    fn kernel_of_top_projection_is_s2() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0).unwrap());
        let s1 = Arc::new(simple(&a, 0).unwrap());
        let h = hom_module(&p1, &s1).unwrap();
        let (k, inc) = kernel_module(&h.basis_map(0)).unwrap();
        assert_eq!(k.dims(), &[0, 1]);
        assert!(inc.intertwines());
    }

    #[test]
    fn compose_with_identity() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0).unwrap());
        let s1 = Arc::new(simple(&a, 0).unwrap());
        let f = hom_module(&p1, &s1).unwrap().basis_map(0);
        assert_eq!(f.then(&ModMap::identity(s1.clone())).unwrap(), f);
        assert_eq!(ModMap::identity(p1).then(&f).unwrap(), f);
    }

    #[test]
    fn bad_module_rejected() {
        let a = a2();
        let f = Field::Rationals;
        assert!(ModuleRep::new(a.clone(), vec![1, 1], vec![Mat::zeros(f, 2, 1)]).is_err());
        assert!(ModuleRep::new(a, vec![1], vec![]).is_err());
    }
}
