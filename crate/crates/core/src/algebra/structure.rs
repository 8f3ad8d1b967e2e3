use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar, Subspace};

use super::module::{direct_sum, hom_module, quotient_module, submodule, ModMap, ModuleRep};
use super::quiver::{Algebra, Path, Presentation};

fn presentation(a: &Algebra) -> Result<&Presentation> {
    a.presentation()
        .ok_or_else(|| Error::Input("operation needs a quiver presentation".into()))
}

fn check_vertex(a: &Algebra, v: usize) -> Result<()> {
    if v >= a.vertex_count() {
        return Err(Error::Input(format!("unknown vertex index {v}")));
    }
    Ok(())
}

/// Indecomposable projective at `v`: paths starting at `v`, arrows acting by
/// appending on the right.
pub fn projective(a: &Arc<Algebra>, v: usize) -> Result<ModuleRep> {
    let p = presentation(a)?;
    check_vertex(a, v)?;
    let field = a.field();
    let nv = a.vertex_count();
    let mut at: Vec<Vec<&Path>> = vec![Vec::new(); nv];
    for path in p.paths.iter().filter(|q| q.source == v) {
        at[path.target].push(path);
    }
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let acts = p
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            let mut m = Mat::zeros(field, dims[arr.target], dims[arr.source]);
            for (c, q) in at[arr.source].iter().enumerate() {
                let mut ext = q.arrows.clone();
                ext.push(ai);
                if let Some(r) = at[arr.target].iter().position(|x| x.arrows == ext) {
                    m.set(r, c, field.one());
                }
            }
            m
        })
        .collect();
    Ok(ModuleRep::new_unchecked(a.clone(), dims, acts))
}

/// Indecomposable injective at `v`: at vertex `w` the dual of the paths
/// from `w` to `v`.
pub fn injective(a: &Arc<Algebra>, v: usize) -> Result<ModuleRep> {
    let p = presentation(a)?;
    check_vertex(a, v)?;
    let field = a.field();
    let nv = a.vertex_count();
    let mut at: Vec<Vec<&Path>> = vec![Vec::new(); nv];
    for path in p.paths.iter().filter(|q| q.target == v) {
        at[path.source].push(path);
    }
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let acts = p
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, arr)| {
            // ξ ↦ (q ↦ ξ(α q)) for dual basis vectors
            let mut m = Mat::zeros(field, dims[arr.target], dims[arr.source]);
            for (r, q) in at[arr.target].iter().enumerate() {
                let mut ext = vec![ai];
                ext.extend_from_slice(&q.arrows);
                if let Some(c) = at[arr.source].iter().position(|x| x.arrows == ext && x.source == arr.source) {
                    m.set(r, c, field.one());
                }
            }
            m
        })
        .collect();
    Ok(ModuleRep::new_unchecked(a.clone(), dims, acts))
}

pub fn simple(a: &Arc<Algebra>, v: usize) -> Result<ModuleRep> {
    presentation(a)?;
    check_vertex(a, v)?;
    let field = a.field();
    let mut dims = vec![0; a.vertex_count()];
    dims[v] = 1;
    let acts = a
        .generators()
        .iter()
        .map(|&(s, t)| Mat::zeros(field, dims[t], dims[s]))
        .collect();
    Ok(ModuleRep::new_unchecked(a.clone(), dims, acts))
}

/// The regular module as the direct sum of the indecomposable projectives.
pub fn regular_module(a: &Arc<Algebra>) -> Result<ModuleRep> {
    let parts = (0..a.vertex_count())
        .map(|v| projective(a, v).map(Arc::new))
        .collect::<Result<Vec<_>>>()?;
    Ok((*direct_sum(&parts)?.module).clone())
}

fn need_quiver(m: &ModuleRep) -> Result<()> {
    presentation(m.algebra()).map(|_| ())
}

/// Per-vertex span of all arrow images.
pub fn radical_spaces(m: &ModuleRep) -> Result<Vec<Subspace>> {
    need_quiver(m)?;
    let f = m.field();
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::zero(f, d)).collect();
    for (g, &(_, t)) in m.algebra().generators().iter().enumerate() {
        spaces[t] = spaces[t].sum(&m.act(g).column_space());
    }
    Ok(spaces)
}

/// Per-vertex joint kernel of all outgoing arrows.
pub fn socle_spaces(m: &ModuleRep) -> Result<Vec<Subspace>> {
    need_quiver(m)?;
    let f = m.field();
    let mut spaces: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::full(f, d)).collect();
    for (g, &(s, _)) in m.algebra().generators().iter().enumerate() {
        spaces[s] = spaces[s].intersect(&m.act(g).kernel());
    }
    Ok(spaces)
}

pub fn radical(m: &Arc<ModuleRep>) -> Result<(Arc<ModuleRep>, ModMap)> {
    submodule(m, &radical_spaces(m)?)
}

pub fn socle(m: &Arc<ModuleRep>) -> Result<(Arc<ModuleRep>, ModMap)> {
    submodule(m, &socle_spaces(m)?)
}

pub fn top(m: &Arc<ModuleRep>) -> Result<(Arc<ModuleRep>, ModMap)> {
    quotient_module(m, &radical_spaces(m)?)
}

/// Dimension vectors of the successive radical layers rad^i M / rad^{i+1} M.
pub fn radical_layers(m: &Arc<ModuleRep>) -> Result<Vec<Vec<usize>>> {
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while !cur.is_zero() {
        let spaces = radical_spaces(&cur)?;
        layers.push(cur.dims().iter().zip(&spaces).map(|(d, s)| d - s.dim()).collect());
        cur = submodule(&cur, &spaces)?.0;
    }
    Ok(layers)
}

/// Loewy layers written top to bottom, e.g. `4/1/2/3`.
pub fn loewy_label(m: &Arc<ModuleRep>) -> Result<String> {
    let a = m.algebra();
    let layers = radical_layers(m)?;
    if layers.is_empty() {
        return Ok("0".into());
    }
    let parts: Vec<String> = layers
        .iter()
        .map(|layer| {
            let mut names = Vec::new();
            for (v, &k) in layer.iter().enumerate() {
                for _ in 0..k {
                    names.push(a.vertex_name(v));
                }
            }
            names.join(",")
        })
        .collect();
    Ok(parts.join("/"))
}

/// Top multiplicities of a module (dimension vector of M / rad M).
pub fn top_vector(m: &ModuleRep) -> Result<Vec<usize>> {
    let spaces = radical_spaces(m)?;
    Ok(m.dims().iter().zip(&spaces).map(|(d, s)| d - s.dim()).collect())
}

/// M is projective exactly when its dimension equals that of its projective cover.
pub fn is_projective(m: &ModuleRep) -> Result<bool> {
    let a = m.algebra();
    let top = top_vector(m)?;
    let mut cover = 0;
    for (v, &k) in top.iter().enumerate() {
        cover += k * projective(a, v)?.total_dim();
    }
    Ok(cover == m.total_dim())
}

/// Nakayama functor on a projective: at vertex w the dual of Hom(P, P_w),
/// with arrow α: i → j acting by the transpose of precomposition with left
/// multiplication by α.
pub fn nakayama_projective(p: &Arc<ModuleRep>) -> Result<ModuleRep> {
    let a = p.algebra();
    let pres = presentation(a)?;
    if !is_projective(p)? {
        return Err(Error::Precondition("Nakayama functor applied to a non-projective module".into()));
    }
    let field = a.field();
    let nv = a.vertex_count();
    let proj: Vec<Arc<ModuleRep>> = (0..nv).map(|v| projective(a, v).map(Arc::new)).collect::<Result<_>>()?;
    let homs: Vec<_> = proj.iter().map(|pw| hom_module(p, pw)).collect::<Result<_>>()?;
    let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
    let mut acts = Vec::new();
    for (ai, arr) in pres.quiver.arrows.iter().enumerate() {
        let (i, j) = (arr.source, arr.target);
        let left = left_multiplication(a, pres, ai, &proj[j], &proj[i])?;
        // Λ: Hom(P, P_j) → Hom(P, P_i), h ↦ h·L_α
        let mut lam = Mat::zeros(field, dims[i], dims[j]);
        for k in 0..dims[j] {
            let h = homs[j].basis_map(k).then(&left)?;
            let c = homs[i]
                .coords(&h)
                .ok_or_else(|| Error::Internal("composite left the Hom space".into()))?;
            for (r, x) in c.into_iter().enumerate() {
                lam.set(r, k, x);
            }
        }
        acts.push(lam.transpose());
    }
    ModuleRep::new(a.clone(), dims, acts)
}

/// The map P_j → P_i sending a path q to α q.
fn left_multiplication(
    a: &Arc<Algebra>,
    pres: &Presentation,
    arrow: usize,
    pj: &Arc<ModuleRep>,
    pi: &Arc<ModuleRep>,
) -> Result<ModMap> {
    let field = a.field();
    let arr = &pres.quiver.arrows[arrow];
    let (i, j) = (arr.source, arr.target);
    let nv = a.vertex_count();
    let paths_from = |s: usize, w: usize| -> Vec<&Path> {
        pres.paths.iter().filter(|q| q.source == s && q.target == w).collect()
    };
    let mut mats = Vec::new();
    for w in 0..nv {
        let src = paths_from(j, w);
        let tgt = paths_from(i, w);
        let mut m = Mat::zeros(field, tgt.len(), src.len());
        for (c, q) in src.iter().enumerate() {
            let mut ext = vec![arrow];
            ext.extend_from_slice(&q.arrows);
            if let Some(r) = tgt.iter().position(|x| x.arrows == ext) {
                m.set(r, c, field.one());
            }
        }
        mats.push(m);
    }
    ModMap::new(pj.clone(), pi.clone(), mats)
}

/// A quiver automorphism preserving the relation set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverTwist {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl QuiverTwist {
    pub fn new(a: &Algebra, vertex_map: Vec<usize>, arrow_map: Vec<usize>) -> Result<QuiverTwist> {
        let p = presentation(a)?;
        let q = &p.quiver;
        let is_perm = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.len() == n && m.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        if !is_perm(&vertex_map, q.vertex_count()) || !is_perm(&arrow_map, q.arrows.len()) {
            return Err(Error::Input("twist data is not a pair of permutations".into()));
        }
        for (ai, arr) in q.arrows.iter().enumerate() {
            let img = &q.arrows[arrow_map[ai]];
            if img.source != vertex_map[arr.source] || img.target != vertex_map[arr.target] {
                return Err(Error::Input(format!("twist does not respect the endpoints of `{}`", arr.name)));
            }
        }
        let mut rels: Vec<Vec<usize>> = p.relations.clone();
        rels.sort();
        let mut imgs: Vec<Vec<usize>> =
            p.relations.iter().map(|r| r.iter().map(|&x| arrow_map[x]).collect()).collect();
        imgs.sort();
        if rels != imgs {
            return Err(Error::Input("twist does not preserve the relations".into()));
        }
        Ok(QuiverTwist { vertex_map, arrow_map })
    }

    /// Rotation v ↦ v+1 on a cyclic quiver whose arrow k goes from k to k+1.
    pub fn cyclic_rotation(a: &Algebra) -> Result<QuiverTwist> {
        let n = a.vertex_count();
        let q = a.quiver()?;
        let arrow_map: Vec<usize> = q
            .arrows
            .iter()
            .map(|arr| {
                let (s, t) = ((arr.source + 1) % n, (arr.target + 1) % n);
                q.arrows
                    .iter()
                    .position(|b| b.source == s && b.target == t)
                    .ok_or_else(|| Error::Input("quiver is not rotation invariant".into()))
            })
            .collect::<Result<_>>()?;
        QuiverTwist::new(a, (0..n).map(|v| (v + 1) % n).collect(), arrow_map)
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        loop {
            let id_v = cur.vertex_map.iter().enumerate().all(|(i, &x)| i == x);
            let id_a = cur.arrow_map.iter().enumerate().all(|(i, &x)| i == x);
            if id_v && id_a {
                return k;
            }
            cur = cur.compose(self);
            k += 1;
        }
    }

    fn compose(&self, other: &QuiverTwist) -> QuiverTwist {
        QuiverTwist {
            vertex_map: self.vertex_map.iter().map(|&x| other.vertex_map[x]).collect(),
            arrow_map: self.arrow_map.iter().map(|&x| other.arrow_map[x]).collect(),
        }
    }

    /// (FM)_{σ(v)} = M_v and (FM)(τ(α)) = M(α).
    pub fn apply_module(&self, m: &ModuleRep) -> ModuleRep {
        let mut dims = vec![0; m.dims().len()];
        for (v, &d) in m.dims().iter().enumerate() {
            dims[self.vertex_map[v]] = d;
        }
        let mut acts = m.acts().to_vec();
        for (a, act) in m.acts().iter().enumerate() {
            acts[self.arrow_map[a]] = act.clone();
        }
        ModuleRep::new_unchecked(m.algebra().clone(), dims, acts)
    }

    pub fn apply_map(&self, f: &ModMap, source: Arc<ModuleRep>, target: Arc<ModuleRep>) -> ModMap {
        let mut mats = f.mats.clone();
        for (v, m) in f.mats.iter().enumerate() {
            mats[self.vertex_map[v]] = m.clone();
        }
        ModMap { source, target, mats }
    }
}

/// Short dimension-vector description for reports.
pub fn describe_module(m: &ModuleRep) -> String {
    let a = m.algebra();
    let dims: Vec<String> = m
        .dims()
        .iter()
        .enumerate()
        .map(|(v, d)| format!("{}:{}", a.vertex_name(v), d))
        .collect();
    format!("dims[{}]", dims.join(","))
}

pub fn scalar_matrix(m: &Mat) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(Scalar::to_string).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::quiver::{path_algebra, Quiver};
    use crate::exactla::Field;

    fn a2() -> Arc<Algebra> {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).unwrap();
        Arc::new(path_algebra(Field::Rationals, q, &[]).unwrap())
    }

    #[test]
    fn a2_projectives() {
        let a = a2();
        let p1 = Arc::new(projective(&a, 0).unwrap());
        assert_eq!(p1.dims(), &[1, 1]);
        assert_eq!(loewy_label(&p1).unwrap(), "1/2");
        assert_eq!(projective(&a, 1).unwrap().dims(), &[0, 1]);
        let (r, _) = radical(&p1).unwrap();
        assert_eq!(r.dims(), &[0, 1]);
        let (s, _) = socle(&p1).unwrap();
        assert_eq!(s.dims(), &[0, 1]);
        assert!(is_projective(&p1).unwrap());
        assert!(!is_projective(&simple(&a, 0).unwrap()).unwrap());
        assert!(projective(&a, 5).is_err());
    }

    #[test]
    fn socle_of_simple() {
        let a = a2();
        let s = Arc::new(simple(&a, 0).unwrap());
        assert_eq!(socle(&s).unwrap().0.dims(), s.dims());
    }

    #[test]
    fn a2_injectives() {
        let a = a2();
        // I_1 = S1, I_2 = P1
        assert_eq!(injective(&a, 0).unwrap().dims(), &[1, 0]);
        let i2 = Arc::new(injective(&a, 1).unwrap());
        assert_eq!(i2.dims(), &[1, 1]);
        assert_eq!(loewy_label(&i2).unwrap(), "1/2");
        let nu = nakayama_projective(&Arc::new(projective(&a, 0).unwrap())).unwrap();
        assert_eq!(nu.dims(), &[1, 0]);
    }

    #[test]
    fn nakayama_rejects_non_projective() {
        let a = a2();
        let s1 = Arc::new(simple(&a, 0).unwrap());
        assert!(matches!(nakayama_projective(&s1), Err(Error::Precondition(_))));
    }
}
