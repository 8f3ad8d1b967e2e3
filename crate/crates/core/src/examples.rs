//! Built-in algebras used by tests, the acceptance suite and the CLI.

use std::sync::Arc;

use crate::algebra::{path_algebra, projective, Algebra, ModuleRep, Quiver};
use crate::error::Result;
use crate::exactla::{Field, Mat};

fn words(ws: &[&str]) -> Vec<Vec<String>> {
    ws.iter().map(|w| w.split(' ').map(str::to_string).collect()).collect()
}

/// `1 → 2` with arrow `a`.
pub fn a2(field: Field) -> Arc<Algebra> {
    let q = Quiver::new(&["1", "2"], &[("a", "1", "2")]).expect("valid quiver");
    Arc::new(path_algebra(field, q, &[]).expect("finite"))
}

/// `1 → 2 → 3` with arrows `a`, `b`, optionally with `ab = 0`.
pub fn a3(field: Field, radical_square_zero: bool) -> Arc<Algebra> {
    let q = Quiver::new(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).expect("valid quiver");
    let rels = if radical_square_zero { words(&["a b"]) } else { Vec::new() };
    Arc::new(path_algebra(field, q, &rels).expect("finite"))
}

/// The cyclic Nakayama algebra on four vertices with all paths of length 5 zero.
pub fn nakayama4(field: Field) -> Arc<Algebra> {
    let q = Quiver::new(
        &["1", "2", "3", "4"],
        &[("alpha", "1", "2"), ("beta", "2", "3"), ("gamma", "3", "4"), ("delta", "4", "1")],
    )
    .expect("valid quiver");
    let rels = words(&[
        "alpha beta gamma delta alpha",
        "beta gamma delta alpha beta",
        "gamma delta alpha beta gamma",
        "delta alpha beta gamma delta",
    ]);
    Arc::new(path_algebra(field, q, &rels).expect("finite"))
}

/// The cyclic Nakayama algebra on `n` vertices with arrows `x1, …, xn`
/// (`xk: k → k+1`) and every path of length `len` zero. Self-injective.
pub fn cyclic_nakayama(field: Field, n: usize, len: usize) -> Result<Arc<Algebra>> {
    let names: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    let arrows: Vec<(String, String, String)> =
        (0..n).map(|k| (format!("x{}", k + 1), names[k].clone(), names[(k + 1) % n].clone())).collect();
    let vs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ars: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let q = Quiver::new(&vs, &ars)?;
    let rels: Vec<Vec<String>> =
        (0..n).map(|start| (0..len).map(|k| format!("x{}", (start + k) % n + 1)).collect()).collect();
    Ok(Arc::new(path_algebra(field, q, &rels)?))
}

/// The uniserial module with top at vertex `v` and Loewy length `len` over
/// a cyclic Nakayama quiver whose arrow `k` goes from `k` to `k+1`.
pub fn uniserial(a: &Arc<Algebra>, v: usize, len: usize) -> Result<ModuleRep> {
    let n = a.vertex_count();
    let f = a.field();
    let mut dims = vec![0; n];
    for k in 0..len {
        dims[(v + k) % n] += 1;
    }
    // Only valid while each vertex occurs at most once.
    let acts = a
        .generators()
        .iter()
        .map(|&(s, t)| {
            let mut m = Mat::zeros(f, dims[t], dims[s]);
            let pos_s = (s + n - v) % n;
            if dims[s] == 1 && dims[t] == 1 && pos_s + 1 < len {
                m.set(0, 0, f.one());
            }
            m
        })
        .collect();
    ModuleRep::new(a.clone(), dims, acts)
}

/// The data of the worked Nakayama example: the algebra, `P1`, `P3` and `Y = 1/2`.
pub struct NakayamaExample {
    pub algebra: Arc<Algebra>,
    pub p1: Arc<ModuleRep>,
    pub p3: Arc<ModuleRep>,
    pub y: Arc<ModuleRep>,
}

pub fn nakayama_example(field: Field) -> Result<NakayamaExample> {
    let algebra = nakayama4(field);
    let p1 = Arc::new(projective(&algebra, 0)?);
    let p3 = Arc::new(projective(&algebra, 2)?);
    let y = Arc::new(uniserial(&algebra, 0, 2)?);
    Ok(NakayamaExample { algebra, p1, p3, y })
}
