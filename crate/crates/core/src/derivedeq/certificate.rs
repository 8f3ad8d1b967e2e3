use crate::catideal::RingPresentation;
use crate::category::Vector;
use crate::error::{Error, Result};
use crate::exactla::{combine, unit_vec, Field, Mat, Scalar, Solver, Subspace};
use crate::report::{fmt_vec, Check, Report};

/// Record of a derived equivalence between `left_ring` and `right_ring`,
/// witnessed by the surjections `theta` and `phi` out of the chain-map ring
/// of a tilting complex with a common kernel.
#[derive(Clone, Debug)]
pub struct EquivCertificate {
    pub theorem: String,
    pub checks: Report,
    /// The ring on the `X` side.
    pub left_ring: RingPresentation,
    /// The ring on the `Y` side.
    pub right_ring: RingPresentation,
    /// Endomorphisms of the tilting complex in the homotopy category of the quotient.
    pub homotopy_ring: RingPresentation,
    pub left_ideal_dim: usize,
    pub right_ideal_dim: usize,
    pub chain_dim: usize,
    /// Columns are the images of the chain-map basis.
    pub theta: Mat,
    pub phi: Mat,
    /// Kernel bases, as chain maps in ambient degree-0 coordinates.
    pub ker_theta: Vec<Vector>,
    pub ker_phi: Vec<Vector>,
    pub provenance: Vec<(String, String)>,
}

impl EquivCertificate {
    pub fn passes(&self) -> bool {
        self.checks.all_pass()
    }
}

pub(crate) struct MapComparison {
    pub checks: Report,
    pub theta: Mat,
    pub phi: Mat,
    pub ker_theta: Vec<Vector>,
    pub ker_phi: Vec<Vector>,
}

pub(crate) type LinMap<'a> = &'a dyn Fn(&[Scalar]) -> Result<Vector>;

/// Compares two linear maps out of the ring `z` (ambient coordinates, with
/// the given product and unit) into presented rings.
pub(crate) fn compare_maps(
    field: Field,
    z: &Subspace,
    mul: &dyn Fn(&[Scalar], &[Scalar]) -> Vector,
    unit: &[Scalar],
    theta: LinMap<'_>,
    theta_ring: &RingPresentation,
    phi: LinMap<'_>,
    phi_ring: &RingPresentation,
) -> Result<MapComparison> {
    let k = z.dim();
    let basis = z.basis();
    let tcols: Vec<Vector> = basis.iter().map(|b| theta(b)).collect::<Result<_>>()?;
    let pcols: Vec<Vector> = basis.iter().map(|b| phi(b)).collect::<Result<_>>()?;
    let tm = Mat::from_columns(field, theta_ring.dim(), &tcols);
    let pm = Mat::from_columns(field, phi_ring.dim(), &pcols);
    let mut checks = Report::new();

    let t_rank = tm.rank();
    let p_rank = pm.rank();
    checks.push(Check::when("theta surjective", t_rank == theta_ring.dim(), || {
        format!("rank {} < {}", t_rank, theta_ring.dim())
    }));
    checks.push(Check::when("phi surjective", p_rank == phi_ring.dim(), || {
        format!("rank {} < {}", p_rank, phi_ring.dim())
    }));

    let kt = tm.kernel();
    let kp = pm.kernel();
    checks.push(Check::when("Ker theta = Ker phi", kt == kp, || {
        let w = kt.basis().iter().find(|v| !kp.contains(v)).or_else(|| kp.basis().iter().find(|v| !kt.contains(v)));
        format!("dims {} and {}; witness {}", kt.dim(), kp.dim(), w.map(|v| fmt_vec(v)).unwrap_or_default())
    }));

    let zc = |v: &[Scalar]| -> Result<Vector> {
        z.coords(v).ok_or_else(|| Error::Internal("product of chain maps is not a chain map".into()))
    };
    let mut t_mult = None;
    let mut p_mult = None;
    for i in 0..k {
        for j in 0..k {
            let prod = zc(&mul(&basis[i], &basis[j]))?;
            if t_mult.is_none() && tm.mul_vec(&prod) != theta_ring.mul(&tcols[i], &tcols[j]) {
                t_mult = Some((i, j));
            }
            if p_mult.is_none() && pm.mul_vec(&prod) != phi_ring.mul(&pcols[i], &pcols[j]) {
                p_mult = Some((i, j));
            }
        }
    }
    let pair = |w: Option<(usize, usize)>| move || w.map(|(i, j)| format!("basis pair ({i}, {j})")).unwrap_or_default();
    checks.push(Check::when("theta multiplicative", t_mult.is_none(), pair(t_mult)));
    checks.push(Check::when("phi multiplicative", p_mult.is_none(), pair(p_mult)));
    let u = zc(unit)?;
    let tu = tm.mul_vec(&u);
    let pu = pm.mul_vec(&u);
    checks.push(Check::when("theta unital", tu == theta_ring.unit, || fmt_vec(&tu)));
    checks.push(Check::when("phi unital", pu == phi_ring.unit, || fmt_vec(&pu)));

    // ψ with ψ∘φ = θ, defined through a section of φ.
    if p_rank == phi_ring.dim() {
        let solver = Solver::new(&pm);
        let sect: Vec<Vector> = (0..phi_ring.dim())
            .map(|a| solver.solve(&unit_vec(field, phi_ring.dim(), a)).expect("phi is surjective"))
            .collect();
        let psi = tm.mul(&Mat::from_columns(field, k, &sect));
        checks.push(Check::when("induced map bijective", psi.is_invertible(), || format!("{psi:?}")));
        let cols: Vec<Vector> = (0..psi.cols()).map(|a| psi.col(a)).collect();
        let mut bad = None;
        'outer: for a in 0..cols.len() {
            for b in 0..cols.len() {
                if psi.mul_vec(&phi_ring.constants[a][b]) != theta_ring.mul(&cols[a], &cols[b]) {
                    bad = Some((a, b));
                    break 'outer;
                }
            }
        }
        let unital = psi.mul_vec(&phi_ring.unit) == theta_ring.unit;
        checks.push(Check::when("induced map multiplicative and unital", bad.is_none() && unital, || {
            bad.map(|(a, b)| format!("basis pair ({a}, {b})")).unwrap_or_else(|| "unit".into())
        }));
    } else {
        checks.push(Check::fail("induced map bijective", "phi is not surjective"));
    }

    let amb = |s: &Subspace| -> Vec<Vector> { s.basis().iter().map(|c| combine(field, z.ambient(), c, basis)).collect() };
    Ok(MapComparison { checks, theta: tm, phi: pm, ker_theta: amb(&kt), ker_phi: amb(&kp) })
}
