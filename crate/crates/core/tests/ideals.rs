mod common;

use common::{algebra, f5, zoo};
use proptest::prelude::*;
use tiltkit::catideal::{approximation, approximation_failure, end_ring, lemma_ann_verify, IdealKind, Side, Subcat};
use tiltkit::category::{hom_dim, LinCat, Mor, Obj};
use tiltkit::exactla::{Mat, Scalar, Subspace};

fn idx() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..4)
}

/// L(a, b) at object level: f with f·h = 0 for every basis h: b → M.
fn oracle_l<C: LinCat>(c: &C, a: &Obj, b: &Obj, m: &Obj) -> Subspace {
    let n = hom_dim(c, a, b);
    let hs = Mor::basis_all(c, b, m);
    let rows: Vec<Vec<Scalar>> = Mor::basis_all(c, a, b).iter().map(|f| hs.iter().flat_map(|h| f.then(c, h).v).collect()).collect();
    kernel_of_rows(c, n, rows)
}

/// R(a, b): f with g·f = 0 for every basis g: M → a.
fn oracle_r<C: LinCat>(c: &C, a: &Obj, b: &Obj, m: &Obj) -> Subspace {
    let n = hom_dim(c, a, b);
    let gs = Mor::basis_all(c, m, a);
    let rows: Vec<Vec<Scalar>> = Mor::basis_all(c, a, b).iter().map(|f| gs.iter().flat_map(|g| g.then(c, f).v).collect()).collect();
    kernel_of_rows(c, n, rows)
}

/// Kernel of the map sending basis vector k to `images[k]`.
fn kernel_of_rows<C: LinCat>(c: &C, n: usize, images: Vec<Vec<Scalar>>) -> Subspace {
    let width = images.first().map_or(0, Vec::len);
    if width == 0 {
        return Subspace::full(c.field(), n);
    }
    Mat::from_rows(c.field(), n, width, images).unwrap().transpose().kernel()
}

/// F(a, b): span of p·q over bases of Hom(a, M) and Hom(M, b).
fn oracle_f<C: LinCat>(c: &C, a: &Obj, b: &Obj, m: &Obj) -> Subspace {
    let qs = Mor::basis_all(c, m, b);
    let vecs: Vec<Vec<Scalar>> = Mor::basis_all(c, a, m).iter().flat_map(|p| qs.iter().map(|q| p.then(c, q).v).collect::<Vec<_>>()).collect();
    Subspace::span(c.field(), hom_dim(c, a, b), &vecs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lemma_clauses_and_oracles(which in 0usize..4, mi in idx(), ai in idx(), bi in idx()) {
        let z = zoo(algebra(which, f5()));
        let c = &z.c;
        let m = z.pick_nonzero(&mi, 6);
        let (a, b) = (z.pick(&ai, 6), z.pick(&bi, 6));
        let d = Subcat::new(m.clone());
        let rep = lemma_ann_verify(c, &a, &b, &d);
        prop_assert!(rep.all_pass(), "{:?}", rep.failures());

        let l = d.space(c, IdealKind::L, &a, &b);
        let r = d.space(c, IdealKind::R, &a, &b);
        let f = d.space(c, IdealKind::F, &a, &b);
        prop_assert_eq!(&l, &oracle_l(c, &a, &b, &m));
        prop_assert_eq!(&r, &oracle_r(c, &a, &b, &m));
        prop_assert_eq!(&f, &oracle_f(c, &a, &b, &m));
        let i = d.space(c, IdealKind::I, &a, &b);
        let j = d.space(c, IdealKind::J, &a, &b);
        prop_assert!(i.is_subset(&l) && i.is_subset(&f));
        prop_assert!(j.is_subset(&r) && j.is_subset(&f));
        prop_assert_eq!(i, l.intersect(&f));
        prop_assert_eq!(j, r.intersect(&f));
    }

    #[test]
    fn ideals_are_two_sided(which in 0usize..4, mi in idx(), ai in idx(), bi in idx(), a2i in idx(), b2i in idx()) {
        let z = zoo(algebra(which, f5()));
        let c = &z.c;
        let d = Subcat::new(z.pick_nonzero(&mi, 6));
        let (a, b, a2, b2) = (z.pick(&ai, 5), z.pick(&bi, 5), z.pick(&a2i, 5), z.pick(&b2i, 5));
        for kind in IdealKind::ALL {
            let s = d.space(c, kind, &a, &b);
            let target = d.space(c, kind, &a2, &b);
            let target2 = d.space(c, kind, &a, &b2);
            for v in s.basis() {
                let f = Mor::new(c, a.clone(), b.clone(), v.clone());
                for g in Mor::basis_all(c, &a2, &a) {
                    prop_assert!(target.contains(&g.then(c, &f).v), "{} not closed on the left", kind);
                }
                for h in Mor::basis_all(c, &b, &b2) {
                    prop_assert!(target2.contains(&f.then(c, &h).v), "{} not closed on the right", kind);
                }
            }
        }
    }

    #[test]
    fn ideals_depend_only_on_add(which in 0usize..4, mi in idx(), ai in idx(), bi in idx()) {
        let z = zoo(algebra(which, f5()));
        let c = &z.c;
        let m = z.pick_nonzero(&mi, 6);
        let (a, b) = (z.pick(&ai, 6), z.pick(&bi, 6));
        let d1 = Subcat::new(m.clone());
        let d2 = Subcat::new(m.power(2));
        for kind in IdealKind::ALL {
            prop_assert_eq!(d1.space(c, kind, &a, &b), d2.space(c, kind, &a, &b));
        }
        // The object-level oracle also ignores multiplicities.
        prop_assert_eq!(oracle_f(c, &a, &b, &m.power(2)), d1.space(c, IdealKind::F, &a, &b));
    }

    #[test]
    fn approximations_are_approximations(which in 0usize..4, mi in idx(), xi in idx()) {
        let z = zoo(algebra(which, f5()));
        let c = &z.c;
        let d = Subcat::new(z.pick_nonzero(&mi, 6));
        let x = z.pick(&xi, 6);
        for side in [Side::Left, Side::Right] {
            let f = approximation(c, &x, &d, side);
            prop_assert!(approximation_failure(c, &f, &d, side).is_none());
        }
        // The zero map is an approximation only when nothing needs to factor.
        let zero = Mor::zero(c, &x, &Obj::zero());
        let needs = d.generators().iter().any(|&g| hom_dim(c, &x, &Obj::atom(g)) > 0);
        prop_assert_eq!(approximation_failure(c, &zero, &d, Side::Left).is_some(), needs);
    }

    #[test]
    fn end_rings_are_rings(which in 0usize..4, mi in idx(), oi in idx(), k in 0usize..6, x in prop::collection::vec(0i64..5, 1..30), y in prop::collection::vec(0i64..5, 1..30)) {
        let z = zoo(algebra(which, f5()));
        let c = &z.c;
        let d = Subcat::new(z.pick_nonzero(&mi, 6));
        let o = z.pick_nonzero(&oi, 5);
        let kind = [None, Some(IdealKind::L), Some(IdealKind::R), Some(IdealKind::F), Some(IdealKind::I), Some(IdealKind::J)][k];
        let sq = end_ring(c, &o, kind, &d).unwrap();
        sq.ring.check_axioms().unwrap();
        let ideal = kind.map_or_else(|| Subspace::zero(c.field(), hom_dim(c, &o, &o)), |k| d.space(c, k, &o, &o));
        prop_assert_eq!(sq.dim() + ideal.dim(), hom_dim(c, &o, &o));
        let n = hom_dim(c, &o, &o);
        let u: Vec<Scalar> = (0..n).map(|i| c.field().from_i64(x[i % x.len()])).collect();
        let v: Vec<Scalar> = (0..n).map(|i| c.field().from_i64(y[i % y.len()])).collect();
        let uv = Mor::new(c, o.clone(), o.clone(), u.clone()).then(c, &Mor::new(c, o.clone(), o.clone(), v.clone()));
        let (cu, cv, cuv) = (sq.coords(&u).unwrap(), sq.coords(&v).unwrap(), sq.coords(&uv.v).unwrap());
        prop_assert_eq!(sq.ring.mul(&cu, &cv), cuv);
        prop_assert_eq!(sq.coords(&Mor::identity(c, &o).v).unwrap(), sq.ring.unit.clone());
    }
}
