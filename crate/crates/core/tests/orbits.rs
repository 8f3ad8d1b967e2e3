mod common;

use std::collections::BTreeSet;
use std::sync::Arc;

use common::zoo;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tiltkit::algebra::{projective, QuiverTwist};
use tiltkit::angulate::KbProj;
use tiltkit::catideal::{approximation, Side, Subcat};
use tiltkit::category::{hom_dim, LinCat, ModCat, Mor, Obj};
use tiltkit::examples::nakayama4;
use tiltkit::exactla::Field;
use tiltkit::orbit::{
    check_functor, ideals_ij, is_admissible, orbit_compose, orbit_iso, yoneda_algebra, AdmissibleSet, OrbitCat, OrbitHom, ShiftAuto,
    Twist,
};

/// Admissibility straight from the definition, on an explicit element list.
fn oracle(s: &[i64]) -> bool {
    let has = |x: i64| s.contains(&x);
    has(0) && s.iter().all(|&i| s.iter().all(|&j| s.iter().all(|&k| !has(i + j + k) || has(i + j) == has(j + k))))
}

fn set_from_mask(mask: u32) -> Vec<i64> {
    (-6..=6).filter(|x| x == &0 || mask & (1 << (x + 6)) != 0).collect()
}

fn random_mor<C: LinCat>(c: &C, a: &Obj, b: &Obj, seed: u64) -> Mor {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = (0..hom_dim(c, a, b)).map(|_| c.field().random(&mut rng)).collect();
    Mor::new(c, a.clone(), b.clone(), v)
}

fn idx() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..64, 1..3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn admissibility_matches_the_definition(mask in 0u32..(1 << 13)) {
        let s = set_from_mask(mask);
        prop_assert_eq!(is_admissible(&s.iter().copied().collect::<BTreeSet<_>>()), oracle(&s));
    }
}

/// Every admissible subset of [-6, 6], with each derived set.
#[test]
fn admissible_sets_are_closed() {
    let sets: Vec<Vec<i64>> = (0u32..(1 << 13)).map(set_from_mask).filter(|s| oracle(s)).collect::<BTreeSet<_>>().into_iter().collect();
    assert_eq!(sets.len(), 481);
    for s in sets {
        let phi = AdmissibleSet::new(s.iter().copied()).unwrap();
        let mut derived = vec![phi.negate(), phi.nonnegative(), phi.nonpositive()];
        derived.extend((-4..=4).map(|m| phi.scale(m)));
        derived.extend((3..=4).map(|p| phi.power(p)));
        for d in derived {
            let d = d.unwrap();
            assert!(oracle(&d.elems().collect::<Vec<_>>()), "{:?}: {}", s, d.describe());
        }
    }
}

#[test]
fn intervals_and_a_counterexample() {
    for n in 0..=6 {
        assert!(AdmissibleSet::new(0..=n).is_ok());
    }
    let e = AdmissibleSet::new([0, 1, 2, 4]).unwrap_err().to_string();
    assert!(e.contains("(i, j, k)"), "{e}");
    assert!(AdmissibleSet::multiples(2, 6).describe().contains("truncated"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn graded_composition_is_associative(ai in idx(), bi in idx(), ci in idx(), di in idx(), seed in any::<u64>()) {
        let z = zoo(nakayama4(Field::prime(5).unwrap()));
        let c = &z.c;
        let tw = Twist(QuiverTwist::cyclic_rotation(c.algebra()).unwrap());
        let oc = OrbitCat::new(c, tw, AdmissibleSet::new(0..=3).unwrap());
        let (a, b, cc, d) = (z.pick(&ai, 6), z.pick(&bi, 6), z.pick(&ci, 6), z.pick(&di, 6));
        let f = random_mor(&oc, &a, &b, seed);
        let g = random_mor(&oc, &b, &cc, seed ^ 1);
        let h = random_mor(&oc, &cc, &d, seed ^ 2);
        let lhs = f.then(&oc, &g).then(&oc, &h);
        let rhs = f.then(&oc, &g.then(&oc, &h));
        prop_assert_eq!(&lhs, &rhs);
        // The same products through the component form.
        let (fh, gh, hh) = (OrbitHom::from_mor(&oc, &f), OrbitHom::from_mor(&oc, &g), OrbitHom::from_mor(&oc, &h));
        let l2 = orbit_compose(&oc, &orbit_compose(&oc, &fh, &gh).unwrap(), &hh).unwrap();
        let r2 = orbit_compose(&oc, &fh, &orbit_compose(&oc, &gh, &hh).unwrap()).unwrap();
        prop_assert_eq!(&l2, &r2);
        prop_assert_eq!(l2.to_mor(&oc).unwrap(), lhs);
    }

    #[test]
    fn degree_zero_is_a_ring_embedding(ai in idx(), bi in idx(), ci in idx(), seed in any::<u64>()) {
        let z = zoo(nakayama4(Field::prime(5).unwrap()));
        let c = &z.c;
        let tw = Twist(QuiverTwist::cyclic_rotation(c.algebra()).unwrap());
        let oc = OrbitCat::new(c, tw, AdmissibleSet::new([0, 2]).unwrap());
        let (a, b, cc) = (z.pick(&ai, 6), z.pick(&bi, 6), z.pick(&ci, 6));
        let f = random_mor(c, &a, &b, seed);
        let g = random_mor(c, &b, &cc, seed ^ 1);
        prop_assert_eq!(oc.embed(&f).then(&oc, &oc.embed(&g)), oc.embed(&f.then(c, &g)));
        prop_assert_eq!(oc.embed(&Mor::identity(c, &a)), Mor::identity(&oc, &a));
        prop_assert_eq!(oc.degree_zero(&oc.embed(&f)), Some(f.clone()));
        prop_assert_eq!(oc.embed(&f.add(&f)), oc.embed(&f).add(&oc.embed(&f)));
    }
}

#[test]
fn twist_is_a_strict_functor() {
    let z = zoo(nakayama4(Field::prime(5).unwrap()));
    let tw = Twist(QuiverTwist::cyclic_rotation(z.c.algebra()).unwrap());
    let rep = check_functor(&z.c, &tw, &z.atoms, &[-1, 0, 1, 2]);
    assert!(rep.all_pass(), "{:?}", rep.failures());
}

#[test]
fn orbits_identify_twisted_objects() {
    let z = zoo(nakayama4(Field::Rationals));
    let c = &z.c;
    let tw = Twist(QuiverTwist::cyclic_rotation(c.algebra()).unwrap());
    let oc = OrbitCat::new(c, tw, AdmissibleSet::multiples(1, 3));
    for &a in &z.atoms {
        for i in 1..=3 {
            let (_, _, check) = orbit_iso(&oc, &Obj::atom(a), i).unwrap();
            assert!(check.pass, "{}", check.name);
        }
    }
    // Φ = {0}: the Yoneda algebra is the ordinary endomorphism ring.
    let oc0 = OrbitCat::new(c, Twist(QuiverTwist::cyclic_rotation(c.algebra()).unwrap()), AdmissibleSet::zero());
    let x = Obj(z.projectives.clone());
    assert_eq!(yoneda_algebra(&oc0, &x).unwrap().dim(), hom_dim(c, &x, &x));
}

fn kb_stalks(which: usize) -> (KbProj, Vec<Obj>) {
    let alg = common::algebra(which, common::f5());
    let base = Arc::new(ModCat::new(alg.clone()));
    let ps: Vec<Obj> = (0..alg.vertex_count()).map(|v| Obj::atom(base.atom(projective(&alg, v).unwrap()).unwrap())).collect();
    let kb = KbProj::new(base);
    let stalks = (-1..=1).flat_map(|deg| ps.iter().map(|p| Obj::atom(kb.stalk(p, deg).unwrap())).collect::<Vec<_>>()).collect();
    (kb, stalks)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ideals_match_annihilators_under_the_hypotheses(which in 0usize..3, xi in idx(), mi in idx(), wide in any::<bool>()) {
        let (kb, stalks) = kb_stalks(which);
        let pick = |idx: &[usize]| Obj(idx.iter().map(|&i| stalks[i % stalks.len()].0[0]).collect());
        let (x, m) = (pick(&xi), pick(&mi));
        let phi = if wide { AdmissibleSet::new([0, 1]).unwrap() } else { AdmissibleSet::zero() };
        let oc = OrbitCat::new(&kb, ShiftAuto, phi);
        let f = approximation(&kb, &x, &Subcat::new(m.clone()), Side::Left);
        let t = kb.cone_triangle(&f).unwrap();
        let ij = ideals_ij(&oc, &t, &m).unwrap();
        if ij.hypotheses_i {
            prop_assert_eq!(&ij.i, &ij.i_d);
        }
        if ij.hypotheses_j {
            prop_assert_eq!(&ij.j, &ij.j_d);
        }
        if ij.hypotheses_i && ij.hypotheses_j {
            prop_assert!(ij.report.all_pass(), "{:?}", ij.report.failures());
        }
    }
}
