use symtrack::nilgroup::PointedSet;
use symtrack::quadratic::carrier::{AbGroup, Elem, GroupCarrier, Hom};
use symtrack::quadratic::instances::{
    doubling_weak_track, lemma_tec_doubling_data, lemma_tec_nil_data, reduced_tensor_square, sample_abelian_groups,
    tensor_square,
};
use symtrack::quadratic::qpm::n_star_is_homomorphism;
use symtrack::quadratic::*;
use symtrack::{binom2, Check};

fn failures(checks: &[Check]) -> Vec<String> {
    checks.iter().filter(|c| !c.passed()).map(|c| format!("{}: {:?}", c.name, c.witness)).collect()
}

fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

fn ab() -> PointedSet {
    PointedSet::new(["a", "b"]).unwrap()
}

#[test]
fn z_nil_square_group_passes() {
    let x = z_nil_square_group();
    assert!(all_pass(&validate_square_group(&x)), "{:?}", failures(&validate_square_group(&x)));
    let z = |n: i64| Elem::Ab(vec![n]);
    assert_eq!(x.h.cross_effect(&z(2), &z(3)), vec![6]);
    assert_eq!(x.h.eval(&z(5)), vec![10]);
    assert_eq!(x.t(&[4]), vec![-4]);
    assert_eq!(x.t(&x.t(&[4])), vec![4]);
}

#[test]
fn z_nil_with_identity_p_fails() {
    let mut x = z_nil_square_group();
    x.p = Hom::new(GroupCarrier::Ab(x.xee.clone()), x.xe.clone(), vec![Elem::Ab(vec![1])]).unwrap();
    let checks = validate_square_group(&x);
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed()).collect();
    assert!(failed.iter().any(|c| c.name.starts_with("(1)") || c.name.starts_with("(3)")));
    assert!(failed.iter().all(|c| c.witness.is_some()));
}

#[test]
fn abelian_groups_are_square_groups() {
    for a in sample_abelian_groups() {
        let x = abelian_square_group(a.clone());
        assert!(all_pass(&validate_square_group(&x)), "{a:?}");
        let neg = SquareGroupMorphism {
            fe: Hom::new(x.xe.clone(), x.xe.clone(), x.xe.generators().iter().map(|g| x.xe.neg(g)).collect())
                .unwrap(),
            fee: Hom::identity(&GroupCarrier::Ab(x.xee.clone())),
        };
        assert!(all_pass(&validate_square_group_morphism(&x, &x, &neg)));
        assert!(all_pass(&z_tensor_action_check(&x, &[SquareGroupMorphism::identity(&x), neg])));
    }
}

#[test]
fn z_tensor_action_on_z_nil() {
    let x = z_nil_square_group();
    let ee = GroupCarrier::Ab(x.xee.clone());
    // H(-x) = binom2(-n) is not a linear image of binom2(n), so -1 is no endomorphism.
    let neg = SquareGroupMorphism {
        fe: Hom::new(x.xe.clone(), x.xe.clone(), vec![Elem::Ab(vec![-1])]).unwrap(),
        fee: Hom::identity(&ee),
    };
    assert!(!all_pass(&validate_square_group_morphism(&x, &x, &neg)));
    let zero = SquareGroupMorphism { fe: Hom::zero(&x.xe, &x.xe), fee: Hom::zero(&ee, &ee) };
    assert!(all_pass(&validate_square_group_morphism(&x, &x, &zero)));
    let checks = z_tensor_action_check(&x, &[SquareGroupMorphism::identity(&x), zero]);
    assert!(all_pass(&checks), "{:?}", failures(&checks));
    for n in -3..4 {
        assert_eq!(x.n_star(n, &Elem::Ab(vec![1])), Elem::Ab(vec![n]));
    }
}

#[test]
fn qpm_eta_passes() {
    let c = qpm_eta();
    assert!(all_pass(&validate_qpm(&c)), "{:?}", failures(&validate_qpm(&c)));
    assert!(all_pass(&derived_identities(&c)));
    let e = c.c0.generator(0);
    let pee = c.p_of(&c.cross(&e, &e));
    assert!(!c.c1.is_zero(&pee));
    assert!(c.c1.is_zero(&c.c1.times(&pee, 2)));
    let y = c.c1.generator(0);
    for n in -3..4 {
        assert_eq!(c.n_star_1(n, &y), c.c1.times(&y, n));
    }
}

#[test]
fn n_star_examples() {
    let c = qpm_nil(&ab());
    let a = c.c0.generator(0);
    for n in -3..5 {
        assert_eq!(c.n_star_0(n, &a), c.c0.times(&a, n));
        assert!(all_pass(&n_star_is_homomorphism(&c, n)));
    }
    let z = c.cee.generator(1);
    assert_eq!(c.n_star_ee(3, &z), c.cee.scale(&z, 9));
    // n* on a commutator picks up the ∂PH correction.
    let ab_ = c.c0.commutator(&a, &c.c0.generator(1));
    assert_eq!(c.n_star_0(2, &ab_), c.c0.add(&c.c0.times(&ab_, 2), &c.boundary(&c.p_of(&c.h_of(&ab_)))));
}

#[test]
fn qpm_nil_passes_for_small_e() {
    for k in 1..=3 {
        let c = qpm_nil(&PointedSet::standard(k));
        let checks = validate_qpm(&c);
        assert!(all_pass(&checks), "k = {k}: {:?}", failures(&checks));
        assert!(all_pass(&derived_identities(&c)), "k = {k}");
        assert!(all_pass(&crossed_module_shell(&c)), "k = {k}");
    }
}

#[test]
fn qpm_nil_examples() {
    let c = qpm_nil(&ab());
    let (a, b) = (c.c0.generator(0), c.c0.generator(1));
    assert_eq!(c.boundary(&c.p_of(&c.cross(&a, &b))), c.c0.commutator(&a, &b));
    for e in [&a, &b] {
        let pee = c.p_of(&c.cross(e, e));
        assert!(!c.c1.is_zero(&pee));
        assert!(c.c1.is_zero(&c.c1.times(&pee, 2)));
    }
}

#[test]
fn convention_search() {
    let results = qpm_nil_convention_search(&ab());
    let passing: Vec<NilConvention> = results.iter().filter(|(_, ok)| *ok).map(|(c, _)| *c).collect();
    assert!(passing.contains(&NilConvention::STANDARD));
    assert!(passing.iter().all(|c| (c.p_sign == 1) != c.swap_boundary));
    assert_eq!(passing.len(), 2);
}

#[test]
fn mutations_are_rejected() {
    let muts = qpm_nil_mutations();
    assert_eq!(muts.len(), 10);
    for (name, c) in &muts {
        assert!(!all_pass(&validate_qpm(c)), "mutation '{name}' was accepted");
    }
}

#[test]
fn reduced_quotient_dropped_fails_php() {
    let (_, c) = qpm_nil_mutations().into_iter().find(|(n, _)| *n == "reduced quotient dropped").unwrap();
    let checks = validate_qpm(&c);
    let php = checks.iter().find(|c| c.name.contains("(3)") && !c.passed()).expect("PHP = 2P fails");
    assert!(php.witness.as_deref().unwrap().contains("a.a"), "{:?}", php.witness);
}

#[test]
fn from_squad() {
    let e = ab();
    let c = qpm_nil(&e);
    let red = reduced_tensor_square(&e);
    let w_images =
        (0..4).map(|n| c.p.images()[(n % 2) * 2 + n / 2].clone()).collect::<Vec<_>>();
    let w = Hom::new(c.ee_carrier(), GroupCarrier::Ab(red.clone()), w_images).unwrap();
    let built = qpm_from_squad(&e, c.c1.clone(), c.bd.clone(), w).unwrap();
    assert_eq!(built.p, c.p);

    // w the identity on the unreduced tensor square.
    let m = GroupCarrier::Ab(tensor_square(&e));
    let bd = Hom::new(
        m.clone(),
        c.c0.clone(),
        (0..4).map(|n| c.c0.commutator(&c.c0.generator(n / 2), &c.c0.generator(n % 2))).collect(),
    )
    .unwrap();
    let err = qpm_from_squad(&e, m.clone(), bd, Hom::identity(&m)).unwrap_err();
    assert!(err.iter().any(|c| c.name.contains("PHP") && !c.passed()));

    let one = PointedSet::new(["e"]).unwrap();
    let zero = GroupCarrier::Ab(AbGroup::trivial());
    let c0 = GroupCarrier::Nil(one.clone());
    let ok = qpm_from_squad(
        &one,
        zero.clone(),
        Hom::zero(&zero, &c0),
        Hom::zero(&GroupCarrier::Ab(tensor_square(&one)), &zero),
    );
    assert!(ok.is_ok());
}

#[test]
fn morphism_kinds() {
    let c = qpm_nil(&ab());
    let id = QpmMorphism::identity(&c);
    assert!(all_pass(&validate_morphism(&c, &c, &id, MorphismKind::Strict)));
    assert!(all_pass(&validate_morphism(&c, &c, &id, MorphismKind::Weak)));
    let two = QpmMorphism::n_star(&c, 2);
    assert!(all_pass(&validate_morphism(&c, &c, &two, MorphismKind::Weak)));
    let strict = validate_morphism(&c, &c, &two, MorphismKind::Strict);
    let failed: Vec<&Check> = strict.iter().filter(|c| !c.passed()).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0].name.contains('H'));
    for n in -2..4 {
        assert!(all_pass(&validate_morphism(&c, &c, &QpmMorphism::n_star(&c, n), MorphismKind::Weak)), "n = {n}");
    }
}

#[test]
fn action_exponent_is_a_right_action() {
    for k in 1..=3 {
        let c = qpm_nil(&PointedSet::standard(k));
        let x = c.c1.generators();
        let ys = c.c0.generators();
        for xi in &x {
            assert_eq!(&c.action_exponent(xi, &c.c0.zero()), xi);
            for y in &ys {
                for z in &ys {
                    let l = c.action_exponent(&c.action_exponent(xi, y), z);
                    let r = c.action_exponent(xi, &c.c0.add(y, z));
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn tracks() {
    let c = qpm_nil(&ab());
    let id = QpmMorphism::identity(&c);
    let zero = Track::zero(&c, &c);
    assert!(all_pass(&track_validate(&c, &c, &id, &id, &zero)));
    for n in -2..4 {
        assert!(track_nstar_naturality(&c, &c, &id, &zero, n));
    }

    // On qpm_eta every choice of values is a self-track of the identity.
    let eta = qpm_eta();
    let id = QpmMorphism::identity(&eta);
    let alpha = Track::from_values(vec![Elem::Ab(vec![1])]);
    assert!(all_pass(&track_validate(&eta, &eta, &id, &id, &alpha)));
    assert!(track_nstar_naturality(&eta, &eta, &id, &alpha, 2));
    let back = vert_compose(&eta, &alpha, &vert_inverse(&eta, &alpha));
    assert_eq!(back, Track::zero(&eta, &eta));
}

#[test]
fn weak_track_breaks_naturality() {
    let c = qpm_doubling();
    assert!(all_pass(&validate_qpm(&c)), "{:?}", failures(&validate_qpm(&c)));
    let id = QpmMorphism::identity(&c);
    let (g, alpha) = doubling_weak_track();
    assert!(all_pass(&validate_morphism(&c, &c, &g, MorphismKind::Weak)));
    assert!(!all_pass(&validate_morphism(&c, &c, &g, MorphismKind::Strict)));
    let checks = track_validate(&c, &c, &id, &g, &alpha);
    assert!(all_pass(&checks), "{:?}", failures(&checks));
    assert!(track_nstar_naturality(&c, &c, &id, &alpha, 1));
    assert!(!track_nstar_naturality(&c, &c, &id, &alpha, 2));
}

#[test]
fn lemma_tec_on_qpm_nil() {
    let c = qpm_nil(&ab());
    let (f, alpha, m) = lemma_tec_nil_data(&c);
    let r = lemma_tec_check(&c, &f, &alpha, m);
    assert!(r.holds(), "{:?}", r.checks().filter(|c| !c.passed()).collect::<Vec<_>>());
    assert_eq!(r.formula.len(), 8);

    let zero = vec![c.c1.zero(); 2];
    assert!(lemma_tec_check(&c, &f, &zero, 1).holds());
}

#[test]
fn lemma_tec_on_doubling_has_visible_correction() {
    let c = qpm_doubling();
    let (f, alpha, m) = lemma_tec_doubling_data();
    let r = lemma_tec_check(&c, &f, &alpha, m);
    assert!(r.holds(), "{:?}", r.checks().filter(|c| !c.passed()).collect::<Vec<_>>());
    // Without the correction term the formula would fail at n = 2.
    let e = c.c0.generator(0);
    let f0 = Hom::identity(&c.c0);
    let t = Track::from_values(alpha);
    let lhs = t.eval(&c, &f0, &c.n_star_0(2, &e));
    let naive = c.n_star_1(2, &t.eval(&c, &f0, &e));
    assert_ne!(lhs, naive);
    assert_eq!(binom2(m) * binom2(2) % 2, 1);
}

#[test]
fn lemma_tec_reports_precondition_violation() {
    let c = qpm_eta();
    let r = lemma_tec_check(&c, &[Some(0)], &[c.c1.zero()], 3);
    assert!(!r.hypotheses_hold());
    assert!(r.formula.is_empty());
    let failed = r.preconditions.iter().find(|c| !c.passed()).unwrap();
    assert!(failed.name.starts_with("precondition"));
}
