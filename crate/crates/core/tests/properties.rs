//! Randomized invariants across the library.

use num_traits::{One, Zero};
use proptest::prelude::*;
use symtrack::clifford::blade_product;
use symtrack::nilgroup::{crossed_effect_0free, h_0free, sigma_bar, NilElement, TensorElt};
use symtrack::pin::enumerate_group;
use symtrack::presentation::{
    sym_track_images, sym_track_presentation, todd_coxeter, verify_images, FinitePresentation, SymTrackOps,
};
use symtrack::quadratic::{qpm_nil, Elem};
use symtrack::scalar::Scalar;
use symtrack::{Blade, Multivector, Q2Small, Q2};

const RANK: usize = 3;

/// A unit vector with exact coordinates in dimension `n`.
fn unit_vector(n: usize) -> impl Strategy<Value = Multivector> {
    (0..n, 0..n, 0..4u8, any::<bool>()).prop_map(move |(i, j, kind, negate)| {
        let mut c = vec![Q2::zero(); n];
        let j = if i == j { (i + 1) % n } else { j };
        match kind {
            0 => c[i] = Q2::one(),
            1 => {
                c[i] = Q2::frac_1_sqrt2();
                c[j] = -Q2::frac_1_sqrt2();
            }
            2 => {
                c[i] = Q2::frac_1_sqrt2();
                c[j] = Q2::frac_1_sqrt2();
            }
            _ => {
                c[i] = Q2::from_frac(3, 5);
                c[j] = Q2::from_frac(4, 5);
            }
        }
        let v = Multivector::vector(&c).unwrap();
        if negate {
            v.neg()
        } else {
            v
        }
    })
}

fn versor(n: usize) -> impl Strategy<Value = Multivector> {
    prop::collection::vec(unit_vector(n), 0..5).prop_map(move |vs| {
        vs.iter().fold(Multivector::one(n).unwrap(), |acc, v| acc.checked_mul(v).unwrap())
    })
}

fn dim_and_versors() -> impl Strategy<Value = (Multivector, Multivector)> {
    (2usize..=6).prop_flat_map(|n| (versor(n), versor(n)))
}

fn nil_element() -> impl Strategy<Value = NilElement> {
    prop::collection::vec((0..RANK, -2i64..=2), 0..6).prop_map(|word| {
        word.iter().fold(NilElement::zero(RANK), |acc, &(g, k)| {
            acc.checked_add(&NilElement::generator(RANK, g).times(k)).unwrap()
        })
    })
}

fn tensor() -> impl Strategy<Value = TensorElt> {
    prop::collection::vec(-3i64..=3, RANK * RANK).prop_map(|v| TensorElt::from_vec(RANK, &v))
}

proptest! {
    #[test]
    fn versors_have_unit_norm_and_orthogonal_rho((x, y) in dim_and_versors()) {
        for v in [&x, &y] {
            prop_assert!(v.reversal().checked_mul(v).unwrap().as_scalar().is_some_and(|s| s.is_one()));
            let m = v.rho_matrix().unwrap();
            prop_assert!(m.transpose().mul(&m).is_identity());
            prop_assert_eq!(v.neg().rho_matrix().unwrap(), m);
        }
    }

    #[test]
    fn rho_is_a_homomorphism((x, y) in dim_and_versors()) {
        let xy = x.checked_mul(&y).unwrap();
        prop_assert_eq!(xy.rho_matrix().unwrap(), x.rho_matrix().unwrap().mul(&y.rho_matrix().unwrap()));
    }

    #[test]
    fn commutator_is_antisymmetric_and_abelian(x in nil_element(), y in nil_element(), c in nil_element()) {
        let xy = x.commutator(&y).unwrap();
        prop_assert_eq!(xy.checked_add(&y.commutator(&x).unwrap()).unwrap(), NilElement::zero(RANK));
        // Changing x by a central element leaves [x, y] unchanged.
        let central = c.commutator(&y).unwrap();
        let shifted = x.checked_add(&central).unwrap();
        prop_assert_eq!(shifted.commutator(&y).unwrap(), xy);
    }

    #[test]
    fn nil_addition_is_associative(x in nil_element(), y in nil_element(), z in nil_element()) {
        let l = x.checked_add(&y).unwrap().checked_add(&z).unwrap();
        let r = x.checked_add(&y.checked_add(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn h_0free_recursion(x in nil_element(), y in nil_element()) {
        let sum = h_0free(&x.checked_add(&y).unwrap());
        let defect = &(&sum - &h_0free(&x)) - &h_0free(&y);
        prop_assert_eq!(defect, crossed_effect_0free(&x, &y).unwrap());
    }

    #[test]
    fn h_0free_is_additive_on_central_elements(x in nil_element(), a in nil_element(), b in nil_element()) {
        let c = a.commutator(&b).unwrap();
        prop_assert!(c.is_central());
        prop_assert_eq!(h_0free(&x.checked_add(&c).unwrap()), &h_0free(&x) + &h_0free(&c));
    }

    #[test]
    fn sigma_bar_is_linear_and_kills_symmetric_tensors(z in tensor(), w in tensor()) {
        prop_assert_eq!(sigma_bar(&(&z + &w)), &sigma_bar(&z) + &sigma_bar(&w));
        prop_assert!(sigma_bar(&(&z + &z.twist())).is_zero());
    }

    #[test]
    fn qpm_action_is_a_right_action(seed in any::<u64>()) {
        let c = qpm_nil(&symtrack::nilgroup::PointedSet::standard(RANK));
        let mut s = symtrack::sampling::Sampler::new(seed);
        let x: Elem = c.c1.sample(&mut s);
        let (y, z) = (c.c0.sample(&mut s), c.c0.sample(&mut s));
        let l = c.action_exponent(&c.action_exponent(&x, &y), &z);
        let r = c.action_exponent(&x, &c.c0.add(&y, &z));
        prop_assert_eq!(l, r);
    }

    #[test]
    fn verify_images_ignores_relator_rotation(n in 2usize..=5, shifts in prop::collection::vec(0usize..8, 16)) {
        let pres = sym_track_presentation(n).unwrap();
        let rotated: Vec<_> = pres
            .relators()
            .iter()
            .zip(shifts.iter().cycle())
            .map(|(w, &k)| {
                let k = k % w.len().max(1);
                [&w[k..], &w[..k]].concat()
            })
            .collect();
        let rotated = FinitePresentation::new(pres.generators().to_vec(), rotated).unwrap();
        let images = sym_track_images(&pres, n).unwrap();
        let ops = SymTrackOps { n };
        let a = verify_images(&pres, &images, &ops).unwrap();
        let b = verify_images(&rotated, &images, &ops).unwrap();
        prop_assert!(a.iter().all(|c| c.passed()));
        prop_assert!(b.iter().all(|c| c.passed()));
    }

    #[test]
    fn todd_coxeter_ignores_generator_order(n in 2usize..=4, order in any::<u64>()) {
        let pres = sym_track_presentation(n).unwrap();
        let mut perm: Vec<usize> = (0..pres.generators().len()).collect();
        let mut state = order;
        for i in (1..perm.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let a = todd_coxeter(&pres, 1 << 16).unwrap().order;
        let b = todd_coxeter(&pres.reorder_generators(&perm), 1 << 16).unwrap().order;
        prop_assert_eq!(a, b);
    }
}

#[test]
fn blade_product_is_associative() {
    for n in 1..=5 {
        let blades: Vec<Blade> = (0..1u32 << n).map(Blade).collect();
        for &a in &blades {
            for &b in &blades {
                for &c in &blades {
                    let (s1, ab) = blade_product(n, a, b).unwrap();
                    let (s2, ab_c) = blade_product(n, ab, c).unwrap();
                    let (s3, bc) = blade_product(n, b, c).unwrap();
                    let (s4, a_bc) = blade_product(n, a, bc).unwrap();
                    assert_eq!((s1 * s2, ab_c), (s3 * s4, a_bc));
                }
            }
        }
    }
}

#[test]
fn delta_is_a_homomorphism() {
    for n in 2..=5 {
        let g = enumerate_group::<Q2Small>(n).unwrap();
        for x in &g {
            for y in &g {
                assert_eq!(x.mul(y).unwrap().delta(), &x.delta().compose(y.delta()));
            }
        }
    }
}
