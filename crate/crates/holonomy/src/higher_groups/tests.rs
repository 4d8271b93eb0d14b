use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::*;
use crate::lie_core::{
    bracket, exp_map, frob_norm, group_distance, matrix_exp, CMat, LieGroup,
};

fn crossed(id: &str) -> std::sync::Arc<CrossedModule> {
    match instance_by_id(id).unwrap() {
        Instance::Crossed(cm) => cm,
        _ => panic!("{id} is not a crossed module"),
    }
}

fn crossed2(id: &str) -> std::sync::Arc<Crossed2Module> {
    match instance_by_id(id).unwrap() {
        Instance::Crossed2(c) => c,
        _ => panic!("{id} is not a crossed 2-module"),
    }
}

#[test]
fn genuine_crossed_modules_pass_axiom_sampling() {
    for id in ["cm-inner-su2", "cm-inner-so3", "cm-inner-u1", "cm-abelian", "cm-cover-central"] {
        let cm = crossed(id);
        let report = check_crossed_module_axioms(&cm, 300, 7, 1e-9).unwrap();
        assert!(report.pass, "{id} failed: {:#?}", report.laws);
    }
}

#[test]
fn genuine_crossed_2_modules_pass_axiom_sampling() {
    for id in ["c2m-ce", "c2m-ce-zero"] {
        let c2m = crossed2(id);
        let report = check_crossed2_axioms(&c2m, 300, 11, 1e-9).unwrap();
        assert!(report.pass, "{id} failed: {:#?}", report.laws);
    }
}

#[test]
fn broken_instances_are_detected() {
    let cm = crossed("cm-broken-alpha");
    let report = check_crossed_module_axioms(&cm, 100, 3, 1e-9).unwrap();
    assert!(!report.pass);
    // The breakage is in the action, not in τ.
    let failing: Vec<_> =
        report.laws.iter().filter(|l| !l.pass).map(|l| l.law.as_str()).collect();
    assert!(failing.contains(&"alpha-automorphism"), "failing laws: {failing:?}");

    let c2m = crossed2("c2m-broken-sym");
    let report = check_crossed2_axioms(&c2m, 100, 3, 1e-9).unwrap();
    assert!(!report.pass);
    let failing: Vec<_> =
        report.laws.iter().filter(|l| !l.pass).map(|l| l.law.as_str()).collect();
    assert!(failing.contains(&"lift-antisymmetry"), "failing laws: {failing:?}");
    assert!(failing.contains(&"delta-of-lift"), "failing laws: {failing:?}");

    assert!(instance_by_id("no-such-instance").is_err());
}

#[test]
fn catalog_ids_all_resolve() {
    for id in instance_ids() {
        instance_by_id(id).unwrap();
    }
}

#[test]
fn cover_map_is_a_homomorphism_onto_rotations() {
    let su2 = LieGroup::su2();
    let so3 = LieGroup::so3();
    let mut rng = ChaCha12Rng::seed_from_u64(21);
    for _ in 0..50 {
        let u1 = exp_map(&su2.random_algebra(&mut rng, 2.0));
        let u2 = exp_map(&su2.random_algebra(&mut rng, 2.0));
        let r1 = so3.element(su2_cover(&u1.mat));
        let r2 = so3.element(su2_cover(&u2.mat));
        r1.check_membership(1e-12).unwrap();
        let lhs = so3.element(su2_cover(&(&u1.mat * &u2.mat)));
        let rhs = r1.mul(&r2).unwrap();
        assert!(group_distance(&lhs, &rhs).unwrap() < 1e-12);
        // Kernel {±I}: both preimages cover to the same rotation.
        let minus = so3.element(su2_cover(&(-&u1.mat)));
        assert!(group_distance(&minus, &r1).unwrap() < 1e-12);
    }
}

#[test]
fn cover_lift_is_a_right_inverse_everywhere() {
    let so3 = LieGroup::so3();
    let mut rng = ChaCha12Rng::seed_from_u64(22);
    // Amplitude 3 produces rotations with angles well past π/2, exercising
    // every branch of the quaternion extraction.
    for _ in 0..200 {
        let r = exp_map(&so3.random_algebra(&mut rng, 3.0));
        let u = su2_cover_lift(&r.mat);
        LieGroup::su2().element(u.clone()).check_membership(1e-10).unwrap();
        let back = so3.element(su2_cover(&u));
        assert!(group_distance(&back, &r).unwrap() < 1e-10);
    }
    // lift(I) = I, pinning the sign of the section through the identity.
    let id_lift = su2_cover_lift(&CMat::identity(3, 3));
    assert!(frob_norm(&(&id_lift - CMat::identity(2, 2))) < 1e-14);
}

#[test]
fn cover_differential_convention_is_minus_two() {
    // cover(exp(t·iσ_k)) = exp(−2t·L_k): the one-parameter subgroups pin the
    // normalization used by dτ and its section in cm-cover-central.
    let su2 = LieGroup::su2();
    let so3 = LieGroup::so3();
    let t = 0.3;
    for k in 0..3 {
        let mut hc = [0.0; 3];
        hc[k] = t;
        let u = exp_map(&su2.from_coords(&hc));
        let mut gc = [0.0; 3];
        gc[k] = -2.0 * t;
        let want = exp_map(&so3.from_coords(&gc));
        let got = so3.element(su2_cover(&u.mat));
        assert!(group_distance(&got, &want).unwrap() < 1e-12, "axis {k}");
    }

    // dτ ∘ section = id on 𝔤, and the section matches the lift:
    // lift(exp X) = exp(section X) near the identity.
    let cm = crossed("cm-cover-central");
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    for _ in 0..20 {
        let x = cm.g.random_algebra(&mut rng, 1.0);
        let sec = cm.dtau_section(&x).unwrap();
        assert!(frob_norm(&(&cm.dtau(&sec).mat - &x.mat)) < 1e-12);
        let lifted = su2_cover_lift(&exp_map(&x).mat);
        let direct = matrix_exp(&sec.mat.view((0, 0), (2, 2)).into_owned());
        assert!(frob_norm(&(&lifted - &direct)) < 1e-10);
    }
}

#[test]
fn kernel_indices_span_the_kernel_of_dtau() {
    for id in ["cm-inner-su2", "cm-abelian", "cm-cover-central"] {
        let cm = crossed(id);
        let dim = cm.h.algebra_dim();
        for k in 0..dim {
            let mut coords = vec![0.0; dim];
            coords[k] = 1.0;
            let image = cm.dtau(&cm.h.from_coords(&coords));
            if cm.kernel_indices().contains(&k) {
                assert!(image.norm() < 1e-14, "{id}: basis {k} should be in ker dτ");
            } else {
                assert!(image.norm() > 1e-3, "{id}: basis {k} should not be in ker dτ");
            }
        }
    }
}

#[test]
fn semidirect_product_group_laws() {
    let cm = crossed("cm-cover-central");
    let mut rng = ChaCha12Rng::seed_from_u64(9);
    let sample = |rng: &mut ChaCha12Rng| {
        (exp_map(&cm.g.random_algebra(rng, 1.0)), exp_map(&cm.h.random_algebra(rng, 1.0)))
    };
    for _ in 0..25 {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        let c = sample(&mut rng);
        let ab_c = semidirect_mul(&cm, (&a.0, &a.1), (&b.0, &b.1)).unwrap();
        let ab_c = semidirect_mul(&cm, (&ab_c.0, &ab_c.1), (&c.0, &c.1)).unwrap();
        let bc = semidirect_mul(&cm, (&b.0, &b.1), (&c.0, &c.1)).unwrap();
        let a_bc = semidirect_mul(&cm, (&a.0, &a.1), (&bc.0, &bc.1)).unwrap();
        assert!(group_distance(&ab_c.0, &a_bc.0).unwrap() < 1e-12);
        assert!(group_distance(&ab_c.1, &a_bc.1).unwrap() < 1e-12);

        let inv = semidirect_inv(&cm, (&a.0, &a.1)).unwrap();
        let prod = semidirect_mul(&cm, (&a.0, &a.1), (&inv.0, &inv.1)).unwrap();
        assert!(group_distance(&prod.0, &cm.g.identity()).unwrap() < 1e-12);
        assert!(group_distance(&prod.1, &cm.h.identity()).unwrap() < 1e-12);
    }
}

#[test]
fn derived_action_is_a_group_action() {
    let c2m = crossed2("c2m-ce");
    let mut rng = ChaCha12Rng::seed_from_u64(13);
    for _ in 0..25 {
        let v1 = c2m.h.random_algebra(&mut rng, 0.3);
        let v2 = c2m.h.random_algebra(&mut rng, 0.3);
        let x = c2m.l.random_algebra(&mut rng, 1.0);
        let h1 = exp_map(&v1);
        let h2 = exp_map(&v2);
        let lhs = c2m.act_prime(&h1.mul(&h2).unwrap(), &x).unwrap();
        let rhs = c2m.act_prime(&h1, &c2m.act_prime(&h2, &x).unwrap()).unwrap();
        assert!(frob_norm(&(&lhs.mat - &rhs.mat)) < 1e-10);
        // Identity acts trivially.
        let fixed = c2m.act_prime(&c2m.h.identity(), &x).unwrap();
        assert!(frob_norm(&(&fixed.mat - &x.mat)) < 1e-13);
    }
}

#[test]
fn peiffer_commutator_matches_twisted_bracket_projection() {
    // For the central-extension instance ∂ is trivial, so ⟨v, w⟩ = [v, w]
    // and δ{v, w} must reproduce it; the central part carries the twist.
    let c2m = crossed2("c2m-ce");
    let mut rng = ChaCha12Rng::seed_from_u64(17);
    for _ in 0..25 {
        let v = c2m.h.random_algebra(&mut rng, 1.0);
        let w = c2m.h.random_algebra(&mut rng, 1.0);
        let pc = c2m.peiffer_commutator(&v, &w).unwrap();
        let br = bracket(&v, &w).unwrap();
        assert!(frob_norm(&(&pc.mat - &br.mat)) < 1e-14);
        let lifted = c2m.peiffer_lift(&v, &w);
        assert!(frob_norm(&(&c2m.ddelta(&lifted).mat - &br.mat)) < 1e-13);
    }
    // The zero-twist instance has vanishing central components.
    let plain = crossed2("c2m-ce-zero");
    let v = plain.h.random_algebra(&mut rng, 1.0);
    let w = plain.h.random_algebra(&mut rng, 1.0);
    let lifted = plain.peiffer_lift(&v, &w);
    let coords = plain.l.coords_of(&lifted.mat);
    assert!(coords[3].abs() < 1e-14);
    // ...while the twisted instance generically has not.
    let c2 = crossed2("c2m-ce");
    let ev = c2.h.from_coords(&[1.0, 0.0, 0.0]);
    let ew = c2.h.from_coords(&[0.0, 1.0, 0.0]);
    let lifted = c2.peiffer_lift(&ev, &ew);
    assert!(c2.l.coords_of(&lifted.mat)[3].abs() > 1e-3);
}
