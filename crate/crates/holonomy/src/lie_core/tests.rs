use super::*;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Closed-form exponential on su(2): for x with x² = −θ² I,
/// exp(x) = cos θ · I + (sin θ / θ) · x.
fn su2_exp_closed_form(x: &CMat) -> CMat {
    // |x|_F² = 2 θ² for x = i θ (n·σ), so θ = |x|_F / √2.
    let th = frob_norm(x) / 2f64.sqrt();
    let id = CMat::identity(2, 2);
    if th < 1e-14 {
        return id + x;
    }
    id * c64(th.cos()) + x * c64(th.sin() / th)
}

/// Rodrigues' formula on so(3).
fn so3_exp_closed_form(x: &CMat) -> CMat {
    let th = frob_norm(x) / 2f64.sqrt();
    let id = CMat::identity(3, 3);
    if th < 1e-14 {
        return id + x;
    }
    &id + x * c64(th.sin() / th) + (x * x) * c64((1.0 - th.cos()) / (th * th))
}

#[test]
fn exp_matches_su2_closed_form() {
    let su2 = LieGroup::su2();
    let mut r = rng(11);
    for _ in 0..50 {
        let x = su2.random_algebra(&mut r, 1.2);
        let got = exp_map(&x);
        let want = su2_exp_closed_form(&x.mat);
        assert!(frob_norm(&(&got.mat - want)) < 1e-13);
        got.check_membership(1e-12).unwrap();
    }
}

#[test]
fn exp_matches_so3_closed_form() {
    let so3 = LieGroup::so3();
    let mut r = rng(12);
    for _ in 0..50 {
        let x = so3.random_algebra(&mut r, 1.5);
        let got = exp_map(&x);
        let want = so3_exp_closed_form(&x.mat);
        assert!(frob_norm(&(&got.mat - want)) < 1e-13);
        got.check_membership(1e-12).unwrap();
    }
}

#[test]
fn log_inverts_exp_inside_branch_radius() {
    let mut r = rng(13);
    for group in [LieGroup::su2(), LieGroup::so3(), LieGroup::u1()] {
        for _ in 0..40 {
            let x = group.random_algebra(&mut r, 0.5);
            let g = exp_map(&x);
            let back = log_map(&g, LOG_BRANCH_RADIUS).unwrap();
            assert!(frob_norm(&(&back.mat - &x.mat)) < 1e-12);
            back.check_membership(1e-10).unwrap();
        }
    }
}

#[test]
fn log_refuses_outside_branch_radius() {
    let su2 = LieGroup::su2();
    // Rotation by ~2.9 around σ3: far side of the group.
    let x = su2.from_coords(&[0.0, 0.0, 2.05]);
    let g = exp_map(&x);
    match log_map(&g, LOG_BRANCH_RADIUS) {
        Err(crate::Error::Branch { .. }) => {}
        other => panic!("expected branch error, got {other:?}"),
    }
}

#[test]
fn adjoint_consistent_with_exp_conjugation() {
    let mut r = rng(14);
    for group in [LieGroup::su2(), LieGroup::so3()] {
        for _ in 0..20 {
            let x = group.random_algebra(&mut r, 0.8);
            let y = group.random_algebra(&mut r, 0.8);
            let g = exp_map(&x);
            let ad = adjoint(&g, &y).unwrap();
            // Oracle: exp(Ad_g y) = g exp(y) g⁻¹.
            let lhs = exp_map(&ad);
            let rhs = g.mul(&exp_map(&y)).unwrap().mul(&g.inverse().unwrap()).unwrap();
            assert!(group_distance(&lhs, &rhs).unwrap() < 1e-12);
            ad.check_membership(1e-10).unwrap();
        }
    }
}

#[test]
fn bracket_is_derivative_of_adjoint_orbit() {
    let mut r = rng(15);
    for group in [LieGroup::su2(), LieGroup::so3(), LieGroup::central_twist_su2("l", [0.0, 0.0, 1.0])]
    {
        for _ in 0..10 {
            let x = group.random_algebra(&mut r, 0.7);
            let y = group.random_algebra(&mut r, 0.7);
            let br = bracket(&x, &y).unwrap();
            // Central-difference derivative of s ↦ Ad_{exp(s x)} y at s = 0.
            let s = 1e-5;
            let plus = adjoint(&exp_map(&x.scale(s)), &y).unwrap();
            let minus = adjoint(&exp_map(&x.scale(-s)), &y).unwrap();
            let fd = (&plus.mat - &minus.mat) * c64(0.5 / s);
            assert!(frob_norm(&(&fd - &br.mat)) < 1e-8);
            br.check_membership(1e-10).unwrap();
        }
    }
}

#[test]
fn twisted_model_round_trips_and_one_parameter_law() {
    let l = LieGroup::central_twist_su2("l", [0.3, -0.5, 0.8]);
    let mut r = rng(16);
    for _ in 0..30 {
        let x = l.random_algebra(&mut r, 0.6);
        let g = exp_map(&x);
        g.check_membership(1e-12).unwrap();
        let back = log_map(&g, LOG_BRANCH_RADIUS).unwrap();
        assert!(frob_norm(&(&back.mat - &x.mat)) < 1e-12);
        // One-parameter subgroup: exp(x) = exp(x/2)².
        let half = exp_map(&x.scale(0.5));
        assert!(group_distance(&g, &half.mul(&half).unwrap()).unwrap() < 1e-12);
    }
}

#[test]
fn twisted_bracket_satisfies_jacobi_and_antisymmetry() {
    let l = LieGroup::central_twist_su2("l", [0.0, 1.0, 0.0]);
    let mut r = rng(17);
    for _ in 0..20 {
        let x = l.random_algebra(&mut r, 1.0);
        let y = l.random_algebra(&mut r, 1.0);
        let z = l.random_algebra(&mut r, 1.0);
        let xy = bracket(&x, &y).unwrap();
        let yx = bracket(&y, &x).unwrap();
        assert!(frob_norm(&(&xy.mat + &yx.mat)) < 1e-13);
        let jac = bracket(&x, &bracket(&y, &z).unwrap())
            .unwrap()
            .add(&bracket(&y, &bracket(&z, &x).unwrap()).unwrap())
            .unwrap()
            .add(&bracket(&z, &bracket(&x, &y).unwrap()).unwrap())
            .unwrap();
        assert!(jac.norm() < 1e-13);
    }
}

#[test]
fn ordered_exp_matches_commuting_family_quadrature() {
    // f(t) = φ(t) X with a fixed direction commutes with itself at all
    // times, so the ordered exponential collapses to exp(∫φ · X).
    let su2 = LieGroup::su2();
    let x = su2.from_coords(&[0.4, -0.2, 0.7]);
    let phi = |t: f64| 0.3 + t * t - 0.5 * (2.0 * t).sin();
    // ∫₀¹ φ = 0.3 + 1/3 − 0.5(1 − cos 2)/2.
    let integral = 0.3 + 1.0 / 3.0 - 0.25 * (1.0 - (2f64).cos());
    let want = exp_map(&x.scale(integral));
    for (scheme, tol) in
        [(OrderedScheme::Midpoint, 2e-6), (OrderedScheme::CommutatorFree4, 1e-10)]
    {
        let got = path_ordered_exp(&su2, &|t| x.scale(phi(t)), 512, scheme);
        assert!(group_distance(&got, &want).unwrap() < tol);
    }
}

#[test]
fn ordered_exp_convergence_orders() {
    // Non-commuting integrand; reference at high resolution with the
    // fourth-order rule.
    let su2 = LieGroup::su2();
    let x1 = su2.from_coords(&[0.9, 0.1, -0.3]);
    let x2 = su2.from_coords(&[-0.2, 0.8, 0.5]);
    let f = |t: f64| su2.algebra(&x1.mat * c64((3.1 * t).cos()) + &x2.mat * c64(t * t));
    let reference = path_ordered_exp(&su2, &f, 4096, OrderedScheme::CommutatorFree4);

    let err = |steps: usize, scheme: OrderedScheme| {
        group_distance(&path_ordered_exp(&su2, &f, steps, scheme), &reference).unwrap()
    };

    let e16 = err(16, OrderedScheme::Midpoint);
    let e32 = err(32, OrderedScheme::Midpoint);
    let e64 = err(64, OrderedScheme::Midpoint);
    let order_mid = ((e16 / e32).log2() + (e32 / e64).log2()) / 2.0;
    assert!(order_mid > 1.8, "midpoint order {order_mid}");

    let c16 = err(16, OrderedScheme::CommutatorFree4);
    let c32 = err(32, OrderedScheme::CommutatorFree4);
    let order_cf = (c16 / c32).log2();
    assert!(order_cf > 3.5, "commutator-free order {order_cf}");
}

#[test]
fn ordered_exp_reparametrisation_invariance() {
    // 𝒫exp ∫ f(φ(t)) φ'(t) dt equals 𝒫exp ∫ f for monotone φ fixing 0, 1.
    let su2 = LieGroup::su2();
    let x1 = su2.from_coords(&[0.6, -0.4, 0.2]);
    let x2 = su2.from_coords(&[0.1, 0.3, -0.9]);
    let f = |t: f64| su2.algebra(&x1.mat * c64(t) + &x2.mat * c64((1.7 * t).sin()));
    let phi = |t: f64| t - (2.0 * std::f64::consts::PI * t).sin() * 0.12;
    let dphi = |t: f64| 1.0 - (2.0 * std::f64::consts::PI * t).cos() * 0.12 * 2.0 * std::f64::consts::PI;
    let plain = path_ordered_exp(&su2, &f, 2048, OrderedScheme::Midpoint);
    let warped = path_ordered_exp(
        &su2,
        &|t| f(phi(t)).scale(dphi(t)),
        2048,
        OrderedScheme::Midpoint,
    );
    assert!(group_distance(&plain, &warped).unwrap() < 1e-6);
}

#[test]
fn ordered_exp_samples_matches_callable_integrator() {
    let su2 = LieGroup::su2();
    let x1 = su2.from_coords(&[0.5, 0.0, -0.5]);
    let x2 = su2.from_coords(&[0.0, 0.7, 0.1]);
    let f = |t: f64| su2.algebra(&x1.mat * c64((t * 2.2).cos()) + &x2.mat * c64(t));
    let n = 400;
    let samples: Vec<CMat> = (0..=n).map(|k| f(k as f64 / n as f64).mat).collect();
    let nodes = ordered_exp_samples(&su2, &samples, 1.0 / n as f64);
    let direct = path_ordered_exp(&su2, &f, n, OrderedScheme::Midpoint);
    assert!(group_distance(nodes.last().unwrap(), &direct).unwrap() < 1e-6);
    assert_eq!(nodes.len(), n + 1);
}

#[test]
fn group_distance_is_a_bi_invariant_proxy() {
    let su2 = LieGroup::su2();
    let mut r = rng(18);
    let g1 = exp_map(&su2.random_algebra(&mut r, 0.9));
    let g2 = exp_map(&su2.random_algebra(&mut r, 0.9));
    let k = exp_map(&su2.random_algebra(&mut r, 0.9));
    let d = group_distance(&g1, &g2).unwrap();
    let d_right = group_distance(&g1.mul(&k).unwrap(), &g2.mul(&k).unwrap()).unwrap();
    assert!((d - d_right).abs() < 1e-12);
    assert!(group_distance(&g1, &g1).unwrap() < 1e-14);
}

#[test]
fn tag_mismatch_is_rejected() {
    let su2 = LieGroup::su2();
    let so3 = LieGroup::so3();
    let x = su2.from_coords(&[1.0, 0.0, 0.0]);
    let y = so3.from_coords(&[1.0, 0.0, 0.0]);
    assert!(matches!(bracket(&x, &y), Err(crate::Error::TagMismatch { .. })));
}

#[test]
fn direct_sum_blocks_do_not_interact() {
    let h = LieGroup::direct_sum("su2xu1", &[LieGroup::su2(), LieGroup::u1()]);
    assert_eq!(h.algebra_dim(), 4);
    assert_eq!(h.rep_dim(), 3);
    let x = h.from_coords(&[0.3, -0.2, 0.5, 0.9]);
    let g = exp_map(&x);
    g.check_membership(1e-12).unwrap();
    // The u(1) block exponentiates independently.
    let phase = g.mat[(2, 2)];
    let expected = Complex64::new(0.0, 0.9).exp();
    assert!((phase - expected).norm() < 1e-12);
}
