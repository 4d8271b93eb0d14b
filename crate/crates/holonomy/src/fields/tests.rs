use std::sync::Arc;

use nalgebra::DVector;

use super::*;
use crate::higher_groups::{instance_by_id, Instance};
use crate::lie_core::{frob_norm, LieGroup};

fn crossed(id: &str) -> Arc<crate::higher_groups::CrossedModule> {
    match instance_by_id(id).unwrap() {
        Instance::Crossed(cm) => cm,
        _ => panic!("{id} is not a crossed module"),
    }
}

fn crossed2(id: &str) -> Arc<crate::higher_groups::Crossed2Module> {
    match instance_by_id(id).unwrap() {
        Instance::Crossed2(c) => c,
        _ => panic!("{id} is not a crossed 2-module"),
    }
}

#[test]
fn analytic_jacobians_match_finite_differences() {
    let spine = seeded_arc(3, &[0.0, 0.0, 0.0], &[1.0, 0.5, -0.25], 0.4, 5);
    let maps: Vec<ParamMap> = vec![
        line(&[0.0, 1.0], &[2.0, -1.0]),
        seeded_loop(3, &[0.1, 0.2, 0.3], 0.5, 11),
        spine.clone(),
        ruled_square(
            &seeded_arc(3, &[0.0; 3], &[1.0; 3], 0.3, 1),
            &seeded_arc(3, &[0.0; 3], &[1.0; 3], 0.3, 2),
        )
        .unwrap(),
        bump_cube(&spine, 0.5, 7, false).unwrap(),
        bump_tesseract(&spine, 0.5, 7, false).unwrap(),
        spine
            .reparametrized(vec![AxisWarp::Sine(0.6)])
            .unwrap(),
    ];
    for (n, map) in maps.iter().enumerate() {
        let u: Vec<f64> = (0..map.dom).map(|k| 0.15 + 0.17 * (n + k) as f64 % 0.8).collect();
        let analytic = map.jacobian(&u);
        let fd = map.clone().without_jacobian().jacobian(&u);
        assert!((analytic - fd).norm() < 1e-8, "map {n} jacobian mismatch");
    }
}

#[test]
fn axis_warps_fix_endpoints_and_stay_monotone() {
    for warp in
        [AxisWarp::Identity, AxisWarp::Sine(0.8), AxisWarp::Quadratic(0.7), AxisWarp::Smoothstep]
    {
        assert!(warp.eval(0.0).abs() < 1e-15);
        assert!((warp.eval(1.0) - 1.0).abs() < 1e-15);
        for k in 0..=40 {
            let x = k as f64 / 40.0;
            assert!(warp.deriv(x) >= -1e-15, "{warp:?} not monotone at {x}");
            let h = 1e-6;
            let fd = (warp.eval(x + h) - warp.eval(x - h)) / (2.0 * h);
            assert!((fd - warp.deriv(x)).abs() < 1e-8);
        }
    }
}

#[test]
fn bump_cube_passes_validation_and_plane_square_fails() {
    let spine = seeded_arc(3, &[0.0; 3], &[0.0, 0.0, 1.0], 0.3, 3);
    let cube = bump_cube(&spine, 0.6, 9, false).unwrap();
    validate_cube(&cube, 5, 1e-9).unwrap();
    let split = bump_cube(&spine, 0.6, 9, true).unwrap();
    validate_cube(&split, 5, 1e-9).unwrap();
    // The middle s-slice of a splittable cube is thin.
    let inner = split.clone();
    let mid = ParamMap::new(2, 3, move |u: &[f64]| inner.eval(&[u[0], 0.5, u[1]]));
    for r in [0.2, 0.7] {
        for t in [0.3, 0.9] {
            assert!(thinness_rank_proxy(&mid, &[r, t]) < 1e-6);
        }
    }
    // A full-rank box is not a transport-ready cube.
    let solid = ParamMap::new(3, 3, |u: &[f64]| DVector::from_column_slice(u));
    assert!(validate_cube(&solid, 4, 1e-9).is_err());
}

#[test]
fn bump_tesseract_passes_validation_and_box_fails() {
    let spine = seeded_arc(4, &[0.0; 4], &[0.0, 0.0, 0.0, 1.0], 0.2, 3);
    let tess = bump_tesseract(&spine, 0.5, 13, false).unwrap();
    validate_tesseract(&tess, 4, 1e-9).unwrap();
    let solid = ParamMap::new(4, 4, |u: &[f64]| DVector::from_column_slice(u));
    assert!(validate_tesseract(&solid, 3, 1e-9).is_err());
}

#[test]
fn form_components_antisymmetrise() {
    let b = SeededForm::seeded(2, LieGroup::su2(), 3, 0.8, 21).form();
    let x = [0.3, 0.7, 0.2];
    let b01 = b.component(&x, &[0, 1]);
    let b10 = b.component(&x, &[1, 0]);
    assert!(frob_norm(&(&b01.mat + &b10.mat)) < 1e-14);
    assert!(b.component(&x, &[1, 1]).norm() < 1e-15);

    let c = SeededForm::seeded(3, LieGroup::u1(), 4, 0.8, 22).form();
    let x = [0.3, 0.7, 0.2, 0.9];
    let c012 = c.component(&x, &[0, 1, 2]);
    let c201 = c.component(&x, &[2, 0, 1]); // even permutation
    let c102 = c.component(&x, &[1, 0, 2]); // odd permutation
    assert!(frob_norm(&(&c012.mat - &c201.mat)) < 1e-14);
    assert!(frob_norm(&(&c012.mat + &c102.mat)) < 1e-14);
    assert!(c.component(&x, &[0, 1, 1]).norm() < 1e-15);
}

#[test]
fn apply_agrees_with_component_expansion() {
    let b = SeededForm::seeded(2, LieGroup::so3(), 3, 0.8, 23).form();
    let x = [0.4, 0.1, 0.6];
    let v = DVector::from_column_slice(&[1.0, 2.0, -0.5]);
    let w = DVector::from_column_slice(&[0.3, -1.0, 0.8]);
    let direct = b.apply(&x, &[v.clone(), w.clone()]).unwrap();
    let mut acc = b.group.algebra(nalgebra::DMatrix::zeros(3, 3));
    for i in 0..3 {
        for j in 0..3 {
            acc = acc.add(&b.component(&x, &[i, j]).scale(v[i] * w[j])).unwrap();
        }
    }
    assert!(frob_norm(&(&direct.mat - &acc.mat)) < 1e-13);
    // Antisymmetry of the evaluated form.
    let flipped = b.apply(&x, &[w, v]).unwrap();
    assert!(frob_norm(&(&direct.mat + &flipped.mat)) < 1e-13);
}

#[test]
fn analytic_field_partials_match_finite_differences() {
    let a = SeededForm::seeded(1, LieGroup::su2(), 3, 0.8, 31).form();
    let b = SeededForm::seeded(2, LieGroup::su2(), 3, 0.8, 32).form();
    let x = [0.25, 0.5, 0.75];
    for j in 0..3 {
        for i in 0..3 {
            let exact = a.partial(&x, j, &[i]);
            let fd = a.without_partials().partial(&x, j, &[i]);
            assert!(frob_norm(&(&exact.mat - &fd.mat)) < 1e-7);
        }
        let exact = b.partial(&x, j, &[0, 2]);
        let fd = b.without_partials().partial(&x, j, &[0, 2]);
        assert!(frob_norm(&(&exact.mat - &fd.mat)) < 1e-7);
    }
}

#[test]
fn curvature_matches_finite_difference_definition() {
    // Check F_{ij} against a fully finite-difference evaluation on a field
    // with the analytic path enabled.
    let seeded = SeededForm::seeded(1, LieGroup::su2(), 3, 0.8, 33);
    let a = seeded.form();
    let x = [0.2, 0.9, 0.4];
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let exact = curvature(&a, &x, i, j).unwrap();
        let fd = curvature(&a.without_partials(), &x, i, j).unwrap();
        assert!(frob_norm(&(&exact.mat - &fd.mat)) < 1e-7);
        // And against the SeededForm closed form.
        assert!(frob_norm(&(&exact.mat - &seeded.fa(&x, i, j))) < 1e-13);
        // ∂F matches finite differences of F.
        let h = 1e-5;
        for m in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[m] += h;
            xm[m] -= h;
            let fdp = curvature(&a, &xp, i, j).unwrap();
            let fdm = curvature(&a, &xm, i, j).unwrap();
            let fd = (&fdp.mat - &fdm.mat) * crate::lie_core::c64(0.5 / h);
            assert!(frob_norm(&(&fd - &seeded.fa_partial(&x, m, i, j))) < 1e-7);
        }
    }
}

#[test]
fn fake_flat_two_form_satisfies_its_constraint() {
    for id in ["cm-inner-su2", "cm-cover-central"] {
        let cm = crossed(id);
        let a = SeededForm::seeded(1, cm.g.clone(), 3, 0.7, 41);
        let b = fake_flat_two_form(&cm, &a, 0.6, 42).unwrap();
        let points = sample_points(3, 25, 43);
        let dtau = |y: &crate::lie_core::AlgebraElement| cm.dtau(y);
        let res = fake_curvature_residual(&a.form(), &b, &dtau, &points).unwrap();
        assert!(res < 1e-12, "{id}: fake curvature residual {res}");
        // Breaking the kernel part does not break fake flatness...
        let res = fake_curvature_residual(&a.form(), &b.without_partials(), &dtau, &points)
            .unwrap();
        assert!(res < 1e-12);
        // ...but scaling B does.
        let broken = scaled_form(&b, 1.1);
        let res = fake_curvature_residual(&a.form(), &broken, &dtau, &points).unwrap();
        assert!(res > 1e-3, "{id}: scaled form should violate fake flatness");
        // Analytic partials of the constrained field match finite differences.
        let x = [0.3, 0.6, 0.1];
        for m in 0..3 {
            let exact = b.partial(&x, m, &[0, 2]);
            let fd = b.without_partials().partial(&x, m, &[0, 2]);
            assert!(frob_norm(&(&exact.mat - &fd.mat)) < 1e-6);
        }
    }
}

#[test]
fn fake_two_flat_three_form_satisfies_its_constraint() {
    let c2m = crossed2("c2m-ce");
    let b = SeededForm::seeded(2, c2m.h.clone(), 4, 0.7, 51);
    let c = fake_two_flat_three_form(&c2m, &b, 0.6, 52).unwrap();
    let points = sample_points(4, 20, 53);
    let a0 = SeededForm::zero(1, c2m.h.clone(), 4).form();
    let act = |_: &crate::lie_core::AlgebraElement, y: &crate::lie_core::AlgebraElement| {
        y.group.algebra(nalgebra::DMatrix::zeros(y.mat.nrows(), y.mat.ncols()))
    };
    let ddelta = |x: &crate::lie_core::AlgebraElement| c2m.ddelta(x);
    let res = fake_two_curvature_residual(&a0, &b.form(), &c, &act, &ddelta, &points);
    assert!(res < 1e-12, "fake 2-curvature residual {res}");
    let broken = scaled_form(&c, 0.9);
    let res = fake_two_curvature_residual(&a0, &b.form(), &broken, &act, &ddelta, &points);
    assert!(res > 1e-3);
    // Analytic partials of the constrained field match finite differences.
    let x = [0.3, 0.6, 0.1, 0.8];
    for m in 0..4 {
        let exact = c.partial(&x, m, &[0, 1, 3]);
        let fd = c.without_partials().partial(&x, m, &[0, 1, 3]);
        assert!(frob_norm(&(&exact.mat - &fd.mat)) < 1e-6);
    }
}

#[test]
fn comb_index_is_lexicographic_rank() {
    assert_eq!(comb_index(&[0, 1], 4), 0);
    assert_eq!(comb_index(&[0, 3], 4), 2);
    assert_eq!(comb_index(&[1, 2], 4), 3);
    assert_eq!(comb_index(&[2, 3], 4), 5);
    assert_eq!(comb_index(&[0, 1, 2], 4), 0);
    assert_eq!(comb_index(&[0, 1, 3], 4), 1);
    assert_eq!(comb_index(&[1, 2, 3], 4), 3);
}
