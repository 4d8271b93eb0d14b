//! A catalog of concrete crossed modules and crossed 2-modules.
//!
//! All instances are addressed by stable string ids so scenes and the CLI
//! can refer to them.  Two of the entries deliberately violate an axiom and
//! serve as negative controls for the axiom checkers.

use std::sync::Arc;

use num_complex::Complex64;

use super::crossed2::Crossed2Module;
use super::crossed_module::CrossedModule;
use crate::error::{Error, Result};
use crate::lie_core::{bracket, c64, frob_inner_re, CMat, LieGroup};

/// A catalog entry: either a crossed module or a crossed 2-module.
pub enum Instance {
    Crossed(Arc<CrossedModule>),
    Crossed2(Arc<Crossed2Module>),
}

/// All ids accepted by [`instance_by_id`].
pub fn instance_ids() -> Vec<&'static str> {
    vec![
        "cm-inner-su2",
        "cm-inner-so3",
        "cm-inner-u1",
        "cm-abelian",
        "cm-cover-central",
        "cm-broken-alpha",
        "c2m-ce",
        "c2m-ce-zero",
        "c2m-broken-sym",
    ]
}

pub fn instance_by_id(id: &str) -> Result<Instance> {
    let inst = match id {
        "cm-inner-su2" => Instance::Crossed(Arc::new(cm_inner(id, LieGroup::su2()))),
        "cm-inner-so3" => Instance::Crossed(Arc::new(cm_inner(id, LieGroup::so3()))),
        "cm-inner-u1" => Instance::Crossed(Arc::new(cm_inner(id, LieGroup::u1()))),
        "cm-abelian" => Instance::Crossed(Arc::new(cm_abelian())),
        "cm-cover-central" => Instance::Crossed(Arc::new(cm_cover_central())),
        "cm-broken-alpha" => Instance::Crossed(Arc::new(cm_broken_alpha())),
        "c2m-ce" => Instance::Crossed2(Arc::new(c2m_central_extension(id, 0.8))),
        "c2m-ce-zero" => Instance::Crossed2(Arc::new(c2m_central_extension(id, 0.0))),
        "c2m-broken-sym" => Instance::Crossed2(Arc::new(c2m_broken_sym())),
        other => return Err(Error::Config(format!("unknown instance id: {other}"))),
    };
    Ok(inst)
}

// --- crossed modules --------------------------------------------------------

/// The inner crossed module of a group: `H = G`, `τ = id`, `α` conjugation.
pub fn cm_inner(id: &str, group: Arc<LieGroup>) -> CrossedModule {
    CrossedModule {
        id: id.to_string(),
        g: group.clone(),
        h: group,
        tau: Arc::new(|h| h.clone()),
        dtau: Arc::new(|y| y.clone()),
        alpha: Arc::new(conj_map()),
        dalpha_group: Arc::new(conj_map()),
        dalpha_alg: Arc::new(|x, y| x * y - y * x),
        dtau_section: Some(Arc::new(|x| x.clone())),
        kernel_indices: vec![],
    }
}

fn conj_map() -> impl Fn(&CMat, &CMat) -> CMat + Send + Sync {
    |g: &CMat, h: &CMat| {
        let inv = g.clone().try_inverse().expect("group element is invertible");
        g * h * inv
    }
}

/// `G = SO(3)` acting trivially on `H = U(1)` with trivial `τ`.  The whole
/// algebra 𝔥 is the kernel of `dτ`, so two-forms valued here are
/// unconstrained by fake flatness.
pub fn cm_abelian() -> CrossedModule {
    let g = LieGroup::so3();
    let h = LieGroup::u1();
    CrossedModule {
        id: "cm-abelian".to_string(),
        g,
        h,
        tau: Arc::new(|_| CMat::identity(3, 3)),
        dtau: Arc::new(|_| CMat::zeros(3, 3)),
        alpha: Arc::new(|_, h: &CMat| h.clone()),
        dalpha_group: Arc::new(|_, y: &CMat| y.clone()),
        dalpha_alg: Arc::new(|_, _| CMat::zeros(1, 1)),
        dtau_section: None,
        kernel_indices: vec![0],
    }
}

/// The 2x2 Pauli matrices.
fn pauli() -> [CMat; 3] {
    let i = Complex64::i();
    [
        CMat::from_row_slice(2, 2, &[c64(0.0), c64(1.0), c64(1.0), c64(0.0)]),
        CMat::from_row_slice(2, 2, &[c64(0.0), -i, i, c64(0.0)]),
        CMat::from_row_slice(2, 2, &[c64(1.0), c64(0.0), c64(0.0), c64(-1.0)]),
    ]
}

/// The covering morphism SU(2) → SO(3) in the Pauli basis:
/// `cover(u)[j][k] = ½ Re tr(σ_j u σ_k u†)` (column k holds the coordinates
/// of `u σ_k u†`).  This is a group homomorphism with kernel `{±I}` and
/// differential `iσ_k ↦ −2 L_k` (rotation generators `L_k` about axis k).
pub fn su2_cover(u: &CMat) -> CMat {
    let sigma = pauli();
    let udag = u.adjoint();
    let mut r = CMat::zeros(3, 3);
    for (k, sk) in sigma.iter().enumerate() {
        let image = u * sk * &udag;
        for (j, sj) in sigma.iter().enumerate() {
            r[(j, k)] = c64(0.5 * frob_inner_re(sj, &image));
        }
    }
    r
}

/// A continuous local section of [`su2_cover`]: the quaternion of the
/// rotation matrix by Shepperd's method, mapped to SU(2) by
/// `(w, v) ↦ w·I − i v·σ`.  Satisfies `cover(lift(R)) = R` for all `R` and
/// `lift(I) = I`.
pub fn su2_cover_lift(r: &CMat) -> CMat {
    let m = |i: usize, j: usize| r[(i, j)].re;
    let trace = m(0, 0) + m(1, 1) + m(2, 2);
    let (w, x, y, z);
    if trace > 0.0 {
        let s = (trace + 1.0).sqrt() * 2.0;
        w = 0.25 * s;
        x = (m(2, 1) - m(1, 2)) / s;
        y = (m(0, 2) - m(2, 0)) / s;
        z = (m(1, 0) - m(0, 1)) / s;
    } else if m(0, 0) > m(1, 1) && m(0, 0) > m(2, 2) {
        let s = (1.0 + m(0, 0) - m(1, 1) - m(2, 2)).sqrt() * 2.0;
        w = (m(2, 1) - m(1, 2)) / s;
        x = 0.25 * s;
        y = (m(0, 1) + m(1, 0)) / s;
        z = (m(0, 2) + m(2, 0)) / s;
    } else if m(1, 1) > m(2, 2) {
        let s = (1.0 + m(1, 1) - m(0, 0) - m(2, 2)).sqrt() * 2.0;
        w = (m(0, 2) - m(2, 0)) / s;
        x = (m(0, 1) + m(1, 0)) / s;
        y = 0.25 * s;
        z = (m(1, 2) + m(2, 1)) / s;
    } else {
        let s = (1.0 + m(2, 2) - m(0, 0) - m(1, 1)).sqrt() * 2.0;
        w = (m(1, 0) - m(0, 1)) / s;
        x = (m(0, 2) + m(2, 0)) / s;
        y = (m(1, 2) + m(2, 1)) / s;
        z = 0.25 * s;
    }
    let sigma = pauli();
    let mi = -Complex64::i();
    CMat::identity(2, 2) * c64(w)
        + (&sigma[0] * c64(x) + &sigma[1] * c64(y) + &sigma[2] * c64(z)) * mi
}

/// `G = SO(3)`, `H = SU(2) × U(1)` (block-diagonal 3x3 matrices), `τ` the
/// covering morphism on the SU(2) factor and trivial on U(1), `α_g`
/// conjugation of the SU(2) block by a lift of `g`.  `ker dτ` is the U(1)
/// direction, and `τ` has the nontrivial kernel `{±I} × U(1)`.
pub fn cm_cover_central() -> CrossedModule {
    let g = LieGroup::so3();
    let h = LieGroup::direct_sum("su2xu1", &[LieGroup::su2(), LieGroup::u1()]);
    let gh = g.clone();
    let hg = h.clone();
    let hd = h.clone();
    let gs = g.clone();
    let hs = h.clone();
    // dcover sends the k-th orthonormal su(2) direction to −2 times the k-th
    // orthonormal so(3) direction and kills the u(1) direction.
    let dtau = move |y: &CMat| -> CMat {
        let c = hg.coords_of(y);
        gh.from_coords(&[-2.0 * c[0], -2.0 * c[1], -2.0 * c[2]]).mat
    };
    let g2 = g.clone();
    let h2 = h.clone();
    let section = move |x: &CMat| -> CMat {
        let c = g2.coords_of(x);
        h2.from_coords(&[-0.5 * c[0], -0.5 * c[1], -0.5 * c[2], 0.0]).mat
    };
    let conj_by_lift = |gm: &CMat, hm: &CMat| -> CMat {
        let q = su2_cover_lift(gm);
        let mut big = CMat::identity(3, 3);
        big.view_mut((0, 0), (2, 2)).copy_from(&q);
        let inv = big.adjoint();
        &big * hm * inv
    };
    let dalpha_alg = move |x: &CMat, y: &CMat| -> CMat {
        let c = gs.coords_of(x);
        let lifted = hs.from_coords(&[-0.5 * c[0], -0.5 * c[1], -0.5 * c[2], 0.0]).mat;
        &lifted * y - y * lifted
    };
    CrossedModule {
        id: "cm-cover-central".to_string(),
        g,
        h: hd,
        tau: Arc::new(|hm: &CMat| su2_cover(&hm.view((0, 0), (2, 2)).into_owned())),
        dtau: Arc::new(dtau),
        alpha: Arc::new(conj_by_lift),
        dalpha_group: Arc::new(conj_by_lift),
        dalpha_alg: Arc::new(dalpha_alg),
        dtau_section: Some(Arc::new(section)),
        kernel_indices: vec![3],
    }
}

/// Negative control: left translation `α_g(h) = g·h` is not a group action
/// by automorphisms, so several axiom checks must fail.
pub fn cm_broken_alpha() -> CrossedModule {
    let group = LieGroup::su2();
    let mut cm = cm_inner("cm-broken-alpha", group);
    cm.alpha = Arc::new(|g: &CMat, h: &CMat| g * h);
    cm
}

// --- crossed 2-modules ------------------------------------------------------

/// Embeds a 2x2 su(2) matrix as a twisted-coordinate element of the central
/// extension (central coordinate zero).
fn embed_su2_in_l(v: &CMat) -> CMat {
    let mut m = CMat::zeros(4, 4);
    m.view_mut((0, 0), (2, 2)).copy_from(v);
    m
}

/// A crossed 2-module built from a central extension of su(2): `G` trivial,
/// `H = SU(2)`, `L` the central extension of su(2) twisted in the direction
/// `beta_scale · iσ₃/√2`.  `δ` projects out the su(2) block; the Peiffer
/// lifting is the twisted bracket of the embedded arguments, so
/// `δ{v, w} = [v, w]` with a central component recording the twist.
pub fn c2m_central_extension(id: &str, beta_scale: f64) -> Crossed2Module {
    let g = LieGroup::trivial();
    let h = LieGroup::su2();
    let l = LieGroup::central_twist_su2("l-ce", [0.0, 0.0, beta_scale]);
    let lb = l.clone();
    let lift = move |v: &CMat, w: &CMat| -> CMat {
        let ev = lb.algebra(embed_su2_in_l(v));
        let ew = lb.algebra(embed_su2_in_l(w));
        bracket(&ev, &ew).expect("same group").mat
    };
    Crossed2Module {
        id: id.to_string(),
        g,
        h,
        l,
        partial: Arc::new(|_| CMat::identity(1, 1)),
        dpartial: Arc::new(|_| CMat::zeros(1, 1)),
        delta: Arc::new(|lm: &CMat| lm.view((0, 0), (2, 2)).into_owned()),
        ddelta: Arc::new(|x: &CMat| x.view((0, 0), (2, 2)).into_owned()),
        act_h_group: Arc::new(|_, hm: &CMat| hm.clone()),
        dact_h_group: Arc::new(|_, v: &CMat| v.clone()),
        dact_h: Arc::new(|_, _| CMat::zeros(2, 2)),
        act_l_group: Arc::new(|_, lm: &CMat| lm.clone()),
        dact_l_group: Arc::new(|_, x: &CMat| x.clone()),
        dact_l: Arc::new(|_, _| CMat::zeros(4, 4)),
        peiffer_lift: Arc::new(lift),
        ddelta_section: Some(Arc::new(|v: &CMat| embed_su2_in_l(v))),
        kernel_indices: vec![3],
    }
}

/// Negative control: a symmetric central pairing in place of the Peiffer
/// lifting violates antisymmetry and `δ{v, w} = ⟨v, w⟩`.
pub fn c2m_broken_sym() -> Crossed2Module {
    let mut c2m = c2m_central_extension("c2m-broken-sym", 0.0);
    c2m.peiffer_lift = Arc::new(|v: &CMat, w: &CMat| {
        let mut m = CMat::zeros(4, 4);
        m[(2, 3)] = c64(frob_inner_re(v, w));
        m
    });
    c2m
}
