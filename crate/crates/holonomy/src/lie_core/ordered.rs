use super::group::{c64, exp_map, AlgebraElement, GroupElement};
use super::CMat;
use std::sync::Arc;

use super::group::LieGroup;

/// Integration schemes for the ordered exponential `g' = f(t) g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderedScheme {
    /// `g_{k+1} = exp(h f(t_k + h/2)) g_k`; order 2, the library default.
    Midpoint,
    /// Two-exponential commutator-free rule built on the Gauss–Legendre
    /// nodes `t_k + (1/2 ∓ √3/6) h`; order 4.
    CommutatorFree4,
}

/// Solves `g'(t) = f(t) g(t)` on `[0, 1]` with `g(0) = e` and returns `g(1)`.
///
/// `f` must return algebra elements of a single group; `steps` is the number
/// of uniform integration steps.
pub fn path_ordered_exp(
    group: &Arc<LieGroup>,
    f: &dyn Fn(f64) -> AlgebraElement,
    steps: usize,
    scheme: OrderedScheme,
) -> GroupElement {
    let h = 1.0 / steps as f64;
    let mut g = group.identity();
    for k in 0..steps {
        let t0 = k as f64 * h;
        let step = match scheme {
            OrderedScheme::Midpoint => exp_map(&f(t0 + 0.5 * h).scale(h)),
            OrderedScheme::CommutatorFree4 => {
                let c1 = 0.5 - 3f64.sqrt() / 6.0;
                let c2 = 0.5 + 3f64.sqrt() / 6.0;
                let alpha = 0.25 + 3f64.sqrt() / 6.0;
                let beta = 0.25 - 3f64.sqrt() / 6.0;
                let a1 = f(t0 + c1 * h);
                let a2 = f(t0 + c2 * h);
                let x1 = group.algebra((&a1.mat * c64(alpha) + &a2.mat * c64(beta)) * c64(h));
                let x2 = group.algebra((&a1.mat * c64(beta) + &a2.mat * c64(alpha)) * c64(h));
                exp_map(&x2).mul(&exp_map(&x1)).expect("same group")
            }
        };
        g = step.mul(&g).expect("same group");
    }
    g
}

/// Ordered exponential of grid samples `f_0 .. f_n` at uniform spacing `h`:
/// each step uses the trapezoidal average `(f_k + f_{k+1})/2` in the
/// exponent, which matches the midpoint value to second order.
///
/// Returns the cumulative products `g_0 = e, g_1, .., g_n` at every node.
pub fn ordered_exp_samples(group: &Arc<LieGroup>, samples: &[CMat], h: f64) -> Vec<GroupElement> {
    let mut out = Vec::with_capacity(samples.len());
    let mut g = group.identity();
    out.push(g.clone());
    for k in 0..samples.len().saturating_sub(1) {
        let avg = (&samples[k] + &samples[k + 1]) * c64(0.5 * h);
        let step = exp_map(&group.algebra(avg));
        g = step.mul(&g).expect("same group");
        out.push(g.clone());
    }
    out
}
