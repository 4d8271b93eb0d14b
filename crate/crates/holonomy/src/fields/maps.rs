use std::sync::Arc;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::lie_core::RMat;

/// Step used by the central finite-difference Jacobian of parameter maps.
pub const MAP_FD_STEP: f64 = 1e-5;

type EvalFn = Arc<dyn Fn(&[f64]) -> DVector<f64> + Send + Sync>;
type JacFn = Arc<dyn Fn(&[f64]) -> RMat + Send + Sync>;

/// A smooth map from the unit cube `[0,1]^dom` into `R^target`.
///
/// Maps must extend smoothly to a neighbourhood of the cube, so the central
/// finite-difference Jacobian is valid on the boundary too.  Builders that
/// know their derivative attach an analytic Jacobian.
#[derive(Clone)]
pub struct ParamMap {
    pub dom: usize,
    pub target: usize,
    eval: EvalFn,
    jac: Option<JacFn>,
}

impl ParamMap {
    pub fn new(
        dom: usize,
        target: usize,
        eval: impl Fn(&[f64]) -> DVector<f64> + Send + Sync + 'static,
    ) -> Self {
        ParamMap { dom, target, eval: Arc::new(eval), jac: None }
    }

    pub fn with_jacobian(
        mut self,
        jac: impl Fn(&[f64]) -> RMat + Send + Sync + 'static,
    ) -> Self {
        self.jac = Some(Arc::new(jac));
        self
    }

    /// Drops the analytic Jacobian, forcing the finite-difference path.
    pub fn without_jacobian(&self) -> Self {
        let mut copy = self.clone();
        copy.jac = None;
        copy
    }

    pub fn eval(&self, u: &[f64]) -> DVector<f64> {
        debug_assert_eq!(u.len(), self.dom);
        (self.eval)(u)
    }

    /// The `target × dom` Jacobian, analytic when available, otherwise by
    /// second-order central differences.
    pub fn jacobian(&self, u: &[f64]) -> RMat {
        if let Some(jac) = &self.jac {
            return jac(u);
        }
        let mut j = RMat::zeros(self.target, self.dom);
        let mut up = u.to_vec();
        let mut um = u.to_vec();
        for k in 0..self.dom {
            up[k] = u[k] + MAP_FD_STEP;
            um[k] = u[k] - MAP_FD_STEP;
            let col = ((self.eval)(&up) - (self.eval)(&um)) / (2.0 * MAP_FD_STEP);
            j.set_column(k, &col);
            up[k] = u[k];
            um[k] = u[k];
        }
        j
    }

    /// Composes with a componentwise reparametrisation `φ: [0,1]^dom →
    /// [0,1]^dom`, `u_k ↦ φ_k(u_k)`, each factor monotone with φ_k(0)=0,
    /// φ_k(1)=1.  Used to produce thin homotopies of paths and surfaces.
    pub fn reparametrized(&self, warps: Vec<AxisWarp>) -> Result<ParamMap> {
        if warps.len() != self.dom {
            return Err(Error::Config(format!(
                "expected {} axis warps, got {}",
                self.dom,
                warps.len()
            )));
        }
        let inner = self.clone();
        let warps2 = warps.clone();
        let map = ParamMap::new(self.dom, self.target, move |u: &[f64]| {
            let w: Vec<f64> = u.iter().zip(&warps).map(|(x, p)| p.eval(*x)).collect();
            inner.eval(&w)
        });
        let inner = self.clone();
        Ok(map.with_jacobian(move |u: &[f64]| {
            let w: Vec<f64> = u.iter().zip(&warps2).map(|(x, p)| p.eval(*x)).collect();
            let mut j = inner.jacobian(&w);
            for (k, p) in warps2.iter().enumerate() {
                let d = p.deriv(u[k]);
                let col = j.column(k) * d;
                j.set_column(k, &col);
            }
            j
        }))
    }
}

/// A monotone warp of one parameter axis fixing the endpoints 0 and 1.
#[derive(Clone, Copy, Debug)]
pub enum AxisWarp {
    /// The identity warp.
    Identity,
    /// `x ↦ x + a·sin(πx)·x(1−x)`-style smooth warp: here
    /// `x ↦ x − a·sin(2πx)/(2π)`, monotone for |a| < 1.
    Sine(f64),
    /// `x ↦ (1−a)x + a x²`, monotone for a ∈ (−1, 1).
    Quadratic(f64),
    /// The cubic smoothstep `x ↦ 3x² − 2x³` (derivative vanishing at the
    /// endpoints; useful for building rank-deficient corners).
    Smoothstep,
}

impl AxisWarp {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            AxisWarp::Identity => x,
            AxisWarp::Sine(a) => x - a * (2.0 * std::f64::consts::PI * x).sin()
                / (2.0 * std::f64::consts::PI),
            AxisWarp::Quadratic(a) => (1.0 - a) * x + a * x * x,
            AxisWarp::Smoothstep => x * x * (3.0 - 2.0 * x),
        }
    }

    pub fn deriv(&self, x: f64) -> f64 {
        match self {
            AxisWarp::Identity => 1.0,
            AxisWarp::Sine(a) => 1.0 - a * (2.0 * std::f64::consts::PI * x).cos(),
            AxisWarp::Quadratic(a) => (1.0 - a) + 2.0 * a * x,
            AxisWarp::Smoothstep => 6.0 * x * (1.0 - x),
        }
    }
}

/// The straight segment from `p0` to `p1`.
pub fn line(p0: &[f64], p1: &[f64]) -> ParamMap {
    let a = DVector::from_column_slice(p0);
    let b = DVector::from_column_slice(p1);
    let dir = &b - &a;
    let a2 = a.clone();
    let dir2 = dir.clone();
    let m = p0.len();
    ParamMap::new(1, m, move |u: &[f64]| &a + &dir * u[0])
        .with_jacobian(move |_u: &[f64]| {
            let mut j = RMat::zeros(a2.len(), 1);
            j.set_column(0, &dir2);
            j
        })
}

/// A smooth loop through `base` with trigonometric wobble of the given
/// amplitude, seeded per coordinate; starts and ends at `base` with equal
/// derivatives, so it closes smoothly.
pub fn seeded_loop(dim: usize, base: &[f64], amplitude: f64, seed: u64) -> ParamMap {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let coeffs: Vec<(f64, f64)> = (0..dim)
        .map(|_| (rng.gen_range(-amplitude..=amplitude), rng.gen_range(-amplitude..=amplitude)))
        .collect();
    let base = base.to_vec();
    let coeffs2 = coeffs.clone();
    let base2 = base.clone();
    let tau = 2.0 * std::f64::consts::PI;
    ParamMap::new(1, dim, move |u: &[f64]| {
        let t = u[0];
        DVector::from_iterator(
            base.len(),
            base.iter().zip(&coeffs).map(|(b, (c1, c2))| {
                b + c1 * (1.0 - (tau * t).cos()) + c2 * (tau * t).sin() * (1.0 - (tau * t).cos())
            }),
        )
    })
    .with_jacobian(move |u: &[f64]| {
        let t = u[0];
        let mut j = RMat::zeros(base2.len(), 1);
        for (row, (c1, c2)) in coeffs2.iter().enumerate() {
            j[(row, 0)] = c1 * tau * (tau * t).sin()
                + c2 * tau * ((tau * t).cos() * (1.0 - (tau * t).cos())
                    + (tau * t).sin() * (tau * t).sin());
        }
        j
    })
}

/// A smooth open arc from seeded trigonometric data (not closed).
pub fn seeded_arc(dim: usize, p0: &[f64], p1: &[f64], amplitude: f64, seed: u64) -> ParamMap {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let coeffs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-amplitude..=amplitude)).collect();
    let straight = line(p0, p1);
    let coeffs2 = coeffs.clone();
    let straight2 = straight.clone();
    let pi = std::f64::consts::PI;
    ParamMap::new(1, dim, move |u: &[f64]| {
        let t = u[0];
        let mut p = straight.eval(u);
        for (row, c) in coeffs.iter().enumerate() {
            p[row] += c * (pi * t).sin();
        }
        p
    })
    .with_jacobian(move |u: &[f64]| {
        let t = u[0];
        let mut j = straight2.jacobian(u);
        for (row, c) in coeffs2.iter().enumerate() {
            j[(row, 0)] += c * pi * (pi * t).cos();
        }
        j
    })
}

/// The ruled square `Σ(s, t) = (1−s)·γ₀(t) + s·γ₁(t)` between two paths
/// sharing endpoints.  When the boundary paths share endpoints, the square
/// is pinned: its `t = 0` and `t = 1` edges are constant.
pub fn ruled_square(gamma0: &ParamMap, gamma1: &ParamMap) -> Result<ParamMap> {
    if gamma0.dom != 1 || gamma1.dom != 1 || gamma0.target != gamma1.target {
        return Err(Error::Config("ruled_square needs two paths into the same space".into()));
    }
    let m = gamma0.target;
    let g0 = gamma0.clone();
    let g1 = gamma1.clone();
    let g0j = gamma0.clone();
    let g1j = gamma1.clone();
    Ok(ParamMap::new(2, m, move |u: &[f64]| {
        let (s, t) = (u[0], u[1]);
        g0.eval(&[t]) * (1.0 - s) + g1.eval(&[t]) * s
    })
    .with_jacobian(move |u: &[f64]| {
        let (s, t) = (u[0], u[1]);
        let p0 = g0j.eval(&[t]);
        let p1 = g1j.eval(&[t]);
        let d0 = g0j.jacobian(&[t]);
        let d1 = g1j.jacobian(&[t]);
        let mut j = RMat::zeros(p0.len(), 2);
        j.set_column(0, &(&p1 - &p0));
        j.set_column(1, &(d0.column(0) * (1.0 - s) + d1.column(0) * s));
        j
    }))
}

/// The smooth bump `sin(πx)`: vanishes at 0 and 1, equals 1 at ½.
pub fn bump(x: f64) -> f64 {
    (std::f64::consts::PI * x).sin()
}

pub fn bump_deriv(x: f64) -> f64 {
    std::f64::consts::PI * (std::f64::consts::PI * x).cos()
}

/// The bump `sin(2πx)`: vanishes at 0, ½ and 1.  Used when a cube or square
/// must stay thin on its middle slice so it can be split in two.
pub fn bump_split(x: f64) -> f64 {
    (2.0 * std::f64::consts::PI * x).sin()
}

pub fn bump_split_deriv(x: f64) -> f64 {
    2.0 * std::f64::consts::PI * (2.0 * std::f64::consts::PI * x).cos()
}

/// A cube `Θ(r, s, t) = γ(t) + w_r(r)·w_s(s)·w_t(t)·V(r, s, t)` around a
/// spine path `γ`, with bumps vanishing on every face.  All six faces are
/// then thin (the `t`-faces are points, the others trace the spine), and
/// every slice `Σ_r = Θ(r, ·, ·)` is a pinned square.
///
/// `V` is a seeded trigonometric polynomial displacement field; `split_s`
/// selects the bump for the `s` axis that also vanishes at `s = ½`, which
/// makes the cube vertically splittable.
pub fn bump_cube(spine: &ParamMap, amplitude: f64, seed: u64, split_s: bool) -> Result<ParamMap> {
    if spine.dom != 1 {
        return Err(Error::Config("bump_cube needs a path as spine".into()));
    }
    let m = spine.target;
    let disp = seeded_displacement(3, m, amplitude, seed);
    let wsf: fn(f64) -> f64 = if split_s { bump_split } else { bump };
    let wsd: fn(f64) -> f64 = if split_s { bump_split_deriv } else { bump_deriv };
    let g = spine.clone();
    let gj = spine.clone();
    let dj = disp.clone();
    Ok(ParamMap::new(3, m, move |u: &[f64]| {
        let (r, s, t) = (u[0], u[1], u[2]);
        let w = bump(r) * wsf(s) * bump(t);
        g.eval(&[t]) + disp.eval(u) * w
    })
    .with_jacobian(move |u: &[f64]| {
        let (r, s, t) = (u[0], u[1], u[2]);
        let w = bump(r) * wsf(s) * bump(t);
        let v = dj.eval(u);
        let dv = dj.jacobian(u);
        let mut j = RMat::zeros(v.len(), 3);
        j.set_column(0, &(&v * (bump_deriv(r) * wsf(s) * bump(t)) + dv.column(0) * w));
        j.set_column(1, &(&v * (bump(r) * wsd(s) * bump(t)) + dv.column(1) * w));
        j.set_column(
            2,
            &(gj.jacobian(&[t]).column(0)
                + &v * (bump(r) * wsf(s) * bump_deriv(t))
                + dv.column(2) * w),
        );
        j
    }))
}

/// A tesseract `T(q, r, s, t) = γ(t) + w(r)·w(s)·w(t)·V(q, r, s, t)`.
/// The `s`- and `t`-faces are independent of `q` and the `r`-faces trace
/// the spine, so the family `q ↦ T(q, ·, ·, ·)` interpolates between the
/// cubes `T(0, ·)` and `T(1, ·)` while keeping the boundary data fixed
/// where volume transport requires it.
pub fn bump_tesseract(
    spine: &ParamMap,
    amplitude: f64,
    seed: u64,
    split_r: bool,
) -> Result<ParamMap> {
    if spine.dom != 1 {
        return Err(Error::Config("bump_tesseract needs a path as spine".into()));
    }
    let m = spine.target;
    let disp = seeded_displacement(4, m, amplitude, seed);
    let wrf: fn(f64) -> f64 = if split_r { bump_split } else { bump };
    let wrd: fn(f64) -> f64 = if split_r { bump_split_deriv } else { bump_deriv };
    let g = spine.clone();
    let gj = spine.clone();
    let dj = disp.clone();
    Ok(ParamMap::new(4, m, move |u: &[f64]| {
        let (r, s, t) = (u[1], u[2], u[3]);
        let w = wrf(r) * bump(s) * bump(t);
        g.eval(&[t]) + disp.eval(u) * w
    })
    .with_jacobian(move |u: &[f64]| {
        let (r, s, t) = (u[1], u[2], u[3]);
        let w = wrf(r) * bump(s) * bump(t);
        let v = dj.eval(u);
        let dv = dj.jacobian(u);
        let mut j = RMat::zeros(v.len(), 4);
        j.set_column(0, &(dv.column(0) * w));
        j.set_column(1, &(&v * (wrd(r) * bump(s) * bump(t)) + dv.column(1) * w));
        j.set_column(2, &(&v * (wrf(r) * bump_deriv(s) * bump(t)) + dv.column(2) * w));
        j.set_column(
            3,
            &(gj.jacobian(&[t]).column(0)
                + &v * (wrf(r) * bump(s) * bump_deriv(t))
                + dv.column(3) * w),
        );
        j
    }))
}

/// A seeded smooth displacement field `[0,1]^dom → R^m` made of low-frequency
/// trigonometric terms, with analytic Jacobian.
pub fn seeded_displacement(dom: usize, m: usize, amplitude: f64, seed: u64) -> ParamMap {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // rows: target components; per component one coefficient per term.
    // terms: constant plus sin/cos of each variable.
    let nterms = 1 + 2 * dom;
    let coeffs: Vec<Vec<f64>> = (0..m)
        .map(|_| (0..nterms).map(|_| rng.gen_range(-amplitude..=amplitude)).collect())
        .collect();
    let coeffs2 = coeffs.clone();
    ParamMap::new(dom, m, move |u: &[f64]| {
        DVector::from_iterator(
            m,
            coeffs.iter().map(|c| {
                let mut v = c[0];
                for (k, x) in u.iter().enumerate() {
                    v += c[1 + 2 * k] * x.sin() + c[2 + 2 * k] * x.cos();
                }
                v
            }),
        )
    })
    .with_jacobian(move |u: &[f64]| {
        let mut j = RMat::zeros(m, dom);
        for (row, c) in coeffs2.iter().enumerate() {
            for (k, x) in u.iter().enumerate() {
                j[(row, k)] = c[1 + 2 * k] * x.cos() - c[2 + 2 * k] * x.sin();
            }
        }
        j
    })
}

/// Numerical rank of the Jacobian at `u` with absolute singular-value
/// threshold `tol`.
pub fn jacobian_rank(map: &ParamMap, u: &[f64], tol: f64) -> usize {
    let j = map.jacobian(u);
    j.svd(false, false).singular_values.iter().filter(|s| **s > tol).count()
}

/// The worst second singular value of the Jacobian of `map` restricted to
/// the free axes of a slice: `fixed` pins chosen coordinates, the rest are
/// scanned on a grid.  A slice is thin iff this proxy is (numerically) zero.
fn thinness_proxy(map: &ParamMap, fixed: &[(usize, f64)], grid: usize) -> f64 {
    let free: Vec<usize> =
        (0..map.dom).filter(|k| !fixed.iter().any(|(i, _)| i == k)).collect();
    let mut worst = 0.0f64;
    let npts = grid.pow(free.len() as u32);
    for flat in 0..npts {
        let mut u = vec![0.0; map.dom];
        for (i, v) in fixed {
            u[*i] = *v;
        }
        let mut rem = flat;
        for k in &free {
            u[*k] = (rem % grid) as f64 / (grid - 1) as f64;
            rem /= grid;
        }
        // Restriction of the Jacobian to the free axes only.
        let j = map.jacobian(&u);
        let mut sub = RMat::zeros(map.target, free.len());
        for (c, k) in free.iter().enumerate() {
            sub.set_column(c, &j.column(*k));
        }
        let sv = sub.svd(false, false).singular_values;
        if sv.len() > 1 {
            worst = worst.max(sv[1]);
        }
    }
    worst
}

/// The second singular value of the Jacobian at a single point; a map is
/// thin at `u` iff this is (numerically) zero.
pub fn thinness_rank_proxy(map: &ParamMap, u: &[f64]) -> f64 {
    let sv = map.jacobian(u).svd(false, false).singular_values;
    if sv.len() > 1 {
        sv[1]
    } else {
        0.0
    }
}

/// Checks that a 3-parameter map is a transport-ready cube: every face with
/// `s` or `t` pinned to 0 or 1 must be thin (restricted Jacobian rank ≤ 1).
/// In particular each slice `Σ_r` is then a pinned square and the `r`-faces
/// contribute no surface holonomy of their own.
pub fn validate_cube(map: &ParamMap, grid: usize, tol: f64) -> Result<()> {
    if map.dom != 3 {
        return Err(Error::Config("validate_cube expects a 3-parameter map".into()));
    }
    for (axis, name) in [(1usize, "s"), (2usize, "t")] {
        for v in [0.0, 1.0] {
            let proxy = thinness_proxy(map, &[(axis, v)], grid);
            if proxy > tol {
                return Err(Error::CubeFace { face: format!("{name} = {v}"), proxy, tol });
            }
        }
    }
    Ok(())
}

/// Checks that a 4-parameter map is a transport-ready tesseract:
/// (a) the `t`-faces do not depend on `q`,
/// (b) the `s`-faces do not depend on `q`,
/// (c) the `r`-faces are thin (restricted rank ≤ 1), and
/// every fixed-`q` slice passes [`validate_cube`].
pub fn validate_tesseract(map: &ParamMap, grid: usize, tol: f64) -> Result<()> {
    if map.dom != 4 {
        return Err(Error::Config("validate_tesseract expects a 4-parameter map".into()));
    }
    let lin = |g: usize, i: usize| i as f64 / (g - 1) as f64;
    for (axis, name) in [(3usize, "t"), (2usize, "s")] {
        for v in [0.0, 1.0] {
            // q-independence of the face: compare against q = 0.
            let (fa, fb): (usize, usize) = if axis == 3 { (1, 2) } else { (1, 3) };
            for a in 0..grid {
                for b in 0..grid {
                    for qi in 1..grid {
                        let mut u0 = vec![0.0; 4];
                        u0[axis] = v;
                        u0[fa] = lin(grid, a);
                        u0[fb] = lin(grid, b);
                        let mut u1 = u0.clone();
                        u1[0] = lin(grid, qi);
                        let residual = (map.eval(&u0) - map.eval(&u1)).norm();
                        if residual > tol {
                            return Err(Error::Tesseract {
                                condition: format!("face {name} = {v} independent of q"),
                                residual,
                                tol,
                            });
                        }
                    }
                }
            }
        }
    }
    for v in [0.0, 1.0] {
        let residual = thinness_proxy(map, &[(1, v)], grid);
        if residual > tol {
            return Err(Error::Tesseract {
                condition: format!("face r = {v} thin"),
                residual,
                tol,
            });
        }
    }
    for qi in 0..grid {
        let q = lin(grid, qi);
        let inner = map.clone();
        let slice = ParamMap::new(3, map.target, move |u: &[f64]| {
            inner.eval(&[q, u[0], u[1], u[2]])
        });
        validate_cube(&slice, grid, tol)?;
    }
    Ok(())
}
