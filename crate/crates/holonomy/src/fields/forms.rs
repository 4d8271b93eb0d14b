use std::sync::Arc;

use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::lie_core::{bracket, c64, AlgebraElement, CMat, LieGroup};

/// Step used by finite-difference partial derivatives of field components.
pub const FIELD_FD_STEP: f64 = 1e-4;

type CompFn = Arc<dyn Fn(&[f64], &[usize]) -> CMat + Send + Sync>;
type PartFn = Arc<dyn Fn(&[f64], usize, &[usize]) -> CMat + Send + Sync>;

/// A Lie-algebra-valued differential form of degree 1, 2, or 3 on ambient
/// `R^dim`, presented by its components in strictly increasing index order.
///
/// `comp(x, idx)` is only ever called with `idx` strictly increasing; the
/// public accessor antisymmetrises.  Catalogue fields attach analytic
/// partial derivatives; otherwise components are differentiated by central
/// finite differences with step [`FIELD_FD_STEP`].
#[derive(Clone)]
pub struct FormField {
    pub degree: usize,
    pub dim: usize,
    pub group: Arc<LieGroup>,
    comp: CompFn,
    partial: Option<PartFn>,
}

impl FormField {
    pub fn new(
        degree: usize,
        dim: usize,
        group: Arc<LieGroup>,
        comp: impl Fn(&[f64], &[usize]) -> CMat + Send + Sync + 'static,
    ) -> Self {
        assert!((1..=3).contains(&degree), "only degrees 1..=3 are supported");
        FormField { degree, dim, group, comp: Arc::new(comp), partial: None }
    }

    pub fn with_partials(
        mut self,
        partial: impl Fn(&[f64], usize, &[usize]) -> CMat + Send + Sync + 'static,
    ) -> Self {
        self.partial = Some(Arc::new(partial));
        self
    }

    /// Drops analytic partial derivatives, forcing the finite-difference
    /// path (used to cross-validate the two).
    pub fn without_partials(&self) -> Self {
        let mut copy = self.clone();
        copy.partial = None;
        copy
    }

    /// The zero form of the given degree.
    pub fn zero(degree: usize, dim: usize, group: Arc<LieGroup>) -> Self {
        let n = group.matrix_size();
        FormField::new(degree, dim, group, move |_, _| CMat::zeros(n, n))
            .with_partials(move |_, _, _| CMat::zeros(n, n))
    }

    /// Component with arbitrary index order, antisymmetrised; repeated
    /// indices give zero.
    pub fn component(&self, x: &[f64], idx: &[usize]) -> AlgebraElement {
        debug_assert_eq!(idx.len(), self.degree);
        let (sorted, sign) = sort_with_sign(idx);
        if sign == 0 {
            return self.group.algebra(CMat::zeros(
                self.group.matrix_size(),
                self.group.matrix_size(),
            ));
        }
        let m = (self.comp)(x, &sorted);
        self.group.algebra(if sign > 0 { m } else { -m })
    }

    /// `∂_j` of the component at `x` (same antisymmetrisation rules).
    pub fn partial(&self, x: &[f64], j: usize, idx: &[usize]) -> AlgebraElement {
        debug_assert_eq!(idx.len(), self.degree);
        let (sorted, sign) = sort_with_sign(idx);
        if sign == 0 {
            return self.group.algebra(CMat::zeros(
                self.group.matrix_size(),
                self.group.matrix_size(),
            ));
        }
        let m = match &self.partial {
            Some(p) => p(x, j, &sorted),
            None => {
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[j] += FIELD_FD_STEP;
                xm[j] -= FIELD_FD_STEP;
                ((self.comp)(&xp, &sorted) - (self.comp)(&xm, &sorted))
                    * c64(0.5 / FIELD_FD_STEP)
            }
        };
        self.group.algebra(if sign > 0 { m } else { -m })
    }

    /// Evaluates the form on `degree` tangent vectors.
    pub fn apply(&self, x: &[f64], vectors: &[DVector<f64>]) -> Result<AlgebraElement> {
        if vectors.len() != self.degree {
            return Err(Error::Config(format!(
                "degree-{} form applied to {} vectors",
                self.degree,
                vectors.len()
            )));
        }
        let n = self.group.matrix_size();
        let mut acc = CMat::zeros(n, n);
        match self.degree {
            1 => {
                let v = &vectors[0];
                for i in 0..self.dim {
                    if v[i] != 0.0 {
                        acc += (self.comp)(x, &[i]) * c64(v[i]);
                    }
                }
            }
            2 => {
                let (v, w) = (&vectors[0], &vectors[1]);
                for i in 0..self.dim {
                    for j in (i + 1)..self.dim {
                        let coef = v[i] * w[j] - v[j] * w[i];
                        if coef != 0.0 {
                            acc += (self.comp)(x, &[i, j]) * c64(coef);
                        }
                    }
                }
            }
            _ => {
                let (u, v, w) = (&vectors[0], &vectors[1], &vectors[2]);
                for i in 0..self.dim {
                    for j in (i + 1)..self.dim {
                        for k in (j + 1)..self.dim {
                            let coef = det3(
                                u[i], v[i], w[i],
                                u[j], v[j], w[j],
                                u[k], v[k], w[k],
                            );
                            if coef != 0.0 {
                                acc += (self.comp)(x, &[i, j, k]) * c64(coef);
                            }
                        }
                    }
                }
            }
        }
        Ok(self.group.algebra(acc))
    }
}

#[allow(clippy::too_many_arguments)]
fn det3(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64, g: f64, h: f64, i: f64) -> f64 {
    a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
}

/// Sorts an index list, returning the permutation sign (0 for repeats).
fn sort_with_sign(idx: &[usize]) -> (Vec<usize>, i32) {
    let mut v = idx.to_vec();
    let mut sign = 1i32;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            match v[j].cmp(&v[i]) {
                std::cmp::Ordering::Less => {
                    v.swap(i, j);
                    sign = -sign;
                }
                std::cmp::Ordering::Equal => return (v, 0),
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    (v, sign)
}

/// Curvature of a connection one-form:
/// `F_{ij} = ∂_i A_j − ∂_j A_i + [A_i, A_j]`.
pub fn curvature(a: &FormField, x: &[f64], i: usize, j: usize) -> Result<AlgebraElement> {
    debug_assert_eq!(a.degree, 1);
    let da = a.partial(x, i, &[j]).mat - a.partial(x, j, &[i]).mat;
    let comm = bracket(&a.component(x, &[i]), &a.component(x, &[j]))?;
    Ok(a.group.algebra(da + comm.mat))
}

/// Covariant curvature of a two-form `B` under the action `act: 𝔤 × 𝔥 → 𝔥`:
/// `(F_B)_{ijk} = dB_{ijk} + A_i ▷ B_{jk} − A_j ▷ B_{ik} + A_k ▷ B_{ij}`,
/// with `dB_{ijk} = ∂_i B_{jk} − ∂_j B_{ik} + ∂_k B_{ij}`.
pub fn two_curvature(
    a: &FormField,
    b: &FormField,
    act: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    x: &[f64],
    i: usize,
    j: usize,
    k: usize,
) -> AlgebraElement {
    debug_assert_eq!(b.degree, 2);
    let db = b.partial(x, i, &[j, k]).mat - b.partial(x, j, &[i, k]).mat
        + b.partial(x, k, &[i, j]).mat;
    let wedge = act(&a.component(x, &[i]), &b.component(x, &[j, k])).mat
        - act(&a.component(x, &[j]), &b.component(x, &[i, k])).mat
        + act(&a.component(x, &[k]), &b.component(x, &[i, j])).mat;
    b.group.algebra(db + wedge)
}

/// The exterior-plus-action part of the three-form curvature:
/// `(dC + A ∧ C)_{ijkl} = ∂_i C_{jkl} − ∂_j C_{ikl} + ∂_k C_{ijl} − ∂_l C_{ijk}
/// + A_i ▷ C_{jkl} − A_j ▷ C_{ikl} + A_k ▷ C_{ijl} − A_l ▷ C_{ijk}`.
#[allow(clippy::too_many_arguments)]
pub fn three_curvature_dc(
    a: &FormField,
    c: &FormField,
    act: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    x: &[f64],
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> AlgebraElement {
    debug_assert_eq!(c.degree, 3);
    let dc = c.partial(x, i, &[j, k, l]).mat - c.partial(x, j, &[i, k, l]).mat
        + c.partial(x, k, &[i, j, l]).mat
        - c.partial(x, l, &[i, j, k]).mat;
    let wedge = act(&a.component(x, &[i]), &c.component(x, &[j, k, l])).mat
        - act(&a.component(x, &[j]), &c.component(x, &[i, k, l])).mat
        + act(&a.component(x, &[k]), &c.component(x, &[i, j, l])).mat
        - act(&a.component(x, &[l]), &c.component(x, &[i, j, k])).mat;
    c.group.algebra(dc + wedge)
}

/// The Peiffer square of a two-form:
/// `{B ∧ B}_{ijkl} = {B_{ij}, B_{kl}} − {B_{ik}, B_{jl}} + {B_{il}, B_{jk}}`.
#[allow(clippy::too_many_arguments)]
pub fn peiffer_square(
    b: &FormField,
    lift: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    x: &[f64],
    i: usize,
    j: usize,
    k: usize,
    l: usize,
) -> AlgebraElement {
    debug_assert_eq!(b.degree, 2);
    let first = lift(&b.component(x, &[i, j]), &b.component(x, &[k, l]));
    let second = lift(&b.component(x, &[i, k]), &b.component(x, &[j, l]));
    let third = lift(&b.component(x, &[i, l]), &b.component(x, &[j, k]));
    first.group.algebra(&first.mat - &second.mat + &third.mat)
}

/// Full three-form curvature `F_C = dC + A ∧ C + {B ∧ B}`.
#[allow(clippy::too_many_arguments)]
pub fn three_curvature(
    a: &FormField,
    b: &FormField,
    c: &FormField,
    act: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    lift: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    x: &[f64],
    idx: [usize; 4],
) -> AlgebraElement {
    let [i, j, k, l] = idx;
    let dc = three_curvature_dc(a, c, act, x, i, j, k, l);
    let sq = peiffer_square(b, lift, x, i, j, k, l);
    c.group.algebra(dc.mat + sq.mat)
}

/// Worst violation of fake flatness `dτ(B_{ij}) = (F_A)_{ij}` over sample
/// points.
pub fn fake_curvature_residual(
    a: &FormField,
    b: &FormField,
    dtau: &dyn Fn(&AlgebraElement) -> AlgebraElement,
    points: &[Vec<f64>],
) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in points {
        for i in 0..a.dim {
            for j in (i + 1)..a.dim {
                let fa = curvature(a, x, i, j)?;
                let tb = dtau(&b.component(x, &[i, j]));
                worst = worst.max((&fa.mat - &tb.mat).norm());
            }
        }
    }
    Ok(worst)
}

/// Worst violation of level-two fake flatness `dδ(C_{ijk}) = (F_B)_{ijk}`
/// over sample points.
pub fn fake_two_curvature_residual(
    a: &FormField,
    b: &FormField,
    c: &FormField,
    act: &dyn Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement,
    ddelta: &dyn Fn(&AlgebraElement) -> AlgebraElement,
    points: &[Vec<f64>],
) -> f64 {
    let mut worst = 0.0f64;
    for x in points {
        for i in 0..b.dim {
            for j in (i + 1)..b.dim {
                for k in (j + 1)..b.dim {
                    let fb = two_curvature(a, b, act, x, i, j, k);
                    let dc = ddelta(&c.component(x, &[i, j, k]));
                    worst = worst.max((&fb.mat - &dc.mat).norm());
                }
            }
        }
    }
    worst
}
