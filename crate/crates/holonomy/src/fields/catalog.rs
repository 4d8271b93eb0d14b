//! Seeded smooth fields with analytic derivatives, and the constrained
//! field constructions (fake-flat two-forms, level-two fake-flat
//! three-forms) that transport scenes are built from.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use super::forms::FormField;
use crate::error::{Error, Result};
use crate::higher_groups::{Crossed2Module, CrossedModule};
use crate::lie_core::{bracket, c64, CMat, LieGroup};

/// A smooth scalar function on `R^dim` with closed-form first and second
/// partial derivatives: a constant, one sine and cosine per coordinate, and
/// a symmetric quadratic form.
#[derive(Clone, Debug)]
pub struct TrigScalar {
    dim: usize,
    c0: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    q: Vec<f64>, // row-major symmetric dim × dim
}

impl TrigScalar {
    pub fn seeded(dim: usize, amplitude: f64, rng: &mut ChaCha12Rng) -> Self {
        let mut draw = |scale: f64| rng.gen_range(-scale..=scale);
        let c0 = draw(amplitude);
        let a: Vec<f64> = (0..dim).map(|_| draw(amplitude)).collect();
        let b: Vec<f64> = (0..dim).map(|_| draw(amplitude)).collect();
        let mut q = vec![0.0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = draw(amplitude);
                q[i * dim + j] = v;
                q[j * dim + i] = v;
            }
        }
        TrigScalar { dim, c0, a, b, q }
    }

    pub fn zero(dim: usize) -> Self {
        TrigScalar { dim, c0: 0.0, a: vec![0.0; dim], b: vec![0.0; dim], q: vec![0.0; dim * dim] }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut v = self.c0;
        for k in 0..self.dim {
            v += self.a[k] * x[k].sin() + self.b[k] * x[k].cos();
            for l in 0..self.dim {
                v += 0.5 * self.q[k * self.dim + l] * x[k] * x[l];
            }
        }
        v
    }

    pub fn d(&self, x: &[f64], j: usize) -> f64 {
        let mut v = self.a[j] * x[j].cos() - self.b[j] * x[j].sin();
        for l in 0..self.dim {
            v += self.q[j * self.dim + l] * x[l];
        }
        v
    }

    pub fn dd(&self, x: &[f64], j: usize, k: usize) -> f64 {
        let mut v = self.q[j * self.dim + k];
        if j == k {
            v += -self.a[j] * x[j].sin() - self.b[j] * x[j].cos();
        }
        v
    }
}

/// An algebra-valued function on `R^dim`: one scalar per basis coordinate.
#[derive(Clone)]
pub struct AlgValued {
    pub group: Arc<LieGroup>,
    pub scalars: Vec<TrigScalar>,
}

impl AlgValued {
    pub fn seeded(group: Arc<LieGroup>, dim: usize, amplitude: f64, rng: &mut ChaCha12Rng) -> Self {
        let scalars =
            (0..group.algebra_dim()).map(|_| TrigScalar::seeded(dim, amplitude, rng)).collect();
        AlgValued { group, scalars }
    }

    fn assemble(&self, coords: &[f64]) -> CMat {
        self.group.from_coords(coords).mat
    }

    pub fn eval(&self, x: &[f64]) -> CMat {
        let c: Vec<f64> = self.scalars.iter().map(|s| s.eval(x)).collect();
        self.assemble(&c)
    }

    pub fn d(&self, x: &[f64], j: usize) -> CMat {
        let c: Vec<f64> = self.scalars.iter().map(|s| s.d(x, j)).collect();
        self.assemble(&c)
    }

    pub fn dd(&self, x: &[f64], j: usize, k: usize) -> CMat {
        let c: Vec<f64> = self.scalars.iter().map(|s| s.dd(x, j, k)).collect();
        self.assemble(&c)
    }
}

/// Position of a strictly increasing index tuple in lexicographic order.
pub fn comb_index(idx: &[usize], dim: usize) -> usize {
    match idx.len() {
        1 => idx[0],
        2 => {
            let (i, j) = (idx[0], idx[1]);
            // pairs (0,1), (0,2), ..., (0,dim-1), (1,2), ...
            i * dim - i * (i + 1) / 2 + (j - i - 1)
        }
        3 => {
            let mut rank = 0;
            for a in 0..dim {
                for b in (a + 1)..dim {
                    for c in (b + 1)..dim {
                        if [a, b, c] == [idx[0], idx[1], idx[2]] {
                            return rank;
                        }
                        rank += 1;
                    }
                }
            }
            unreachable!("index tuple out of range")
        }
        _ => unreachable!("degree not supported"),
    }
}

fn n_components(degree: usize, dim: usize) -> usize {
    match degree {
        1 => dim,
        2 => dim * (dim - 1) / 2,
        _ => dim * (dim - 1) * (dim - 2) / 6,
    }
}

/// A form whose components are [`AlgValued`] functions, retaining enough
/// structure to differentiate derived fields analytically.
#[derive(Clone)]
pub struct SeededForm {
    pub degree: usize,
    pub dim: usize,
    pub comps: Vec<AlgValued>,
}

impl SeededForm {
    /// All components seeded independently.
    pub fn seeded(
        degree: usize,
        group: Arc<LieGroup>,
        dim: usize,
        amplitude: f64,
        seed: u64,
    ) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        let comps = (0..n_components(degree, dim))
            .map(|_| AlgValued::seeded(group.clone(), dim, amplitude, &mut rng))
            .collect();
        SeededForm { degree, dim, comps }
    }

    /// The zero form.
    pub fn zero(degree: usize, group: Arc<LieGroup>, dim: usize) -> Self {
        let comps = (0..n_components(degree, dim))
            .map(|_| AlgValued {
                group: group.clone(),
                scalars: (0..group.algebra_dim()).map(|_| TrigScalar::zero(dim)).collect(),
            })
            .collect();
        SeededForm { degree, dim, comps }
    }

    pub fn group(&self) -> Arc<LieGroup> {
        self.comps[0].group.clone()
    }

    pub fn comp(&self, x: &[f64], idx: &[usize]) -> CMat {
        self.comps[comb_index(idx, self.dim)].eval(x)
    }

    pub fn d(&self, x: &[f64], j: usize, idx: &[usize]) -> CMat {
        self.comps[comb_index(idx, self.dim)].d(x, j)
    }

    /// Curvature component `F_{ij} = ∂_i A_j − ∂_j A_i + [A_i, A_j]` of a
    /// degree-1 form.
    pub fn fa(&self, x: &[f64], i: usize, j: usize) -> CMat {
        debug_assert_eq!(self.degree, 1);
        let g = self.group();
        let da = self.comps[j].d(x, i) - self.comps[i].d(x, j);
        let comm = bracket(&g.algebra(self.comps[i].eval(x)), &g.algebra(self.comps[j].eval(x)))
            .expect("same group");
        da + comm.mat
    }

    /// `∂_m F_{ij}` of a degree-1 form, in closed form.
    pub fn fa_partial(&self, x: &[f64], m: usize, i: usize, j: usize) -> CMat {
        debug_assert_eq!(self.degree, 1);
        let g = self.group();
        let dda = self.comps[j].dd(x, m, i) - self.comps[i].dd(x, m, j);
        let c1 = bracket(&g.algebra(self.comps[i].d(x, m)), &g.algebra(self.comps[j].eval(x)))
            .expect("same group");
        let c2 = bracket(&g.algebra(self.comps[i].eval(x)), &g.algebra(self.comps[j].d(x, m)))
            .expect("same group");
        dda + c1.mat + c2.mat
    }

    /// Exterior-derivative component `dB_{ijk}` of a degree-2 form.
    pub fn db(&self, x: &[f64], i: usize, j: usize, k: usize) -> CMat {
        debug_assert_eq!(self.degree, 2);
        self.d(x, i, &[j, k]) - self.d(x, j, &[i, k]) + self.d(x, k, &[i, j])
    }

    /// `∂_m dB_{ijk}` of a degree-2 form, in closed form.
    pub fn db_partial(&self, x: &[f64], m: usize, i: usize, j: usize, k: usize) -> CMat {
        debug_assert_eq!(self.degree, 2);
        self.comps[comb_index(&[j, k], self.dim)].dd(x, m, i)
            - self.comps[comb_index(&[i, k], self.dim)].dd(x, m, j)
            + self.comps[comb_index(&[i, j], self.dim)].dd(x, m, k)
    }

    /// Packages the seeded data as a [`FormField`] with analytic partials.
    pub fn form(&self) -> FormField {
        let me = self.clone();
        let me2 = self.clone();
        FormField::new(self.degree, self.dim, self.group(), move |x, idx| me.comp(x, idx))
            .with_partials(move |x, j, idx| me2.d(x, j, idx))
    }
}

/// A fake-flat two-form for a crossed module: `B_{ij} = s(F_A)_{ij} + K_{ij}`
/// where `s` is the right inverse of `dτ` and `K` is a seeded form valued in
/// `ker dτ`.  By construction `dτ(B) = F_A` exactly.
pub fn fake_flat_two_form(
    cm: &Arc<CrossedModule>,
    a: &SeededForm,
    kernel_amplitude: f64,
    seed: u64,
) -> Result<FormField> {
    if a.degree != 1 {
        return Err(Error::Config("fake_flat_two_form needs a one-form".into()));
    }
    let section = cm
        .dtau_section
        .clone()
        .ok_or_else(|| Error::Config(format!("instance {} has no dτ section", cm.id)))?;
    let dim = a.dim;
    let hdim = cm.h.algebra_dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    // One kernel scalar per component pair and kernel direction.
    let kern: Vec<Vec<TrigScalar>> = (0..n_components(2, dim))
        .map(|_| {
            (0..cm.kernel_indices.len())
                .map(|_| TrigScalar::seeded(dim, kernel_amplitude, &mut rng))
                .collect()
        })
        .collect();
    let h = cm.h.clone();
    let kernel_indices = cm.kernel_indices.clone();
    let a1 = a.clone();
    let kern2 = kern.clone();
    let h2 = h.clone();
    let ki2 = kernel_indices.clone();
    let sec2 = section.clone();
    let a2 = a.clone();
    let comp = move |x: &[f64], idx: &[usize]| -> CMat {
        let mut m = section(&a1.fa(x, idx[0], idx[1]));
        let scals = &kern[comb_index(idx, dim)];
        let mut coords = vec![0.0; hdim];
        for (k, s) in kernel_indices.iter().zip(scals) {
            coords[*k] = s.eval(x);
        }
        m += h.from_coords(&coords).mat;
        m
    };
    let partial = move |x: &[f64], j: usize, idx: &[usize]| -> CMat {
        let mut m = sec2(&a2.fa_partial(x, j, idx[0], idx[1]));
        let scals = &kern2[comb_index(idx, dim)];
        let mut coords = vec![0.0; hdim];
        for (k, s) in ki2.iter().zip(scals) {
            coords[*k] = s.d(x, j);
        }
        m += h2.from_coords(&coords).mat;
        m
    };
    Ok(FormField::new(2, dim, cm.h.clone(), comp).with_partials(partial))
}

/// A level-two fake-flat three-form for a crossed 2-module with trivial
/// base group (so the connection vanishes and `F_B = dB`):
/// `C_{ijk} = s(dB)_{ijk} + K_{ijk}` with `s` the right inverse of `dδ` and
/// `K` seeded in `ker dδ`.  By construction `dδ(C) = F_B` exactly.
pub fn fake_two_flat_three_form(
    c2m: &Arc<Crossed2Module>,
    b: &SeededForm,
    kernel_amplitude: f64,
    seed: u64,
) -> Result<FormField> {
    if b.degree != 2 {
        return Err(Error::Config("fake_two_flat_three_form needs a two-form".into()));
    }
    if c2m.g.algebra_dim() != 0 {
        return Err(Error::Config(
            "fake_two_flat_three_form assumes a trivial base group (F_B = dB)".into(),
        ));
    }
    let section = c2m
        .ddelta_section
        .clone()
        .ok_or_else(|| Error::Config(format!("instance {} has no dδ section", c2m.id)))?;
    let dim = b.dim;
    let ldim = c2m.l.algebra_dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let kern: Vec<Vec<TrigScalar>> = (0..n_components(3, dim))
        .map(|_| {
            (0..c2m.kernel_indices.len())
                .map(|_| TrigScalar::seeded(dim, kernel_amplitude, &mut rng))
                .collect()
        })
        .collect();
    let l = c2m.l.clone();
    let kernel_indices = c2m.kernel_indices.clone();
    let b1 = b.clone();
    let kern2 = kern.clone();
    let l2 = l.clone();
    let ki2 = kernel_indices.clone();
    let sec2 = section.clone();
    let b2 = b.clone();
    let comp = move |x: &[f64], idx: &[usize]| -> CMat {
        let mut m = section(&b1.db(x, idx[0], idx[1], idx[2]));
        let scals = &kern[comb_index(idx, dim)];
        let mut coords = vec![0.0; ldim];
        for (k, s) in kernel_indices.iter().zip(scals) {
            coords[*k] = s.eval(x);
        }
        m += l.from_coords(&coords).mat;
        m
    };
    let partial = move |x: &[f64], j: usize, idx: &[usize]| -> CMat {
        let mut m = sec2(&b2.db_partial(x, j, idx[0], idx[1], idx[2]));
        let scals = &kern2[comb_index(idx, dim)];
        let mut coords = vec![0.0; ldim];
        for (k, s) in ki2.iter().zip(scals) {
            coords[*k] = s.d(x, j);
        }
        m += l2.from_coords(&coords).mat;
        m
    };
    Ok(FormField::new(3, dim, c2m.l.clone(), comp).with_partials(partial))
}

/// Sample points used by the fake-flatness spot checks: a small grid in the
/// unit cube plus jittered interior points.
pub fn sample_points(dim: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..dim).map(|_| rng.gen_range(0.0..=1.0)).collect()).collect()
}

/// Scales every component of a form by a constant (used to build negative
/// controls that break fake flatness).
pub fn scaled_form(f: &FormField, factor: f64) -> FormField {
    let inner = f.clone();
    let inner2 = f.clone();
    let deg = f.degree;
    let dim = f.dim;
    FormField::new(deg, dim, f.group.clone(), move |x, idx| {
        inner.component(x, idx).mat * c64(factor)
    })
    .with_partials(move |x, j, idx| inner2.partial(x, j, idx).mat * c64(factor))
}
