use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use super::CMat;
use crate::error::{Error, Result};

pub fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Real part of the Frobenius inner product `tr(a† b)`.
pub fn frob_inner_re(a: &CMat, b: &CMat) -> f64 {
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b.iter()) {
        s += x.conj().re * y.re - x.conj().im * y.im;
    }
    s
}

pub fn frob_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Scaling-and-squaring matrix exponential via a truncated Taylor series.
///
/// The matrices in this library are at most 4x4 and have moderate norm, so
/// scaling to `|m| <= 1/4` followed by a series summed to machine precision
/// is both simple and accurate.
pub fn matrix_exp(m: &CMat) -> CMat {
    let n = m.nrows();
    let norm = frob_norm(m);
    let mut s = 0u32;
    let mut scale = 1.0;
    while norm * scale > 0.25 {
        s += 1;
        scale *= 0.5;
    }
    let a = m * c64(scale);
    let mut result = CMat::identity(n, n);
    let mut term = CMat::identity(n, n);
    for k in 1..60 {
        term = (&term * &a) * c64(1.0 / k as f64);
        result += &term;
        if frob_norm(&term) < 1e-18 {
            break;
        }
    }
    for _ in 0..s {
        result = &result * &result;
    }
    result
}

/// Principal matrix logarithm by inverse scaling and squaring.
///
/// Matrix square roots are taken with the Denman–Beavers iteration until the
/// argument is close to the identity, then `log(I + e)` is summed as a
/// series.  Callers are expected to have checked the branch radius first.
pub fn matrix_log(g: &CMat) -> Result<CMat> {
    let n = g.nrows();
    let id = CMat::identity(n, n);
    let mut a = g.clone();
    let mut k = 0u32;
    while frob_norm(&(&a - &id)) > 0.25 {
        a = denman_beavers_sqrt(&a)?;
        k += 1;
        if k > 40 {
            return Err(Error::Runtime("matrix log failed to converge".into()));
        }
    }
    let e = &a - &id;
    let mut term = id.clone();
    let mut log = CMat::zeros(n, n);
    for j in 1..80 {
        term = &term * &e;
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        log += &term * c64(sign / j as f64);
        if frob_norm(&term) < 1e-18 {
            break;
        }
    }
    Ok(log * c64(2f64.powi(k as i32)))
}

fn denman_beavers_sqrt(a: &CMat) -> Result<CMat> {
    let n = a.nrows();
    let mut y = a.clone();
    let mut z = CMat::identity(n, n);
    for _ in 0..60 {
        let y_inv = y
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Runtime("singular matrix in sqrt iteration".into()))?;
        let z_inv = z
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Runtime("singular matrix in sqrt iteration".into()))?;
        let y_next = (&y + z_inv) * c64(0.5);
        let z_next = (&z + y_inv) * c64(0.5);
        let delta = frob_norm(&(&y_next - &y));
        y = y_next;
        z = z_next;
        if delta < 1e-15 {
            break;
        }
    }
    Ok(y)
}

/// How a group realises its structural operations on stored matrices.
#[derive(Clone, Debug)]
pub enum Model {
    /// Subgroup of a unitary group; the bracket is the matrix commutator and
    /// `exp`/`log` are the plain matrix exponential and logarithm.
    Unitary,
    /// Central extension of su(2) by a line with bracket
    /// `[(x,a),(y,b)] = ([x,y], λ([x,y]))`, `λ(x) = Re tr(z0† x)`.
    ///
    /// Algebra matrices are stored in twisted coordinates as
    /// `blockdiag(x, [[0,a],[0,0]])`.  Group elements are stored in the
    /// trivialised direct product SU(2) × R as `blockdiag(u, [[1,c],[0,1]])`,
    /// where the trivialising coordinate change is `(x, a) ↦ (x, a − λ(x))`.
    CentralTwist { z0: CMat },
}

/// A concrete matrix Lie group: representation size, an orthonormal basis of
/// its algebra, and the model used for structural operations.
pub struct LieGroup {
    tag: String,
    n: usize,
    basis: Vec<CMat>,
    model: Model,
}

impl std::fmt::Debug for LieGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LieGroup({}, n={}, dim={})", self.tag, self.n, self.basis.len())
    }
}

impl LieGroup {
    /// Builds a group from a spanning set of algebra matrices; the basis is
    /// orthonormalised with respect to the real Frobenius inner product.
    pub fn new(tag: &str, n: usize, spanning: Vec<CMat>, model: Model) -> Arc<Self> {
        let mut basis: Vec<CMat> = Vec::new();
        for mut v in spanning {
            for e in &basis {
                let c = frob_inner_re(e, &v);
                v -= e * c64(c);
            }
            let norm = frob_norm(&v);
            if norm > 1e-12 {
                basis.push(v * c64(1.0 / norm));
            }
        }
        Arc::new(LieGroup { tag: tag.to_string(), n, basis, model })
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn rep_dim(&self) -> usize {
        self.n
    }

    /// Side length of the matrices representing this group.
    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn algebra_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[CMat] {
        &self.basis
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn identity(self: &Arc<Self>) -> GroupElement {
        GroupElement { mat: CMat::identity(self.n, self.n), group: self.clone() }
    }

    pub fn zero(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement { mat: CMat::zeros(self.n, self.n), group: self.clone() }
    }

    pub fn element(self: &Arc<Self>, mat: CMat) -> GroupElement {
        GroupElement { mat, group: self.clone() }
    }

    pub fn algebra(self: &Arc<Self>, mat: CMat) -> AlgebraElement {
        AlgebraElement { mat, group: self.clone() }
    }

    /// Builds an algebra element from coordinates in the orthonormal basis.
    pub fn from_coords(self: &Arc<Self>, coords: &[f64]) -> AlgebraElement {
        assert_eq!(coords.len(), self.basis.len());
        let mut m = CMat::zeros(self.n, self.n);
        for (c, e) in coords.iter().zip(&self.basis) {
            m += e * c64(*c);
        }
        AlgebraElement { mat: m, group: self.clone() }
    }

    /// Coordinates of an algebra-valued matrix in the orthonormal basis.
    pub fn coords_of(&self, mat: &CMat) -> Vec<f64> {
        self.basis.iter().map(|e| frob_inner_re(e, mat)).collect()
    }

    /// Distance from `mat` to the algebra subspace.
    pub fn algebra_residual(&self, mat: &CMat) -> f64 {
        let mut proj = CMat::zeros(self.n, self.n);
        for e in &self.basis {
            proj += e * c64(frob_inner_re(e, mat));
        }
        frob_norm(&(mat - proj))
    }

    /// Residual of the group's defining constraint at `mat`.
    pub fn constraint_residual(&self, mat: &CMat) -> f64 {
        match &self.model {
            Model::Unitary => {
                let gram = mat.adjoint() * mat;
                frob_norm(&(gram - CMat::identity(self.n, self.n)))
            }
            Model::CentralTwist { .. } => {
                let u = mat.view((0, 0), (2, 2)).into_owned();
                let mut r = frob_norm(&(u.adjoint() * u - CMat::identity(2, 2)));
                r += (mat[(2, 2)] - c64(1.0)).norm();
                r += (mat[(3, 3)] - c64(1.0)).norm();
                r += mat[(3, 2)].norm();
                r += mat[(2, 3)].im.abs();
                for &(i, j) in &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 0), (2, 1), (3, 0), (3, 1)] {
                    r += mat[(i, j)].norm();
                }
                r
            }
        }
    }

    /// Draws an algebra element with basis coordinates uniform in
    /// `[-amplitude, amplitude]`.
    pub fn random_algebra<R: Rng>(self: &Arc<Self>, rng: &mut R, amplitude: f64) -> AlgebraElement {
        let coords: Vec<f64> =
            (0..self.basis.len()).map(|_| rng.gen_range(-amplitude..=amplitude)).collect();
        self.from_coords(&coords)
    }

    fn lambda(&self, x: &CMat) -> f64 {
        match &self.model {
            Model::CentralTwist { z0 } => {
                let su = x.view((0, 0), (2, 2)).into_owned();
                frob_inner_re(z0, &su)
            }
            Model::Unitary => 0.0,
        }
    }

    /// Splits a twisted-coordinate algebra matrix into its su(2) block and
    /// central coordinate.
    fn twist_split(&self, x: &CMat) -> (CMat, f64) {
        (x.view((0, 0), (2, 2)).into_owned(), x[(2, 3)].re)
    }

    fn twist_join(&self, su: &CMat, a: f64) -> CMat {
        let mut m = CMat::zeros(4, 4);
        m.view_mut((0, 0), (2, 2)).copy_from(su);
        m[(2, 3)] = c64(a);
        m
    }

    // --- u1-free standard constructors -------------------------------------

    /// SU(2) as 2x2 special unitary matrices.
    pub fn su2() -> Arc<Self> {
        let i = Complex64::i();
        let e1 = CMat::from_row_slice(2, 2, &[c64(0.0), i, i, c64(0.0)]);
        let e2 = CMat::from_row_slice(2, 2, &[c64(0.0), c64(1.0), c64(-1.0), c64(0.0)]);
        let e3 = CMat::from_row_slice(2, 2, &[i, c64(0.0), c64(0.0), -i]);
        LieGroup::new("su2", 2, vec![e1, e2, e3], Model::Unitary)
    }

    /// SO(3) as real orthogonal 3x3 matrices (with complex storage).
    pub fn so3() -> Arc<Self> {
        let mut gens = Vec::new();
        for k in 0..3 {
            let mut m = CMat::zeros(3, 3);
            let (i, j) = match k {
                0 => (1, 2),
                1 => (2, 0),
                _ => (0, 1),
            };
            m[(i, j)] = c64(-1.0);
            m[(j, i)] = c64(1.0);
            gens.push(m);
        }
        LieGroup::new("so3", 3, gens, Model::Unitary)
    }

    /// U(1) as unit complex numbers.
    pub fn u1() -> Arc<Self> {
        let e = CMat::from_row_slice(1, 1, &[Complex64::i()]);
        LieGroup::new("u1", 1, vec![e], Model::Unitary)
    }

    /// The trivial group, represented by the 1x1 identity matrix.
    pub fn trivial() -> Arc<Self> {
        LieGroup::new("trivial", 1, vec![], Model::Unitary)
    }

    /// Block-diagonal product of unitary-model groups.
    pub fn direct_sum(tag: &str, parts: &[Arc<LieGroup>]) -> Arc<Self> {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut gens = Vec::new();
        let mut offset = 0;
        for p in parts {
            assert!(matches!(p.model, Model::Unitary));
            for e in &p.basis {
                let mut m = CMat::zeros(n, n);
                m.view_mut((offset, offset), (p.n, p.n)).copy_from(e);
                gens.push(m);
            }
            offset += p.n;
        }
        LieGroup::new(tag, n, gens, Model::Unitary)
    }

    /// The central extension of su(2) with twisting direction `z0_coords`
    /// (coordinates in the su(2) basis of [`LieGroup::su2`]).
    pub fn central_twist_su2(tag: &str, z0_coords: [f64; 3]) -> Arc<Self> {
        let su2 = LieGroup::su2();
        let mut z0 = CMat::zeros(2, 2);
        for (c, e) in z0_coords.iter().zip(su2.basis()) {
            z0 += e * c64(*c);
        }
        let mut gens = Vec::new();
        for e in su2.basis() {
            let mut m = CMat::zeros(4, 4);
            m.view_mut((0, 0), (2, 2)).copy_from(e);
            gens.push(m);
        }
        let mut central = CMat::zeros(4, 4);
        central[(2, 3)] = c64(1.0);
        gens.push(central);
        LieGroup::new(tag, 4, gens, Model::CentralTwist { z0 })
    }
}

/// A group element: a matrix together with the group it belongs to.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub mat: CMat,
    pub group: Arc<LieGroup>,
}

/// A Lie-algebra element: a matrix in the group's algebra subspace.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    pub mat: CMat,
    pub group: Arc<LieGroup>,
}

fn check_same(a: &Arc<LieGroup>, b: &Arc<LieGroup>) -> Result<()> {
    if a.tag != b.tag {
        return Err(Error::TagMismatch { expected: a.tag.clone(), got: b.tag.clone() });
    }
    Ok(())
}

impl GroupElement {
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        check_same(&self.group, &other.group)?;
        Ok(GroupElement { mat: &self.mat * &other.mat, group: self.group.clone() })
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        let inv = self
            .mat
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Runtime(format!("singular element of {}", self.group.tag)))?;
        Ok(GroupElement { mat: inv, group: self.group.clone() })
    }

    /// Verifies the group's defining constraint within `tol`.
    pub fn check_membership(&self, tol: f64) -> Result<()> {
        let residual = self.group.constraint_residual(&self.mat);
        if residual > tol {
            return Err(Error::Constraint { tag: self.group.tag.clone(), residual, tol });
        }
        Ok(())
    }
}

impl AlgebraElement {
    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        check_same(&self.group, &other.group)?;
        Ok(AlgebraElement { mat: &self.mat + &other.mat, group: self.group.clone() })
    }

    pub fn scale(&self, c: f64) -> AlgebraElement {
        AlgebraElement { mat: &self.mat * c64(c), group: self.group.clone() }
    }

    pub fn norm(&self) -> f64 {
        frob_norm(&self.mat)
    }

    /// Verifies membership of the algebra subspace within `tol`.
    pub fn check_membership(&self, tol: f64) -> Result<()> {
        let residual = self.group.algebra_residual(&self.mat);
        if residual > tol {
            return Err(Error::Constraint { tag: self.group.tag.clone(), residual, tol });
        }
        Ok(())
    }
}

/// Group exponential.  Total on the algebra.
pub fn exp_map(x: &AlgebraElement) -> GroupElement {
    let mat = match &x.group.model {
        Model::Unitary => matrix_exp(&x.mat),
        Model::CentralTwist { .. } => {
            let (su, a) = x.group.twist_split(&x.mat);
            let c = a - x.group.lambda(&x.mat);
            let mut m = CMat::identity(4, 4);
            m.view_mut((0, 0), (2, 2)).copy_from(&matrix_exp(&su));
            m[(2, 3)] = c64(c);
            m
        }
    };
    GroupElement { mat, group: x.group.clone() }
}

/// Principal-branch group logarithm.
///
/// Fails with [`Error::Branch`] when `|g - I|` exceeds `branch_radius`
/// (use [`LOG_BRANCH_RADIUS`] for the library default), since the principal
/// branch is then no longer guaranteed to land in the expected sheet.
pub fn log_map(g: &GroupElement, branch_radius: f64) -> Result<AlgebraElement> {
    let n = g.group.n;
    let distance = frob_norm(&(&g.mat - CMat::identity(n, n)));
    let mat = match &g.group.model {
        Model::Unitary => {
            if distance > branch_radius {
                return Err(Error::Branch { distance, radius: branch_radius });
            }
            matrix_log(&g.mat)?
        }
        Model::CentralTwist { .. } => {
            let u = g.mat.view((0, 0), (2, 2)).into_owned();
            let su_dist = frob_norm(&(&u - CMat::identity(2, 2)));
            if su_dist > branch_radius {
                return Err(Error::Branch { distance: su_dist, radius: branch_radius });
            }
            let x = matrix_log(&u)?;
            let c = g.mat[(2, 3)].re;
            let mut full = CMat::zeros(4, 4);
            full.view_mut((0, 0), (2, 2)).copy_from(&x);
            let a = c + {
                // λ is defined on the twisted matrix, which shares its su(2)
                // block with `full`.
                g.group.lambda(&full)
            };
            g.group.twist_join(&x, a)
        }
    };
    Ok(AlgebraElement { mat, group: g.group.clone() })
}

/// Lie bracket in the group's algebra.
pub fn bracket(a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
    check_same(&a.group, &b.group)?;
    let mat = match &a.group.model {
        Model::Unitary => &a.mat * &b.mat - &b.mat * &a.mat,
        Model::CentralTwist { .. } => {
            let (xa, _) = a.group.twist_split(&a.mat);
            let (xb, _) = a.group.twist_split(&b.mat);
            let comm = &xa * &xb - &xb * &xa;
            let mut tw = CMat::zeros(4, 4);
            tw.view_mut((0, 0), (2, 2)).copy_from(&comm);
            let central = a.group.lambda(&tw);
            a.group.twist_join(&comm, central)
        }
    };
    Ok(AlgebraElement { mat, group: a.group.clone() })
}

/// Adjoint action `Ad_g x`.
pub fn adjoint(g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    check_same(&g.group, &x.group)?;
    let mat = match &g.group.model {
        Model::Unitary => {
            let g_inv = g
                .mat
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Runtime("singular group element".into()))?;
            &g.mat * &x.mat * g_inv
        }
        Model::CentralTwist { .. } => {
            // In twisted coordinates (x, a) with g = (u, c):
            // Ad_g (x, a) = (u x u⁻¹, a − λ(x) + λ(u x u⁻¹)).
            let u = g.mat.view((0, 0), (2, 2)).into_owned();
            let u_inv = u
                .clone()
                .try_inverse()
                .ok_or_else(|| Error::Runtime("singular group element".into()))?;
            let (xs, a) = g.group.twist_split(&x.mat);
            let conj = &u * &xs * u_inv;
            let lam_old = g.group.lambda(&x.mat);
            let mut tw = CMat::zeros(4, 4);
            tw.view_mut((0, 0), (2, 2)).copy_from(&conj);
            let lam_new = g.group.lambda(&tw);
            g.group.twist_join(&conj, a - lam_old + lam_new)
        }
    };
    Ok(AlgebraElement { mat, group: g.group.clone() })
}

/// Bi-invariant distance proxy `|g1 g2⁻¹ − I|` in the Frobenius norm.
pub fn group_distance(g1: &GroupElement, g2: &GroupElement) -> Result<f64> {
    check_same(&g1.group, &g2.group)?;
    let inv = g2
        .mat
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Runtime("singular group element".into()))?;
    let n = g1.group.n;
    Ok(frob_norm(&(&g1.mat * inv - CMat::identity(n, n))))
}
