use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::AxiomReport;
use crate::error::{Error, Result};
use crate::lie_core::{
    adjoint, bracket, exp_map, frob_norm, group_distance, AlgebraElement, CMat, GroupElement,
    LieGroup,
};

pub(crate) type Map1 = Arc<dyn Fn(&CMat) -> CMat + Send + Sync>;
pub(crate) type Map2 = Arc<dyn Fn(&CMat, &CMat) -> CMat + Send + Sync>;

/// A crossed module `(G, H, τ, α)` over concrete matrix groups.
///
/// The structure maps act on raw matrices; the typed wrappers on this struct
/// enforce group membership of the arguments.  `dtau_section` and
/// `kernel_indices` expose the linear structure of `dτ` needed to build
/// fake-curvature two-forms: a right inverse of `dτ` defined on its image,
/// and the coordinates (in the orthonormal basis of 𝔥) spanning `ker dτ`.
pub struct CrossedModule {
    pub id: String,
    pub g: Arc<LieGroup>,
    pub h: Arc<LieGroup>,
    pub(crate) tau: Map1,
    pub(crate) dtau: Map1,
    pub(crate) alpha: Map2,
    pub(crate) dalpha_group: Map2,
    pub(crate) dalpha_alg: Map2,
    pub(crate) dtau_section: Option<Map1>,
    pub(crate) kernel_indices: Vec<usize>,
}

impl CrossedModule {
    pub fn tau(&self, h: &GroupElement) -> GroupElement {
        self.g.element((self.tau)(&h.mat))
    }

    pub fn dtau(&self, y: &AlgebraElement) -> AlgebraElement {
        self.g.algebra((self.dtau)(&y.mat))
    }

    /// `α_g(h)` — the action of `G` on `H`.
    pub fn alpha(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.h.element((self.alpha)(&g.mat, &h.mat))
    }

    /// The induced action of a group element on the algebra 𝔥.
    pub fn alpha_on_algebra(&self, g: &GroupElement, y: &AlgebraElement) -> AlgebraElement {
        self.h.algebra((self.dalpha_group)(&g.mat, &y.mat))
    }

    /// The differential action `𝔤 × 𝔥 → 𝔥`.
    pub fn dalpha(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.h.algebra((self.dalpha_alg)(&x.mat, &y.mat))
    }

    /// Right inverse of `dτ` on its image, when one is available.
    pub fn dtau_section(&self, x: &AlgebraElement) -> Option<AlgebraElement> {
        self.dtau_section.as_ref().map(|s| self.h.algebra(s(&x.mat)))
    }

    /// Indices (into the 𝔥 basis) spanning `ker dτ`.
    pub fn kernel_indices(&self) -> &[usize] {
        &self.kernel_indices
    }
}

/// Product in the semidirect product `G ×_α H`:
/// `(g₁, h₁) · (g₂, h₂) = (g₁ g₂, α_{g₂⁻¹}(h₁) · h₂)`.
pub fn semidirect_mul(
    cm: &CrossedModule,
    a: (&GroupElement, &GroupElement),
    b: (&GroupElement, &GroupElement),
) -> Result<(GroupElement, GroupElement)> {
    let (g1, h1) = a;
    let (g2, h2) = b;
    let g = g1.mul(g2)?;
    let h = cm.alpha(&g2.inverse()?, h1).mul(h2)?;
    Ok((g, h))
}

/// Inverse in the semidirect product: `(g, h)⁻¹ = (g⁻¹, α_g(h⁻¹))`.
pub fn semidirect_inv(
    cm: &CrossedModule,
    a: (&GroupElement, &GroupElement),
) -> Result<(GroupElement, GroupElement)> {
    let (g, h) = a;
    Ok((g.inverse()?, cm.alpha(g, &h.inverse()?)))
}

/// Samples the crossed-module axioms at `samples` random points and reports
/// the worst residual per law.
///
/// Checked laws, with all random elements drawn as exponentials of algebra
/// elements with coordinates in `[-1, 1]`:
///
/// * `tau-equivariance`: τ(α_g(h)) = g τ(h) g⁻¹
/// * `peiffer-identity`: α_{τ(h)}(h') = h h' h⁻¹
/// * `alpha-homomorphism`: α_{g₁ g₂}(h) = α_{g₁}(α_{g₂}(h))
/// * `alpha-automorphism`: α_g(h₁ h₂) = α_g(h₁) α_g(h₂)
/// * `dtau-equivariance`: dτ(dα(X, Y)) = [X, dτ(Y)]
/// * `dpeiffer`: dα(dτ(Y), Y') = [Y, Y']
/// * `action-consistency`: α_g(exp Y) = exp(g ▷ Y)
/// * `dtau-section`: dτ(section(dτ(Y))) = dτ(Y), when a section exists
pub fn check_crossed_module_axioms(
    cm: &CrossedModule,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(&cm.id, samples, seed, tol);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst = [0f64; 8];
    for _ in 0..samples {
        let xg = cm.g.random_algebra(&mut rng, 1.0);
        let yh = cm.h.random_algebra(&mut rng, 1.0);
        let yh2 = cm.h.random_algebra(&mut rng, 1.0);
        let xg2 = cm.g.random_algebra(&mut rng, 1.0);
        let g = exp_map(&xg);
        let g2 = exp_map(&xg2);
        let h = exp_map(&yh);
        let h2 = exp_map(&yh2);

        let lhs = cm.tau(&cm.alpha(&g, &h));
        let rhs = g.mul(&cm.tau(&h))?.mul(&g.inverse()?)?;
        worst[0] = worst[0].max(group_distance(&lhs, &rhs)?);

        let lhs = cm.alpha(&cm.tau(&h), &h2);
        let rhs = h.mul(&h2)?.mul(&h.inverse()?)?;
        worst[1] = worst[1].max(group_distance(&lhs, &rhs)?);

        let lhs = cm.alpha(&g.mul(&g2)?, &h);
        let rhs = cm.alpha(&g, &cm.alpha(&g2, &h));
        worst[2] = worst[2].max(group_distance(&lhs, &rhs)?);

        let lhs = cm.alpha(&g, &h.mul(&h2)?);
        let rhs = cm.alpha(&g, &h).mul(&cm.alpha(&g, &h2))?;
        worst[3] = worst[3].max(group_distance(&lhs, &rhs)?);

        let lhs = cm.dtau(&cm.dalpha(&xg, &yh));
        let rhs = bracket(&xg, &cm.dtau(&yh))?;
        worst[4] = worst[4].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = cm.dalpha(&cm.dtau(&yh), &yh2);
        let rhs = bracket(&yh, &yh2)?;
        worst[5] = worst[5].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = cm.alpha(&g, &exp_map(&yh));
        let rhs = exp_map(&cm.alpha_on_algebra(&g, &yh));
        worst[6] = worst[6].max(group_distance(&lhs, &rhs)?);

        if cm.dtau_section.is_some() {
            let image = cm.dtau(&yh);
            let back = cm
                .dtau_section(&image)
                .ok_or_else(|| Error::Runtime("section vanished".into()))?;
            let again = cm.dtau(&back);
            worst[7] = worst[7].max(frob_norm(&(&again.mat - &image.mat)));
        }
    }
    report.record("tau-equivariance", worst[0]);
    report.record("peiffer-identity", worst[1]);
    report.record("alpha-homomorphism", worst[2]);
    report.record("alpha-automorphism", worst[3]);
    report.record("dtau-equivariance", worst[4]);
    report.record("dpeiffer", worst[5]);
    report.record("action-consistency", worst[6]);
    if cm.dtau_section.is_some() {
        report.record("dtau-section", worst[7]);
    }

    // Adjoint-orbit consistency of the two differentials of α: for each
    // sampled pair, g ▷ Y differentiated along g = exp(s X) must equal
    // dα(X, Y).  One finite-difference spot check per run keeps this cheap.
    let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let x = cm.g.random_algebra(&mut rng, 1.0);
    let y = cm.h.random_algebra(&mut rng, 1.0);
    let s = 1e-5;
    let plus = cm.alpha_on_algebra(&exp_map(&x.scale(s)), &y);
    let minus = cm.alpha_on_algebra(&exp_map(&x.scale(-s)), &y);
    let fd = (&plus.mat - &minus.mat) * crate::lie_core::c64(0.5 / s);
    let want = cm.dalpha(&x, &y);
    let residual = frob_norm(&(&fd - &want.mat));
    // Finite differencing costs ~1e-10 of accuracy on O(1) data.
    let pass = residual <= (tol.max(1e-8)) * 100.0;
    report.pass &= pass;
    report.laws.push(super::LawResult {
        law: "dalpha-derivative-consistency".into(),
        max_residual: residual,
        pass,
    });
    Ok(report)
}

/// Equivariance of the adjoint: `Ad` respects α on the image of τ.  Exposed
/// for reuse in transport tests.
pub fn ad_image_residual(cm: &CrossedModule, h: &GroupElement, y: &AlgebraElement) -> Result<f64> {
    let lhs = cm.alpha_on_algebra(&cm.tau(h), y);
    let rhs = adjoint(h, y)?;
    Ok(frob_norm(&(&lhs.mat - &rhs.mat)))
}
