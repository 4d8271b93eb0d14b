use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::crossed_module::{Map1, Map2};
use super::AxiomReport;
use crate::error::Result;
use crate::lie_core::{
    bracket, exp_map, frob_norm, group_distance, log_map, AlgebraElement, GroupElement, LieGroup,
    RMat, LOG_BRANCH_RADIUS,
};

/// A crossed 2-module `(G, H, L, ∂, δ, ▷)` with Peiffer lifting `{−,−}`.
///
/// `∂: H → G` and `δ: L → H` are group morphisms with `∂ ∘ δ` trivial; `G`
/// acts on both `H` and `L`; the Peiffer lifting is an antisymmetric
/// bilinear map `𝔥 × 𝔥 → 𝔩` with `δ{v, w} = [v, w] − ∂(v) ▷ w` (the Peiffer
/// commutator).  The derived action `v ▷' x = −{δ(x), v}` makes `(𝔥, 𝔩)` a
/// differential crossed module, which is what volume transport uses.
pub struct Crossed2Module {
    pub id: String,
    pub g: Arc<LieGroup>,
    pub h: Arc<LieGroup>,
    pub l: Arc<LieGroup>,
    pub(crate) partial: Map1,
    pub(crate) dpartial: Map1,
    pub(crate) delta: Map1,
    pub(crate) ddelta: Map1,
    pub(crate) act_h_group: Map2,
    pub(crate) dact_h_group: Map2,
    pub(crate) dact_h: Map2,
    pub(crate) act_l_group: Map2,
    pub(crate) dact_l_group: Map2,
    pub(crate) dact_l: Map2,
    pub(crate) peiffer_lift: Map2,
    /// Right inverse of `dδ` on its image (used to build three-forms with a
    /// prescribed fake 2-curvature).
    pub(crate) ddelta_section: Option<Map1>,
    /// Indices into the 𝔩 basis spanning `ker dδ`.
    pub(crate) kernel_indices: Vec<usize>,
}

impl Crossed2Module {
    pub fn partial(&self, h: &GroupElement) -> GroupElement {
        self.g.element((self.partial)(&h.mat))
    }

    pub fn dpartial(&self, v: &AlgebraElement) -> AlgebraElement {
        self.g.algebra((self.dpartial)(&v.mat))
    }

    pub fn delta(&self, l: &GroupElement) -> GroupElement {
        self.h.element((self.delta)(&l.mat))
    }

    pub fn ddelta(&self, x: &AlgebraElement) -> AlgebraElement {
        self.h.algebra((self.ddelta)(&x.mat))
    }

    pub fn act_h(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.h.element((self.act_h_group)(&g.mat, &h.mat))
    }

    pub fn act_h_on_algebra(&self, g: &GroupElement, v: &AlgebraElement) -> AlgebraElement {
        self.h.algebra((self.dact_h_group)(&g.mat, &v.mat))
    }

    pub fn dact_h(&self, x: &AlgebraElement, v: &AlgebraElement) -> AlgebraElement {
        self.h.algebra((self.dact_h)(&x.mat, &v.mat))
    }

    pub fn act_l(&self, g: &GroupElement, l: &GroupElement) -> GroupElement {
        self.l.element((self.act_l_group)(&g.mat, &l.mat))
    }

    pub fn act_l_on_algebra(&self, g: &GroupElement, x: &AlgebraElement) -> AlgebraElement {
        self.l.algebra((self.dact_l_group)(&g.mat, &x.mat))
    }

    pub fn dact_l(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.l.algebra((self.dact_l)(&x.mat, &y.mat))
    }

    /// The Peiffer lifting `{v, w} ∈ 𝔩`.
    pub fn peiffer_lift(&self, v: &AlgebraElement, w: &AlgebraElement) -> AlgebraElement {
        self.l.algebra((self.peiffer_lift)(&v.mat, &w.mat))
    }

    /// The Peiffer commutator `⟨v, w⟩ = [v, w] − ∂(v) ▷ w ∈ 𝔥`.
    pub fn peiffer_commutator(
        &self,
        v: &AlgebraElement,
        w: &AlgebraElement,
    ) -> Result<AlgebraElement> {
        let br = bracket(v, w)?;
        let act = self.dact_h(&self.dpartial(v), w);
        Ok(self.h.algebra(&br.mat - &act.mat))
    }

    pub fn ddelta_section(&self, v: &AlgebraElement) -> Option<AlgebraElement> {
        self.ddelta_section.as_ref().map(|s| self.l.algebra(s(&v.mat)))
    }

    pub fn kernel_indices(&self) -> &[usize] {
        &self.kernel_indices
    }

    /// The derived action of 𝔥 on 𝔩: `v ▷' x = −{δ(x), v}`.
    pub fn act_prime_alg(&self, v: &AlgebraElement, x: &AlgebraElement) -> AlgebraElement {
        let lifted = self.peiffer_lift(&self.ddelta(x), v);
        self.l.algebra(-&lifted.mat)
    }

    /// Matrix of `v ▷' ·` in the orthonormal basis of 𝔩.
    pub fn act_prime_operator(&self, v: &AlgebraElement) -> RMat {
        let dim = self.l.algebra_dim();
        let mut op = RMat::zeros(dim, dim);
        for b in 0..dim {
            let mut coords = vec![0.0; dim];
            coords[b] = 1.0;
            let e = self.l.from_coords(&coords);
            let image = self.act_prime_alg(v, &e);
            let col = self.l.coords_of(&image.mat);
            for (r, c) in col.iter().enumerate() {
                op[(r, b)] = *c;
            }
        }
        op
    }

    /// Group-level derived action `h ▷' x`, computed by exponentiating the
    /// derivation `log(h) ▷' ·`.  Requires `h` inside the logarithm's
    /// branch-safety radius.
    pub fn act_prime(&self, h: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
        let v = log_map(h, LOG_BRANCH_RADIUS)?;
        let op = self.act_prime_operator(&v).exp();
        Ok(self.apply_l_operator(&op, x))
    }

    /// Applies an operator in 𝔩-basis coordinates to an algebra element.
    pub fn apply_l_operator(&self, op: &RMat, x: &AlgebraElement) -> AlgebraElement {
        let coords = nalgebra::DVector::from_vec(self.l.coords_of(&x.mat));
        let out = op * coords;
        self.l.from_coords(out.as_slice())
    }
}

/// Samples the crossed-2-module axioms and the derived-structure laws.
///
/// Laws follow the differential axioms of a crossed 2-module with
/// antisymmetric Peiffer lifting, plus the group-level compatibility laws
/// for the `G`-actions and the induced `(𝔥, 𝔩)` crossed-module structure:
///
/// * `delta-partial-trivial`: ∂(δ(l)) = e
/// * `lift-antisymmetry`: {v, w} = −{w, v}
/// * `delta-of-lift`: δ{v, w} = ⟨v, w⟩
/// * `l-bracket-from-lift`: [x₁, x₂] = {δx₁, δx₂}
/// * `lift-jacobi`: {[v₁,v₂], v₃} = {v₁,[v₂,v₃]} − {v₂,[v₁,v₃]}
/// * `partial-acts-trivially-on-l`: ∂(v) ▷ x = 0
/// * `g-equivariance-delta`: δ(g ▷ x) = g ▷ δ(x)
/// * `g-equivariance-partial`: ∂(g ▷ h) = g ∂(h) g⁻¹
/// * `g-equivariance-lift`: X ▷ {v,w} = {X ▷ v, w} + {v, X ▷ w}
/// * `derived-action-delta`: δ(v ▷' x) = [v, δx]
/// * `derived-action-peiffer`: (δx) ▷' x' = [x, x']
/// * `group-lift-equivariance`: {g▷v₁, g▷v₂} = g ▷ {v₁, v₂}
/// * `group-derived-equivariance`: (g▷h) ▷' (g▷x) = g ▷ (h ▷' x)
pub fn check_crossed2_axioms(
    c2m: &Crossed2Module,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<AxiomReport> {
    let mut report = AxiomReport::new(&c2m.id, samples, seed, tol);
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut worst = [0f64; 13];
    for _ in 0..samples {
        let xg = c2m.g.random_algebra(&mut rng, 1.0);
        let v1 = c2m.h.random_algebra(&mut rng, 1.0);
        let v2 = c2m.h.random_algebra(&mut rng, 1.0);
        let v3 = c2m.h.random_algebra(&mut rng, 1.0);
        let x1 = c2m.l.random_algebra(&mut rng, 1.0);
        let x2 = c2m.l.random_algebra(&mut rng, 1.0);
        let g = exp_map(&xg);
        let hh = exp_map(&v1);
        let ll = exp_map(&x1);

        let lhs = c2m.partial(&c2m.delta(&ll));
        worst[0] = worst[0].max(group_distance(&lhs, &c2m.g.identity())?);

        let anti =
            &c2m.peiffer_lift(&v1, &v2).mat + &c2m.peiffer_lift(&v2, &v1).mat;
        worst[1] = worst[1].max(frob_norm(&anti));

        let lhs = c2m.ddelta(&c2m.peiffer_lift(&v1, &v2));
        let rhs = c2m.peiffer_commutator(&v1, &v2)?;
        worst[2] = worst[2].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = bracket(&x1, &x2)?;
        let rhs = c2m.peiffer_lift(&c2m.ddelta(&x1), &c2m.ddelta(&x2));
        worst[3] = worst[3].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = c2m.peiffer_lift(&bracket(&v1, &v2)?, &v3);
        let rhs = &c2m.peiffer_lift(&v1, &bracket(&v2, &v3)?).mat
            - &c2m.peiffer_lift(&v2, &bracket(&v1, &v3)?).mat;
        worst[4] = worst[4].max(frob_norm(&(&lhs.mat - rhs)));

        let acted = c2m.dact_l(&c2m.dpartial(&v1), &x1);
        worst[5] = worst[5].max(acted.norm());

        let lhs = c2m.ddelta(&c2m.act_l_on_algebra(&g, &x1));
        let rhs = c2m.act_h_on_algebra(&g, &c2m.ddelta(&x1));
        worst[6] = worst[6].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = c2m.partial(&c2m.act_h(&g, &hh));
        let rhs = g.mul(&c2m.partial(&hh))?.mul(&g.inverse()?)?;
        worst[7] = worst[7].max(group_distance(&lhs, &rhs)?);

        let lhs = c2m.dact_l(&xg, &c2m.peiffer_lift(&v1, &v2));
        let rhs = &c2m.peiffer_lift(&c2m.dact_h(&xg, &v1), &v2).mat
            + &c2m.peiffer_lift(&v1, &c2m.dact_h(&xg, &v2)).mat;
        worst[8] = worst[8].max(frob_norm(&(&lhs.mat - rhs)));

        let lhs = c2m.ddelta(&c2m.act_prime_alg(&v1, &x1));
        let rhs = bracket(&v1, &c2m.ddelta(&x1))?;
        worst[9] = worst[9].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = c2m.act_prime_alg(&c2m.ddelta(&x1), &x2);
        let rhs = bracket(&x1, &x2)?;
        worst[10] = worst[10].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        let lhs = c2m.peiffer_lift(
            &c2m.act_h_on_algebra(&g, &v1),
            &c2m.act_h_on_algebra(&g, &v2),
        );
        let rhs = c2m.act_l_on_algebra(&g, &c2m.peiffer_lift(&v1, &v2));
        worst[11] = worst[11].max(frob_norm(&(&lhs.mat - &rhs.mat)));

        // Scaled down so both elements stay inside the log branch radius.
        let hh_small = exp_map(&v1.scale(0.5));
        let acted_h = c2m.act_h(&g, &hh_small);
        let acted_x = c2m.act_l_on_algebra(&g, &x1);
        let lhs = c2m.act_prime(&acted_h, &acted_x)?;
        let rhs = c2m.act_l_on_algebra(&g, &c2m.act_prime(&hh_small, &x1)?);
        worst[12] = worst[12].max(frob_norm(&(&lhs.mat - &rhs.mat)));
    }
    let names = [
        "delta-partial-trivial",
        "lift-antisymmetry",
        "delta-of-lift",
        "l-bracket-from-lift",
        "lift-jacobi",
        "partial-acts-trivially-on-l",
        "g-equivariance-delta",
        "g-equivariance-partial",
        "g-equivariance-lift",
        "derived-action-delta",
        "derived-action-peiffer",
        "group-lift-equivariance",
        "group-derived-equivariance",
    ];
    for (name, w) in names.iter().zip(worst) {
        report.record(name, w);
    }
    Ok(report)
}
