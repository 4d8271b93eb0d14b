//! Crossed modules, crossed 2-modules, and the instance catalogue.
//!
//! A crossed module `(G, H, τ, α)` packages a group morphism `τ: H → G`
//! together with an action `α` of `G` on `H` satisfying the equivariance
//! and Peiffer identities; it is the gauge structure for surface transport.
//! A crossed 2-module adds a third group `L`, morphisms `∂: H → G` and
//! `δ: L → H`, actions of `G` on `H` and `L`, and a Peiffer lifting
//! `{−,−}: 𝔥 × 𝔥 → 𝔩` measuring the failure of the middle Peiffer identity;
//! it is the gauge structure for volume transport.
//!
//! Instances are plain data: structure maps are closures over the matrix
//! representations from [`crate::lie_core`].  Whether a given instance
//! actually satisfies the axioms is established numerically by the samplers
//! in this module ([`check_crossed_module_axioms`],
//! [`check_crossed2_axioms`]), which is also how the deliberately broken
//! negative-control instances are detected.

mod catalog;
mod crossed2;
mod crossed_module;

#[cfg(test)]
mod tests;

pub use catalog::{
    c2m_central_extension, cm_cover_central, cm_inner, instance_by_id, instance_ids, su2_cover,
    su2_cover_lift, Instance,
};
pub use crossed2::{check_crossed2_axioms, Crossed2Module};
pub use crossed_module::{
    ad_image_residual, check_crossed_module_axioms, semidirect_inv, semidirect_mul, CrossedModule,
};

use serde::Serialize;

/// Result of sampling one algebraic law.
#[derive(Clone, Debug, Serialize)]
pub struct LawResult {
    pub law: String,
    pub max_residual: f64,
    pub pass: bool,
}

/// Aggregated result of an axiom-sampling run.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub instance: String,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub laws: Vec<LawResult>,
    pub pass: bool,
}

impl AxiomReport {
    pub(crate) fn new(instance: &str, samples: usize, seed: u64, tol: f64) -> Self {
        AxiomReport { instance: instance.into(), samples, seed, tol, laws: Vec::new(), pass: true }
    }

    pub(crate) fn record(&mut self, law: &str, max_residual: f64) {
        let pass = max_residual <= self.tol;
        self.pass &= pass;
        self.laws.push(LawResult { law: law.into(), max_residual, pass });
    }
}
