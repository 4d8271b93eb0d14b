//! Matrix Lie groups, their algebras, and ordered exponentials.
//!
//! Every group used by the library is a concrete matrix group: elements are
//! square complex matrices, algebra elements are matrices spanning a fixed
//! real subspace, and all structural operations (exponential, logarithm,
//! bracket, adjoint) act on those matrices.  Two models cover the catalogue:
//!
//! * [`Model::Unitary`] — subgroups of the unitary group (SU(2), SO(3)
//!   embedded as real orthogonal matrices, U(1), and block-diagonal
//!   products of these).
//! * [`Model::CentralTwist`] — the central extension of su(2) by a line,
//!   with the bracket twisted by a 2-cocycle.  Algebra elements are stored
//!   in twisted coordinates; group elements live in the trivialised direct
//!   product, and the exponential applies the trivialising change of
//!   coordinates explicitly.
//!
//! The ordered exponential solves `g'(t) = f(t) g(t)`, `g(0) = e`; the
//! default integrator is the midpoint-exponential rule (order 2) with a
//! commutator-free fourth-order rule available for convergence checks.

mod group;
mod ordered;

#[cfg(test)]
mod tests;

pub use group::{
    adjoint, bracket, c64, exp_map, frob_inner_re, frob_norm, group_distance, log_map, matrix_exp,
    matrix_log, AlgebraElement, GroupElement, LieGroup, Model,
};
pub use ordered::{ordered_exp_samples, path_ordered_exp, OrderedScheme};

pub type CMat = nalgebra::DMatrix<num_complex::Complex64>;
pub type RMat = nalgebra::DMatrix<f64>;

/// Default branch-safety radius for `log_map`: logarithms are refused when
/// the Frobenius distance from the identity exceeds this value.
pub const LOG_BRANCH_RADIUS: f64 = 1.5;

/// Default tolerance for group-membership and consistency checks.
pub const TOL_GROUP: f64 = 1e-10;
