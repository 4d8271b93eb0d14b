//! A numerical laboratory for parallel transport in higher gauge theory.
//!
//! The library computes parallel transport along paths, surfaces and volumes
//! on trivial principal bundles whose structure is enriched by a crossed
//! module or a crossed 2-module, and verifies the generalised non-abelian
//! Stokes identities relating transports in adjacent dimensions, together
//! with the composition, equivariance and thin-homotopy laws those
//! transports satisfy.
//!
//! Layers, from the bottom up:
//!
//! * [`lie_core`] — matrix Lie groups, exponentials/logarithms, ordered
//!   exponentials.
//! * [`higher_groups`] — crossed modules and crossed 2-modules, their axiom
//!   checkers, and the catalogue of concrete instances.
//! * [`fields`] — parametrised maps, differential-form-valued fields, and
//!   finite-difference exterior calculus (curvature in three degrees).
//! * [`transport`] — horizontal lifts, surface and volume holonomy, string
//!   transport and tangent decomposition.
//! * [`stokes_lab`] — the verification oracles: Stokes identities in 2/3/4
//!   dimensions, composition and equivariance checks, convergence studies.
//! * [`scene`] / [`runner`] — serialisable scene descriptions, built-in
//!   scenes, and the entry points used by the `holonomy` command-line tool.

pub mod error;
pub mod fields;
pub mod higher_groups;
pub mod lie_core;

pub use error::{Error, Result};
