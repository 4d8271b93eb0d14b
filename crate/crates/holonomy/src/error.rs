use thiserror::Error;

/// Errors shared across the library.
///
/// Every fallible operation reports one of these variants; numerical
/// tolerances that decide between success and an error are always explicit
/// arguments of the operation that can fail.
#[derive(Error, Debug)]
pub enum Error {
    /// Two elements that must live in the same group (or algebra) do not.
    #[error("group tag mismatch: expected `{expected}`, got `{got}`")]
    TagMismatch { expected: String, got: String },

    /// `log_map` was asked for a matrix logarithm outside its branch-safety
    /// radius, where the principal branch can no longer be trusted.
    #[error("matrix logarithm outside branch-safety radius: |g - I| = {distance:.3e} > {radius:.3e}")]
    Branch { distance: f64, radius: f64 },

    /// A matrix failed its group or algebra membership check.
    #[error("constraint violation for `{tag}`: residual {residual:.3e} > tol {tol:.3e}")]
    Constraint { tag: String, residual: f64, tol: f64 },

    /// A parametrised map was evaluated outside its domain.
    #[error("parameter {value} outside [0,1] in axis {axis}")]
    Domain { axis: usize, value: f64 },

    /// A square expected to have a constant edge (a pinned bottom or a
    /// bigon's pinned rims) does not.
    #[error("edge not pinned: max deviation {deviation:.3e} > tol {tol:.3e} ({which})")]
    Pin { which: String, deviation: f64, tol: f64 },

    /// A cube failed the thin-face conditions required for surface-family
    /// transport.
    #[error("cube face {face} not thin: rank proxy {proxy:.3e} > tol {tol:.3e}")]
    CubeFace { face: String, proxy: f64, tol: f64 },

    /// A tesseract failed its boundary conditions.
    #[error("tesseract condition {condition} violated: residual {residual:.3e} > tol {tol:.3e}")]
    Tesseract { condition: String, residual: f64, tol: f64 },

    /// Two pieces being composed do not agree along the junction.
    #[error("junction mismatch in {what}: max deviation {deviation:.3e} > tol {tol:.3e}")]
    Junction { what: String, deviation: f64, tol: f64 },

    /// A transported start point does not lie over the expected path.
    #[error("start data inconsistent: {detail}")]
    Start { detail: String },

    /// Sampled data violate an invariant they are required to satisfy
    /// (for example the transport-invariance of a tangent sample).
    #[error("invariant violated: {detail} (residual {residual:.3e} > tol {tol:.3e})")]
    Invariant { detail: String, residual: f64, tol: f64 },

    /// A value expected to be central (for the centre-variant Stokes check)
    /// is not.
    #[error("value not central: residual {residual:.3e} > tol {tol:.3e}")]
    NotCentral { residual: f64, tol: f64 },

    /// Configuration problems: malformed scenes, unknown identifiers,
    /// incompatible resolutions.
    #[error("configuration error: {0}")]
    Config(String),

    /// I/O and serialisation failures while running scenes.
    #[error("runtime error: {0}")]
    Runtime(String),
}

pub type Result<T> = std::result::Result<T, Error>;
