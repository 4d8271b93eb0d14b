//! Parameter maps (paths, squares, cubes, tesseracts) and Lie-algebra-valued
//! differential forms on ambient space.
//!
//! Transport integrates pullbacks of these fields along the maps, so the two
//! halves share conventions: maps carry analytic Jacobians where builders
//! know them (finite differences otherwise), and forms carry analytic
//! partial derivatives for the same reason.  The validators in
//! [`validate_cube`] and [`validate_tesseract`] enforce the boundary-thinness
//! conditions that surface and volume transport assume.

mod catalog;
mod forms;
mod maps;

#[cfg(test)]
mod tests;

pub use catalog::{
    comb_index, fake_flat_two_form, fake_two_flat_three_form, sample_points, scaled_form,
    AlgValued, SeededForm, TrigScalar,
};
pub use forms::{
    curvature, fake_curvature_residual, fake_two_curvature_residual, peiffer_square,
    three_curvature, three_curvature_dc, two_curvature, FormField, FIELD_FD_STEP,
};
pub use maps::{
    bump, bump_cube, bump_deriv, bump_split, bump_split_deriv, bump_tesseract, jacobian_rank,
    line, ruled_square, seeded_arc, seeded_displacement, seeded_loop, thinness_rank_proxy,
    validate_cube, validate_tesseract, AxisWarp, ParamMap, MAP_FD_STEP,
};
