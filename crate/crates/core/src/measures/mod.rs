//! The singular-weight measure `ν_i`, the small-angle comparison quantity, symmetric differences
//! and the tangent-frame change of variables.

mod frame;
mod lemma;
mod nu;
mod symdiff;

pub use frame::{gamma, sandwich_bounds, tangent_frame_integral, TangentChart};
pub use lemma::{
    comparability_constants, comparability_on_grid, lemma32_quantity, step3_constant, Lemma32Frame,
    COMPARABILITY_GRID,
};
pub use nu::{nu_measure, NuValue, Region2, AXIS_SEGMENT_MIN};
pub use symdiff::{symdiff_components, symdiff_components_at, Component, SYMDIFF_RESOLUTION};
