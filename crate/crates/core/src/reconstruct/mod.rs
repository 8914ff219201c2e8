//! Boundary propagation, seed solving, uniqueness checks and disk detection from section data.

mod disk;
mod propagate;
mod scenario;
mod seed;
mod verify;

pub use disk::{detect_disk, DiskReport, DiskVerdict, CAP_CONSTANCY_TOL, DISK_FIT_TOL, ROTATION_STEPS};
pub use propagate::{
    apply_map, propagate_boundary, seed_offset, BoundaryCloud, MapKind, Provenance, CONVEXITY_TOL, DEDUP_TOL,
    SEED_TOL,
};
pub use scenario::{ellipse_bodies, Scenario};
pub use seed::{solve_on, solve_seed, SeedSolution, SEED_RESIDUAL_MAX};
pub use verify::{
    hausdorff_distance, verify_single, verify_uniqueness, BodyDiscrepancy, DiscrepancyReport, Verdict, HAUSDORFF_GRID,
};
