//! Section data, tangent-chord maps and reconstruction for planar convex bodies.
//!
//! Bodies live in [`geometry`]. [`probes`] measures chords and areas along
//! supporting lines of an inner body, [`phi`] runs the chord maps and their
//! orbits, [`measures`] integrates the singular `|y|^{i-2}` weight and
//! [`reconstruct`] propagates boundary points from tabulated data.

pub mod acceptance;
pub mod error;
pub mod geometry;
pub mod measures;
pub mod phi;
pub mod probes;
pub mod quadrature;
pub mod reconstruct;
pub mod roots;
pub mod svg;

pub use error::{Error, Result};
pub use geometry::{ConvexBody2, Dir2, Line2, Point2, Side};
