pub mod body;
pub mod line;
pub mod point;
pub mod polygon;
pub mod tangent;

pub use body::{ConvexBody2, SupportSet};
pub use line::{Line2, Side};
pub use point::{wrap_pi, wrap_tau, Angle, Dir2, Point2};
