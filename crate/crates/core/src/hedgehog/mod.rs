//! Points of the hedgehog, its metric, order and balls.

pub mod axes;
pub mod balls;
pub mod order;
pub mod point;

pub use axes::{cube_ball_at_apex, cube_distance, from_axes, to_axes, SparseAxisVector};
pub use balls::{ball, epsilon_net, Ball, BallKind};
pub use order::{infimum, leq, supremum_directed};
pub use point::{distance, project_height, project_spine, Point, SpineUniverse};
