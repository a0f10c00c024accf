//! Capacity region of the two-user linear deterministic interference channel
//! with noisy channel-output feedback, feedback-gain metrics, and a bit-level
//! channel simulator.
//!
//! ```
//! use ldic_core::{capacity_region, metrics, ChannelParams, Rational};
//!
//! let params = ChannelParams::new(10, 10, 3, 8, 9, 4);
//! let region = capacity_region(&params).unwrap();
//! assert_eq!(region.max_linear(1, 1), Rational::from(12i64));
//! assert_eq!(metrics::sigma(&params).unwrap(), Rational::ONE);
//! ```

pub mod ldsim;
pub mod metrics;
pub mod par;
pub mod params;
pub mod polytope;
pub mod rational;
pub mod region;

pub use metrics::{MetricSurface, MetricsResult, ThresholdReport};
pub use par::Execution;
pub use params::{gaussian_to_ld, ChannelParams, GaussianParams, ParamError, User, Variant};
pub use polytope::{Axis, PolytopeError, RatePoint, RatePolytope};
pub use rational::Rational;
pub use region::{
    build_bounds, capacity_region, evaluate_all, evaluate_bound, BoundId, BoundSet, Constraint,
    Provenance, RegionError,
};
