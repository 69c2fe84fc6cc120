//! Capacity regions, interference regimes and sum-capacity bounds for two
//! interfering two-user Gaussian multiple access channels.
//!
//! Transmitters 1 and 2 talk to receiver 1, transmitters 3 and 4 to
//! receiver 2, and each receiver hears the other pair through cross gains
//! `h1`, `h2`. Rates are in bits per real channel use.
//!
//! Everything is generic over a [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common `f64` and `f32` instantiations.

pub mod bounds;
pub mod channel;
pub mod error;
pub mod format;
mod optimize;
pub mod polymatroid;
pub mod regimes;
pub mod regions;
pub mod scalar;
pub mod users;

pub use bounds::{
    bounds, genie_objective, lower_bound_tin, upper_bound, GenieBound, GenieParams, OptimizerSettings,
    SumCapacityBounds,
};
pub use channel::{ImacChannel, Receiver};
pub use error::{Error, Result};
pub use polymatroid::{MacSpec, MacUser, RatePoint};
pub use regimes::{classify, exact_sum_capacity, CapacityRegime, ExactSumCapacity, Margins, Orientation, RegimeReport};
pub use regions::{
    achievable_product_region, ivs_region, mses_region, outer_bound, Constraint, RatePoint4, RatePolytope,
};
pub use scalar::Scalar;
pub use users::UserSet;

pub type ImacChannelF64 = ImacChannel<f64>;
pub type ImacChannelF32 = ImacChannel<f32>;
pub type MacSpecF64 = MacSpec<f64>;
pub type MacSpecF32 = MacSpec<f32>;
pub type RatePolytopeF64 = RatePolytope<f64>;
pub type RatePolytopeF32 = RatePolytope<f32>;
pub type RegimeReportF64 = RegimeReport<f64>;
pub type RegimeReportF32 = RegimeReport<f32>;
pub type SumCapacityBoundsF64 = SumCapacityBounds<f64>;
pub type SumCapacityBoundsF32 = SumCapacityBounds<f32>;
