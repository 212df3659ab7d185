//! Fractional-noise toolkit for studying memory in stochastic gradient noise.
//!
//! The crate covers exact fractional Gaussian noise and symmetric
//! alpha-stable sampling ([`noise`]), rescaled-range Hurst estimation
//! ([`hurst`]), closed-form fractional Ornstein-Uhlenbeck analytics
//! ([`fou`], backed by [`special`]), Euler-Maruyama simulation of
//! FBM-driven SDEs ([`sim`]) and a small minibatch-noise laboratory
//! ([`sgn`]).
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below name the double-precision instantiations used by the CLI.

pub mod error;
pub mod fou;
pub mod hurst;
pub mod noise;
pub mod quadrature;
pub mod rng;
pub mod scalar;
pub mod sgn;
pub mod sim;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Real;

pub type FgnSeries64 = noise::FgnSeries<f64>;
pub type StableSeries64 = noise::StableSeries<f64>;
pub type HurstEstimate64 = hurst::HurstEstimate<f64>;
pub type FouParams64 = fou::FouParams<f64>;
pub type DensityCurve64 = fou::DensityCurve<f64>;
pub type SimConfig64 = sim::SimConfig<f64>;
pub type FptBatch64 = sim::FptBatch<f64>;
pub type SgnTrace64 = sgn::SgnTrace<f64>;

pub type FgnSeries32 = noise::FgnSeries<f32>;
pub type HurstEstimate32 = hurst::HurstEstimate<f32>;
pub type FouParams32 = fou::FouParams<f32>;
