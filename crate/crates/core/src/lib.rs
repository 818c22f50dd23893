//! Signal detection in α-stable spherical noise via Padé parameters and
//! optimal rank-based bivariate location tests.
//!
//! The pipeline: simulate complex observation series under isotropic α-stable
//! noise ([`stable_noise`]), transform each series into Padé parameters
//! (poles, zeros, residuals) through random Hankel pencils ([`pade`]), and run
//! affine-invariant one-sample location tests (van der Waerden and pole-score
//! variants of the interdirection/rank statistic, plus a Hotelling baseline)
//! on the resulting bivariate points ([`rank_test`]). The [`radial`] module
//! carries the closed-form pole radial family, score functions and efficiency
//! constants; [`sim`] is the seeded Monte Carlo power harness behind the CLI.

pub mod error;
pub mod pade;
pub mod quad;
pub mod radial;
pub mod rng;
pub mod sim;
pub mod special;
pub mod stable_noise;
pub mod stats;

pub use error::{Error, Result};
pub use num_complex::Complex64;
