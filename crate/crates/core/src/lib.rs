//! Hurwitz complex continued fractions over the Gaussian integers.

pub mod error;
pub mod gaussian;
pub mod interval;
pub mod qsqrt;
pub mod surd;

pub use error::{HcfError, Result};
pub use gaussian::{gauss_gcd, in_fundamental_domain, nearest_gauss, GaussianInt, RatGauss};
pub use interval::{ComplexInterval, Interval};
pub use surd::Surd;
pub mod exec;
pub mod hcf;
pub mod region;
pub mod validity;
pub mod periodic;
pub mod words;
pub mod certify;
pub mod verify;

pub use exec::Exec;
pub use hcf::{expand, Expansion};
