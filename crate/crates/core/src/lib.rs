//! Spin and particle Wigner kernels and their contraction limit.

pub mod acceptance;
pub mod cg;
pub mod contraction;
pub mod error;
pub mod half;
pub mod io;
pub mod kahan;
pub mod laguerre;
pub mod linalg;
pub mod logdomain;
pub mod particle_kernel;
pub mod spherical;
pub mod spin_kernel;
pub mod spin_ops;
pub mod sphere;
pub mod sqrt_rational;
pub mod wigner_d;

pub use error::{Error, Result};
pub use half::HalfInt;
