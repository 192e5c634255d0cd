//! Numerical laboratory for the one-dimensional Vlasov-Poisson-Fokker-Planck
//! equation linearized around a Maxwellian or a bump-perturbed background.

// NaN-rejecting guards are written as negated comparisons throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod backgrounds;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod penrose;
pub mod spectral;
pub mod wave;

pub use error::{Error, Result};
pub use num_complex::Complex64;
