//! Grids, paired velocity/xi transforms, the Hilbert transform and half-line quadrature.

mod dawson;
mod grid;
mod hilbert;
mod quadrature;
mod transform;

pub use dawson::dawson;
pub use grid::{build_field, ModeSet, SpectralField, XiGrid};
pub use hilbert::{edge_level, hilbert_pv, hilbert_transform, VelocityHilbert, DEFAULT_SPILL_TOL};
pub use quadrature::{
    fixed_panels, gauss8, integrate, integrate_real, laplace_semiinf, laplace_semiinf_with_error, Envelope,
    DEFAULT_TOL, GAUSS8_NODES, GAUSS8_WEIGHTS,
};
pub use transform::FourierPair;
