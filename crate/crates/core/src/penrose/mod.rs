//! Penrose functions, the dispersion relation of the bump background, eigenvalue
//! continuation, eigenfunctions and stability margins.

mod continuation;
mod dispersion;
mod eigenfunction;
mod margins;
mod tables;

pub use continuation::{continue_eigenvalue, polish_root, ContinuationOptions, EigenSolution};
pub use dispersion::{
    continuation_field, eigen_ode_rhs, m0_anchor, psi_eval, ContinuationField, Rectangle, DEFAULT_DELTA,
};
pub use eigenfunction::{eigenfunction_hat, Eigenfunction};
pub use margins::{
    collisional_kernel_transform, damping_shift_c0, penrose_margin_collisional, penrose_margin_maxwellian,
    FrequencyScan, MarginReport,
};
pub use tables::{penrose_closed_form, penrose_eval, PenroseBackground, PenroseTable, PenroseValues};
