//! Characteristics, the density equation, closed-form oracles and the time integrator.

mod characteristics;
mod density;
mod energy;
mod fit;
mod multiplier;
mod simulator;
mod volterra;

pub use characteristics::{eta_bar, s_coll, s_free, t_ap, volterra_kernel, volterra_kernel_with};
pub use density::{free_density_oracle, landau_density_closed_form, LandauOracle};
pub use energy::{
    energy_dissipation_eval, energy_dissipation_nonzero, energy_dissipation_rows, energy_dissipation_spectral,
    spectral_moments, weighted_mode_norm, xi_derivative, xi_derivatives, EnergyParams, MOMENT_GUARD,
};
pub use fit::{fit_exponential_rate, linear_fit};
pub use multiplier::{multiplier_eval, multiplier_transport_derivative, phi, phi_prime};
pub use simulator::{electric_field, vpfp_step, LinearBackground, Sample, SimParams, Simulator};
pub use volterra::{solve_volterra, VolterraProblem};
