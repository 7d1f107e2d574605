//! Upper limits on the vacuum coupling |g_Q|² between free electrons and
//! single photonic modes, with the analytic machinery around them:
//!
//! - closed-form limits for line (2D) and point (3D) electrons near
//!   translationally invariant structures, together with the
//!   energy-selection rules they imply — the spectral cutoff κd = 1/2 for
//!   line electrons and the optimum κd ≈ 0.4064 for point electrons
//!   ([`bounds`]);
//! - electron kinematics and the wavevector triple (k₀, k_v, κ) that
//!   controls the evanescent overlap ([`kinematics`]);
//! - modified Bessel functions K₀, K₁ and the combination x·K₀(x)·K₁(x)
//!   hardened for extreme arguments ([`specfun`]);
//! - dispersive material models, static screening factors τ, and the
//!   quasistatic electron-energy-loss spectra used to validate the limits
//!   ([`materials`], [`eels`]);
//! - two-parameter sweep maps with deterministic, optionally parallel
//!   evaluation ([`sweep`], [`output`]);
//! - truncated-space evaluation of the scattering operator
//!   exp(g_Q b̂†â − g_Q* b̂â†) and the photon statistics of spontaneous
//!   emission ([`quantum`]).
//!
//! All quantities are SI unless a name says otherwise (`_ev`, `_nm`,
//! `_um`). Enable the `parallel` feature (default) to evaluate sweeps and
//! spectra with rayon; the sequential fallback produces bit-identical
//! results.

// Validation deliberately uses negated comparisons (`!(x > 0.0)`) so that
// NaN fails every range check; the suggested rewrites would let it through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constants;
pub mod eels;
pub mod error;
pub mod kinematics;
pub mod materials;
pub mod output;
pub mod quantum;
pub mod roots;
pub mod specfun;
pub mod sweep;

pub use bounds::{
    FieldIntegral, LimitQuery2D, LimitQuery3D, OptimalGiven, OptimalPartner,
    field_integral_line_half_space, field_integral_point_sector, gq2_limit_from_field_integral,
    gq2_limit_line, gq2_limit_point, line_cutoff_frequency, optimal_kappa_d, optimal_pair,
};
pub use eels::{
    FrequencyGrid, LossSpectrum, SpectralWindow, SpectrumProvenance, default_drude_window,
    ideality, integrate_gq2, loss_spectrum_line_halfspace, loss_spectrum_point_halfspace,
    spp_phase_matched_frequency, stimulated_g,
};
pub use error::{Error, Result};
pub use kinematics::{
    ElectronKinematics, WavevectorTriple, kinematics_from_beta, kinematics_from_beta_gamma,
    kinematics_from_kinetic_energy, wavevector_triple,
};
pub use materials::{
    MaterialModel, Permittivity, StaticPermittivity, permittivity, static_permittivity,
    tau_concentric_cylinder, tau_half_space,
};
pub use quantum::{
    JointState, ScatterConfig, evolve_spontaneous, exponential_apply, photon_distribution,
    poisson_pmf, tv_to_poisson,
};
pub use specfun::{bessel_k0, bessel_k1, optimal_residual, xk0k1};
pub use sweep::{AxisScale, AxisSpec, LimitKind, LimitMap, SweepSpec, sweep_limit_map};
