//! Relativistic electron kinematics and the evanescent-field wavevectors.
//!
//! The formulas are arranged to stay accurate at both ends of the velocity
//! range: 1−β² is computed as (1−β)(1+β), and γ−1 as β²γ²/(γ+1), so kinetic
//! energies of slow electrons and Lorentz factors of β → 1 electrons keep
//! full precision.

use crate::constants::{C, ELECTRON_REST_ENERGY_EV};
use crate::error::{Error, Result};
use serde::Serialize;

/// Velocity/energy description of the electron beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElectronKinematics {
    /// v/c.
    pub beta: f64,
    /// Lorentz factor 1/√(1−β²).
    pub gamma: f64,
    /// β·γ.
    pub beta_gamma: f64,
    /// (γ−1)·m_e c² (eV).
    pub kinetic_energy_ev: f64,
}

/// Build kinematics from the normalized velocity β ∈ (0, 1).
pub fn kinematics_from_beta(beta: f64) -> Result<ElectronKinematics> {
    if !(beta > 0.0 && beta < 1.0) || !beta.is_finite() {
        return Err(Error::Domain(format!(
            "beta must lie strictly between 0 and 1, got {beta}"
        )));
    }
    let gamma = 1.0 / ((1.0 - beta) * (1.0 + beta)).sqrt();
    let beta_gamma = beta * gamma;
    // γ−1 = β²γ²/(γ+1) avoids cancellation for slow electrons.
    let kinetic_energy_ev = beta_gamma * beta_gamma / (gamma + 1.0) * ELECTRON_REST_ENERGY_EV;
    Ok(ElectronKinematics {
        beta,
        gamma,
        beta_gamma,
        kinetic_energy_ev,
    })
}

/// Build kinematics from βγ ∈ (0, ∞), exact at both extremes (βγ is the
/// natural variable of the transverse decay constant κ).
pub fn kinematics_from_beta_gamma(beta_gamma: f64) -> Result<ElectronKinematics> {
    if !(beta_gamma > 0.0) || !beta_gamma.is_finite() {
        return Err(Error::Domain(format!(
            "beta·gamma must be positive, got {beta_gamma}"
        )));
    }
    let gamma = beta_gamma.hypot(1.0); // √(1 + (βγ)²)
    let beta = beta_gamma / gamma;
    let kinetic_energy_ev = beta_gamma * beta_gamma / (gamma + 1.0) * ELECTRON_REST_ENERGY_EV;
    Ok(ElectronKinematics {
        beta,
        gamma,
        beta_gamma,
        kinetic_energy_ev,
    })
}

/// Build kinematics from the kinetic energy in eV.
pub fn kinematics_from_kinetic_energy(energy_ev: f64) -> Result<ElectronKinematics> {
    if !(energy_ev > 0.0) || !energy_ev.is_finite() {
        return Err(Error::Domain(format!(
            "kinetic energy must be positive, got {energy_ev} eV"
        )));
    }
    let g1 = energy_ev / ELECTRON_REST_ENERGY_EV; // γ − 1
    let gamma = 1.0 + g1;
    let beta_gamma = (g1 * (g1 + 2.0)).sqrt(); // √(γ²−1)
    let beta = beta_gamma / gamma;
    Ok(ElectronKinematics {
        beta,
        gamma,
        beta_gamma,
        kinetic_energy_ev: energy_ev,
    })
}

/// Free-space, longitudinal and transverse wavevectors of the electron's
/// evanescent field at angular frequency ω₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WavevectorTriple {
    /// ω₀/c (1/m).
    pub k0: f64,
    /// ω₀/v (1/m).
    pub kv: f64,
    /// k0/(βγ) = √(kv²−k0²) (1/m).
    pub kappa: f64,
}

/// Evaluate the wavevector triple; κ² + k0² = kv² holds identically.
pub fn wavevector_triple(omega0: f64, kin: &ElectronKinematics) -> Result<WavevectorTriple> {
    if !(omega0 > 0.0) || !omega0.is_finite() {
        return Err(Error::Domain(format!(
            "omega0 must be positive, got {omega0} rad/s"
        )));
    }
    let k0 = omega0 / C;
    let kv = omega0 / (kin.beta * C);
    let kappa = k0 / kin.beta_gamma;
    Ok(WavevectorTriple { k0, kv, kappa })
}
