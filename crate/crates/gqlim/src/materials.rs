//! Dispersive material models, their static limits, and the material
//! response factor τ for the two canonical scatterer geometries.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::rad_per_s_to_ev;
use crate::error::{Error, Result};

/// Frequency-dependent permittivity model. Frequencies are stored in eV;
/// only ratios of frequencies enter the formulas, so the unit cancels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaterialModel {
    /// ε(ω) = 1 − ω_p²/(ω(ω + iγ_m)).
    Drude { omega_p_ev: f64, gamma_m_ev: f64 },
    /// ε(ω) = ε_∞ + ε_∞(ω_LO² − ω_TO²)/(ω_TO² − ω² − iωγ_d).
    Lorentz {
        eps_inf: f64,
        omega_lo_ev: f64,
        omega_to_ev: f64,
        gamma_d_ev: f64,
    },
    /// Non-dispersive real permittivity ε ≥ 1.
    Constant { eps: f64 },
    /// Perfect electric conductor: |ε| → ∞ at every frequency.
    PerfectConductor,
}

/// Complex permittivity value; perfect conductors carry a distinguished
/// infinite sentinel rather than a large float.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(Complex64),
    Infinite,
}

impl Permittivity {
    /// The finite value, or an error for the conductor sentinel.
    pub fn finite(self) -> Result<Complex64> {
        match self {
            Permittivity::Finite(v) => Ok(v),
            Permittivity::Infinite => Err(Error::Unsupported(
                "operation requires a finite permittivity, got a perfect conductor".into(),
            )),
        }
    }
}

/// Static (ω → 0) permittivity; conductor-like models diverge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum StaticPermittivity {
    Finite(f64),
    Infinite,
}

impl StaticPermittivity {
    fn checked_value(self, role: &str) -> Result<Option<f64>> {
        match self {
            StaticPermittivity::Finite(v) if v >= 1.0 => Ok(Some(v)),
            StaticPermittivity::Finite(v) => Err(Error::Domain(format!(
                "{role} permittivity must be ≥ 1, got {v}"
            ))),
            StaticPermittivity::Infinite => Ok(None),
        }
    }
}

impl MaterialModel {
    /// Drude parameters commonly used for gold (ω_p = 9.06 eV, γ_m = 71 meV).
    pub fn gold() -> Self {
        MaterialModel::Drude {
            omega_p_ev: 9.06,
            gamma_m_ev: 0.071,
        }
    }

    /// Lorentz phonon-oscillator parameters for gallium phosphide
    /// (ε_∞ = 9.1, ω_LO = 67.8 meV, ω_TO = 47.1 meV, γ_d = 1.25 meV).
    pub fn gallium_phosphide() -> Self {
        MaterialModel::Lorentz {
            eps_inf: 9.1,
            omega_lo_ev: 0.0678,
            omega_to_ev: 0.0471,
            gamma_d_ev: 0.00125,
        }
    }

    /// Check the variant's parameter constraints.
    pub fn validate(&self) -> Result<()> {
        match *self {
            MaterialModel::Drude {
                omega_p_ev,
                gamma_m_ev,
            } => {
                if !(omega_p_ev > 0.0) {
                    return Err(Error::Domain(format!(
                        "Drude plasma frequency must be > 0, got {omega_p_ev} eV"
                    )));
                }
                if !(gamma_m_ev >= 0.0) {
                    return Err(Error::Domain(format!(
                        "Drude damping must be ≥ 0, got {gamma_m_ev} eV"
                    )));
                }
            }
            MaterialModel::Lorentz {
                eps_inf,
                omega_lo_ev,
                omega_to_ev,
                gamma_d_ev,
            } => {
                if !(omega_to_ev > 0.0) || !(omega_lo_ev > omega_to_ev) {
                    return Err(Error::Domain(format!(
                        "Lorentz model requires ω_LO > ω_TO > 0, got ω_LO = {omega_lo_ev} eV, \
                         ω_TO = {omega_to_ev} eV"
                    )));
                }
                if !(eps_inf >= 1.0) {
                    return Err(Error::Domain(format!(
                        "Lorentz background permittivity must be ≥ 1, got {eps_inf}"
                    )));
                }
                if !(gamma_d_ev >= 0.0) {
                    return Err(Error::Domain(format!(
                        "Lorentz damping must be ≥ 0, got {gamma_d_ev} eV"
                    )));
                }
            }
            MaterialModel::Constant { eps } => {
                if !(eps >= 1.0) {
                    return Err(Error::Domain(format!(
                        "constant permittivity must be ≥ 1, got {eps}"
                    )));
                }
            }
            MaterialModel::PerfectConductor => {}
        }
        Ok(())
    }

    /// Parse a material from its JSON object form, e.g.
    /// `{"model":"drude","omega_p_eV":9.06,"gamma_eV":0.071}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let m: MaterialModel = serde_json::from_str(s)
            .map_err(|e| Error::Config(format!("invalid material JSON: {e}")))?;
        Ok(m)
    }
}

/// JSON wire format for materials; Lorentz phonon frequencies are given in
/// meV on the wire but stored in eV internally.
#[derive(Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
enum MaterialJson {
    Drude {
        #[serde(rename = "omega_p_eV")]
        omega_p_ev: f64,
        #[serde(rename = "gamma_eV")]
        gamma_ev: f64,
    },
    Lorentz {
        eps_inf: f64,
        #[serde(rename = "omega_LO_meV")]
        omega_lo_mev: f64,
        #[serde(rename = "omega_TO_meV")]
        omega_to_mev: f64,
        #[serde(rename = "gamma_meV")]
        gamma_mev: f64,
    },
    Constant {
        eps: f64,
    },
    Pec,
}

impl From<&MaterialModel> for MaterialJson {
    fn from(m: &MaterialModel) -> Self {
        match *m {
            MaterialModel::Drude {
                omega_p_ev,
                gamma_m_ev,
            } => MaterialJson::Drude {
                omega_p_ev,
                gamma_ev: gamma_m_ev,
            },
            MaterialModel::Lorentz {
                eps_inf,
                omega_lo_ev,
                omega_to_ev,
                gamma_d_ev,
            } => MaterialJson::Lorentz {
                eps_inf,
                omega_lo_mev: omega_lo_ev * 1e3,
                omega_to_mev: omega_to_ev * 1e3,
                gamma_mev: gamma_d_ev * 1e3,
            },
            MaterialModel::Constant { eps } => MaterialJson::Constant { eps },
            MaterialModel::PerfectConductor => MaterialJson::Pec,
        }
    }
}

impl Serialize for MaterialModel {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        MaterialJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MaterialModel {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let j = MaterialJson::deserialize(deserializer)?;
        let m = match j {
            MaterialJson::Drude {
                omega_p_ev,
                gamma_ev,
            } => MaterialModel::Drude {
                omega_p_ev,
                gamma_m_ev: gamma_ev,
            },
            MaterialJson::Lorentz {
                eps_inf,
                omega_lo_mev,
                omega_to_mev,
                gamma_mev,
            } => MaterialModel::Lorentz {
                eps_inf,
                omega_lo_ev: omega_lo_mev * 1e-3,
                omega_to_ev: omega_to_mev * 1e-3,
                gamma_d_ev: gamma_mev * 1e-3,
            },
            MaterialJson::Constant { eps } => MaterialModel::Constant { eps },
            MaterialJson::Pec => MaterialModel::PerfectConductor,
        };
        m.validate().map_err(serde::de::Error::custom)?;
        Ok(m)
    }
}

/// Evaluate the model's complex permittivity at angular frequency ω (rad/s).
pub fn permittivity(m: &MaterialModel, omega: f64) -> Result<Permittivity> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "permittivity requires ω > 0, got {omega} rad/s (the static limit has its own operation)"
        )));
    }
    m.validate()?;
    let w = rad_per_s_to_ev(omega);
    let eps = match *m {
        MaterialModel::Drude {
            omega_p_ev,
            gamma_m_ev,
        } => {
            let denom = Complex64::new(w, 0.0) * Complex64::new(w, gamma_m_ev);
            Complex64::new(1.0, 0.0) - omega_p_ev * omega_p_ev / denom
        }
        MaterialModel::Lorentz {
            eps_inf,
            omega_lo_ev,
            omega_to_ev,
            gamma_d_ev,
        } => {
            let num = eps_inf * (omega_lo_ev * omega_lo_ev - omega_to_ev * omega_to_ev);
            let denom = Complex64::new(omega_to_ev * omega_to_ev - w * w, -w * gamma_d_ev);
            Complex64::new(eps_inf, 0.0) + num / denom
        }
        MaterialModel::Constant { eps } => Complex64::new(eps, 0.0),
        MaterialModel::PerfectConductor => return Ok(Permittivity::Infinite),
    };
    Ok(Permittivity::Finite(eps))
}

/// Static (ω → 0) permittivity of the model. Conductor-like variants (Drude,
/// perfect conductor) return the infinite sentinel; the damped-Lorentz static
/// value equals its lossless limit since damping drops out at ω = 0.
pub fn static_permittivity(m: &MaterialModel) -> StaticPermittivity {
    match *m {
        MaterialModel::Drude { .. } | MaterialModel::PerfectConductor => {
            StaticPermittivity::Infinite
        }
        MaterialModel::Lorentz {
            eps_inf,
            omega_lo_ev,
            omega_to_ev,
            ..
        } => {
            let r = omega_lo_ev / omega_to_ev;
            StaticPermittivity::Finite(eps_inf * r * r)
        }
        MaterialModel::Constant { eps } => StaticPermittivity::Finite(eps),
    }
}

/// Material response factor τ = 2ε₁(ε₂ − 1)/(ε₂ + ε₁) for a half-space
/// scatterer in an ambient dielectric ε₁; the conductor limit is 2ε₁.
pub fn tau_half_space(eps1: StaticPermittivity, eps2: StaticPermittivity) -> Result<f64> {
    let e1 = eps1.checked_value("ambient")?.ok_or_else(|| {
        Error::InvalidEnvironment("ambient permittivity must be finite (a dielectric)".into())
    })?;
    Ok(match eps2.checked_value("scatterer")? {
        Some(e2) => 2.0 * e1 * (e2 - 1.0) / (e2 + e1),
        None => 2.0 * e1,
    })
}

/// Material response factor τ = ε₁(ε₂ − 1)/ε₂ for a concentric-cylinder
/// scatterer in an ambient dielectric ε₁; the conductor limit is ε₁.
pub fn tau_concentric_cylinder(eps1: StaticPermittivity, eps2: StaticPermittivity) -> Result<f64> {
    let e1 = eps1.checked_value("ambient")?.ok_or_else(|| {
        Error::InvalidEnvironment("ambient permittivity must be finite (a dielectric)".into())
    })?;
    Ok(match eps2.checked_value("scatterer")? {
        Some(e2) => e1 * (e2 - 1.0) / e2,
        None => e1,
    })
}
