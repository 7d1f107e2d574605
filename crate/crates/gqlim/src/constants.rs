//! CODATA 2018 physical constants and unit conversions.
//!
//! Everything downstream works in SI (rad/s, m, s); photon energies cross
//! the API boundary in eV and convert here via ħω[J] = E[eV]·q_e.

/// Speed of light in vacuum (m/s, exact).
pub const C: f64 = 299_792_458.0;

/// Reduced Planck constant (J·s, exact since the 2019 SI: h/2π).
pub const HBAR: f64 = 1.054_571_817_646_156_5e-34;

/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;

/// Fine-structure constant (dimensionless).
pub const ALPHA: f64 = 7.297_352_569_3e-3;

/// Electron rest energy m_e·c² (eV).
pub const ELECTRON_REST_ENERGY_EV: f64 = 510_998.950_00;

/// Elementary charge (C, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Angular frequency (rad/s) of a photon with energy `ev` (eV).
pub fn ev_to_rad_per_s(ev: f64) -> f64 {
    ev * ELEMENTARY_CHARGE / HBAR
}

/// Photon energy (eV) of angular frequency `omega` (rad/s).
pub fn rad_per_s_to_ev(omega: f64) -> f64 {
    omega * HBAR / ELEMENTARY_CHARGE
}

pub fn nm_to_m(nm: f64) -> f64 {
    nm * 1e-9
}

pub fn um_to_m(um: f64) -> f64 {
    um * 1e-6
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn alpha_consistent_with_other_constants() {
        // q²/(4π ε₀ ħ c); the published rounding of ε₀ and α leaves a
        // ~3e-12 relative gap, well inside the 1e-9 requirement.
        let derived =
            ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * std::f64::consts::PI * EPS0 * HBAR * C);
        assert_relative_eq!(derived, ALPHA, max_relative = 1e-9);
    }

    #[test]
    fn all_constants_positive() {
        for v in [
            C,
            HBAR,
            EPS0,
            ALPHA,
            ELECTRON_REST_ENERGY_EV,
            ELEMENTARY_CHARGE,
        ] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn ev_conversion_round_trip_and_value() {
        // 1 eV ↔ 1.519267447878626e15 rad/s (arbitrary-precision reference).
        assert_relative_eq!(
            ev_to_rad_per_s(1.0),
            1.519_267_447_878_626e15,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            rad_per_s_to_ev(ev_to_rad_per_s(0.0678)),
            0.0678,
            max_relative = 1e-14
        );
    }
}
