//! Analytic quasistatic electron-energy-loss spectra above a planar
//! interface, surface-plasmon phase matching, window integration into
//! |g_Q|², stimulated coupling, and mode ideality.
//!
//! The spectra use the nonretarded image-response formulas, whose
//! prefactors were frozen only after matching an independent time-domain
//! oracle (work done by the induced field on the moving charge) to well
//! below 1% across the resonance. The surface response factor enters as
//! Im[(ε−1)/(ε+1)] = 2·Im ε/|ε+1|², which is manifestly ≥ 0 for passive
//! materials.

use serde::Serialize;

use crate::constants::{C, ELEMENTARY_CHARGE, EPS0, HBAR, ev_to_rad_per_s};
use crate::error::{Error, Result};
use crate::kinematics::ElectronKinematics;
use crate::materials::{MaterialModel, Permittivity, permittivity};
use crate::roots::find_root;
use crate::specfun::bessel_k0;
use crate::sweep::try_fill;

/// Loss probability density Γ(ω) on a frequency grid, with the inputs that
/// generated it.
#[derive(Debug, Clone, Serialize)]
pub struct LossSpectrum {
    /// Angular frequencies (rad/s), strictly increasing.
    pub omega_grid: Vec<f64>,
    /// Γ(ω) ≥ 0, probability per unit angular frequency (s).
    pub gamma_values: Vec<f64>,
    pub provenance: SpectrumProvenance,
}

/// Descriptor of the model that generated a spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumProvenance {
    /// "line_halfspace" or "point_halfspace".
    pub geometry: String,
    pub material: MaterialModel,
    pub beta: f64,
    /// Beam–surface separation (m).
    pub d: f64,
    /// Interaction length (m).
    pub l: f64,
}

impl LossSpectrum {
    pub fn validate(&self) -> Result<()> {
        if self.omega_grid.len() != self.gamma_values.len() || self.omega_grid.len() < 2 {
            return Err(Error::Domain(format!(
                "spectrum requires matching grids of length ≥ 2, got {} and {}",
                self.omega_grid.len(),
                self.gamma_values.len()
            )));
        }
        if !self.omega_grid.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Domain(
                "spectrum frequency grid must be strictly increasing".into(),
            ));
        }
        if let Some(g) = self
            .gamma_values
            .iter()
            .find(|g| !g.is_finite() || **g < 0.0)
        {
            return Err(Error::Domain(format!(
                "spectrum contains an invalid loss density {g}"
            )));
        }
        Ok(())
    }
}

/// Rectangular integration window in ω.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralWindow {
    /// Center ω₀ (rad/s).
    pub center: f64,
    /// Half-width Δω (rad/s); the window is [ω₀−Δω, ω₀+Δω].
    pub half_width: f64,
}

impl SpectralWindow {
    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0) || !(self.center > self.half_width) {
            return Err(Error::Domain(format!(
                "window requires center > half_width > 0, got center = {}, half_width = {}",
                self.center, self.half_width
            )));
        }
        Ok(())
    }
}

/// Uniform frequency grid, linear in photon energy.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrequencyGrid {
    pub min_ev: f64,
    pub max_ev: f64,
    pub count: usize,
}

impl FrequencyGrid {
    pub fn omegas(&self) -> Result<Vec<f64>> {
        if !(self.min_ev > 0.0) || !(self.max_ev > self.min_ev) {
            return Err(Error::Config(format!(
                "frequency grid requires 0 < min < max, got [{}, {}] eV",
                self.min_ev, self.max_ev
            )));
        }
        if self.count < 2 || self.count > 10_000_000 {
            return Err(Error::Config(format!(
                "frequency grid count must be in [2, 1e7], got {}",
                self.count
            )));
        }
        let n = self.count;
        Ok((0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                ev_to_rad_per_s(self.min_ev + (self.max_ev - self.min_ev) * t)
            })
            .collect())
    }
}

/// Frequency at which the electron line ω = v·k crosses the surface-plasmon
/// dispersion of a lossless Drude half-space; closed form ω_p/√(1+γ²),
/// computed here by bracketed root finding on ε(ω) + γ² = 0 (the two must
/// agree to 1e-10 relative).
pub fn spp_phase_matched_frequency(omega_p_ev: f64, kin: &ElectronKinematics) -> Result<f64> {
    if !(omega_p_ev > 0.0) || !omega_p_ev.is_finite() {
        return Err(Error::Domain(format!(
            "plasma frequency must be positive, got {omega_p_ev} eV"
        )));
    }
    let omega_p = ev_to_rad_per_s(omega_p_ev);
    let gamma_sq = kin.gamma * kin.gamma;
    // ε(ω) + γ² = 1 + γ² − ω_p²/ω² is monotone in ω with a single zero.
    let f = |omega: f64| 1.0 + gamma_sq - (omega_p / omega) * (omega_p / omega);
    find_root(f, 1e-3 * omega_p, omega_p, 1e-12 * omega_p, 300)
}

/// Surface response Im[(ε−1)/(ε+1)] = 2·Im ε/|ε+1|².
fn im_surface_response(m: &MaterialModel, omega: f64) -> Result<f64> {
    let eps = match permittivity(m, omega)? {
        Permittivity::Finite(e) => e,
        Permittivity::Infinite => {
            return Err(Error::Unsupported(
                "a perfect conductor has no dissipative surface response; use a Drude model \
                 with finite damping instead"
                    .into(),
            ));
        }
    };
    let denom = (eps + 1.0).norm_sqr();
    let v = 2.0 * eps.im / denom;
    if !v.is_finite() {
        return Err(Error::NumericalFailure(format!(
            "surface response diverged at ω = {omega} rad/s (undamped resonance hit exactly); \
             add damping or shift the grid"
        )));
    }
    Ok(v)
}

fn check_geometry_inputs(d: f64, l: f64) -> Result<()> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::Domain(format!(
            "separation d must be positive, got {d}"
        )));
    }
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!(
            "interaction length L must be positive, got {l}"
        )));
    }
    Ok(())
}

/// Point-electron loss density above a half-space,
/// Γ(ω) = (q_e²L)/(2π²ε₀ħv²) · K0(2ωd/v) · Im[(ε−1)/(ε+1)].
pub fn loss_spectrum_point_halfspace(
    m: &MaterialModel,
    kin: &ElectronKinematics,
    d: f64,
    l: f64,
    grid: &FrequencyGrid,
) -> Result<LossSpectrum> {
    check_geometry_inputs(d, l)?;
    let omega_grid = grid.omegas()?;
    let v = kin.beta * C;
    let prefactor = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * l
        / (2.0 * std::f64::consts::PI * std::f64::consts::PI * EPS0 * HBAR * v * v);
    let gamma_values = try_fill(omega_grid.len(), |i| {
        let omega = omega_grid[i];
        Ok(prefactor * bessel_k0(2.0 * omega * d / v)? * im_surface_response(m, omega)?)
    })?;
    Ok(LossSpectrum {
        omega_grid,
        gamma_values,
        provenance: SpectrumProvenance {
            geometry: "point_halfspace".into(),
            material: *m,
            beta: kin.beta,
            d,
            l,
        },
    })
}

/// Line-electron loss density above a half-space,
/// Γ(ω) = (q²L)/(2πε₀ħωv) · e^{−2ωd/v} · Im[(ε−1)/(ε+1)], with q the charge
/// per unit transverse length (same convention as the 2D coupling limit —
/// meaningful in ratios against it).
pub fn loss_spectrum_line_halfspace(
    q_lineal: f64,
    m: &MaterialModel,
    kin: &ElectronKinematics,
    d: f64,
    l: f64,
    grid: &FrequencyGrid,
) -> Result<LossSpectrum> {
    if !(q_lineal > 0.0) || !q_lineal.is_finite() {
        return Err(Error::Domain(format!(
            "lineal charge must be positive, got {q_lineal} C/m"
        )));
    }
    check_geometry_inputs(d, l)?;
    let omega_grid = grid.omegas()?;
    let v = kin.beta * C;
    let prefactor = q_lineal * q_lineal * l / (2.0 * std::f64::consts::PI * EPS0 * HBAR * v);
    let gamma_values = try_fill(omega_grid.len(), |i| {
        let omega = omega_grid[i];
        Ok(prefactor / omega * (-2.0 * omega * d / v).exp() * im_surface_response(m, omega)?)
    })?;
    Ok(LossSpectrum {
        omega_grid,
        gamma_values,
        provenance: SpectrumProvenance {
            geometry: "line_halfspace".into(),
            material: *m,
            beta: kin.beta,
            d,
            l,
        },
    })
}

/// Default validation window for a Drude material: centered on the
/// phase-matched SPP frequency with half-width γ_m (an interval of two
/// full-widths-half-maximum in total). Other materials need an explicit
/// window.
pub fn default_drude_window(m: &MaterialModel, kin: &ElectronKinematics) -> Result<SpectralWindow> {
    match *m {
        MaterialModel::Drude {
            omega_p_ev,
            gamma_m_ev,
        } => {
            if !(gamma_m_ev > 0.0) {
                return Err(Error::Domain(
                    "an undamped Drude model has no default window width; \
                     specify the window explicitly"
                        .into(),
                ));
            }
            Ok(SpectralWindow {
                center: spp_phase_matched_frequency(omega_p_ev, kin)?,
                half_width: ev_to_rad_per_s(gamma_m_ev),
            })
        }
        _ => Err(Error::Unsupported(
            "default validation windows are defined for Drude materials only; \
             specify the window explicitly"
                .into(),
        )),
    }
}

/// Trapezoidal integral of Γ over the rectangular window, with the window
/// endpoints entering through linear interpolation so the result changes
/// smoothly as the window slides across the grid.
pub fn integrate_gq2(spectrum: &LossSpectrum, window: &SpectralWindow) -> Result<f64> {
    spectrum.validate()?;
    window.validate()?;
    let grid = &spectrum.omega_grid;
    let gamma = &spectrum.gamma_values;
    let lo = (window.center - window.half_width).max(grid[0]);
    let hi = (window.center + window.half_width).min(*grid.last().unwrap());
    if !(lo < hi) {
        return Err(Error::Domain(format!(
            "window [{}, {}] does not overlap the spectrum grid [{}, {}]",
            window.center - window.half_width,
            window.center + window.half_width,
            grid[0],
            grid.last().unwrap()
        )));
    }
    let interp = |x: f64| -> f64 {
        let j = grid.partition_point(|&g| g <= x);
        if j == 0 {
            return gamma[0];
        }
        if j == grid.len() {
            return gamma[j - 1];
        }
        let t = (x - grid[j - 1]) / (grid[j] - grid[j - 1]);
        gamma[j - 1] + (gamma[j] - gamma[j - 1]) * t
    };
    // Strictly interior grid points, flanked by the interpolated endpoints.
    let start = grid.partition_point(|&g| g <= lo);
    let end = grid.partition_point(|&g| g < hi);
    let mut acc = 0.0;
    let mut prev_x = lo;
    let mut prev_y = interp(lo);
    for i in start..end {
        acc += 0.5 * (prev_y + gamma[i]) * (grid[i] - prev_x);
        prev_x = grid[i];
        prev_y = gamma[i];
    }
    acc += 0.5 * (prev_y + interp(hi)) * (hi - prev_x);
    Ok(acc)
}

/// Stimulated coupling g = √N·g_Q in an N-photon field.
pub fn stimulated_g(g_q: num_complex::Complex64, n_photons: u64) -> num_complex::Complex64 {
    (n_photons as f64).sqrt() * g_q
}

/// Fraction of the total coupling budget claimed by one mode:
/// I_m = |g_m|² / Σᵢ|g_i|².
pub fn ideality(couplings: &[f64], target_index: usize) -> Result<f64> {
    if target_index >= couplings.len() {
        return Err(Error::Domain(format!(
            "target index {target_index} out of range for {} modes",
            couplings.len()
        )));
    }
    if let Some(c) = couplings.iter().find(|c| !c.is_finite() || **c < 0.0) {
        return Err(Error::Domain(format!(
            "per-mode couplings must be finite and ≥ 0, got {c}"
        )));
    }
    let total: f64 = couplings.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Domain(
            "ideality is undefined when every mode coupling is zero".into(),
        ));
    }
    Ok(couplings[target_index] / total)
}
