//! Dense parameter sweeps of the coupling limits over two-axis grids.
//!
//! Every grid cell is an independent pure evaluation, written by index, so
//! the map is bitwise identical no matter how the work is scheduled. The
//! `parallel` feature switches the fill loop to a work-stealing pool without
//! changing a single output bit.

use serde::{Deserialize, Serialize};

use crate::bounds::{LimitQuery2D, LimitQuery3D, gq2_limit_line, gq2_limit_point};
use crate::constants::{ev_to_rad_per_s, nm_to_m, um_to_m};
use crate::error::{Error, Result};
use crate::kinematics::{ElectronKinematics, kinematics_from_beta, kinematics_from_kinetic_energy};

/// Fill a length-`n` vector by evaluating `f` at each index, in parallel
/// when the `parallel` feature is active. Results land at their own index,
/// so scheduling cannot affect the output.
pub(crate) fn try_fill<T, F>(n: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Which limit a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Line,
    Point,
}

/// Grid spacing rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisScale {
    Lin,
    Log,
}

/// Physical quantity a sweep axis ranges over (with its unit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepVariable {
    /// Electron kinetic energy in eV.
    #[serde(rename = "ke_eV")]
    KineticEnergyEv,
    /// Normalized velocity β.
    #[serde(rename = "beta")]
    Beta,
    /// Photon energy ħω₀ in eV.
    #[serde(rename = "photon_eV")]
    PhotonEnergyEv,
    /// Beam–scatterer separation in nm.
    #[serde(rename = "d_nm")]
    SeparationNm,
}

impl SweepVariable {
    /// Column label used in CSV sidecars and reports.
    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::KineticEnergyEv => "ke_eV",
            SweepVariable::Beta => "beta",
            SweepVariable::PhotonEnergyEv => "photon_eV",
            SweepVariable::SeparationNm => "d_nm",
        }
    }

    fn is_electron(self) -> bool {
        matches!(self, SweepVariable::KineticEnergyEv | SweepVariable::Beta)
    }
}

/// One sweep axis: a variable plus its grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub variable: SweepVariable,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: AxisScale,
}

impl AxisSpec {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 || self.count > 1_000_000 {
            return Err(Error::Config(format!(
                "axis count must be in [1, 1e6], got {}",
                self.count
            )));
        }
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::Config("axis bounds must be finite".into()));
        }
        if self.count > 1 && !(self.min < self.max) {
            return Err(Error::Config(format!(
                "axis requires min < max for count > 1, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.scale == AxisScale::Log && !(self.min > 0.0) {
            return Err(Error::Config(format!(
                "log axis requires min > 0, got {}",
                self.min
            )));
        }
        Ok(())
    }

    /// Materialize the grid (strictly increasing for count > 1).
    pub fn grid(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.count == 1 {
            return Ok(vec![self.min]);
        }
        let n = self.count;
        let pts = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    AxisScale::Lin => self.min + (self.max - self.min) * t,
                    AxisScale::Log => self.min * (self.max / self.min).powf(t),
                }
            })
            .collect();
        Ok(pts)
    }
}

/// Full sweep specification: limit kind, two axes, and the fixed parameters
/// completing each query. Fields with unit suffixes mirror the CLI flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub kind: LimitKind,
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub tau: f64,
    #[serde(rename = "L_um")]
    pub l_um: f64,
    /// Opening angle (rad); required by the point limit.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<f64>,
    /// Lineal charge (C per nm); required by the line limit.
    #[serde(
        default,
        rename = "q_C_per_nm",
        skip_serializing_if = "Option::is_none"
    )]
    pub q_c_per_nm: Option<f64>,
    #[serde(default, rename = "photon_eV", skip_serializing_if = "Option::is_none")]
    pub photon_ev: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, rename = "ke_eV", skip_serializing_if = "Option::is_none")]
    pub ke_ev: Option<f64>,
    #[serde(default, rename = "d_nm", skip_serializing_if = "Option::is_none")]
    pub d_nm: Option<f64>,
    #[serde(default)]
    pub normalize: bool,
}

/// Map normalization state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    Raw,
    Peak,
}

/// Evaluated sweep: both grids plus row-major values
/// (`values[i1 * axis2.count + i2]`).
#[derive(Debug, Clone)]
pub struct LimitMap {
    pub axis1: AxisSpec,
    pub axis2: AxisSpec,
    pub axis1_grid: Vec<f64>,
    pub axis2_grid: Vec<f64>,
    pub values: Vec<f64>,
    pub normalization: Normalization,
    /// Pre-normalization maximum when peak-normalized.
    pub peak: Option<f64>,
}

impl LimitMap {
    pub fn value(&self, i1: usize, i2: usize) -> f64 {
        self.values[i1 * self.axis2_grid.len() + i2]
    }
}

/// Resolved per-cell inputs.
struct CellParams {
    kin: ElectronKinematics,
    omega0: f64,
    d: f64,
}

impl SweepSpec {
    fn validate(&self) -> Result<()> {
        self.axis1.validate()?;
        self.axis2.validate()?;
        if self.axis1.variable == self.axis2.variable {
            return Err(Error::Config(format!(
                "both axes sweep {}",
                self.axis1.variable.label()
            )));
        }
        let cells = self.axis1.count.saturating_mul(self.axis2.count);
        if cells > 16_000_000 {
            return Err(Error::Config(format!(
                "sweep of {cells} cells exceeds the 16M-cell limit"
            )));
        }
        if !(self.tau >= 0.0) {
            return Err(Error::Config(format!("tau must be ≥ 0, got {}", self.tau)));
        }
        if !(self.l_um > 0.0) {
            return Err(Error::Config(format!(
                "interaction length must be > 0, got {} μm",
                self.l_um
            )));
        }
        match self.kind {
            LimitKind::Line => {
                if self.q_c_per_nm.is_none() {
                    return Err(Error::Config(
                        "line sweeps require q_C_per_nm (lineal charge)".into(),
                    ));
                }
                if self.psi.is_some() {
                    return Err(Error::Config(
                        "psi is not used by the line limit; remove it".into(),
                    ));
                }
            }
            LimitKind::Point => {
                if self.psi.is_none() {
                    return Err(Error::Config(
                        "point sweeps require psi (opening angle)".into(),
                    ));
                }
                if self.q_c_per_nm.is_some() {
                    return Err(Error::Config(
                        "q_C_per_nm is not used by the point limit; remove it".into(),
                    ));
                }
            }
        }

        // Each physical input must come from exactly one source.
        let axes = [self.axis1.variable, self.axis2.variable];
        let electron_axes = axes.iter().filter(|v| v.is_electron()).count();
        let electron_fixed = usize::from(self.beta.is_some()) + usize::from(self.ke_ev.is_some());
        if electron_axes + electron_fixed != 1 {
            return Err(Error::Config(
                "specify the electron exactly once (beta or ke_eV, as an axis or fixed)".into(),
            ));
        }
        let photon_axes = axes
            .iter()
            .filter(|v| **v == SweepVariable::PhotonEnergyEv)
            .count();
        if photon_axes + usize::from(self.photon_ev.is_some()) != 1 {
            return Err(Error::Config(
                "specify photon_eV exactly once (axis or fixed)".into(),
            ));
        }
        let d_axes = axes
            .iter()
            .filter(|v| **v == SweepVariable::SeparationNm)
            .count();
        if d_axes + usize::from(self.d_nm.is_some()) != 1 {
            return Err(Error::Config(
                "specify d_nm exactly once (axis or fixed)".into(),
            ));
        }
        Ok(())
    }

    /// Combine fixed parameters with the two axis values for one cell.
    fn cell_params(&self, a1: f64, a2: f64) -> Result<CellParams> {
        let mut beta = self.beta;
        let mut ke_ev = self.ke_ev;
        let mut photon_ev = self.photon_ev;
        let mut d_nm = self.d_nm;
        for (var, val) in [(self.axis1.variable, a1), (self.axis2.variable, a2)] {
            match var {
                SweepVariable::Beta => beta = Some(val),
                SweepVariable::KineticEnergyEv => ke_ev = Some(val),
                SweepVariable::PhotonEnergyEv => photon_ev = Some(val),
                SweepVariable::SeparationNm => d_nm = Some(val),
            }
        }
        let kin = match (beta, ke_ev) {
            (Some(b), None) => kinematics_from_beta(b)?,
            (None, Some(ke)) => kinematics_from_kinetic_energy(ke)?,
            _ => unreachable!("validated to exactly one electron source"),
        };
        Ok(CellParams {
            kin,
            omega0: ev_to_rad_per_s(photon_ev.expect("validated")),
            d: nm_to_m(d_nm.expect("validated")),
        })
    }
}

/// Evaluate the selected limit on the full grid; optionally peak-normalize.
pub fn sweep_limit_map(spec: &SweepSpec) -> Result<LimitMap> {
    spec.validate()?;
    let axis1_grid = spec.axis1.grid()?;
    let axis2_grid = spec.axis2.grid()?;
    let (n1, n2) = (axis1_grid.len(), axis2_grid.len());
    let l = um_to_m(spec.l_um);

    let mut values = try_fill(n1 * n2, |i| -> Result<f64> {
        let p = spec.cell_params(axis1_grid[i / n2], axis2_grid[i % n2])?;
        match spec.kind {
            LimitKind::Line => gq2_limit_line(&LimitQuery2D {
                q_lineal: spec.q_c_per_nm.expect("validated") * 1e9, // C/nm → C/m
                l,
                tau: spec.tau,
                omega0: p.omega0,
                kin: p.kin,
                d: p.d,
            }),
            LimitKind::Point => gq2_limit_point(&LimitQuery3D {
                tau: spec.tau,
                psi: spec.psi.expect("validated"),
                l,
                omega0: p.omega0,
                kin: p.kin,
                d: p.d,
            }),
        }
    })?;

    let mut normalization = Normalization::Raw;
    let mut peak = None;
    if spec.normalize {
        let max = values.iter().copied().fold(0.0f64, f64::max);
        if !(max > 0.0) || !max.is_finite() {
            return Err(Error::NumericalFailure(format!(
                "cannot peak-normalize a map whose maximum is {max}"
            )));
        }
        for v in &mut values {
            *v /= max;
        }
        normalization = Normalization::Peak;
        peak = Some(max);
    }

    Ok(LimitMap {
        axis1: spec.axis1,
        axis2: spec.axis2,
        axis1_grid,
        axis2_grid,
        values,
        normalization,
        peak,
    })
}
