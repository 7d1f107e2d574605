//! CSV and JSON-sidecar serialization for maps, spectra, and photon
//! statistics.
//!
//! Floating-point values are written with Rust's shortest round-trip
//! formatting, so outputs are bitwise reproducible across runs and thread
//! counts, and parsing the text back recovers the exact binary values.

use std::io::Write;

use serde::Serialize;

use crate::eels::LossSpectrum;
use crate::error::Result;
use crate::sweep::LimitMap;

/// Version stamp for all JSON sidecars written by this crate.
pub const SIDECAR_SCHEMA_VERSION: u32 = 1;

/// Crate version recorded in sidecars.
pub fn code_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Envelope adding the schema version and code version to a sidecar
/// payload. The payload must serialize to a JSON object.
#[derive(Serialize)]
pub struct Sidecar<T: Serialize> {
    pub schema_version: u32,
    pub code_version: &'static str,
    #[serde(flatten)]
    pub payload: T,
}

impl<T: Serialize> Sidecar<T> {
    pub fn new(payload: T) -> Self {
        Sidecar {
            schema_version: SIDECAR_SCHEMA_VERSION,
            code_version: code_version(),
            payload,
        }
    }
}

/// Write a sweep map as `axis1,axis2,gq2` rows (axis1 outer, axis2 inner).
pub fn write_map_csv<W: Write>(mut w: W, map: &LimitMap) -> Result<()> {
    writeln!(w, "axis1,axis2,gq2")?;
    for (i1, a1) in map.axis1_grid.iter().enumerate() {
        for (i2, a2) in map.axis2_grid.iter().enumerate() {
            writeln!(w, "{a1},{a2},{}", map.value(i1, i2))?;
        }
    }
    Ok(())
}

/// Write a loss spectrum as `omega_rad_s,photon_eV,gamma_per_rad_s` rows.
pub fn write_spectrum_csv<W: Write>(mut w: W, spectrum: &LossSpectrum) -> Result<()> {
    writeln!(w, "omega_rad_s,photon_eV,gamma_per_rad_s")?;
    for (omega, gamma) in spectrum.omega_grid.iter().zip(spectrum.gamma_values.iter()) {
        writeln!(
            w,
            "{omega},{},{gamma}",
            crate::constants::rad_per_s_to_ev(*omega)
        )?;
    }
    Ok(())
}

/// Write a photon-number distribution as `n,probability` rows.
pub fn write_distribution_csv<W: Write>(mut w: W, probabilities: &[f64]) -> Result<()> {
    writeln!(w, "n,probability")?;
    for (n, p) in probabilities.iter().enumerate() {
        writeln!(w, "{n},{p}")?;
    }
    Ok(())
}

/// Write a versioned JSON sidecar (pretty-printed, trailing newline).
pub fn write_json_sidecar<W: Write, T: Serialize>(mut w: W, payload: &T) -> Result<()> {
    let sidecar = Sidecar::new(payload);
    serde_json::to_writer_pretty(&mut w, &sidecar)
        .map_err(|e| crate::error::Error::Config(format!("sidecar serialization failed: {e}")))?;
    writeln!(w)?;
    Ok(())
}
