//! Config-file formats. Each subcommand that accepts `--config` has its own
//! strict schema: unknown keys are rejected so a typo cannot silently fall
//! back to a default. Command-line flags override config values field by
//! field.

use std::path::Path;

use gqlim::{Error, MaterialModel, Result};
use serde::Deserialize;

/// Reads and parses a JSON config file, tagging parse errors with the path.
pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("cannot parse {}: {e}", path.display())))
}

/// Reads a material description, either a bare model or wrapped as
/// `{"material": {...}}`.
pub fn load_material(path: &Path) -> Result<MaterialModel> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum MaterialFile {
        Wrapped { material: MaterialModel },
        Bare(MaterialModel),
    }
    let file: MaterialFile = load(path)?;
    Ok(match file {
        MaterialFile::Wrapped { material } => material,
        MaterialFile::Bare(model) => model,
    })
}

/// Checks an optional `command` tag inside a config file against the
/// subcommand it was passed to.
pub fn check_command_tag(tag: &Option<String>, expected: &str) -> Result<()> {
    if let Some(tag) = tag
        && tag != expected
    {
        return Err(Error::Config(format!(
            "config file is for `{tag}`, but it was passed to `{expected}`"
        )));
    }
    Ok(())
}

/// Config schema for `optimal`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimalConfig {
    pub command: Option<String>,
    pub kind: Option<String>,
    #[serde(rename = "photon_eV")]
    pub photon_ev: Option<f64>,
    pub beta: Option<f64>,
    #[serde(rename = "ke_eV")]
    pub ke_ev: Option<f64>,
    pub d_nm: Option<f64>,
    pub d_min_nm: Option<f64>,
    pub d_max_nm: Option<f64>,
    pub d_count: Option<usize>,
    pub out: Option<String>,
}

/// Frequency-grid block inside an `eels` config.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(rename = "min_eV")]
    pub min_ev: Option<f64>,
    #[serde(rename = "max_eV")]
    pub max_ev: Option<f64>,
    pub count: Option<usize>,
}

/// Integration-window block inside an `eels` config.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    #[serde(rename = "center_eV")]
    pub center_ev: Option<f64>,
    #[serde(rename = "half_width_eV")]
    pub half_width_ev: Option<f64>,
}

/// Config schema for `eels`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EelsConfig {
    pub command: Option<String>,
    pub geometry: Option<String>,
    pub material: Option<MaterialModel>,
    pub beta: Option<f64>,
    #[serde(rename = "ke_eV")]
    pub ke_ev: Option<f64>,
    pub d_nm: Option<f64>,
    #[serde(rename = "L_um")]
    pub l_um: Option<f64>,
    #[serde(rename = "q_C_per_nm")]
    pub q_c_per_nm: Option<f64>,
    pub grid: Option<GridConfig>,
    pub window: Option<WindowConfig>,
    pub out: Option<String>,
}
