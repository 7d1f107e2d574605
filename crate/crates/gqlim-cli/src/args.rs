//! Command-line surface. Flags override the matching config-file values;
//! energies are in eV, lengths in nm or μm as the flag name says, angles
//! in radians.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "gqlim",
    version,
    about = "Upper limits on free-electron–photon coupling, with energy-loss \
             validation and photon statistics",
    max_term_width = 100
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single coupling limit |g_Q|².
    Limit(LimitArgs),
    /// Evaluate a limit map over a two-axis grid and write CSV + sidecar.
    Sweep(SweepArgs),
    /// Energy-selection pairings: spectral cutoff (line) or the optimal
    /// electron/photon partner (point), optionally swept over separation.
    Optimal(OptimalArgs),
    /// Quasistatic loss spectrum above a half-space, window-integrated
    /// into |g_Q|² and compared against the matching limit.
    Eels(EelsArgs),
    /// Spontaneous scattering photon statistics on a truncated space.
    Scatter(ScatterArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Line,
    Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnclosureArg {
    /// Scatterer fills a half-space next to the beam.
    #[value(name = "half-space")]
    HalfSpace,
    /// Scatterer surrounds the beam concentrically.
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    #[value(name = "line-halfspace")]
    LineHalfspace,
    #[value(name = "point-halfspace")]
    PointHalfspace,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    /// Limit kind: line (per-length 2D convention) or point.
    #[arg(long, value_enum)]
    pub kind: KindArg,

    /// Electron speed β = v/c. Exactly one of --beta/--ke-eV.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Electron kinetic energy (eV). Exactly one of --beta/--ke-eV.
    #[arg(long = "ke-eV")]
    pub ke_ev: Option<f64>,

    /// Photon energy ħω₀ (eV).
    #[arg(long = "photon-eV")]
    pub photon_ev: f64,
    /// Beam–structure separation (nm).
    #[arg(long = "d-nm")]
    pub d_nm: f64,
    /// Interaction length (μm).
    #[arg(long = "L-um")]
    pub l_um: f64,

    /// Material response factor τ directly. Exactly one of --tau/--material.
    #[arg(long)]
    pub tau: Option<f64>,
    /// Path to a material JSON file; τ is derived from its static
    /// permittivity and the enclosure geometry.
    #[arg(long, requires = "enclosure")]
    pub material: Option<PathBuf>,
    /// Enclosure geometry used to derive τ from a material.
    #[arg(long, value_enum)]
    pub enclosure: Option<EnclosureArg>,
    /// Ambient (beam-side) static permittivity ε₁ used with --material.
    #[arg(long = "ambient-eps", default_value_t = 1.0)]
    pub ambient_eps: f64,

    /// Azimuthal opening angle ψ (rad) of the enclosing sector
    /// (point kind only).
    #[arg(long)]
    pub psi: Option<f64>,
    /// Lineal charge (C per nm of transverse length; line kind only).
    #[arg(long = "q-C-per-nm")]
    pub q_c_per_nm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Sweep config JSON (axes, kind, fixed parameters).
    #[arg(long)]
    pub config: PathBuf,
    /// Output prefix: writes <out>.csv and <out>.json.
    #[arg(long)]
    pub out: Option<String>,
    /// Peak-normalize the map to [0, 1].
    #[arg(long)]
    pub normalize: bool,

    // Scalar overrides applied on top of the config.
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long = "L-um")]
    pub l_um: Option<f64>,
    #[arg(long)]
    pub psi: Option<f64>,
    #[arg(long = "q-C-per-nm")]
    pub q_c_per_nm: Option<f64>,
    #[arg(long = "photon-eV")]
    pub photon_ev: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long = "ke-eV")]
    pub ke_ev: Option<f64>,
    #[arg(long = "d-nm")]
    pub d_nm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OptimalArgs {
    /// Optional config JSON supplying any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// line: spectral cutoff κd = 1/2; point: optimum κd ≈ 0.4064.
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,

    /// Given photon energy (eV) → reports the partner electron.
    #[arg(long = "photon-eV")]
    pub photon_ev: Option<f64>,
    /// Given electron speed → reports the partner photon energy.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Given electron kinetic energy (eV) → reports the partner photon.
    #[arg(long = "ke-eV")]
    pub ke_ev: Option<f64>,

    /// Separation (nm) for a single pairing.
    #[arg(long = "d-nm")]
    pub d_nm: Option<f64>,

    /// Sweep mode: log-spaced separations from --d-min-nm to --d-max-nm.
    #[arg(long = "d-min-nm", requires_all = ["d_max_nm", "d_count"])]
    pub d_min_nm: Option<f64>,
    #[arg(long = "d-max-nm", requires_all = ["d_min_nm", "d_count"])]
    pub d_max_nm: Option<f64>,
    #[arg(long = "d-count", requires_all = ["d_min_nm", "d_max_nm"])]
    pub d_count: Option<usize>,

    /// Output prefix for sweep mode: writes <out>.csv and <out>.json.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct EelsArgs {
    /// Optional config JSON supplying any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Beam model and scatterer layout.
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryArg>,
    /// Path to a material JSON file (overrides the config's material).
    #[arg(long)]
    pub material: Option<PathBuf>,

    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long = "ke-eV")]
    pub ke_ev: Option<f64>,
    #[arg(long = "d-nm")]
    pub d_nm: Option<f64>,
    #[arg(long = "L-um")]
    pub l_um: Option<f64>,
    /// Lineal charge (C per nm; line geometry only).
    #[arg(long = "q-C-per-nm")]
    pub q_c_per_nm: Option<f64>,

    /// Frequency grid (linear in photon energy).
    #[arg(long = "grid-min-eV")]
    pub grid_min_ev: Option<f64>,
    #[arg(long = "grid-max-eV")]
    pub grid_max_ev: Option<f64>,
    #[arg(long = "grid-count")]
    pub grid_count: Option<usize>,

    /// Integration window center (eV); default: the phase-matched
    /// surface-plasmon frequency of a Drude material.
    #[arg(long = "window-center-eV")]
    pub window_center_ev: Option<f64>,
    /// Integration window half-width (eV); default: the Drude damping γ_m.
    #[arg(long = "window-half-width-eV")]
    pub window_half_width_ev: Option<f64>,

    /// Output prefix: writes <out>.csv and <out>.json.
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    /// Vacuum coupling |g_Q| (real; statistics depend only on the modulus).
    #[arg(long)]
    pub gq: f64,
    /// Electron ladder window half-size K.
    #[arg(long = "k-max", default_value_t = 60)]
    pub k_max: usize,
    /// Photon-number cutoff N.
    #[arg(long = "n-max", default_value_t = 60)]
    pub n_max: usize,
    /// Largest acceptable truncation leak.
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Output prefix: writes <out>.csv and <out>.json.
    #[arg(long, default_value = "scatter")]
    pub out: String,
}
