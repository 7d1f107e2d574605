//! Subcommand implementations: resolve flags + config into library queries,
//! print `key = value` reports, and write CSV/JSON artifacts.
//!
//! Floats are printed with Rust's shortest round-trip formatting, matching
//! the CSV writers, so a value quoted from stdout equals the corresponding
//! CSV cell byte for byte.

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use gqlim::constants::{C, ev_to_rad_per_s, nm_to_m, rad_per_s_to_ev, um_to_m};
use gqlim::kinematics::{
    ElectronKinematics, kinematics_from_beta, kinematics_from_beta_gamma,
    kinematics_from_kinetic_energy,
};
use gqlim::materials::{
    MaterialModel, StaticPermittivity, static_permittivity, tau_concentric_cylinder, tau_half_space,
};
use gqlim::output::{
    write_distribution_csv, write_json_sidecar, write_map_csv, write_spectrum_csv,
};
use gqlim::sweep::{AxisScale, AxisSpec, Normalization, SweepSpec, SweepVariable, sweep_limit_map};
use gqlim::{
    Error, FrequencyGrid, LimitQuery2D, LimitQuery3D, OptimalGiven, OptimalPartner, Result,
    ScatterConfig, SpectralWindow, default_drude_window, evolve_spontaneous, gq2_limit_line,
    gq2_limit_point, integrate_gq2, line_cutoff_frequency, loss_spectrum_line_halfspace,
    loss_spectrum_point_halfspace, optimal_kappa_d, optimal_pair, photon_distribution,
    tv_to_poisson,
};

use crate::args::{
    EelsArgs, EnclosureArg, GeometryArg, KindArg, LimitArgs, OptimalArgs, ScatterArgs, SweepArgs,
};
use crate::config::{self, EelsConfig, OptimalConfig};

fn kind_str(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Line => "line",
        KindArg::Point => "point",
    }
}

fn geometry_str(geometry: GeometryArg) -> &'static str {
    match geometry {
        GeometryArg::LineHalfspace => "line-halfspace",
        GeometryArg::PointHalfspace => "point-halfspace",
    }
}

/// Exactly one electron description: β or kinetic energy.
fn resolve_kinematics(beta: Option<f64>, ke_ev: Option<f64>) -> Result<ElectronKinematics> {
    match (beta, ke_ev) {
        (Some(b), None) => kinematics_from_beta(b),
        (None, Some(ke)) => kinematics_from_kinetic_energy(ke),
        (Some(_), Some(_)) => Err(Error::Config(
            "specify the electron once: either --beta or --ke-eV, not both".into(),
        )),
        (None, None) => Err(Error::Config(
            "an electron is required: pass --beta or --ke-eV".into(),
        )),
    }
}

/// Exactly one material response: τ directly, or a material file plus the
/// enclosure geometry it fills (half-space or concentric cylinder).
fn resolve_tau(
    tau: Option<f64>,
    material: Option<&Path>,
    enclosure: Option<EnclosureArg>,
    ambient_eps: f64,
) -> Result<f64> {
    match (tau, material) {
        (Some(t), None) => Ok(t),
        (None, Some(path)) => {
            let model = config::load_material(path)?;
            let ambient = StaticPermittivity::Finite(ambient_eps);
            let scatterer = static_permittivity(&model);
            match enclosure.expect("clap enforces --enclosure with --material") {
                EnclosureArg::HalfSpace => tau_half_space(ambient, scatterer),
                EnclosureArg::Cylinder => tau_concentric_cylinder(ambient, scatterer),
            }
        }
        (Some(_), Some(_)) => Err(Error::Config(
            "specify the material response once: either --tau or --material, not both".into(),
        )),
        (None, None) => Err(Error::Config(
            "a material response is required: pass --tau, or --material with --enclosure".into(),
        )),
    }
}

/// CSV/sidecar paths derived from an output prefix.
struct OutPaths {
    csv: PathBuf,
    sidecar: PathBuf,
}

impl OutPaths {
    fn new(prefix: &str) -> Self {
        OutPaths {
            csv: PathBuf::from(format!("{prefix}.csv")),
            sidecar: PathBuf::from(format!("{prefix}.json")),
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn cmd_limit(args: LimitArgs) -> Result<()> {
    let kin = resolve_kinematics(args.beta, args.ke_ev)?;
    let tau = resolve_tau(
        args.tau,
        args.material.as_deref(),
        args.enclosure,
        args.ambient_eps,
    )?;
    let omega0 = ev_to_rad_per_s(args.photon_ev);
    let d = nm_to_m(args.d_nm);
    let l = um_to_m(args.l_um);

    let gq2 = match args.kind {
        KindArg::Point => {
            let psi = args.psi.ok_or_else(|| {
                Error::Config("the point limit requires --psi (opening angle in rad)".into())
            })?;
            if args.q_c_per_nm.is_some() {
                return Err(Error::Config(
                    "--q-C-per-nm applies to the line limit only; remove it".into(),
                ));
            }
            gq2_limit_point(&LimitQuery3D {
                tau,
                psi,
                l,
                omega0,
                kin,
                d,
            })?
        }
        KindArg::Line => {
            let q = args.q_c_per_nm.ok_or_else(|| {
                Error::Config("the line limit requires --q-C-per-nm (lineal charge)".into())
            })?;
            if args.psi.is_some() {
                return Err(Error::Config(
                    "--psi applies to the point limit only; remove it".into(),
                ));
            }
            gq2_limit_line(&LimitQuery2D {
                q_lineal: q * 1e9, // C/nm → C/m
                l,
                tau,
                omega0,
                kin,
                d,
            })?
        }
    };

    println!("kind = {}", kind_str(args.kind));
    println!("beta = {}", kin.beta);
    println!("ke_eV = {}", kin.kinetic_energy_ev);
    println!("photon_eV = {}", args.photon_ev);
    println!("d_nm = {}", args.d_nm);
    println!("L_um = {}", args.l_um);
    match args.kind {
        KindArg::Point => println!("psi = {}", args.psi.expect("checked above")),
        KindArg::Line => println!("q_C_per_nm = {}", args.q_c_per_nm.expect("checked above")),
    }
    if let Some(path) = &args.material {
        println!("material = {}", path.display());
        println!("ambient_eps = {}", args.ambient_eps);
    }
    println!("tau = {tau}");
    println!("gq2 = {gq2}");
    println!("gq = {}", gq2.sqrt());
    Ok(())
}

#[derive(Serialize)]
struct SweepSidecar<'a> {
    command: &'static str,
    config: &'a SweepSpec,
    normalization: Normalization,
    #[serde(skip_serializing_if = "Option::is_none")]
    peak: Option<f64>,
    csv: String,
}

pub fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let mut spec: SweepSpec = config::load(&args.config)?;
    if let Some(v) = args.tau {
        spec.tau = v;
    }
    if let Some(v) = args.l_um {
        spec.l_um = v;
    }
    if let Some(v) = args.psi {
        spec.psi = Some(v);
    }
    if let Some(v) = args.q_c_per_nm {
        spec.q_c_per_nm = Some(v);
    }
    if let Some(v) = args.photon_ev {
        spec.photon_ev = Some(v);
    }
    // An electron flag replaces the config's fixed electron as a group, so
    // --beta cleanly overrides a config that pinned ke_eV (and vice versa).
    match (args.beta, args.ke_ev) {
        (None, None) => {}
        (beta, ke_ev) => {
            spec.beta = beta;
            spec.ke_ev = ke_ev;
        }
    }
    if let Some(v) = args.d_nm {
        spec.d_nm = Some(v);
    }
    if args.normalize {
        spec.normalize = true;
    }

    let prefix = match &args.out {
        Some(o) => o.clone(),
        None => args
            .config
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .filter(|s| !s.is_empty())
            .ok_or_else(|| {
                Error::Config(
                    "cannot derive an output prefix from the config path; pass --out".into(),
                )
            })?,
    };
    let paths = OutPaths::new(&prefix);
    // The sidecar shares the config's `.json` extension; refuse to clobber it.
    if let (Ok(a), Ok(b)) = (
        std::path::absolute(&paths.sidecar),
        std::path::absolute(&args.config),
    ) && a == b
    {
        return Err(Error::Config(format!(
            "sidecar {} would overwrite the config file; pass a different --out",
            paths.sidecar.display()
        )));
    }

    let map = sweep_limit_map(&spec)?;
    write_map_csv(create(&paths.csv)?, &map)?;
    write_json_sidecar(
        create(&paths.sidecar)?,
        &SweepSidecar {
            command: "sweep",
            config: &spec,
            normalization: map.normalization,
            peak: map.peak,
            csv: paths.csv.display().to_string(),
        },
    )?;

    println!(
        "kind = {}",
        kind_str(match spec.kind {
            gqlim::sweep::LimitKind::Line => KindArg::Line,
            gqlim::sweep::LimitKind::Point => KindArg::Point,
        })
    );
    println!("rows = {}", map.axis1_grid.len());
    println!("cols = {}", map.axis2_grid.len());
    match map.normalization {
        Normalization::Raw => println!("normalization = raw"),
        Normalization::Peak => {
            println!("normalization = peak");
            println!("peak = {}", map.peak.expect("set when normalized"));
        }
    }
    println!("csv = {}", paths.csv.display());
    println!("sidecar = {}", paths.sidecar.display());
    Ok(())
}

/// The known side of an optimal/cutoff pairing.
enum Given {
    PhotonEv(f64),
    Electron(ElectronKinematics),
}

/// The solved side.
enum Partner {
    Electron(ElectronKinematics),
    PhotonEv(f64),
}

/// Solve the pairing at one separation: κd = x* for the point limit's
/// optimum, κd = 1/2 for the line limit's cutoff.
fn partner_at(kind: KindArg, d: f64, given: &Given) -> Result<Partner> {
    match kind {
        KindArg::Point => {
            let lib_given = match given {
                Given::PhotonEv(ev) => OptimalGiven::PhotonEnergyEv(*ev),
                Given::Electron(kin) => OptimalGiven::Electron(*kin),
            };
            Ok(match optimal_pair(d, lib_given)? {
                OptimalPartner::Electron(kin) => Partner::Electron(kin),
                OptimalPartner::PhotonEnergyEv(ev) => Partner::PhotonEv(ev),
            })
        }
        KindArg::Line => match given {
            Given::Electron(kin) => Ok(Partner::PhotonEv(rad_per_s_to_ev(line_cutoff_frequency(
                kin, d,
            )?))),
            Given::PhotonEv(ev) => {
                if *ev <= 0.0 || !ev.is_finite() {
                    return Err(Error::Domain(format!(
                        "photon energy must be positive, got {ev} eV"
                    )));
                }
                // κd = ωd/(c·βγ) = 1/2 ⇒ βγ = 2ωd/c.
                let beta_gamma = 2.0 * ev_to_rad_per_s(*ev) * d / C;
                Ok(Partner::Electron(kinematics_from_beta_gamma(beta_gamma)?))
            }
        },
    }
}

#[derive(Serialize)]
struct OptimalSidecar {
    command: &'static str,
    kind: &'static str,
    kappa_d: f64,
    #[serde(rename = "photon_eV", skip_serializing_if = "Option::is_none")]
    photon_ev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta: Option<f64>,
    #[serde(rename = "ke_eV", skip_serializing_if = "Option::is_none")]
    ke_ev: Option<f64>,
    d_min_nm: f64,
    d_max_nm: f64,
    d_count: usize,
    csv: String,
}

pub fn cmd_optimal(args: OptimalArgs) -> Result<()> {
    let cfg: OptimalConfig = match &args.config {
        Some(path) => config::load(path)?,
        None => OptimalConfig::default(),
    };
    config::check_command_tag(&cfg.command, "optimal")?;

    let kind = match args.kind {
        Some(k) => k,
        None => match cfg.kind.as_deref() {
            Some("line") => KindArg::Line,
            Some("point") => KindArg::Point,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown kind `{other}` (expected line or point)"
                )));
            }
            None => {
                return Err(Error::Config(
                    "a kind is required: pass --kind line|point".into(),
                ));
            }
        },
    };
    // The given side is overridden as a group, so a photon flag replaces a
    // config electron outright.
    let (photon_ev, beta, ke_ev) =
        if args.photon_ev.is_some() || args.beta.is_some() || args.ke_ev.is_some() {
            (args.photon_ev, args.beta, args.ke_ev)
        } else {
            (cfg.photon_ev, cfg.beta, cfg.ke_ev)
        };
    let given = match (photon_ev, beta, ke_ev) {
        (Some(ev), None, None) => Given::PhotonEv(ev),
        (None, b, k) if b.is_some() || k.is_some() => Given::Electron(resolve_kinematics(b, k)?),
        (None, None, None) => {
            return Err(Error::Config(
                "specify the given side of the pairing: --photon-eV, or --beta/--ke-eV".into(),
            ));
        }
        _ => {
            return Err(Error::Config(
                "specify exactly one given side: --photon-eV or an electron, not both".into(),
            ));
        }
    };

    let d_nm = args.d_nm.or(cfg.d_nm);
    let d_min_nm = args.d_min_nm.or(cfg.d_min_nm);
    let d_max_nm = args.d_max_nm.or(cfg.d_max_nm);
    let d_count = args.d_count.or(cfg.d_count);
    let sweep_fields = [d_min_nm.is_some(), d_max_nm.is_some(), d_count.is_some()];
    let sweeping = sweep_fields.iter().any(|&s| s);
    if sweeping && !sweep_fields.iter().all(|&s| s) {
        return Err(Error::Config(
            "d-sweep mode requires all of --d-min-nm, --d-max-nm, --d-count".into(),
        ));
    }
    if sweeping && d_nm.is_some() {
        return Err(Error::Config(
            "pass either --d-nm (single pairing) or the d-sweep range, not both".into(),
        ));
    }

    let kappa_d = match kind {
        KindArg::Point => optimal_kappa_d()?,
        KindArg::Line => 0.5,
    };
    println!("kind = {}", kind_str(kind));
    println!("kappa_d = {kappa_d}");
    match &given {
        Given::PhotonEv(ev) => println!("photon_eV = {ev}"),
        Given::Electron(kin) => {
            println!("beta = {}", kin.beta);
            println!("ke_eV = {}", kin.kinetic_energy_ev);
        }
    }

    if !sweeping {
        let d_nm = d_nm.ok_or_else(|| {
            Error::Config("a separation is required: pass --d-nm (or a d-sweep range)".into())
        })?;
        println!("d_nm = {d_nm}");
        match partner_at(kind, nm_to_m(d_nm), &given)? {
            Partner::Electron(kin) => {
                println!("beta = {}", kin.beta);
                println!("beta_gamma = {}", kin.beta_gamma);
                println!("ke_eV = {}", kin.kinetic_energy_ev);
            }
            Partner::PhotonEv(ev) => match kind {
                KindArg::Line => println!("cutoff_photon_eV = {ev}"),
                KindArg::Point => println!("photon_eV = {ev}"),
            },
        }
        return Ok(());
    }

    let axis = AxisSpec {
        variable: SweepVariable::SeparationNm,
        min: d_min_nm.expect("checked above"),
        max: d_max_nm.expect("checked above"),
        count: d_count.expect("checked above"),
        scale: AxisScale::Log,
    };
    let grid = axis.grid()?;
    let prefix = args
        .out
        .clone()
        .or(cfg.out)
        .unwrap_or_else(|| "optimal".into());
    let paths = OutPaths::new(&prefix);

    let partner_label = match given {
        Given::PhotonEv(_) => "ke_eV",
        Given::Electron(_) => "photon_eV",
    };
    let mut csv = create(&paths.csv)?;
    {
        use std::io::Write;
        writeln!(csv, "d_nm,{partner_label}")?;
        for &d_nm in &grid {
            let value = match partner_at(kind, nm_to_m(d_nm), &given)? {
                Partner::Electron(kin) => kin.kinetic_energy_ev,
                Partner::PhotonEv(ev) => ev,
            };
            writeln!(csv, "{d_nm},{value}")?;
        }
    }
    let (side_photon, side_beta, side_ke) = match &given {
        Given::PhotonEv(ev) => (Some(*ev), None, None),
        Given::Electron(kin) => (None, Some(kin.beta), Some(kin.kinetic_energy_ev)),
    };
    write_json_sidecar(
        create(&paths.sidecar)?,
        &OptimalSidecar {
            command: "optimal",
            kind: kind_str(kind),
            kappa_d,
            photon_ev: side_photon,
            beta: side_beta,
            ke_ev: side_ke,
            d_min_nm: axis.min,
            d_max_nm: axis.max,
            d_count: axis.count,
            csv: paths.csv.display().to_string(),
        },
    )?;
    println!("points = {}", grid.len());
    println!("csv = {}", paths.csv.display());
    println!("sidecar = {}", paths.sidecar.display());
    Ok(())
}

#[derive(Serialize)]
struct GridEcho {
    #[serde(rename = "min_eV")]
    min_ev: f64,
    #[serde(rename = "max_eV")]
    max_ev: f64,
    count: usize,
}

#[derive(Serialize)]
struct WindowEcho {
    #[serde(rename = "center_eV")]
    center_ev: f64,
    #[serde(rename = "half_width_eV")]
    half_width_ev: f64,
    source: &'static str,
}

#[derive(Serialize)]
struct EelsSidecar {
    command: &'static str,
    geometry: &'static str,
    material: MaterialModel,
    beta: f64,
    #[serde(rename = "ke_eV")]
    ke_ev: f64,
    d_nm: f64,
    #[serde(rename = "L_um")]
    l_um: f64,
    #[serde(rename = "q_C_per_nm", skip_serializing_if = "Option::is_none")]
    q_c_per_nm: Option<f64>,
    grid: GridEcho,
    window: WindowEcho,
    tau: f64,
    gq2_integrated: f64,
    gq2_limit: f64,
    ratio: f64,
    csv: String,
}

pub fn cmd_eels(args: EelsArgs) -> Result<()> {
    let cfg: EelsConfig = match &args.config {
        Some(path) => config::load(path)?,
        None => EelsConfig::default(),
    };
    config::check_command_tag(&cfg.command, "eels")?;

    let geometry = match args.geometry {
        Some(g) => g,
        None => match cfg.geometry.as_deref() {
            Some("line-halfspace") => GeometryArg::LineHalfspace,
            Some("point-halfspace") => GeometryArg::PointHalfspace,
            Some(other) => {
                return Err(Error::Config(format!(
                    "unknown geometry `{other}` (expected line-halfspace or point-halfspace)"
                )));
            }
            None => {
                return Err(Error::Config(
                    "a geometry is required: pass --geometry line-halfspace|point-halfspace".into(),
                ));
            }
        },
    };
    let material = match &args.material {
        Some(path) => config::load_material(path)?,
        None => cfg.material.ok_or_else(|| {
            Error::Config("a material is required: pass --material or set it in the config".into())
        })?,
    };
    let (beta, ke_ev) = match (args.beta, args.ke_ev) {
        (None, None) => (cfg.beta, cfg.ke_ev),
        (b, k) => (b, k),
    };
    let kin = resolve_kinematics(beta, ke_ev)?;
    let d_nm = args
        .d_nm
        .or(cfg.d_nm)
        .ok_or_else(|| Error::Config("a separation is required: pass --d-nm".into()))?;
    let l_um = args
        .l_um
        .or(cfg.l_um)
        .ok_or_else(|| Error::Config("an interaction length is required: pass --L-um".into()))?;
    let q_c_per_nm = args.q_c_per_nm.or(cfg.q_c_per_nm);

    let (cfg_gmin, cfg_gmax, cfg_gcount) = cfg
        .grid
        .as_ref()
        .map(|g| (g.min_ev, g.max_ev, g.count))
        .unwrap_or((None, None, None));
    let grid = FrequencyGrid {
        min_ev: args.grid_min_ev.or(cfg_gmin).unwrap_or(1.0),
        max_ev: args.grid_max_ev.or(cfg_gmax).unwrap_or(12.0),
        count: args.grid_count.or(cfg_gcount).unwrap_or(16_001),
    };

    let (cfg_wc, cfg_wh) = cfg
        .window
        .as_ref()
        .map(|w| (w.center_ev, w.half_width_ev))
        .unwrap_or((None, None));
    let (window, window_source) = match (
        args.window_center_ev.or(cfg_wc),
        args.window_half_width_ev.or(cfg_wh),
    ) {
        (Some(c), Some(h)) => (
            SpectralWindow {
                center: ev_to_rad_per_s(c),
                half_width: ev_to_rad_per_s(h),
            },
            "explicit",
        ),
        (None, None) => (default_drude_window(&material, &kin)?, "default-spp"),
        _ => {
            return Err(Error::Config(
                "an explicit window needs both --window-center-eV and --window-half-width-eV"
                    .into(),
            ));
        }
    };
    window.validate()?;

    let d = nm_to_m(d_nm);
    let l = um_to_m(l_um);
    // The matching limit uses the half-space response factor in vacuum and,
    // for the point beam, the ψ = π half-space sector.
    let tau = tau_half_space(
        StaticPermittivity::Finite(1.0),
        static_permittivity(&material),
    )?;
    let (spectrum, limit) = match geometry {
        GeometryArg::LineHalfspace => {
            let q = q_c_per_nm.ok_or_else(|| {
                Error::Config("the line geometry requires --q-C-per-nm (lineal charge)".into())
            })?;
            let q_lineal = q * 1e9; // C/nm → C/m
            let spectrum = loss_spectrum_line_halfspace(q_lineal, &material, &kin, d, l, &grid)?;
            let limit = gq2_limit_line(&LimitQuery2D {
                q_lineal,
                l,
                tau,
                omega0: window.center,
                kin,
                d,
            })?;
            (spectrum, limit)
        }
        GeometryArg::PointHalfspace => {
            if q_c_per_nm.is_some() {
                return Err(Error::Config(
                    "--q-C-per-nm applies to the line geometry only; remove it".into(),
                ));
            }
            let spectrum = loss_spectrum_point_halfspace(&material, &kin, d, l, &grid)?;
            let limit = gq2_limit_point(&LimitQuery3D {
                tau,
                psi: std::f64::consts::PI,
                l,
                omega0: window.center,
                kin,
                d,
            })?;
            (spectrum, limit)
        }
    };
    let gq2 = integrate_gq2(&spectrum, &window)?;
    let ratio = gq2 / limit;

    let prefix = args
        .out
        .clone()
        .or(cfg.out)
        .unwrap_or_else(|| "eels".into());
    let paths = OutPaths::new(&prefix);
    write_spectrum_csv(create(&paths.csv)?, &spectrum)?;
    write_json_sidecar(
        create(&paths.sidecar)?,
        &EelsSidecar {
            command: "eels",
            geometry: geometry_str(geometry),
            material,
            beta: kin.beta,
            ke_ev: kin.kinetic_energy_ev,
            d_nm,
            l_um,
            q_c_per_nm,
            grid: GridEcho {
                min_ev: grid.min_ev,
                max_ev: grid.max_ev,
                count: grid.count,
            },
            window: WindowEcho {
                center_ev: rad_per_s_to_ev(window.center),
                half_width_ev: rad_per_s_to_ev(window.half_width),
                source: window_source,
            },
            tau,
            gq2_integrated: gq2,
            gq2_limit: limit,
            ratio,
            csv: paths.csv.display().to_string(),
        },
    )?;

    println!("geometry = {}", geometry_str(geometry));
    println!("beta = {}", kin.beta);
    println!("d_nm = {d_nm}");
    println!("L_um = {l_um}");
    println!("tau = {tau}");
    println!("window_center_eV = {}", rad_per_s_to_ev(window.center));
    println!(
        "window_half_width_eV = {}",
        rad_per_s_to_ev(window.half_width)
    );
    println!("window_source = {window_source}");
    println!("gq2_integrated = {gq2}");
    println!("gq2_limit = {limit}");
    println!("ratio = {ratio}");
    println!("csv = {}", paths.csv.display());
    println!("sidecar = {}", paths.sidecar.display());
    Ok(())
}

#[derive(Serialize)]
struct ScatterSidecar {
    command: &'static str,
    gq: f64,
    k_max: usize,
    n_max: usize,
    tolerance: f64,
    mean: f64,
    variance: f64,
    tv_poisson: f64,
    leak: f64,
    norm_drift: f64,
    csv: String,
}

pub fn cmd_scatter(args: ScatterArgs) -> Result<()> {
    if args.gq < 0.0 || !args.gq.is_finite() {
        return Err(Error::Config(format!(
            "--gq must be a finite non-negative coupling modulus, got {}",
            args.gq
        )));
    }
    let cfg = ScatterConfig {
        g_q: Complex64::new(args.gq, 0.0),
        k_max: args.k_max,
        n_max: args.n_max,
        tolerance: args.tolerance,
    };
    let state = evolve_spontaneous(&cfg)?;
    let p = photon_distribution(&state);
    let mean: f64 = p.iter().enumerate().map(|(n, &pn)| n as f64 * pn).sum();
    let second: f64 = p
        .iter()
        .enumerate()
        .map(|(n, &pn)| (n * n) as f64 * pn)
        .sum();
    let variance = second - mean * mean;
    let tv_poisson = tv_to_poisson(&p, args.gq * args.gq);

    let paths = OutPaths::new(&args.out);
    write_distribution_csv(create(&paths.csv)?, &p)?;
    write_json_sidecar(
        create(&paths.sidecar)?,
        &ScatterSidecar {
            command: "scatter",
            gq: args.gq,
            k_max: args.k_max,
            n_max: args.n_max,
            tolerance: args.tolerance,
            mean,
            variance,
            tv_poisson,
            leak: state.leak,
            norm_drift: state.norm_drift,
            csv: paths.csv.display().to_string(),
        },
    )?;

    println!("gq = {}", args.gq);
    println!("k_max = {}", args.k_max);
    println!("n_max = {}", args.n_max);
    println!("mean = {mean}");
    println!("variance = {variance}");
    println!("tv_poisson = {tv_poisson}");
    println!("leak = {}", state.leak);
    println!("norm_drift = {}", state.norm_drift);
    println!("csv = {}", paths.csv.display());
    println!("sidecar = {}", paths.sidecar.display());
    Ok(())
}
