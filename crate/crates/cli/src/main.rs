//! `entgeo` — two-qubit entanglement geometry from the command line.

#![allow(clippy::needless_range_loop)]

mod output;
mod reproduce;
mod spec;

use std::fmt;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use entgeo::bell::{
    bell_max_violation, bell_operator, bell_singlet_value, chsh_max_violation, chsh_operator,
    chsh_singlet_value, violation_summary, BellSetting, ChshSetting,
};
use entgeo::distance::{distance, DistanceReport, SolverConfig};
use entgeo::geometry::{export_mesh, sample_regions, Region};
use entgeo::io::MatrixJson;
use entgeo::oracle::max_over_separable;
use entgeo::pauli::{to_pauli, PauliCoeffs2Q};
use entgeo::states::is_ppt;
use entgeo::witness::a_max;
use serde::{Deserialize, Serialize};

use output::{csv_num, emit, to_json_string};
use spec::StateSpec;

#[derive(Debug)]
pub enum CliError {
    /// Malformed input (exit 2).
    Parse(String),
    /// Input parsed but does not describe a valid state (exit 3).
    State(String),
    /// Solver failed to converge under --strict (exit 4).
    Convergence(String),
    /// Reproduction suite failures (exit 1).
    Reproduce(usize),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::State(m) => write!(f, "invalid state: {m}"),
            CliError::Convergence(m) => write!(f, "convergence failure: {m}"),
            CliError::Reproduce(n) => write!(f, "{n} reproduction claims failed"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Reproduce(_) => 1,
            CliError::Parse(_) => 2,
            CliError::State(_) => 3,
            CliError::Convergence(_) => 4,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "entgeo",
    version,
    about = "Two-qubit entanglement geometry: \
distance to the separable set, optimal witnesses, Bell inequalities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: GlobalOpts,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Root seed; all randomness derives from it.
    #[arg(long, global = true, default_value_t = 0x5EED)]
    seed: u64,
    /// Gap tolerance for the distance solver.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Oracle random restarts.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Solver iteration cap.
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Grid resolution for the brute-force oracle.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Trust the partial-transpose test as a separability fast path.
    #[arg(long, global = true)]
    trust_ppt: bool,
    /// Treat convergence failures as fatal.
    #[arg(long, global = true)]
    strict: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Include wall-clock timings in JSON output (breaks byte-for-byte
    /// reproducibility across runs).
    #[arg(long, global = true)]
    timings: bool,
    /// JSON config file mirroring the solver configuration.
    #[arg(long, global = true)]
    config: Option<String>,
}

impl GlobalOpts {
    fn solver_config(&self) -> Result<SolverConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Parse(format!("cannot read `{path}`: {e}")))?;
                serde_json::from_str::<SolverConfig>(&text)
                    .map_err(|e| CliError::Parse(format!("cannot parse `{path}`: {e}")))?
            }
            None => SolverConfig::default(),
        };
        cfg.oracle.seed = entgeo::sample::split_seed(self.seed, 1);
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        if let Some(r) = self.restarts {
            cfg.oracle.restarts = r;
        }
        if let Some(m) = self.max_iters {
            cfg.max_iters = m;
        }
        if let Some(g) = self.grid {
            cfg.oracle.grid_resolution = g;
        }
        cfg.trust_ppt = self.trust_ppt;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis: separability test, distance, optimal witness, violation.
    Analyze { state: String },
    /// Distance to the separable set with the minimizer decomposition.
    Distance { state: String },
    /// Optimal witness for a state: observable, bounds, residual.
    Witness { state: String },
    /// Bell-inequality operators and extremal settings.
    Bell {
        #[command(subcommand)]
        which: BellCommand,
    },
    /// The c-space tetrahedron / double-pyramid geometry.
    Geometry {
        #[command(subcommand)]
        which: GeometryCommand,
    },
    /// Sweep a one-parameter family and emit CSV rows.
    Sweep {
        /// Family: `werner` or `wc-ray`.
        #[arg(long)]
        family: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long)]
        steps: usize,
    },
    /// Recompute every closed-form anchor value and report pass/fail.
    Reproduce {
        /// Only run claims whose name contains this substring.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum BellCommand {
    /// The four-direction inequality (separable bound 2).
    Chsh {
        /// Planar angles in degrees for a, a', b, b' (vectors in the xz-plane).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        angles: Option<Vec<f64>>,
        /// Optimize the setting for the singlet (default when no angles given).
        #[arg(long)]
        optimize: bool,
    },
    /// The original three-direction inequality under anti-correlation.
    Original {
        /// Planar angles in degrees for a, b, b'.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        angles: Option<Vec<f64>>,
        #[arg(long)]
        optimize: bool,
    },
    /// Comparison table of the three inequalities.
    Summary,
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Classify a cubic grid of correlation vectors (CSV).
    Sample {
        #[arg(long, default_value_t = 21)]
        resolution: usize,
    },
    /// Export a region mesh.
    Mesh {
        /// tetra | mirror | intersection | pyramid
        #[arg(long)]
        region: String,
        /// json | off
        #[arg(long, default_value = "json")]
        format: String,
    },
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct AtomJson {
    weight: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    alice: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bob: Option<[f64; 3]>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct DistanceJson {
    distance: f64,
    lower_bound: f64,
    upper_bound: f64,
    gap: f64,
    iterations: usize,
    converged: bool,
    minimizer: MatrixJson,
    atoms: Vec<AtomJson>,
}

impl DistanceJson {
    fn from_report(rep: &DistanceReport) -> Self {
        Self {
            distance: rep.distance,
            lower_bound: rep.lower_bound,
            upper_bound: rep.upper_bound,
            gap: rep.gap,
            iterations: rep.iterations,
            converged: rep.converged,
            minimizer: MatrixJson::from(rep.minimizer.op()),
            atoms: rep
                .atoms
                .iter()
                .map(|a| AtomJson {
                    weight: a.weight,
                    alice: a.alice,
                    bob: a.bob,
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct WitnessJson {
    matrix: MatrixJson,
    pauli: PauliCoeffs2Q,
    sep_min: f64,
    violation_state_value: f64,
    violation: f64,
    normalized: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct RunReport {
    input: String,
    seed: u64,
    tool_version: String,
    ppt: bool,
    distance: DistanceJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson>,
    violation: f64,
    residual: f64,
    timing_ms: u64,
}

fn analyze(text: &str, g: &GlobalOpts) -> Result<RunReport, CliError> {
    let parsed = StateSpec::parse(text)?;
    let w = parsed.build()?;
    let cfg = g.solver_config()?;
    let start = Instant::now();

    let ppt = is_ppt(&w).map_err(|e| CliError::State(e.to_string()))?;
    let deep = SolverConfig {
        tol: cfg.tol.min(1e-13),
        ..cfg.clone()
    };
    let rep = distance(&w, &deep).map_err(|e| CliError::State(e.to_string()))?;
    if !rep.converged && g.strict && rep.gap > cfg.tol {
        return Err(CliError::Convergence(format!(
            "gap {:.3e} above tolerance {:.1e} after {} iterations",
            rep.gap, cfg.tol, rep.iterations
        )));
    }

    let (witness, violation) = if rep.distance > cfg.tol.max(1e-12) {
        let wit =
            a_max(&w, &rep.minimizer, &cfg.oracle).map_err(|e| CliError::State(e.to_string()))?;
        let violation = wit.violation();
        let json = WitnessJson {
            matrix: MatrixJson::from(&wit.op),
            pauli: to_pauli(&wit.op).map_err(|e| CliError::State(e.to_string()))?,
            sep_min: wit.sep_min,
            violation_state_value: wit.violation_state_value,
            violation,
            normalized: wit.normalized,
        };
        (Some(json), violation)
    } else {
        (None, 0.0)
    };

    let residual = (violation - rep.distance).abs();
    if residual > 1e-5 {
        let msg = format!("violation/distance residual {residual:.3e} above 1e-5");
        if g.strict {
            return Err(CliError::Convergence(msg));
        }
        eprintln!("warning: {msg}");
    }

    Ok(RunReport {
        input: parsed.echo(),
        seed: g.seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        ppt,
        distance: DistanceJson::from_report(&rep),
        witness,
        violation,
        residual,
        timing_ms: if g.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        },
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Analyze { state } => {
            let report = analyze(&state, g)?;
            if g.json {
                emit(g.out.as_deref(), &to_json_string(&report)?)
            } else {
                let text = format!(
                    "state:     {}\nppt:       {}\ndistance:  {}\nviolation: {}\nresidual:  {:.3e}\nconverged: {} ({} iterations, gap {:.3e})\n",
                    report.input,
                    report.ppt,
                    csv_num(report.distance.distance),
                    csv_num(report.violation),
                    report.residual,
                    report.distance.converged,
                    report.distance.iterations,
                    report.distance.gap,
                );
                emit(g.out.as_deref(), &text)
            }
        }
        Command::Distance { state } => {
            let w = StateSpec::parse(&state)?.build()?;
            let cfg = g.solver_config()?;
            let rep = distance(&w, &cfg).map_err(|e| CliError::State(e.to_string()))?;
            if !rep.converged && g.strict {
                return Err(CliError::Convergence(format!(
                    "gap {:.3e} after {} iterations",
                    rep.gap, rep.iterations
                )));
            }
            if g.json {
                emit(
                    g.out.as_deref(),
                    &to_json_string(&DistanceJson::from_report(&rep))?,
                )
            } else {
                let mut text = format!(
                    "distance: {}\nbounds:   [{}, {}] (gap {:.3e})\natoms:\n",
                    csv_num(rep.distance),
                    csv_num(rep.lower_bound),
                    csv_num(rep.upper_bound),
                    rep.gap,
                );
                for a in &rep.atoms {
                    match (a.alice, a.bob) {
                        (Some(n), Some(m)) => text.push_str(&format!(
                            "  {:.6}  n=({:+.4},{:+.4},{:+.4})  m=({:+.4},{:+.4},{:+.4})\n",
                            a.weight, n[0], n[1], n[2], m[0], m[1], m[2]
                        )),
                        _ => text.push_str(&format!("  {:.6}  (opaque state)\n", a.weight)),
                    }
                }
                emit(g.out.as_deref(), &text)
            }
        }
        Command::Witness { state } => {
            let report = analyze(&state, g)?;
            match (&report.witness, g.json) {
                (_, true) => emit(g.out.as_deref(), &to_json_string(&report)?),
                (Some(wit), false) => {
                    let text = format!(
                        "separable minimum: {}\nstate value:       {}\nviolation:         {}\ndistance:          {}\nresidual |B - D|:  {:.3e}\nwitness (pauli):   alpha={} c=diag-ish {:?}\n",
                        csv_num(wit.sep_min),
                        csv_num(wit.violation_state_value),
                        csv_num(wit.violation),
                        csv_num(report.distance.distance),
                        report.residual,
                        csv_num(wit.pauli.alpha),
                        wit.pauli.c,
                    );
                    emit(g.out.as_deref(), &text)
                }
                (None, false) => emit(
                    g.out.as_deref(),
                    &format!(
                        "state is separable (distance {}); no witness\n",
                        csv_num(report.distance.distance)
                    ),
                ),
            }
        }
        Command::Bell { which } => bell_command(which, g),
        Command::Geometry { which } => geometry_command(which, g),
        Command::Sweep {
            family,
            lo,
            hi,
            steps,
        } => sweep_command(&family, lo, hi, steps, g),
        Command::Reproduce { filter } => {
            let cfg = g.solver_config()?;
            let rows = reproduce::run(&cfg, filter.as_deref());
            let failed = rows.iter().filter(|r| !r.pass).count();
            if g.json {
                emit(g.out.as_deref(), &to_json_string(&rows)?)?;
            } else {
                emit(g.out.as_deref(), &reproduce::format_table(&rows))?;
            }
            if failed > 0 {
                return Err(CliError::Reproduce(failed));
            }
            Ok(())
        }
    }
}

fn planar(theta_deg: f64) -> [f64; 3] {
    let t = theta_deg.to_radians();
    [t.sin(), 0.0, t.cos()]
}

#[derive(Serialize)]
struct BellJson {
    setting: serde_json::Value,
    angles_deg: Vec<f64>,
    singlet_value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    separable_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    anticorrelated_max: Option<f64>,
}

fn bell_command(which: BellCommand, g: &GlobalOpts) -> Result<(), CliError> {
    let cfg = g.solver_config()?;
    match which {
        BellCommand::Chsh { angles, optimize } => {
            let setting = match (&angles, optimize) {
                (Some(a), _) if a.len() == 4 => {
                    ChshSetting::new(planar(a[0]), planar(a[1]), planar(a[2]), planar(a[3]))
                        .map_err(|e| CliError::Parse(e.to_string()))?
                }
                (Some(a), _) => {
                    return Err(CliError::Parse(format!(
                        "chsh takes 4 planar angles, got {}",
                        a.len()
                    )))
                }
                (None, _) => {
                    chsh_max_violation(&cfg.oracle)
                        .map_err(|e| CliError::State(e.to_string()))?
                        .1
                }
            };
            let singlet_value = chsh_singlet_value(&setting);
            let sep = max_over_separable(&chsh_operator(&setting), &cfg.oracle)
                .map_err(|e| CliError::State(e.to_string()))?
                .value;
            let report = BellJson {
                setting: serde_json::to_value(setting)
                    .map_err(|e| CliError::State(e.to_string()))?,
                angles_deg: setting.angles().iter().map(|a| a.to_degrees()).collect(),
                singlet_value,
                separable_max: Some(sep),
                anticorrelated_max: None,
            };
            emit_bell(&report, g)
        }
        BellCommand::Original { angles, optimize } => {
            let (setting, anticorr, sep_all) = match (&angles, optimize) {
                (Some(a), _) if a.len() == 3 => {
                    let s = BellSetting::new(planar(a[0]), planar(a[1]), planar(a[2]))
                        .map_err(|e| CliError::Parse(e.to_string()))?;
                    let op = bell_operator(&s);
                    let anticorr = entgeo::oracle::max_over_anticorrelated(&op, &cfg.oracle)
                        .map_err(|e| CliError::State(e.to_string()))?
                        .value;
                    let sep = max_over_separable(&op, &cfg.oracle)
                        .map_err(|e| CliError::State(e.to_string()))?
                        .value;
                    (s, anticorr, sep)
                }
                (Some(a), _) => {
                    return Err(CliError::Parse(format!(
                        "original takes 3 planar angles, got {}",
                        a.len()
                    )))
                }
                (None, _) => {
                    let rep = bell_max_violation(&cfg.oracle)
                        .map_err(|e| CliError::State(e.to_string()))?;
                    (rep.setting, rep.sep_anticorr_max, rep.sep_all_max)
                }
            };
            let report = BellJson {
                setting: serde_json::to_value(setting)
                    .map_err(|e| CliError::State(e.to_string()))?,
                angles_deg: setting.angles().iter().map(|a| a.to_degrees()).collect(),
                singlet_value: bell_singlet_value(&setting),
                separable_max: Some(sep_all),
                anticorrelated_max: Some(anticorr),
            };
            emit_bell(&report, g)
        }
        BellCommand::Summary => {
            let rows =
                violation_summary(&cfg.oracle).map_err(|e| CliError::State(e.to_string()))?;
            if g.json {
                emit(g.out.as_deref(), &to_json_string(&rows)?)
            } else {
                let mut text = format!(
                    "{:<24} {:>14} {:>14} {:>12}\n",
                    "observable", "separable", "singlet", "difference"
                );
                for r in &rows {
                    text.push_str(&format!(
                        "{:<24} {:>14} {:>14} {:>12}\n",
                        r.observable,
                        csv_num(r.sep_extremum),
                        csv_num(r.singlet_value),
                        csv_num(r.difference)
                    ));
                }
                emit(g.out.as_deref(), &text)
            }
        }
    }
}

fn emit_bell(report: &BellJson, g: &GlobalOpts) -> Result<(), CliError> {
    if g.json {
        emit(g.out.as_deref(), &to_json_string(report)?)
    } else {
        let mut text = format!(
            "singlet value: {}\nangles (deg):  {:?}\n",
            csv_num(report.singlet_value),
            report
                .angles_deg
                .iter()
                .map(|a| output::round_sig(*a, 9))
                .collect::<Vec<_>>(),
        );
        if let Some(s) = report.separable_max {
            text.push_str(&format!("separable max: {}\n", csv_num(s)));
        }
        if let Some(s) = report.anticorrelated_max {
            text.push_str(&format!("anticorrelated max: {}\n", csv_num(s)));
        }
        emit(g.out.as_deref(), &text)
    }
}

fn geometry_command(which: GeometryCommand, g: &GlobalOpts) -> Result<(), CliError> {
    match which {
        GeometryCommand::Sample { resolution } => {
            if resolution < 2 {
                return Err(CliError::Parse("resolution must be at least 2".into()));
            }
            let mut text = String::from("c1,c2,c3,in_tetra,in_mirror,separable\n");
            for s in sample_regions(resolution) {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    csv_num(s.c[0]),
                    csv_num(s.c[1]),
                    csv_num(s.c[2]),
                    s.in_tetrahedron as u8,
                    s.in_mirror as u8,
                    s.separable as u8
                ));
            }
            emit(g.out.as_deref(), &text)
        }
        GeometryCommand::Mesh { region, format } => {
            let region: Region = region
                .parse()
                .map_err(|e: entgeo::Error| CliError::Parse(e.to_string()))?;
            let mesh = export_mesh(region);
            match format.as_str() {
                "json" => emit(g.out.as_deref(), &to_json_string(&mesh)?),
                "off" => emit(g.out.as_deref(), &mesh.to_off()),
                other => Err(CliError::Parse(format!(
                    "unknown mesh format `{other}` (expected json or off)"
                ))),
            }
        }
    }
}

fn sweep_command(
    family: &str,
    lo: f64,
    hi: f64,
    steps: usize,
    g: &GlobalOpts,
) -> Result<(), CliError> {
    if steps == 0 {
        return Err(CliError::Parse("steps must be positive".into()));
    }
    let cfg = g.solver_config()?;
    let param = |i: usize| {
        if steps == 1 {
            lo
        } else {
            lo + (hi - lo) * i as f64 / (steps - 1) as f64
        }
    };
    let state_at = |t: f64| -> Result<entgeo::DensityMatrix, CliError> {
        match family {
            "werner" => entgeo::werner(t).map_err(|e| CliError::State(e.to_string())),
            "wc-ray" => {
                let c = t / 3.0_f64.sqrt();
                entgeo::w_c_state([c, c, c]).map_err(|e| CliError::State(e.to_string()))
            }
            other => Err(CliError::Parse(format!(
                "unknown family `{other}` (expected werner or wc-ray)"
            ))),
        }
    };

    let mut text = String::from("param,distance,violation,lower,upper,ppt\n");
    for i in 0..steps {
        let t = param(i);
        let w = state_at(t)?;
        let rep = distance(&w, &cfg).map_err(|e| CliError::State(e.to_string()))?;
        if !rep.converged && g.strict {
            return Err(CliError::Convergence(format!(
                "gap {:.3e} at parameter {t}",
                rep.gap
            )));
        }
        let b = entgeo::b_of_w(&w, &cfg).map_err(|e| CliError::State(e.to_string()))?;
        let ppt = is_ppt(&w).map_err(|e| CliError::State(e.to_string()))?;
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            csv_num(t),
            csv_num(rep.distance),
            csv_num(b),
            csv_num(rep.lower_bound),
            csv_num(rep.upper_bound),
            ppt as u8
        ));
    }
    emit(g.out.as_deref(), &text)
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
