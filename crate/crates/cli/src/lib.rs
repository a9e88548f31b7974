//! Command-line front end. Every subcommand prints one JSON object
//! (`"schema": 1`) or, for the torus study, optionally a CSV table.
//!
//! Exit codes: 0 on success, 2 when the requested bound is vacuous, 1 on
//! any input or runtime error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use spectral_bounds::euclidean::{
    chromatic_bound_euclidean_tol, density_bound_tol, optimize_radial_measure, steinhardt_measure, unit_distance_bound,
    RadialMeasure,
};
use spectral_bounds::graph::{
    adjacency_matrix, fractional_chi_bound, hoffman_chi_bound, optimize_weights, ratio_bound, Graph,
};
use spectral_bounds::report::round_sig;
use spectral_bounds::sphere::{operator_range, optimize_sphere_measure, single_t_bounds, SphereMeasure};
use spectral_bounds::torus::{convergence_study_with, study_csv, BoxRule};
use spectral_bounds::{BoundError, BoundKind, BoundReport};

pub const SCHEMA_VERSION: u64 = 1;
pub const THREADS_ENV: &str = "HOFFMAN_THREADS";

const MIN_TOL: f64 = 1e-12;
const MAX_TOL: f64 = 1e-3;
const MIN_DIM: usize = 2;
const MAX_DIM: usize = 32;

#[derive(Parser, Debug)]
#[command(
    name = "spectral-bounds",
    version,
    about = "Spectral bounds on chromatic numbers and independence ratios"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Numerical tolerance for extremum searches and LP verification.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Write the result here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Radial,
    Sphere,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hoffman, ratio and fractional bounds of a graph given as an edge list.
    Finite {
        graph: PathBuf,
        /// Also run this many steps of edge-weight optimization.
        #[arg(long)]
        optimize: Option<usize>,
        /// Allow negative edge weights during optimization.
        #[arg(long, requires = "optimize")]
        signed: bool,
    },
    /// Bounds for the unit-distance graph of R^n.
    UnitDistance {
        #[arg(short = 'n', long = "dim")]
        dim: usize,
    },
    /// Chromatic and density bounds for a radial measure given as JSON.
    Euclidean { measure: PathBuf },
    /// Bound from the truncated Steinhardt measure on odd distances in the plane.
    OddDistance {
        #[arg(long)]
        beta: f64,
        #[arg(short = 'N', long = "terms")]
        terms: usize,
    },
    /// Bounds for a distance graph on the unit sphere S^{n-1}.
    Sphere {
        #[arg(short = 'n', long = "dim", required_unless_present = "measure")]
        dim: Option<usize>,
        /// Forbidden inner product.
        #[arg(
            short = 't',
            allow_negative_numbers = true,
            conflicts_with = "measure",
            required_unless_present = "measure"
        )]
        t: Option<f64>,
        /// Measure JSON {"dim": n, "atoms": [[t, w], ...]}.
        #[arg(long)]
        measure: Option<PathBuf>,
        /// Degree cutoff for the eigenvalue scan.
        #[arg(long, default_value_t = 64)]
        kmax: usize,
    },
    /// Optimize the measure weights on a fixed support.
    Optimize {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(short = 'n', long = "dim")]
        dim: usize,
        /// Radii (radial) or inner products (sphere), comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        support: Vec<f64>,
        /// Initial degree cutoff (sphere mode).
        #[arg(long, default_value_t = 64)]
        kmax: usize,
        /// Cutting-plane round budget (radial mode).
        #[arg(long, default_value_t = 100)]
        rounds: usize,
    },
    /// Compare circulant discretizations on Z_m^n with the continuous bounds.
    Torus {
        #[arg(short = 'n', long = "dim")]
        dim: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<usize>,
        /// Use a fixed box of side C times the largest radius instead of the
        /// growing box.
        #[arg(long)]
        fixed_box: Option<f64>,
    },
}

enum Failure {
    Input(String),
    Vacuous(String),
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        if e.is_vacuous() {
            Failure::Vacuous(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome<T> = Result<T, Failure>;

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let written = match &cli.common.output {
                Some(path) => fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    1
                }
            }
        }
        Err(Failure::Vacuous(msg)) => {
            let _ = writeln!(err, "vacuous: {msg}");
            2
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn configure_threads() -> Outcome<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // a second call in the same process (tests) finds the pool already built
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn check_dim(n: usize) -> Outcome<()> {
    if (MIN_DIM..=MAX_DIM).contains(&n) {
        Ok(())
    } else {
        Err(Failure::Input(format!("dimension {n} outside [{MIN_DIM}, {MAX_DIM}]")))
    }
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Outcome<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

/// Rounds every float to 10 significant digits; integers are left alone.
fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            *v = json!(round_sig(x));
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

fn document(command: &str, fields: Vec<(&str, Value)>) -> String {
    let mut map = Map::new();
    map.insert("schema".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    for (k, v) in fields {
        map.insert(k.into(), v);
    }
    let mut doc = Value::Object(map);
    round_floats(&mut doc);
    let mut s = serde_json::to_string_pretty(&doc).expect("json value serializes");
    s.push('\n');
    s
}

fn bounds(reports: &[BoundReport]) -> Value {
    Value::Array(reports.iter().map(to_value).collect())
}

fn execute(cli: &Cli) -> Outcome<String> {
    let tol = cli.common.tol;
    if !(MIN_TOL..=MAX_TOL).contains(&tol) {
        return Err(Failure::Input(format!(
            "tolerance {tol:e} outside [{MIN_TOL:e}, {MAX_TOL:e}]"
        )));
    }
    let format = cli.common.format.unwrap_or(match cli.command {
        Command::Torus { .. } => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(cli.command, Command::Torus { .. }) {
        return Err(Failure::Input(
            "csv output is only available for the torus study".into(),
        ));
    }
    configure_threads()?;

    match &cli.command {
        Command::Finite {
            graph,
            optimize,
            signed,
        } => finite(graph, *optimize, *signed),
        Command::UnitDistance { dim } => {
            check_dim(*dim)?;
            let b = unit_distance_bound(*dim)?;
            Ok(document(
                "unit-distance",
                vec![("dim", json!(dim)), ("bounds", bounds(&[b.chi_lb, b.alpha_ub]))],
            ))
        }
        Command::Euclidean { measure } => {
            let mu: RadialMeasure = parse_json(measure)?;
            check_dim(mu.dim())?;
            euclidean("euclidean", &mu, tol, vec![])
        }
        Command::OddDistance { beta, terms } => {
            let mu = steinhardt_measure(*beta, *terms)?;
            let input = vec![("beta", json!(beta)), ("terms", json!(terms))];
            euclidean("odd-distance", &mu, tol, input)
        }
        Command::Sphere { dim, t, measure, kmax } => sphere(*dim, *t, measure.as_deref(), *kmax, tol),
        Command::Optimize {
            mode,
            dim,
            support,
            kmax,
            rounds,
        } => {
            check_dim(*dim)?;
            match mode {
                Mode::Radial => {
                    let opt = optimize_radial_measure(*dim, support, *rounds, tol)?;
                    Ok(document(
                        "optimize",
                        vec![
                            ("mode", json!("radial")),
                            ("measure", to_value(&opt.measure)),
                            ("bounds", bounds(&[opt.report])),
                            ("lp_value", json!(opt.lp_value)),
                            ("rounds", json!(opt.rounds)),
                            ("lp_grid_points", json!(opt.grid_size)),
                            ("converged", json!(opt.converged)),
                        ],
                    ))
                }
                Mode::Sphere => {
                    let opt = optimize_sphere_measure(*dim, support, *kmax, tol)?;
                    Ok(document(
                        "optimize",
                        vec![
                            ("mode", json!("sphere")),
                            ("measure", to_value(&opt.measure)),
                            ("bounds", bounds(&[opt.report])),
                            ("lp_value", json!(opt.lp_value)),
                            ("K", json!(opt.degree)),
                        ],
                    ))
                }
            }
        }
        Command::Torus {
            dim,
            radii,
            moduli,
            fixed_box,
        } => {
            if !(1..=3).contains(dim) {
                return Err(Failure::Input(format!("torus dimension {dim} outside [1, 3]")));
            }
            let rule = fixed_box.map(BoxRule::Fixed).unwrap_or_default();
            let rows = convergence_study_with(*dim, radii, moduli, rule)?;
            match format {
                Format::Csv => Ok(study_csv(&rows)),
                Format::Json => Ok(document(
                    "torus",
                    vec![("dim", json!(dim)), ("radii", json!(radii)), ("rows", to_value(&rows))],
                )),
            }
        }
    }
}

fn finite(path: &Path, optimize: Option<usize>, signed: bool) -> Outcome<String> {
    let g = Graph::parse_edge_list(&read(path)?)?;
    let a = adjacency_matrix(&g);
    let mut reports = Vec::new();
    let mut vacuous = Vec::new();
    for result in [hoffman_chi_bound(&a), ratio_bound(&a, None), fractional_chi_bound(&a)] {
        match result {
            Ok(r) => reports.push(r),
            Err(e) if e.is_vacuous() => {
                let msg = e.to_string();
                if !vacuous.contains(&msg) {
                    vacuous.push(msg);
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    if reports.is_empty() {
        return Err(Failure::Vacuous(vacuous.join("; ")));
    }
    if let Some(iters) = optimize {
        let opt = optimize_weights(&g, !signed, iters)?;
        reports.push(opt.report);
    }
    Ok(document(
        "finite",
        vec![
            ("vertices", json!(g.n())),
            ("edges", json!(g.edges().len())),
            ("bounds", bounds(&reports)),
            ("vacuous", json!(vacuous)),
        ],
    ))
}

fn euclidean(command: &str, mu: &RadialMeasure, tol: f64, mut fields: Vec<(&str, Value)>) -> Outcome<String> {
    let mut reports = vec![chromatic_bound_euclidean_tol(mu, tol)?];
    if mu.is_nonnegative() {
        reports.push(density_bound_tol(mu, tol)?);
    }
    fields.push(("dim", json!(mu.dim())));
    fields.push(("bounds", bounds(&reports)));
    Ok(document(command, fields))
}

fn sphere(dim: Option<usize>, t: Option<f64>, measure: Option<&Path>, kmax: usize, tol: f64) -> Outcome<String> {
    if let Some(t) = t {
        let n = dim.expect("clap requires -n with -t");
        check_dim(n)?;
        let b = single_t_bounds(n, t)?;
        return Ok(document(
            "sphere",
            vec![
                ("dim", json!(n)),
                ("t", json!(t)),
                ("bounds", bounds(&[b.chi_lb, b.alpha_ub])),
            ],
        ));
    }
    let path = measure.expect("clap requires -t or --measure");
    let mu: SphereMeasure = parse_json(path)?;
    if dim.is_some_and(|n| n != mu.dim()) {
        return Err(Failure::Input(format!(
            "-n disagrees with the measure dimension {}",
            mu.dim()
        )));
    }
    let range = operator_range(&mu, kmax, tol)?;
    if range.m >= 0.0 {
        return Err(Failure::Vacuous(format!("inf over degrees is {} >= 0", range.m)));
    }
    let prov = range.provenance();
    let mut reports = vec![
        BoundReport::chromatic(BoundKind::ChiLb, range.m, range.big_m, range.big_m)?.with_provenance(prov.clone()),
    ];
    if mu.atoms().iter().all(|a| a.1 >= 0.0) {
        reports.push(BoundReport::ratio(range.m, range.big_m, mu.total_mass(), 0.0)?.with_provenance(prov));
    }
    Ok(document(
        "sphere",
        vec![("measure", to_value(&mu)), ("bounds", bounds(&reports))],
    ))
}
