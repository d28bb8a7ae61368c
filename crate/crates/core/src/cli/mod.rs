//! Command-line front end.
//!
//! ```text
//! mpsolve <check|gates|indices|norms|solve|verify> <problem-file> [options]
//! ```
//!
//! Every command prints a `key = value` report to stdout. Exit status is 0 on
//! success, 1 when a hypothesis, gate or verification fails, and 2 on errors
//! and numerical failures. Errors go to stderr as `error[<code>]: <message>`.

mod config;
mod report;

pub use config::{load_problem, load_problem_file, parse_problem, ProblemFile};
pub use report::Report;

use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use thiserror::Error;

use crate::action::{euler_lagrange_residual, gradient_norm, ActionContext};
use crate::gfun::{delta2_nabla2_probe, embedding_constant, simonenko_indices, SamplerConfig, SearchConfig};
use crate::mpsolver::{mountain_pass_solve, MountainPassConfig, SolveStatus};
use crate::orlicz::{modular, norm_bundle, read_csv, write_csv, GridFunction};
use crate::problem::{check_hypotheses, check_theorem_conditions, estimate_constants, GateOptions, HypothesisSampler};
use crate::DEFAULT_SEED;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(String),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{}: {message}", path.display())]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    /// Machine-readable error code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse_error",
            CliError::Missing(_) => "missing_key",
            CliError::Invalid { .. } => "invalid_problem",
            CliError::Io { .. } => "io_error",
            CliError::Usage(_) => "usage",
            CliError::Numeric(_) => "numeric_error",
        }
    }
}

fn numeric(e: impl std::fmt::Display) -> CliError {
    CliError::Numeric(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Sampled hypothesis checks and constant estimates.
    Check,
    /// Existence conditions A and B.
    Gates,
    /// Simonenko indices, embedding constant and doubling probes.
    Indices,
    /// Orlicz norms of the function in `--input`.
    Norms,
    /// Mountain-pass solve.
    Solve,
    /// Euler–Lagrange residual of the function in `--input`.
    Verify,
}

/// Parsed command line.
#[derive(Clone, Debug, Parser)]
#[command(
    name = "mpsolve",
    version,
    about = "Mountain-pass solver for Euler-Lagrange boundary value problems"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Problem file.
    pub problem_path: PathBuf,
    /// Grid subintervals, overriding `grid.n`.
    #[arg(long = "grid-n")]
    pub grid_n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Directory for `report.txt` and, for `solve`, `solution.csv`.
    #[arg(long = "out")]
    pub output_dir: Option<PathBuf>,
    /// Gradient tolerance for `solve` and `verify`.
    #[arg(long = "tol-grad", default_value_t = 1e-6)]
    pub tol_grad: f64,
    #[arg(long = "path-points", default_value_t = 21)]
    pub path_points: usize,
    /// Samples per hypothesis.
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Grid-function CSV for `norms` and `verify`.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, problem_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            problem_path: problem_path.into(),
            grid_n: None,
            seed: DEFAULT_SEED,
            output_dir: None,
            tol_grad: 1e-6,
            path_points: 21,
            samples: 10_000,
            input: None,
        }
    }

    fn sampler(&self) -> HypothesisSampler {
        HypothesisSampler {
            samples: self.samples,
            seed: self.seed,
            ..HypothesisSampler::default()
        }
    }
}

/// Outcome of a command: the report and whether its checks passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub passed: bool,
    /// Extra files to write under `--out`.
    pub solution: Option<GridFunction>,
}

fn read_grid_function(path: &Path) -> Result<GridFunction, CliError> {
    let file = File::open(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    read_csv(BufReader::new(file)).map_err(|e| CliError::Invalid {
        field: "input".into(),
        message: e.to_string(),
    })
}

fn input(cfg: &RunConfig) -> Result<GridFunction, CliError> {
    let path = cfg
        .input
        .as_deref()
        .ok_or_else(|| CliError::Usage("this command needs --input <csv>".into()))?;
    read_grid_function(path)
}

/// Runs one command without touching stdout or the file system.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let file = load_problem_file(&cfg.problem_path)?;
    let spec = file.spec;
    let grid_n = cfg.grid_n.unwrap_or(file.grid_n);
    let mut report = Report::new();
    report.text("command", format!("{:?}", cfg.command).to_lowercase());
    report.problem(&spec, grid_n);
    report.text("seed", cfg.seed.to_string());
    let sampler = SamplerConfig {
        seed: cfg.seed,
        ..SamplerConfig::default()
    };
    let mut solution = None;
    let passed = match cfg.command {
        Command::Check => {
            let hs = cfg.sampler();
            let h = check_hypotheses(&spec, &hs);
            report.hypotheses(&h).estimates(&estimate_constants(&spec, &hs));
            h.all_passed()
        }
        Command::Gates => {
            let idx = simonenko_indices(spec.gfun(), &sampler).map_err(numeric)?;
            let emb = embedding_constant(spec.gfun(), spec.interval_length(), &sampler).map_err(numeric)?;
            let g = check_theorem_conditions(&spec, &emb, &idx, &GateOptions::default());
            report.gates(&g);
            g.any_holds()
        }
        Command::Indices => {
            let idx = simonenko_indices(spec.gfun(), &sampler).map_err(numeric)?;
            let emb = embedding_constant(spec.gfun(), spec.interval_length(), &sampler).map_err(numeric)?;
            let probe = delta2_nabla2_probe(spec.gfun(), &sampler, &SearchConfig::default());
            report.indices(&idx).embedding(&emb).doubling(&probe);
            true
        }
        Command::Norms => {
            let u = input(cfg)?;
            if u.dim() != spec.dimension() {
                return Err(CliError::Invalid {
                    field: "input".into(),
                    message: format!("expected {} components, got {}", spec.dimension(), u.dim()),
                });
            }
            let g = spec.gfun();
            report.norms(&norm_bundle(g, &u), modular(g, &u, false), modular(g, &u, true));
            true
        }
        Command::Solve => {
            let ctx = ActionContext::new(spec, grid_n).map_err(|e| CliError::Invalid {
                field: "grid.n".into(),
                message: e.to_string(),
            })?;
            let mp = MountainPassConfig {
                grad_tol: cfg.tol_grad,
                path_points: cfg.path_points,
                seed: cfg.seed,
                hypothesis_samples: cfg.samples,
                ..MountainPassConfig::default()
            };
            let s = mountain_pass_solve(&ctx, &mp).map_err(numeric)?;
            report.solve(&s);
            if s.status == SolveStatus::NotConverged || !s.converged {
                return Err(CliError::Numeric(format!("solve did not converge: {}", s.message)));
            }
            solution = Some(s.u_star);
            true
        }
        Command::Verify => {
            let u = input(cfg)?;
            let ctx = ActionContext::new(spec, u.n()).map_err(numeric)?;
            let r = euler_lagrange_residual(&ctx, &u).map_err(|e| CliError::Invalid {
                field: "input".into(),
                message: e.to_string(),
            })?;
            let gn = gradient_norm(&ctx, &u).map_err(numeric)?;
            if !(r.weak_residual.is_finite() && r.strong_residual.is_finite()) {
                return Err(CliError::Numeric("non-finite residual".into()));
            }
            report.residual(&r, gn).num("residual.tolerance", cfg.tol_grad);
            r.weak_residual <= cfg.tol_grad
        }
    };
    report.flag("passed", passed);
    Ok(Outcome {
        report,
        passed,
        solution,
    })
}

fn write_outputs(dir: &Path, outcome: &Outcome) -> Result<(), CliError> {
    let io = |path: &Path, e: &dyn std::fmt::Display| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(|e| io(dir, &e))?;
    let report_path = dir.join("report.txt");
    fs::write(&report_path, outcome.report.render()).map_err(|e| io(&report_path, &e))?;
    if let Some(u) = &outcome.solution {
        let path = dir.join("solution.csv");
        let file = File::create(&path).map_err(|e| io(&path, &e))?;
        write_csv(u, file).map_err(|e| io(&path, &e))?;
    }
    Ok(())
}

/// Runs `cfg`, printing the report, and returns the exit status.
pub fn dispatch(cfg: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = run(cfg).and_then(|outcome| {
        if let Some(dir) = &cfg.output_dir {
            write_outputs(dir, &outcome)?;
        }
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            let _ = stdout.write_all(outcome.report.render().as_bytes());
            if outcome.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {e}", e.code());
            2
        }
    }
}

/// Parses `args` (program name first) and dispatches.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => dispatch(&cfg, stdout, stderr),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            }
        }
    }
}
