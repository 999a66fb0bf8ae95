//! Command-line front end behind the `fef` binary.
//!
//! Exit codes: 0 success, 2 parse or usage error, 3 validation error,
//! 4 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use crate::distill::{self, FilteringCurves, RhoXFamily};
use crate::error::Error;
use crate::fef::{fef_upper_bound, FefReport};
use crate::generators::GeneratorBasis;
use crate::linalg::ComplexMatrix;
use crate::oracle::{oracle_fef, OracleConfig};
use crate::sampling;
use crate::state::{example_family_rho_x, Bipartite, DensityMatrix};
use crate::tripartite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Bisection width for the printed sign changes.
const THRESHOLD_TOL: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(
    name = "fef",
    version,
    about = "Fully entangled fraction bounds, distillation advice and CSV sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fidelity, 1/d threshold, Ky Fan upper bound and (for qubits) the exact value.
    Report {
        state: PathBuf,
        /// Also run the unitary search.
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = OracleConfig::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluate the bound in a generator basis rotated by a random orthogonal matrix.
        #[arg(long)]
        basis_seed: Option<u64>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Reduction criterion and whether filtering must precede distillation.
    Advise {
        state: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// CSV of fidelity - 1/3 and bound - 1/3 along the two-qutrit family.
    SweepFig1 {
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Unnormalized)]
        family: FamilyArg,
    },
    /// CSV of the normalized fraction and its concurrence bound along the symmetric W line.
    SweepFig2 {
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Unitary search for the fully entangled fraction.
    Oracle {
        state: PathBuf,
        #[arg(long, default_value_t = OracleConfig::DEFAULT_RESTARTS)]
        restarts: usize,
        #[arg(long, default_value_t = OracleConfig::DEFAULT_MAX_ITERS)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a fixture state file.
    State {
        #[command(subcommand)]
        kind: StateKind,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum StateKind {
    /// Projector onto the maximally entangled state.
    MaxEntangled {
        #[arg(long)]
        dim: usize,
    },
    MaximallyMixed {
        #[arg(long)]
        dim: usize,
    },
    /// Unit-trace member of the two-qutrit family.
    RhoX {
        #[arg(long)]
        x: f64,
    },
    /// Ginibre-random state.
    Random {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Unnormalized,
    UnitTrace,
}

impl From<FamilyArg> for RhoXFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Unnormalized => RhoXFamily::Unnormalized,
            FamilyArg::UnitTrace => RhoXFamily::UnitTrace,
        }
    }
}

/// A failed command, classified by exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Validation(Error),
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Validation(e) => write!(f, "validation error: {e}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Validation(e)
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        Command::Report {
            state,
            oracle,
            restarts,
            seed,
            basis_seed,
            json,
        } => cmd_report(&state, oracle, restarts, seed, basis_seed, json, out),
        Command::Advise { state, json } => cmd_advise(&state, json, out),
        Command::SweepFig1 {
            steps,
            out: path,
            family,
        } => cmd_sweep_fig1(steps, path.as_deref(), family.into(), out, err),
        Command::SweepFig2 { steps, out: path } => cmd_sweep_fig2(steps, path.as_deref(), out),
        Command::Oracle {
            state,
            restarts,
            iters,
            seed,
        } => cmd_oracle(&state, restarts, iters, seed, out),
        Command::State { kind, out: path } => cmd_state(kind, path.as_deref(), out),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn basis_for(d: usize, basis_seed: Option<u64>) -> Result<GeneratorBasis, CliError> {
    let basis = GeneratorBasis::build(d)?;
    Ok(match basis_seed {
        Some(s) => {
            let o = sampling::random_orthogonal(basis.len(), &mut ChaCha8Rng::seed_from_u64(s));
            basis.rotate(&o)?
        }
        None => basis,
    })
}

fn cmd_report(
    path: &Path,
    oracle: bool,
    restarts: usize,
    seed: u64,
    basis_seed: Option<u64>,
    json: bool,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rho = read_state_file(path)?;
    let basis = basis_for(rho.local_dim()?, basis_seed)?;
    let cfg = OracleConfig {
        restarts,
        ..OracleConfig::with_seed(seed)
    };
    let report = FefReport::compute(&rho, &basis, oracle.then_some(&cfg))?;
    if json {
        return emit(
            out,
            &format!("{}\n", serde_json::to_string(&report).expect("plain data")),
        );
    }
    let mut text = format!(
        "dimension: {}\nfidelity: {}\nthreshold: {}\nupper_bound: {}\n",
        report.dim, report.fidelity, report.threshold, report.upper_bound
    );
    if let Some(v) = report.exact_two_qubit {
        text += &format!("exact_fef: {v}\n");
    }
    if let Some(v) = report.normalized {
        text += &format!("normalized_fef: {v}\n");
    }
    if let Some(v) = report.oracle_lower {
        text += &format!("oracle_lower_bound: {v}\n");
    }
    emit(out, &text)
}

fn cmd_advise(path: &Path, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let rho = read_state_file(path)?;
    let basis = GeneratorBasis::build(rho.local_dim()?)?;
    let a = distill::advise(&rho, &basis)?;
    if json {
        return emit(out, &format!("{}\n", serde_json::to_string(&a).expect("plain data")));
    }
    emit(
        out,
        &format!(
            "verdict: {}\nreduction_min_eigenvalue_a: {}\nreduction_min_eigenvalue_b: {}\nfidelity: {}\nupper_bound: {}\nthreshold: {}\n",
            a.verdict, a.reduction.side_a, a.reduction.side_b, a.fidelity, a.upper_bound, a.threshold
        ),
    )
}

fn check_steps(steps: usize) -> Result<(), CliError> {
    if steps < 2 {
        return Err(CliError::Parse(format!("--steps must be at least 2, got {steps}")));
    }
    Ok(())
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn cmd_sweep_fig1(
    steps: usize,
    path: Option<&Path>,
    family: RhoXFamily,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    check_steps(steps)?;
    let curves = FilteringCurves::new(family)?;
    let rows = (0..=steps)
        .into_par_iter()
        .map(|k| curves.row(k as f64 / steps as f64))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("x,fidelity_minus_third,bound_minus_third\n");
    for r in &rows {
        csv += &format!(
            "{},{},{}\n",
            fmt_f(r.x),
            fmt_f(r.fidelity_minus_third),
            fmt_f(r.bound_minus_third)
        );
    }
    let t = curves.thresholds(steps, THRESHOLD_TOL)?;
    let summary = format!(
        "fidelity sign changes: {:.4} {:.4}\nbound sign changes: {:.4} {:.4}\n",
        t.fidelity_low, t.fidelity_high, t.bound_low, t.bound_high
    );
    match path {
        Some(p) => {
            write_atomic(p, &csv)?;
            emit(out, &summary)
        }
        None => {
            emit(out, &csv)?;
            err.write_all(summary.as_bytes())
                .map_err(|e| CliError::Io(format!("stderr: {e}")))
        }
    }
}

fn cmd_sweep_fig2(steps: usize, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    check_steps(steps)?;
    let basis = GeneratorBasis::build(2)?;
    let rows = (0..=steps)
        .into_par_iter()
        .map(|k| tripartite::w_line_row(k as f64 / steps as f64, &basis))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("gamma,fef_n,bound\n");
    for r in &rows {
        csv += &format!("{},{},{}\n", fmt_f(r.gamma), fmt_f(r.fef_n), fmt_f(r.bound));
    }
    match path {
        Some(p) => write_atomic(p, &csv),
        None => emit(out, &csv),
    }
}

fn cmd_oracle(path: &Path, restarts: usize, iters: usize, seed: u64, out: &mut dyn Write) -> Result<(), CliError> {
    let rho = read_state_file(path)?;
    let cfg = OracleConfig {
        restarts,
        max_iters: iters,
        ..OracleConfig::with_seed(seed)
    };
    let res = oracle_fef(&rho, &cfg)?;
    let bound = fef_upper_bound(&rho, &GeneratorBasis::build(rho.local_dim()?)?)?;
    emit(
        out,
        &format!(
            "best_value: {}\nbest_restart: {}\nupper_bound: {}\ngap: {}\n",
            res.best_value,
            res.best_restart,
            bound,
            bound - res.best_value
        ),
    )
}

fn cmd_state(kind: StateKind, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let rho = match kind {
        StateKind::MaxEntangled { dim } => DensityMatrix::max_entangled_projector(dim)?,
        StateKind::MaximallyMixed { dim } => DensityMatrix::maximally_mixed(dim, dim)?,
        StateKind::RhoX { x } => example_family_rho_x(x)?,
        StateKind::Random { dim, seed } => {
            if dim < 2 {
                return Err(Error::InvalidDimension(dim).into());
            }
            sampling::random_density_matrix(dim, dim, &mut ChaCha8Rng::seed_from_u64(seed))
        }
    };
    let text = format!("{}\n", state_to_json(&rho));
    match path {
        Some(p) => write_atomic(p, &text),
        None => emit(out, &text),
    }
}

/// Writes through a temporary file in the target directory, so a failed
/// run leaves no partial output.
fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

/// Serializes to the state-file format: `dim_a`, `dim_b` and a row-major
/// `matrix` of `[re, im]` pairs.
pub fn state_to_json<S: Bipartite + ?Sized>(rho: &S) -> String {
    let m = rho.matrix();
    let rows: Vec<Vec<[f64; 2]>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect();
    serde_json::json!({ "dim_a": rho.dim_a(), "dim_b": rho.dim_b(), "matrix": rows }).to_string()
}

fn read_state_file(path: &Path) -> Result<DensityMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_state(&text)
}

fn field_usize(root: &Value, name: &str) -> Result<usize, CliError> {
    root.get(name)
        .ok_or_else(|| CliError::Parse(format!("missing field `{name}`")))?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| CliError::Parse(format!("field `{name}` must be a nonnegative integer")))
}

/// Parses the state-file format. Shape problems are parse errors; the
/// physical checks (Hermitian, trace, positivity) are validation errors.
pub fn parse_state(text: &str) -> Result<DensityMatrix, CliError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
    let dim_a = field_usize(&root, "dim_a")?;
    let dim_b = field_usize(&root, "dim_b")?;
    let n = dim_a
        .checked_mul(dim_b)
        .ok_or_else(|| CliError::Parse("`dim_a` * `dim_b` overflows".into()))?;
    let rows = root
        .get("matrix")
        .ok_or_else(|| CliError::Parse("missing field `matrix`".into()))?
        .as_array()
        .ok_or_else(|| CliError::Parse("field `matrix` must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(CliError::Parse(format!(
            "`matrix` has {} rows, expected dim_a*dim_b = {n}",
            rows.len()
        )));
    }
    let mut m = ComplexMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Parse(format!("`matrix[{i}]` must be an array")))?;
        if row.len() != n {
            return Err(CliError::Parse(format!(
                "`matrix[{i}]` has {} entries, expected {n}",
                row.len()
            )));
        }
        for (j, entry) in row.iter().enumerate() {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CliError::Parse(format!("`matrix[{i}][{j}]` must be a [re, im] pair")))?;
            let part = |k: usize| {
                pair[k]
                    .as_f64()
                    .ok_or_else(|| CliError::Parse(format!("`matrix[{i}][{j}][{k}]` must be a number")))
            };
            m[(i, j)] = Complex64::new(part(0)?, part(1)?);
        }
    }
    Ok(DensityMatrix::validate(m, dim_a, dim_b)?)
}
