use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spencer_core::cartan::{self, KernelMode};
use spencer_core::liealg::{self, builtin, AlgebraSpec};
use spencer_core::spencer::{self, LeibnizConvention};
use spencer_core::workbench::{self, sampling, RunOptions, Snapshots, Suite};
use spencer_core::{DualFunctional, LieAlgebra, WorkbenchError};

#[derive(Parser)]
#[command(
    name = "spencer-workbench",
    version,
    about = "Exact checks for constraint-coupled Spencer operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a claim suite and emit the report.
    Verify(VerifyArgs),
    /// Kernel of the prolongation operator or of a Cartan constraint system.
    Kernel(KernelArgs),
    /// Dump the matrix of δ^λ on Sym^k.
    Operator(OperatorArgs),
    /// Kernel dimensions over seeded random λ and a range of degrees.
    Table(TableArgs),
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all", value_parser = parse_suite)]
    suite: Suite,
    /// Restrict convention-dependent claims to one convention.
    #[arg(long, value_enum)]
    convention: Option<Conv>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Sampling seed; WORKBENCH_SEED takes precedence when set.
    #[arg(long, default_value_t = workbench::DEFAULT_SEED)]
    seed: u64,
    /// Snapshot file to compare against (defaults to the embedded copy).
    #[arg(long)]
    snapshots: Option<PathBuf>,
    /// Record computed values of pinned claims as the new snapshots.
    #[arg(long)]
    bless: bool,
}

#[derive(Args)]
#[group(id = "algebra_source", required = true, multiple = false)]
struct AlgebraArgs {
    /// Built-in algebra: sl2, su2c or su2c-rooted.
    #[arg(long, group = "algebra_source")]
    algebra: Option<String>,
    /// Algebra spec JSON file.
    #[arg(long, group = "algebra_source")]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// JSON file `{"coords": [...]}` or `{"coords": {"E": "1"}}`.
    #[arg(long)]
    lambda: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value = "spencer")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "graded")]
    convention: Conv,
}

#[derive(Args)]
struct OperatorArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    #[arg(long)]
    lambda: PathBuf,
    #[arg(long)]
    degree: usize,
    #[arg(long, value_enum, default_value = "graded")]
    convention: Conv,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    algebra: AlgebraArgs,
    /// Inclusive range such as `1..3`.
    #[arg(long, value_parser = parse_degrees)]
    degrees: (usize, usize),
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = workbench::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value = "linearized")]
    mode: TableModeArg,
    #[arg(long, value_enum, default_value = "graded")]
    convention: Conv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Graded,
    Ungraded,
}

impl From<Conv> for LeibnizConvention {
    fn from(c: Conv) -> Self {
        match c {
            Conv::Graded => LeibnizConvention::Graded,
            Conv::Ungraded => LeibnizConvention::Ungraded,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Linearized,
    Full,
    Spencer,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableModeArg {
    Linearized,
    Full,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: WorkbenchError| e.to_string())
}

fn parse_degrees(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("expected A..B with 1 <= A <= B, got `{s}`");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Workbench(#[from] WorkbenchError),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("WORKBENCH_SEED: `{0}` is not an unsigned integer")]
    Seed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Kernel(a) => kernel(a),
        Command::Operator(a) => operator(a),
        Command::Table(a) => table(a),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load(a: &AlgebraArgs) -> Result<LieAlgebra, CliError> {
    match (&a.algebra, &a.spec) {
        (Some(name), _) => Ok(builtin::load(name)?),
        (None, Some(path)) => {
            let spec: AlgebraSpec = serde_json::from_str(&read(path)?).map_err(WorkbenchError::from)?;
            Ok(liealg::load_algebra(&spec)?)
        }
        (None, None) => unreachable!("clap enforces one algebra source"),
    }
}

fn load_lambda(path: &Path, alg: &LieAlgebra) -> Result<DualFunctional, CliError> {
    Ok(DualFunctional::from_json(&read(path)?, alg)?)
}

fn emit(text: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // A closed pipe (`| head`) is not a failure of the computation.
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(WorkbenchError::from(e).into()),
        _ => Ok(()),
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(v).map_err(WorkbenchError::from)?;
    text.push('\n');
    emit(&text)
}

fn verify(a: VerifyArgs) -> Result<ExitCode, CliError> {
    let seed = match std::env::var("WORKBENCH_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Seed(s))?,
        Err(_) => a.seed,
    };
    let mut snaps = match &a.snapshots {
        Some(p) if p.exists() || !a.bless => Snapshots::parse(&read(p)?)?,
        Some(_) => Snapshots::default(),
        None if a.bless => Snapshots::load(&Snapshots::source_path()).unwrap_or_default(),
        None => Snapshots::embedded(),
    };
    let opts = RunOptions {
        seed,
        convention: a.convention.map(Into::into),
        bless: a.bless,
    };
    let report = workbench::run(a.suite, &opts, &mut snaps)?;
    if a.bless {
        let target = a.snapshots.clone().unwrap_or_else(Snapshots::source_path);
        snaps.save(&target)?;
        eprintln!("wrote {} snapshots to {}", snaps.len(), target.display());
    }
    let text = report.to_json()?;
    match &a.json {
        Some(path) => {
            std::fs::write(path, &text).map_err(WorkbenchError::from)?;
            let mut lines = String::new();
            for c in &report.claims {
                lines.push_str(&format!("{:<13} {}\n", c.status.to_string(), c.id));
            }
            let s = &report.summary;
            lines.push_str(&format!(
                "confirmed {} refuted {} indeterminate {} skipped {}\n",
                s.confirmed, s.refuted, s.indeterminate, s.skipped
            ));
            emit(&lines)?;
        }
        None => emit(&text)?,
    }
    Ok(if report.has_refuted_paper_claim() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn kernel(a: KernelArgs) -> Result<ExitCode, CliError> {
    let alg = load(&a.algebra)?;
    let lambda = load_lambda(&a.lambda, &alg)?;
    let conv: LeibnizConvention = a.convention.into();
    let out = match a.mode {
        Mode::Spencer => {
            let k = spencer::spencer_kernel(&alg, &lambda, a.degree, conv)?;
            json!({
                "algebra": alg.name(),
                "mode": "spencer",
                "convention": conv,
                "lambda": lambda.coords,
                "degree": k.degree,
                "dimension": k.dimension(),
                "basis": k.basis,
            })
        }
        Mode::Linearized | Mode::Full => {
            let mode = if matches!(a.mode, Mode::Full) {
                KernelMode::Full
            } else {
                KernelMode::Linearized
            };
            let k = cartan::cartan_kernel(&alg, &lambda, a.degree, mode, conv)?;
            let mut v = json!({
                "algebra": alg.name(),
                "mode": mode,
                "convention": conv,
                "lambda": lambda.coords,
                "degree": k.degree,
                "dimension": k.dimension,
                "basis": k.basis,
            });
            if mode == KernelMode::Linearized {
                v["constraint_matrix"] =
                    serde_json::to_value(cartan::constraint_matrix(&alg, &lambda, a.degree, conv)?)
                        .map_err(WorkbenchError::from)?;
            }
            v
        }
    };
    print_json(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn operator(a: OperatorArgs) -> Result<ExitCode, CliError> {
    let alg = load(&a.algebra)?;
    let lambda = load_lambda(&a.lambda, &alg)?;
    let m = spencer::operator_matrix(&alg, &lambda, a.degree, a.convention.into())?;
    print_json(&m)?;
    Ok(ExitCode::SUCCESS)
}

fn table(a: TableArgs) -> Result<ExitCode, CliError> {
    let alg = load(&a.algebra)?;
    let lambdas = sampling::sample_lambdas(a.seed, "table", alg.dim(), a.samples, false);
    let mode = match a.mode {
        TableModeArg::Linearized => KernelMode::Linearized,
        TableModeArg::Full => KernelMode::Full,
    };
    let rows = workbench::dimension_table(&alg, a.degrees.0..=a.degrees.1, &lambdas, mode, a.convention.into())?;
    print_json(&json!({
        "algebra": alg.name(),
        "mode": mode,
        "convention": LeibnizConvention::from(a.convention),
        "seed": a.seed,
        "rows": rows,
    }))?;
    Ok(ExitCode::SUCCESS)
}
