//! Command-line front end: generate, decompose, compose, and verify
//! rational rotation matrices, plus a bench mode comparing the two
//! construction routes.
//!
//! Inputs default to standard input and results go to standard output, so
//! the subcommands pipe into each other. Exit codes are stable: 0 on
//! success, 1 on a domain failure (e.g. a matrix that is not special
//! orthogonal), 2 on parse or usage failures.

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use sonq::batch;
use sonq::factor::FactorError;
use sonq::generate::GenConfig;
use sonq::io::{
    chain_to_json, gen_config_from_json, matrix_to_json, matrix_to_latex, matrix_to_text,
    read_chains, read_matrices, report_to_json,
};
use sonq::linalg::MatQ;
use sonq::rational::{parse_rational, Rational};

#[derive(Parser)]
#[command(name = "sonq", version, about = "Exact rational rotation matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random rotation matrices from seeded parameter chains
    Generate(GenerateArgs),
    /// Factor matrices into their parameter chains
    Decompose(DecomposeArgs),
    /// Multiply parameter chains back into matrices
    Compose(ComposeArgs),
    /// Check matrices for special orthogonality and report the details
    Verify(VerifyArgs),
    /// Compare the construction methods; emits CSV with timing and bit growth
    Bench(BenchArgs),
}

#[derive(clap::Args)]
struct GenerateArgs {
    /// Matrix dimension (at least 2)
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..),
          required_unless_present = "config", conflicts_with = "config")]
    dim: Option<u64>,
    /// Number of matrices to emit
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    count: u64,
    /// Bound on |numerator| and denominator of sampled parameters (0 gives the identity)
    #[arg(long, default_value_t = 10, conflicts_with = "config")]
    bound: u64,
    /// Stream seed
    #[arg(long, default_value_t = 0, conflicts_with = "config")]
    seed: u64,
    /// Probability of an infinity level, a rational in [0, 1)
    #[arg(long = "inf-weight", default_value = "0", value_parser = parse_weight,
          conflicts_with = "config")]
    inf_weight: Rational,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// JSON config file with fields dim, bound, inf_weight, seed
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct DecomposeArgs {
    /// Matrix JSON input (defaults to standard input)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ComposeArgs {
    /// Chain JSON input (defaults to standard input)
    #[arg(long)]
    params: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Matrix JSON input (defaults to standard input)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Dimensions to measure, comma-separated (each at least 2)
    #[arg(long, required = true, value_delimiter = ',',
          value_parser = clap::value_parser!(u64).range(2..))]
    dims: Vec<u64>,
    /// Bound on sampled parameters
    #[arg(long, default_value_t = 10)]
    bound: u64,
    /// Matrices per dimension
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Stream seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Debug, Error)]
enum CliError {
    /// Exit code 1: input parsed but failed a mathematical requirement.
    #[error("{0}")]
    Domain(String),
    /// Exit code 2: unreadable or unparseable input, or bad configuration.
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

fn parse_weight(s: &str) -> Result<Rational, String> {
    let w = parse_rational(s).map_err(|e| e.to_string())?;
    if w < Rational::from_integer(0.into()) || w >= Rational::from_integer(1.into()) {
        return Err("must satisfy 0 <= w < 1".to_string());
    }
    Ok(w)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Decompose(args) => run_decompose(args),
        Command::Compose(args) => run_compose(args),
        Command::Verify(args) => run_verify(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read_source(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::Input(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

fn run_generate(args: GenerateArgs) -> Result<ExitCode, CliError> {
    let cfg = match &args.config {
        Some(path) => {
            let text = read_source(&Some(path.clone()))?;
            gen_config_from_json(&text).map_err(|e| CliError::Input(e.to_string()))?
        }
        None => {
            let dim = args.dim.expect("required without --config") as usize;
            GenConfig::new(dim, args.bound, args.inf_weight.clone(), args.seed)
                .map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    let matrices = batch::generate(&cfg, args.count as usize);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for (i, m) in matrices.iter().enumerate() {
        match args.format {
            Format::Json => emit(&mut out, &format!("{}\n", matrix_to_json(m)))?,
            Format::Text => {
                if i > 0 {
                    emit(&mut out, "\n")?;
                }
                emit(&mut out, &matrix_to_text(m))?;
            }
            Format::Latex => {
                if i > 0 {
                    emit(&mut out, "\n")?;
                }
                emit(&mut out, &matrix_to_latex(m))?;
            }
        }
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn run_decompose(args: DecomposeArgs) -> Result<ExitCode, CliError> {
    let text = read_source(&args.input)?;
    let matrices =
        read_matrices(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
    if matrices.is_empty() {
        return Err(CliError::Input("no matrices in input".to_string()));
    }
    let mut chains = Vec::with_capacity(matrices.len());
    for (i, result) in batch::decompose(&matrices).into_iter().enumerate() {
        match result {
            Ok(chain) => chains.push(chain),
            Err(FactorError::NotSpecialOrthogonal) => {
                return Err(CliError::Domain(format!(
                    "matrix #{i} is not special orthogonal"
                )))
            }
            Err(e) => return Err(CliError::Domain(format!("matrix #{i}: {e}"))),
        }
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for chain in &chains {
        emit(&mut out, &format!("{}\n", chain_to_json(chain)))?;
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn run_compose(args: ComposeArgs) -> Result<ExitCode, CliError> {
    let text = read_source(&args.params)?;
    let chains = read_chains(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
    if chains.is_empty() {
        return Err(CliError::Input("no chains in input".to_string()));
    }
    let matrices = batch::compose(&chains);
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for m in &matrices {
        emit(&mut out, &format!("{}\n", matrix_to_json(m)))?;
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let text = read_source(&args.input)?;
    let matrices =
        read_matrices(text.as_bytes()).map_err(|e| CliError::Input(e.to_string()))?;
    if matrices.is_empty() {
        return Err(CliError::Input("no matrices in input".to_string()));
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut all_special = true;

    let reports = if matrices.iter().all(MatQ::is_square) {
        batch::verify(&matrices)
    } else {
        let square: Vec<MatQ> = matrices.iter().filter(|m| m.is_square()).cloned().collect();
        batch::verify(&square)
    };
    let mut reports = reports.into_iter();

    for (i, m) in matrices.iter().enumerate() {
        if !m.is_square() {
            all_special = false;
            eprintln!(
                "matrix #{i}: {}x{} is not square, so not special orthogonal",
                m.rows(),
                m.cols()
            );
            let line = serde_json::json!({
                "square": false,
                "rows": m.rows(),
                "cols": m.cols(),
                "orthogonal": false,
                "special": false,
            });
            emit(&mut out, &format!("{line}\n"))?;
            continue;
        }
        let report = reports.next().expect("one report per square matrix");
        all_special &= report.special;
        eprint!("matrix #{i}: {report}");
        emit(&mut out, &format!("{}\n", report_to_json(&report)))?;
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    Ok(if all_special {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_bench(args: BenchArgs) -> Result<ExitCode, CliError> {
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    emit(
        &mut out,
        "dim,method,samples,mean_time_ns,max_entry_bits,methods_agree\n",
    )?;
    for &dim in &args.dims {
        let cfg = GenConfig::new(
            dim as usize,
            args.bound,
            Rational::from_integer(0.into()),
            args.seed,
        )
        .map_err(|e| CliError::Input(e.to_string()))?;
        let chains = batch::sample(&cfg, args.samples as usize);

        let started = Instant::now();
        let closed: Vec<MatQ> = chains.iter().map(sonq::factor::compose).collect();
        let closed_ns = started.elapsed().as_nanos() / args.samples as u128;

        let started = Instant::now();
        let fractional: Vec<MatQ> = chains.iter().map(sonq::factor::compose_via_cayley).collect();
        let fractional_ns = started.elapsed().as_nanos() / args.samples as u128;

        let agree = closed == fractional;
        let closed_bits = closed.iter().map(MatQ::max_entry_bits).max().unwrap_or(0);
        let fractional_bits = fractional
            .iter()
            .map(MatQ::max_entry_bits)
            .max()
            .unwrap_or(0);

        emit(
            &mut out,
            &format!(
                "{dim},closed-form,{},{closed_ns},{closed_bits},{agree}\n",
                args.samples
            ),
        )?;
        emit(
            &mut out,
            &format!(
                "{dim},cayley-fraction,{},{fractional_ns},{fractional_bits},{agree}\n",
                args.samples
            ),
        )?;
    }
    out.flush()
        .map_err(|e| CliError::Input(format!("cannot write output: {e}")))?;
    Ok(ExitCode::SUCCESS)
}
