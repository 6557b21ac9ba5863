//! Bit-exact serialization of matrices, factor chains, and generator
//! configurations.
//!
//! JSON is the canonical interchange format: matrices as
//! `{"n": rows, "m": cols, "rows": [["p/q", ...], ...]}` and chains as
//! `{"n": dim, "levels": [...]}` where a level is an array of rational
//! strings or the string `"inf"`. Emitters always write canonical reduced
//! entries; parsers accept unreduced input. Streams may hold any number of
//! whitespace-separated JSON values, one per matrix or chain. The plain-text
//! matrix form (one row per line, space-separated) round-trips as well;
//! LaTeX output is emit-only.

use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::factor::{FactorChain, FactorError, VerifyReport};
use crate::generate::{GenConfig, GenError};
use crate::linalg::{LinalgError, MatQ};
use crate::rational::{parse_rational, NumberError, Rational};
use crate::sphere::{ExtParam, SphereError, StereoCoords};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational entry: {0}")]
    Number(#[from] NumberError),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("invalid factor chain: {0}")]
    Chain(#[from] FactorError),
    #[error("invalid stereographic parameter: {0}")]
    Sphere(#[from] SphereError),
    #[error("unknown level symbol {0:?} (expected \"inf\")")]
    BadLevelSymbol(String),
    #[error("invalid generator config: {0}")]
    Config(#[from] GenError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixRepr {
    n: usize,
    m: usize,
    rows: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LevelRepr {
    Finite(Vec<String>),
    Symbol(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChainRepr {
    n: usize,
    levels: Vec<LevelRepr>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GenConfigRepr {
    dim: usize,
    #[serde(default = "default_bound")]
    bound: u64,
    #[serde(default = "default_inf_weight")]
    inf_weight: String,
    #[serde(default)]
    seed: u64,
}

fn default_bound() -> u64 {
    10
}

fn default_inf_weight() -> String {
    "0".to_string()
}

fn matrix_repr(m: &MatQ) -> MatrixRepr {
    MatrixRepr {
        n: m.rows(),
        m: m.cols(),
        rows: (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.entry(i, j).to_string()).collect())
            .collect(),
    }
}

fn matrix_from_repr(repr: MatrixRepr) -> Result<MatQ, IoError> {
    if repr.rows.len() != repr.n {
        return Err(IoError::Shape(format!(
            "declared {} rows, found {}",
            repr.n,
            repr.rows.len()
        )));
    }
    if repr.rows.iter().any(|r| r.len() != repr.m) {
        return Err(IoError::Shape(format!(
            "declared {} columns, found a row of different length",
            repr.m
        )));
    }
    let rows = repr
        .rows
        .iter()
        .map(|row| row.iter().map(|e| parse_rational(e)).collect())
        .collect::<Result<Vec<Vec<Rational>>, NumberError>>()?;
    MatQ::from_rows(rows).map_err(|e: LinalgError| IoError::Shape(e.to_string()))
}

/// Compact single-line JSON for one matrix.
pub fn matrix_to_json(m: &MatQ) -> String {
    serde_json::to_string(&matrix_repr(m)).expect("plain data serializes")
}

pub fn matrix_from_json(s: &str) -> Result<MatQ, IoError> {
    matrix_from_repr(serde_json::from_str(s)?)
}

/// Reads every whitespace-separated matrix JSON value from the stream.
pub fn read_matrices(reader: impl Read) -> Result<Vec<MatQ>, IoError> {
    serde_json::Deserializer::from_reader(reader)
        .into_iter::<MatrixRepr>()
        .map(|repr| matrix_from_repr(repr?))
        .collect()
}

/// Plain-text form: one row per line, entries space-separated.
pub fn matrix_to_text(m: &MatQ) -> String {
    m.to_string()
}

pub fn matrix_from_text(s: &str) -> Result<MatQ, IoError> {
    let rows = s
        .lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| line.split_whitespace().map(parse_rational).collect())
        .collect::<Result<Vec<Vec<Rational>>, NumberError>>()?;
    if rows.is_empty() {
        return Err(IoError::Shape("no rows found".into()));
    }
    MatQ::from_rows(rows).map_err(|e| IoError::Shape(e.to_string()))
}

/// LaTeX `pmatrix` rendering with `\frac{p}{q}` entries; presentational
/// only, there is no parser for it.
pub fn matrix_to_latex(m: &MatQ) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| latex_entry(m.entry(i, j))).collect();
        out.push_str(&row.join(" & "));
        out.push_str(" \\\\\n");
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

fn latex_entry(r: &Rational) -> String {
    use num_traits::{One, Signed};
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}\\frac{{{}}}{{{}}}", r.numer().abs(), r.denom())
}

fn chain_repr(chain: &FactorChain) -> ChainRepr {
    ChainRepr {
        n: chain.dim(),
        levels: chain
            .levels()
            .iter()
            .map(|level| match level {
                ExtParam::Infinity { .. } => LevelRepr::Symbol("inf".to_string()),
                ExtParam::Finite(coords) => LevelRepr::Finite(
                    coords.coords().iter().map(Rational::to_string).collect(),
                ),
            })
            .collect(),
    }
}

fn chain_from_repr(repr: ChainRepr) -> Result<FactorChain, IoError> {
    if repr.n < 2 {
        return Err(FactorError::DimensionTooSmall(repr.n).into());
    }
    if repr.levels.len() != repr.n - 1 {
        return Err(FactorError::WrongLevelCount {
            dim: repr.n,
            expected: repr.n - 1,
            got: repr.levels.len(),
        }
        .into());
    }
    let mut levels = Vec::with_capacity(repr.levels.len());
    for (index, level) in repr.levels.into_iter().enumerate() {
        let expected = repr.n - 1 - index;
        match level {
            LevelRepr::Symbol(sym) if sym == "inf" => {
                levels.push(ExtParam::infinity(expected).expect("expected >= 1"));
            }
            LevelRepr::Symbol(sym) => return Err(IoError::BadLevelSymbol(sym)),
            LevelRepr::Finite(entries) => {
                let coords = entries
                    .iter()
                    .map(|e| parse_rational(e))
                    .collect::<Result<Vec<Rational>, NumberError>>()?;
                levels.push(ExtParam::finite(StereoCoords::new(coords)?));
            }
        }
    }
    Ok(FactorChain::new(repr.n, levels)?)
}

/// Compact single-line JSON for one factor chain.
pub fn chain_to_json(chain: &FactorChain) -> String {
    serde_json::to_string(&chain_repr(chain)).expect("plain data serializes")
}

pub fn chain_from_json(s: &str) -> Result<FactorChain, IoError> {
    chain_from_repr(serde_json::from_str(s)?)
}

/// Reads every whitespace-separated chain JSON value from the stream.
pub fn read_chains(reader: impl Read) -> Result<Vec<FactorChain>, IoError> {
    serde_json::Deserializer::from_reader(reader)
        .into_iter::<ChainRepr>()
        .map(|repr| chain_from_repr(repr?))
        .collect()
}

/// Parses a generator config from JSON with the canonical field names
/// (`dim`, `bound`, `inf_weight`, `seed`); omitted fields take the same
/// defaults as the command-line flags.
pub fn gen_config_from_json(s: &str) -> Result<GenConfig, IoError> {
    let repr: GenConfigRepr = serde_json::from_str(s)?;
    let inf_weight = parse_rational(&repr.inf_weight)?;
    Ok(GenConfig::new(repr.dim, repr.bound, inf_weight, repr.seed)?)
}

/// Machine-readable verification report, one line of JSON.
pub fn report_to_json(report: &VerifyReport) -> String {
    let failing: Vec<serde_json::Value> = report
        .failing_pairs
        .iter()
        .map(|(i, j, dot)| {
            serde_json::json!({ "i": i, "j": j, "dot": dot.to_string() })
        })
        .collect();
    serde_json::json!({
        "dim": report.dim,
        "orthogonal": report.orthogonal,
        "det": report.det.to_string(),
        "special": report.special,
        "unit_columns": report.unit_columns,
        "failing_pairs": failing,
        "fixes_last_axis": report.fixes_last_axis,
    })
    .to_string()
}
