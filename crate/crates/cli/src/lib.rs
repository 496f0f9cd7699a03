//! Commands behind the `povm` binary.
//!
//! Every command returns a [`Report`] (text for stdout plus a status) or a
//! [`CliError`] that renders as one JSON line on stderr. Exit codes:
//! 0 ok, 1 negative finding, 2 parse, 3 validation, 4 resource cap.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use povm_decomp::files::{DecompositionFile, PovmFile};
use povm_decomp::ordered::DEFAULT_ENUM_CAP;
use povm_decomp::{
    check_extremal, ordered_decompose, povm_catalog, Error, ExtremalityReason, Strategy,
    Tolerances, WeightedPovm,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Residual threshold used by `verify` when `--tol` is absent.
pub const VERIFY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub status: Status,
}

impl Report {
    fn ok(text: String) -> Self {
        Self {
            text,
            status: Status::Ok,
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self.status {
            Status::Ok => ExitCode::SUCCESS,
            Status::Negative => ExitCode::from(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CliError {
    #[serde(rename = "error")]
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    #[serde(skip)]
    pub code: u8,
}

impl CliError {
    pub fn parse(kind: &str, message: impl Into<String>, file: Option<&Path>) -> Self {
        Self {
            kind: kind.to_string(),
            message: message.into(),
            file: file.map(Path::to_path_buf),
            code: 2,
        }
    }

    fn library(err: Error, file: Option<&Path>) -> Self {
        let code = match &err {
            Error::TooLarge { .. } => 4,
            Error::InvalidFile(_) | Error::LengthMismatch { .. } => 2,
            // Validation failures, plus numerical breakdowns on input that
            // parsed but could not be processed.
            _ => 3,
        };
        Self {
            kind: err.kind().to_string(),
            message: err.to_string(),
            file: file.map(Path::to_path_buf),
            code,
        }
    }

    /// Single-line JSON diagnostic.
    pub fn line(&self) -> String {
        serde_json::to_string(self).expect("error record serializes")
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::parse("Io", e.to_string(), Some(path)))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse("Parse", e.to_string(), Some(path)))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("records serialize");
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::parse("Io", e.to_string(), Some(path)))
}

fn load_povm(path: &Path, tol: &Tolerances) -> CliResult<(PovmFile, WeightedPovm)> {
    let file: PovmFile = read_json(path)?;
    let povm = file
        .to_povm(tol)
        .map_err(|e| CliError::library(e, Some(path)))?;
    Ok((file, povm))
}

fn tolerances(tol: Option<f64>) -> Tolerances {
    tol.map_or_else(Tolerances::default, Tolerances::with_validation)
}

/// `bb84.json` becomes `bb84.decomposition.json` in the same directory.
pub fn default_output(input: &Path) -> PathBuf {
    let stem = input
        .file_stem()
        .map_or_else(|| "povm".into(), |s| s.to_string_lossy().into_owned());
    input.with_file_name(format!("{stem}.decomposition.json"))
}

fn label_list(file: &PovmFile, labels: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<String> = labels.into_iter().map(|l| file.label(l)).collect();
    format!("[{}]", names.join(", "))
}

#[derive(Debug, Clone)]
pub struct DecomposeArgs {
    pub input: PathBuf,
    pub strategy: Strategy,
    pub tol: Option<f64>,
    pub enum_cap: usize,
    pub output: Option<PathBuf>,
}

impl DecomposeArgs {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            strategy: Strategy::default(),
            tol: None,
            enum_cap: DEFAULT_ENUM_CAP,
            output: None,
        }
    }
}

pub fn cmd_decompose(args: &DecomposeArgs) -> CliResult<Report> {
    let tol = tolerances(args.tol);
    let (file, povm) = load_povm(&args.input, &tol)?;
    let dec = ordered_decompose(&povm, args.strategy, args.enum_cap, &tol)
        .map_err(|e| CliError::library(e, Some(&args.input)))?;
    let record = DecompositionFile::from_decomposition(&dec);
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| default_output(&args.input));
    write_json(&output, &record)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "outcomes: {} ({} prepared), terms: {}, strategy: {}",
        file.elements.len(),
        dec.relabel.len(),
        dec.terms.len(),
        args.strategy
    );
    for (k, t) in record.terms.iter().enumerate() {
        let mut originals: Vec<usize> = t.outcomes.iter().map(|o| o.original_label).collect();
        originals.sort_unstable();
        originals.dedup();
        let _ = writeln!(
            text,
            "term {k}: p = {}, {} outcomes, labels {}",
            t.probability,
            t.outcomes.len(),
            label_list(&file, originals)
        );
    }
    let _ = writeln!(text, "wrote {}", output.display());
    Ok(Report::ok(text))
}

pub fn cmd_verify(original: &Path, decomposition: &Path, tol: Option<f64>) -> CliResult<Report> {
    let (_, povm) = load_povm(original, &Tolerances::default())?;
    let record: DecompositionFile = read_json(decomposition)?;
    if record.dim != povm.dim() {
        return Err(CliError::parse(
            "DimensionMismatch",
            format!(
                "decomposition has dim {}, POVM has dim {}",
                record.dim,
                povm.dim()
            ),
            Some(decomposition),
        ));
    }
    let lib = |e| CliError::library(e, Some(decomposition));
    record.to_decomposition().map_err(lib)?;
    let residual = record.residual_against(&povm).map_err(lib)?;
    let threshold = tol.unwrap_or(VERIFY_TOL);
    let pass = residual <= threshold;
    let text = format!(
        "max residual {residual:e} ({} threshold {threshold:e})\n",
        if pass { "within" } else { "above" }
    );
    Ok(Report {
        text,
        status: if pass { Status::Ok } else { Status::Negative },
    })
}

pub fn cmd_check_extremal(input: &Path, tol: Option<f64>) -> CliResult<Report> {
    let tol = tolerances(tol);
    let (file, povm) = load_povm(input, &tol)?;
    let report = check_extremal(&povm, &tol).map_err(|e| CliError::library(e, Some(input)))?;
    let mut text = String::new();
    let _ = writeln!(text, "extremal: {}", report.is_extremal);
    let _ = writeln!(text, "reason: {:?}", report.reason);
    if let Some(x) = &report.witness {
        let support: Vec<usize> = (0..x.len()).filter(|&i| x[i] > 0.0).collect();
        let labels = support.iter().map(|&i| povm.outcomes()[i].label);
        let weights: Vec<String> = support.iter().map(|&i| x[i].to_string()).collect();
        let _ = writeln!(
            text,
            "witness: labels {} with weights [{}]",
            label_list(&file, labels),
            weights.join(", ")
        );
    }
    Ok(Report {
        text,
        status: if report.reason == ExtremalityReason::Extremal {
            Status::Ok
        } else {
            Status::Negative
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogRecord {
    pub dim: usize,
    /// Prepared labels merged into each LP column.
    pub columns: Vec<Vec<usize>>,
    pub vertices: Vec<VertexRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexRecord {
    pub support: Vec<usize>,
    pub x: Vec<f64>,
    pub outcome_count: usize,
    pub q: f64,
}

pub fn cmd_enumerate(
    input: &Path,
    tol: Option<f64>,
    enum_cap: usize,
    output: Option<&Path>,
) -> CliResult<Report> {
    let tol = tolerances(tol);
    let (_, povm) = load_povm(input, &tol)?;
    let (groups, catalog) =
        povm_catalog(&povm, enum_cap, &tol).map_err(|e| CliError::library(e, Some(input)))?;
    let record = CatalogRecord {
        dim: povm.dim(),
        columns: groups
            .iter()
            .map(|g| g.members.iter().map(|m| m.0).collect())
            .collect(),
        vertices: catalog
            .vertices
            .iter()
            .map(|v| VertexRecord {
                support: v.support().to_vec(),
                x: v.solution.x.clone(),
                outcome_count: v.outcome_count,
                q: v.q_value,
            })
            .collect(),
    };
    let mut text = String::new();
    let _ = writeln!(
        text,
        "{} columns, {} vertices",
        record.columns.len(),
        record.vertices.len()
    );
    for (k, v) in record.vertices.iter().enumerate() {
        let _ = writeln!(text, "vertex {k}: support {:?}, Q = {:.6}", v.support, v.q);
    }
    if let Some(path) = output {
        write_json(path, &record)?;
        let _ = writeln!(text, "wrote {}", path.display());
    }
    Ok(Report::ok(text))
}
