//! Command-line front end: parses descriptor documents, dispatches the
//! library operations, and emits deterministic JSON reports with the
//! verification record and the documented exit-status contract
//! (0 all checks pass, 1 verification failure, 2 parse error,
//! 3 missing capability).

use amalgam_cli::{input, render};

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use amalgam::certificate::{verify_gcd_certificate, VerificationReport};
use amalgam::classify;
use amalgam::falsify::{falsify_flags, principal_generator_search, FalsifyOutcome};
use amalgam::matrix::{self, Matrix};
use amalgam::suite::run_property_suite;
use amalgam::{amalgam as am, arith, gcd, ops, RingDescriptor, RingError, RingValue};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use input::{DescriptorDocument, ParseError};
use render::{fnv1a, render_matrix, render_report_checks, render_value, CheckDoc, ReportDocument};

const DEFAULT_PRECISION: usize = 32;

#[derive(Parser)]
#[command(
    name = "amalgam",
    about = "Exact linear algebra over amalgamated ring constructions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certified gcd of the first two elements
    Gcd(CommonArgs),
    /// Smith-style diagonalization of the matrix
    Snf(CommonArgs),
    /// Hermite triangularization of the matrix
    Hermite(CommonArgs),
    /// Determinant of the matrix
    Det(CommonArgs),
    /// Inverse of the first element, when it is a unit
    Invert(CommonArgs),
    /// Theorem-case classification of an amalgamation or duplication
    Classify(CommonArgs),
    /// Bounded principal-generator search over the given generators
    Witness(CommonArgs),
    /// Run the full property suite and the flag falsifier
    Check(CommonArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Ring descriptor document (JSON)
    #[arg(long)]
    ring: PathBuf,
    /// Document providing the matrix (defaults to the ring document)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Document providing the element list (defaults to the ring document)
    #[arg(long)]
    elements: Option<PathBuf>,
    /// Enumeration bound for the witness search
    #[arg(long, default_value_t = 12)]
    bound: u32,
    /// Seed for the randomized suites
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample count for the randomized suites
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Default series precision (overrides AMALGAM_PRECISION)
    #[arg(long)]
    precision: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Gcd(a) => ("gcd", a),
        Command::Snf(a) => ("snf", a),
        Command::Hermite(a) => ("hermite", a),
        Command::Det(a) => ("det", a),
        Command::Invert(a) => ("invert", a),
        Command::Classify(a) => ("classify", a),
        Command::Witness(a) => ("witness", a),
        Command::Check(a) => ("check", a),
    };
    let precision = args
        .precision
        .or_else(|| {
            std::env::var("AMALGAM_PRECISION")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_PRECISION);

    match run(name, args, precision) {
        Ok(report) => {
            let code = report.exit_status;
            emit(&args.out, &serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            let (code, diagnostic) = match &e {
                CliError::Ring(RingError::CapabilityMissing { .. }) => (3, e.to_string()),
                _ => (2, e.to_string()),
            };
            let report = json!({
                "command": name,
                "error": diagnostic,
                "exitStatus": code,
            });
            emit(&args.out, &serde_json::to_string_pretty(&report).unwrap());
            ExitCode::from(code as u8)
        }
    }
}

fn emit(out: &Option<PathBuf>, body: &str) {
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{body}\n")) {
                eprintln!("cannot write report to {}: {e}", path.display());
            }
        }
        None => println!("{body}"),
    }
}

#[derive(Debug)]
enum CliError {
    Parse(ParseError),
    Ring(RingError),
    Io(String),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "parse error: {e}"),
            CliError::Ring(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Usage(e) => write!(f, "usage error: {e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<RingError> for CliError {
    fn from(e: RingError) -> Self {
        CliError::Ring(e)
    }
}

type CResult<T> = Result<T, CliError>;

struct Loaded {
    ring: Arc<RingDescriptor>,
    matrix: Option<Matrix>,
    elements: Vec<RingValue>,
    digest: String,
}

fn read(path: &Path) -> CResult<(String, DescriptorDocument)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let doc: DescriptorDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(ParseError(format!("{}: {e}", path.display()))))?;
    Ok((text, doc))
}

fn load(args: &CommonArgs, precision: usize) -> CResult<Loaded> {
    let (ring_text, ring_doc) = read(&args.ring)?;
    let mut chunks: Vec<Vec<u8>> = vec![ring_text.into_bytes()];
    let ring = input::build_ring(&ring_doc.ring, precision)?;

    let mut matrix_rows = ring_doc.matrix;
    if let Some(path) = &args.matrix {
        let (text, doc) = read(path)?;
        chunks.push(text.into_bytes());
        matrix_rows = doc.matrix.or(matrix_rows);
    }
    let mut element_docs = ring_doc.elements;
    if let Some(path) = &args.elements {
        let (text, doc) = read(path)?;
        chunks.push(text.into_bytes());
        element_docs = doc.elements.or(element_docs);
    }

    let matrix = match matrix_rows {
        Some(rows) => {
            let parsed: Result<Vec<Vec<RingValue>>, ParseError> = rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| input::parse_element(&ring, e, precision))
                        .collect()
                })
                .collect();
            Some(Matrix::from_rows(ring.clone(), parsed?).map_err(CliError::Ring)?)
        }
        None => None,
    };
    let elements = match element_docs {
        Some(list) => list
            .iter()
            .map(|e| input::parse_element(&ring, e, precision))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };
    let chunk_refs: Vec<&[u8]> = chunks.iter().map(|c| c.as_slice()).collect();
    Ok(Loaded {
        ring,
        matrix,
        elements,
        digest: fnv1a(&chunk_refs),
    })
}

fn run(name: &str, args: &CommonArgs, precision: usize) -> CResult<ReportDocument> {
    let loaded = load(args, precision)?;
    let (outputs, verification) = match name {
        "gcd" => cmd_gcd(&loaded)?,
        "snf" => cmd_snf(&loaded)?,
        "hermite" => cmd_hermite(&loaded)?,
        "det" => cmd_det(&loaded)?,
        "invert" => cmd_invert(&loaded)?,
        "classify" => cmd_classify(&loaded)?,
        "witness" => cmd_witness(&loaded, args.bound)?,
        "check" => cmd_check(&loaded, args.samples, args.seed, args.bound)?,
        _ => unreachable!(),
    };
    let pass = verification.iter().all(|c| c.pass);
    Ok(ReportDocument {
        command: name.to_string(),
        inputs_digest: loaded.digest,
        ring: loaded.ring.to_string(),
        seed: args.seed,
        bound: args.bound,
        samples: args.samples,
        precision,
        outputs,
        verification,
        exit_status: if pass { 0 } else { 1 },
    })
}

fn need_elements(loaded: &Loaded, n: usize) -> CResult<()> {
    if loaded.elements.len() < n {
        return Err(CliError::Usage(format!(
            "this command needs at least {n} element(s); got {}",
            loaded.elements.len()
        )));
    }
    Ok(())
}

fn need_matrix(loaded: &Loaded) -> CResult<&Matrix> {
    loaded
        .matrix
        .as_ref()
        .ok_or_else(|| CliError::Usage("this command needs a matrix".into()))
}

fn cmd_gcd(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    need_elements(loaded, 2)?;
    let a = &loaded.elements[0];
    let b = &loaded.elements[1];
    let cert = gcd::gcd_certified(a, b)?;
    let report = verify_gcd_certificate(a, b, &cert);
    let outputs = json!({
        "d": render_value(&cert.d)?,
        "a1": render_value(&cert.a1)?,
        "b1": render_value(&cert.b1)?,
        "alpha": render_value(&cert.alpha)?,
        "beta": render_value(&cert.beta)?,
    });
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_snf(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    let m = need_matrix(loaded)?;
    let res = matrix::snf(m)?;
    let outputs = json!({
        "p": render_matrix(&res.p)?,
        "q": render_matrix(&res.q)?,
        "d": render_matrix(&res.d)?,
    });
    Ok((outputs, render_report_checks(&res.report)))
}

fn cmd_hermite(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    let m = need_matrix(loaded)?;
    let (t, q) = matrix::hermite_reduce(m)?;
    let report = matrix::verify_hermite(m, &t, &q);
    let outputs = json!({
        "t": render_matrix(&t)?,
        "q": render_matrix(&q)?,
    });
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_det(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    let m = need_matrix(loaded)?;
    let det = matrix::mat_det(m)?;
    // second route: expand the transpose and compare
    let mut transpose_entries = Vec::with_capacity(m.rows() * m.cols());
    for j in 0..m.cols() {
        for i in 0..m.rows() {
            transpose_entries.push(m.get(i, j).clone());
        }
    }
    let transposed = Matrix::new(m.ring().clone(), m.cols(), m.rows(), transpose_entries)
        .map_err(CliError::Ring)?;
    let det_t = matrix::mat_det(&transposed)?;
    let mut report = VerificationReport::default();
    report.push(amalgam::certificate::Check::from_eq(
        "det(M) = det(M^T)",
        arith::values_equal(&det, &det_t)?,
    ));
    let outputs = json!({ "det": render_value(&det)? });
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_invert(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    need_elements(loaded, 1)?;
    let x = &loaded.elements[0];
    let inverse = ops::unit_inverse(x)?;
    let mut report = VerificationReport::default();
    let outputs = match &inverse {
        Some(inv) => {
            let product = arith::mul(x, inv)?;
            report.push(amalgam::certificate::Check::from_eq(
                "inverse * x = 1",
                arith::values_equal(&product, &RingValue::one(x.ring()))?,
            ));
            json!({ "inverse": render_value(inv)? })
        }
        None => {
            report.push(amalgam::certificate::Check::bool(
                "element is not a unit (no inverse exists)",
                true,
                None,
            ));
            json!({ "inverse": Value::Null })
        }
    };
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_classify(loaded: &Loaded) -> CResult<(Value, Vec<CheckDoc>)> {
    let c = classify::classify_amalgamation(&loaded.ring)?;
    let mut report = VerificationReport::default();
    report.push(amalgam::certificate::Check::bool(
        "verdict chain: EDR => Hermite => Bezout",
        c.chain_coherent(),
        None,
    ));
    let outputs = json!({
        "bezout": c.bezout.name(),
        "hermite": c.hermite.name(),
        "edr": c.edr.name(),
        "case": c.case,
        "assumptionsUsed": c.assumptions,
    });
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_witness(loaded: &Loaded, bound: u32) -> CResult<(Value, Vec<CheckDoc>)> {
    need_elements(loaded, 1)?;
    let res = principal_generator_search(&loaded.ring, &loaded.elements, bound)?;
    let mut report = VerificationReport::default();
    let outputs = match &res.generator {
        Some(g) => {
            for (k, gen) in loaded.elements.iter().enumerate() {
                report.push(amalgam::certificate::Check::bool(
                    &format!("generator divides input {k}"),
                    ops::divides(g, gen)?,
                    None,
                ));
            }
            if loaded.ring.pair_view().and_then(|v| v.glue).is_some() {
                report.push(amalgam::certificate::Check::bool(
                    "generator satisfies the membership invariant",
                    am::check_membership(g)?,
                    None,
                ));
            }
            json!({
                "generator": render_value(g)?,
                "exhaustive": res.exhaustive,
                "candidatesTested": res.candidates_tested,
            })
        }
        None => {
            report.push(amalgam::certificate::Check::bool(
                "no principal generator within the bound",
                true,
                Some(format!(
                    "exhaustive within bound {}: {}",
                    res.bound, res.exhaustive
                )),
            ));
            json!({
                "generator": Value::Null,
                "exhaustive": res.exhaustive,
                "candidatesTested": res.candidates_tested,
            })
        }
    };
    Ok((outputs, render_report_checks(&report)))
}

fn cmd_check(
    loaded: &Loaded,
    samples: usize,
    seed: u64,
    bound: u32,
) -> CResult<(Value, Vec<CheckDoc>)> {
    let suite = run_property_suite(&loaded.ring, samples, seed, bound)?;
    let mut checks = Vec::new();
    let mut suites_json = Vec::new();
    for s in &suite.suites {
        suites_json.push(json!({
            "name": s.name,
            "passes": s.passes,
            "failures": s.failures,
            "skipped": s.skipped,
            "notes": s.notes,
        }));
        checks.push(CheckDoc {
            name: format!("suite: {}", s.name),
            pass: s.pass(),
            note: if s.skipped {
                Some(format!("skipped: {}", s.notes.join("; ")))
            } else {
                Some(format!("{} passed, {} failed", s.passes, s.failures))
            },
        });
    }
    let falsifier = falsify_flags(&loaded.ring, samples, seed)?;
    let mut falsifier_json = Vec::new();
    for entry in &falsifier.entries {
        let (status, detail) = match &entry.outcome {
            FalsifyOutcome::Refuted { witness } => ("refuted", witness.clone()),
            FalsifyOutcome::NoCounterexample { samples } => {
                ("no-counterexample", format!("{samples} samples"))
            }
            FalsifyOutcome::Advisory { note } => ("advisory", note.clone()),
            FalsifyOutcome::Skipped { reason } => ("skipped", reason.clone()),
        };
        falsifier_json.push(json!({
            "hypothesis": entry.hypothesis,
            "status": status,
            "detail": detail,
        }));
        if matches!(entry.outcome, FalsifyOutcome::Refuted { .. }) {
            checks.push(CheckDoc {
                name: format!("falsifier: {}", entry.hypothesis),
                pass: false,
                note: Some(detail),
            });
        }
    }
    let outputs = json!({
        "suites": suites_json,
        "falsifier": falsifier_json,
    });
    Ok((outputs, checks))
}
