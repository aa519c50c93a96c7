//! Rendering values, matrices and reports back to JSON. Output uses the
//! same element syntax the parser accepts, so every report round-trips.

use amalgam::certificate::VerificationReport;
use amalgam::descriptor::RingKind;
use amalgam::matrix::Matrix;
use amalgam::series::SeriesValue;
use amalgam::value::Payload;
use amalgam::RingValue;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::ParseError;

type PResult<T> = Result<T, ParseError>;

pub fn render_value(v: &RingValue) -> PResult<Value> {
    let ring = v.ring();
    match (&ring.kind, v.payload()) {
        (RingKind::Integers, Payload::Int(n)) => Ok(json!(n.to_string())),
        (RingKind::Rationals, Payload::Rat(r)) => Ok(json!(rational_string(r))),
        (RingKind::PolynomialOverRationals, Payload::Poly(p)) => {
            let coeffs: Vec<String> = p.coeffs().iter().map(rational_string).collect();
            Ok(json!({ "coeffs": coeffs }))
        }
        (RingKind::TruncatedSeries { precision, .. }, Payload::Series(s))
        | (RingKind::DPlusM { precision, .. }, Payload::Series(s)) => Ok(render_series(s, *precision)),
        (RingKind::Overring { denominators, .. }, Payload::Fraction(f)) => {
            let mut den = BigInt::one();
            for (g, &e) in denominators.iter().zip(f.den.iter()) {
                let g = g
                    .payload()
                    .as_int()
                    .map_err(|e| ParseError(e.to_string()))?;
                for _ in 0..e {
                    den *= g;
                }
            }
            let num = f.num.as_int().map_err(|e| ParseError(e.to_string()))?;
            Ok(if den.is_one() {
                json!(num.to_string())
            } else {
                json!(format!("{num}/{den}"))
            })
        }
        (RingKind::Product { .. }, Payload::Pair(_, _)) => {
            let (l, r) = amalgam::arith::split_pair(v).map_err(|e| ParseError(e.to_string()))?;
            Ok(json!({ "left": render_value(&l)?, "right": render_value(&r)? }))
        }
        (RingKind::Amalgamation { .. } | RingKind::Duplication { .. }, Payload::Pair(_, _)) => {
            let (a, _) = amalgam::arith::split_pair(v).map_err(|e| ParseError(e.to_string()))?;
            let j = amalgam::amalgam::membership_defect(v)
                .map_err(|e| ParseError(e.to_string()))?;
            Ok(json!({ "a": render_value(&a)?, "j": render_value(&j)? }))
        }
        _ => Err(ParseError("unrenderable value".into())),
    }
}

fn rational_string(r: &num_rational::BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn render_series(s: &SeriesValue, ring_precision: usize) -> Value {
    match s {
        SeriesValue::ExactZero => json!({
            "valuation": 0,
            "coeffs": Vec::<String>::new(),
            "precision": ring_precision,
        }),
        SeriesValue::Window {
            valuation,
            coeffs,
            precision,
        } => {
            if coeffs.is_empty() {
                json!({
                    "valuation": 0,
                    "coeffs": Vec::<String>::new(),
                    "precision": precision,
                    "exact": false,
                })
            } else {
                json!({
                    "valuation": valuation,
                    "coeffs": coeffs.iter().map(rational_string).collect::<Vec<_>>(),
                    "precision": precision,
                })
            }
        }
    }
}

pub fn render_matrix(m: &Matrix) -> PResult<Value> {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for j in 0..m.cols() {
            row.push(render_value(m.get(i, j))?);
        }
        rows.push(Value::Array(row));
    }
    Ok(Value::Array(rows))
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn render_report_checks(report: &VerificationReport) -> Vec<CheckDoc> {
    report
        .checks
        .iter()
        .map(|c| CheckDoc {
            name: c.name.clone(),
            pass: c.pass,
            note: c.note.clone(),
        })
        .collect()
}

/// The full report document; field order is fixed so identical inputs
/// produce byte-identical reports.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub command: String,
    #[serde(rename = "inputsDigest")]
    pub inputs_digest: String,
    pub ring: String,
    pub seed: u64,
    pub bound: u32,
    pub samples: usize,
    pub precision: usize,
    pub outputs: Value,
    pub verification: Vec<CheckDoc>,
    #[serde(rename = "exitStatus")]
    pub exit_status: i32,
}

/// FNV-1a over the raw input bytes, for the inputs digest.
pub fn fnv1a(chunks: &[&[u8]]) -> String {
    let mut hash: u64 = 0xcbf29ce484222325;
    for chunk in chunks {
        for &b in *chunk {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
        hash ^= 0x1e;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{hash:016x}")
}
