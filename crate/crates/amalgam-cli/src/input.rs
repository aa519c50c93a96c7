//! Descriptor documents: the JSON surface for rings, matrices and element
//! lists. Numbers are always carried as strings so exact rationals never
//! pass through floating point. Unknown fields are rejected.

use std::sync::Arc;

use amalgam::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingKind};
use amalgam::poly::Polynomial;
use amalgam::series::SeriesValue;
use amalgam::value::{FractionValue, Payload};
use amalgam::{RingDescriptor, RingFlag, RingValue};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = Result<T, ParseError>;

fn err<T>(msg: impl Into<String>) -> PResult<T> {
    Err(ParseError(msg.into()))
}

/// Top-level document: a ring plus optional matrix and element list.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorDocument {
    pub ring: RingDoc,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<serde_json::Value>>>,
    #[serde(default)]
    pub elements: Option<Vec<serde_json::Value>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDoc {
    pub kind: String,
    #[serde(default)]
    pub flags: Vec<String>,
    // TruncatedSeries
    #[serde(default, rename = "coefficientField")]
    pub coefficient_field: Option<Box<RingDoc>>,
    #[serde(default, rename = "defaultPrecision")]
    pub default_precision: Option<usize>,
    // DPlusM
    #[serde(default, rename = "baseDomain")]
    pub base_domain: Option<Box<RingDoc>>,
    #[serde(default, rename = "seriesPrecision")]
    pub series_precision: Option<usize>,
    // Overring
    #[serde(default)]
    pub base: Option<Box<RingDoc>>,
    #[serde(default, rename = "denominatorGenerators")]
    pub denominator_generators: Option<Vec<serde_json::Value>>,
    // Product
    #[serde(default)]
    pub left: Option<Box<RingDoc>>,
    #[serde(default)]
    pub right: Option<Box<RingDoc>>,
    // Amalgamation
    #[serde(default)]
    pub a: Option<Box<RingDoc>>,
    #[serde(default)]
    pub b: Option<Box<RingDoc>>,
    #[serde(default)]
    pub hom: Option<HomDoc>,
    #[serde(default)]
    pub ideal: Option<IdealDoc>,
    #[serde(default, rename = "meetsIdealZero")]
    pub meets_ideal_zero: Option<bool>,
    #[serde(default)]
    pub image: Option<Box<RingDoc>>,
    // Duplication
    #[serde(default)]
    pub submodule: Option<IdealDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub kind: String,
    #[serde(default, rename = "declaredInjective")]
    pub declared_injective: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDoc {
    pub kind: String,
    #[serde(default)]
    pub generator: Option<serde_json::Value>,
}

/// Build the descriptor tree, filling omitted precisions with the given
/// default.
pub fn build_ring(doc: &RingDoc, default_precision: usize) -> PResult<Arc<RingDescriptor>> {
    let flags: Vec<RingFlag> = doc
        .flags
        .iter()
        .map(|f| RingFlag::parse(f).ok_or_else(|| ParseError(format!("unknown flag `{f}`"))))
        .collect::<PResult<_>>()?;
    let kind = match doc.kind.as_str() {
        "Integers" => RingKind::Integers,
        "Rationals" => RingKind::Rationals,
        "PolynomialOverRationals" => RingKind::PolynomialOverRationals,
        "TruncatedSeries" => {
            let field = match &doc.coefficient_field {
                Some(f) => build_ring(f, default_precision)?,
                None => RingDescriptor::rationals(),
            };
            RingKind::TruncatedSeries {
                coefficient_field: field,
                precision: doc.default_precision.unwrap_or(default_precision),
            }
        }
        "DPlusM" => {
            let base = match &doc.base_domain {
                Some(b) => build_ring(b, default_precision)?,
                None => return err("DPlusM needs `baseDomain`"),
            };
            RingKind::DPlusM {
                base,
                precision: doc.series_precision.unwrap_or(default_precision),
            }
        }
        "Overring" => {
            let base = match &doc.base {
                Some(b) => build_ring(b, default_precision)?,
                None => return err("Overring needs `base`"),
            };
            let gens = match &doc.denominator_generators {
                Some(gens) => gens
                    .iter()
                    .map(|g| parse_element(&base, g, default_precision))
                    .collect::<PResult<Vec<_>>>()?,
                None => return err("Overring needs `denominatorGenerators`"),
            };
            RingKind::Overring {
                base,
                denominators: gens,
            }
        }
        "Product" => {
            let (left, right) = match (&doc.left, &doc.right) {
                (Some(l), Some(r)) => (
                    build_ring(l, default_precision)?,
                    build_ring(r, default_precision)?,
                ),
                _ => return err("Product needs `left` and `right`"),
            };
            RingKind::Product { left, right }
        }
        "Amalgamation" => {
            let a = match &doc.a {
                Some(a) => build_ring(a, default_precision)?,
                None => return err("Amalgamation needs `a`"),
            };
            let b = match &doc.b {
                Some(b) => build_ring(b, default_precision)?,
                None => return err("Amalgamation needs `b`"),
            };
            let hom = match &doc.hom {
                Some(h) => build_hom(h)?,
                None => return err("Amalgamation needs `hom`"),
            };
            let ideal = match &doc.ideal {
                Some(i) => build_ideal(i, &b, default_precision)?,
                None => return err("Amalgamation needs `ideal`"),
            };
            let image = match &doc.image {
                Some(img) => Some(build_ring(img, default_precision)?),
                None => None,
            };
            RingKind::Amalgamation {
                a,
                b,
                hom,
                ideal,
                meets_ideal_zero: doc.meets_ideal_zero,
                image,
            }
        }
        "Duplication" => {
            let a = match &doc.a {
                Some(a) => build_ring(a, default_precision)?,
                None => return err("Duplication needs `a`"),
            };
            let submodule = match &doc.submodule {
                Some(s) => build_ideal(s, &a, default_precision)?,
                None => return err("Duplication needs `submodule`"),
            };
            RingKind::Duplication { a, submodule }
        }
        other => return err(format!("unknown ring kind `{other}`")),
    };
    let ring = RingDescriptor::with_flags(kind, &flags);
    ring.validate()
        .map_err(|e| ParseError(format!("invalid descriptor: {e}")))?;
    Ok(ring)
}

fn build_hom(doc: &HomDoc) -> PResult<HomDescriptor> {
    let kind = match doc.kind.as_str() {
        "Identity" => HomKind::Identity,
        "InclusionIntoDPlusM" => HomKind::InclusionIntoDPlusM,
        "InclusionIntoOverring" => HomKind::InclusionIntoOverring,
        "PolynomialEvalAtZero" => HomKind::PolynomialEvalAtZero,
        "LeftFactorIntoProduct" => HomKind::LeftFactorIntoProduct,
        other => return err(format!("unknown hom kind `{other}`")),
    };
    let default_injective = !matches!(kind, HomKind::PolynomialEvalAtZero);
    Ok(HomDescriptor::new(
        kind,
        doc.declared_injective.unwrap_or(default_injective),
    ))
}

fn build_ideal(
    doc: &IdealDoc,
    ambient: &Arc<RingDescriptor>,
    default_precision: usize,
) -> PResult<IdealDescriptor> {
    match doc.kind.as_str() {
        "Zero" => Ok(IdealDescriptor::Zero),
        "Whole" => Ok(IdealDescriptor::Whole),
        "PositiveOrder" => Ok(IdealDescriptor::PositiveOrder),
        "MultiplesOf" => {
            let gen = doc
                .generator
                .as_ref()
                .ok_or_else(|| ParseError("MultiplesOf needs `generator`".into()))?;
            Ok(IdealDescriptor::MultiplesOf(parse_element(
                ambient,
                gen,
                default_precision,
            )?))
        }
        other => err(format!("unknown ideal kind `{other}`")),
    }
}

fn parse_bigint(s: &str) -> PResult<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| ParseError(format!("not an integer: `{s}`")))
}

pub fn parse_rational(s: &str) -> PResult<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_bigint(n)?;
            let den = parse_bigint(d)?;
            if den.is_zero() {
                return err(format!("zero denominator in `{s}`"));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from(parse_bigint(s)?)),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesDoc {
    valuation: usize,
    coeffs: Vec<String>,
    #[serde(default)]
    precision: Option<usize>,
    #[serde(default)]
    exact: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AmalgamElemDoc {
    a: serde_json::Value,
    j: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PairElemDoc {
    left: serde_json::Value,
    right: serde_json::Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolyElemDoc {
    coeffs: Vec<String>,
}

/// Parse one element of the given ring from its JSON form: strings for
/// scalars ("p/q" rationals, overring fractions with declared
/// denominators), `{valuation, coeffs, precision}` objects for series,
/// `{coeffs}` for polynomials, `{a, j}` for amalgam elements and
/// `{left, right}` for product pairs.
pub fn parse_element(
    ring: &Arc<RingDescriptor>,
    value: &serde_json::Value,
    default_precision: usize,
) -> PResult<RingValue> {
    let payload = parse_payload(ring, value, default_precision)?;
    RingValue::new(ring.clone(), payload)
        .map_err(|e| ParseError(format!("element does not fit ring {ring}: {e}")))
}

fn parse_payload(
    ring: &Arc<RingDescriptor>,
    value: &serde_json::Value,
    default_precision: usize,
) -> PResult<Payload> {
    match &ring.kind {
        RingKind::Integers => match value.as_str() {
            Some(s) => Ok(Payload::Int(parse_bigint(s)?)),
            None => err("integer elements are strings"),
        },
        RingKind::Rationals => match value.as_str() {
            Some(s) => Ok(Payload::Rat(parse_rational(s)?)),
            None => err("rational elements are strings like \"p/q\""),
        },
        RingKind::PolynomialOverRationals => {
            let doc: PolyElemDoc = serde_json::from_value(value.clone())
                .map_err(|e| ParseError(format!("polynomial element: {e}")))?;
            let coeffs = doc
                .coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<PResult<Vec<_>>>()?;
            Ok(Payload::Poly(Polynomial::new(coeffs)))
        }
        RingKind::TruncatedSeries { precision, .. } | RingKind::DPlusM { precision, .. } => {
            let doc: SeriesDoc = serde_json::from_value(value.clone())
                .map_err(|e| ParseError(format!("series element: {e}")))?;
            let prec = doc.precision.unwrap_or(if *precision > 0 {
                *precision
            } else {
                default_precision
            });
            let coeffs = doc
                .coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<PResult<Vec<_>>>()?;
            if coeffs.iter().all(|c| c.is_zero()) {
                // an explicitly written zero is exact unless marked otherwise
                return Ok(Payload::Series(if doc.exact.unwrap_or(true) {
                    SeriesValue::ExactZero
                } else {
                    SeriesValue::zero_to_precision(prec)
                }));
            }
            Ok(Payload::Series(SeriesValue::window(
                doc.valuation,
                coeffs,
                prec,
            )))
        }
        RingKind::Overring { base, denominators } => {
            let s = value
                .as_str()
                .ok_or_else(|| ParseError("overring elements are strings like \"p/q\"".into()))?;
            parse_overring_fraction(base, denominators, s)
        }
        RingKind::Product { left, right } => {
            let doc: PairElemDoc = serde_json::from_value(value.clone())
                .map_err(|e| ParseError(format!("product element: {e}")))?;
            Ok(Payload::Pair(
                Box::new(parse_payload(left, &doc.left, default_precision)?),
                Box::new(parse_payload(right, &doc.right, default_precision)?),
            ))
        }
        RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            let doc: AmalgamElemDoc = serde_json::from_value(value.clone())
                .map_err(|e| ParseError(format!("amalgam element ({{\"a\":…,\"j\":…}}): {e}")))?;
            let a = parse_element(&view.left, &doc.a, default_precision)?;
            let j = parse_element(&view.right, &doc.j, default_precision)?;
            let elem = amalgam::amalgam::make(ring, &a, &j)
                .map_err(|e| ParseError(format!("amalgam element rejected: {e}")))?;
            Ok(elem.into_payload())
        }
    }
}

/// Overring fractions come as "p/q"; the denominator must factor over the
/// declared generators.
fn parse_overring_fraction(
    base: &Arc<RingDescriptor>,
    generators: &[RingValue],
    s: &str,
) -> PResult<Payload> {
    let (num_s, den_s) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = match base.kind {
        RingKind::Integers => Payload::Int(parse_bigint(num_s)?),
        _ => return err("only integer-based overrings are parsed from strings"),
    };
    let mut exps = vec![0u32; generators.len()];
    if let Some(den_s) = den_s {
        let mut den = parse_bigint(den_s)?;
        if den.is_zero() {
            return err("zero denominator");
        }
        for (i, g) in generators.iter().enumerate() {
            let g = g.payload().as_int().map_err(|e| ParseError(e.to_string()))?;
            loop {
                use num_integer::Integer;
                let (q, r) = den.div_rem(g);
                if r.is_zero() && !q.is_zero() {
                    den = q;
                    exps[i] += 1;
                } else {
                    break;
                }
            }
        }
        use num_traits::Signed;
        if den.abs() != BigInt::from(1) {
            return err(format!(
                "denominator `{den_s}` does not factor over the declared generators"
            ));
        }
        if den == BigInt::from(-1) {
            let n = match num {
                Payload::Int(n) => n,
                _ => unreachable!(),
            };
            return Ok(Payload::Fraction(FractionValue {
                num: Box::new(Payload::Int(-n)),
                den: exps,
            }));
        }
    }
    Ok(Payload::Fraction(FractionValue {
        num: Box::new(num),
        den: exps,
    }))
}
