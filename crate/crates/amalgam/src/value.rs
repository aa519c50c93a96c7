//! Exact elements of described rings.
//!
//! A `RingValue` pairs a descriptor with a construction-specific payload:
//! arbitrary-precision integers, reduced fractions, dense rational
//! polynomials, truncated series, pairs (products, amalgamations,
//! duplications) and factored fractions (overrings). All arithmetic is
//! exact except series tails, which carry explicit precision.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::descriptor::{RingDescriptor, RingKind};
use crate::error::{Result, RingError};
use crate::poly::{format_rational, rational_is_integral, Polynomial};
use crate::series::{SeriesEq, SeriesValue};

/// Overring element: a base-ring numerator over a factored denominator,
/// `den[i]` being the exponent of the i-th declared denominator generator.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionValue {
    pub num: Box<Payload>,
    pub den: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Payload {
    Int(BigInt),
    Rat(BigRational),
    Poly(Polynomial),
    Series(SeriesValue),
    Pair(Box<Payload>, Box<Payload>),
    Fraction(FractionValue),
}

impl Payload {
    /// Provably the zero element. A series window with unknown tail is not
    /// provably zero and reports false.
    pub fn is_zero_payload(&self) -> bool {
        match self {
            Payload::Int(n) => n.is_zero(),
            Payload::Rat(r) => r.is_zero(),
            Payload::Poly(p) => p.is_zero(),
            Payload::Series(s) => s.is_exactly_zero(),
            Payload::Pair(a, b) => a.is_zero_payload() && b.is_zero_payload(),
            Payload::Fraction(f) => f.num.is_zero_payload(),
        }
    }

    /// Zero as far as the known coefficients go; coincides with
    /// `is_zero_payload` away from series.
    pub fn is_zero_to_precision(&self) -> bool {
        match self {
            Payload::Series(s) => s.is_zero_to_known_precision(),
            Payload::Pair(a, b) => a.is_zero_to_precision() && b.is_zero_to_precision(),
            Payload::Fraction(f) => f.num.is_zero_to_precision(),
            _ => self.is_zero_payload(),
        }
    }

    pub fn as_int(&self) -> Result<&BigInt> {
        match self {
            Payload::Int(n) => Ok(n),
            _ => Err(RingError::PayloadMismatch("expected an integer".into())),
        }
    }

    pub fn as_rat(&self) -> Result<&BigRational> {
        match self {
            Payload::Rat(r) => Ok(r),
            _ => Err(RingError::PayloadMismatch("expected a rational".into())),
        }
    }

    pub fn as_poly(&self) -> Result<&Polynomial> {
        match self {
            Payload::Poly(p) => Ok(p),
            _ => Err(RingError::PayloadMismatch("expected a polynomial".into())),
        }
    }

    pub fn as_series(&self) -> Result<&SeriesValue> {
        match self {
            Payload::Series(s) => Ok(s),
            _ => Err(RingError::PayloadMismatch("expected a series".into())),
        }
    }

    pub fn as_pair(&self) -> Result<(&Payload, &Payload)> {
        match self {
            Payload::Pair(a, b) => Ok((a, b)),
            _ => Err(RingError::PayloadMismatch("expected a pair".into())),
        }
    }

    pub fn as_fraction(&self) -> Result<&FractionValue> {
        match self {
            Payload::Fraction(f) => Ok(f),
            _ => Err(RingError::PayloadMismatch("expected a fraction".into())),
        }
    }

    pub fn to_display_string(&self) -> String {
        match self {
            Payload::Int(n) => n.to_string(),
            Payload::Rat(r) => format_rational(r),
            Payload::Poly(p) => p.to_display_string(),
            Payload::Series(s) => s.to_display_string(),
            Payload::Pair(a, b) => {
                format!("({}, {})", a.to_display_string(), b.to_display_string())
            }
            Payload::Fraction(f) => {
                if f.den.iter().all(|&e| e == 0) {
                    f.num.to_display_string()
                } else {
                    format!(
                        "{} / gens^{:?}",
                        f.num.to_display_string(),
                        f.den.iter().collect::<Vec<_>>()
                    )
                }
            }
        }
    }
}

/// Outcome of comparing two values: exact equality, equality at every
/// verified coefficient up to a precision, or a witnessed difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqOutcome {
    Exact,
    ToPrecision(usize),
    Distinct,
}

impl EqOutcome {
    pub fn holds(&self) -> bool {
        !matches!(self, EqOutcome::Distinct)
    }

    /// Combine componentwise outcomes: any difference wins, otherwise the
    /// weakest precision wins.
    pub fn combine(self, other: EqOutcome) -> EqOutcome {
        match (self, other) {
            (EqOutcome::Distinct, _) | (_, EqOutcome::Distinct) => EqOutcome::Distinct,
            (EqOutcome::Exact, o) => o,
            (o, EqOutcome::Exact) => o,
            (EqOutcome::ToPrecision(a), EqOutcome::ToPrecision(b)) => {
                EqOutcome::ToPrecision(a.min(b))
            }
        }
    }

    pub fn from_series(eq: SeriesEq) -> EqOutcome {
        match eq {
            SeriesEq::Exact => EqOutcome::Exact,
            SeriesEq::ToPrecision(p) => EqOutcome::ToPrecision(p),
            SeriesEq::Distinct => EqOutcome::Distinct,
        }
    }
}

/// An exact element of a described ring.
#[derive(Debug, Clone, PartialEq)]
pub struct RingValue {
    ring: Arc<RingDescriptor>,
    payload: Payload,
}

impl RingValue {
    /// Construct with shape validation: the payload form must match the
    /// ring kind (recursively), and D+M constant terms must be integral
    /// over an integer base. Ideal-membership invariants of amalgam
    /// elements are checked by `amalgam::make`, not here.
    pub fn new(ring: Arc<RingDescriptor>, payload: Payload) -> Result<RingValue> {
        check_shape(&ring, &payload)?;
        Ok(RingValue { ring, payload })
    }

    /// Internal constructor for payloads produced by ring operations,
    /// which preserve shape by construction.
    pub(crate) fn raw(ring: Arc<RingDescriptor>, payload: Payload) -> RingValue {
        debug_assert!(check_shape(&ring, &payload).is_ok());
        RingValue { ring, payload }
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn into_payload(self) -> Payload {
        self.payload
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero_payload()
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.payload.is_zero_to_precision()
    }

    pub fn zero(ring: &Arc<RingDescriptor>) -> RingValue {
        RingValue::raw(ring.clone(), zero_payload(ring))
    }

    pub fn one(ring: &Arc<RingDescriptor>) -> RingValue {
        RingValue::from_int(ring, BigInt::one())
    }

    /// The canonical image of an integer: every unital ring receives `n`
    /// as `n * 1`, so this is well defined for all supported kinds.
    pub fn from_int(ring: &Arc<RingDescriptor>, n: BigInt) -> RingValue {
        RingValue::raw(ring.clone(), int_payload(ring, n))
    }

    pub fn from_i64(ring: &Arc<RingDescriptor>, n: i64) -> RingValue {
        RingValue::from_int(ring, BigInt::from(n))
    }

    pub fn same_ring(&self, other: &RingValue) -> bool {
        self.ring.same_structure(&other.ring)
    }

    pub fn require_same_ring(&self, other: &RingValue) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(RingError::MixedRings)
        }
    }

    pub fn to_display_string(&self) -> String {
        match (&self.ring.kind, &self.payload) {
            (RingKind::Overring { denominators, .. }, Payload::Fraction(f)) => {
                let num = f.num.to_display_string();
                let dens: Vec<String> = f
                    .den
                    .iter()
                    .zip(denominators.iter())
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, g)| {
                        let g = g.payload().to_display_string();
                        if *e == 1 {
                            g
                        } else {
                            format!("{g}^{e}")
                        }
                    })
                    .collect();
                if dens.is_empty() {
                    num
                } else {
                    format!("{num}/({})", dens.join("*"))
                }
            }
            _ => self.payload.to_display_string(),
        }
    }
}

fn zero_payload(ring: &Arc<RingDescriptor>) -> Payload {
    match &ring.kind {
        RingKind::Integers => Payload::Int(BigInt::zero()),
        RingKind::Rationals => Payload::Rat(BigRational::zero()),
        RingKind::PolynomialOverRationals => Payload::Poly(Polynomial::zero()),
        RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. } => {
            Payload::Series(SeriesValue::ExactZero)
        }
        RingKind::Overring { denominators, .. } => Payload::Fraction(FractionValue {
            num: Box::new(zero_payload(match &ring.kind {
                RingKind::Overring { base, .. } => base,
                _ => unreachable!(),
            })),
            den: vec![0; denominators.len()],
        }),
        RingKind::Product { .. } | RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            Payload::Pair(
                Box::new(zero_payload(&view.left)),
                Box::new(zero_payload(&view.right)),
            )
        }
    }
}

fn int_payload(ring: &Arc<RingDescriptor>, n: BigInt) -> Payload {
    match &ring.kind {
        RingKind::Integers => Payload::Int(n),
        RingKind::Rationals => Payload::Rat(BigRational::from(n)),
        RingKind::PolynomialOverRationals => {
            Payload::Poly(Polynomial::constant(BigRational::from(n)))
        }
        RingKind::TruncatedSeries { precision, .. } | RingKind::DPlusM { precision, .. } => {
            if n.is_zero() {
                Payload::Series(SeriesValue::ExactZero)
            } else {
                Payload::Series(SeriesValue::constant(BigRational::from(n), *precision))
            }
        }
        RingKind::Overring { base, denominators } => Payload::Fraction(FractionValue {
            num: Box::new(int_payload(base, n)),
            den: vec![0; denominators.len()],
        }),
        RingKind::Product { .. } | RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            Payload::Pair(
                Box::new(int_payload(&view.left, n.clone())),
                Box::new(int_payload(&view.right, n)),
            )
        }
    }
}

// values and descriptors are immutable and freely shareable across threads
const _: () = {
    const fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<RingValue>();
    assert_send_sync::<RingDescriptor>();
};

fn check_shape(ring: &Arc<RingDescriptor>, payload: &Payload) -> Result<()> {
    match (&ring.kind, payload) {
        (RingKind::Integers, Payload::Int(_)) => Ok(()),
        (RingKind::Rationals, Payload::Rat(_)) => Ok(()),
        (RingKind::PolynomialOverRationals, Payload::Poly(_)) => Ok(()),
        (RingKind::TruncatedSeries { .. }, Payload::Series(_)) => Ok(()),
        (RingKind::DPlusM { base, .. }, Payload::Series(s)) => {
            if matches!(base.kind, RingKind::Integers) {
                if let Some(c0) = s.known_coeff(0) {
                    if !c0.is_zero() && !rational_is_integral(&c0) {
                        return Err(RingError::PayloadMismatch(
                            "constant term of a D+M element must lie in the base domain".into(),
                        ));
                    }
                }
            }
            Ok(())
        }
        (RingKind::Overring { base, denominators }, Payload::Fraction(f)) => {
            if f.den.len() != denominators.len() {
                return Err(RingError::PayloadMismatch(
                    "fraction denominator exponents do not match the declared generators".into(),
                ));
            }
            check_shape(base, &f.num)
        }
        (
            RingKind::Product { .. } | RingKind::Amalgamation { .. } | RingKind::Duplication { .. },
            Payload::Pair(a, b),
        ) => {
            let view = ring.pair_view().expect("pair ring");
            check_shape(&view.left, a)?;
            check_shape(&view.right, b)
        }
        _ => Err(RingError::PayloadMismatch(format!(
            "payload does not fit ring {ring}"
        ))),
    }
}

