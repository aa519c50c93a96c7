//! Ring arithmetic, dispatched on the descriptor kind.
//!
//! Pair-shaped rings (products, amalgamations, duplications) compute
//! componentwise; the membership invariant of amalgam elements is
//! preserved automatically because ideals are closed under addition and
//! ambient multiplication.

use std::sync::Arc;

use crate::descriptor::{RingDescriptor, RingKind};
use crate::error::{Result, RingError};
use crate::overring;
use crate::value::{EqOutcome, Payload, RingValue};

pub fn add(x: &RingValue, y: &RingValue) -> Result<RingValue> {
    x.require_same_ring(y)?;
    let payload = payload_add(x.ring(), x.payload(), y.payload())?;
    Ok(RingValue::raw(x.ring().clone(), payload))
}

pub fn sub(x: &RingValue, y: &RingValue) -> Result<RingValue> {
    add(x, &neg(y))
}

pub fn neg(x: &RingValue) -> RingValue {
    RingValue::raw(x.ring().clone(), payload_neg(x.ring(), x.payload()))
}

pub fn mul(x: &RingValue, y: &RingValue) -> Result<RingValue> {
    x.require_same_ring(y)?;
    let payload = payload_mul(x.ring(), x.payload(), y.payload())?;
    Ok(RingValue::raw(x.ring().clone(), payload))
}

/// Semantic equality: exact for exact payloads, to-precision for series
/// tails, cross-multiplied for overring fractions.
pub fn values_equal(x: &RingValue, y: &RingValue) -> Result<EqOutcome> {
    x.require_same_ring(y)?;
    payload_eq(x.ring(), x.payload(), y.payload())
}

pub(crate) fn payload_add(
    ring: &Arc<RingDescriptor>,
    x: &Payload,
    y: &Payload,
) -> Result<Payload> {
    match &ring.kind {
        RingKind::Integers => Ok(Payload::Int(x.as_int()? + y.as_int()?)),
        RingKind::Rationals => Ok(Payload::Rat(x.as_rat()? + y.as_rat()?)),
        RingKind::PolynomialOverRationals => Ok(Payload::Poly(x.as_poly()?.add(y.as_poly()?))),
        RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. } => {
            Ok(Payload::Series(x.as_series()?.add(y.as_series()?)))
        }
        RingKind::Overring { .. } => Ok(Payload::Fraction(overring::fraction_add(
            ring,
            x.as_fraction()?,
            y.as_fraction()?,
        )?)),
        _ => {
            let view = ring.pair_view().expect("pair ring");
            let (xa, xb) = x.as_pair()?;
            let (ya, yb) = y.as_pair()?;
            Ok(Payload::Pair(
                Box::new(payload_add(&view.left, xa, ya)?),
                Box::new(payload_add(&view.right, xb, yb)?),
            ))
        }
    }
}

pub(crate) fn payload_neg(ring: &Arc<RingDescriptor>, x: &Payload) -> Payload {
    match (&ring.kind, x) {
        (RingKind::Integers, Payload::Int(n)) => Payload::Int(-n),
        (RingKind::Rationals, Payload::Rat(r)) => Payload::Rat(-r),
        (RingKind::PolynomialOverRationals, Payload::Poly(p)) => Payload::Poly(p.neg()),
        (RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. }, Payload::Series(s)) => {
            Payload::Series(s.neg())
        }
        (RingKind::Overring { base, .. }, Payload::Fraction(f)) => {
            Payload::Fraction(crate::value::FractionValue {
                num: Box::new(payload_neg(base, &f.num)),
                den: f.den.clone(),
            })
        }
        (_, Payload::Pair(a, b)) => {
            let view = ring.pair_view().expect("pair ring");
            Payload::Pair(
                Box::new(payload_neg(&view.left, a)),
                Box::new(payload_neg(&view.right, b)),
            )
        }
        _ => unreachable!("payload shape checked on construction"),
    }
}

pub(crate) fn payload_mul(
    ring: &Arc<RingDescriptor>,
    x: &Payload,
    y: &Payload,
) -> Result<Payload> {
    match &ring.kind {
        RingKind::Integers => Ok(Payload::Int(x.as_int()? * y.as_int()?)),
        RingKind::Rationals => Ok(Payload::Rat(x.as_rat()? * y.as_rat()?)),
        RingKind::PolynomialOverRationals => Ok(Payload::Poly(x.as_poly()?.mul(y.as_poly()?))),
        RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. } => {
            Ok(Payload::Series(x.as_series()?.mul(y.as_series()?)))
        }
        RingKind::Overring { .. } => Ok(Payload::Fraction(overring::fraction_mul(
            ring,
            x.as_fraction()?,
            y.as_fraction()?,
        )?)),
        _ => {
            let view = ring.pair_view().expect("pair ring");
            let (xa, xb) = x.as_pair()?;
            let (ya, yb) = y.as_pair()?;
            Ok(Payload::Pair(
                Box::new(payload_mul(&view.left, xa, ya)?),
                Box::new(payload_mul(&view.right, xb, yb)?),
            ))
        }
    }
}

pub(crate) fn payload_eq(
    ring: &Arc<RingDescriptor>,
    x: &Payload,
    y: &Payload,
) -> Result<EqOutcome> {
    match &ring.kind {
        RingKind::Integers => Ok(exact_eq(x.as_int()? == y.as_int()?)),
        RingKind::Rationals => Ok(exact_eq(x.as_rat()? == y.as_rat()?)),
        RingKind::PolynomialOverRationals => Ok(exact_eq(x.as_poly()? == y.as_poly()?)),
        RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. } => Ok(EqOutcome::from_series(
            x.as_series()?.eq(y.as_series()?),
        )),
        RingKind::Overring { .. } => {
            overring::fraction_eq(ring, x.as_fraction()?, y.as_fraction()?)
        }
        _ => {
            let view = ring.pair_view().expect("pair ring");
            let (xa, xb) = x.as_pair()?;
            let (ya, yb) = y.as_pair()?;
            let left = payload_eq(&view.left, xa, ya)?;
            let right = payload_eq(&view.right, xb, yb)?;
            Ok(left.combine(right))
        }
    }
}

fn exact_eq(eq: bool) -> EqOutcome {
    if eq {
        EqOutcome::Exact
    } else {
        EqOutcome::Distinct
    }
}

/// Left and right components of a pair-ring value, as values of the
/// component rings.
pub fn split_pair(x: &RingValue) -> Result<(RingValue, RingValue)> {
    let view = x
        .ring()
        .pair_view()
        .ok_or_else(|| RingError::PayloadMismatch("not a pair ring".into()))?;
    let (a, b) = x.payload().as_pair()?;
    Ok((
        RingValue::raw(view.left.clone(), a.clone()),
        RingValue::raw(view.right.clone(), b.clone()),
    ))
}

/// Assemble a pair-ring value from component values. Shape is checked;
/// the amalgam membership invariant is the caller's business (use
/// `amalgam::make` to establish it from `(a, j)` data).
pub fn join_pair(ring: &Arc<RingDescriptor>, left: RingValue, right: RingValue) -> Result<RingValue> {
    let view = ring
        .pair_view()
        .ok_or_else(|| RingError::PayloadMismatch("not a pair ring".into()))?;
    if !left.ring().same_structure(&view.left) || !right.ring().same_structure(&view.right) {
        return Err(RingError::MixedRings);
    }
    Ok(RingValue::raw(
        ring.clone(),
        Payload::Pair(
            Box::new(left.into_payload()),
            Box::new(right.into_payload()),
        ),
    ))
}
