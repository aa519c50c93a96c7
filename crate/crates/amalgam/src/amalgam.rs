//! The amalgamation `{ (a, f(a)+j) }` as a computable ring: element
//! construction, the explicit inverse, divisibility, and the projection
//! isomorphism onto the image ring `f(A)+J` available when `f` is
//! injective and `f(A)` meets the ideal only in zero.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;
use crate::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingDescriptor, RingKind};
use crate::error::{Result, RingError};
use crate::ideal::{ideal_contains, ideal_is_whole_like};
use crate::ops;
use crate::poly::rational_is_integral;
use crate::series::SeriesValue;
use crate::value::{FractionValue, Payload, RingValue};

/// The canonical embedding behind the inclusion-style homomorphisms.
pub fn canonical_embed(x: &RingValue, to: &Arc<RingDescriptor>) -> Result<RingValue> {
    if x.ring().same_structure(to) {
        return Ok(RingValue::raw(to.clone(), x.payload().clone()));
    }
    match (&x.ring().kind, &to.kind) {
        (RingKind::Integers, RingKind::Rationals) => Ok(RingValue::raw(
            to.clone(),
            Payload::Rat(BigRational::from(x.payload().as_int()?.clone())),
        )),
        (RingKind::Integers | RingKind::Rationals, RingKind::TruncatedSeries { precision, .. }) => {
            Ok(constant_series(to, x, *precision))
        }
        (_, RingKind::DPlusM { base, precision }) if x.ring().same_structure(base) => {
            Ok(constant_series(to, x, *precision))
        }
        (_, RingKind::Overring { base, denominators }) if x.ring().same_structure(base) => {
            Ok(RingValue::raw(
                to.clone(),
                Payload::Fraction(FractionValue {
                    num: Box::new(x.payload().clone()),
                    den: vec![0; denominators.len()],
                }),
            ))
        }
        _ => Err(RingError::InvalidDescriptor(format!(
            "no canonical embedding of {} into {}",
            x.ring(),
            to
        ))),
    }
}

fn constant_series(to: &Arc<RingDescriptor>, x: &RingValue, precision: usize) -> RingValue {
    let c = match x.payload() {
        Payload::Int(n) => BigRational::from(n.clone()),
        Payload::Rat(r) => r.clone(),
        _ => unreachable!("embedding checked by caller"),
    };
    let series = if c.is_zero() {
        SeriesValue::ExactZero
    } else {
        SeriesValue::constant(c, precision)
    };
    RingValue::raw(to.clone(), Payload::Series(series))
}

/// Evaluate the described homomorphism on a domain element.
pub fn apply_hom(
    hom: &HomDescriptor,
    a_ring: &Arc<RingDescriptor>,
    b_ring: &Arc<RingDescriptor>,
    x: &RingValue,
) -> Result<RingValue> {
    if !x.ring().same_structure(a_ring) {
        return Err(RingError::MixedRings);
    }
    match hom.kind {
        HomKind::Identity => Ok(RingValue::raw(b_ring.clone(), x.payload().clone())),
        HomKind::IntoFractionField
        | HomKind::InclusionIntoDPlusM
        | HomKind::InclusionIntoOverring => canonical_embed(x, b_ring),
        HomKind::PolynomialEvalAtZero => Ok(RingValue::raw(
            b_ring.clone(),
            Payload::Rat(x.payload().as_poly()?.eval_at_zero()),
        )),
        HomKind::LeftFactorIntoProduct => {
            let (left, right) = match &b_ring.kind {
                RingKind::Product { left, right } => (left, right),
                _ => {
                    return Err(RingError::InvalidDescriptor(
                        "left-factor hom needs a product codomain".into(),
                    ))
                }
            };
            let l = RingValue::raw(left.clone(), x.payload().clone());
            let r = canonical_embed(x, right)?;
            arith::join_pair(b_ring, l, r)
        }
    }
}

/// Partial inverse, defined exactly on the image. `Ok(None)` means the
/// element is not (visibly) in the image.
pub fn hom_preimage(
    hom: &HomDescriptor,
    a_ring: &Arc<RingDescriptor>,
    b_ring: &Arc<RingDescriptor>,
    y: &RingValue,
) -> Result<Option<RingValue>> {
    if !y.ring().same_structure(b_ring) {
        return Err(RingError::MixedRings);
    }
    match hom.kind {
        HomKind::Identity => Ok(Some(RingValue::raw(a_ring.clone(), y.payload().clone()))),
        HomKind::IntoFractionField => {
            let r = y.payload().as_rat()?;
            Ok(if rational_is_integral(r) {
                Some(RingValue::from_int(a_ring, r.numer().clone()))
            } else {
                None
            })
        }
        HomKind::InclusionIntoDPlusM => {
            let s = y.payload().as_series()?;
            if !crate::dplusm::is_constant_to_precision(s) {
                return Ok(None);
            }
            let c = s.known_coeff(0).unwrap_or_else(BigRational::zero);
            constant_preimage(a_ring, &c)
        }
        HomKind::InclusionIntoOverring => {
            let f = y.payload().as_fraction()?;
            let reduced = crate::overring::reduce(b_ring, f.clone())?;
            Ok(if reduced.den.iter().all(|&e| e == 0) {
                Some(RingValue::raw(a_ring.clone(), *reduced.num))
            } else {
                None
            })
        }
        HomKind::PolynomialEvalAtZero => {
            // the canonical section: constant polynomials
            let c = y.payload().as_rat()?;
            Ok(Some(RingValue::raw(
                a_ring.clone(),
                Payload::Poly(crate::poly::Polynomial::constant(c.clone())),
            )))
        }
        HomKind::LeftFactorIntoProduct => {
            let (l, r) = y.payload().as_pair()?;
            let (left, right) = match &b_ring.kind {
                RingKind::Product { left, right } => (left, right),
                _ => return Err(RingError::InvalidDescriptor("product codomain".into())),
            };
            let candidate = RingValue::raw(a_ring.clone(), l.clone());
            let expected = canonical_embed(&RingValue::raw(left.clone(), l.clone()), right)?;
            let actual = RingValue::raw(right.clone(), r.clone());
            Ok(if arith::values_equal(&expected, &actual)?.holds() {
                Some(candidate)
            } else {
                None
            })
        }
    }
}

fn constant_preimage(a_ring: &Arc<RingDescriptor>, c: &BigRational) -> Result<Option<RingValue>> {
    match a_ring.kind {
        RingKind::Integers => Ok(if rational_is_integral(c) {
            Some(RingValue::from_int(a_ring, c.numer().clone()))
        } else {
            None
        }),
        RingKind::Rationals => Ok(Some(RingValue::raw(
            a_ring.clone(),
            Payload::Rat(c.clone()),
        ))),
        _ => Ok(None),
    }
}

struct Glued {
    left: Arc<RingDescriptor>,
    right: Arc<RingDescriptor>,
    hom: HomDescriptor,
    ideal: IdealDescriptor,
    meets_declared: Option<bool>,
    image_declared: Option<Arc<RingDescriptor>>,
}

fn glued(ring: &Arc<RingDescriptor>) -> Result<Glued> {
    let view = ring.pair_view().ok_or_else(|| {
        RingError::PayloadMismatch("expected an amalgamation or duplication".into())
    })?;
    let glue = view.glue.ok_or_else(|| {
        RingError::PayloadMismatch("plain products carry no amalgamation structure".into())
    })?;
    Ok(Glued {
        left: view.left,
        right: view.right,
        hom: glue.hom,
        ideal: glue.ideal,
        meets_declared: glue.meets_ideal_zero,
        image_declared: glue.image,
    })
}

/// Build `(a, f(a)+j)`, checking `j` against the ideal.
pub fn make(ring: &Arc<RingDescriptor>, a: &RingValue, j: &RingValue) -> Result<RingValue> {
    let g = glued(ring)?;
    if !a.ring().same_structure(&g.left) || !j.ring().same_structure(&g.right) {
        return Err(RingError::MixedRings);
    }
    if !ideal_contains(&g.ideal, &g.right, j)? {
        return Err(RingError::NotInIdeal);
    }
    let fa = apply_hom(&g.hom, &g.left, &g.right, a)?;
    let right = arith::add(&fa, j)?;
    arith::join_pair(ring, a.clone(), right)
}

/// Accept a raw pair `(a, b)` as an amalgam element iff `b - f(a)` lies in
/// the ideal.
pub fn from_pair(ring: &Arc<RingDescriptor>, a: &RingValue, b: &RingValue) -> Result<RingValue> {
    let defect = membership_defect_parts(ring, a, b)?;
    let g = glued(ring)?;
    if !ideal_contains(&g.ideal, &g.right, &defect)? {
        return Err(RingError::NotInIdeal);
    }
    arith::join_pair(ring, a.clone(), b.clone())
}

/// `right - f(left)`, the element that must lie in the ideal.
pub fn membership_defect(u: &RingValue) -> Result<RingValue> {
    let (a, b) = arith::split_pair(u)?;
    membership_defect_parts(u.ring(), &a, &b)
}

fn membership_defect_parts(
    ring: &Arc<RingDescriptor>,
    a: &RingValue,
    b: &RingValue,
) -> Result<RingValue> {
    let g = glued(ring)?;
    let fa = apply_hom(&g.hom, &g.left, &g.right, a)?;
    arith::sub(b, &fa)
}

/// Does the membership invariant hold (exactly, or to precision)?
pub fn check_membership(u: &RingValue) -> Result<bool> {
    let g = glued(u.ring())?;
    let defect = membership_defect(u)?;
    ideal_contains(&g.ideal, &g.right, &defect)
}

/// The explicit inverse: for `u = (a, f(a)+j)` with both components
/// units, `u^-1 = (a^-1, f(a^-1) + x)` where
/// `x = -f(a^-1) (f(a)+j)^-1 j` lies in the ideal.
pub fn invert(u: &RingValue) -> Result<Option<RingValue>> {
    let g = glued(u.ring())?;
    let (a, b) = arith::split_pair(u)?;
    let a_inv = match ops::unit_inverse(&a)? {
        Some(v) => v,
        None => return Ok(None),
    };
    let b_inv = match ops::unit_inverse(&b)? {
        Some(v) => v,
        None => return Ok(None),
    };
    let fa_inv = apply_hom(&g.hom, &g.left, &g.right, &a_inv)?;
    let j = arith::sub(&b, &apply_hom(&g.hom, &g.left, &g.right, &a)?)?;
    let x = arith::neg(&arith::mul(&arith::mul(&fa_inv, &b_inv)?, &j)?);
    let right = arith::add(&fa_inv, &x)?;
    Ok(Some(arith::join_pair(u.ring(), a_inv, right)?))
}

/// Declared or structurally derived answer to "does f(A) meet the ideal
/// only in zero?". `None` when neither declaration nor structure decides.
pub fn meets_ideal_zero(ring: &Arc<RingDescriptor>) -> Option<bool> {
    let g = glued(ring).ok()?;
    if let Some(declared) = g.meets_declared {
        return Some(declared);
    }
    if g.ideal.is_structurally_zero() {
        return Some(true);
    }
    if ideal_is_whole_like(&g.ideal, &g.right).unwrap_or(false) {
        return Some(false);
    }
    match g.hom.kind {
        // surjective onto the ambient ring: the meet is the ideal itself
        HomKind::Identity | HomKind::PolynomialEvalAtZero => Some(false),
        HomKind::InclusionIntoDPlusM => match &g.ideal {
            IdealDescriptor::PositiveOrder => Some(true),
            IdealDescriptor::MultiplesOf(gen) => {
                match gen.payload().as_series().ok()?.valuation() {
                    crate::series::Valuation::Exact(v) if v >= 1 => Some(true),
                    _ => None,
                }
            }
            _ => None,
        },
        // a nonzero ideal of an overring or fraction field meets the base
        HomKind::InclusionIntoOverring | HomKind::IntoFractionField => Some(false),
        HomKind::LeftFactorIntoProduct => match &g.ideal {
            IdealDescriptor::MultiplesOf(gen) => {
                let (g1, g2) = gen.payload().as_pair().ok()?;
                Some(g1.is_zero_payload() || g2.is_zero_payload())
            }
            _ => None,
        },
    }
}

/// Declared or structurally derived descriptor for the image ring
/// `f(A)+J`. Derived descriptors carry no semantic flags.
pub fn image_ring(ring: &Arc<RingDescriptor>) -> Option<Arc<RingDescriptor>> {
    let g = glued(ring).ok()?;
    if let Some(img) = g.image_declared {
        return Some(img);
    }
    if g.ideal.is_structurally_zero() {
        return Some(g.left);
    }
    match g.hom.kind {
        // surjective: f(A)+J = B
        HomKind::Identity | HomKind::PolynomialEvalAtZero => Some(g.right),
        HomKind::InclusionIntoDPlusM => match (&g.ideal, &g.right.kind) {
            (IdealDescriptor::PositiveOrder, RingKind::TruncatedSeries { precision, .. }) => {
                Some(RingDescriptor::new(RingKind::DPlusM {
                    base: g.left,
                    precision: *precision,
                }))
            }
            (IdealDescriptor::PositiveOrder, RingKind::DPlusM { .. }) => Some(g.right),
            _ => None,
        },
        _ => None,
    }
}

/// Is the projection isomorphism onto `f(A)+J` available: injective hom,
/// trivial meet, and a known image ring?
pub fn iso_available(ring: &Arc<RingDescriptor>) -> bool {
    match glued(ring) {
        Ok(g) => {
            g.hom.injective
                && meets_ideal_zero(ring) == Some(true)
                && image_ring(ring).is_some()
        }
        Err(_) => false,
    }
}

/// The projection `(a, f(a)+j) -> f(a)+j` into the image ring.
pub fn iso_to_target(u: &RingValue) -> Result<RingValue> {
    let ring = u.ring();
    let g = glued(ring)?;
    if !g.hom.injective {
        return Err(RingError::FlagsViolated(
            "projection needs the hom declared injective".into(),
        ));
    }
    if meets_ideal_zero(ring) != Some(true) {
        return Err(RingError::FlagsViolated(
            "projection needs f(A) to meet the ideal only in zero".into(),
        ));
    }
    let target = image_ring(ring).ok_or_else(|| {
        RingError::FlagsViolated("no declared or derivable image ring".into())
    })?;
    let (a, b) = arith::split_pair(u)?;
    if target.same_structure(b.ring()) {
        return Ok(RingValue::raw(target, b.into_payload()));
    }
    if target.same_structure(a.ring()) && g.ideal.is_structurally_zero() {
        return Ok(RingValue::raw(target, a.into_payload()));
    }
    // e.g. a series payload recast from K[[x]] into A+xK[[x]]
    RingValue::new(target, b.into_payload())
}

/// Recover `(a, f(a)+j)` from an image element: the decomposition is
/// unique because `f(A)` meets the ideal only in zero.
pub fn iso_from_target(ring: &Arc<RingDescriptor>, y: &RingValue) -> Result<RingValue> {
    let g = glued(ring)?;
    if !g.hom.injective || meets_ideal_zero(ring) != Some(true) {
        return Err(RingError::FlagsViolated(
            "inverse projection needs an injective hom and trivial meet".into(),
        ));
    }
    let target = image_ring(ring).ok_or_else(|| {
        RingError::FlagsViolated("no declared or derivable image ring".into())
    })?;
    if !y.ring().same_structure(&target) {
        return Err(RingError::MixedRings);
    }
    if g.ideal.is_structurally_zero() {
        let a = if target.same_structure(&g.left) {
            RingValue::raw(g.left.clone(), y.payload().clone())
        } else {
            let as_b = RingValue::raw(g.right.clone(), y.payload().clone());
            hom_preimage(&g.hom, &g.left, &g.right, &as_b)?
                .ok_or(RingError::PreimageUndefined)?
        };
        return make(ring, &a, &RingValue::zero(&g.right));
    }
    if matches!(g.hom.kind, HomKind::InclusionIntoDPlusM) {
        let s = y.payload().as_series()?;
        let c0 = s.known_coeff(0).unwrap_or_else(BigRational::zero);
        let a = constant_preimage(&g.left, &c0)?.ok_or(RingError::PreimageUndefined)?;
        let as_b = RingValue::raw(g.right.clone(), y.payload().clone());
        let fa = apply_hom(&g.hom, &g.left, &g.right, &a)?;
        let j = arith::sub(&as_b, &fa)?;
        if !ideal_contains(&g.ideal, &g.right, &j)? {
            return Err(RingError::PreimageUndefined);
        }
        return make(ring, &a, &j);
    }
    Err(RingError::PreimageUndefined)
}

/// Valuation-style comparability: one of the two divides the other.
pub fn valuation_pair_check(u: &RingValue, v: &RingValue) -> Result<bool> {
    Ok(ops::divides(u, v)? || ops::divides(v, u)?)
}

/// Exact division inside an amalgamation: componentwise quotients plus
/// the membership invariant on the quotient pair. A zero-divisor slot
/// leaves its quotient free; the free slot is solved against the ideal.
pub fn divide_exact_in_amalgam(a: &RingValue, b: &RingValue) -> Result<Option<RingValue>> {
    let ring = a.ring().clone();
    let g = glued(&ring)?;
    let (xa, xb) = arith::split_pair(a)?;
    let (ya, yb) = arith::split_pair(b)?;
    let qa = match ops::component_quotient(&xa, &ya)? {
        Some(q) => q,
        None => return Ok(None),
    };
    let qb = match ops::component_quotient(&xb, &yb)? {
        Some(q) => q,
        None => return Ok(None),
    };
    match (qa, qb) {
        (Some(qa), Some(qb)) => {
            let candidate = arith::join_pair(&ring, qa, qb)?;
            Ok(if check_membership(&candidate)? {
                Some(candidate)
            } else {
                None
            })
        }
        (Some(qa), None) => {
            let qb = apply_hom(&g.hom, &g.left, &g.right, &qa)?;
            Ok(Some(arith::join_pair(&ring, qa, qb)?))
        }
        (None, Some(qb)) => Ok(solve_left_component(&g, &qb)?
            .map(|qa| arith::join_pair(&ring, qa, qb.clone()))
            .transpose()?),
        (None, None) => unreachable!("a fully zero divisor is rejected earlier"),
    }
}

/// Find `qa` with `qb - f(qa)` in the ideal, for the zero-divisor slot.
fn solve_left_component(g: &Glued, qb: &RingValue) -> Result<Option<RingValue>> {
    if ideal_is_whole_like(&g.ideal, &g.right)? {
        return Ok(Some(RingValue::zero(&g.left)));
    }
    if let Some(qa) = hom_preimage(&g.hom, &g.left, &g.right, qb)? {
        return Ok(Some(qa));
    }
    if matches!(g.hom.kind, HomKind::InclusionIntoDPlusM) {
        if let Ok(s) = qb.payload().as_series() {
            let c0 = s.known_coeff(0).unwrap_or_else(BigRational::zero);
            if let Some(qa) = constant_preimage(&g.left, &c0)? {
                let fa = apply_hom(&g.hom, &g.left, &g.right, &qa)?;
                let defect = arith::sub(qb, &fa)?;
                if ideal_contains(&g.ideal, &g.right, &defect)? {
                    return Ok(Some(qa));
                }
            }
        }
    }
    Ok(None)
}
