//! Certified gcd, dispatched over the ring kinds that carry the Bézout
//! capability: the Euclidean base rings, D+M rings, overrings, products,
//! and amalgamations through their isomorphic image.

use crate::amalgam;
use crate::arith;
use crate::certificate::GcdCertificate;
use crate::descriptor::RingKind;
use crate::dplusm;
use crate::error::{Result, RingError};
use crate::euclid;
use crate::ideal;
use crate::overring;
use crate::value::RingValue;

pub fn gcd_certified(a: &RingValue, b: &RingValue) -> Result<GcdCertificate> {
    a.require_same_ring(b)?;
    let ring = a.ring().clone();
    match &ring.kind {
        RingKind::Integers => {
            euclid::int_gcd_certificate(&ring, a.payload().as_int()?, b.payload().as_int()?)
        }
        RingKind::Rationals => {
            euclid::field_gcd_certificate(&ring, a.payload().as_rat()?, b.payload().as_rat()?)
        }
        RingKind::PolynomialOverRationals => {
            euclid::poly_gcd_certificate(&ring, a.payload().as_poly()?, b.payload().as_poly()?)
        }
        RingKind::DPlusM { .. } => dplusm::dplusm_gcd_certified(a, b),
        RingKind::Overring { .. } => overring::overring_gcd_certified(a, b),
        RingKind::Product { .. } => product_gcd_certified(a, b),
        RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = a.ring().pair_view().expect("pair ring");
            let glue = view.glue.expect("amalgam glue");
            // along the whole ring the amalgamation *is* the product
            if ideal::ideal_is_whole_like(&glue.ideal, &view.right)? {
                return product_gcd_certified(a, b);
            }
            // otherwise go through the isomorphic image when it exists
            if amalgam::iso_available(a.ring()) {
                let ia = amalgam::iso_to_target(a)?;
                let ib = amalgam::iso_to_target(b)?;
                let cert = gcd_certified(&ia, &ib)?;
                return Ok(GcdCertificate {
                    d: amalgam::iso_from_target(a.ring(), &cert.d)?,
                    a1: amalgam::iso_from_target(a.ring(), &cert.a1)?,
                    b1: amalgam::iso_from_target(a.ring(), &cert.b1)?,
                    alpha: amalgam::iso_from_target(a.ring(), &cert.alpha)?,
                    beta: amalgam::iso_from_target(a.ring(), &cert.beta)?,
                });
            }
            Err(RingError::capability(ring.to_string(), "gcd_certified"))
        }
        RingKind::TruncatedSeries { .. } => {
            Err(RingError::capability(ring.to_string(), "gcd_certified"))
        }
    }
}

/// Componentwise certificates combined: the ideal of `(a, b)` in a product
/// is the product of the component ideals.
pub fn product_gcd_certified(u: &RingValue, v: &RingValue) -> Result<GcdCertificate> {
    u.require_same_ring(v)?;
    let ring = u.ring().clone();
    let (ua, ub) = arith::split_pair(u)?;
    let (va, vb) = arith::split_pair(v)?;
    let left = gcd_certified(&ua, &va)?;
    let right = gcd_certified(&ub, &vb)?;
    let join = |x: RingValue, y: RingValue| arith::join_pair(&ring, x, y);
    Ok(GcdCertificate {
        d: join(left.d, right.d)?,
        a1: join(left.a1, right.a1)?,
        b1: join(left.b1, right.b1)?,
        alpha: join(left.alpha, right.alpha)?,
        beta: join(left.beta, right.beta)?,
    })
}

/// Does the ring advertise a certified gcd?
pub fn has_gcd_capability(ring: &std::sync::Arc<crate::descriptor::RingDescriptor>) -> bool {
    match &ring.kind {
        RingKind::Integers | RingKind::Rationals | RingKind::PolynomialOverRationals => true,
        RingKind::DPlusM { .. } => true,
        RingKind::Overring { base, .. } => has_gcd_capability(base),
        RingKind::Product { left, right } => has_gcd_capability(left) && has_gcd_capability(right),
        RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            let glue = view.glue.expect("amalgam glue");
            if ideal::ideal_is_whole_like(&glue.ideal, &view.right).unwrap_or(false) {
                return has_gcd_capability(&view.left) && has_gcd_capability(&view.right);
            }
            if amalgam::iso_available(ring) {
                if let Some(img) = amalgam::image_ring(ring) {
                    return has_gcd_capability(&img);
                }
            }
            false
        }
        RingKind::TruncatedSeries { .. } => false,
    }
}
