//! Certificate builders for the Euclidean base rings.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::certificate::GcdCertificate;
use crate::descriptor::RingDescriptor;
use crate::error::Result;
use crate::poly::{int_extended_gcd, Polynomial};
use crate::value::{Payload, RingValue};

/// The unique certificate shape for gcd(0, 0): every equation collapses.
pub fn zero_zero_certificate(ring: &Arc<RingDescriptor>) -> GcdCertificate {
    GcdCertificate {
        d: RingValue::zero(ring),
        a1: RingValue::one(ring),
        b1: RingValue::zero(ring),
        alpha: RingValue::one(ring),
        beta: RingValue::zero(ring),
    }
}

pub fn int_gcd_certificate(
    ring: &Arc<RingDescriptor>,
    a: &BigInt,
    b: &BigInt,
) -> Result<GcdCertificate> {
    if a.is_zero() && b.is_zero() {
        return Ok(zero_zero_certificate(ring));
    }
    let (g, s, t) = int_extended_gcd(a, b);
    let a1 = a / &g;
    let b1 = b / &g;
    // canonical coefficients: a unit cofactor takes the whole Bézout
    // weight, so the matrix transforms built from the certificate act as
    // plain Gaussian steps whenever one input divides the other
    let (s, t) = if a1.abs().is_one() {
        (a1.clone(), BigInt::zero())
    } else if b1.abs().is_one() {
        (BigInt::zero(), b1.clone())
    } else {
        (s, t)
    };
    let mk = |n: BigInt| RingValue::raw(ring.clone(), Payload::Int(n));
    Ok(GcdCertificate {
        a1: mk(a1),
        b1: mk(b1),
        d: mk(g),
        alpha: mk(s),
        beta: mk(t),
    })
}

/// In a field every nonzero pair has gcd 1.
pub fn field_gcd_certificate(
    ring: &Arc<RingDescriptor>,
    a: &BigRational,
    b: &BigRational,
) -> Result<GcdCertificate> {
    if a.is_zero() && b.is_zero() {
        return Ok(zero_zero_certificate(ring));
    }
    let mk = |r: BigRational| RingValue::raw(ring.clone(), Payload::Rat(r));
    let (alpha, beta) = if !a.is_zero() {
        (a.recip(), BigRational::zero())
    } else {
        (BigRational::zero(), b.recip())
    };
    Ok(GcdCertificate {
        d: RingValue::one(ring),
        a1: mk(a.clone()),
        b1: mk(b.clone()),
        alpha: mk(alpha),
        beta: mk(beta),
    })
}

pub fn poly_gcd_certificate(
    ring: &Arc<RingDescriptor>,
    a: &Polynomial,
    b: &Polynomial,
) -> Result<GcdCertificate> {
    if a.is_zero() && b.is_zero() {
        return Ok(zero_zero_certificate(ring));
    }
    let (g, s, t) = a.extended_gcd(b);
    let mk = |p: Polynomial| RingValue::raw(ring.clone(), Payload::Poly(p));
    let a1 = a.divide_exact(&g)?.expect("gcd divides");
    let b1 = b.divide_exact(&g)?.expect("gcd divides");
    // see the integer builder: unit cofactors absorb the Bézout weight
    let (s, t) = if a1.is_constant() && !a1.is_zero() {
        let inv = Polynomial::constant(BigRational::one() / a1.eval_at_zero());
        (inv, Polynomial::zero())
    } else if b1.is_constant() && !b1.is_zero() {
        let inv = Polynomial::constant(BigRational::one() / b1.eval_at_zero());
        (Polynomial::zero(), inv)
    } else {
        (s, t)
    };
    Ok(GcdCertificate {
        d: mk(g),
        a1: mk(a1),
        b1: mk(b1),
        alpha: mk(s),
        beta: mk(t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_gcd_certificate;
    use crate::descriptor::RingDescriptor;

    #[test]
    fn int_certificate_matches_euclid_trace() {
        let z = RingDescriptor::integers();
        let cert = int_gcd_certificate(&z, &BigInt::from(4), &BigInt::from(6)).unwrap();
        assert_eq!(cert.d.payload().as_int().unwrap(), &BigInt::from(2));
        assert_eq!(cert.a1.payload().as_int().unwrap(), &BigInt::from(2));
        assert_eq!(cert.b1.payload().as_int().unwrap(), &BigInt::from(3));
        assert_eq!(cert.alpha.payload().as_int().unwrap(), &BigInt::from(-1));
        assert_eq!(cert.beta.payload().as_int().unwrap(), &BigInt::from(1));
        let report = verify_gcd_certificate(
            &RingValue::from_i64(&z, 4),
            &RingValue::from_i64(&z, 6),
            &cert,
        );
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn zero_conventions() {
        let z = RingDescriptor::integers();
        let zero = RingValue::zero(&z);
        let five = RingValue::from_i64(&z, 5);
        let cert = int_gcd_certificate(&z, &BigInt::zero(), &BigInt::from(5)).unwrap();
        assert_eq!(cert.d.payload().as_int().unwrap(), &BigInt::from(5));
        assert_eq!(cert.a1.payload().as_int().unwrap(), &BigInt::zero());
        assert_eq!(cert.b1.payload().as_int().unwrap(), &BigInt::one());
        assert_eq!(cert.alpha.payload().as_int().unwrap(), &BigInt::zero());
        assert_eq!(cert.beta.payload().as_int().unwrap(), &BigInt::one());
        assert!(verify_gcd_certificate(&zero, &five, &cert).pass());

        let conv = int_gcd_certificate(&z, &BigInt::zero(), &BigInt::zero()).unwrap();
        assert!(verify_gcd_certificate(&zero, &zero, &conv).pass());
        assert!(conv.d.is_zero());
    }
}
