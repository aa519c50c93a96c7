//! Certified gcd in `A + xK[[x]]`: series with constant term in the base
//! domain `A` and tail coefficients in its fraction field `K`.
//!
//! Writing `f = a_p x^p (1 + x f1)` and `g = b_q x^q (1 + x g1)`, the unit
//! factors drop out of the generated ideal. For distinct orders the lower
//! one wins: `fR + gR = a_p x^p R`. For equal orders put the leads over a
//! common denominator `a_p = a/d0`, `b_q = b/d0`, take the base certificate
//! `(c, a', b', alpha', beta')` of `(a, b)`, and the ideal is `(c/d0) x^p R`.
//! Bézout data for the cofactors comes from the inverted unit factors:
//! `alpha = alpha' (1 + x f1)^-1`, `beta = beta' (1 + x g1)^-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::certificate::GcdCertificate;
use crate::descriptor::RingKind;
use crate::error::{Result, RingError};
use crate::euclid;
use crate::ops;
use crate::poly::int_extended_gcd;
use crate::series::SeriesValue;
use crate::value::{Payload, RingValue};

pub fn dplusm_gcd_certified(f: &RingValue, g: &RingValue) -> Result<GcdCertificate> {
    f.require_same_ring(g)?;
    let ring = f.ring().clone();
    let base = match &ring.kind {
        RingKind::DPlusM { base, .. } => base.clone(),
        _ => {
            return Err(RingError::PayloadMismatch(
                "dplusm gcd needs a D+M ring".into(),
            ))
        }
    };
    let fs = f.payload().as_series()?;
    let gs = g.payload().as_series()?;

    if fs.is_exactly_zero() && gs.is_exactly_zero() {
        return Ok(euclid::zero_zero_certificate(&ring));
    }
    if fs.is_exactly_zero() {
        let cert = single_nonzero_certificate(g)?;
        // gcd(0, g): d = canonical(g), a1 = 0, b1 = unit, alpha = 0, beta = unit^-1
        return Ok(GcdCertificate {
            d: cert.d,
            a1: RingValue::zero(&ring),
            b1: cert.a1,
            alpha: RingValue::zero(&ring),
            beta: cert.alpha,
        });
    }
    if gs.is_exactly_zero() {
        return single_nonzero_certificate(f);
    }

    let p = fs
        .exact_valuation("dplusm gcd")?
        .expect("nonzero checked above");
    let q = gs
        .exact_valuation("dplusm gcd")?
        .expect("nonzero checked above");

    if p != q {
        // lower order wins; swap so f carries it
        let (lo, hi) = if p < q { (f, g) } else { (g, f) };
        let cert = lower_order_certificate(lo, hi)?;
        return Ok(if p < q {
            cert
        } else {
            GcdCertificate {
                d: cert.d,
                a1: cert.b1,
                b1: cert.a1,
                alpha: cert.beta,
                beta: cert.alpha,
            }
        });
    }

    // equal orders
    let nf = fs.normalize()?;
    let ng = gs.normalize()?;
    let (c_over_d0, s_coeff, t_coeff) = match base.kind {
        RingKind::Integers => {
            let d0 = nf.lead.denom().lcm(ng.lead.denom());
            let na: BigInt = (&nf.lead * BigRational::from(d0.clone())).to_integer();
            let nb: BigInt = (&ng.lead * BigRational::from(d0.clone())).to_integer();
            let (c, s, t) = int_extended_gcd(&na, &nb);
            (
                BigRational::new(c, d0),
                BigRational::from(s),
                BigRational::from(t),
            )
        }
        // over a field the leads are units: generator x^p
        _ => (
            BigRational::one(),
            nf.lead.recip(),
            BigRational::zero(),
        ),
    };

    let prec = fs
        .precision()
        .expect("nonzero window")
        .min(gs.precision().expect("nonzero window"));
    let d = RingValue::raw(
        ring.clone(),
        Payload::Series(SeriesValue::monomial(c_over_d0, p, prec)),
    );
    let a1 = ops::divide_exact(f, &d)?.ok_or_else(|| {
        RingError::precision("dplusm cofactor division".to_string())
    })?;
    let b1 = ops::divide_exact(g, &d)?.ok_or_else(|| {
        RingError::precision("dplusm cofactor division".to_string())
    })?;
    let alpha = RingValue::raw(
        ring.clone(),
        Payload::Series(nf.unit_part.invert_unit()?.scale(&s_coeff)),
    );
    let beta = RingValue::raw(
        ring.clone(),
        Payload::Series(ng.unit_part.invert_unit()?.scale(&t_coeff)),
    );
    Ok(GcdCertificate { d, a1, b1, alpha, beta })
}

/// Certificate for `gcd(f, 0)` with `f` nonzero: the generator is the
/// canonical associate of `f` and the unit factor carries the Bézout data.
fn single_nonzero_certificate(f: &RingValue) -> Result<GcdCertificate> {
    let ring = f.ring().clone();
    let (canonical, unit) = ops::unit_normalize(f)?;
    let unit_inv = ops::unit_inverse(&unit)?.expect("unit part is a unit");
    Ok(GcdCertificate {
        d: canonical,
        a1: unit,
        b1: RingValue::zero(&ring),
        alpha: unit_inv,
        beta: RingValue::zero(&ring),
    })
}

/// `ord(f) < ord(g)`: the ideal is `a_p x^p R`, so `f` itself is a unit
/// multiple of the generator and `alpha = (unit of f)^-1`, `beta = 0`.
fn lower_order_certificate(f: &RingValue, g: &RingValue) -> Result<GcdCertificate> {
    let ring = f.ring().clone();
    let (d, unit) = ops::unit_normalize(f)?;
    let b1 = ops::divide_exact(g, &d)?
        .ok_or_else(|| RingError::precision("dplusm cofactor division".to_string()))?;
    let alpha = ops::unit_inverse(&unit)?.expect("unit part is a unit");
    Ok(GcdCertificate {
        d,
        a1: unit,
        b1,
        alpha,
        beta: RingValue::zero(&ring),
    })
}

/// Is the series the image of a base element, i.e. constant to precision
/// with an integral constant term over an integer base?
pub fn is_constant_to_precision(s: &SeriesValue) -> bool {
    match s {
        SeriesValue::ExactZero => true,
        SeriesValue::Window {
            valuation, coeffs, ..
        } => coeffs.is_empty() || (*valuation == 0 && coeffs.iter().skip(1).all(|c| c.is_zero())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;
    use crate::certificate::verify_gcd_certificate;
    use crate::descriptor::RingDescriptor;

    fn ring() -> std::sync::Arc<RingDescriptor> {
        RingDescriptor::dplusm(RingDescriptor::integers(), 12)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn mono(r: &std::sync::Arc<RingDescriptor>, c: BigRational, p: usize) -> RingValue {
        RingValue::new(r.clone(), Payload::Series(SeriesValue::monomial(c, p, 12))).unwrap()
    }

    #[test]
    fn distinct_orders_take_the_lower_lead() {
        // gcd((1/2)x^2, (1/3)x^3) generated by (1/2)x^2
        let r = ring();
        let f = mono(&r, q(1, 2), 2);
        let g = mono(&r, q(1, 3), 3);
        let cert = dplusm_gcd_certified(&f, &g).unwrap();
        let ds = cert.d.payload().as_series().unwrap();
        assert_eq!(ds.known_coeff(2), Some(q(1, 2)));
        assert!(verify_gcd_certificate(&f, &g, &cert).pass());
        // swapped arguments give the same generator
        let cert2 = dplusm_gcd_certified(&g, &f).unwrap();
        assert!(arith::values_equal(&cert.d, &cert2.d).unwrap().holds());
        assert!(verify_gcd_certificate(&g, &f, &cert2).pass());
    }

    #[test]
    fn equal_orders_combine_leads_over_common_denominator() {
        // gcd((1/2)x^2, (1/3)x^2) = (1/6)x^2: d0 = 6, a = 3, b = 2, c = 1
        let r = ring();
        let f = mono(&r, q(1, 2), 2);
        let g = mono(&r, q(1, 3), 2);
        let cert = dplusm_gcd_certified(&f, &g).unwrap();
        assert_eq!(
            cert.d.payload().as_series().unwrap().known_coeff(2),
            Some(q(1, 6))
        );
        assert!(verify_gcd_certificate(&f, &g, &cert).pass());
    }

    #[test]
    fn order_zero_reduces_to_base_gcd() {
        // gcd(4 + x, 6 + x) = 2
        let r = ring();
        let f = RingValue::new(
            r.clone(),
            Payload::Series(SeriesValue::window(0, vec![q(4, 1), q(1, 1)], 12)),
        )
        .unwrap();
        let g = RingValue::new(
            r.clone(),
            Payload::Series(SeriesValue::window(0, vec![q(6, 1), q(1, 1)], 12)),
        )
        .unwrap();
        let cert = dplusm_gcd_certified(&f, &g).unwrap();
        let ds = cert.d.payload().as_series().unwrap();
        assert_eq!(ds.known_coeff(0), Some(q(2, 1)));
        assert!(is_constant_to_precision(ds));
        assert!(verify_gcd_certificate(&f, &g, &cert).pass());
    }

    #[test]
    fn zero_cases() {
        let r = ring();
        let f = mono(&r, q(-3, 2), 1);
        let zero = RingValue::zero(&r);
        let cert = dplusm_gcd_certified(&f, &zero).unwrap();
        // canonical generator flips the sign
        assert_eq!(
            cert.d.payload().as_series().unwrap().known_coeff(1),
            Some(q(3, 2))
        );
        assert!(verify_gcd_certificate(&f, &zero, &cert).pass());
        let cert = dplusm_gcd_certified(&zero, &f).unwrap();
        assert!(verify_gcd_certificate(&zero, &f, &cert).pass());
        let conv = dplusm_gcd_certified(&zero, &zero).unwrap();
        assert!(verify_gcd_certificate(&zero, &zero, &conv).pass());
    }

    #[test]
    fn zero_window_input_exhausts_precision() {
        let r = ring();
        let unknown = RingValue::new(
            r.clone(),
            Payload::Series(SeriesValue::zero_to_precision(12)),
        )
        .unwrap();
        let g = mono(&r, q(1, 1), 1);
        assert!(matches!(
            dplusm_gcd_certified(&unknown, &g),
            Err(RingError::PrecisionExhausted { .. })
        ));
    }
}
