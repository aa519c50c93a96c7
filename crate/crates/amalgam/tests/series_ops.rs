//! Series normalization, unit inversion, and the certified gcd in
//! `A + xK[[x]]`: frozen examples plus multiply-back checks and the
//! combination identity on seeded random pairs.

mod common;

use amalgam::certificate::{verify_gcd_certificate, verify_generator_identity};
use amalgam::sample::Sampler;
use amalgam::series::{SeriesEq, SeriesValue};
use amalgam::value::EqOutcome;
use amalgam::{arith, dplusm, gcd, ops, RingError, RingValue};
use common::*;

#[test]
fn normalize_examples() {
    // 2x^2 + x^3 = 2 * x^2 * (1 + x/2)
    let s = SeriesValue::window(2, vec![rati(2), rati(1)], 6);
    let nf = s.normalize().unwrap();
    assert_eq!(nf.order, 2);
    assert_eq!(nf.lead, rati(2));
    let unit = SeriesValue::window(0, vec![rati(1), rat(1, 2)], 4);
    assert_eq!(nf.unit_part.eq(&unit), SeriesEq::ToPrecision(4));
    let back = nf.unit_part.scale(&nf.lead).shift_up(nf.order);
    assert!(matches!(back.eq(&s), SeriesEq::ToPrecision(_)));

    // constants and monomials
    let one = SeriesValue::constant(rati(1), 8);
    let nf = one.normalize().unwrap();
    assert_eq!((nf.order, nf.lead.clone()), (0, rati(1)));
    assert_eq!(nf.unit_part.eq(&SeriesValue::one(8)), SeriesEq::ToPrecision(8));

    let third_x = SeriesValue::monomial(rat(1, 3), 1, 8);
    let nf = third_x.normalize().unwrap();
    assert_eq!((nf.order, nf.lead.clone()), (1, rat(1, 3)));
    assert_eq!(nf.unit_part.eq(&SeriesValue::one(7)), SeriesEq::ToPrecision(7));

    // zero input is rejected
    assert!(matches!(
        SeriesValue::ExactZero.normalize(),
        Err(RingError::ZeroInput)
    ));
}

#[test]
fn invert_unit_examples() {
    // (1 - x)^-1: the geometric series
    let s = SeriesValue::window(0, vec![rati(1), rati(-1)], 4);
    let inv = s.invert_unit().unwrap();
    let geometric = SeriesValue::window(0, vec![rati(1), rati(1), rati(1), rati(1)], 4);
    assert_eq!(inv.eq(&geometric), SeriesEq::ToPrecision(4));

    let one = SeriesValue::one(6);
    assert_eq!(one.invert_unit().unwrap().eq(&one), SeriesEq::ToPrecision(6));

    // (2 + 2x)^-1 = 1/2 - (1/2)x + (1/2)x^2 + O(x^3)
    let s = SeriesValue::window(0, vec![rati(2), rati(2)], 3);
    let inv = s.invert_unit().unwrap();
    let expected = SeriesValue::window(0, vec![rat(1, 2), rat(-1, 2), rat(1, 2)], 3);
    assert_eq!(inv.eq(&expected), SeriesEq::ToPrecision(3));
    assert_eq!(s.mul(&inv).eq(&SeriesValue::one(3)), SeriesEq::ToPrecision(3));

    // non-units are rejected
    assert!(matches!(
        SeriesValue::monomial(rati(1), 1, 4).invert_unit(),
        Err(RingError::NotAUnit)
    ));
}

#[test]
fn dplusm_gcd_spec_examples() {
    let ring = dplusm_z(32);
    // distinct orders: the lower-order lead wins
    let f = mono(&ring, rat(1, 2), 2, 32);
    let g = mono(&ring, rat(1, 3), 3, 32);
    let cert = gcd::gcd_certified(&f, &g).unwrap();
    assert!(arith::values_equal(&cert.d, &mono(&ring, rat(1, 2), 2, 32))
        .unwrap()
        .holds());
    assert!(verify_gcd_certificate(&f, &g, &cert).pass());

    // equal orders: leads over the common denominator 6, base gcd(3, 2) = 1
    let g = mono(&ring, rat(1, 3), 2, 32);
    let cert = gcd::gcd_certified(&f, &g).unwrap();
    assert!(arith::values_equal(&cert.d, &mono(&ring, rat(1, 6), 2, 32))
        .unwrap()
        .holds());
    assert!(verify_gcd_certificate(&f, &g, &cert).pass());
    assert!(ops::divides(&cert.d, &f).unwrap());
    assert!(ops::divides(&cert.d, &g).unwrap());

    // order zero: the base gcd of the constant terms
    let f = ser(&ring, 0, &[rati(4), rati(1)], 32);
    let g = ser(&ring, 0, &[rati(6), rati(1)], 32);
    let cert = gcd::gcd_certified(&f, &g).unwrap();
    assert!(arith::values_equal(&cert.d, &ser(&ring, 0, &[rati(2)], 32))
        .unwrap()
        .holds());
    assert!(verify_gcd_certificate(&f, &g, &cert).pass());
}

#[test]
fn dplusm_gcd_generator_is_a_combination() {
    let ring = dplusm_z(32);
    let mut sampler = Sampler::new(7);
    let mut checked = 0;
    while checked < 60 {
        let f = sampler.value(&ring).unwrap();
        let g = sampler.value(&ring).unwrap();
        if f.is_zero() && g.is_zero() {
            continue;
        }
        let cert = match gcd::gcd_certified(&f, &g) {
            Ok(c) => c,
            Err(RingError::PrecisionExhausted { .. }) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        };
        assert!(verify_gcd_certificate(&f, &g, &cert).pass());
        // generator divides both inputs and is the combination alpha*f + beta*g
        assert!(ops::divides(&cert.d, &f).unwrap());
        assert!(ops::divides(&cert.d, &g).unwrap());
        assert!(verify_generator_identity(&f, &g, &cert).unwrap().holds());
        checked += 1;
    }
}

#[test]
fn series_equality_is_three_valued() {
    let ring = series_q(6);
    let a = ser(&ring, 0, &[rati(1), rati(2)], 6);
    let b = ser(&ring, 0, &[rati(1), rati(2)], 8);
    // truncations agree to the weaker precision but are never exact
    assert_eq!(
        arith::values_equal(&a, &b).unwrap(),
        EqOutcome::ToPrecision(6)
    );
    let zero = RingValue::zero(&ring);
    assert_eq!(arith::values_equal(&zero, &zero).unwrap(), EqOutcome::Exact);
    let c = ser(&ring, 0, &[rati(1), rati(3)], 8);
    assert_eq!(arith::values_equal(&a, &c).unwrap(), EqOutcome::Distinct);
}

#[test]
fn dplusm_membership_is_enforced() {
    let ring = dplusm_z(8);
    // constant term 1/2 is not integral
    let bad = RingValue::new(
        ring.clone(),
        amalgam::value::Payload::Series(SeriesValue::window(0, vec![rat(1, 2)], 8)),
    );
    assert!(matches!(bad, Err(RingError::PayloadMismatch(_))));
    // but 1/2 is fine from order one upwards
    assert!(RingValue::new(
        ring.clone(),
        amalgam::value::Payload::Series(SeriesValue::monomial(rat(1, 2), 1, 8)),
    )
    .is_ok());
}

#[test]
fn dplusm_units_require_unit_constant() {
    let ring = dplusm_z(8);
    let u = ser(&ring, 0, &[rati(-1), rat(5, 7)], 8);
    let inv = ops::unit_inverse(&u).unwrap().unwrap();
    assert!(
        arith::values_equal(&arith::mul(&u, &inv).unwrap(), &RingValue::one(&ring))
            .unwrap()
            .holds()
    );
    let not_unit = ser(&ring, 0, &[rati(2), rati(1)], 8);
    assert_eq!(ops::unit_inverse(&not_unit).unwrap(), None);
    assert!(dplusm::is_constant_to_precision(
        ser(&ring, 0, &[rati(3)], 8).payload().as_series().unwrap()
    ));
}
