//! Amalgamation behavior: element construction and the membership
//! invariant, the explicit inverse, the projection isomorphism, the
//! divisibility battery, the classifier, the falsifier and the bounded
//! principal-generator search.

mod common;

use amalgam::classify::{self, Verdict};
use amalgam::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingKind};
use amalgam::falsify::{falsify_flags, principal_generator_search};
use amalgam::sample::Sampler;
use amalgam::value::EqOutcome;
use amalgam::{amalgam as am, arith, gcd, ops, RingDescriptor, RingError, RingValue};
use common::*;

#[test]
fn make_examples() {
    // (2, 2 + x) from a = 2, j = x
    let ring = z_bowtie_xq(8);
    let base = z();
    let series = series_q(8);
    let a = RingValue::from_i64(&base, 2);
    let j = mono(&series, rati(1), 1, 8);
    let u = am::make(&ring, &a, &j).unwrap();
    let (left, right) = arith::split_pair(&u).unwrap();
    assert_eq!(left, a);
    assert!(
        arith::values_equal(&right, &ser(&series, 0, &[rati(2), rati(1)], 8))
            .unwrap()
            .holds()
    );
    assert!(am::check_membership(&u).unwrap());

    // zero
    let zero = am::make(&ring, &RingValue::zero(&base), &RingValue::zero(&series)).unwrap();
    assert!(zero.is_zero());

    // identity amalgamation along the evens: a = 1, j = 4 gives (1, 5)
    let ring2 = z_bowtie_2z();
    let u = am::make(&ring2, &RingValue::from_i64(&base, 1), &RingValue::from_i64(&base, 4)).unwrap();
    assert_eq!(u, zpair(&ring2, 1, 5));

    // j outside the ideal is rejected
    assert!(matches!(
        am::make(&ring2, &RingValue::from_i64(&base, 1), &RingValue::from_i64(&base, 3)),
        Err(RingError::NotInIdeal)
    ));
    let bad_j = ser(&series, 0, &[rati(1), rati(1)], 8);
    assert!(matches!(
        am::make(&ring, &a, &bad_j),
        Err(RingError::NotInIdeal)
    ));
}

#[test]
fn arithmetic_examples() {
    let ring = z_bowtie_xq(8);
    let base = z();
    let series = series_q(8);
    let two_x = am::make(&ring, &RingValue::from_i64(&base, 2), &mono(&series, rati(1), 1, 8)).unwrap();
    let one = RingValue::one(&ring);
    // (2, 2+x) * (1, 1) = (2, 2+x)
    assert!(arith::values_equal(&arith::mul(&two_x, &one).unwrap(), &two_x)
        .unwrap()
        .holds());
    // (2, 2+x) + (3, 3-x) = (5, 5)
    let three_minus_x =
        am::make(&ring, &RingValue::from_i64(&base, 3), &mono(&series, rati(-1), 1, 8)).unwrap();
    let sum = arith::add(&two_x, &three_minus_x).unwrap();
    assert!(
        arith::values_equal(&sum, &RingValue::from_i64(&ring, 5))
            .unwrap()
            .holds()
    );
    // (0, x) * (0, x) = (0, x^2)
    let x0 = am::make(&ring, &RingValue::zero(&base), &mono(&series, rati(1), 1, 8)).unwrap();
    let sq = arith::mul(&x0, &x0).unwrap();
    let expected = am::make(&ring, &RingValue::zero(&base), &mono(&series, rati(1), 2, 9)).unwrap();
    assert!(arith::values_equal(&sq, &expected).unwrap().holds());
    assert!(am::check_membership(&sq).unwrap());
}

#[test]
fn inverse_examples() {
    let ring = z_bowtie_xq(16);
    let base = z();
    let series = series_q(16);
    let one = RingValue::one(&ring);

    // (1, 1+x)^-1: product comes back to (1, 1) to precision
    let u = am::make(&ring, &RingValue::from_i64(&base, 1), &mono(&series, rati(1), 1, 16)).unwrap();
    let inv = am::invert(&u).unwrap().unwrap();
    assert!(arith::values_equal(&arith::mul(&u, &inv).unwrap(), &one)
        .unwrap()
        .holds());
    assert!(am::check_membership(&inv).unwrap());

    // (1, 1) is its own inverse
    let inv = am::invert(&one).unwrap().unwrap();
    assert!(arith::values_equal(&inv, &one).unwrap().holds());

    // (-1, -1+x)
    let u = am::make(&ring, &RingValue::from_i64(&base, -1), &mono(&series, rati(1), 1, 16)).unwrap();
    let inv = am::invert(&u).unwrap().unwrap();
    assert!(arith::values_equal(&arith::mul(&u, &inv).unwrap(), &one)
        .unwrap()
        .holds());
    assert!(am::check_membership(&inv).unwrap());

    // non-units have no inverse: left component 2
    let u = am::make(&ring, &RingValue::from_i64(&base, 2), &RingValue::zero(&series)).unwrap();
    assert!(am::invert(&u).unwrap().is_none());
}

#[test]
fn iso_examples() {
    let ring = z_bowtie_xq(8);
    let base = z();
    let series = series_q(8);
    // (2, 2+x) -> 2+x and back
    let u = am::make(&ring, &RingValue::from_i64(&base, 2), &mono(&series, rati(1), 1, 8)).unwrap();
    let img = am::iso_to_target(&u).unwrap();
    let target = am::image_ring(&ring).unwrap();
    assert!(img.ring().same_structure(&target));
    assert!(
        arith::values_equal(&img, &ser(&target, 0, &[rati(2), rati(1)], 8))
            .unwrap()
            .holds()
    );
    let back = am::iso_from_target(&ring, &img).unwrap();
    assert!(arith::values_equal(&back, &u).unwrap().holds());

    // zero and embedded integers round-trip
    let zero = RingValue::zero(&ring);
    let img = am::iso_to_target(&zero).unwrap();
    assert!(img.is_zero());
    let five = RingValue::from_i64(&ring, 5);
    let img = am::iso_to_target(&five).unwrap();
    let back = am::iso_from_target(&ring, &img).unwrap();
    assert!(arith::values_equal(&back, &five).unwrap().holds());
}

#[test]
fn iso_requires_flags() {
    // identity amalgamation along the evens has a nonzero meet
    let ring = z_bowtie_2z();
    let u = zpair(&ring, 1, 5);
    assert!(matches!(
        am::iso_to_target(&u),
        Err(RingError::FlagsViolated(_))
    ));
}

#[test]
fn divides_battery_from_the_non_valuation_example() {
    let ring = z_bowtie_xq(8);
    let two = RingValue::from_i64(&ring, 2);
    let three = RingValue::from_i64(&ring, 3);
    let four = RingValue::from_i64(&ring, 4);
    // neither of (2,2), (3,3) divides the other
    assert!(!ops::divides(&two, &three).unwrap());
    assert!(!ops::divides(&three, &two).unwrap());
    assert!(!am::valuation_pair_check(&two, &three).unwrap());
    // units are comparable with everything
    let one = RingValue::one(&ring);
    assert!(am::valuation_pair_check(&one, &three).unwrap());
    // (4,4) = (2,2)*(2,2)
    assert!(am::valuation_pair_check(&two, &four).unwrap());
    assert!(ops::divides(&two, &four).unwrap());
}

#[test]
fn amalgam_gcd_via_projection() {
    let ring = z_bowtie_xq(16);
    let four = RingValue::from_i64(&ring, 4);
    let six = RingValue::from_i64(&ring, 6);
    let cert = gcd::gcd_certified(&four, &six).unwrap();
    assert!(amalgam::certificate::verify_gcd_certificate(&four, &six, &cert).pass());
    assert!(arith::values_equal(&cert.d, &RingValue::from_i64(&ring, 2))
        .unwrap()
        .holds());
    assert!(am::check_membership(&cert.d).unwrap());
}

#[test]
fn classify_spec_examples() {
    // the series amalgamation is an elementary divisor ring by transport
    let c = classify::classify_amalgamation(&z_bowtie_xq(8)).unwrap();
    assert_eq!(c.edr, Verdict::Yes);
    assert_eq!(c.hermite, Verdict::Yes);
    assert_eq!(c.bezout, Verdict::Yes);
    assert_eq!(c.case, classify::CASE_INJECTIVE_TRIVIAL_MEET);
    assert!(c.chain_coherent());

    // the identity amalgamation along the evens is obstructed
    let c = classify::classify_amalgamation(&z_bowtie_2z()).unwrap();
    assert_eq!(c.bezout, Verdict::No);
    assert_eq!(c.case, classify::CASE_INJECTIVE_MEET_OBSTRUCTION);

    // evaluation at zero with the zero ideal collapses onto the
    // polynomial ring, a Bézout domain
    let ring = RingDescriptor::amalgamation(
        qx(),
        q(),
        HomDescriptor::new(HomKind::PolynomialEvalAtZero, false),
        IdealDescriptor::Zero,
    );
    let c = classify::classify_amalgamation(&ring).unwrap();
    assert_eq!(c.bezout, Verdict::Yes);
    assert_eq!(c.hermite, Verdict::Yes);
    assert_eq!(c.case, classify::CASE_ZERO_IDEAL_NONINJECTIVE);
}

#[test]
fn falsify_spec_examples() {
    // a false trivial-meet declaration on the evens amalgamation is refuted
    let base = z();
    let two = RingValue::from_i64(&base, 2);
    let lying = RingDescriptor::new(RingKind::Amalgamation {
        a: base.clone(),
        b: base.clone(),
        hom: HomDescriptor::new(HomKind::Identity, true),
        ideal: IdealDescriptor::MultiplesOf(two),
        meets_ideal_zero: Some(true),
        image: None,
    });
    let report = falsify_flags(&lying, 100, 0).unwrap();
    assert!(report.refuted("meet:"));

    // the honest series amalgamation survives
    let report = falsify_flags(&z_bowtie_xq(8), 100, 0).unwrap();
    assert!(report.refutations().next().is_none(), "{report:?}");

    // evaluation at zero declared injective is refuted (x vs 0)
    let lying = RingDescriptor::amalgamation(
        qx(),
        q(),
        HomDescriptor::new(HomKind::PolynomialEvalAtZero, true),
        IdealDescriptor::Zero,
    );
    let report = falsify_flags(&lying, 100, 0).unwrap();
    assert!(report.refuted("hom: declared injective"));
}

#[test]
fn witness_search_examples() {
    // the two-generated ideal of the evens amalgamation has no principal
    // generator within bound 12
    let ring = z_bowtie_2z();
    let gens = [zpair(&ring, 2, 2), zpair(&ring, 0, 2)];
    let res = principal_generator_search(&ring, &gens, 12).unwrap();
    assert!(res.generator.is_none());
    assert!(res.exhaustive);

    // the product control case finds (2, 3)
    let ring = z_bowtie_whole();
    let gens = [zpair(&ring, 2, 0), zpair(&ring, 0, 3)];
    let res = principal_generator_search(&ring, &gens, 12).unwrap();
    assert_eq!(res.generator.unwrap(), zpair(&ring, 2, 3));

    // a single unit generator yields itself
    let gens = [zpair(&ring, 1, 1)];
    let res = principal_generator_search(&ring, &gens, 12).unwrap();
    assert_eq!(res.generator.unwrap(), zpair(&ring, 1, 1));

    // series-based rings are not enumerable
    let ring = z_bowtie_xq(8);
    let gens = [RingValue::one(&ring)];
    assert!(matches!(
        principal_generator_search(&ring, &gens, 4),
        Err(RingError::NotEnumerable)
    ));
}

#[test]
fn closure_invariant_on_random_samples() {
    for ring in [z_bowtie_xq(16), z_bowtie_2z(), z_bowtie_whole()] {
        let mut s = Sampler::new(11);
        for _ in 0..120 {
            let u = s.value(&ring).unwrap();
            let v = s.value(&ring).unwrap();
            assert!(am::check_membership(&arith::add(&u, &v).unwrap()).unwrap());
            assert!(am::check_membership(&arith::mul(&u, &v).unwrap()).unwrap());
            assert!(am::check_membership(&arith::neg(&u)).unwrap());
        }
    }
}

#[test]
fn duplication_reduces_to_the_product() {
    // duplication along the whole fraction field: arithmetic agrees with
    // the plain product componentwise
    let dup = RingDescriptor::duplication(z(), IdealDescriptor::Whole);
    let product = RingDescriptor::product(z(), q());
    let mut s = Sampler::new(3);
    for _ in 0..100 {
        let u = s.value(&dup).unwrap();
        let v = s.value(&dup).unwrap();
        let up = RingValue::new(product.clone(), u.payload().clone()).unwrap();
        let vp = RingValue::new(product.clone(), v.payload().clone()).unwrap();
        assert_eq!(
            arith::add(&u, &v).unwrap().payload(),
            arith::add(&up, &vp).unwrap().payload()
        );
        assert_eq!(
            arith::mul(&u, &v).unwrap().payload(),
            arith::mul(&up, &vp).unwrap().payload()
        );
    }
}

#[test]
fn duplication_classifier_cases() {
    let base = z();
    // E = A (unit multiple): product transfer, an elementary divisor ring
    let one = RingValue::from_i64(&base, 1);
    let dup = RingDescriptor::duplication(base.clone(), IdealDescriptor::MultiplesOf(one));
    let c = classify::classify_amalgamation(&dup).unwrap();
    assert_eq!(c.edr, Verdict::Yes);
    assert_eq!(c.case, classify::CASE_DUP_CONTAINS_BASE);

    // E = 2A: proper ideal, obstructed
    let two = RingValue::from_i64(&base, 2);
    let dup = RingDescriptor::duplication(base.clone(), IdealDescriptor::MultiplesOf(two));
    let c = classify::classify_amalgamation(&dup).unwrap();
    assert_eq!(c.bezout, Verdict::No);
    assert_eq!(c.edr, Verdict::No);
    assert_eq!(c.case, classify::CASE_DUP_PROPER_IDEAL);

    // E = Q(A): contains the base, an elementary divisor ring
    let dup = RingDescriptor::duplication(base, IdealDescriptor::Whole);
    let c = classify::classify_amalgamation(&dup).unwrap();
    assert_eq!(c.edr, Verdict::Yes);
    assert_eq!(c.case, classify::CASE_DUP_CONTAINS_BASE);
}

#[test]
fn left_factor_hom_is_a_unital_embedding() {
    // diagonal-through-the-left-factor into Z x Q
    let base = z();
    let codomain = RingDescriptor::product(z(), q());
    let hom = HomDescriptor::new(HomKind::LeftFactorIntoProduct, true);
    let x = RingValue::from_i64(&base, 3);
    let y = RingValue::from_i64(&base, -4);
    let f = |v: &RingValue| am::apply_hom(&hom, &base, &codomain, v).unwrap();
    assert_eq!(f(&RingValue::one(&base)), RingValue::one(&codomain));
    assert_eq!(
        arith::values_equal(
            &f(&arith::mul(&x, &y).unwrap()),
            &arith::mul(&f(&x), &f(&y)).unwrap()
        )
        .unwrap(),
        EqOutcome::Exact
    );
    // preimage recovers the left component exactly on the image
    let img = f(&x);
    let back = am::hom_preimage(&hom, &base, &codomain, &img).unwrap().unwrap();
    assert_eq!(back, x);
    let off_image = zz_pair_in(&codomain, 3, 5);
    assert!(am::hom_preimage(&hom, &base, &codomain, &off_image)
        .unwrap()
        .is_none());
}

fn zz_pair_in(ring: &std::sync::Arc<RingDescriptor>, a: i64, b: i64) -> RingValue {
    let l = RingValue::from_i64(&z(), a);
    let r = RingValue::from_i64(&q(), b);
    arith::join_pair(ring, l, r).unwrap()
}
