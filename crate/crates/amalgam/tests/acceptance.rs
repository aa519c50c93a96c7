//! Acceptance battery: nine desk-scale criteria covering the certified
//! gcd in `Z + xQ[[x]]`, integer Smith forms against an independent
//! oracle, componentwise transport over products, the explicit amalgam
//! inverse, the projection isomorphism, the bounded non-principality
//! witness, the non-valuation divisibility battery, the overring routes,
//! and the classifier battery. Each criterion prints one PASS/FAIL line
//! (visible with `--nocapture`) and runs inside its stated time budget.

mod common;

use std::time::{Duration, Instant};

use amalgam::certificate::verify_gcd_certificate;
use amalgam::classify::{self, Verdict};
use amalgam::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingKind};
use amalgam::falsify::principal_generator_search;
use amalgam::matrix::{self, Matrix};
use amalgam::sample::Sampler;
use amalgam::value::EqOutcome;
use amalgam::{amalgam as am, arith, gcd, RingDescriptor, RingFlag, RingValue};
use common::*;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    started: Instant,
}

impl Criterion {
    fn start(name: &'static str, budget_secs: Option<f64>) -> Criterion {
        Criterion {
            name,
            budget: budget_secs.map(Duration::from_secs_f64),
            started: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.started.elapsed();
        if let Some(budget) = self.budget {
            if elapsed > budget {
                println!("criterion {}: FAIL (budget {budget:?}, took {elapsed:?})", self.name);
                panic!(
                    "criterion {}: exceeded budget {budget:?} (took {elapsed:?})",
                    self.name
                );
            }
        }
        println!(
            "criterion {}: PASS ({} ms)",
            self.name,
            elapsed.as_millis()
        );
    }
}

#[test]
fn criterion_1_dplusm_gcd_battery() {
    let c = Criterion::start("1 (series-ring gcd, 200 pairs)", Some(1.0));
    let ring = dplusm_z(32);
    let mut sampler = Sampler::new(0xA11CE);
    let mut done = 0;
    while done < 200 {
        let f = sampler.value(&ring).unwrap();
        let g = sampler.value(&ring).unwrap();
        if f.is_zero() && g.is_zero() {
            continue;
        }
        let cert = gcd::gcd_certified(&f, &g).unwrap();
        let report = verify_gcd_certificate(&f, &g, &cert);
        assert!(
            report.pass(),
            "pair {done}: f = {}, g = {}\n{report:?}",
            f.to_display_string(),
            g.to_display_string()
        );
        done += 1;
    }
    c.finish();
}

#[test]
fn criterion_2_integer_snf_battery() {
    let c = Criterion::start("2 (integer Smith forms, 100 matrices)", Some(5.0));
    let ring = z();
    let mut sampler = Sampler::new(0x5EED);
    for case in 0..100 {
        let rows = sampler.int_in(1, 4) as usize;
        let cols = sampler.int_in(1, 4) as usize;
        let mut data = vec![vec![0i128; cols]; rows];
        let mut entries = Vec::with_capacity(rows * cols);
        for r in data.iter_mut() {
            for e in r.iter_mut() {
                let n = sampler.int_in(-20, 20);
                *e = n as i128;
                entries.push(RingValue::from_i64(&ring, n));
            }
        }
        let m = Matrix::new(ring.clone(), rows, cols, entries).unwrap();
        let res = matrix::snf(&m).unwrap();
        assert!(res.report.pass(), "case {case}: {:?}", res.report);
        // diagonal values against the independent elementary-ops oracle
        let ours: Vec<i128> = res
            .d
            .diagonal()
            .iter()
            .map(|v| i128::try_from(v.payload().as_int().unwrap()).unwrap())
            .collect();
        let oracle = integer_snf_oracle(&data);
        assert_eq!(ours, oracle, "case {case}: diagonal mismatch");
        // chain + nonnegativity are part of the verification report, but
        // assert them directly as well
        for w in ours.windows(2) {
            assert!(w[0] >= 0 && w[1] >= 0);
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "case {case}: chain violated");
            } else {
                assert_eq!(w[1], 0);
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_3_product_transport() {
    let c = Criterion::start("3 (componentwise transport, 50 matrices)", None);
    let ring = product_zz();
    let base = z();
    let mut sampler = Sampler::new(0xBEE);
    for case in 0..50 {
        let mut entries = Vec::with_capacity(9);
        let mut left = Vec::with_capacity(9);
        let mut right = Vec::with_capacity(9);
        for _ in 0..9 {
            let a = sampler.int_in(-20, 20);
            let b = sampler.int_in(-20, 20);
            entries.push(zz(&ring, a, b));
            left.push(RingValue::from_i64(&base, a));
            right.push(RingValue::from_i64(&base, b));
        }
        let m = Matrix::new(ring.clone(), 3, 3, entries).unwrap();
        let res = matrix::snf(&m).unwrap();
        assert!(res.report.pass(), "case {case}: {:?}", res.report);
        // the recombined diagonal is exactly the pairing of the component
        // diagonals
        let ml = Matrix::new(base.clone(), 3, 3, left).unwrap();
        let mr = Matrix::new(base.clone(), 3, 3, right).unwrap();
        let dl = matrix::snf(&ml).unwrap().d;
        let dr = matrix::snf(&mr).unwrap().d;
        for k in 0..3 {
            let (a, b) = arith::split_pair(res.d.get(k, k)).unwrap();
            assert_eq!(&a, dl.get(k, k), "case {case}");
            assert_eq!(&b, dr.get(k, k), "case {case}");
        }
    }
    c.finish();
}

#[test]
fn criterion_4_amalgam_inverse_battery() {
    let c = Criterion::start("4 (explicit inverses, 100 units)", None);
    let ring = z_bowtie_xq(32);
    let base = z();
    let series = series_q(32);
    let mut sampler = Sampler::new(0x1AB);
    let one = RingValue::one(&ring);
    for case in 0..100 {
        let sign = if sampler.int_in(0, 1) == 0 { 1 } else { -1 };
        let a = RingValue::from_i64(&base, sign);
        let j = sampler
            .ideal_element(&IdealDescriptor::PositiveOrder, &series)
            .unwrap();
        let u = am::make(&ring, &a, &j).unwrap();
        let inv = am::invert(&u).unwrap().expect("unit");
        let product = arith::mul(&inv, &u).unwrap();
        let outcome = arith::values_equal(&product, &one).unwrap();
        // exact on the left component, verified to precision 32 on the tail
        assert!(
            outcome == EqOutcome::ToPrecision(32) || outcome == EqOutcome::Exact,
            "case {case}: product is {outcome:?}"
        );
        assert!(am::check_membership(&inv).unwrap(), "case {case}");
    }
    c.finish();
}

#[test]
fn criterion_5_projection_isomorphism() {
    let c = Criterion::start("5 (projection isomorphism, 100 elements)", None);
    let ring = z_bowtie_xq(32);
    let mut sampler = Sampler::new(0x150);
    for case in 0..100 {
        let u = sampler.value(&ring).unwrap();
        let v = sampler.value(&ring).unwrap();
        let tu = am::iso_to_target(&u).unwrap();
        let tv = am::iso_to_target(&v).unwrap();
        let back = am::iso_from_target(&ring, &tu).unwrap();
        assert!(
            arith::values_equal(&back, &u).unwrap().holds(),
            "case {case}: round trip"
        );
        let add_hom = arith::values_equal(
            &am::iso_to_target(&arith::add(&u, &v).unwrap()).unwrap(),
            &arith::add(&tu, &tv).unwrap(),
        )
        .unwrap()
        .holds();
        let mul_hom = arith::values_equal(
            &am::iso_to_target(&arith::mul(&u, &v).unwrap()).unwrap(),
            &arith::mul(&tu, &tv).unwrap(),
        )
        .unwrap()
        .holds();
        assert!(add_hom && mul_hom, "case {case}: homomorphism laws");
    }
    c.finish();
}

#[test]
fn criterion_6_witness_search() {
    let c = Criterion::start("6 (bounded non-principality witness)", Some(2.0));
    // the obstructed ideal: no principal generator within bound 12
    let ring = z_bowtie_2z();
    let gens = [zpair(&ring, 2, 2), zpair(&ring, 0, 2)];
    let res = principal_generator_search(&ring, &gens, 12).unwrap();
    assert!(res.generator.is_none());
    assert!(res.exhaustive);

    // the control case in Z x Z finds (2, 3)
    let ring = z_bowtie_whole();
    let gens = [zpair(&ring, 2, 0), zpair(&ring, 0, 3)];
    let res = principal_generator_search(&ring, &gens, 12).unwrap();
    assert_eq!(res.generator.expect("principal"), zpair(&ring, 2, 3));
    c.finish();
}

#[test]
fn criterion_7_non_valuation_battery() {
    let c = Criterion::start("7 (non-valuation battery and classification)", None);
    let ring = z_bowtie_xq(32);
    let two = RingValue::from_i64(&ring, 2);
    let three = RingValue::from_i64(&ring, 3);
    assert!(!am::valuation_pair_check(&two, &three).unwrap());

    let verdicts = classify::classify_amalgamation(&ring).unwrap();
    assert_eq!(verdicts.edr, Verdict::Yes);
    assert_eq!(verdicts.case, classify::CASE_INJECTIVE_TRIVIAL_MEET);
    assert!(verdicts.chain_coherent());
    c.finish();
}

#[test]
fn criterion_8_overring_battery() {
    let c = Criterion::start("8 (overring gcd and Smith forms)", Some(3.0));
    let ring = z_half();
    let mut sampler = Sampler::new(0x0FF);
    for case in 0..100 {
        let u = sampler.value(&ring).unwrap();
        let v = sampler.value(&ring).unwrap();
        let cert = gcd::gcd_certified(&u, &v).unwrap();
        let report = verify_gcd_certificate(&u, &v, &cert);
        assert!(report.pass(), "case {case}: {report:?}");
    }
    for case in 0..50 {
        let mut entries = Vec::with_capacity(9);
        let mut cleared = vec![vec![0i128; 3]; 3];
        let mut exps = Vec::with_capacity(9);
        for k in 0..9 {
            let n = sampler.int_in(-20, 20);
            let e = sampler.int_in(0, 2) as u32;
            entries.push(half_frac(&ring, n, e));
            exps.push((k, n, e));
        }
        // the common denominator is 2^max(e); clear it for the oracle
        let emax = exps.iter().map(|&(_, _, e)| e).max().unwrap();
        for &(k, n, e) in &exps {
            cleared[k / 3][k % 3] = (n as i128) << (emax - e);
        }
        let m = Matrix::new(ring.clone(), 3, 3, entries).unwrap();
        let res = matrix::snf_overring(&m).unwrap();
        assert!(res.report.pass(), "case {case}: {:?}", res.report);
        // D = diag(lambda_i / d) with lambda from the cleared integer form
        let oracle = integer_snf_oracle(&cleared);
        #[allow(clippy::needless_range_loop)]
        for k in 0..3 {
            let expected = reduced_half_frac(&ring, oracle[k], emax);
            assert_eq!(
                arith::values_equal(res.d.get(k, k), &expected).unwrap(),
                EqOutcome::Exact,
                "case {case}: diag {k}"
            );
        }
    }
    c.finish();
}

fn reduced_half_frac(
    ring: &std::sync::Arc<RingDescriptor>,
    mut num: i128,
    mut e: u32,
) -> RingValue {
    while e > 0 && num % 2 == 0 {
        num /= 2;
        e -= 1;
    }
    half_frac(ring, i64::try_from(num).unwrap(), e)
}

#[test]
fn criterion_9_classifier_battery() {
    let c = Criterion::start("9 (classifier battery, 8 descriptors)", None);
    let base = z();
    let two = RingValue::from_i64(&base, 2);
    let one_v = RingValue::from_i64(&base, 1);

    let bezout_only = |flags: &[RingFlag]| -> std::sync::Arc<RingDescriptor> {
        RingDescriptor::with_flags(RingKind::Integers, flags)
    };

    // 1. the series amalgamation with an elementary-divisor image:
    //    injective, proper ideal, trivial meet
    let d1 = z_bowtie_xq(16);
    // 2. duplication along the unit ideal (module = base)
    let d2 = RingDescriptor::duplication(base.clone(), IdealDescriptor::MultiplesOf(one_v));
    // 3. duplication along the evens (proper ideal)
    let d3 = RingDescriptor::duplication(base.clone(), IdealDescriptor::MultiplesOf(two.clone()));
    // 4. injective identity along the whole ring, both factors elementary
    //    divisor rings
    let d4 = z_bowtie_whole();
    // 5. the series amalgamation with the image declared only Bézout
    let d5 = {
        let image = RingDescriptor::with_flags(
            RingKind::DPlusM {
                base: base.clone(),
                precision: 16,
            },
            &[RingFlag::IsDomain, RingFlag::IsBezout],
        );
        RingDescriptor::new(RingKind::Amalgamation {
            a: base.clone(),
            b: series_q(16),
            hom: HomDescriptor::new(HomKind::InclusionIntoDPlusM, true),
            ideal: IdealDescriptor::PositiveOrder,
            meets_ideal_zero: None,
            image: Some(image),
        })
    };
    // 6. injective along the whole ring with factors declared only Bézout
    //    domains
    let d6 = {
        let weak = bezout_only(&[RingFlag::IsDomain, RingFlag::IsBezout]);
        RingDescriptor::amalgamation(
            weak.clone(),
            weak,
            HomDescriptor::new(HomKind::Identity, true),
            IdealDescriptor::Whole,
        )
    };
    // 7. evaluation at zero with the zero ideal (non-injective branch)
    let d7 = RingDescriptor::amalgamation(
        qx(),
        q(),
        HomDescriptor::new(HomKind::PolynomialEvalAtZero, false),
        IdealDescriptor::Zero,
    );
    // 8. evaluation at zero along the whole ring (non-injective product)
    let d8 = RingDescriptor::amalgamation(
        qx(),
        q(),
        HomDescriptor::new(HomKind::PolynomialEvalAtZero, false),
        IdealDescriptor::Whole,
    );

    let expectations: [(&str, _, Verdict, Verdict, Verdict, &str); 8] = [
        ("series amalgam (EDR image)", d1, Verdict::Yes, Verdict::Yes, Verdict::Yes, classify::CASE_INJECTIVE_TRIVIAL_MEET),
        ("duplication along the unit ideal", d2, Verdict::Yes, Verdict::Yes, Verdict::Yes, classify::CASE_DUP_CONTAINS_BASE),
        ("duplication along the evens", d3, Verdict::No, Verdict::No, Verdict::No, classify::CASE_DUP_PROPER_IDEAL),
        ("identity along the whole ring", d4, Verdict::Yes, Verdict::Yes, Verdict::Yes, classify::CASE_FULL_IDEAL_INJECTIVE),
        ("series amalgam (Bézout image)", d5, Verdict::Yes, Verdict::Yes, Verdict::Unknown, classify::CASE_INJECTIVE_TRIVIAL_MEET),
        ("whole ring, Bézout factors", d6, Verdict::Yes, Verdict::Yes, Verdict::Unknown, classify::CASE_FULL_IDEAL_INJECTIVE),
        ("evaluation at zero, zero ideal", d7, Verdict::Yes, Verdict::Yes, Verdict::Yes, classify::CASE_ZERO_IDEAL_NONINJECTIVE),
        ("evaluation at zero, whole ring", d8, Verdict::Yes, Verdict::Yes, Verdict::Yes, classify::CASE_FULL_IDEAL_NONINJECTIVE),
    ];

    for (name, desc, bezout, hermite, edr, case) in expectations {
        let got = classify::classify_amalgamation(&desc).unwrap();
        assert_eq!(got.bezout, bezout, "{name}: bezout");
        assert_eq!(got.hermite, hermite, "{name}: hermite");
        assert_eq!(got.edr, edr, "{name}: edr");
        assert_eq!(got.case, case, "{name}: clause");
        assert!(got.chain_coherent(), "{name}: chain");
    }
    c.finish();
}
