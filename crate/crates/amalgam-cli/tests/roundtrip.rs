//! Render/parse round-trip: serializing any value and re-parsing it
//! yields an identical payload, across every supported construction.

use amalgam::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingKind};
use amalgam::sample::Sampler;
use amalgam::{RingDescriptor, RingFlag, RingValue};
use amalgam_cli::input::parse_element;
use amalgam_cli::render::render_value;

fn battery() -> Vec<std::sync::Arc<RingDescriptor>> {
    let z = RingDescriptor::integers();
    let two = RingValue::from_i64(&z, 2);
    let series_amalgam = RingDescriptor::new(RingKind::Amalgamation {
        a: z.clone(),
        b: RingDescriptor::truncated_series(12),
        hom: HomDescriptor::new(HomKind::InclusionIntoDPlusM, true),
        ideal: IdealDescriptor::PositiveOrder,
        meets_ideal_zero: None,
        image: Some(RingDescriptor::with_flags(
            RingKind::DPlusM {
                base: z.clone(),
                precision: 12,
            },
            &[RingFlag::IsDomain, RingFlag::IsBezout, RingFlag::IsEdr],
        )),
    });
    vec![
        z.clone(),
        RingDescriptor::rationals(),
        RingDescriptor::polynomials(),
        RingDescriptor::truncated_series(12),
        RingDescriptor::dplusm(z.clone(), 12),
        RingDescriptor::overring(z.clone(), vec![two.clone()]),
        RingDescriptor::product(z.clone(), RingDescriptor::rationals()),
        series_amalgam,
        RingDescriptor::amalgamation(
            z.clone(),
            z.clone(),
            HomDescriptor::new(HomKind::Identity, true),
            IdealDescriptor::MultiplesOf(two),
        ),
        RingDescriptor::duplication(z, IdealDescriptor::Whole),
    ]
}

#[test]
fn sampled_values_round_trip() {
    for ring in battery() {
        let mut sampler = Sampler::new(0x707);
        for case in 0..50 {
            let v = sampler.value(&ring).unwrap();
            let rendered = render_value(&v)
                .unwrap_or_else(|e| panic!("{ring}: render failed on case {case}: {e}"));
            let back = parse_element(&ring, &rendered, 12)
                .unwrap_or_else(|e| panic!("{ring}: reparse failed on case {case}: {e}\n{rendered}"));
            assert_eq!(
                back.payload(),
                v.payload(),
                "{ring}: case {case} changed through the round trip\nrendered: {rendered}"
            );
        }
    }
}

#[test]
fn zero_and_one_round_trip() {
    for ring in battery() {
        for v in [RingValue::zero(&ring), RingValue::one(&ring)] {
            let rendered = render_value(&v).unwrap();
            let back = parse_element(&ring, &rendered, 12).unwrap();
            assert_eq!(back.payload(), v.payload(), "{ring}");
        }
    }
}
