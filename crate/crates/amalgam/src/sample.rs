//! Seeded random element generation for property suites, the flag
//! falsifier and the acceptance batteries. Deterministic given a seed.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::amalgam;
use crate::descriptor::{IdealDescriptor, RingDescriptor, RingKind};
use crate::error::Result;
use crate::poly::Polynomial;
use crate::series::SeriesValue;
use crate::value::{FractionValue, Payload, RingValue};

/// Bounds used by the samplers; the defaults match the desk-scale
/// batteries (coefficients up to 20, valuations up to 5).
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    pub magnitude: i64,
    pub denominator: i64,
    pub max_valuation: usize,
    pub max_degree: usize,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            magnitude: 20,
            denominator: 20,
            max_valuation: 5,
            max_degree: 3,
        }
    }
}

pub struct Sampler {
    rng: ChaCha8Rng,
    pub bounds: SampleBounds,
}

impl Sampler {
    pub fn new(seed: u64) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds: SampleBounds::default(),
        }
    }

    pub fn with_bounds(seed: u64, bounds: SampleBounds) -> Sampler {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bounds,
        }
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    fn rational(&mut self) -> BigRational {
        let n = self.int_in(-self.bounds.magnitude, self.bounds.magnitude);
        let d = self.int_in(1, self.bounds.denominator);
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    fn integral(&mut self) -> BigRational {
        BigRational::from(BigInt::from(
            self.int_in(-self.bounds.magnitude, self.bounds.magnitude),
        ))
    }

    fn nonzero_integral(&mut self) -> BigRational {
        loop {
            let r = self.integral();
            if !r.is_zero() {
                return r;
            }
        }
    }

    /// A random element of the described ring.
    pub fn value(&mut self, ring: &Arc<RingDescriptor>) -> Result<RingValue> {
        match &ring.kind {
            RingKind::Integers => Ok(RingValue::from_i64(
                ring,
                self.int_in(-self.bounds.magnitude, self.bounds.magnitude),
            )),
            RingKind::Rationals => Ok(RingValue::raw(ring.clone(), Payload::Rat(self.rational()))),
            RingKind::PolynomialOverRationals => {
                let deg = self.int_in(0, self.bounds.max_degree as i64) as usize;
                let coeffs = (0..=deg).map(|_| self.rational()).collect();
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Poly(Polynomial::new(coeffs)),
                ))
            }
            RingKind::TruncatedSeries { precision, .. } => {
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Series(self.series(*precision, false)?),
                ))
            }
            RingKind::DPlusM { precision, base } => {
                let integral_constant = matches!(base.kind, RingKind::Integers);
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Series(self.series(*precision, integral_constant)?),
                ))
            }
            RingKind::Overring { base, denominators } => {
                let num = self.value(base)?.into_payload();
                let den = (0..denominators.len())
                    .map(|_| self.int_in(0, 3) as u32)
                    .collect();
                let f = crate::overring::reduce(ring, FractionValue { num: Box::new(num), den })?;
                Ok(RingValue::raw(ring.clone(), Payload::Fraction(f)))
            }
            RingKind::Product { left, right } => {
                let l = self.value(left)?;
                let r = self.value(right)?;
                crate::arith::join_pair(ring, l, r)
            }
            RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
                let view = ring.pair_view().expect("pair ring");
                let glue = view.glue.expect("amalgam glue");
                let a = self.value(&view.left)?;
                let j = self.ideal_element(&glue.ideal, &view.right)?;
                amalgam::make(ring, &a, &j)
            }
        }
    }

    fn series(&mut self, precision: usize, integral_constant: bool) -> Result<SeriesValue> {
        if self.int_in(0, 15) == 0 {
            return Ok(SeriesValue::ExactZero);
        }
        let val = (self.int_in(0, self.bounds.max_valuation as i64) as usize).min(precision - 1);
        let len = (precision - val).min(6);
        let mut coeffs = Vec::with_capacity(len);
        for k in 0..len {
            if val + k == 0 && integral_constant {
                coeffs.push(if k == 0 {
                    self.nonzero_integral()
                } else {
                    self.integral()
                });
            } else if k == 0 {
                coeffs.push(self.nonzero_rational());
            } else {
                coeffs.push(self.rational());
            }
        }
        Ok(SeriesValue::window(val, coeffs, precision))
    }

    pub fn nonzero(&mut self, ring: &Arc<RingDescriptor>) -> Result<RingValue> {
        for _ in 0..64 {
            let v = self.value(ring)?;
            if !v.is_zero_to_precision() {
                return Ok(v);
            }
        }
        Ok(RingValue::one(ring))
    }

    /// A random element of the described ideal inside its ambient ring.
    pub fn ideal_element(
        &mut self,
        ideal: &IdealDescriptor,
        ambient: &Arc<RingDescriptor>,
    ) -> Result<RingValue> {
        match ideal {
            IdealDescriptor::Zero => Ok(RingValue::zero(ambient)),
            IdealDescriptor::Whole => self.value(ambient),
            IdealDescriptor::MultiplesOf(g) => {
                let g = RingValue::raw(ambient.clone(), g.payload().clone());
                let r = self.value(ambient)?;
                crate::arith::mul(&g, &r)
            }
            IdealDescriptor::PositiveOrder => {
                let precision = ambient.series_precision().expect("series ambient");
                if self.int_in(0, 15) == 0 {
                    return Ok(RingValue::zero(ambient));
                }
                let val = self.int_in(1, self.bounds.max_valuation.max(1) as i64) as usize;
                let val = val.min(precision.saturating_sub(1)).max(1);
                let len = (precision - val).min(6);
                let mut coeffs = vec![self.nonzero_rational()];
                for _ in 1..len {
                    coeffs.push(self.rational());
                }
                Ok(RingValue::raw(
                    ambient.clone(),
                    Payload::Series(SeriesValue::window(val, coeffs, precision)),
                ))
            }
        }
    }

    /// A random unit of the ring. Falls back to 1 when units are scarce.
    pub fn unit(&mut self, ring: &Arc<RingDescriptor>) -> Result<RingValue> {
        match &ring.kind {
            RingKind::Integers => Ok(RingValue::from_i64(
                ring,
                if self.int_in(0, 1) == 0 { 1 } else { -1 },
            )),
            RingKind::Rationals => Ok(RingValue::raw(
                ring.clone(),
                Payload::Rat(self.nonzero_rational()),
            )),
            RingKind::PolynomialOverRationals => Ok(RingValue::raw(
                ring.clone(),
                Payload::Poly(Polynomial::constant(self.nonzero_rational())),
            )),
            RingKind::TruncatedSeries { precision, .. } => {
                let mut coeffs = vec![self.nonzero_rational()];
                for _ in 1..(*precision).min(6) {
                    coeffs.push(self.rational());
                }
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Series(SeriesValue::window(0, coeffs, *precision)),
                ))
            }
            RingKind::DPlusM { base, precision } => {
                let c0 = match base.kind {
                    RingKind::Integers => {
                        BigRational::from(BigInt::from(if self.int_in(0, 1) == 0 { 1 } else { -1 }))
                    }
                    _ => self.nonzero_rational(),
                };
                let mut coeffs = vec![c0];
                for _ in 1..(*precision).min(6) {
                    coeffs.push(self.rational());
                }
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Series(SeriesValue::window(0, coeffs, *precision)),
                ))
            }
            RingKind::Overring { base, denominators } => {
                let mut num = RingValue::one(base).into_payload();
                let mut den = vec![0u32; denominators.len()];
                for (i, g) in denominators.iter().enumerate() {
                    match self.int_in(-2, 2) {
                        k if k > 0 => {
                            for _ in 0..k {
                                num = crate::arith::payload_mul(base, &num, g.payload())?;
                            }
                        }
                        k if k < 0 => den[i] = (-k) as u32,
                        _ => {}
                    }
                }
                if matches!(base.kind, RingKind::Integers) && self.int_in(0, 1) == 0 {
                    num = crate::arith::payload_neg(base, &num);
                }
                Ok(RingValue::raw(
                    ring.clone(),
                    Payload::Fraction(FractionValue { num: Box::new(num), den }),
                ))
            }
            RingKind::Product { left, right } => {
                let l = self.unit(left)?;
                let r = self.unit(right)?;
                crate::arith::join_pair(ring, l, r)
            }
            RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
                let view = ring.pair_view().expect("pair ring");
                let glue = view.glue.expect("amalgam glue");
                let a = self.unit(&view.left)?;
                // hunt for j keeping f(a)+j a unit; j = 0 always works
                for _ in 0..24 {
                    let j = self.ideal_element(&glue.ideal, &view.right)?;
                    let candidate = amalgam::make(ring, &a, &j)?;
                    if crate::ops::is_unit(&candidate)? {
                        return Ok(candidate);
                    }
                }
                amalgam::make(ring, &a, &RingValue::zero(&view.right))
            }
        }
    }
}

/// Small deterministic elements every falsification run probes before
/// random sampling: zero, units, a couple of small values, and the
/// indeterminate where one exists.
pub fn canonical_probes(ring: &Arc<RingDescriptor>) -> Vec<RingValue> {
    let mut out = vec![
        RingValue::zero(ring),
        RingValue::one(ring),
        RingValue::from_i64(ring, -1),
        RingValue::from_i64(ring, 2),
    ];
    match &ring.kind {
        RingKind::PolynomialOverRationals => {
            out.push(RingValue::raw(
                ring.clone(),
                Payload::Poly(Polynomial::new(vec![
                    BigRational::zero(),
                    BigRational::one(),
                ])),
            ));
        }
        RingKind::TruncatedSeries { precision, .. } | RingKind::DPlusM { precision, .. } => {
            out.push(RingValue::raw(
                ring.clone(),
                Payload::Series(SeriesValue::monomial(BigRational::one(), 1, *precision)),
            ));
        }
        _ => {}
    }
    out
}
