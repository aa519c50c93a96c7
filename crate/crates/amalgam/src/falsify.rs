//! Empirical guards on declared hypotheses: a seeded sampler hunts for
//! violations of declared flags, injectivity, trivial-meet declarations
//! and ideal closure; and a bounded enumeration searches for principal
//! generators of finitely generated ideals in integer-pair rings.
//!
//! Bounded search cannot prove non-principality: a miss is reported with
//! the bound and an exhaustiveness marker, nothing more.

use std::sync::Arc;


use crate::amalgam;
use crate::arith;
use crate::descriptor::{HomKind, IdealDescriptor, RingDescriptor, RingFlag, RingKind};
use crate::error::{Result, RingError};
use crate::ideal::ideal_contains;
use crate::ops;
use crate::sample::{canonical_probes, Sampler};
use crate::value::RingValue;

#[derive(Debug, Clone, PartialEq)]
pub enum FalsifyOutcome {
    Refuted { witness: String },
    NoCounterexample { samples: usize },
    Advisory { note: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FalsifyEntry {
    pub hypothesis: String,
    pub outcome: FalsifyOutcome,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct FalsifyReport {
    pub entries: Vec<FalsifyEntry>,
}

impl FalsifyReport {
    pub fn refutations(&self) -> impl Iterator<Item = &FalsifyEntry> {
        self.entries
            .iter()
            .filter(|e| matches!(e.outcome, FalsifyOutcome::Refuted { .. }))
    }

    pub fn refuted(&self, hypothesis_prefix: &str) -> bool {
        self.entries.iter().any(|e| {
            e.hypothesis.starts_with(hypothesis_prefix)
                && matches!(e.outcome, FalsifyOutcome::Refuted { .. })
        })
    }

    fn push(&mut self, hypothesis: impl Into<String>, outcome: FalsifyOutcome) {
        self.entries.push(FalsifyEntry {
            hypothesis: hypothesis.into(),
            outcome,
        });
    }
}

/// Sample random elements hunting for violations of the descriptor's
/// declared hypotheses. Deterministic given the seed.
pub fn falsify_flags(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
) -> Result<FalsifyReport> {
    let mut report = FalsifyReport::default();
    let mut sampler = Sampler::new(seed);

    falsify_domain_flag(ring, samples, &mut sampler, &mut report)?;
    falsify_valuation_flag(ring, samples, &mut sampler, &mut report)?;

    if let Some(view) = ring.pair_view() {
        if let Some(glue) = view.glue {
            falsify_hom_laws(ring, &view.left, &view.right, &glue.hom, samples, &mut sampler, &mut report)?;
            falsify_injectivity(&view.left, &view.right, &glue.hom, samples, &mut sampler, &mut report)?;
            falsify_meet(ring, &view.left, &view.right, &glue.hom, &glue.ideal, samples, &mut sampler, &mut report)?;
            falsify_ideal_closure(&view.right, &glue.ideal, samples, &mut sampler, &mut report)?;
        }
    }

    advisory_bezout_search(ring, samples.min(24), &mut sampler, &mut report);
    Ok(report)
}

fn falsify_domain_flag(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    if !ring.has_flag(RingFlag::IsDomain) {
        return Ok(());
    }
    let hypothesis = "IsDomain: no zero divisors";
    for _ in 0..samples {
        let x = sampler.nonzero(ring)?;
        let y = sampler.nonzero(ring)?;
        let prod = arith::mul(&x, &y)?;
        if prod.is_zero() {
            report.push(
                hypothesis,
                FalsifyOutcome::Refuted {
                    witness: format!(
                        "{} * {} = 0",
                        x.to_display_string(),
                        y.to_display_string()
                    ),
                },
            );
            return Ok(());
        }
    }
    report.push(hypothesis, FalsifyOutcome::NoCounterexample { samples });
    Ok(())
}

fn falsify_valuation_flag(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    if !ring.has_flag(RingFlag::IsValuation) {
        return Ok(());
    }
    let hypothesis = "IsValuation: any two elements are comparable by divisibility";
    let mut tested = 0usize;
    for _ in 0..samples {
        let x = sampler.value(ring)?;
        let y = sampler.value(ring)?;
        match amalgam_safe_pair_check(&x, &y) {
            Ok(true) => tested += 1,
            Ok(false) => {
                report.push(
                    hypothesis,
                    FalsifyOutcome::Refuted {
                        witness: format!(
                            "neither of {} and {} divides the other",
                            x.to_display_string(),
                            y.to_display_string()
                        ),
                    },
                );
                return Ok(());
            }
            Err(_) => {} // precision exhausted on this sample; skip it
        }
    }
    report.push(hypothesis, FalsifyOutcome::NoCounterexample { samples: tested });
    Ok(())
}

fn amalgam_safe_pair_check(x: &RingValue, y: &RingValue) -> Result<bool> {
    Ok(ops::divides(x, y)? || ops::divides(y, x)?)
}

#[allow(clippy::too_many_arguments)]
fn falsify_hom_laws(
    _ring: &Arc<RingDescriptor>,
    a_ring: &Arc<RingDescriptor>,
    b_ring: &Arc<RingDescriptor>,
    hom: &crate::descriptor::HomDescriptor,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    let hypothesis = "hom: preserves 0, 1, + and *";
    let f = |x: &RingValue| amalgam::apply_hom(hom, a_ring, b_ring, x);
    let zero_ok = f(&RingValue::zero(a_ring))?.is_zero_to_precision();
    let one_ok = arith::values_equal(&f(&RingValue::one(a_ring))?, &RingValue::one(b_ring))?
        .holds();
    if !zero_ok || !one_ok {
        report.push(
            hypothesis,
            FalsifyOutcome::Refuted {
                witness: "identities are not preserved".to_string(),
            },
        );
        return Ok(());
    }
    for _ in 0..samples {
        let x = sampler.value(a_ring)?;
        let y = sampler.value(a_ring)?;
        let add_law = arith::values_equal(
            &f(&arith::add(&x, &y)?)?,
            &arith::add(&f(&x)?, &f(&y)?)?,
        )?
        .holds();
        let mul_law = arith::values_equal(
            &f(&arith::mul(&x, &y)?)?,
            &arith::mul(&f(&x)?, &f(&y)?)?,
        )?
        .holds();
        if !add_law || !mul_law {
            report.push(
                hypothesis,
                FalsifyOutcome::Refuted {
                    witness: format!(
                        "law fails at x = {}, y = {}",
                        x.to_display_string(),
                        y.to_display_string()
                    ),
                },
            );
            return Ok(());
        }
    }
    report.push(hypothesis, FalsifyOutcome::NoCounterexample { samples });
    Ok(())
}

fn falsify_injectivity(
    a_ring: &Arc<RingDescriptor>,
    b_ring: &Arc<RingDescriptor>,
    hom: &crate::descriptor::HomDescriptor,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    if !hom.injective {
        return Ok(());
    }
    let hypothesis = "hom: declared injective";
    let f = |x: &RingValue| amalgam::apply_hom(hom, a_ring, b_ring, x);
    let mut pool = canonical_probes(a_ring);
    for _ in 0..samples {
        pool.push(sampler.value(a_ring)?);
    }
    for (i, x) in pool.iter().enumerate() {
        for y in pool.iter().skip(i + 1) {
            if arith::values_equal(x, y)?.holds() {
                continue;
            }
            if arith::values_equal(&f(x)?, &f(y)?)? == crate::value::EqOutcome::Exact {
                report.push(
                    hypothesis,
                    FalsifyOutcome::Refuted {
                        witness: format!(
                            "f({}) = f({})",
                            x.to_display_string(),
                            y.to_display_string()
                        ),
                    },
                );
                return Ok(());
            }
        }
    }
    report.push(
        hypothesis,
        FalsifyOutcome::NoCounterexample {
            samples: pool.len(),
        },
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn falsify_meet(
    ring: &Arc<RingDescriptor>,
    a_ring: &Arc<RingDescriptor>,
    b_ring: &Arc<RingDescriptor>,
    hom: &crate::descriptor::HomDescriptor,
    ideal: &IdealDescriptor,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    if amalgam::meets_ideal_zero(ring) != Some(true) {
        return Ok(());
    }
    let hypothesis = "meet: f(A) meets the ideal only in zero";
    let f = |x: &RingValue| amalgam::apply_hom(hom, a_ring, b_ring, x);
    let mut pool = canonical_probes(a_ring);
    for _ in 0..samples {
        pool.push(sampler.value(a_ring)?);
    }
    for x in &pool {
        let fx = f(x)?;
        if fx.is_zero() {
            continue;
        }
        if ideal_contains(ideal, b_ring, &fx)? {
            report.push(
                hypothesis,
                FalsifyOutcome::Refuted {
                    witness: format!(
                        "a = {}: f(a) = {} is a nonzero ideal element",
                        x.to_display_string(),
                        fx.to_display_string()
                    ),
                },
            );
            return Ok(());
        }
    }
    report.push(
        hypothesis,
        FalsifyOutcome::NoCounterexample {
            samples: pool.len(),
        },
    );
    Ok(())
}

fn falsify_ideal_closure(
    b_ring: &Arc<RingDescriptor>,
    ideal: &IdealDescriptor,
    samples: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) -> Result<()> {
    let hypothesis = "ideal: closed under addition and ambient multiplication";
    for _ in 0..samples {
        let j1 = sampler.ideal_element(ideal, b_ring)?;
        let j2 = sampler.ideal_element(ideal, b_ring)?;
        let r = sampler.value(b_ring)?;
        let sum = arith::add(&j1, &j2)?;
        let scaled = arith::mul(&r, &j1)?;
        if !ideal_contains(ideal, b_ring, &sum)? || !ideal_contains(ideal, b_ring, &scaled)? {
            report.push(
                hypothesis,
                FalsifyOutcome::Refuted {
                    witness: format!(
                        "j1 = {}, j2 = {}, r = {}",
                        j1.to_display_string(),
                        j2.to_display_string(),
                        r.to_display_string()
                    ),
                },
            );
            return Ok(());
        }
    }
    report.push(hypothesis, FalsifyOutcome::NoCounterexample { samples });
    Ok(())
}

fn advisory_bezout_search(
    ring: &Arc<RingDescriptor>,
    attempts: usize,
    sampler: &mut Sampler,
    report: &mut FalsifyReport,
) {
    if !ring.has_flag(RingFlag::IsBezout) {
        return;
    }
    let hypothesis = "IsBezout: two-generated ideals principal (advisory, bounded)";
    if !enumerable(ring) {
        report.push(
            hypothesis,
            FalsifyOutcome::Skipped {
                reason: "ring is not boundedly enumerable".to_string(),
            },
        );
        return;
    }
    for _ in 0..attempts {
        let g1 = match sampler.value(ring) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let g2 = match sampler.value(ring) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if g1.is_zero() && g2.is_zero() {
            continue;
        }
        match principal_generator_search(ring, &[g1.clone(), g2.clone()], 8) {
            Ok(res) if res.generator.is_none() && res.exhaustive => {
                report.push(
                    hypothesis,
                    FalsifyOutcome::Advisory {
                        note: format!(
                            "no principal generator of ({}, {}) within bound 8 (exhaustive)",
                            g1.to_display_string(),
                            g2.to_display_string()
                        ),
                    },
                );
                return;
            }
            _ => {}
        }
    }
    report.push(
        hypothesis,
        FalsifyOutcome::NoCounterexample { samples: attempts },
    );
}

/// Result of the bounded principal-generator enumeration.
#[derive(Debug, Clone)]
pub struct WitnessSearch {
    pub generator: Option<RingValue>,
    pub exhaustive: bool,
    pub bound: u32,
    pub candidates_tested: u64,
}

fn enumerable(ring: &Arc<RingDescriptor>) -> bool {
    match ring.pair_view() {
        Some(view) => {
            let comps_ok = matches!(view.left.kind, RingKind::Integers)
                && matches!(view.right.kind, RingKind::Integers);
            let glue_ok = match &view.glue {
                None => true,
                Some(g) => matches!(g.hom.kind, HomKind::Identity),
            };
            comps_ok && glue_ok
        }
        None => false,
    }
}

/// Ordered small-integer stream: 0, 1, -1, 2, -2, ...
fn signed_range(bound: u32) -> Vec<i64> {
    let mut out = vec![0i64];
    for k in 1..=bound as i64 {
        out.push(k);
        out.push(-k);
    }
    out
}

/// Enumerate candidate generators `(a, f(a)+j)` with `|a|, |j| <= bound`
/// in lexicographic (|a|, |j|) order (positive before negative), returning
/// the first that divides every given generator and is a bounded-coefficient
/// combination of them.
pub fn principal_generator_search(
    ring: &Arc<RingDescriptor>,
    gens: &[RingValue],
    bound: u32,
) -> Result<WitnessSearch> {
    if !enumerable(ring) {
        return Err(RingError::NotEnumerable);
    }
    let view = ring.pair_view().expect("pair ring");
    let has_glue = view.glue.is_some();
    let ideal = view.glue.as_ref().map(|g| g.ideal.clone());

    // extract generator coordinates as machine integers
    let mut gen_coords = Vec::with_capacity(gens.len());
    for g in gens {
        if !g.ring().same_structure(ring) {
            return Err(RingError::MixedRings);
        }
        let (l, r) = g.payload().as_pair()?;
        let l = i64::try_from(l.as_int()?).map_err(|_| RingError::NotEnumerable)?;
        let r = i64::try_from(r.as_int()?).map_err(|_| RingError::NotEnumerable)?;
        gen_coords.push((l, r));
    }

    // ideal membership on machine integers
    let j_ok = |j: i64| -> bool {
        match &ideal {
            None => true,
            Some(IdealDescriptor::Whole) => true,
            Some(IdealDescriptor::Zero) => j == 0,
            Some(IdealDescriptor::MultiplesOf(g)) => {
                let g = g
                    .payload()
                    .as_int()
                    .ok()
                    .and_then(|n| i64::try_from(n).ok())
                    .unwrap_or(0);
                if g == 0 {
                    j == 0
                } else {
                    j % g == 0
                }
            }
            Some(IdealDescriptor::PositiveOrder) => false,
        }
    };

    // an (a, j) pair denotes the element (a, a+j) under the identity glue,
    // or the raw pair (a, j) in a plain product
    let element = |a: i64, j: i64| -> (i64, i64) {
        if has_glue {
            (a, a + j)
        } else {
            (a, j)
        }
    };

    let range = signed_range(bound);
    let coeff_pairs: Vec<(i64, i64)> = {
        let mut out = Vec::new();
        for &a in &range {
            for &j in &range {
                if j_ok(j) {
                    out.push(element(a, j));
                }
            }
        }
        out
    };

    let divides_pair = |c: (i64, i64), g: (i64, i64)| -> bool {
        // componentwise quotient with free slots, then membership
        let q1 = if c.0 == 0 {
            if g.0 == 0 {
                None
            } else {
                return false;
            }
        } else if g.0 % c.0 == 0 {
            Some(g.0 / c.0)
        } else {
            return false;
        };
        let q2 = if c.1 == 0 {
            if g.1 == 0 {
                None
            } else {
                return false;
            }
        } else if g.1 % c.1 == 0 {
            Some(g.1 / c.1)
        } else {
            return false;
        };
        match (q1, q2) {
            (Some(x), Some(y)) => j_ok(y - x) || !has_glue,
            // a free slot can copy the fixed one (defect 0)
            _ => true,
        }
    };

    let mut tested = 0u64;
    let budget = 200_000_000u64;

    // candidate order: lexicographic by (|a|, |j|), sign-positive first
    for &a in &range {
        for &j in &range {
            if !j_ok(j) {
                continue;
            }
            let cand = element(a, j);
            if cand == (0, 0) {
                continue;
            }
            if !gen_coords.iter().all(|&g| divides_pair(cand, g)) {
                continue;
            }
            // bounded-coefficient combination: sum gens[i] * c_i = cand
            if let Some(found) = combination_exists(&gen_coords, &coeff_pairs, cand, &mut tested, budget)
            {
                if found {
                    let left = RingValue::from_i64(&view.left, cand.0);
                    let right = RingValue::from_i64(&view.right, cand.1);
                    let generator = arith::join_pair(ring, left, right)?;
                    return Ok(WitnessSearch {
                        generator: Some(generator),
                        exhaustive: true,
                        bound,
                        candidates_tested: tested,
                    });
                }
            } else {
                return Ok(WitnessSearch {
                    generator: None,
                    exhaustive: false,
                    bound,
                    candidates_tested: tested,
                });
            }
        }
    }
    Ok(WitnessSearch {
        generator: None,
        exhaustive: true,
        bound,
        candidates_tested: tested,
    })
}

/// Depth-first search over coefficient tuples; `None` when the work budget
/// is exhausted.
fn combination_exists(
    gens: &[(i64, i64)],
    coeffs: &[(i64, i64)],
    target: (i64, i64),
    tested: &mut u64,
    budget: u64,
) -> Option<bool> {
    fn rec(
        gens: &[(i64, i64)],
        coeffs: &[(i64, i64)],
        target: (i64, i64),
        acc: (i64, i64),
        idx: usize,
        tested: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        if idx == gens.len() {
            return Some(acc == target);
        }
        let g = gens[idx];
        for &c in coeffs {
            *tested += 1;
            if *tested > budget {
                return None;
            }
            let next = (acc.0 + g.0 * c.0, acc.1 + g.1 * c.1);
            match rec(gens, coeffs, target, next, idx + 1, tested, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
        }
        Some(false)
    }
    rec(gens, coeffs, target, (0, 0), 0, tested, budget)
}
