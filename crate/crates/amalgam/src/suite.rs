//! The bundled property suite behind the CLI `check` subcommand: for a
//! given descriptor it runs every law that applies — ring axioms,
//! certificate soundness, divisibility structure, the kaplansky step,
//! homomorphism laws, amalgam closure and inverses, the projection
//! isomorphism, classifier coherence, and small matrix normal forms —
//! and reports per-suite pass counts.

use std::sync::Arc;

use crate::amalgam;
use crate::arith;
use crate::certificate::{verify_gcd_certificate, verify_generator_identity};
use crate::classify;
use crate::descriptor::{RingDescriptor, RingKind};
use crate::error::Result;
use crate::gcd;
use crate::matrix::{self, Matrix};
use crate::ops;
use crate::sample::Sampler;
use crate::value::RingValue;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: String,
    pub passes: usize,
    pub failures: usize,
    pub skipped: bool,
    pub notes: Vec<String>,
}

impl SuiteResult {
    fn skipped(name: &str, reason: &str) -> SuiteResult {
        SuiteResult {
            name: name.to_string(),
            passes: 0,
            failures: 0,
            skipped: true,
            notes: vec![reason.to_string()],
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub suites: Vec<SuiteResult>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass())
    }
}

struct SuiteRun {
    name: &'static str,
    passes: usize,
    failures: usize,
    notes: Vec<String>,
}

impl SuiteRun {
    fn new(name: &'static str) -> SuiteRun {
        SuiteRun {
            name,
            passes: 0,
            failures: 0,
            notes: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, note: impl FnOnce() -> String) {
        if ok {
            self.passes += 1;
        } else {
            self.failures += 1;
            if self.notes.len() < 4 {
                self.notes.push(note());
            }
        }
    }

    fn error(&mut self, e: &crate::error::RingError) {
        self.failures += 1;
        if self.notes.len() < 4 {
            self.notes.push(e.to_string());
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            passes: self.passes,
            failures: self.failures,
            skipped: false,
            notes: self.notes,
        }
    }
}

pub fn run_property_suite(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
    _bound: u32,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::default();
    report.suites.push(ring_axioms(ring, samples, seed)?);
    report.suites.push(certificate_soundness(ring, samples, seed)?);
    report.suites.push(divisibility_and_units(ring, samples, seed)?);
    report.suites.push(kaplansky_suite(ring, samples, seed)?);
    report.suites.push(amalgam_suite(ring, samples, seed)?);
    report.suites.push(iso_suite(ring, samples, seed)?);
    report.suites.push(classifier_suite(ring)?);
    report.suites.push(matrix_suite(ring, samples.min(25), seed)?);
    report.suites.push(duplication_reduction_suite(ring, samples, seed)?);
    Ok(report)
}

fn ring_axioms(ring: &Arc<RingDescriptor>, samples: usize, seed: u64) -> Result<SuiteResult> {
    let mut run = SuiteRun::new("ring axioms");
    let mut s = Sampler::new(seed);
    for _ in 0..samples {
        let x = s.value(ring)?;
        let y = s.value(ring)?;
        let z = s.value(ring)?;
        let assoc_add = arith::values_equal(
            &arith::add(&arith::add(&x, &y)?, &z)?,
            &arith::add(&x, &arith::add(&y, &z)?)?,
        )?
        .holds();
        let assoc_mul = arith::values_equal(
            &arith::mul(&arith::mul(&x, &y)?, &z)?,
            &arith::mul(&x, &arith::mul(&y, &z)?)?,
        )?
        .holds();
        let comm_mul = arith::values_equal(&arith::mul(&x, &y)?, &arith::mul(&y, &x)?)?.holds();
        let distr = arith::values_equal(
            &arith::mul(&x, &arith::add(&y, &z)?)?,
            &arith::add(&arith::mul(&x, &y)?, &arith::mul(&x, &z)?)?,
        )?
        .holds();
        let identities = arith::values_equal(&arith::mul(&x, &RingValue::one(ring))?, &x)?.holds()
            && arith::values_equal(&arith::add(&x, &RingValue::zero(ring))?, &x)?.holds();
        run.record(assoc_add && assoc_mul && comm_mul && distr && identities, || {
            format!("axiom failure near x = {}", x.to_display_string())
        });
    }
    Ok(run.finish())
}

fn certificate_soundness(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
) -> Result<SuiteResult> {
    if !gcd::has_gcd_capability(ring) {
        return Ok(SuiteResult::skipped(
            "gcd certificate soundness",
            "ring has no certified gcd",
        ));
    }
    let mut run = SuiteRun::new("gcd certificate soundness");
    let mut s = Sampler::new(seed ^ 0x9e37);
    for _ in 0..samples {
        let a = s.value(ring)?;
        let b = s.value(ring)?;
        match gcd::gcd_certified(&a, &b) {
            Ok(cert) => {
                let rep = verify_gcd_certificate(&a, &b, &cert);
                let gen_id = verify_generator_identity(&a, &b, &cert)
                    .map(|o| o.holds())
                    .unwrap_or(false);
                run.record(rep.pass() && gen_id, || {
                    format!(
                        "certificate failed for a = {}, b = {}",
                        a.to_display_string(),
                        b.to_display_string()
                    )
                });
            }
            Err(crate::error::RingError::PrecisionExhausted { .. }) => {}
            Err(e) => run.error(&e),
        }
    }
    Ok(run.finish())
}

fn divisibility_and_units(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
) -> Result<SuiteResult> {
    let mut run = SuiteRun::new("divisibility preorder and unit law");
    let mut s = Sampler::new(seed ^ 0x51ce);
    for _ in 0..samples {
        let a = s.nonzero(ring)?;
        let r = s.value(ring)?;
        let t = s.value(ring)?;
        // reflexive, and transitive along constructed chains a | ar | art
        let refl = ops::divides(&a, &a).unwrap_or(false);
        let b = arith::mul(&a, &r)?;
        let c = arith::mul(&b, &t)?;
        let chain = match (ops::divides(&a, &b), ops::divides(&a, &c)) {
            (Ok(ab), Ok(ac)) => ab && ac,
            _ => true, // precision-exhausted divisions are skipped
        };
        let u = s.unit(ring)?;
        let unit_law = match ops::unit_inverse(&u)? {
            Some(inv) => {
                arith::values_equal(&arith::mul(&u, &inv)?, &RingValue::one(ring))?.holds()
            }
            None => false,
        };
        run.record(refl && chain && unit_law, || {
            format!(
                "divisibility failure near a = {}, u = {}",
                a.to_display_string(),
                u.to_display_string()
            )
        });
    }
    Ok(run.finish())
}

fn kaplansky_suite(ring: &Arc<RingDescriptor>, samples: usize, seed: u64) -> Result<SuiteResult> {
    if !ops::kaplansky_supported(ring) {
        return Ok(SuiteResult::skipped(
            "kaplansky step",
            "ring has no kaplansky capability",
        ));
    }
    let mut run = SuiteRun::new("kaplansky step");
    let mut s = Sampler::new(seed ^ 0xabcd);
    for _ in 0..samples {
        let a = s.value(ring)?;
        let b = s.value(ring)?;
        let c = s.value(ring)?;
        // precondition: gcd(a, b, c) must be a unit
        let g = match gcd::gcd_certified(&a, &b).and_then(|ab| gcd::gcd_certified(&ab.d, &c)) {
            Ok(cert) => cert.d,
            Err(_) => continue,
        };
        if !ops::is_unit(&g)? {
            continue;
        }
        match ops::kaplansky_solve(&a, &b, &c)? {
            Some((p, q)) => {
                let pa = arith::mul(&p, &a)?;
                let pbqc = arith::add(&arith::mul(&p, &b)?, &arith::mul(&q, &c)?)?;
                let ok = match gcd::gcd_certified(&pa, &pbqc) {
                    Ok(cert) => {
                        verify_gcd_certificate(&pa, &pbqc, &cert).pass()
                            && ops::is_unit(&cert.d)?
                    }
                    Err(_) => false,
                };
                run.record(ok, || {
                    format!(
                        "solution not re-verified for ({}, {}, {})",
                        a.to_display_string(),
                        b.to_display_string(),
                        c.to_display_string()
                    )
                });
            }
            None => run.record(false, || "no solution despite unit gcd".to_string()),
        }
    }
    Ok(run.finish())
}

fn amalgam_suite(ring: &Arc<RingDescriptor>, samples: usize, seed: u64) -> Result<SuiteResult> {
    let view = match ring.pair_view() {
        Some(v) if v.glue.is_some() => v,
        _ => {
            return Ok(SuiteResult::skipped(
                "amalgam closure and inverse law",
                "not an amalgamation or duplication",
            ))
        }
    };
    let glue = view.glue.expect("checked");
    let mut run = SuiteRun::new("amalgam closure and inverse law");
    let mut s = Sampler::new(seed ^ 0x77aa);
    for _ in 0..samples {
        let u = s.value(ring)?;
        let v = s.value(ring)?;
        let sum = arith::add(&u, &v)?;
        let prod = arith::mul(&u, &v)?;
        let closure =
            amalgam::check_membership(&sum)? && amalgam::check_membership(&prod)?;
        let unit = s.unit(ring)?;
        let inverse_law = match amalgam::invert(&unit)? {
            Some(w) => {
                let product = arith::mul(&w, &unit)?;
                arith::values_equal(&product, &RingValue::one(ring))?.holds()
                    && amalgam::check_membership(&w)?
            }
            None => false,
        };
        // hom laws on the glue
        let x = s.value(&view.left)?;
        let y = s.value(&view.left)?;
        let f = |v: &RingValue| amalgam::apply_hom(&glue.hom, &view.left, &view.right, v);
        let hom_laws = arith::values_equal(&f(&arith::add(&x, &y)?)?, &arith::add(&f(&x)?, &f(&y)?)?)?
            .holds()
            && arith::values_equal(&f(&arith::mul(&x, &y)?)?, &arith::mul(&f(&x)?, &f(&y)?)?)?
                .holds();
        run.record(closure && inverse_law && hom_laws, || {
            format!("amalgam law failure near u = {}", u.to_display_string())
        });
    }
    Ok(run.finish())
}

fn iso_suite(ring: &Arc<RingDescriptor>, samples: usize, seed: u64) -> Result<SuiteResult> {
    if !amalgam::iso_available(ring) {
        return Ok(SuiteResult::skipped(
            "projection isomorphism",
            "projection unavailable (flags or image missing)",
        ));
    }
    let mut run = SuiteRun::new("projection isomorphism");
    let mut s = Sampler::new(seed ^ 0x1357);
    for _ in 0..samples {
        let u = s.value(ring)?;
        let v = s.value(ring)?;
        // a lying trivial-meet declaration surfaces here as an error; that
        // is a suite failure, not an abort
        let laws = (|| -> Result<bool> {
            let tu = amalgam::iso_to_target(&u)?;
            let tv = amalgam::iso_to_target(&v)?;
            let back = amalgam::iso_from_target(ring, &tu)?;
            let round_trip = arith::values_equal(&back, &u)?.holds();
            let additive = arith::values_equal(
                &amalgam::iso_to_target(&arith::add(&u, &v)?)?,
                &arith::add(&tu, &tv)?,
            )?
            .holds();
            let multiplicative = arith::values_equal(
                &amalgam::iso_to_target(&arith::mul(&u, &v)?)?,
                &arith::mul(&tu, &tv)?,
            )?
            .holds();
            Ok(round_trip && additive && multiplicative)
        })();
        match laws {
            Ok(ok) => run.record(ok, || {
                format!("iso failure near u = {}", u.to_display_string())
            }),
            Err(e) => run.error(&e),
        }
    }
    Ok(run.finish())
}

fn classifier_suite(ring: &Arc<RingDescriptor>) -> Result<SuiteResult> {
    if !ring.is_pair_ring() || matches!(ring.kind, RingKind::Product { .. }) {
        return Ok(SuiteResult::skipped(
            "classifier chain coherence",
            "not an amalgamation or duplication",
        ));
    }
    let mut run = SuiteRun::new("classifier chain coherence");
    let c = classify::classify_amalgamation(ring)?;
    run.record(c.chain_coherent(), || {
        format!("chain violated: {c:?}")
    });
    Ok(run.finish())
}

fn matrix_suite(ring: &Arc<RingDescriptor>, samples: usize, seed: u64) -> Result<SuiteResult> {
    if !matrix::snf_supported(ring) {
        if gcd::has_gcd_capability(ring) {
            return triangular_matrix_suite(ring, samples, seed);
        }
        return Ok(SuiteResult::skipped(
            "matrix normal forms",
            "no diagonalization route",
        ));
    }
    let mut run = SuiteRun::new("matrix normal forms");
    let mut s = Sampler::new(seed ^ 0xfeed);
    for _ in 0..samples {
        let n = s.int_in(1, 3) as usize;
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(s.value(ring)?);
        }
        let m = Matrix::new(ring.clone(), n, n, entries)?;
        match matrix::snf(&m) {
            Ok(res) => run.record(res.report.pass(), || {
                format!("snf verification failed:\n{:?}", res.report)
            }),
            Err(crate::error::RingError::PrecisionExhausted { .. }) => {}
            Err(e) => run.error(&e),
        }
        // determinant multiplicativity on 2x2 pairs
        let mut es = Vec::with_capacity(8);
        for _ in 0..8 {
            es.push(s.value(ring)?);
        }
        let m1 = Matrix::new(ring.clone(), 2, 2, es[..4].to_vec())?;
        let m2 = Matrix::new(ring.clone(), 2, 2, es[4..].to_vec())?;
        let lhs = matrix::mat_det(&m1.mul(&m2)?)?;
        let rhs = arith::mul(&matrix::mat_det(&m1)?, &matrix::mat_det(&m2)?)?;
        run.record(arith::values_equal(&lhs, &rhs)?.holds(), || {
            "determinant multiplicativity failed".to_string()
        });
    }
    Ok(run.finish())
}

fn triangular_matrix_suite(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
) -> Result<SuiteResult> {
    let mut run = SuiteRun::new("matrix triangularization");
    let mut s = Sampler::new(seed ^ 0xfeed);
    for _ in 0..samples {
        let n = s.int_in(1, 3) as usize;
        let mut entries = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            entries.push(s.value(ring)?);
        }
        let m = Matrix::new(ring.clone(), n, n, entries)?;
        match matrix::hermite_reduce(&m) {
            Ok((t, q)) => {
                let rep = matrix::verify_hermite(&m, &t, &q);
                run.record(rep.pass(), || format!("hermite verification failed:\n{rep:?}"));
            }
            Err(crate::error::RingError::PrecisionExhausted { .. }) => {}
            Err(e) => run.error(&e),
        }
    }
    Ok(run.finish())
}

fn duplication_reduction_suite(
    ring: &Arc<RingDescriptor>,
    samples: usize,
    seed: u64,
) -> Result<SuiteResult> {
    let (view, glue) = match &ring.kind {
        RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair");
            let glue = view.glue.clone().expect("glue");
            (view, glue)
        }
        _ => {
            return Ok(SuiteResult::skipped(
                "duplication product reduction",
                "not a duplication",
            ))
        }
    };
    if !crate::ideal::ideal_is_whole_like(&glue.ideal, &view.right)? {
        return Ok(SuiteResult::skipped(
            "duplication product reduction",
            "base not contained in the module",
        ));
    }
    // A ⊆ E: arithmetic must agree with the plain product A x (A+E)
    let product = RingDescriptor::product(view.left.clone(), view.right.clone());
    let mut run = SuiteRun::new("duplication product reduction");
    let mut s = Sampler::new(seed ^ 0x4242);
    for _ in 0..samples {
        let u = s.value(ring)?;
        let v = s.value(ring)?;
        let up = RingValue::raw(product.clone(), u.payload().clone());
        let vp = RingValue::raw(product.clone(), v.payload().clone());
        let add_match = arith::add(&u, &v)?.payload() == arith::add(&up, &vp)?.payload();
        let mul_match = arith::mul(&u, &v)?.payload() == arith::mul(&up, &vp)?.payload();
        run.record(add_match && mul_match, || {
            "duplication arithmetic departs from the product".to_string()
        });
    }
    Ok(run.finish())
}
