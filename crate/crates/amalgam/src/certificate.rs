//! Gcd certificates and their machine verification.
//!
//! A certificate `(d, a1, b1, alpha, beta)` witnesses that `d` generates
//! the ideal of `a` and `b`: `a = a1*d`, `b = b1*d` and
//! `alpha*a1 + beta*b1 = 1`. Multiplying the last equation by `d` gives
//! `alpha*a + beta*b = d`, so `d` is both a common divisor and a
//! combination. The verifier re-evaluates the three equations from
//! scratch and never trusts the producing algorithm.

use crate::arith;
use crate::error::RingError;
use crate::value::{EqOutcome, RingValue};

#[derive(Debug, Clone, PartialEq)]
pub struct GcdCertificate {
    /// Generator of the ideal spanned by the two inputs.
    pub d: RingValue,
    /// Cofactor with `a = a1 * d`.
    pub a1: RingValue,
    /// Cofactor with `b = b1 * d`.
    pub b1: RingValue,
    /// Bézout coefficients for the cofactors: `alpha*a1 + beta*b1 = 1`.
    pub alpha: RingValue,
    pub beta: RingValue,
}

/// One named verification check with its comparison outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn from_eq(name: &str, outcome: EqOutcome) -> Check {
        Check {
            name: name.to_string(),
            pass: outcome.holds(),
            note: match outcome {
                EqOutcome::Exact => None,
                EqOutcome::ToPrecision(p) => Some(format!("verified to precision {p}")),
                EqOutcome::Distinct => Some("values differ".to_string()),
            },
        }
    }

    pub fn failed(name: &str, err: &RingError) -> Check {
        Check {
            name: name.to_string(),
            pass: false,
            note: Some(err.to_string()),
        }
    }

    pub fn bool(name: &str, pass: bool, note: Option<String>) -> Check {
        Check {
            name: name.to_string(),
            pass,
            note,
        }
    }
}

/// A verification record: a list of named pass/fail checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Re-evaluate the three certificate equations exactly (to precision for
/// series). Failures are report entries, never errors.
pub fn verify_gcd_certificate(
    a: &RingValue,
    b: &RingValue,
    cert: &GcdCertificate,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let consistent = a.same_ring(b)
        && [&cert.d, &cert.a1, &cert.b1, &cert.alpha, &cert.beta]
            .iter()
            .all(|v| v.same_ring(a));
    report.push(Check::bool(
        "certificate ring consistency",
        consistent,
        (!consistent).then(|| "operands come from different descriptors".to_string()),
    ));
    if !consistent {
        return report;
    }

    let eq = |name: &str, lhs: Result<RingValue, RingError>, rhs: &RingValue| -> Check {
        match lhs {
            Ok(lhs) => match arith::values_equal(&lhs, rhs) {
                Ok(outcome) => Check::from_eq(name, outcome),
                Err(e) => Check::failed(name, &e),
            },
            Err(e) => Check::failed(name, &e),
        }
    };

    report.push(eq("a = a1*d", arith::mul(&cert.a1, &cert.d), a));
    report.push(eq("b = b1*d", arith::mul(&cert.b1, &cert.d), b));
    let combo = arith::mul(&cert.alpha, &cert.a1)
        .and_then(|l| arith::mul(&cert.beta, &cert.b1).and_then(|r| arith::add(&l, &r)));
    report.push(eq(
        "alpha*a1 + beta*b1 = 1",
        combo,
        &RingValue::one(a.ring()),
    ));
    report
}

/// The derived generator identity `alpha*a + beta*b = d`.
pub fn verify_generator_identity(
    a: &RingValue,
    b: &RingValue,
    cert: &GcdCertificate,
) -> Result<EqOutcome, RingError> {
    let lhs = arith::add(&arith::mul(&cert.alpha, a)?, &arith::mul(&cert.beta, b)?)?;
    arith::values_equal(&lhs, &cert.d)
}
