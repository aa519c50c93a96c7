//! The transfer classifier: decides Bézout / Hermite / elementary-divisor
//! verdicts for amalgamations and duplications purely from declared flags
//! and structural facts (ideal kind, declared injectivity, derived meet).
//! It never samples; the falsifier is the separate, randomized tool.

use std::sync::Arc;

use crate::amalgam;
use crate::descriptor::{RingDescriptor, RingFlag, RingKind};
use crate::error::{Result, RingError};
use crate::ideal::ideal_is_whole_like;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        }
    }
}

/// Stable labels for the clauses the classifier can fire.
pub const CASE_ZERO_IDEAL_INJECTIVE: &str =
    "zero ideal, injective: isomorphic to the base ring";
pub const CASE_ZERO_IDEAL_NONINJECTIVE: &str =
    "zero ideal, non-injective: isomorphic to the base ring";
pub const CASE_FULL_IDEAL_INJECTIVE: &str =
    "full ideal, injective: the product of the components, factorwise transfer";
pub const CASE_FULL_IDEAL_NONINJECTIVE: &str =
    "full ideal, non-injective: the product of the components, factorwise transfer";
pub const CASE_INJECTIVE_TRIVIAL_MEET: &str =
    "injective, proper nonzero ideal, trivial meet: transported from the image ring";
pub const CASE_INJECTIVE_MEET_OBSTRUCTION: &str =
    "proper nonzero ideal meeting the embedded base: two-generated ideal obstruction";
pub const CASE_NONINJECTIVE_OBSTRUCTION: &str =
    "non-injective along a proper nonzero ideal: obstruction";
pub const CASE_UNDETERMINED: &str = "no clause applies: meet undetermined";
pub const CASE_DUP_ZERO: &str = "duplication along zero: isomorphic to the base ring";
pub const CASE_DUP_CONTAINS_BASE: &str =
    "duplication with the base inside the module: product transfer";
pub const CASE_DUP_PROPER_IDEAL: &str =
    "duplication along a proper nonzero ideal of the base: obstruction";

/// A theorem-case verdict, the clause that fired, and the declared flags
/// it consumed.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub bezout: Verdict,
    pub hermite: Verdict,
    pub edr: Verdict,
    pub case: &'static str,
    pub assumptions: Vec<String>,
}

impl Classification {
    fn unknown(case: &'static str) -> Classification {
        Classification {
            bezout: Verdict::Unknown,
            hermite: Verdict::Unknown,
            edr: Verdict::Unknown,
            case,
            assumptions: Vec::new(),
        }
    }

    /// The implication chain: an elementary divisor ring is Hermite, a
    /// Hermite ring is Bézout; contrapositives push the "no"s the other
    /// way.
    fn close_chain(mut self) -> Classification {
        if self.edr == Verdict::Yes {
            self.hermite = Verdict::Yes;
        }
        if self.hermite == Verdict::Yes {
            self.bezout = Verdict::Yes;
        }
        if self.bezout == Verdict::No {
            self.hermite = Verdict::No;
        }
        if self.hermite == Verdict::No {
            self.edr = Verdict::No;
        }
        self
    }

    pub fn chain_coherent(&self) -> bool {
        let rank = |v: Verdict| match v {
            Verdict::Yes => 2,
            Verdict::Unknown => 1,
            Verdict::No => 0,
        };
        rank(self.edr) <= rank(self.hermite) && rank(self.hermite) <= rank(self.bezout)
    }
}

fn flag(d: &Arc<RingDescriptor>, f: RingFlag, name: &str, used: &mut Vec<String>) -> bool {
    if d.has_flag(f) {
        used.push(format!("{name}: {} (declared)", f.name()));
        true
    } else {
        false
    }
}

/// Hermite-ness of a single described ring: declared outright, or implied
/// for a declared Bézout domain.
fn hermite_like(d: &Arc<RingDescriptor>, name: &str, used: &mut Vec<String>) -> bool {
    if flag(d, RingFlag::IsHermite, name, used) {
        return true;
    }
    d.has_flag(RingFlag::IsBezout) && d.has_flag(RingFlag::IsDomain) && {
        used.push(format!("{name}: IsBezout+IsDomain (declared; a Bézout domain is Hermite)"));
        true
    }
}

fn yes_if(cond: bool) -> Verdict {
    if cond {
        Verdict::Yes
    } else {
        Verdict::Unknown
    }
}

pub fn classify_amalgamation(ring: &Arc<RingDescriptor>) -> Result<Classification> {
    match &ring.kind {
        RingKind::Amalgamation { .. } => classify_amalgam_kind(ring),
        RingKind::Duplication { .. } => classify_duplication(ring),
        _ => Err(RingError::PayloadMismatch(
            "classification applies to amalgamations and duplications".into(),
        )),
    }
}

fn classify_amalgam_kind(ring: &Arc<RingDescriptor>) -> Result<Classification> {
    let view = ring.pair_view().expect("amalgamation");
    let glue = view.glue.expect("amalgamation");
    let (a, b) = (&view.left, &view.right);
    let injective = glue.hom.injective;
    let mut used = Vec::new();
    if injective {
        used.push("hom: declared injective".to_string());
    } else {
        used.push("hom: declared non-injective".to_string());
    }

    // structural ideal shape
    let zero_ideal = glue.ideal.is_structurally_zero();
    let full_ideal = ideal_is_whole_like(&glue.ideal, b)?;

    let mut c = if zero_ideal {
        // the ring collapses onto A
        let case = if injective {
            CASE_ZERO_IDEAL_INJECTIVE
        } else {
            CASE_ZERO_IDEAL_NONINJECTIVE
        };
        let mut c = Classification::unknown(case);
        c.bezout = yes_if(flag(a, RingFlag::IsBezout, "A", &mut used));
        c.hermite = yes_if(hermite_like(a, "A", &mut used));
        c.edr = yes_if(flag(a, RingFlag::IsEdr, "A", &mut used));
        c
    } else if full_ideal {
        // the ring is the product A x B
        let case = if injective {
            CASE_FULL_IDEAL_INJECTIVE
        } else {
            CASE_FULL_IDEAL_NONINJECTIVE
        };
        let mut c = Classification::unknown(case);
        c.bezout = yes_if(
            flag(a, RingFlag::IsBezout, "A", &mut used)
                && flag(b, RingFlag::IsBezout, "B", &mut used),
        );
        c.hermite = yes_if(hermite_like(a, "A", &mut used) && hermite_like(b, "B", &mut used));
        c.edr = yes_if(
            flag(a, RingFlag::IsEdr, "A", &mut used) && flag(b, RingFlag::IsEdr, "B", &mut used),
        );
        c
    } else {
        // proper nonzero ideal
        let domains = a.has_flag(RingFlag::IsDomain) && b.has_flag(RingFlag::IsDomain);
        if domains {
            used.push("A, B: IsDomain (declared)".to_string());
        }
        if !injective {
            // a Bézout amalgamation with non-injective hom forces J = 0
            let mut c = Classification::unknown(CASE_NONINJECTIVE_OBSTRUCTION);
            if domains {
                c.bezout = Verdict::No;
            }
            c
        } else {
            match amalgam::meets_ideal_zero(ring) {
                Some(false) => {
                    used.push("meet: f(A) meets the ideal (declared or derived)".to_string());
                    let mut c = Classification::unknown(CASE_INJECTIVE_MEET_OBSTRUCTION);
                    if domains {
                        c.bezout = Verdict::No;
                    }
                    c
                }
                Some(true) => {
                    used.push("meet: trivial (declared or derived)".to_string());
                    let mut c = Classification::unknown(CASE_INJECTIVE_TRIVIAL_MEET);
                    if let Some(img) = amalgam::image_ring(ring) {
                        c.bezout = yes_if(
                            domains && flag(&img, RingFlag::IsBezout, "image", &mut used),
                        );
                        c.hermite = yes_if(domains && hermite_like(&img, "image", &mut used));
                        c.edr = yes_if(domains && flag(&img, RingFlag::IsEdr, "image", &mut used));
                    }
                    c
                }
                None => Classification::unknown(CASE_UNDETERMINED),
            }
        }
    };
    c.assumptions = used;
    Ok(c.close_chain())
}

fn classify_duplication(ring: &Arc<RingDescriptor>) -> Result<Classification> {
    let view = ring.pair_view().expect("duplication");
    let glue = view.glue.expect("duplication");
    let a = &view.left;
    let mut used = Vec::new();
    let domain = flag(a, RingFlag::IsDomain, "A", &mut used);

    let zero = glue.ideal.is_structurally_zero();
    // A ⊆ E structurally: the whole fraction field, or a unit multiple of A
    let contains_base = match &glue.ideal {
        crate::descriptor::IdealDescriptor::Whole => true,
        other => ideal_is_whole_like(other, a).unwrap_or(false),
    };

    let mut c = if zero {
        let mut c = Classification::unknown(CASE_DUP_ZERO);
        c.bezout = yes_if(flag(a, RingFlag::IsBezout, "A", &mut used));
        c.hermite = yes_if(hermite_like(a, "A", &mut used));
        c.edr = yes_if(flag(a, RingFlag::IsEdr, "A", &mut used));
        c
    } else if contains_base {
        used.push("module: contains the base (structural)".to_string());
        let mut c = Classification::unknown(CASE_DUP_CONTAINS_BASE);
        let bez = flag(a, RingFlag::IsBezout, "A", &mut used);
        let edr = flag(a, RingFlag::IsEdr, "A", &mut used);
        c.bezout = yes_if(domain && bez);
        c.hermite = yes_if(domain && bez);
        c.edr = yes_if(domain && edr);
        c
    } else {
        used.push("module: proper nonzero ideal of the base (structural)".to_string());
        let mut c = Classification::unknown(CASE_DUP_PROPER_IDEAL);
        if domain {
            c.bezout = Verdict::No;
        }
        c
    };
    c.assumptions = used;
    Ok(c.close_chain())
}
