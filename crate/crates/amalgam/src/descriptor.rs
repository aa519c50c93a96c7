//! Ring descriptors: closed, composable descriptions of ring instances.
//!
//! A descriptor is a finite tree of base rings (integers, rationals,
//! polynomials, truncated series) and constructors (D+M rings, overrings,
//! products, amalgamations, duplications). Semantic facts that no algorithm
//! can decide from a black-box ring — domain-ness, Bézout-ness and friends —
//! travel as declared flags; they are trusted by the classifier and hunted
//! by the falsifier.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Result, RingError};
use crate::value::RingValue;

/// Declared semantic flags. Presence means "declared true"; absence means
/// unknown, not false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingFlag {
    IsDomain,
    IsBezout,
    IsHermite,
    IsEdr,
    IsValuation,
}

impl RingFlag {
    pub const ALL: [RingFlag; 5] = [
        RingFlag::IsDomain,
        RingFlag::IsBezout,
        RingFlag::IsHermite,
        RingFlag::IsEdr,
        RingFlag::IsValuation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RingFlag::IsDomain => "IsDomain",
            RingFlag::IsBezout => "IsBezout",
            RingFlag::IsHermite => "IsHermite",
            RingFlag::IsEdr => "IsEDR",
            RingFlag::IsValuation => "IsValuation",
        }
    }

    pub fn parse(s: &str) -> Option<RingFlag> {
        RingFlag::ALL.iter().copied().find(|f| f.name() == s)
    }
}

/// The homomorphism kinds a descriptor may carry. Each one is a canonical
/// map fixed by the (domain, codomain) pair, so a descriptor stays closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    Identity,
    /// Base domain included as the constant series of `A + xK[[x]]`
    /// (or of the full series ring over the fraction field).
    InclusionIntoDPlusM,
    /// Base ring included into one of its overrings as `a/1`.
    InclusionIntoOverring,
    /// Evaluation of a rational polynomial at zero (not injective).
    PolynomialEvalAtZero,
    /// Diagonal-through-the-left-factor: `a -> (a, embed(a))` into a
    /// product whose left factor is the domain itself.
    LeftFactorIntoProduct,
    /// Canonical inclusion of the integers into the rationals. Used
    /// internally when a duplication synthesizes its codomain; not part
    /// of the document surface.
    IntoFractionField,
}

impl HomKind {
    pub fn name(&self) -> &'static str {
        match self {
            HomKind::Identity => "Identity",
            HomKind::InclusionIntoDPlusM => "InclusionIntoDPlusM",
            HomKind::InclusionIntoOverring => "InclusionIntoOverring",
            HomKind::PolynomialEvalAtZero => "PolynomialEvalAtZero",
            HomKind::LeftFactorIntoProduct => "LeftFactorIntoProduct",
            HomKind::IntoFractionField => "IntoFractionField",
        }
    }
}

/// A ring homomorphism between described rings, with its declared
/// injectivity. The partial inverse is implemented per kind and is
/// defined exactly on the image.
#[derive(Debug, Clone, PartialEq)]
pub struct HomDescriptor {
    pub kind: HomKind,
    pub injective: bool,
}

impl HomDescriptor {
    pub fn new(kind: HomKind, injective: bool) -> Self {
        HomDescriptor { kind, injective }
    }
}

/// A finitely described ideal (or submodule) of an ambient ring.
#[derive(Debug, Clone, PartialEq)]
pub enum IdealDescriptor {
    Zero,
    Whole,
    MultiplesOf(RingValue),
    /// All series of valuation >= 1, i.e. `xK[[x]]` inside a series ring.
    PositiveOrder,
}

impl IdealDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            IdealDescriptor::Zero => "Zero",
            IdealDescriptor::Whole => "Whole",
            IdealDescriptor::MultiplesOf(_) => "MultiplesOf",
            IdealDescriptor::PositiveOrder => "PositiveOrder",
        }
    }

    /// Structurally zero: the zero ideal or multiples of zero.
    pub fn is_structurally_zero(&self) -> bool {
        match self {
            IdealDescriptor::Zero => true,
            IdealDescriptor::MultiplesOf(g) => g.payload().is_zero_payload(),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RingKind {
    Integers,
    Rationals,
    PolynomialOverRationals,
    TruncatedSeries {
        coefficient_field: Arc<RingDescriptor>,
        precision: usize,
    },
    /// `A + xK[[x]]`, K the fraction field of the base domain A: series
    /// whose constant term is A-integral.
    DPlusM {
        base: Arc<RingDescriptor>,
        precision: usize,
    },
    /// The base ring with the listed denominators inverted; a ring between
    /// the base and its fraction field.
    Overring {
        base: Arc<RingDescriptor>,
        denominators: Vec<RingValue>,
    },
    Product {
        left: Arc<RingDescriptor>,
        right: Arc<RingDescriptor>,
    },
    /// `{ (a, f(a)+j) : a in A, j in J }` inside `A x B`.
    Amalgamation {
        a: Arc<RingDescriptor>,
        b: Arc<RingDescriptor>,
        hom: HomDescriptor,
        ideal: IdealDescriptor,
        /// Declared "f(A) meets the ideal only in zero". Absent: derive
        /// structurally where possible.
        meets_ideal_zero: Option<bool>,
        /// Declared descriptor for the image ring `f(A)+J`, carrying its
        /// own flags. Absent: derive structurally where possible.
        image: Option<Arc<RingDescriptor>>,
    },
    /// `{ (a, a+e) }` for an A-submodule E of the fraction field with
    /// E^2 ⊆ E; the codomain `A+E` is synthesized.
    Duplication {
        a: Arc<RingDescriptor>,
        submodule: IdealDescriptor,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub flags: BTreeSet<RingFlag>,
}

/// A uniform view of a pair-shaped ring (product, amalgamation or
/// duplication): component rings plus, when present, the glue.
#[derive(Debug, Clone)]
pub struct PairView {
    pub left: Arc<RingDescriptor>,
    pub right: Arc<RingDescriptor>,
    /// `None` for plain products: any pair of components is a member.
    pub glue: Option<AmalgamGlue>,
}

#[derive(Debug, Clone)]
pub struct AmalgamGlue {
    pub hom: HomDescriptor,
    pub ideal: IdealDescriptor,
    pub meets_ideal_zero: Option<bool>,
    pub image: Option<Arc<RingDescriptor>>,
}

impl RingDescriptor {
    pub fn new(kind: RingKind) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor {
            kind,
            flags: BTreeSet::new(),
        })
    }

    pub fn with_flags(kind: RingKind, flags: &[RingFlag]) -> Arc<RingDescriptor> {
        Arc::new(RingDescriptor {
            kind,
            flags: flags.iter().copied().collect(),
        })
    }

    pub fn integers() -> Arc<RingDescriptor> {
        Self::with_flags(
            RingKind::Integers,
            &[
                RingFlag::IsDomain,
                RingFlag::IsBezout,
                RingFlag::IsHermite,
                RingFlag::IsEdr,
            ],
        )
    }

    /// The rationals with the full flag set of a field.
    pub fn rationals() -> Arc<RingDescriptor> {
        Self::with_flags(RingKind::Rationals, &RingFlag::ALL)
    }

    pub fn polynomials() -> Arc<RingDescriptor> {
        Self::with_flags(
            RingKind::PolynomialOverRationals,
            &[
                RingFlag::IsDomain,
                RingFlag::IsBezout,
                RingFlag::IsHermite,
                RingFlag::IsEdr,
            ],
        )
    }

    pub fn truncated_series(precision: usize) -> Arc<RingDescriptor> {
        Self::with_flags(
            RingKind::TruncatedSeries {
                coefficient_field: Self::rationals(),
                precision,
            },
            &[RingFlag::IsDomain, RingFlag::IsValuation],
        )
    }

    pub fn dplusm(base: Arc<RingDescriptor>, precision: usize) -> Arc<RingDescriptor> {
        Self::with_flags(
            RingKind::DPlusM { base, precision },
            &[RingFlag::IsDomain],
        )
    }

    pub fn overring(base: Arc<RingDescriptor>, denominators: Vec<RingValue>) -> Arc<RingDescriptor> {
        Self::with_flags(
            RingKind::Overring { base, denominators },
            &[RingFlag::IsDomain],
        )
    }

    pub fn product(left: Arc<RingDescriptor>, right: Arc<RingDescriptor>) -> Arc<RingDescriptor> {
        Self::new(RingKind::Product { left, right })
    }

    pub fn amalgamation(
        a: Arc<RingDescriptor>,
        b: Arc<RingDescriptor>,
        hom: HomDescriptor,
        ideal: IdealDescriptor,
    ) -> Arc<RingDescriptor> {
        Self::new(RingKind::Amalgamation {
            a,
            b,
            hom,
            ideal,
            meets_ideal_zero: None,
            image: None,
        })
    }

    pub fn duplication(a: Arc<RingDescriptor>, submodule: IdealDescriptor) -> Arc<RingDescriptor> {
        Self::new(RingKind::Duplication { a, submodule })
    }

    pub fn has_flag(&self, flag: RingFlag) -> bool {
        self.flags.contains(&flag)
    }

    /// Structural ring identity: same construction tree, flags and other
    /// declared metadata ignored. Values from structurally equal
    /// descriptors are interoperable.
    pub fn same_structure(&self, other: &RingDescriptor) -> bool {
        match (&self.kind, &other.kind) {
            (RingKind::Integers, RingKind::Integers) => true,
            (RingKind::Rationals, RingKind::Rationals) => true,
            (RingKind::PolynomialOverRationals, RingKind::PolynomialOverRationals) => true,
            (
                RingKind::TruncatedSeries {
                    coefficient_field: f1,
                    precision: p1,
                },
                RingKind::TruncatedSeries {
                    coefficient_field: f2,
                    precision: p2,
                },
            ) => p1 == p2 && f1.same_structure(f2),
            (
                RingKind::DPlusM {
                    base: b1,
                    precision: p1,
                },
                RingKind::DPlusM {
                    base: b2,
                    precision: p2,
                },
            ) => p1 == p2 && b1.same_structure(b2),
            (
                RingKind::Overring {
                    base: b1,
                    denominators: d1,
                },
                RingKind::Overring {
                    base: b2,
                    denominators: d2,
                },
            ) => {
                b1.same_structure(b2)
                    && d1.len() == d2.len()
                    && d1
                        .iter()
                        .zip(d2.iter())
                        .all(|(x, y)| x.payload() == y.payload())
            }
            (
                RingKind::Product {
                    left: l1,
                    right: r1,
                },
                RingKind::Product {
                    left: l2,
                    right: r2,
                },
            ) => l1.same_structure(l2) && r1.same_structure(r2),
            (
                RingKind::Amalgamation {
                    a: a1,
                    b: b1,
                    hom: h1,
                    ideal: i1,
                    ..
                },
                RingKind::Amalgamation {
                    a: a2,
                    b: b2,
                    hom: h2,
                    ideal: i2,
                    ..
                },
            ) => {
                a1.same_structure(a2)
                    && b1.same_structure(b2)
                    && h1.kind == h2.kind
                    && ideal_same(i1, i2)
            }
            (
                RingKind::Duplication {
                    a: a1,
                    submodule: s1,
                },
                RingKind::Duplication {
                    a: a2,
                    submodule: s2,
                },
            ) => a1.same_structure(a2) && ideal_same(s1, s2),
            _ => false,
        }
    }

    /// Absolute series precision of the ring, when it carries one.
    pub fn series_precision(&self) -> Option<usize> {
        match &self.kind {
            RingKind::TruncatedSeries { precision, .. } => Some(*precision),
            RingKind::DPlusM { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    pub fn is_series_ring(&self) -> bool {
        matches!(
            self.kind,
            RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. }
        )
    }

    pub fn is_field(&self) -> bool {
        matches!(self.kind, RingKind::Rationals)
    }

    /// View a product, amalgamation or duplication uniformly as a pair of
    /// component rings. For duplications the codomain `A+E` is synthesized
    /// (`Q(A)` when the submodule is the whole fraction field, the base
    /// itself otherwise).
    pub fn pair_view(self: &Arc<Self>) -> Option<PairView> {
        match &self.kind {
            RingKind::Product { left, right } => Some(PairView {
                left: left.clone(),
                right: right.clone(),
                glue: None,
            }),
            RingKind::Amalgamation {
                a,
                b,
                hom,
                ideal,
                meets_ideal_zero,
                image,
            } => Some(PairView {
                left: a.clone(),
                right: b.clone(),
                glue: Some(AmalgamGlue {
                    hom: hom.clone(),
                    ideal: ideal.clone(),
                    meets_ideal_zero: *meets_ideal_zero,
                    image: image.clone(),
                }),
            }),
            RingKind::Duplication { a, submodule } => {
                let b = duplication_codomain(a, submodule);
                let hom = if b.same_structure(a) {
                    HomDescriptor::new(HomKind::Identity, true)
                } else {
                    HomDescriptor::new(HomKind::IntoFractionField, true)
                };
                Some(PairView {
                    left: a.clone(),
                    right: b,
                    glue: Some(AmalgamGlue {
                        hom,
                        ideal: submodule.clone(),
                        meets_ideal_zero: None,
                        image: None,
                    }),
                })
            }
            _ => None,
        }
    }

    pub fn is_pair_ring(&self) -> bool {
        matches!(
            self.kind,
            RingKind::Product { .. } | RingKind::Amalgamation { .. } | RingKind::Duplication { .. }
        )
    }

    /// Validate the descriptor tree: supported base rings, compatible
    /// homomorphism endpoints, ideals that live in their ambient ring,
    /// and flag closure rules.
    pub fn validate(self: &Arc<Self>) -> Result<()> {
        match &self.kind {
            RingKind::Integers | RingKind::Rationals | RingKind::PolynomialOverRationals => Ok(()),
            RingKind::TruncatedSeries {
                coefficient_field,
                precision,
            } => {
                if *precision == 0 {
                    return Err(RingError::InvalidDescriptor(
                        "series precision must be positive".into(),
                    ));
                }
                if !matches!(coefficient_field.kind, RingKind::Rationals) {
                    return Err(RingError::InvalidDescriptor(
                        "only rational coefficient fields are supported for series".into(),
                    ));
                }
                Ok(())
            }
            RingKind::DPlusM { base, precision } => {
                if *precision == 0 {
                    return Err(RingError::InvalidDescriptor(
                        "series precision must be positive".into(),
                    ));
                }
                if !matches!(base.kind, RingKind::Integers | RingKind::Rationals) {
                    return Err(RingError::InvalidDescriptor(
                        "D+M base domain must be the integers or the rationals".into(),
                    ));
                }
                base.validate()
            }
            RingKind::Overring { base, denominators } => {
                if !matches!(
                    base.kind,
                    RingKind::Integers | RingKind::PolynomialOverRationals
                ) {
                    return Err(RingError::InvalidDescriptor(
                        "overring base must be the integers or rational polynomials".into(),
                    ));
                }
                base.validate()?;
                for d in denominators {
                    if !d.ring().same_structure(base) {
                        return Err(RingError::InvalidDescriptor(
                            "overring denominator is not a base-ring element".into(),
                        ));
                    }
                    if d.payload().is_zero_payload() {
                        return Err(RingError::InvalidDescriptor(
                            "overring denominators must be nonzero".into(),
                        ));
                    }
                }
                Ok(())
            }
            RingKind::Product { left, right } => {
                left.validate()?;
                right.validate()?;
                if self.has_flag(RingFlag::IsDomain) {
                    return Err(RingError::InvalidDescriptor(
                        "a product of nontrivial rings is never a domain".into(),
                    ));
                }
                Ok(())
            }
            RingKind::Amalgamation {
                a,
                b,
                hom,
                ideal,
                image,
                ..
            } => {
                a.validate()?;
                b.validate()?;
                validate_hom(hom, a, b)?;
                validate_ideal(ideal, b)?;
                if let Some(img) = image {
                    img.validate()?;
                }
                if matches!(ideal, IdealDescriptor::Whole) && self.has_flag(RingFlag::IsDomain) {
                    return Err(RingError::InvalidDescriptor(
                        "an amalgamation along the whole ring is a product, never a domain".into(),
                    ));
                }
                Ok(())
            }
            RingKind::Duplication { a, submodule } => {
                if !matches!(a.kind, RingKind::Integers) {
                    return Err(RingError::InvalidDescriptor(
                        "duplication base must be the integers".into(),
                    ));
                }
                a.validate()?;
                match submodule {
                    IdealDescriptor::Zero | IdealDescriptor::Whole => Ok(()),
                    IdealDescriptor::MultiplesOf(g) => {
                        if !g.ring().same_structure(a) {
                            return Err(RingError::InvalidDescriptor(
                                "duplication submodule generator must be a base element".into(),
                            ));
                        }
                        Ok(())
                    }
                    IdealDescriptor::PositiveOrder => Err(RingError::InvalidDescriptor(
                        "positive-order submodules need a series ambient ring".into(),
                    )),
                }
            }
        }
    }
}

fn ideal_same(a: &IdealDescriptor, b: &IdealDescriptor) -> bool {
    match (a, b) {
        (IdealDescriptor::Zero, IdealDescriptor::Zero) => true,
        (IdealDescriptor::Whole, IdealDescriptor::Whole) => true,
        (IdealDescriptor::PositiveOrder, IdealDescriptor::PositiveOrder) => true,
        (IdealDescriptor::MultiplesOf(x), IdealDescriptor::MultiplesOf(y)) => {
            x.payload() == y.payload()
        }
        _ => false,
    }
}

/// Codomain `A+E` of a duplication: the fraction field when E is the whole
/// of it, the base ring when E sits inside the base.
pub fn duplication_codomain(
    a: &Arc<RingDescriptor>,
    submodule: &IdealDescriptor,
) -> Arc<RingDescriptor> {
    match submodule {
        IdealDescriptor::Whole => RingDescriptor::rationals(),
        _ => a.clone(),
    }
}

/// Can `from` be canonically embedded in `to`? Structural equality, the
/// integers into the rationals, a base into its series/overring extensions.
pub fn embeddable(from: &Arc<RingDescriptor>, to: &Arc<RingDescriptor>) -> bool {
    if from.same_structure(to) {
        return true;
    }
    match (&from.kind, &to.kind) {
        (RingKind::Integers, RingKind::Rationals) => true,
        (RingKind::Integers | RingKind::Rationals, RingKind::TruncatedSeries { .. }) => true,
        (_, RingKind::DPlusM { base, .. }) => from.same_structure(base),
        (_, RingKind::Overring { base, .. }) => from.same_structure(base),
        _ => false,
    }
}

fn validate_hom(
    hom: &HomDescriptor,
    a: &Arc<RingDescriptor>,
    b: &Arc<RingDescriptor>,
) -> Result<()> {
    let bad = |msg: &str| Err(RingError::InvalidDescriptor(msg.into()));
    match hom.kind {
        HomKind::Identity => {
            if a.same_structure(b) {
                Ok(())
            } else {
                bad("identity hom requires structurally equal endpoints")
            }
        }
        HomKind::InclusionIntoDPlusM => {
            if !matches!(a.kind, RingKind::Integers | RingKind::Rationals) {
                return bad("constant-series inclusion needs an integer or rational domain");
            }
            match &b.kind {
                RingKind::TruncatedSeries { .. } => Ok(()),
                RingKind::DPlusM { base, .. } if base.same_structure(a) => Ok(()),
                _ => bad("constant-series inclusion needs a series codomain"),
            }
        }
        HomKind::InclusionIntoOverring => match &b.kind {
            RingKind::Overring { base, .. } if base.same_structure(a) => Ok(()),
            _ => bad("overring inclusion needs an overring of the domain as codomain"),
        },
        HomKind::PolynomialEvalAtZero => {
            if matches!(a.kind, RingKind::PolynomialOverRationals)
                && matches!(b.kind, RingKind::Rationals)
            {
                Ok(())
            } else {
                bad("evaluation at zero maps rational polynomials to the rationals")
            }
        }
        HomKind::LeftFactorIntoProduct => match &b.kind {
            RingKind::Product { left, right } if left.same_structure(a) && embeddable(a, right) => {
                Ok(())
            }
            _ => bad("left-factor hom needs a product codomain with the domain as left factor"),
        },
        HomKind::IntoFractionField => {
            if matches!(a.kind, RingKind::Integers) && matches!(b.kind, RingKind::Rationals) {
                Ok(())
            } else {
                bad("fraction-field inclusion maps the integers to the rationals")
            }
        }
    }
}

fn validate_ideal(ideal: &IdealDescriptor, ambient: &Arc<RingDescriptor>) -> Result<()> {
    match ideal {
        IdealDescriptor::Zero | IdealDescriptor::Whole => Ok(()),
        IdealDescriptor::MultiplesOf(g) => {
            if g.ring().same_structure(ambient) {
                Ok(())
            } else {
                Err(RingError::InvalidDescriptor(
                    "ideal generator is not an element of the ambient ring".into(),
                ))
            }
        }
        IdealDescriptor::PositiveOrder => {
            if ambient.is_series_ring() {
                Ok(())
            } else {
                Err(RingError::InvalidDescriptor(
                    "positive-order ideals need a series ambient ring".into(),
                ))
            }
        }
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PolynomialOverRationals => write!(f, "Q[x]"),
            RingKind::TruncatedSeries { precision, .. } => write!(f, "Q[[x]]@{precision}"),
            RingKind::DPlusM { base, precision } => write!(f, "{base}+xQ[[x]]@{precision}"),
            RingKind::Overring { base, denominators } => {
                let dens: Vec<String> = denominators
                    .iter()
                    .map(|d| d.payload().to_display_string())
                    .collect();
                write!(f, "{base}[1/{{{}}}]", dens.join(","))
            }
            RingKind::Product { left, right } => write!(f, "({left} x {right})"),
            RingKind::Amalgamation { a, b, ideal, .. } => {
                write!(f, "amalgam({a}, {} of {b})", display_ideal(ideal))
            }
            RingKind::Duplication { a, submodule } => {
                write!(f, "duplication({a}, {})", display_ideal(submodule))
            }
        }
    }
}

fn display_ideal(ideal: &IdealDescriptor) -> String {
    match ideal {
        IdealDescriptor::Zero => "0".to_string(),
        IdealDescriptor::Whole => "whole".to_string(),
        IdealDescriptor::MultiplesOf(g) => format!("({})", g.payload().to_display_string()),
        IdealDescriptor::PositiveOrder => "(x)".to_string(),
    }
}

