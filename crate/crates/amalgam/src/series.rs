//! Truncated formal power series over the rationals.
//!
//! A series value is one of three things: the exact zero series, a window
//! of known coefficients `sum a_n x^n + O(x^precision)` with a nonzero
//! leading coefficient, or a window with *no* known nonzero coefficient
//! (zero modulo `x^precision`, tail unknown). Arithmetic tracks precision:
//! sums keep the smaller precision, products shift it by the valuation of
//! the other operand.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, RingError};
use crate::poly::format_rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeriesValue {
    /// The zero series, known exactly at every order.
    ExactZero,
    /// Coefficients for orders `valuation .. precision`; anything at or
    /// beyond `precision` is unknown. Empty `coeffs` (forcing
    /// `valuation == precision`) means "zero modulo x^precision".
    Window {
        valuation: usize,
        coeffs: Vec<BigRational>,
        precision: usize,
    },
}

/// What is known about the order of the least nonzero term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(usize),
    /// Zero to the stated precision: the valuation, if any, is >= this.
    AtLeast(usize),
    /// The exact zero series.
    Infinite,
}

/// Three-valued series comparison: truncations can never be certified
/// exactly equal unless both are the exact zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesEq {
    Exact,
    ToPrecision(usize),
    Distinct,
}

impl SeriesValue {
    /// Build a window, canonicalizing: leading zeros fold into the
    /// valuation, trailing coefficients are padded with known zeros up to
    /// `precision`, and an all-zero window collapses to the
    /// zero-mod-x^precision form.
    pub fn window(valuation: usize, coeffs: Vec<BigRational>, precision: usize) -> SeriesValue {
        let mut val = valuation;
        let mut it = coeffs.into_iter();
        let mut kept: Vec<BigRational> = Vec::new();
        for c in it.by_ref() {
            if val >= precision {
                break;
            }
            if c.is_zero() && kept.is_empty() {
                val += 1;
            } else {
                kept.push(c);
            }
        }
        // consume the rest only while it fits under the precision
        for c in it {
            if val + kept.len() >= precision {
                break;
            }
            kept.push(c);
        }
        if kept.is_empty() || val >= precision {
            return SeriesValue::Window {
                valuation: precision,
                coeffs: Vec::new(),
                precision,
            };
        }
        kept.truncate(precision - val);
        while kept.len() < precision - val {
            kept.push(BigRational::zero());
        }
        SeriesValue::Window {
            valuation: val,
            coeffs: kept,
            precision,
        }
    }

    pub fn zero_to_precision(precision: usize) -> SeriesValue {
        SeriesValue::Window {
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    pub fn constant(c: BigRational, precision: usize) -> SeriesValue {
        SeriesValue::window(0, vec![c], precision)
    }

    pub fn monomial(c: BigRational, order: usize, precision: usize) -> SeriesValue {
        SeriesValue::window(order, vec![c], precision)
    }

    pub fn one(precision: usize) -> SeriesValue {
        SeriesValue::constant(BigRational::one(), precision)
    }

    pub fn is_exactly_zero(&self) -> bool {
        matches!(self, SeriesValue::ExactZero)
    }

    /// True when no nonzero coefficient is known (exact zero included).
    pub fn is_zero_to_known_precision(&self) -> bool {
        match self {
            SeriesValue::ExactZero => true,
            SeriesValue::Window { coeffs, .. } => coeffs.is_empty(),
        }
    }

    pub fn precision(&self) -> Option<usize> {
        match self {
            SeriesValue::ExactZero => None,
            SeriesValue::Window { precision, .. } => Some(*precision),
        }
    }

    pub fn valuation(&self) -> Valuation {
        match self {
            SeriesValue::ExactZero => Valuation::Infinite,
            SeriesValue::Window {
                valuation, coeffs, ..
            } => {
                if coeffs.is_empty() {
                    Valuation::AtLeast(*valuation)
                } else {
                    Valuation::Exact(*valuation)
                }
            }
        }
    }

    /// The exact valuation, or `PrecisionExhausted` when the value is only
    /// known to vanish up to its precision.
    pub fn exact_valuation(&self, context: &str) -> Result<Option<usize>> {
        match self.valuation() {
            Valuation::Infinite => Ok(None),
            Valuation::Exact(v) => Ok(Some(v)),
            Valuation::AtLeast(_) => Err(RingError::precision(context.to_string())),
        }
    }

    /// Coefficient at `order` when it is known, `None` when truncated away.
    pub fn known_coeff(&self, order: usize) -> Option<BigRational> {
        match self {
            SeriesValue::ExactZero => Some(BigRational::zero()),
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => {
                if order >= *precision {
                    None
                } else if order < *valuation {
                    Some(BigRational::zero())
                } else {
                    Some(coeffs[order - valuation].clone())
                }
            }
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        match self {
            SeriesValue::Window { coeffs, .. } => coeffs.first(),
            SeriesValue::ExactZero => None,
        }
    }

    pub fn truncate(&self, new_precision: usize) -> SeriesValue {
        match self {
            SeriesValue::ExactZero => SeriesValue::ExactZero,
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => {
                if new_precision >= *precision {
                    self.clone()
                } else {
                    SeriesValue::window(*valuation, coeffs.clone(), new_precision)
                }
            }
        }
    }

    pub fn add(&self, other: &SeriesValue) -> SeriesValue {
        match (self, other) {
            (SeriesValue::ExactZero, _) => other.clone(),
            (_, SeriesValue::ExactZero) => self.clone(),
            (
                SeriesValue::Window {
                    valuation: v1,
                    precision: p1,
                    ..
                },
                SeriesValue::Window {
                    valuation: v2,
                    precision: p2,
                    ..
                },
            ) => {
                let prec = (*p1).min(*p2);
                let start = (*v1).min(*v2).min(prec);
                let mut out = Vec::with_capacity(prec - start);
                for order in start..prec {
                    let a = self.known_coeff(order).unwrap_or_else(BigRational::zero);
                    let b = other.known_coeff(order).unwrap_or_else(BigRational::zero);
                    out.push(a + b);
                }
                SeriesValue::window(start, out, prec)
            }
        }
    }

    pub fn neg(&self) -> SeriesValue {
        match self {
            SeriesValue::ExactZero => SeriesValue::ExactZero,
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => SeriesValue::Window {
                valuation: *valuation,
                coeffs: coeffs.iter().map(|c| -c.clone()).collect(),
                precision: *precision,
            },
        }
    }

    pub fn sub(&self, other: &SeriesValue) -> SeriesValue {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SeriesValue) -> SeriesValue {
        match (self, other) {
            (SeriesValue::ExactZero, _) | (_, SeriesValue::ExactZero) => SeriesValue::ExactZero,
            (
                SeriesValue::Window {
                    valuation: v1,
                    coeffs: c1,
                    precision: p1,
                },
                SeriesValue::Window {
                    valuation: v2,
                    coeffs: c2,
                    precision: p2,
                },
            ) => {
                // f = F + O(x^p1), g = G + O(x^p2):
                // fg = FG + O(x^{p1+v2}) + O(x^{p2+v1})
                let prec = (p1 + v2).min(p2 + v1);
                let val = v1 + v2;
                if c1.is_empty() || c2.is_empty() || val >= prec {
                    // zero windows force prec == v1 + v2 here
                    return SeriesValue::zero_to_precision(prec);
                }
                let n = prec - val;
                let mut out = vec![BigRational::zero(); n];
                for (i, a) in c1.iter().enumerate() {
                    if i >= n || a.is_zero() {
                        continue;
                    }
                    for (j, b) in c2.iter().enumerate() {
                        if i + j >= n {
                            break;
                        }
                        if !b.is_zero() {
                            out[i + j] += a * b;
                        }
                    }
                }
                SeriesValue::window(val, out, prec)
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> SeriesValue {
        if c.is_zero() {
            return SeriesValue::ExactZero;
        }
        match self {
            SeriesValue::ExactZero => SeriesValue::ExactZero,
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => SeriesValue::Window {
                valuation: *valuation,
                coeffs: coeffs.iter().map(|x| x * c).collect(),
                precision: *precision,
            },
        }
    }

    /// Multiply by x^k (exact; raises precision along with the valuation).
    pub fn shift_up(&self, k: usize) -> SeriesValue {
        match self {
            SeriesValue::ExactZero => SeriesValue::ExactZero,
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => SeriesValue::Window {
                valuation: valuation + k,
                coeffs: coeffs.clone(),
                precision: precision + k,
            },
        }
    }

    /// Inverse of a unit (valuation 0, nonzero constant coefficient),
    /// to the same precision.
    pub fn invert_unit(&self) -> Result<SeriesValue> {
        let (coeffs, precision) = match self {
            SeriesValue::Window {
                valuation: 0,
                coeffs,
                precision,
            } if !coeffs.is_empty() => (coeffs, *precision),
            _ => return Err(RingError::NotAUnit),
        };
        let a0_inv = BigRational::one() / &coeffs[0];
        let mut out = Vec::with_capacity(precision);
        out.push(a0_inv.clone());
        for n in 1..precision {
            let mut acc = BigRational::zero();
            for i in 1..=n {
                if let Some(ai) = coeffs.get(i) {
                    if !ai.is_zero() {
                        acc += ai * &out[n - i];
                    }
                }
            }
            out.push(-(&a0_inv * acc));
        }
        Ok(SeriesValue::window(0, out, precision))
    }

    /// Factor `f = lead * x^p * unit_part` with `unit_part = 1 + x*f1`.
    /// The unit part keeps `precision - p` known coefficients.
    pub fn normalize(&self) -> Result<SeriesNormalForm> {
        match self {
            SeriesValue::ExactZero => Err(RingError::ZeroInput),
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => {
                if coeffs.is_empty() {
                    return Err(RingError::precision("series normalization".to_string()));
                }
                let lead = coeffs[0].clone();
                let inv = BigRational::one() / &lead;
                let unit = SeriesValue::window(
                    0,
                    coeffs.iter().map(|c| c * &inv).collect(),
                    precision - valuation,
                );
                Ok(SeriesNormalForm {
                    order: *valuation,
                    lead,
                    unit_part: unit,
                })
            }
        }
    }

    pub fn eq(&self, other: &SeriesValue) -> SeriesEq {
        match (self, other) {
            (SeriesValue::ExactZero, SeriesValue::ExactZero) => SeriesEq::Exact,
            _ => {
                let p1 = self.precision();
                let p2 = other.precision();
                let prec = match (p1, p2) {
                    (None, Some(p)) | (Some(p), None) => p,
                    (Some(a), Some(b)) => a.min(b),
                    (None, None) => unreachable!(),
                };
                for order in 0..prec {
                    let a = self.known_coeff(order).unwrap_or_else(BigRational::zero);
                    let b = other.known_coeff(order).unwrap_or_else(BigRational::zero);
                    if a != b {
                        return SeriesEq::Distinct;
                    }
                }
                SeriesEq::ToPrecision(prec)
            }
        }
    }

    pub fn to_display_string(&self) -> String {
        match self {
            SeriesValue::ExactZero => "0".to_string(),
            SeriesValue::Window {
                valuation,
                coeffs,
                precision,
            } => {
                let mut parts: Vec<String> = Vec::new();
                for (i, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let order = valuation + i;
                    let coeff = format_rational(c);
                    parts.push(match order {
                        0 => coeff,
                        1 if c.is_one() => "x".to_string(),
                        1 if (-c).is_one() => "-x".to_string(),
                        1 => format!("{coeff}*x"),
                        _ if c.is_one() => format!("x^{order}"),
                        _ if (-c).is_one() => format!("-x^{order}"),
                        _ => format!("{coeff}*x^{order}"),
                    });
                }
                let mut out = String::new();
                for (k, p) in parts.iter().enumerate() {
                    if k == 0 {
                        out.push_str(p);
                    } else if let Some(stripped) = p.strip_prefix('-') {
                        out.push_str(" - ");
                        out.push_str(stripped);
                    } else {
                        out.push_str(" + ");
                        out.push_str(p);
                    }
                }
                if out.is_empty() {
                    out.push('0');
                }
                out.push_str(&format!(" + O(x^{precision})"));
                out
            }
        }
    }
}

/// Result of factoring a nonzero series as `lead * x^order * unit_part`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesNormalForm {
    pub order: usize,
    pub lead: BigRational,
    pub unit_part: SeriesValue,
}
