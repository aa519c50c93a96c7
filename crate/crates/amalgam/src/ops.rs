//! Element-level ring operations: unit inversion, exact division,
//! divisibility, associate normalization and the two-generator
//! diagonalization step.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::amalgam;
use crate::arith;
use crate::descriptor::RingKind;
use crate::error::{Result, RingError};
use crate::overring;
use crate::poly::{int_coprime_part, int_extended_gcd, Polynomial};
use crate::series::{SeriesValue, Valuation};
use crate::value::{FractionValue, Payload, RingValue};

/// Inverse of `x` when `x` is a unit of its ring; `None` otherwise.
/// Exact, or to precision for series tails.
pub fn unit_inverse(x: &RingValue) -> Result<Option<RingValue>> {
    let ring = x.ring().clone();
    match (&ring.kind, x.payload()) {
        (RingKind::Integers, Payload::Int(n)) => Ok(if n.abs().is_one() {
            Some(x.clone())
        } else {
            None
        }),
        (RingKind::Rationals, Payload::Rat(r)) => Ok(if r.is_zero() {
            None
        } else {
            Some(RingValue::raw(ring, Payload::Rat(r.recip())))
        }),
        (RingKind::PolynomialOverRationals, Payload::Poly(p)) => {
            Ok(if p.is_constant() && !p.is_zero() {
                Some(RingValue::raw(
                    ring,
                    Payload::Poly(Polynomial::constant(BigRational::one() / p.eval_at_zero())),
                ))
            } else {
                None
            })
        }
        (RingKind::TruncatedSeries { .. }, Payload::Series(s)) => match s.valuation() {
            Valuation::Exact(0) => Ok(Some(RingValue::raw(
                ring,
                Payload::Series(s.invert_unit()?),
            ))),
            _ => Ok(None),
        },
        (RingKind::DPlusM { base, .. }, Payload::Series(s)) => match s.valuation() {
            Valuation::Exact(0) => {
                let c0 = s.known_coeff(0).expect("valuation zero");
                let base_unit = match base.kind {
                    RingKind::Integers => c0.numer().abs().is_one() && c0.denom().is_one(),
                    _ => !c0.is_zero(),
                };
                if base_unit {
                    Ok(Some(RingValue::raw(ring, Payload::Series(s.invert_unit()?))))
                } else {
                    Ok(None)
                }
            }
            _ => Ok(None),
        },
        (RingKind::Overring { .. }, Payload::Fraction(f)) => {
            Ok(overring::unit_inverse_fraction(&ring, f)?
                .map(|inv| RingValue::raw(ring.clone(), Payload::Fraction(inv))))
        }
        (RingKind::Product { .. }, Payload::Pair(_, _)) => {
            let (a, b) = arith::split_pair(x)?;
            match (unit_inverse(&a)?, unit_inverse(&b)?) {
                (Some(ia), Some(ib)) => Ok(Some(arith::join_pair(&ring, ia, ib)?)),
                _ => Ok(None),
            }
        }
        (RingKind::Amalgamation { .. } | RingKind::Duplication { .. }, Payload::Pair(_, _)) => {
            amalgam::invert(x)
        }
        _ => Err(RingError::PayloadMismatch(
            "payload does not fit ring".into(),
        )),
    }
}

pub fn is_unit(x: &RingValue) -> Result<bool> {
    Ok(unit_inverse(x)?.is_some())
}

/// The quotient `q` with `a = q*b` when it exists in the ring.
pub fn divide_exact(a: &RingValue, b: &RingValue) -> Result<Option<RingValue>> {
    a.require_same_ring(b)?;
    let ring = a.ring().clone();
    if b.is_zero() {
        return if a.is_zero() {
            Ok(Some(RingValue::zero(&ring)))
        } else {
            Err(RingError::ZeroDivisor)
        };
    }
    match (&ring.kind, a.payload(), b.payload()) {
        (RingKind::Integers, Payload::Int(x), Payload::Int(y)) => {
            let (q, r) = x.div_rem(y);
            Ok(if r.is_zero() {
                Some(RingValue::raw(ring, Payload::Int(q)))
            } else {
                None
            })
        }
        (RingKind::Rationals, Payload::Rat(x), Payload::Rat(y)) => {
            Ok(Some(RingValue::raw(ring, Payload::Rat(x / y))))
        }
        (RingKind::PolynomialOverRationals, Payload::Poly(x), Payload::Poly(y)) => {
            Ok(x.divide_exact(y)?.map(|q| RingValue::raw(ring, Payload::Poly(q))))
        }
        (RingKind::TruncatedSeries { .. } | RingKind::DPlusM { .. }, Payload::Series(x), Payload::Series(y)) => {
            series_divide_exact(&ring, x, y)
        }
        (RingKind::Overring { .. }, Payload::Fraction(x), Payload::Fraction(y)) => {
            Ok(overring::divide_exact_fraction(&ring, x, y)?
                .map(|q| RingValue::raw(ring.clone(), Payload::Fraction(q))))
        }
        (RingKind::Product { .. }, Payload::Pair(_, _), Payload::Pair(_, _)) => {
            let (xa, xb) = arith::split_pair(a)?;
            let (ya, yb) = arith::split_pair(b)?;
            let qa = component_quotient(&xa, &ya)?;
            let qb = component_quotient(&xb, &yb)?;
            match (qa, qb) {
                (Some(qa), Some(qb)) => {
                    // a zero divisor component has a free quotient; zero is
                    // as good as any in a plain product
                    let qa = qa.unwrap_or_else(|| RingValue::zero(xa.ring()));
                    let qb = qb.unwrap_or_else(|| RingValue::zero(xb.ring()));
                    Ok(Some(arith::join_pair(&ring, qa, qb)?))
                }
                _ => Ok(None),
            }
        }
        (RingKind::Amalgamation { .. } | RingKind::Duplication { .. }, Payload::Pair(_, _), Payload::Pair(_, _)) => {
            amalgam::divide_exact_in_amalgam(a, b)
        }
        _ => Err(RingError::PayloadMismatch(
            "payload does not fit ring".into(),
        )),
    }
}

/// Componentwise quotient for pair rings: `Ok(Some(None))` encodes a free
/// quotient (0/0 in that slot).
pub(crate) fn component_quotient(
    a: &RingValue,
    b: &RingValue,
) -> Result<Option<Option<RingValue>>> {
    if b.is_zero() {
        return if a.is_zero() {
            Ok(Some(None))
        } else {
            Ok(None)
        };
    }
    Ok(divide_exact(a, b)?.map(Some))
}

fn series_divide_exact(
    ring: &std::sync::Arc<crate::descriptor::RingDescriptor>,
    x: &SeriesValue,
    y: &SeriesValue,
) -> Result<Option<RingValue>> {
    if x.is_exactly_zero() {
        return Ok(Some(RingValue::zero(ring)));
    }
    let vx = x.exact_valuation("series division")?.expect("nonzero");
    let vy = y.exact_valuation("series division")?.expect("nonzero checked");
    if vx < vy {
        return Ok(None);
    }
    let nx = x.normalize()?;
    let ny = y.normalize()?;
    let unit_quot = nx.unit_part.mul(&ny.unit_part.invert_unit()?);
    let lead = nx.lead / ny.lead;
    let q = unit_quot.scale(&lead).shift_up(vx - vy);
    // membership: a D+M quotient with order-zero term must stay integral
    if let RingKind::DPlusM { base, .. } = &ring.kind {
        if matches!(base.kind, RingKind::Integers) && vx == vy {
            let c0 = q.known_coeff(0).expect("valuation zero");
            if !c0.denom().is_one() {
                return Ok(None);
            }
        }
    }
    Ok(Some(RingValue::raw(ring.clone(), Payload::Series(q))))
}

/// Does `a` divide `b` in their common ring?
pub fn divides(a: &RingValue, b: &RingValue) -> Result<bool> {
    a.require_same_ring(b)?;
    if a.is_zero() {
        return Ok(b.is_zero());
    }
    Ok(divide_exact(b, a)?.is_some())
}

/// Split `v = unit * canonical` where `canonical` is the deterministic
/// associate-class representative: nonnegative integers, monic
/// polynomials, monomials `x^p` for series over a field, `(c/d) x^p` with
/// positive reduced lead for D+M values, generator-free positive
/// numerators for overrings. Pair rings with a membership invariant are
/// left untouched.
pub fn unit_normalize(v: &RingValue) -> Result<(RingValue, RingValue)> {
    let ring = v.ring().clone();
    let identity = |v: &RingValue| (v.clone(), RingValue::one(v.ring()));
    if v.is_zero() {
        return Ok(identity(v));
    }
    match (&ring.kind, v.payload()) {
        (RingKind::Integers, Payload::Int(n)) => {
            let canonical = RingValue::raw(ring.clone(), Payload::Int(n.abs()));
            let unit = RingValue::from_i64(&ring, if n.is_negative() { -1 } else { 1 });
            Ok((canonical, unit))
        }
        (RingKind::Rationals, Payload::Rat(_)) => {
            Ok((RingValue::one(&ring), v.clone()))
        }
        (RingKind::PolynomialOverRationals, Payload::Poly(p)) => {
            let (monic, lc) = p.monic();
            Ok((
                RingValue::raw(ring.clone(), Payload::Poly(monic)),
                RingValue::raw(ring, Payload::Poly(Polynomial::constant(lc))),
            ))
        }
        (RingKind::TruncatedSeries { .. }, Payload::Series(s)) => {
            let nf = s.normalize()?;
            let prec = s.precision().expect("nonzero window");
            let canonical = RingValue::raw(
                ring.clone(),
                Payload::Series(SeriesValue::monomial(BigRational::one(), nf.order, prec)),
            );
            let unit = RingValue::raw(
                ring,
                Payload::Series(nf.unit_part.scale(&nf.lead)),
            );
            Ok((canonical, unit))
        }
        (RingKind::DPlusM { base, .. }, Payload::Series(s)) => {
            let nf = s.normalize()?;
            let prec = s.precision().expect("nonzero window");
            match base.kind {
                RingKind::Integers => {
                    // canonical lead |n|/d, unit sign * (1 + x f1)
                    let sign = if nf.lead.is_negative() { -1 } else { 1 };
                    let lead = nf.lead.abs();
                    let canonical = RingValue::raw(
                        ring.clone(),
                        Payload::Series(SeriesValue::monomial(lead, nf.order, prec)),
                    );
                    let unit = RingValue::raw(
                        ring,
                        Payload::Series(nf.unit_part.scale(&BigRational::from(BigInt::from(sign)))),
                    );
                    Ok((canonical, unit))
                }
                _ => {
                    let canonical = RingValue::raw(
                        ring.clone(),
                        Payload::Series(SeriesValue::monomial(BigRational::one(), nf.order, prec)),
                    );
                    let unit = RingValue::raw(ring, Payload::Series(nf.unit_part.scale(&nf.lead)));
                    Ok((canonical, unit))
                }
            }
        }
        (RingKind::Overring { .. }, Payload::Fraction(f)) => {
            let p = overring::parts(&ring)?;
            let mut residual = (*f.num).clone();
            let mut stripped = vec![0u32; p.generators.len()];
            for (i, g) in p.generators.iter().enumerate() {
                loop {
                    match divide_exact(
                        &RingValue::raw(p.base.clone(), residual.clone()),
                        &RingValue::raw(p.base.clone(), g.payload().clone()),
                    )? {
                        Some(q) if !residual.is_zero_payload() => {
                            residual = q.into_payload();
                            stripped[i] += 1;
                        }
                        _ => break,
                    }
                }
            }
            let (res_canonical, res_unit) =
                unit_normalize(&RingValue::raw(p.base.clone(), residual))?;
            let canonical = RingValue::raw(
                ring.clone(),
                Payload::Fraction(FractionValue {
                    num: Box::new(res_canonical.into_payload()),
                    den: vec![0; p.generators.len()],
                }),
            );
            let unit_num = arith::payload_mul(
                p.base,
                res_unit.payload(),
                &overring::denominator_payload(p.base, p.generators, &stripped)?,
            )?;
            let unit = RingValue::raw(
                ring.clone(),
                Payload::Fraction(overring::reduce(
                    &ring,
                    FractionValue {
                        num: Box::new(unit_num),
                        den: f.den.clone(),
                    },
                )?),
            );
            Ok((canonical, unit))
        }
        (RingKind::Product { .. }, Payload::Pair(_, _)) => {
            let (a, b) = arith::split_pair(v)?;
            let (ca, ua) = unit_normalize(&a)?;
            let (cb, ub) = unit_normalize(&b)?;
            Ok((
                arith::join_pair(&ring, ca, cb)?,
                arith::join_pair(&ring, ua, ub)?,
            ))
        }
        _ => Ok(identity(v)),
    }
}

/// Which rings advertise the two-generator diagonalization step: the
/// Euclidean base rings, valuation-style series rings (series over a
/// field), and products of such.
pub fn kaplansky_supported(ring: &std::sync::Arc<crate::descriptor::RingDescriptor>) -> bool {
    match &ring.kind {
        RingKind::Integers
        | RingKind::Rationals
        | RingKind::PolynomialOverRationals
        | RingKind::TruncatedSeries { .. } => true,
        RingKind::DPlusM { base, .. } => matches!(base.kind, RingKind::Rationals),
        RingKind::Product { left, right } => kaplansky_supported(left) && kaplansky_supported(right),
        _ => false,
    }
}

/// Given `(a, b, c)` with unit gcd, find `(p, q)` such that
/// `gcd(p*a, p*b + q*c)` is a unit: the row step that turns a triangular
/// 2x2 block into a diagonal one.
pub fn kaplansky_solve(
    a: &RingValue,
    b: &RingValue,
    c: &RingValue,
) -> Result<Option<(RingValue, RingValue)>> {
    a.require_same_ring(b)?;
    a.require_same_ring(c)?;
    let ring = a.ring().clone();
    match &ring.kind {
        RingKind::Rationals => {
            if !a.is_zero() || !b.is_zero() {
                Ok(Some((RingValue::one(&ring), RingValue::zero(&ring))))
            } else if !c.is_zero() {
                Ok(Some((RingValue::one(&ring), RingValue::one(&ring))))
            } else {
                Ok(None)
            }
        }
        RingKind::Integers => {
            let (x, y, z) = (a.payload().as_int()?, b.payload().as_int()?, c.payload().as_int()?);
            if x.is_zero() {
                let (g, s, t) = int_extended_gcd(y, z);
                if !g.is_one() {
                    return Ok(None);
                }
                return Ok(Some((
                    RingValue::raw(ring.clone(), Payload::Int(s)),
                    RingValue::raw(ring, Payload::Int(t)),
                )));
            }
            let q = int_coprime_part(x, y);
            let check = x.gcd(&(y + &q * z));
            if !check.is_one() {
                return Ok(None);
            }
            Ok(Some((
                RingValue::one(&ring),
                RingValue::raw(ring, Payload::Int(q)),
            )))
        }
        RingKind::PolynomialOverRationals => {
            let (x, y, z) = (
                a.payload().as_poly()?,
                b.payload().as_poly()?,
                c.payload().as_poly()?,
            );
            if x.is_zero() {
                let (g, s, t) = y.extended_gcd(z);
                if !(g.is_constant() && !g.is_zero()) {
                    return Ok(None);
                }
                return Ok(Some((
                    RingValue::raw(ring.clone(), Payload::Poly(s)),
                    RingValue::raw(ring, Payload::Poly(t)),
                )));
            }
            let q = x.coprime_part(y);
            let check = x.gcd(&y.add(&q.mul(z)));
            if !(check.is_constant() && !check.is_zero()) {
                return Ok(None);
            }
            Ok(Some((
                RingValue::one(&ring),
                RingValue::raw(ring, Payload::Poly(q)),
            )))
        }
        RingKind::TruncatedSeries { .. } => series_kaplansky(a, b, c),
        RingKind::DPlusM { base, .. } => {
            if matches!(base.kind, RingKind::Rationals) {
                series_kaplansky(a, b, c)
            } else {
                Err(RingError::capability(ring.to_string(), "kaplansky_solve"))
            }
        }
        RingKind::Product { .. } => {
            let (xa, xb) = arith::split_pair(a)?;
            let (ya, yb) = arith::split_pair(b)?;
            let (za, zb) = arith::split_pair(c)?;
            let left = kaplansky_solve(&xa, &ya, &za)?;
            let right = kaplansky_solve(&xb, &yb, &zb)?;
            match (left, right) {
                (Some((pa, qa)), Some((pb, qb))) => Ok(Some((
                    arith::join_pair(&ring, pa, pb)?,
                    arith::join_pair(&ring, qa, qb)?,
                ))),
                _ => Ok(None),
            }
        }
        _ => Err(RingError::capability(ring.to_string(), "kaplansky_solve")),
    }
}

/// Valuation-ring variant: whichever of the three has a unit leading
/// position decides the pair.
fn series_kaplansky(
    a: &RingValue,
    b: &RingValue,
    c: &RingValue,
) -> Result<Option<(RingValue, RingValue)>> {
    let ring = a.ring().clone();
    let val = |v: &RingValue| -> Result<Option<usize>> {
        v.payload().as_series()?.exact_valuation("kaplansky step")
    };
    let one = RingValue::one(&ring);
    let zero = RingValue::zero(&ring);
    if val(a)? == Some(0) || val(b)? == Some(0) {
        Ok(Some((one, zero)))
    } else if val(c)? == Some(0) {
        Ok(Some((one.clone(), one)))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::RingDescriptor;
    use crate::value::EqOutcome;
    use num_bigint::BigInt;

    #[test]
    fn integer_units() {
        let z = RingDescriptor::integers();
        let one = RingValue::from_i64(&z, 1);
        let two = RingValue::from_i64(&z, 2);
        assert_eq!(unit_inverse(&one).unwrap(), Some(one.clone()));
        assert_eq!(unit_inverse(&two).unwrap(), None);
    }

    #[test]
    fn series_unit_inverse_alternating() {
        let ring = RingDescriptor::truncated_series(4);
        let one_plus_x = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::window(
                0,
                vec![BigRational::one(), BigRational::one()],
                4,
            )),
        )
        .unwrap();
        let inv = unit_inverse(&one_plus_x).unwrap().unwrap();
        let expected = RingValue::raw(
            ring.clone(),
            Payload::Series(SeriesValue::window(
                0,
                vec![
                    BigRational::from(BigInt::from(1)),
                    BigRational::from(BigInt::from(-1)),
                    BigRational::from(BigInt::from(1)),
                    BigRational::from(BigInt::from(-1)),
                ],
                4,
            )),
        );
        assert_eq!(
            arith::values_equal(&inv, &expected).unwrap(),
            EqOutcome::ToPrecision(4)
        );
    }

    #[test]
    fn divide_exact_integers() {
        let z = RingDescriptor::integers();
        let six = RingValue::from_i64(&z, 6);
        let three = RingValue::from_i64(&z, 3);
        let two = RingValue::from_i64(&z, 2);
        assert_eq!(divide_exact(&six, &three).unwrap(), Some(two.clone()));
        assert_eq!(divide_exact(&three, &two).unwrap(), None);
        assert_eq!(
            divide_exact(&three, &RingValue::zero(&z)),
            Err(RingError::ZeroDivisor)
        );
        assert!(divides(&two, &six).unwrap());
        assert!(!divides(&RingValue::zero(&z), &six).unwrap());
        assert!(divides(&RingValue::zero(&z), &RingValue::zero(&z)).unwrap());
    }

    #[test]
    fn dplusm_division_allows_field_tails() {
        // (1/2)x^3 / ((1/2)x^2) = x in Z + xQ[[x]]
        let ring = RingDescriptor::dplusm(RingDescriptor::integers(), 8);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::monomial(half.clone(), 3, 8)),
        )
        .unwrap();
        let b = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::monomial(half, 2, 8)),
        )
        .unwrap();
        let q = divide_exact(&a, &b).unwrap().unwrap();
        let x = RingValue::raw(
            ring.clone(),
            Payload::Series(SeriesValue::monomial(BigRational::one(), 1, 8)),
        );
        assert!(arith::values_equal(&q, &x).unwrap().holds());
        // multiply back
        let back = arith::mul(&q, &b).unwrap();
        assert!(arith::values_equal(&back, &a).unwrap().holds());
        // (3+x)/(2+x) leaves the ring: constant 3/2 is not integral
        let three_x = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::window(
                0,
                vec![BigRational::from(BigInt::from(3)), BigRational::one()],
                8,
            )),
        )
        .unwrap();
        let two_x = RingValue::new(
            ring.clone(),
            Payload::Series(SeriesValue::window(
                0,
                vec![BigRational::from(BigInt::from(2)), BigRational::one()],
                8,
            )),
        )
        .unwrap();
        assert_eq!(divide_exact(&three_x, &two_x).unwrap(), None);
    }

    #[test]
    fn kaplansky_integers_validated_by_search() {
        let z = RingDescriptor::integers();
        let cases = [(2i64, 3i64, 5i64), (0, 0, 1), (4, 6, 3), (6, 10, 15)];
        for (x, y, w) in cases {
            let a = RingValue::from_i64(&z, x);
            let b = RingValue::from_i64(&z, y);
            let c = RingValue::from_i64(&z, w);
            let (p, q) = kaplansky_solve(&a, &b, &c).unwrap().unwrap();
            let pa = arith::mul(&p, &a).unwrap();
            let pbqc = arith::add(
                &arith::mul(&p, &b).unwrap(),
                &arith::mul(&q, &c).unwrap(),
            )
            .unwrap();
            let g = pa
                .payload()
                .as_int()
                .unwrap()
                .gcd(pbqc.payload().as_int().unwrap());
            assert!(g.is_one(), "case {x},{y},{w}: gcd {g}");
        }
    }
}
