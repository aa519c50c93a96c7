//! Overrings: the base ring with a declared, finitely generated set of
//! denominators inverted. Elements are kept as a base numerator over a
//! factored denominator (one exponent per declared generator), so
//! membership stays decidable.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::payload_mul;
use crate::certificate::GcdCertificate;
use crate::descriptor::{RingDescriptor, RingKind};
use crate::error::{Result, RingError};
use crate::gcd;
use crate::poly::Polynomial;
use crate::value::{EqOutcome, FractionValue, Payload, RingValue};

pub(crate) struct OverringParts<'a> {
    pub base: &'a Arc<RingDescriptor>,
    pub generators: &'a [RingValue],
}

pub(crate) fn parts(ring: &Arc<RingDescriptor>) -> Result<OverringParts<'_>> {
    match &ring.kind {
        RingKind::Overring { base, denominators } => Ok(OverringParts {
            base,
            generators: denominators,
        }),
        _ => Err(RingError::PayloadMismatch("expected an overring".into())),
    }
}

/// The base-ring element `prod generators[i]^exps[i]`.
pub(crate) fn denominator_payload(
    base: &Arc<RingDescriptor>,
    generators: &[RingValue],
    exps: &[u32],
) -> Result<Payload> {
    let mut acc = RingValue::one(base).into_payload();
    for (g, &e) in generators.iter().zip(exps.iter()) {
        for _ in 0..e {
            acc = payload_mul(base, &acc, g.payload())?;
        }
    }
    Ok(acc)
}

/// Exact division in the (integer or polynomial) base ring.
fn base_divide_exact(base: &Arc<RingDescriptor>, num: &Payload, div: &Payload) -> Result<Option<Payload>> {
    match &base.kind {
        RingKind::Integers => {
            let n = num.as_int()?;
            let d = div.as_int()?;
            if d.is_zero() {
                return if n.is_zero() {
                    Ok(Some(Payload::Int(BigInt::zero())))
                } else {
                    Err(RingError::ZeroDivisor)
                };
            }
            let (q, r) = n.div_rem(d);
            Ok(if r.is_zero() { Some(Payload::Int(q)) } else { None })
        }
        RingKind::PolynomialOverRationals => {
            let n = num.as_poly()?;
            let d = div.as_poly()?;
            if d.is_zero() {
                return if n.is_zero() {
                    Ok(Some(Payload::Poly(Polynomial::zero())))
                } else {
                    Err(RingError::ZeroDivisor)
                };
            }
            Ok(n.divide_exact(d)?.map(Payload::Poly))
        }
        _ => Err(RingError::PayloadMismatch(
            "unsupported overring base".into(),
        )),
    }
}

fn base_gcd(base: &Arc<RingDescriptor>, x: &Payload, y: &Payload) -> Result<Payload> {
    match &base.kind {
        RingKind::Integers => Ok(Payload::Int(x.as_int()?.gcd(y.as_int()?))),
        RingKind::PolynomialOverRationals => Ok(Payload::Poly(x.as_poly()?.gcd(y.as_poly()?))),
        _ => Err(RingError::PayloadMismatch(
            "unsupported overring base".into(),
        )),
    }
}

/// Is the base element a unit of the base ring (not of the overring)?
fn base_is_unit(base: &Arc<RingDescriptor>, x: &Payload) -> Result<bool> {
    match &base.kind {
        RingKind::Integers => {
            let n = x.as_int()?;
            Ok(n.abs().is_one())
        }
        RingKind::PolynomialOverRationals => {
            let p = x.as_poly()?;
            Ok(p.is_constant() && !p.is_zero())
        }
        _ => Err(RingError::PayloadMismatch(
            "unsupported overring base".into(),
        )),
    }
}

fn base_unit_inverse(base: &Arc<RingDescriptor>, x: &Payload) -> Result<Payload> {
    match &base.kind {
        RingKind::Integers => {
            let n = x.as_int()?;
            if n.abs().is_one() {
                Ok(Payload::Int(n.clone()))
            } else {
                Err(RingError::NotAUnit)
            }
        }
        RingKind::PolynomialOverRationals => {
            let p = x.as_poly()?;
            if p.is_constant() && !p.is_zero() {
                Ok(Payload::Poly(Polynomial::constant(
                    num_rational::BigRational::one() / p.eval_at_zero(),
                )))
            } else {
                Err(RingError::NotAUnit)
            }
        }
        _ => Err(RingError::PayloadMismatch(
            "unsupported overring base".into(),
        )),
    }
}

/// Cancel declared generator factors out of the numerator; zero resets the
/// denominator entirely.
pub(crate) fn reduce(ring: &Arc<RingDescriptor>, f: FractionValue) -> Result<FractionValue> {
    let p = parts(ring)?;
    if f.num.is_zero_payload() {
        return Ok(FractionValue {
            num: f.num,
            den: vec![0; p.generators.len()],
        });
    }
    let mut num = *f.num;
    let mut den = f.den;
    for (i, g) in p.generators.iter().enumerate() {
        while den[i] > 0 {
            match base_divide_exact(p.base, &num, g.payload())? {
                Some(q) => {
                    num = q;
                    den[i] -= 1;
                }
                None => break,
            }
        }
    }
    Ok(FractionValue {
        num: Box::new(num),
        den,
    })
}

pub(crate) fn fraction_add(
    ring: &Arc<RingDescriptor>,
    x: &FractionValue,
    y: &FractionValue,
) -> Result<FractionValue> {
    let p = parts(ring)?;
    let den: Vec<u32> = x
        .den
        .iter()
        .zip(y.den.iter())
        .map(|(a, b)| *a.max(b))
        .collect();
    let scale_x: Vec<u32> = den.iter().zip(x.den.iter()).map(|(m, e)| m - e).collect();
    let scale_y: Vec<u32> = den.iter().zip(y.den.iter()).map(|(m, e)| m - e).collect();
    let nx = payload_mul(
        p.base,
        &x.num,
        &denominator_payload(p.base, p.generators, &scale_x)?,
    )?;
    let ny = payload_mul(
        p.base,
        &y.num,
        &denominator_payload(p.base, p.generators, &scale_y)?,
    )?;
    let sum = crate::arith::payload_add(p.base, &nx, &ny)?;
    reduce(
        ring,
        FractionValue {
            num: Box::new(sum),
            den,
        },
    )
}

pub(crate) fn fraction_mul(
    ring: &Arc<RingDescriptor>,
    x: &FractionValue,
    y: &FractionValue,
) -> Result<FractionValue> {
    let p = parts(ring)?;
    let num = payload_mul(p.base, &x.num, &y.num)?;
    let den: Vec<u32> = x.den.iter().zip(y.den.iter()).map(|(a, b)| a + b).collect();
    reduce(
        ring,
        FractionValue {
            num: Box::new(num),
            den,
        },
    )
}

pub(crate) fn fraction_eq(
    ring: &Arc<RingDescriptor>,
    x: &FractionValue,
    y: &FractionValue,
) -> Result<EqOutcome> {
    let p = parts(ring)?;
    let dx = denominator_payload(p.base, p.generators, &x.den)?;
    let dy = denominator_payload(p.base, p.generators, &y.den)?;
    let lhs = payload_mul(p.base, &x.num, &dy)?;
    let rhs = payload_mul(p.base, &y.num, &dx)?;
    Ok(if lhs == rhs {
        EqOutcome::Exact
    } else {
        EqOutcome::Distinct
    })
}

/// Bring values to one denominator: returns the scaled base numerators and
/// the shared exponent vector.
pub fn to_common_denominator(
    ring: &Arc<RingDescriptor>,
    values: &[&FractionValue],
) -> Result<(Vec<Payload>, Vec<u32>)> {
    let p = parts(ring)?;
    let mut den = vec![0u32; p.generators.len()];
    for v in values {
        for (m, e) in den.iter_mut().zip(v.den.iter()) {
            *m = (*m).max(*e);
        }
    }
    let mut nums = Vec::with_capacity(values.len());
    for v in values {
        let scale: Vec<u32> = den.iter().zip(v.den.iter()).map(|(m, e)| m - e).collect();
        nums.push(payload_mul(
            p.base,
            &v.num,
            &denominator_payload(p.base, p.generators, &scale)?,
        )?);
    }
    Ok((nums, den))
}

/// Units of the overring: numerators that are, up to a base unit, products
/// of declared generators.
pub(crate) fn unit_inverse_fraction(
    ring: &Arc<RingDescriptor>,
    f: &FractionValue,
) -> Result<Option<FractionValue>> {
    let p = parts(ring)?;
    if f.num.is_zero_payload() {
        return Ok(None);
    }
    // strip generator factors out of the numerator
    let mut residual = (*f.num).clone();
    let mut stripped = vec![0u32; p.generators.len()];
    for (i, g) in p.generators.iter().enumerate() {
        while let Some(q) = base_divide_exact(p.base, &residual, g.payload())? {
            residual = q;
            stripped[i] += 1;
        }
    }
    if !base_is_unit(p.base, &residual)? {
        return Ok(None);
    }
    // 1 / (u * g^s / g^e)  =  u^-1 * g^e / g^s
    let u_inv = base_unit_inverse(p.base, &residual)?;
    let num = payload_mul(
        p.base,
        &u_inv,
        &denominator_payload(p.base, p.generators, &f.den)?,
    )?;
    Ok(Some(reduce(
        ring,
        FractionValue {
            num: Box::new(num),
            den: stripped,
        },
    )?))
}

/// Exact division in the overring via gcd on cleared numerators.
pub(crate) fn divide_exact_fraction(
    ring: &Arc<RingDescriptor>,
    a: &FractionValue,
    b: &FractionValue,
) -> Result<Option<FractionValue>> {
    let p = parts(ring)?;
    if b.num.is_zero_payload() {
        return if a.num.is_zero_payload() {
            Ok(Some(FractionValue {
                num: Box::new(RingValue::zero(p.base).into_payload()),
                den: vec![0; p.generators.len()],
            }))
        } else {
            Err(RingError::ZeroDivisor)
        };
    }
    // a/Da / (b/Db) = (a*Db) / (b*Da)
    let num = payload_mul(
        p.base,
        &a.num,
        &denominator_payload(p.base, p.generators, &b.den)?,
    )?;
    let div = payload_mul(
        p.base,
        &b.num,
        &denominator_payload(p.base, p.generators, &a.den)?,
    )?;
    let g = base_gcd(p.base, &num, &div)?;
    let num_red = base_divide_exact(p.base, &num, &g)?.expect("gcd divides");
    let mut div_red = base_divide_exact(p.base, &div, &g)?.expect("gcd divides");
    // the reduced divisor must be a unit times declared generators
    let mut extra = vec![0u32; p.generators.len()];
    for (i, gen) in p.generators.iter().enumerate() {
        while let Some(q) = base_divide_exact(p.base, &div_red, gen.payload())? {
            div_red = q;
            extra[i] += 1;
        }
    }
    if !base_is_unit(p.base, &div_red)? {
        return Ok(None);
    }
    let u_inv = base_unit_inverse(p.base, &div_red)?;
    let num_final = payload_mul(p.base, &num_red, &u_inv)?;
    Ok(Some(reduce(
        ring,
        FractionValue {
            num: Box::new(num_final),
            den: extra,
        },
    )?))
}

/// Certified gcd in the overring: bring both inputs over one denominator
/// `d`, take the base certificate `(c, a', b', alpha, beta)` of the
/// numerators, and return generator `c/d` with the base cofactors and
/// coefficients embedded. All certificate equations then hold verbatim.
pub fn overring_gcd_certified(u: &RingValue, v: &RingValue) -> Result<GcdCertificate> {
    u.require_same_ring(v)?;
    let ring = u.ring();
    let p = parts(ring)?;
    let fu = u.payload().as_fraction()?;
    let fv = v.payload().as_fraction()?;
    let (nums, den) = to_common_denominator(ring, &[fu, fv])?;
    let a = RingValue::raw(p.base.clone(), nums[0].clone());
    let b = RingValue::raw(p.base.clone(), nums[1].clone());
    let base_cert = gcd::gcd_certified(&a, &b)?;
    let embed = |v: RingValue| -> RingValue {
        RingValue::raw(
            ring.clone(),
            Payload::Fraction(FractionValue {
                num: Box::new(v.into_payload()),
                den: vec![0; p.generators.len()],
            }),
        )
    };
    let generator = RingValue::raw(
        ring.clone(),
        Payload::Fraction(FractionValue {
            num: Box::new(base_cert.d.into_payload()),
            den,
        }),
    );
    Ok(GcdCertificate {
        d: generator,
        a1: embed(base_cert.a1),
        b1: embed(base_cert.b1),
        alpha: embed(base_cert.alpha),
        beta: embed(base_cert.beta),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith;

    fn z_half() -> Arc<RingDescriptor> {
        let z = RingDescriptor::integers();
        let two = RingValue::from_i64(&z, 2);
        RingDescriptor::overring(z, vec![two])
    }

    fn frac(ring: &Arc<RingDescriptor>, num: i64, den_exp: u32) -> RingValue {
        let p = parts(ring).unwrap();
        let num = RingValue::from_i64(p.base, num).into_payload();
        RingValue::new(
            ring.clone(),
            Payload::Fraction(FractionValue {
                num: Box::new(num),
                den: vec![den_exp],
            }),
        )
        .unwrap()
    }

    #[test]
    fn reduction_cancels_generator_factors() {
        let ring = z_half();
        let v = frac(&ring, 6, 1); // 6/2 -> 3
        let reduced = reduce(&ring, v.payload().as_fraction().unwrap().clone()).unwrap();
        assert_eq!(*reduced.num.as_int().unwrap(), BigInt::from(3));
        assert_eq!(reduced.den, vec![0]);
    }

    #[test]
    fn add_brings_to_common_denominator() {
        let ring = z_half();
        let a = frac(&ring, 3, 1); // 3/2
        let b = frac(&ring, 1, 2); // 1/4
        let sum = arith::add(&a, &b).unwrap(); // 7/4
        let expected = frac(&ring, 7, 2);
        assert_eq!(
            arith::values_equal(&sum, &expected).unwrap(),
            EqOutcome::Exact
        );
    }

    #[test]
    fn unit_inverse_strips_powers_of_two() {
        let ring = z_half();
        let v = frac(&ring, -4, 0); // -4 = -2^2, a unit here
        let inv = unit_inverse_fraction(&ring, v.payload().as_fraction().unwrap())
            .unwrap()
            .unwrap();
        let inv = RingValue::new(ring.clone(), Payload::Fraction(inv)).unwrap();
        let prod = arith::mul(&v, &inv).unwrap();
        assert_eq!(
            arith::values_equal(&prod, &RingValue::one(&ring)).unwrap(),
            EqOutcome::Exact
        );
        // 3 is not a unit
        let w = frac(&ring, 3, 0);
        assert!(unit_inverse_fraction(&ring, w.payload().as_fraction().unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn divide_exact_handles_denominators() {
        let ring = z_half();
        let a = frac(&ring, 3, 0); // 3
        let b = frac(&ring, 6, 1); // 3
        let q = divide_exact_fraction(
            &ring,
            a.payload().as_fraction().unwrap(),
            b.payload().as_fraction().unwrap(),
        )
        .unwrap()
        .unwrap();
        let q = RingValue::new(ring.clone(), Payload::Fraction(q)).unwrap();
        assert_eq!(
            arith::values_equal(&q, &RingValue::one(&ring)).unwrap(),
            EqOutcome::Exact
        );
        // 1/2 divided by 3 does not exist (3 not invertible)
        let half = frac(&ring, 1, 1);
        let three = frac(&ring, 3, 0);
        assert!(divide_exact_fraction(
            &ring,
            half.payload().as_fraction().unwrap(),
            three.payload().as_fraction().unwrap(),
        )
        .unwrap()
        .is_none());
    }
}
