//! Shared fixtures for the integration suites: ring builders, element
//! literals, and the independent oracles the expected values are frozen
//! from (an elementary-operations SNF over machine integers and a
//! brute-force validator for the two-generator diagonalization step).

#![allow(dead_code)]

use std::sync::Arc;

use amalgam::descriptor::{HomDescriptor, HomKind, IdealDescriptor, RingKind};
use amalgam::series::SeriesValue;
use amalgam::value::{FractionValue, Payload};
use amalgam::{RingDescriptor, RingFlag, RingValue};
use num_bigint::BigInt;
use num_rational::BigRational;

pub fn z() -> Arc<RingDescriptor> {
    RingDescriptor::integers()
}

pub fn q() -> Arc<RingDescriptor> {
    RingDescriptor::rationals()
}

pub fn qx() -> Arc<RingDescriptor> {
    RingDescriptor::polynomials()
}

pub fn series_q(prec: usize) -> Arc<RingDescriptor> {
    RingDescriptor::truncated_series(prec)
}

pub fn dplusm_z(prec: usize) -> Arc<RingDescriptor> {
    RingDescriptor::dplusm(z(), prec)
}

/// The integers with 2 inverted.
pub fn z_half() -> Arc<RingDescriptor> {
    let base = z();
    let two = RingValue::from_i64(&base, 2);
    RingDescriptor::overring(base, vec![two])
}

pub fn product_zz() -> Arc<RingDescriptor> {
    RingDescriptor::product(z(), z())
}

/// The amalgamation of the integers into the rational series ring along
/// the positive-order ideal, with the image ring declared an elementary
/// divisor domain.
pub fn z_bowtie_xq(prec: usize) -> Arc<RingDescriptor> {
    let image = RingDescriptor::with_flags(
        RingKind::DPlusM {
            base: z(),
            precision: prec,
        },
        &[
            RingFlag::IsDomain,
            RingFlag::IsBezout,
            RingFlag::IsHermite,
            RingFlag::IsEdr,
        ],
    );
    RingDescriptor::new(RingKind::Amalgamation {
        a: z(),
        b: series_q(prec),
        hom: HomDescriptor::new(HomKind::InclusionIntoDPlusM, true),
        ideal: IdealDescriptor::PositiveOrder,
        meets_ideal_zero: None,
        image: Some(image),
    })
}

/// The self-amalgamation of the integers along the even numbers.
pub fn z_bowtie_2z() -> Arc<RingDescriptor> {
    let base = z();
    let two = RingValue::from_i64(&base, 2);
    RingDescriptor::amalgamation(
        base.clone(),
        base,
        HomDescriptor::new(HomKind::Identity, true),
        IdealDescriptor::MultiplesOf(two),
    )
}

/// The integers amalgamated with themselves along everything: Z x Z.
pub fn z_bowtie_whole() -> Arc<RingDescriptor> {
    let base = z();
    RingDescriptor::amalgamation(
        base.clone(),
        base,
        HomDescriptor::new(HomKind::Identity, true),
        IdealDescriptor::Whole,
    )
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rati(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Series literal from (valuation, coefficients, precision).
pub fn ser(ring: &Arc<RingDescriptor>, val: usize, coeffs: &[BigRational], prec: usize) -> RingValue {
    RingValue::new(
        ring.clone(),
        Payload::Series(SeriesValue::window(val, coeffs.to_vec(), prec)),
    )
    .unwrap()
}

pub fn mono(ring: &Arc<RingDescriptor>, c: BigRational, p: usize, prec: usize) -> RingValue {
    RingValue::new(ring.clone(), Payload::Series(SeriesValue::monomial(c, p, prec))).unwrap()
}

/// Overring literal n / 2^e over `z_half()`.
pub fn half_frac(ring: &Arc<RingDescriptor>, n: i64, e: u32) -> RingValue {
    RingValue::new(
        ring.clone(),
        Payload::Fraction(FractionValue {
            num: Box::new(Payload::Int(BigInt::from(n))),
            den: vec![e],
        }),
    )
    .unwrap()
}

/// Product-ring literal (a, b) over `product_zz()`.
pub fn zz(ring: &Arc<RingDescriptor>, a: i64, b: i64) -> RingValue {
    RingValue::new(
        ring.clone(),
        Payload::Pair(
            Box::new(Payload::Int(BigInt::from(a))),
            Box::new(Payload::Int(BigInt::from(b))),
        ),
    )
    .unwrap()
}

/// Amalgam element from raw components, membership-checked.
pub fn amalgam_pair(ring: &Arc<RingDescriptor>, a: RingValue, b: RingValue) -> RingValue {
    amalgam::amalgam::from_pair(ring, &a, &b).unwrap()
}

/// Integer pair (n, n + j) in an integer amalgamation.
pub fn zpair(ring: &Arc<RingDescriptor>, left: i64, right: i64) -> RingValue {
    let base = z();
    amalgam::amalgam::from_pair(
        ring,
        &RingValue::from_i64(&base, left),
        &RingValue::from_i64(&base, right),
    )
    .unwrap()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// Independent Smith-form oracle over machine integers: classical
/// elementary row/column operations without transform tracking, followed
/// by the gcd/lcm chain normalization. Returns the canonical nonnegative
/// divisor chain, zeros trailing.
#[allow(clippy::needless_range_loop)] // index form mirrors the row/column ops
pub fn integer_snf_oracle(mat: &[Vec<i128>]) -> Vec<i128> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = mat.to_vec();
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            // locate a minimal nonzero entry in the trailing block
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if m[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }
            let mut done = true;
            for i in (k + 1)..rows {
                if m[i][k] != 0 {
                    let f = m[i][k] / m[k][k];
                    for j in 0..cols {
                        m[i][j] -= f * m[k][j];
                    }
                    if m[i][k] != 0 {
                        done = false;
                    }
                }
            }
            for j in (k + 1)..cols {
                if m[k][j] != 0 {
                    let f = m[k][j] / m[k][k];
                    for i in 0..rows {
                        m[i][j] -= f * m[i][k];
                    }
                    if m[k][j] != 0 {
                        done = false;
                    }
                }
            }
            let row_clear = ((k + 1)..rows).all(|i| m[i][k] == 0);
            let col_clear = ((k + 1)..cols).all(|j| m[k][j] == 0);
            if done && row_clear && col_clear {
                break;
            }
        }
    }
    let mut diag: Vec<i128> = (0..n).map(|k| m[k][k].abs()).collect();
    // canonical chain: replace pairs by (gcd, lcm) until stable
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in (i + 1)..n {
                if diag[j] != 0 && (diag[i] == 0 || diag[j] % diag[i] != 0) {
                    let g = gcd_i128(diag[i], diag[j]);
                    let l = if g == 0 { 0 } else { diag[i] / g * diag[j] };
                    diag[i] = g;
                    diag[j] = l.abs();
                    changed = true;
                }
            }
        }
        if !changed {
            return diag;
        }
    }
}

/// Brute-force validator for the two-generator step: search confirms that
/// the returned `(p, q)` satisfies gcd(p*a, p*b + q*c) = 1, and that some
/// valid pair exists within |p|, |q| <= 10.
pub fn kaplansky_oracle_validates(a: i64, b: i64, c: i64, p: i64, q: i64) -> bool {
    let g = gcd_i128(
        (p as i128) * (a as i128),
        (p as i128) * (b as i128) + (q as i128) * (c as i128),
    );
    g == 1
}

pub fn kaplansky_oracle_exists(a: i64, b: i64, c: i64) -> bool {
    for p in -10i64..=10 {
        for q in -10i64..=10 {
            if kaplansky_oracle_validates(a, b, c, p, q) {
                return true;
            }
        }
    }
    false
}
