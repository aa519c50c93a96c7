//! Dense univariate polynomials with rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, RingError};

/// A polynomial over the rationals, stored dense, ascending degree,
/// no trailing zero coefficients (the zero polynomial is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Constant term (zero for the zero polynomial).
    pub fn eval_at_zero(&self) -> BigRational {
        self.coeffs.first().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            out.push(a + b);
        }
        Polynomial::new(out)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg r < deg divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        if divisor.is_zero() {
            return Err(RingError::ZeroDivisor);
        }
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                quot[k] = factor.clone();
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    let t = &factor * b;
                    rem[k + j] -= t;
                }
            }
            rem.pop();
        }
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Exact division; `None` when the remainder is nonzero.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Monic associate and the unit (leading coefficient) it was divided by.
    pub fn monic(&self) -> (Polynomial, BigRational) {
        match self.leading_coefficient() {
            None => (Polynomial::zero(), BigRational::one()),
            Some(lc) => {
                let lc = lc.clone();
                (self.scale(&(BigRational::one() / &lc)), lc)
            }
        }
    }

    /// Euclidean gcd, returned monic (zero if both inputs are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic().0
    }

    /// Extended Euclid: returns (g, s, t) with g monic (or zero) and
    /// g = s*self + t*other.
    pub fn extended_gcd(&self, other: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
        let mut old_r = self.clone();
        let mut r = other.clone();
        let mut old_s = Polynomial::one();
        let mut s = Polynomial::zero();
        let mut old_t = Polynomial::zero();
        let mut t = Polynomial::one();
        while !r.is_zero() {
            let (q, rem) = old_r.div_rem(&r).expect("nonzero divisor");
            old_r = std::mem::replace(&mut r, rem);
            let ns = old_s.sub(&q.mul(&s));
            old_s = std::mem::replace(&mut s, ns);
            let nt = old_t.sub(&q.mul(&t));
            old_t = std::mem::replace(&mut t, nt);
        }
        let (g, lc) = old_r.monic();
        if g.is_zero() {
            return (g, Polynomial::one(), Polynomial::zero());
        }
        let inv = BigRational::one() / lc;
        (g, old_s.scale(&inv), old_t.scale(&inv))
    }

    /// Largest divisor of `self` coprime to `other`, by repeated
    /// gcd-division (no factorization needed).
    pub fn coprime_part(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut a = self.clone();
        loop {
            let g = a.gcd(other);
            if g.is_constant() {
                return a;
            }
            a = a
                .divide_exact(&g)
                .expect("gcd divides")
                .expect("gcd divides");
        }
    }

    /// Render as a human-readable string in the variable `x`.
    pub fn to_display_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = format_rational(c);
            let part = match i {
                0 => coeff,
                1 if c.is_one() => "x".to_string(),
                1 if (-c).is_one() => "-x".to_string(),
                1 => format!("{coeff}*x"),
                _ if c.is_one() => format!("x^{i}"),
                _ if (-c).is_one() => format!("-x^{i}"),
                _ => format!("{coeff}*x^{i}"),
            };
            parts.push(part);
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
        out
    }
}

pub(crate) fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_is_integral(r: &BigRational) -> bool {
    r.denom().is_one()
}

/// Sign-normalized integer gcd with Bézout coefficients:
/// returns (g, s, t), g >= 0, g = s*a + t*b.
pub fn int_extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let mut old_r = a.clone();
    let mut r = b.clone();
    let mut old_s = BigInt::one();
    let mut s = BigInt::zero();
    let mut old_t = BigInt::zero();
    let mut t = BigInt::one();
    while !r.is_zero() {
        let q = &old_r / &r;
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Largest divisor of `a` coprime to `b` (integers), sign of `a` kept.
pub fn int_coprime_part(a: &BigInt, b: &BigInt) -> BigInt {
    use num_integer::Integer;
    if a.is_zero() {
        return BigInt::zero();
    }
    let mut a = a.clone();
    loop {
        let g = a.gcd(b);
        if g.is_one() {
            return a;
        }
        a /= g;
    }
}
