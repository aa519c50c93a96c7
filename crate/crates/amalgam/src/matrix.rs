//! Matrices over described rings: division-free determinants, Hermite
//! triangularization driven by gcd certificates, and Smith-style
//! diagonalization with three transport mechanisms — componentwise over
//! products, through the projection isomorphism over amalgamations, and
//! by denominator clearing over overrings. Every result is re-checkable
//! from scratch by `verify_snf` / `verify_hermite`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::amalgam;
use crate::arith;
use crate::certificate::{Check, GcdCertificate, VerificationReport};
use crate::descriptor::{RingDescriptor, RingKind};
use crate::error::{Result, RingError};
use crate::gcd;
use crate::ideal;
use crate::ops;
use crate::overring;
use crate::value::{EqOutcome, FractionValue, Payload, RingValue};

/// Hard cap for the division-free determinant (and hence for the sizes
/// the verifier can re-check).
pub const SIZE_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    ring: Arc<RingDescriptor>,
    rows: usize,
    cols: usize,
    entries: Vec<RingValue>,
}

impl Matrix {
    pub fn new(
        ring: Arc<RingDescriptor>,
        rows: usize,
        cols: usize,
        entries: Vec<RingValue>,
    ) -> Result<Matrix> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(RingError::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        for e in &entries {
            if !e.ring().same_structure(&ring) {
                return Err(RingError::MixedRings);
            }
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: Arc<RingDescriptor>, rows: Vec<Vec<RingValue>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(RingError::ShapeMismatch("ragged rows".into()));
        }
        Matrix::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn identity(ring: &Arc<RingDescriptor>, n: usize) -> Matrix {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(if i == j {
                    RingValue::one(ring)
                } else {
                    RingValue::zero(ring)
                });
            }
        }
        Matrix {
            ring: ring.clone(),
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zero(ring: &Arc<RingDescriptor>, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![RingValue::zero(ring); rows * cols],
        }
    }

    pub fn ring(&self) -> &Arc<RingDescriptor> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingValue {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingValue) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[RingValue] {
        &self.entries
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if !self.ring.same_structure(&other.ring) {
            return Err(RingError::MixedRings);
        }
        if self.cols != other.rows {
            return Err(RingError::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = RingValue::zero(&self.ring);
                for k in 0..self.cols {
                    acc = arith::add(&acc, &arith::mul(self.get(i, k), other.get(k, j))?)?;
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    /// Map entries into another ring.
    pub fn map_entries<F>(&self, ring: Arc<RingDescriptor>, mut f: F) -> Result<Matrix>
    where
        F: FnMut(&RingValue) -> Result<RingValue>,
    {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Matrix::new(ring, self.rows, self.cols, entries)
    }

    pub fn is_diagonal_to_precision(&self) -> bool {
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| i == j || self.get(i, j).is_zero_to_precision())
        })
    }

    pub fn is_lower_triangular_to_precision(&self) -> bool {
        (0..self.rows).all(|i| {
            (i + 1..self.cols).all(|j| self.get(i, j).is_zero_to_precision())
        })
    }

    pub fn diagonal(&self) -> Vec<RingValue> {
        (0..self.rows.min(self.cols))
            .map(|k| self.get(k, k).clone())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// rows (r1, r2) <- (x*r1 + y*r2, z*r1 + w*r2)
    fn row_op(
        &mut self,
        r1: usize,
        r2: usize,
        x: &RingValue,
        y: &RingValue,
        z: &RingValue,
        w: &RingValue,
    ) -> Result<()> {
        for j in 0..self.cols {
            let a = self.get(r1, j).clone();
            let b = self.get(r2, j).clone();
            let top = arith::add(&arith::mul(x, &a)?, &arith::mul(y, &b)?)?;
            let bot = arith::add(&arith::mul(z, &a)?, &arith::mul(w, &b)?)?;
            self.set(r1, j, top);
            self.set(r2, j, bot);
        }
        Ok(())
    }

    /// cols (c1, c2) <- (x*c1 + y*c2, z*c1 + w*c2)
    fn col_op(
        &mut self,
        c1: usize,
        c2: usize,
        x: &RingValue,
        y: &RingValue,
        z: &RingValue,
        w: &RingValue,
    ) -> Result<()> {
        for i in 0..self.rows {
            let a = self.get(i, c1).clone();
            let b = self.get(i, c2).clone();
            let left = arith::add(&arith::mul(x, &a)?, &arith::mul(y, &b)?)?;
            let right = arith::add(&arith::mul(z, &a)?, &arith::mul(w, &b)?)?;
            self.set(i, c1, left);
            self.set(i, c2, right);
        }
        Ok(())
    }

    fn scale_row(&mut self, r: usize, u: &RingValue) -> Result<()> {
        for j in 0..self.cols {
            let v = arith::mul(u, self.get(r, j))?;
            self.set(r, j, v);
        }
        Ok(())
    }

    fn scale_col(&mut self, c: usize, u: &RingValue) -> Result<()> {
        for i in 0..self.rows {
            let v = arith::mul(u, self.get(i, c))?;
            self.set(i, c, v);
        }
        Ok(())
    }
}

/// Division-free determinant by memoized cofactor expansion, capped at
/// 8x8. Over pair rings it equals the pair of component determinants.
pub fn mat_det(m: &Matrix) -> Result<RingValue> {
    if m.rows != m.cols {
        return Err(RingError::NotSquare);
    }
    if m.rows > SIZE_CAP {
        return Err(RingError::SizeCap(SIZE_CAP));
    }
    let n = m.rows;
    let mut memo: HashMap<u32, RingValue> = HashMap::new();
    det_rec(m, n, (1u32 << n) - 1, &mut memo)
}

fn det_rec(m: &Matrix, n: usize, mask: u32, memo: &mut HashMap<u32, RingValue>) -> Result<RingValue> {
    if mask == 0 {
        return Ok(RingValue::one(&m.ring));
    }
    if let Some(v) = memo.get(&mask) {
        return Ok(v.clone());
    }
    let row = n - (mask.count_ones() as usize);
    let mut acc = RingValue::zero(&m.ring);
    let mut sign_positive = true;
    for j in 0..n {
        if mask & (1 << j) == 0 {
            continue;
        }
        let entry = m.get(row, j);
        if !entry.is_zero() {
            let sub = det_rec(m, n, mask & !(1 << j), memo)?;
            let term = arith::mul(entry, &sub)?;
            acc = if sign_positive {
                arith::add(&acc, &term)?
            } else {
                arith::sub(&acc, &term)?
            };
        }
        sign_positive = !sign_positive;
    }
    memo.insert(mask, acc.clone());
    Ok(acc)
}

/// Hermite triangularization: returns `(T, Q)` with `M*Q = T` lower
/// triangular and `Q` unimodular. Each two-column step applies the
/// certificate transform `[[alpha, -b1], [beta, a1]]` of determinant
/// `alpha*a1 + beta*b1 = 1`; unit diagonal entries are normalized.
pub fn hermite_reduce(m: &Matrix) -> Result<(Matrix, Matrix)> {
    let mut t = m.clone();
    let mut q = Matrix::identity(&m.ring, m.cols);
    for i in 0..m.rows.min(m.cols) {
        for j in (i + 1)..m.cols {
            if t.get(i, j).is_zero_to_precision() {
                continue;
            }
            let a = t.get(i, i).clone();
            let b = t.get(i, j).clone();
            let cert = gcd::gcd_certified(&a, &b)?;
            apply_column_certificate(&mut t, &mut q, i, j, &cert)?;
        }
        // normalize a unit diagonal entry to 1
        let d = t.get(i, i).clone();
        if !d.is_zero() {
            if let Some(d_inv) = ops::unit_inverse(&d)? {
                if arith::values_equal(&d, &RingValue::one(&m.ring))? == EqOutcome::Distinct {
                    t.scale_col(i, &d_inv)?;
                    q.scale_col(i, &d_inv)?;
                }
            }
        }
    }
    Ok((t, q))
}

/// cols (i, j) <- (alpha*c_i + beta*c_j, -b1*c_i + a1*c_j); the row with
/// the certified pair becomes (d, 0).
fn apply_column_certificate(
    t: &mut Matrix,
    q: &mut Matrix,
    i: usize,
    j: usize,
    cert: &GcdCertificate,
) -> Result<()> {
    let neg_b1 = arith::neg(&cert.b1);
    t.col_op(i, j, &cert.alpha, &cert.beta, &neg_b1, &cert.a1)?;
    q.col_op(i, j, &cert.alpha, &cert.beta, &neg_b1, &cert.a1)?;
    Ok(())
}

/// rows (i, j) <- (alpha*r_i + beta*r_j, -b1*r_i + a1*r_j).
fn apply_row_certificate(
    t: &mut Matrix,
    p: &mut Matrix,
    i: usize,
    j: usize,
    cert: &GcdCertificate,
) -> Result<()> {
    let neg_b1 = arith::neg(&cert.b1);
    t.row_op(i, j, &cert.alpha, &cert.beta, &neg_b1, &cert.a1)?;
    p.row_op(i, j, &cert.alpha, &cert.beta, &neg_b1, &cert.a1)?;
    Ok(())
}

/// Smith-style diagonalization result: `P*M*Q = D` with unimodular `P`,
/// `Q`, plus the machine-checkable verification record.
#[derive(Debug, Clone)]
pub struct SnfResult {
    pub p: Matrix,
    pub q: Matrix,
    pub d: Matrix,
    pub report: VerificationReport,
}

/// Diagonalize over any ring with a supported route; see the dispatch in
/// the match arms. The report is produced by an independent re-check.
pub fn snf(m: &Matrix) -> Result<SnfResult> {
    if m.rows > SIZE_CAP || m.cols > SIZE_CAP {
        return Err(RingError::SizeCap(SIZE_CAP));
    }
    let ring = m.ring.clone();
    let mut result = match &ring.kind {
        RingKind::Integers | RingKind::Rationals | RingKind::PolynomialOverRationals => {
            snf_by_pivoting(m, true)
        }
        RingKind::Product { .. } => snf_componentwise(m),
        RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            let glue = view.glue.expect("amalgam glue");
            if ideal::ideal_is_whole_like(&glue.ideal, &view.right)? {
                snf_componentwise(m)
            } else if amalgam::iso_available(&ring) {
                snf_by_transport(m)
            } else {
                Err(RingError::capability(ring.to_string(), "snf"))
            }
        }
        RingKind::Overring { .. } => return snf_overring(m),
        RingKind::DPlusM { base, .. } if matches!(base.kind, RingKind::Rationals) => {
            snf_by_pivoting(m, false)
        }
        _ => Err(RingError::capability(ring.to_string(), "snf")),
    }?;
    result.report = verify_snf(m, &result);
    Ok(result)
}

/// The alternating certificate reduction used on the Euclidean route and,
/// with the kaplansky fallback, on the generic gcd route. When
/// `normalize_chain` is set the diagonal is brought to the canonical
/// divisibility chain and associates are normalized.
fn snf_by_pivoting(m: &Matrix, normalize_chain: bool) -> Result<SnfResult> {
    let ring = m.ring.clone();
    let mut t = m.clone();
    let mut p = Matrix::identity(&ring, m.rows);
    let mut q = Matrix::identity(&ring, m.cols);

    let n = m.rows.min(m.cols);
    for k in 0..n {
        // move a smallest nonzero pivot into place, then clean its row and
        // column; column ops can refill the column, so iterate
        let mut guard = 0;
        loop {
            guard += 1;
            if guard > 256 {
                return Err(RingError::PrecisionExhausted {
                    context: "pivot reduction did not stabilize".into(),
                });
            }
            if guard == 64 && ops::kaplansky_supported(&ring) {
                // stalled alternation: force the pivot down to the full
                // gcd of a 2x2 block with one kaplansky column step
                kaplansky_pivot_fix(&mut t, &mut p, &mut q, k)?;
            }
            match find_pivot(&t, k)? {
                None => break,
                Some((pi, pj)) => {
                    t.swap_rows(k, pi);
                    p.swap_rows(k, pi);
                    t.swap_cols(k, pj);
                    q.swap_cols(k, pj);
                }
            }
            let mut dirty = false;
            for i in (k + 1)..t.rows {
                if !t.get(i, k).is_zero_to_precision() {
                    let cert = gcd::gcd_certified(&t.get(k, k).clone(), &t.get(i, k).clone())?;
                    apply_row_certificate(&mut t, &mut p, k, i, &cert)?;
                    dirty = true;
                }
            }
            for j in (k + 1)..t.cols {
                if !t.get(k, j).is_zero_to_precision() {
                    let cert = gcd::gcd_certified(&t.get(k, k).clone(), &t.get(k, j).clone())?;
                    apply_column_certificate(&mut t, &mut q, k, j, &cert)?;
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            let row_clean = ((k + 1)..t.rows).all(|i| t.get(i, k).is_zero_to_precision());
            let col_clean = ((k + 1)..t.cols).all(|j| t.get(k, j).is_zero_to_precision());
            if row_clean && col_clean {
                break;
            }
        }
    }

    if normalize_chain {
        enforce_divisibility_chain(&mut t, &mut p, &mut q)?;
    }
    // associate normalization of the diagonal (sign / monic / unit part)
    for k in 0..n {
        let d = t.get(k, k).clone();
        if d.is_zero() {
            continue;
        }
        let (canonical, unit) = ops::unit_normalize(&d)?;
        if arith::values_equal(&d, &canonical)? == EqOutcome::Distinct {
            let u_inv = ops::unit_inverse(&unit)?.ok_or(RingError::NotAUnit)?;
            t.scale_row(k, &u_inv)?;
            p.scale_row(k, &u_inv)?;
        }
    }

    Ok(SnfResult {
        p,
        q,
        d: t,
        report: VerificationReport::default(),
    })
}

/// Does the ring have a diagonalization route?
pub fn snf_supported(ring: &Arc<RingDescriptor>) -> bool {
    match &ring.kind {
        RingKind::Integers | RingKind::Rationals | RingKind::PolynomialOverRationals => true,
        RingKind::Product { left, right } => snf_supported(left) && snf_supported(right),
        RingKind::Overring { base, .. } => snf_supported(base),
        RingKind::DPlusM { base, .. } => matches!(base.kind, RingKind::Rationals),
        RingKind::Amalgamation { .. } | RingKind::Duplication { .. } => {
            let view = ring.pair_view().expect("pair ring");
            let glue = view.glue.expect("amalgam glue");
            if ideal::ideal_is_whole_like(&glue.ideal, &view.right).unwrap_or(false) {
                return snf_supported(&view.left) && snf_supported(&view.right);
            }
            if amalgam::iso_available(ring) {
                if let Some(img) = amalgam::image_ring(ring) {
                    return snf_supported(&img);
                }
            }
            false
        }
        RingKind::TruncatedSeries { .. } => false,
    }
}

/// One kaplansky-driven column step on the 2x2 block `[[a, 0], [b, c]]`
/// at rows/cols (k, i): afterwards the pivot column's gcd equals the gcd
/// of the whole block, so the next certified row step settles the pivot.
fn kaplansky_pivot_fix(t: &mut Matrix, _p: &mut Matrix, q: &mut Matrix, k: usize) -> Result<()> {
    let i = match ((k + 1)..t.rows).find(|&i| !t.get(i, k).is_zero_to_precision()) {
        Some(i) => i,
        None => return Ok(()),
    };
    if ((k + 1)..t.cols).any(|j| !t.get(k, j).is_zero_to_precision()) {
        return Ok(()); // row k not clean yet; let the certificate loop run
    }
    let a = t.get(k, k).clone();
    let b = t.get(i, k).clone();
    let c = t.get(i, i).clone();
    let g_ab = gcd::gcd_certified(&a, &b)?.d;
    let g_all = gcd::gcd_certified(&g_ab, &c)?.d;
    if g_all.is_zero() {
        return Ok(());
    }
    let a0 = ops::divide_exact(&a, &g_all)?.ok_or(RingError::NotAUnit)?;
    let b0 = ops::divide_exact(&b, &g_all)?.ok_or(RingError::NotAUnit)?;
    let c0 = ops::divide_exact(&c, &g_all)?.ok_or(RingError::NotAUnit)?;
    let (p_coef, q_coef) = match ops::kaplansky_solve(&a0, &b0, &c0)? {
        Some(pair) => pair,
        None => return Ok(()),
    };
    // complete (p, q) to a unimodular column transform via their own
    // certificate: det [[p, -beta], [q, alpha]] = alpha*p + beta*q, a unit
    let pq = gcd::gcd_certified(&p_coef, &q_coef)?;
    if !ops::is_unit(&pq.d)? {
        return Ok(());
    }
    let neg_beta = arith::neg(&pq.beta);
    t.col_op(k, i, &p_coef, &q_coef, &neg_beta, &pq.alpha)?;
    q.col_op(k, i, &p_coef, &q_coef, &neg_beta, &pq.alpha)?;
    Ok(())
}

/// Smallest nonzero entry of the trailing submatrix by the ring-specific
/// measure, first occurrence wins.
fn find_pivot(t: &Matrix, k: usize) -> Result<Option<(usize, usize)>> {
    // nothing to do when the pivot is already the only nonzero entry
    let pivot_nonzero = !t.get(k, k).is_zero_to_precision();
    let mut best: Option<(u64, usize, usize)> = None;
    for i in k..t.rows {
        for j in k..t.cols {
            let v = t.get(i, j);
            if v.is_zero_to_precision() {
                continue;
            }
            let measure = pivot_measure(v)?;
            if best.is_none_or(|(bm, _, _)| measure < bm) {
                best = Some((measure, i, j));
            }
        }
    }
    match best {
        None => Ok(None),
        Some((_, i, j)) => {
            if (i, j) == (k, k) && pivot_nonzero {
                // already in place; report it only if work remains
                let needs_work = ((k + 1)..t.rows).any(|r| !t.get(r, k).is_zero_to_precision())
                    || ((k + 1)..t.cols).any(|c| !t.get(k, c).is_zero_to_precision());
                if needs_work {
                    Ok(Some((i, j)))
                } else {
                    Ok(None)
                }
            } else {
                Ok(Some((i, j)))
            }
        }
    }
}

fn pivot_measure(v: &RingValue) -> Result<u64> {
    Ok(match v.payload() {
        Payload::Int(n) => n.magnitude().bits(),
        Payload::Rat(_) => 1,
        Payload::Poly(p) => p.degree().unwrap_or(0) as u64,
        Payload::Series(s) => match s.valuation() {
            crate::series::Valuation::Exact(v0) => {
                let lead_height = s
                    .leading_coefficient()
                    .map(|c| c.numer().magnitude().bits() + c.denom().magnitude().bits())
                    .unwrap_or(0);
                (v0 as u64) * 1024 + lead_height
            }
            _ => u64::MAX,
        },
        Payload::Fraction(f) => match f.num.as_ref() {
            Payload::Int(n) => n.magnitude().bits(),
            Payload::Poly(p) => p.degree().unwrap_or(0) as u64,
            _ => 8,
        },
        Payload::Pair(_, _) => 4,
    })
}

/// Pairwise gcd/lcm fix: after diagonalization, force d_i | d_j for i < j.
fn enforce_divisibility_chain(t: &mut Matrix, p: &mut Matrix, q: &mut Matrix) -> Result<()> {
    let n = t.rows.min(t.cols);
    let mut guard = 0;
    loop {
        guard += 1;
        if guard > 128 {
            return Err(RingError::PrecisionExhausted {
                context: "divisibility chain did not stabilize".into(),
            });
        }
        let mut fixed_any = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let x = t.get(i, i).clone();
                let y = t.get(j, j).clone();
                if y.is_zero() {
                    continue;
                }
                if x.is_zero() {
                    // zeros must trail: swap
                    t.swap_rows(i, j);
                    p.swap_rows(i, j);
                    t.swap_cols(i, j);
                    q.swap_cols(i, j);
                    fixed_any = true;
                    continue;
                }
                if ops::divides(&x, &y)? {
                    continue;
                }
                // row_i += row_j brings y into row i, then one certified
                // column step plus one row clearing restores diagonality
                // with the pair replaced by (gcd, ~lcm)
                let one = RingValue::one(&t.ring);
                let zero = RingValue::zero(&t.ring);
                t.row_op(i, j, &one, &one, &zero, &one)?;
                p.row_op(i, j, &one, &one, &zero, &one)?;
                let cert = gcd::gcd_certified(&t.get(i, i).clone(), &t.get(i, j).clone())?;
                apply_column_certificate(t, q, i, j, &cert)?;
                // clear the (j, i) entry: row_j -= (beta*y/g) * row_i
                let leftover = t.get(j, i).clone();
                if !leftover.is_zero() {
                    let g = t.get(i, i).clone();
                    let factor = ops::divide_exact(&leftover, &g)?
                        .ok_or_else(|| RingError::PrecisionExhausted {
                            context: "chain fix quotient".into(),
                        })?;
                    let neg = arith::neg(&factor);
                    // rows (j, i) <- (r_j - factor*r_i, r_i)
                    t.row_op(j, i, &one, &neg, &zero, &one)?;
                    p.row_op(j, i, &one, &neg, &zero, &one)?;
                }
                fixed_any = true;
            }
        }
        if !fixed_any {
            return Ok(());
        }
    }
}

/// Componentwise route for products (and amalgamations along the whole
/// ring): split, diagonalize the factors, recombine the transforms as
/// pairs.
fn snf_componentwise(m: &Matrix) -> Result<SnfResult> {
    let ring = m.ring.clone();
    let view = ring.pair_view().expect("pair ring");
    let mut left_entries = Vec::with_capacity(m.entries.len());
    let mut right_entries = Vec::with_capacity(m.entries.len());
    for e in &m.entries {
        let (l, r) = arith::split_pair(e)?;
        left_entries.push(l);
        right_entries.push(r);
    }
    let ml = Matrix::new(view.left.clone(), m.rows, m.cols, left_entries)?;
    let mr = Matrix::new(view.right.clone(), m.rows, m.cols, right_entries)?;
    let rl = snf(&ml)?;
    let rr = snf(&mr)?;
    let join = |a: &Matrix, b: &Matrix| -> Result<Matrix> {
        let mut entries = Vec::with_capacity(a.entries.len());
        for (x, y) in a.entries.iter().zip(b.entries.iter()) {
            entries.push(arith::join_pair(&ring, x.clone(), y.clone())?);
        }
        Matrix::new(ring.clone(), a.rows, a.cols, entries)
    };
    Ok(SnfResult {
        p: join(&rl.p, &rr.p)?,
        q: join(&rl.q, &rr.q)?,
        d: join(&rl.d, &rr.d)?,
        report: VerificationReport::default(),
    })
}

/// Transport along the projection isomorphism: diagonalize the image
/// matrix over `f(A)+J` and pull the transforms back.
fn snf_by_transport(m: &Matrix) -> Result<SnfResult> {
    let ring = m.ring.clone();
    let target = amalgam::image_ring(&ring)
        .ok_or_else(|| RingError::capability(ring.to_string(), "snf"))?;
    let image = m.map_entries(target, amalgam::iso_to_target)?;
    let res = snf(&image)?;
    let back = |mat: &Matrix| mat.map_entries(ring.clone(), |e| amalgam::iso_from_target(&ring, e));
    Ok(SnfResult {
        p: back(&res.p)?,
        q: back(&res.q)?,
        d: back(&res.d)?,
        report: VerificationReport::default(),
    })
}

/// Overring route: write `M = (1/d) M0` over the base by clearing the
/// declared denominators, diagonalize `M0`, and divide the diagonal by
/// `d`. The transforms `P`, `Q` stay base-valued.
pub fn snf_overring(m: &Matrix) -> Result<SnfResult> {
    let ring = m.ring.clone();
    if m.rows > SIZE_CAP || m.cols > SIZE_CAP {
        return Err(RingError::SizeCap(SIZE_CAP));
    }
    let parts = overring::parts(&ring)?;
    let fractions: Vec<&FractionValue> = m
        .entries
        .iter()
        .map(|e| e.payload().as_fraction())
        .collect::<Result<_>>()?;
    let (nums, den) = overring::to_common_denominator(&ring, &fractions)?;
    let base_ring = parts.base.clone();
    let m0 = Matrix::new(
        base_ring.clone(),
        m.rows,
        m.cols,
        nums.into_iter()
            .map(|p| RingValue::raw(base_ring.clone(), p))
            .collect(),
    )?;
    let base = snf(&m0)?;
    let embed = |mat: &Matrix| {
        mat.map_entries(ring.clone(), |e| {
            Ok(RingValue::raw(
                ring.clone(),
                Payload::Fraction(FractionValue {
                    num: Box::new(e.payload().clone()),
                    den: vec![0; parts.generators.len()],
                }),
            ))
        })
    };
    // D = diag(lambda_i / d)
    let d = base.d.map_entries(ring.clone(), |e| {
        Ok(RingValue::raw(
            ring.clone(),
            Payload::Fraction(overring::reduce(
                &ring,
                FractionValue {
                    num: Box::new(e.payload().clone()),
                    den: den.clone(),
                },
            )?),
        ))
    })?;
    let mut result = SnfResult {
        p: embed(&base.p)?,
        q: embed(&base.q)?,
        d,
        report: VerificationReport::default(),
    };
    result.report = verify_snf(m, &result);
    Ok(result)
}

/// Independent re-check of a diagonalization: `P*M*Q = D`, unit
/// determinants, diagonality, and the divisibility chain (required over
/// the integers, informational elsewhere). Never trusts the producer.
pub fn verify_snf(m: &Matrix, r: &SnfResult) -> VerificationReport {
    let mut report = VerificationReport::default();

    let shapes_ok = r.p.rows == m.rows
        && r.p.cols == m.rows
        && r.q.rows == m.cols
        && r.q.cols == m.cols
        && r.d.rows == m.rows
        && r.d.cols == m.cols;
    report.push(Check::bool(
        "shapes: P is rows^2, Q is cols^2, D matches M",
        shapes_ok,
        None,
    ));
    if !shapes_ok {
        return report;
    }

    match r.p.mul(m).and_then(|pm| pm.mul(&r.q)) {
        Ok(pmq) => {
            let mut outcome = EqOutcome::Exact;
            for (x, y) in pmq.entries.iter().zip(r.d.entries.iter()) {
                match arith::values_equal(x, y) {
                    Ok(o) => outcome = outcome.combine(o),
                    Err(e) => {
                        outcome = EqOutcome::Distinct;
                        report.push(Check::failed("P*M*Q = D", &e));
                        break;
                    }
                }
            }
            report.push(Check::from_eq("P*M*Q = D", outcome));
        }
        Err(e) => report.push(Check::failed("P*M*Q = D", &e)),
    }

    for (name, mat) in [("det(P) is a unit", &r.p), ("det(Q) is a unit", &r.q)] {
        match mat_det(mat).and_then(|det| ops::is_unit(&det)) {
            Ok(true) => report.push(Check::bool(name, true, None)),
            Ok(false) => report.push(Check::bool(name, false, Some("determinant is not a unit".into()))),
            Err(e) => report.push(Check::failed(name, &e)),
        }
    }

    report.push(Check::bool(
        "D is diagonal",
        r.d.is_diagonal_to_precision(),
        None,
    ));

    let diag = r.d.diagonal();
    let chain = diagonal_chain_holds(&diag);
    match (&m.ring.kind, chain) {
        (RingKind::Integers, Ok(ok)) => {
            let nonneg = diag.iter().all(|v| match v.payload() {
                Payload::Int(n) => !num_traits::Signed::is_negative(n),
                _ => false,
            });
            report.push(Check::bool(
                "divisibility chain with nonnegative diagonal",
                ok && nonneg,
                None,
            ));
        }
        (_, Ok(ok)) => {
            report.push(Check::bool(
                "divisibility chain (informational)",
                true,
                Some(if ok { "chain holds".into() } else { "chain not established".into() }),
            ));
        }
        (_, Err(e)) => {
            report.push(Check::bool(
                "divisibility chain (informational)",
                true,
                Some(format!("chain not decidable: {e}")),
            ));
        }
    }

    report
}

fn diagonal_chain_holds(diag: &[RingValue]) -> Result<bool> {
    for w in diag.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if a.is_zero() {
            if !b.is_zero() {
                return Ok(false);
            }
            continue;
        }
        if !ops::divides(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Re-check of a Hermite triangularization: `M*Q = T`, `T` lower
/// triangular, `det(Q)` a unit.
pub fn verify_hermite(m: &Matrix, t: &Matrix, q: &Matrix) -> VerificationReport {
    let mut report = VerificationReport::default();
    let shapes_ok = q.rows == m.cols && q.cols == m.cols && t.rows == m.rows && t.cols == m.cols;
    report.push(Check::bool("shapes: Q is cols^2, T matches M", shapes_ok, None));
    if !shapes_ok {
        return report;
    }
    match m.mul(q) {
        Ok(mq) => {
            let mut outcome = EqOutcome::Exact;
            for (x, y) in mq.entries.iter().zip(t.entries.iter()) {
                match arith::values_equal(x, y) {
                    Ok(o) => outcome = outcome.combine(o),
                    Err(e) => {
                        outcome = EqOutcome::Distinct;
                        report.push(Check::failed("M*Q = T", &e));
                        break;
                    }
                }
            }
            report.push(Check::from_eq("M*Q = T", outcome));
        }
        Err(e) => report.push(Check::failed("M*Q = T", &e)),
    }
    report.push(Check::bool(
        "T is lower triangular",
        t.is_lower_triangular_to_precision(),
        None,
    ));
    match mat_det(q).and_then(|det| ops::is_unit(&det)) {
        Ok(ok) => report.push(Check::bool(
            "det(Q) is a unit",
            ok,
            (!ok).then(|| "determinant is not a unit".into()),
        )),
        Err(e) => report.push(Check::failed("det(Q) is a unit", &e)),
    }
    report
}
