//! Numeric multiple q-Euler zeta function
//!
//! ```text
//! ζ_{q,r}^{(h)}(s,x) = [2]_q^r Σ_{m_1..m_r} (-1)^{Σm_j} q^{Σ(h-j+1)m_j} / [m_1+..+m_r+x]_q^s
//!                    = [2]_q^r Σ_m C_q(m+r-1, m) (-q^{h-r+1})^m / [m+x]_q^s
//! ```
//!
//! Both series converge geometrically only for `h >= r`, which is enforced.
//! Powers `[m+x]_q^{-s}` use the principal branch on the positive real base.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::euler::{
    euler_exact, for_each_multi_index, multi_index_ops, multisum_tail, term_ops, x_ops, EulerParams,
};
use crate::identities::{IdentityName, IdentityReport, ParamRecord, ReportValue};
use crate::numeric::{
    check_q_tol, gamma, geometric_cutoff, power_bound, qbinom_multiset, qbinom_multiset_bound, qpow,
    CompensatedComplexSum, Truncated,
};
use crate::qalg::BigRat;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaQuery {
    pub s: Complex64,
    pub x: f64,
    pub h: i64,
    pub r: u32,
    pub q: f64,
    pub tol: f64,
}

impl ZetaQuery {
    pub fn validate(&self) -> Result<()> {
        check_q_tol(self.q, self.tol)?;
        if !(self.x > 0.0) {
            return Err(Error::Domain(format!("x = {} must be positive", self.x)));
        }
        if self.h < i64::from(self.r) {
            return Err(Error::ConvergenceDomain { h: self.h, r: self.r });
        }
        Ok(())
    }
}

/// `w^{-s}` for real `w > 0`.
fn inv_power(w: f64, s: Complex64) -> Complex64 {
    (-s * w.ln()).exp()
}

/// Single-sum evaluation in base `q` where the caller supplies `q^x`
/// directly, so shifted arguments like `bx + bσ/a` in base `q^a` can pass
/// an exact integer power of the underlying `q`.
pub(crate) fn single_sum_with_qx(
    s: Complex64,
    qx: f64,
    h: i64,
    r: u32,
    q: f64,
    tol: f64,
) -> Result<Truncated<Complex64>> {
    if h < i64::from(r) {
        return Err(Error::ConvergenceDomain { h, r });
    }
    let rho = q.powi((h - i64::from(r) + 1) as i32);
    let two_r = (1.0 + q).powi(r as i32);
    let bracket_x = (1.0 - qx) / (1.0 - q);
    let c = two_r
        * qbinom_multiset_bound(r, q)
        * power_bound(s, bracket_x, 1.0 / (1.0 - q));
    // With r = 0 the multi-index is empty and only m = 0 contributes.
    let last = if r == 0 { 0 } else { geometric_cutoff(c, rho, tol)? };
    let e = (h - i64::from(r) + 1) as i32;
    let power_ops = inv_power_ops(s, bracket_x, 1.0 / (1.0 - q));
    let mut acc = CompensatedComplexSum::default();
    let mut rounding = 0.0;
    for m in 0..=last {
        let bracket = (1.0 - q.powi(m as i32) * qx) / (1.0 - q);
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let weight = sign * qbinom_multiset(m, r, q) * q.powi(e * m as i32);
        let term = inv_power(bracket, s) * weight;
        rounding += gamma(term_ops(m, e, r) + power_ops) * term.norm();
        acc.add(term);
    }
    Ok(Truncated {
        value: acc.value() * two_r,
        terms: last + 1,
        tail_bound: if r == 0 { 0.0 } else { c * rho.powi(last as i32 + 1) / (1.0 - rho) },
        rounding_bound: two_r * (rounding + gamma(4.0) * acc.value().norm()),
    })
}

/// Roundings in `w^{-s} = exp(-s ln w)` for `w` in `[lo, hi]`: the error
/// of `ln w` is amplified by `|s|` before `exp` turns it into a relative one.
fn inv_power_ops(s: Complex64, lo: f64, hi: f64) -> f64 {
    let log_max = lo.ln().abs().max(hi.ln().abs());
    2.0 * s.norm() * (log_max + 4.0) + 8.0
}

/// Single-sum series truncated so its tail bound is below `z.tol`.
pub fn zeta_single_sum(z: &ZetaQuery) -> Result<Truncated<Complex64>> {
    z.validate()?;
    single_sum_with_qx(z.s, qpow(z.q, z.x), z.h, z.r, z.q, z.tol)
}

/// Direct r-fold sum over the cube `[0, per_index)^r` (`r <= 4`); the
/// reported tail bound covers everything outside the cube.
pub fn zeta_multi_sum(z: &ZetaQuery, per_index: usize) -> Result<Truncated<Complex64>> {
    z.validate()?;
    if z.r > 4 {
        return Err(Error::Domain(format!("r = {} exceeds the r-fold limit of 4", z.r)));
    }
    let q = z.q;
    let two_r = (1.0 + q).powi(z.r as i32);
    let qx = qpow(q, z.x);
    let span = z.r as usize * per_index.saturating_sub(1) + 1;
    let powers: Vec<Complex64> = (0..span)
        .map(|k| inv_power((1.0 - q.powi(k as i32) * qx) / (1.0 - q), z.s))
        .collect();
    let mut acc = CompensatedComplexSum::default();
    let mut abs_sum = 0.0;
    for_each_multi_index(z.h, z.r, q, per_index, |total, weight| {
        let sign = if total % 2 == 0 { 1.0 } else { -1.0 };
        let term = powers[total] * (sign * weight);
        abs_sum += term.norm();
        acc.add(term);
    });
    let lo = (1.0 - qx) / (1.0 - q);
    let bound = two_r * power_bound(z.s, lo, 1.0 / (1.0 - q));
    let ops = multi_index_ops(z.h, z.r, per_index) + inv_power_ops(z.s, lo, 1.0 / (1.0 - q)) + x_ops(z.x, q);
    Ok(Truncated {
        value: acc.value() * two_r,
        terms: per_index.pow(z.r),
        tail_bound: multisum_tail(bound, z.h, z.r, q, per_index),
        rounding_bound: two_r * (gamma(ops) * abs_sum + gamma(4.0) * acc.value().norm()),
    })
}

/// Compares `ζ_{q,r}^{(h)}(-n, x)` from the series with the exact
/// `E_{n,q}^{(h,r)}(x)` evaluated at the (exactly represented) `q`.
/// Passes when the difference is at most `2 tol`.
pub fn lemma_1_1_check(n: u32, x: i64, h: i64, r: u32, q: f64, tol: f64) -> Result<IdentityReport> {
    let z = ZetaQuery {
        s: Complex64::new(-f64::from(n), 0.0),
        x: x as f64,
        h,
        r,
        q,
        tol,
    };
    let series = zeta_single_sum(&z)?;
    let q_exact = BigRat::from_float(q).ok_or_else(|| Error::Domain(format!("q = {q}")))?;
    let exact = euler_exact(&EulerParams::integer(n, h, r, x))
        .eval(&q_exact)?
        .to_f64()
        .unwrap_or(f64::NAN);
    let deviation = (series.value - Complex64::new(exact, 0.0)).norm();
    Ok(IdentityReport {
        identity: IdentityName::Interpolation,
        params: ParamRecord::new()
            .with("n", n)
            .with("x", x)
            .with("h", h)
            .with("r", r)
            .with("q", q)
            .with("tol", tol),
        lhs: Some(ReportValue::Numeric(series.value)),
        rhs: Some(ReportValue::Numeric(Complex64::new(exact, 0.0))),
        equal: deviation <= 2.0 * tol,
        deviation,
        error: None,
    })
}
