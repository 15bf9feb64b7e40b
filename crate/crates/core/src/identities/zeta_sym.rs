//! Numeric check of the zeta symmetry
//!
//! ```text
//! [2]_{q^b}^r [b]_q^s Σ_{j ∈ [0,a)^r} (-1)^{Σj} q^{bΣ(h-l+1)j_l} ζ_{q^a,r}^{(h)}(s, bx + bΣj/a)
//!   = (same with a and b exchanged)
//! ```

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::exact::{alternating_weights, thm22_side};
use super::{IdentityName, IdentityReport, ReportValue, Side, SymCheckParams};
use crate::error::{Error, Result};
use crate::numeric::check_q_tol;
use crate::qalg::{BigRat, LaurentPoly};
use crate::zeta::single_sum_with_qx;

/// `(w(q), Σ |c_k| q^k)` for a Laurent polynomial with integer coefficients.
fn eval_with_abs(w: &LaurentPoly, q: f64) -> (f64, f64) {
    let (mut value, mut abs) = (0.0, 0.0);
    for (k, c) in w.coeffs().iter().enumerate() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        let p = q.powi((w.low() + k as i64) as i32);
        value += c * p;
        abs += c.abs() * p;
    }
    (value, abs)
}

fn check_domain(p: &SymCheckParams, q: f64, tol: f64) -> Result<()> {
    p.validate()?;
    check_q_tol(q, tol)?;
    if p.h < i64::from(p.r) {
        return Err(Error::ConvergenceDomain { h: p.h, r: p.r });
    }
    if p.x == 0 {
        return Err(Error::Domain("x must be at least 1 for zeta arguments".into()));
    }
    Ok(())
}

/// One side of the zeta symmetry, accurate to `tol` (the inner series
/// tolerances are scaled by the prefactor and the weight sum).
pub fn thm21_side(side: Side, s: Complex64, p: &SymCheckParams, q: f64, tol: f64) -> Result<Complex64> {
    check_domain(p, q, tol)?;
    let (a, b) = match side {
        Side::Left => (p.a, p.b),
        Side::Right => (p.b, p.a),
    };
    let (h, r) = (p.h, p.r);
    let qb = q.powi(b as i32);
    let bracket_b = (1.0 - qb) / (1.0 - q);
    let prefactor = (1.0 + qb).powi(r as i32) * (s * bracket_b.ln()).exp();
    let weights: Vec<(usize, f64, f64)> = alternating_weights(a, r, h, i64::from(b))
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(sigma, w)| {
            let (v, abs) = eval_with_abs(w, q);
            (sigma, v, abs)
        })
        .collect();
    let abs_total: f64 = weights.iter().map(|w| w.2).sum();
    let inner_tol = tol / (prefactor.norm() * abs_total).max(1.0);
    let base = q.powi(a as i32);
    let mut total = Complex64::new(0.0, 0.0);
    for (sigma, w, _) in weights {
        let exp = i64::from(a) * i64::from(b) * i64::from(p.x) + i64::from(b) * sigma as i64;
        let qx = q.powi(exp as i32);
        total += single_sum_with_qx(s, qx, h, r, base, inner_tol)?.value * w;
    }
    Ok(total * prefactor)
}

/// Compares both sides of the zeta symmetry at `s`; passes when they
/// differ by at most `tol`. `p.n` is not used.
pub fn thm21_check(s: Complex64, p: &SymCheckParams, q: f64, tol: f64) -> Result<IdentityReport> {
    let lhs = thm21_side(Side::Left, s, p, q, tol / 4.0)?;
    let rhs = thm21_side(Side::Right, s, p, q, tol / 4.0)?;
    let deviation = (lhs - rhs).norm();
    Ok(IdentityReport {
        identity: IdentityName::ZetaSymmetry,
        params: record(p, s, q, tol),
        lhs: Some(ReportValue::Numeric(lhs)),
        rhs: Some(ReportValue::Numeric(rhs)),
        equal: deviation <= tol,
        deviation,
        error: None,
    })
}

/// At `s = -n` each side of the zeta symmetry equals the corresponding
/// exact Euler symmetry side divided by `[a]_q^n [b]_q^n`. Evaluates the
/// exact side at the rational value of `q` and reports the larger of the
/// two side deviations.
pub fn thm21_exact_check(p: &SymCheckParams, q: f64, tol: f64) -> Result<IdentityReport> {
    let s = Complex64::new(-f64::from(p.n), 0.0);
    let lhs = thm21_side(Side::Left, s, p, q, tol / 2.0)?;
    let rhs = thm21_side(Side::Right, s, p, q, tol / 2.0)?;
    let q_exact = BigRat::from_float(q).ok_or_else(|| Error::Domain(format!("q = {q}")))?;
    let bracket = |k: u32| -> BigRat {
        (0..k).map(|t| num_traits::pow(q_exact.clone(), t as usize)).sum()
    };
    let norm = num_traits::pow(bracket(p.a) * bracket(p.b), p.n as usize);
    let exact_left = thm22_side(Side::Left, p)?.eval(&q_exact)? / &norm;
    let exact_right = thm22_side(Side::Right, p)?.eval(&q_exact)? / norm;
    let exact = exact_left.to_f64().unwrap_or(f64::NAN);
    let deviation = (lhs.re - exact)
        .abs()
        .max((rhs.re - exact_right.to_f64().unwrap_or(f64::NAN)).abs())
        .max(lhs.im.abs())
        .max(rhs.im.abs());
    Ok(IdentityReport {
        identity: IdentityName::ZetaSymmetry,
        params: record(p, s, q, tol).with("exact", true),
        lhs: Some(ReportValue::Numeric(lhs)),
        rhs: Some(ReportValue::Numeric(Complex64::new(exact, 0.0))),
        equal: deviation <= tol,
        deviation,
        error: None,
    })
}

fn record(p: &SymCheckParams, s: Complex64, q: f64, tol: f64) -> super::ParamRecord {
    super::ParamRecord::new()
        .with("a", p.a)
        .with("b", p.b)
        .with("h", p.h)
        .with("r", p.r)
        .with("x", p.x)
        .with("s", s)
        .with("q", q)
        .with("tol", tol)
}
