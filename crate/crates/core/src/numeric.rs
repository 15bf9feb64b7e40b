//! Floating-point helpers shared by the series evaluators.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// A truncated series value with the number of terms summed, a rigorous
/// bound on the discarded tail and a first-order estimate of the
/// floating-point error in the terms that were kept.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncated<T> {
    pub value: T,
    pub terms: usize,
    pub tail_bound: f64,
    pub rounding_bound: f64,
}

impl<T> Truncated<T> {
    /// Tail plus rounding: how far `value` may sit from the true sum.
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// `γ_k = k u / (1 - k u)` with unit roundoff `u`: the relative error bound
/// for a result of `k` correctly rounded operations.
pub fn gamma(k: f64) -> f64 {
    let ku = k * f64::EPSILON / 2.0;
    ku / (1.0 - ku)
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Like [`gamma`] for double-double arithmetic, taking its unit roundoff
/// conservatively as `2^-100`.
pub fn gamma_dd(k: f64) -> f64 {
    k * 2f64.powi(-100)
}

/// Compensated summation applied to real and imaginary parts separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// `[x]_q = (1 - q^x) / (1 - q)` for real `x`.
pub fn qnum(x: f64, q: f64) -> f64 {
    (1.0 - qpow(q, x)) / (1.0 - q)
}

/// `q^x`, through `powi` when `x` is an integer.
pub fn qpow(q: f64, x: f64) -> f64 {
    if x.fract() == 0.0 && x.abs() < f64::from(i32::MAX) {
        q.powi(x as i32)
    } else {
        (x * q.ln()).exp()
    }
}

/// Gaussian binomial `C_q(m + r - 1, m) = Π_{i=1}^{r-1} (1 - q^(m+i)) / (1 - q^i)`;
/// for `r = 0` it is 1 at `m = 0` and 0 otherwise.
pub fn qbinom_multiset(m: usize, r: u32, q: f64) -> f64 {
    if r == 0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    (1..r)
        .map(|i| (1.0 - q.powi((m as u32 + i) as i32)) / (1.0 - q.powi(i as i32)))
        .product()
}

/// Uniform bound `Π_{i=1}^{r-1} 1 / (1 - q^i)` on `C_q(m + r - 1, m)`.
pub fn qbinom_multiset_bound(r: u32, q: f64) -> f64 {
    (1..r).map(|i| 1.0 / (1.0 - q.powi(i as i32))).product()
}

/// Conservative bound on `|w^{-s}|` over `w ∈ [lo, hi]`, `w > 0`.
pub fn power_bound(s: Complex64, lo: f64, hi: f64) -> f64 {
    let base = if s.re >= 0.0 { lo } else { hi };
    base.powf(-s.re) * (s.im.abs() * PI).exp()
}

/// Smallest `M` with `c ρ^(M+1) / (1 - ρ) < tol`, i.e. the last index to
/// include so the remaining geometric tail is below `tol`.
pub fn geometric_cutoff(c: f64, rho: f64, tol: f64) -> Result<usize> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::Domain(format!("ratio {rho} is not in [0, 1)")));
    }
    if c <= 0.0 || rho == 0.0 {
        return Ok(0);
    }
    let bound = |m: usize| c * rho.powi(m as i32 + 1) / (1.0 - rho);
    let guess = ((tol * (1.0 - rho) / c).ln() / rho.ln() - 1.0).ceil().max(0.0);
    if !guess.is_finite() || guess > 1e8 {
        return Err(Error::Domain(format!(
            "tolerance {tol} needs too many terms at ratio {rho}"
        )));
    }
    let mut m = guess as usize;
    while bound(m) >= tol {
        m += 1;
    }
    while m > 0 && bound(m - 1) < tol {
        m -= 1;
    }
    Ok(m)
}

/// Checks `0 < q < 1` and `tol > 0`.
pub fn check_q_tol(q: f64, tol: f64) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("q = {q} must lie in (0, 1)")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    Ok(())
}
