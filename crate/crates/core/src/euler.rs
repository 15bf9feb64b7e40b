//! The (h,q)-extension of higher-order Euler polynomials.
//!
//! `E_{n,q}^{(h,r)}(x)` is the coefficient of `t^n/n!` in
//!
//! ```text
//! [2]_q^r Σ_{m_1..m_r >= 0} q^{Σ_j (h-j+1) m_j} (-1)^{Σ m_j} exp([m_1+..+m_r+x]_q t)
//! ```
//!
//! Collapsing the multi-index with the q-binomial theorem gives the finite
//! closed form
//!
//! ```text
//! E = [2]_q^r / (1-q)^n Σ_{l=0}^{n} C(n,l) (-q^x)^l / (-q^{h-r+l+1}; q)_r
//! ```
//!
//! which is exact in Q(q) for every integer `h`. [`euler_exact`] evaluates
//! it with base `q^c` at `x = N/c`; the single and r-fold series are
//! floating-point oracles, valid only when `h >= r`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::numeric::{
    check_q_tol, gamma, gamma_dd, geometric_cutoff, qbinom_multiset_bound, qnum,
    CompensatedSum, Truncated,
};
use crate::qalg::{binomial, qbracket, BigRat, LaurentPoly, QRatFunc};

/// One evaluation request `E_{n, q^c}^{(h,r)}(N/c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerParams {
    pub n: u32,
    pub h: i64,
    pub r: u32,
    /// Argument numerator `N`; the argument is `N / c`.
    pub arg: i64,
    /// Base exponent: the polynomial is taken in base `q^c`.
    pub c: u32,
}

impl EulerParams {
    pub fn new(n: u32, h: i64, r: u32, arg: i64, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::Domain("base exponent c must be at least 1".into()));
        }
        Ok(Self { n, h, r, arg, c })
    }

    /// `E_{n,q}^{(h,r)}(x)` at an integer argument in base `q`.
    pub fn integer(n: u32, h: i64, r: u32, x: i64) -> Self {
        Self { n, h, r, arg: x, c: 1 }
    }
}

/// Exact closed form of `E_{n, q^c}^{(h,r)}(N/c)` as a canonical rational function.
///
/// Every Pochhammer denominator `(-q^{c(h-r+l+1)}; q^c)_r` divides
/// `Π_{j=0}^{n+r-1} (1 + q^{c(h-r+1+j)})`, so the whole sum is assembled
/// over that common multiple and reduced once.
pub fn euler_exact(p: &EulerParams) -> QRatFunc {
    let EulerParams { n, h, r, arg, c } = *p;
    assert!(c >= 1, "base exponent must be positive");
    let c = i64::from(c);
    // (-1)^l C(n,l) q^{N l}
    let weight = |l: u32| {
        let b = binomial(n, l).to_integer();
        let b = if l % 2 == 1 { -b } else { b };
        LaurentPoly::monomial(b, arg * i64::from(l))
    };
    let one_minus_qc = LaurentPoly::one_plus(-1, c).pow(n);

    if r == 0 {
        let num = (0..=n).fold(LaurentPoly::zero(), |acc, l| acc.add(&weight(l)));
        return num.ratio(&one_minus_qc).expect("1 - q^c is non-zero");
    }

    let first = h - i64::from(r) + 1;
    let factors: Vec<LaurentPoly> = (0..i64::from(n + r))
        .map(|j| LaurentPoly::one_plus(1, c * (first + j)))
        .collect();
    let mut prefix = vec![LaurentPoly::one()];
    for f in &factors {
        prefix.push(prefix.last().unwrap().mul(f));
    }
    let mut suffix = vec![LaurentPoly::one()];
    for f in factors.iter().rev() {
        suffix.push(suffix.last().unwrap().mul(f));
    }
    suffix.reverse();

    // D / (-q^{c(first+l)}; q^c)_r keeps every factor outside [l, l + r)
    let num = (0..=n).fold(LaurentPoly::zero(), |acc, l| {
        let l_us = l as usize;
        let cofactor = prefix[l_us].mul(&suffix[l_us + r as usize]);
        acc.add(&weight(l).mul(&cofactor))
    });
    let two_r = LaurentPoly::one_plus(1, c).pow(r);
    let den = one_minus_qc.mul(&prefix[factors.len()]);
    num.mul(&two_r).ratio(&den).expect("denominator is a non-zero product")
}

fn check_series_domain(h: i64, r: u32, x: f64, q: f64, tol: f64) -> Result<()> {
    check_q_tol(q, tol)?;
    if h < i64::from(r) {
        return Err(Error::ConvergenceDomain { h, r });
    }
    if !(x >= 0.0) {
        return Err(Error::Domain(format!("x = {x} must be non-negative")));
    }
    Ok(())
}

/// Single-sum series for `E_{n,q}^{(h,r)}(x)` truncated so the geometric
/// tail bound is below `tol`. Requires `h >= r`.
pub fn euler_series_num(n: u32, h: i64, r: u32, x: f64, q: f64, tol: f64) -> Result<Truncated<f64>> {
    check_series_domain(h, r, x, q, tol)?;
    let rho = q.powi((h - i64::from(r) + 1) as i32);
    let two_r = (1.0 + q).powi(r as i32);
    // C_q(m+r-1, m) [m+x]_q^n <= Π 1/(1-q^i) (1-q)^-n
    let c = two_r * qbinom_multiset_bound(r, q) * (1.0 - q).powi(-(n as i32));
    // With r = 0 the multi-index is empty and only m = 0 contributes.
    let last = if r == 0 { 0 } else { geometric_cutoff(c, rho, tol)? };
    // The series alternates with terms far larger than its sum when q is
    // near 1, so the terms are formed and summed in double-double.
    let qd = TwoFloat::from(q);
    let one = TwoFloat::from(1.0);
    let qx = if x.fract() == 0.0 { powi_dd(qd, x as i32) } else { (qd.ln() * x).exp() };
    let e = (h - i64::from(r) + 1) as i32;
    let mut acc = TwoFloat::from(0.0);
    let mut rounding = 0.0;
    for m in 0..=last {
        let bracket = (one - powi_dd(qd, m as i32) * qx) / (one - qd);
        let binom = (1..r).fold(one, |p, i| {
            p * (one - qd.powi((m as u32 + i) as i32)) / (one - qd.powi(i as i32))
        });
        let mut term = binom * powi_dd(qd, e * m as i32) * powi_dd(bracket, n as i32);
        if m % 2 == 1 {
            term = -term;
        }
        let ops = term_ops(m, e, r) + 2.0 * f64::from(n) + x_ops(x, q);
        rounding += gamma_dd(ops) * f64::from(term).abs();
        acc += term;
    }
    let two_r = (one + qd).powi(r as i32);
    let value = f64::from(two_r * acc);
    Ok(Truncated {
        value,
        terms: last + 1,
        tail_bound: if r == 0 { 0.0 } else { c * rho.powi(last as i32 + 1) / (1.0 - rho) },
        rounding_bound: f64::from(two_r) * rounding + gamma(1.0) * value.abs(),
    })
}

/// `b^n` with `0^0 = 1`.
fn powi_dd(b: TwoFloat, n: i32) -> TwoFloat {
    if n == 0 {
        TwoFloat::from(1.0)
    } else {
        b.powi(n)
    }
}

/// Operation count behind one weight `sign C_q(m+r-1,m) q^{em}` of the single
/// sums, counting a `powi` by `k` as `2 log2 k` roundings.
pub(crate) fn term_ops(m: usize, e: i32, r: u32) -> f64 {
    let bits = |k: u64| f64::from(64 - k.leading_zeros());
    2.0 * bits((e as u64).saturating_mul(m as u64)) + 2.0 * bits(m as u64) + 4.0 * f64::from(r) + 8.0
}

/// Extra roundings in `q^x` for non-integer `x`, which goes through `exp` and `ln`.
pub(crate) fn x_ops(x: f64, q: f64) -> f64 {
    if x.fract() == 0.0 {
        0.0
    } else {
        2.0 * (x * q.ln()).abs() + 4.0
    }
}

/// Tail bound for the r-fold sum truncated to the cube `[0, M)^r`:
/// `bound * (Π 1/(1-ρ_j) - Π (1-ρ_j^M)/(1-ρ_j))` with `ρ_j = q^{h-j+1}`,
/// where `bound` caps the modulus of every untruncated term.
pub(crate) fn multisum_tail(bound: f64, h: i64, r: u32, q: f64, per_index: usize) -> f64 {
    let (mut full, mut kept) = (1.0, 1.0);
    for j in 1..=i64::from(r) {
        let rho = q.powi((h - j + 1) as i32);
        full /= 1.0 - rho;
        kept *= (1.0 - rho.powi(per_index as i32)) / (1.0 - rho);
    }
    bound * (full - kept).max(0.0)
}

/// Visits every index tuple in `[0, per_index)^r` in odometer order,
/// passing the index sum and `Π_j ρ_j^{m_j}` with `ρ_j = q^{h-j+1}`.
pub(crate) fn for_each_multi_index(
    h: i64,
    r: u32,
    q: f64,
    per_index: usize,
    mut visit: impl FnMut(usize, f64),
) {
    if r == 0 {
        visit(0, 1.0);
        return;
    }
    if per_index == 0 {
        return;
    }
    let powers: Vec<Vec<f64>> = (1..=i64::from(r))
        .map(|j| {
            let e = (h - j + 1) as i32;
            (0..per_index).map(|m| q.powi(e * m as i32)).collect()
        })
        .collect();
    let r = r as usize;
    let mut idx = vec![0usize; r];
    loop {
        let total: usize = idx.iter().sum();
        let weight: f64 = idx.iter().zip(&powers).map(|(&m, p)| p[m]).product();
        visit(total, weight);
        let mut k = r;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < per_index {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Direct r-fold truncated sum over `0 <= m_j < per_index`. Requires
/// `h >= r` and `r <= 4`.
pub fn euler_multisum_num(
    n: u32,
    h: i64,
    r: u32,
    x: f64,
    q: f64,
    per_index: usize,
) -> Result<Truncated<f64>> {
    check_series_domain(h, r, x, q, 1.0)?;
    if r > 4 {
        return Err(Error::Domain(format!("r = {r} exceeds the r-fold limit of 4")));
    }
    let two_r = (1.0 + q).powi(r as i32);
    let span = r as usize * per_index.saturating_sub(1) + 1;
    let powers: Vec<f64> = (0..span)
        .map(|k| qnum(k as f64 + x, q).powi(n as i32))
        .collect();
    let mut acc = CompensatedSum::default();
    let mut abs_sum = 0.0;
    for_each_multi_index(h, r, q, per_index, |total, weight| {
        let sign = if total % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * weight * powers[total];
        abs_sum += term.abs();
        acc.add(term);
    });
    let bound = two_r * (1.0 - q).powi(-(n as i32));
    let ops = multi_index_ops(h, r, per_index) + 2.0 * f64::from(n) + x_ops(x, q) + 8.0;
    Ok(Truncated {
        value: two_r * acc.value(),
        terms: per_index.pow(r),
        tail_bound: multisum_tail(bound, h, r, q, per_index),
        rounding_bound: two_r * (gamma(ops) * abs_sum + gamma(2.0) * acc.value().abs()),
    })
}

/// Operation count behind one r-fold weight `Π_j q^{(h-j+1) m_j}`.
pub(crate) fn multi_index_ops(h: i64, r: u32, per_index: usize) -> f64 {
    let bits = |k: u64| f64::from(64 - k.leading_zeros());
    f64::from(r) * (2.0 * bits((h.max(1) as u64).saturating_mul(per_index as u64)) + 1.0)
}

/// Classical higher-order Euler polynomial `E_n^{(r)}(x)`, the coefficient
/// of `t^n/n!` in `(2/(e^t+1))^r e^{xt}`.
///
/// Order-`r` Euler numbers come from `(e^t+1)^r F = 2^r`: with
/// `g_k = Σ_j C(r,j) j^k`, `2^r E_n = -Σ_{k=1}^{n} C(n,k) g_k E_{n-k}`.
pub fn classical_euler(n: u32, r: u32, x: &BigRat) -> BigRat {
    let g: Vec<BigInt> = (0..=n)
        .map(|k| {
            (0..=r)
                .map(|j| binomial(r, j).to_integer() * num_traits::pow(BigInt::from(j), k as usize))
                .sum()
        })
        .collect();
    let two_r = BigRat::from_integer(BigInt::one() << r);
    let mut numbers: Vec<BigRat> = vec![BigRat::one()];
    for m in 1..=n {
        let s: BigRat = (1..=m)
            .map(|k| binomial(m, k) * BigRat::from_integer(g[k as usize].clone()) * &numbers[(m - k) as usize])
            .sum();
        numbers.push(-s / &two_r);
    }
    (0..=n)
        .map(|k| binomial(n, k) * &numbers[k as usize] * num_traits::pow(x.clone(), (n - k) as usize))
        .fold(BigRat::zero(), |acc, t| acc + t)
}

/// `Σ_{i=0}^{n} C(n,i) q^{ix} E_{i,q}^{(h,r)}(y) [x]_q^{n-i}`, which equals
/// `E_{n,q}^{(h,r)}(x+y)` by the addition theorem.
pub fn addition_rhs(n: u32, h: i64, r: u32, x: i64, y: i64) -> QRatFunc {
    let bracket = qbracket(x, 1);
    (0..=n)
        .map(|i| {
            let e = euler_exact(&EulerParams::integer(i, h, r, y));
            let term = &(&e * &QRatFunc::q_pow(i64::from(i) * x)) * &bracket.pow(n - i);
            term.scale(&binomial(n, i))
        })
        .sum()
}

/// The mirrored form `Σ_{i=0}^{n} C(n,i) q^{(n-i)x} E_{n-i,q}^{(h,r)}(y) [x]_q^{i}`.
pub fn addition_rhs_mirrored(n: u32, h: i64, r: u32, x: i64, y: i64) -> QRatFunc {
    let bracket = qbracket(x, 1);
    (0..=n)
        .map(|i| {
            let e = euler_exact(&EulerParams::integer(n - i, h, r, y));
            let term = &(&e * &QRatFunc::q_pow(i64::from(n - i) * x)) * &bracket.pow(i);
            term.scale(&binomial(n, i))
        })
        .sum()
}

/// Umbral expansion `(q^x E + [x]_q)^n = Σ_l C(n,l) q^{lx} E_{l,q}^{(h,r)} [x]_q^{n-l}`.
pub fn umbral_expansion(n: u32, h: i64, r: u32, x: i64) -> QRatFunc {
    addition_rhs(n, h, r, x, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::qpoch_monomial;

    fn rat(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    /// The closed form term by term through generic rational-function arithmetic.
    fn euler_naive(p: &EulerParams) -> QRatFunc {
        let c = i64::from(p.c);
        let sum: QRatFunc = (0..=p.n)
            .map(|l| {
                let sign = if l % 2 == 1 { -1 } else { 1 };
                let top = QRatFunc::q_pow(p.arg * i64::from(l)).scale(&(binomial(p.n, l) * rat(sign, 1)));
                let poch = qpoch_monomial(-1, c * (p.h - i64::from(p.r) + i64::from(l) + 1), p.c, p.r);
                top.checked_div(&poch).unwrap()
            })
            .sum();
        let two = QRatFunc::from_laurent([(0, rat(1, 1)), (c, rat(1, 1))]).pow(p.r);
        let one_minus = QRatFunc::from_laurent([(0, rat(1, 1)), (c, rat(-1, 1))]).pow(p.n);
        (&two * &sum).checked_div(&one_minus).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert!(euler_exact(&EulerParams::integer(0, 5, 0, 0)).is_one());
        let three = qbracket(3, 1);
        assert_eq!(euler_exact(&EulerParams::integer(2, -4, 0, 3)), three.pow(2));
        assert!(euler_exact(&EulerParams::integer(0, 1, 1, 0)).is_one());
        let e = euler_exact(&EulerParams::integer(1, 1, 1, 0));
        assert_eq!(e.to_string(), "-1*q / 1 + q^2");
        assert_eq!(e.eval(&rat(1, 2)).unwrap(), rat(-2, 5));
    }

    #[test]
    fn closed_form_matches_naive_assembly() {
        for (n, h, r, arg, c) in [
            (3, 2, 2, 1, 1),
            (4, -1, 3, 2, 1),
            (2, 0, 2, 7, 3),
            (5, 1, 1, -2, 1),
            (3, -3, 2, 4, 5),
        ] {
            let p = EulerParams::new(n, h, r, arg, c).unwrap();
            assert_eq!(euler_exact(&p), euler_naive(&p), "{p:?}");
        }
    }

    #[test]
    fn zero_base_exponent_is_rejected() {
        assert!(EulerParams::new(1, 1, 1, 0, 0).is_err());
    }

    #[test]
    fn series_example_values() {
        let v = euler_series_num(1, 1, 1, 0.0, 0.5, 1e-10).unwrap();
        assert!((v.value + 0.4).abs() <= 1e-10, "{v:?}");
        let v = euler_series_num(3, 2, 0, 2.0, 0.5, 1e-12).unwrap();
        assert!((v.value - 3.375).abs() <= 1e-12);
        assert_eq!(v.terms, 1);
        let exact = euler_exact(&EulerParams::integer(2, 3, 2, 1)).eval(&rat(9, 10)).unwrap();
        let v = euler_series_num(2, 3, 2, 1.0, 0.9, 1e-9).unwrap();
        assert!((v.value - num_traits::ToPrimitive::to_f64(&exact).unwrap()).abs() <= 1e-9);
    }

    #[test]
    fn series_rejects_divergent_parameters() {
        assert_eq!(
            euler_series_num(1, 0, 1, 0.0, 0.5, 1e-6).unwrap_err(),
            Error::ConvergenceDomain { h: 0, r: 1 }
        );
        assert!(euler_multisum_num(1, 1, 2, 0.0, 0.5, 10).is_err());
        assert!(euler_series_num(1, 1, 1, 0.0, 1.5, 1e-6).is_err());
    }

    #[test]
    fn multisum_examples() {
        let v = euler_multisum_num(2, 0, 0, 1.0, 0.5, 7).unwrap();
        assert_eq!(v.value, 1.0);
        let v = euler_multisum_num(1, 1, 1, 0.0, 0.5, 100).unwrap();
        assert!((v.value + 0.4).abs() < 1e-12);
        let single = euler_series_num(1, 2, 2, 0.0, 0.5, 1e-12).unwrap();
        let multi = euler_multisum_num(1, 2, 2, 0.0, 0.5, 60).unwrap();
        assert!((single.value - multi.value).abs() <= single.tail_bound + multi.tail_bound + 1e-14);
    }

    #[test]
    fn classical_examples() {
        for r in 0..4 {
            assert_eq!(classical_euler(0, r, &rat(7, 3)), rat(1, 1));
        }
        assert_eq!(classical_euler(1, 1, &rat(0, 1)), rat(-1, 2));
        assert_eq!(classical_euler(1, 2, &rat(0, 1)), rat(-1, 1));
        // E_2(x) = x^2 - x for r = 1
        assert_eq!(classical_euler(2, 1, &rat(3, 1)), rat(6, 1));
    }

    #[test]
    fn addition_examples() {
        for (n, h, r, y) in [(3, 1, 2, 2), (0, 0, 1, 1)] {
            assert_eq!(addition_rhs(n, h, r, 0, y), euler_exact(&EulerParams::integer(n, h, r, y)));
        }
        assert_eq!(addition_rhs(2, 1, 1, 1, 1), euler_exact(&EulerParams::integer(2, 1, 1, 2)));
        assert_eq!(addition_rhs_mirrored(2, 1, 1, 1, 1), addition_rhs(2, 1, 1, 1, 1));
    }

    #[test]
    fn r_zero_is_a_bracket_power() {
        for (n, arg, c) in [(3, 5, 2), (2, -1, 1), (4, 0, 3)] {
            let p = EulerParams::new(n, 7, 0, arg, c).unwrap();
            assert_eq!(euler_exact(&p), qbracket(arg, c).pow(n));
        }
    }
}
