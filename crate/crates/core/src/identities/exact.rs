//! Exact builders for both sides of the symmetry identities.
//!
//! A "side" is built for the ordered pair `(a, b)`; the right-hand side of
//! each identity is the left-hand builder with `a` and `b` exchanged, so the
//! two sides share nothing but the exact-arithmetic layer and the two
//! moduli play different roles (base `q^a` vs `q^b`) in each.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{IdentityName, IdentityReport, ParamRecord, Side, SymCheckParams};
use crate::error::Result;
use crate::euler::{addition_rhs, addition_rhs_mirrored, euler_exact, umbral_expansion, EulerParams};
use crate::qalg::{binomial, qbracket, LaurentPoly, QRatFunc};

/// Visits every `j ∈ [0, a)^r` in odometer order.
pub(crate) fn for_each_residue_tuple(a: u32, r: u32, mut visit: impl FnMut(&[u32])) {
    let mut idx = vec![0u32; r as usize];
    loop {
        visit(&idx);
        let mut k = idx.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < a {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Groups `Σ_{j ∈ [0,a)^r} (-1)^{Σj} q^{scale Σ_l (offset - l + 1) j_l}` by `σ = Σj`.
/// Entry `σ` of the result is the Laurent polynomial collecting tuples with that sum.
pub(crate) fn alternating_weights(a: u32, r: u32, offset: i64, scale: i64) -> Vec<LaurentPoly> {
    let mut buckets: Vec<BTreeMap<i64, BigInt>> =
        vec![BTreeMap::new(); (r as usize) * (a.saturating_sub(1) as usize) + 1];
    for_each_residue_tuple(a, r, |j| {
        let sigma: u32 = j.iter().sum();
        let exp: i64 = j
            .iter()
            .enumerate()
            .map(|(l, &jl)| (offset - l as i64) * i64::from(jl))
            .sum::<i64>()
            * scale;
        let sign = if sigma % 2 == 0 { 1 } else { -1 };
        *buckets[sigma as usize].entry(exp).or_insert_with(BigInt::zero) += sign;
    });
    buckets
        .into_iter()
        .map(|b| LaurentPoly::from_terms(b))
        .collect()
}

/// Alternating q-power sum
/// `S = Σ_{j ∈ [0,a)^r} (-1)^{Σj} q^{c Σ_l (h+n-l-i+1) j_l} [j_1+..+j_r]_{q^c}^i`,
/// with `[0]^0 = 1`.
pub fn s_sum(n: u32, i: u32, h: i64, r: u32, a: u32, c: u32) -> QRatFunc {
    assert!(a >= 1 && c >= 1, "a and c must be positive");
    let offset = h + i64::from(n) - i64::from(i);
    let weights = alternating_weights(a, r, offset, i64::from(c));
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .fold(LaurentPoly::zero(), |acc, (sigma, w)| {
            let bracket = bracket_poly(sigma as i64, c).pow(i);
            acc.add(&w.mul(&bracket))
        })
        .to_ratfunc()
}

/// `[k]_{q^c} = 1 + q^c + ... + q^{c(k-1)}` for `k >= 0`.
fn bracket_poly(k: i64, c: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..k).map(|t| (t * i64::from(c), BigInt::from(1))))
}

fn ordered(side: Side, p: &SymCheckParams) -> (u32, u32) {
    match side {
        Side::Left => (p.a, p.b),
        Side::Right => (p.b, p.a),
    }
}

/// `[2]_{q^b}^r [a]_q^n Σ_{j ∈ [0,a)^r} (-1)^{Σj} q^{b Σ(h-l+1) j_l} E_{n,q^a}^{(h,r)}(bx + bΣj/a)`
/// for the left side; the right side exchanges `a` and `b`.
pub fn thm22_side(side: Side, p: &SymCheckParams) -> Result<QRatFunc> {
    p.validate()?;
    let (a, b) = ordered(side, p);
    let (n, h, r) = (p.n, p.h, p.r);
    let weights = alternating_weights(a, r, h, i64::from(b));
    let sum: QRatFunc = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(sigma, w)| {
            let arg = i64::from(a) * i64::from(b) * i64::from(p.x) + i64::from(b) * sigma as i64;
            let e = euler_exact(&EulerParams { n, h, r, arg, c: a });
            &w.to_ratfunc() * &e
        })
        .sum();
    let prefactor = LaurentPoly::one_plus(1, i64::from(b))
        .pow(r)
        .mul(&bracket_poly(i64::from(a), 1).pow(n));
    Ok(&prefactor.to_ratfunc() * &sum)
}

/// `[2]_{q^b}^r Σ_i C(n,i) [a]_q^{n-i} [b]_q^i E_{n-i,q^a}^{(h,r)}(bx) S_{n,i,q^b}^{(h,r)}(a)`
/// for the left side; the right side exchanges `a` and `b`.
pub fn thm24_side(side: Side, p: &SymCheckParams) -> Result<QRatFunc> {
    p.validate()?;
    let (a, b) = ordered(side, p);
    let (n, h, r) = (p.n, p.h, p.r);
    let bracket_a = bracket_poly(i64::from(a), 1);
    let bracket_b = bracket_poly(i64::from(b), 1);
    let arg = i64::from(a) * i64::from(b) * i64::from(p.x);
    let sum: QRatFunc = (0..=n)
        .map(|i| {
            let e = euler_exact(&EulerParams { n: n - i, h, r, arg, c: a });
            let s = s_sum(n, i, h, r, a, b);
            let coeff = bracket_a
                .pow(n - i)
                .mul(&bracket_b.pow(i))
                .scale(&binomial(n, i).to_integer());
            &(&coeff.to_ratfunc() * &e) * &s
        })
        .sum();
    let prefactor = LaurentPoly::one_plus(1, i64::from(b)).pow(r);
    Ok(&prefactor.to_ratfunc() * &sum)
}

/// Left: `Σ_{k=0}^{m} C(m,k) q^{(n+k)x} E_{n+k,q}^{(h,r)}(y) [x]_q^{m-k}`.
/// Right: `Σ_{k=0}^{n} C(n,k) E_{m+k,q}^{(h,r)}(x+y) q^{(n-k)x} [-x]_q^{n-k}`.
pub fn thm25_side(side: Side, m: u32, n: u32, h: i64, r: u32, x: i64, y: i64) -> QRatFunc {
    match side {
        Side::Left => {
            let bracket = qbracket(x, 1);
            (0..=m)
                .map(|k| {
                    let e = euler_exact(&EulerParams::integer(n + k, h, r, y));
                    let t = &(&QRatFunc::q_pow(i64::from(n + k) * x) * &e) * &bracket.pow(m - k);
                    t.scale(&binomial(m, k))
                })
                .sum()
        }
        Side::Right => {
            let neg_bracket = qbracket(-x, 1);
            (0..=n)
                .map(|k| {
                    let e = euler_exact(&EulerParams::integer(m + k, h, r, x + y));
                    let t = &(&e * &QRatFunc::q_pow(i64::from(n - k) * x)) * &neg_bracket.pow(n - k);
                    t.scale(&binomial(n, k))
                })
                .sum()
        }
    }
}

pub fn thm22_check(p: &SymCheckParams) -> Result<IdentityReport> {
    let lhs = thm22_side(Side::Left, p)?;
    let rhs = thm22_side(Side::Right, p)?;
    Ok(IdentityReport::exact(IdentityName::EulerSymmetry, p.record(), &lhs, &rhs))
}

pub fn thm24_check(p: &SymCheckParams) -> Result<IdentityReport> {
    let lhs = thm24_side(Side::Left, p)?;
    let rhs = thm24_side(Side::Right, p)?;
    Ok(IdentityReport::exact(IdentityName::PowerSumSymmetry, p.record(), &lhs, &rhs))
}

pub fn thm25_check(m: u32, n: u32, h: i64, r: u32, x: i64, y: i64) -> IdentityReport {
    let lhs = thm25_side(Side::Left, m, n, h, r, x, y);
    let rhs = thm25_side(Side::Right, m, n, h, r, x, y);
    let params = ParamRecord::new()
        .with("m", m)
        .with("n", n)
        .with("h", h)
        .with("r", r)
        .with("x", x)
        .with("y", y);
    IdentityReport::exact(IdentityName::ShiftSymmetry, params, &lhs, &rhs)
}

/// `E(x+y)` against the addition expansion; the mirrored `(n-i)` form must agree too.
pub fn prop23_check(n: u32, h: i64, r: u32, x: i64, y: i64) -> IdentityReport {
    let lhs = euler_exact(&EulerParams::integer(n, h, r, x + y));
    let rhs = addition_rhs(n, h, r, x, y);
    let mirrored = addition_rhs_mirrored(n, h, r, x, y);
    let params = ParamRecord::new()
        .with("n", n)
        .with("h", h)
        .with("r", r)
        .with("x", x)
        .with("y", y);
    let mut report = IdentityReport::exact(IdentityName::Addition, params, &lhs, &rhs);
    if mirrored != rhs {
        report.equal = false;
        report.deviation = 1.0;
    }
    report
}

pub fn umbral_check(n: u32, h: i64, r: u32, x: i64) -> IdentityReport {
    let lhs = euler_exact(&EulerParams::integer(n, h, r, x));
    let rhs = umbral_expansion(n, h, r, x);
    let params = ParamRecord::new().with("n", n).with("h", h).with("r", r).with("x", x);
    IdentityReport::exact(IdentityName::Umbral, params, &lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::qalg::{BigRat, QPoly};

    fn params(a: u32, b: u32, n: u32, h: i64, r: u32, x: u32) -> SymCheckParams {
        SymCheckParams { a, b, n, h, r, x }
    }

    /// Nested-loop evaluation of the S-sum at a rational point.
    fn s_sum_at(n: u32, i: u32, h: i64, r: u32, a: u32, c: u32, q: &BigRat) -> BigRat {
        let qc = num_traits::pow(q.clone(), c as usize);
        let mut total = BigRat::zero();
        for_each_residue_tuple(a, r, |j| {
            let sigma: u32 = j.iter().sum();
            let mut term = BigRat::from_integer(if sigma % 2 == 0 { 1 } else { -1 }.into());
            for (l, &jl) in j.iter().enumerate() {
                let e = (h + i64::from(n) - (l as i64 + 1) - i64::from(i) + 1) * i64::from(jl);
                let base = if e >= 0 { qc.clone() } else { num_traits::Inv::inv(qc.clone()) };
                term *= num_traits::pow(base, e.unsigned_abs() as usize);
            }
            let bracket: BigRat = (0..sigma).map(|t| num_traits::pow(qc.clone(), t as usize)).sum();
            term *= num_traits::pow(bracket, i as usize);
            total += term;
        });
        total
    }

    #[test]
    fn s_sum_degenerate_cases() {
        for (n, h, r) in [(3, 1, 2), (0, -2, 3), (4, 0, 1)] {
            assert!(s_sum(n, 0, h, r, 1, 1).is_one());
            if n > 0 {
                assert!(s_sum(n, 1, h, r, 1, 2).is_zero());
            }
            assert!(s_sum(n, 0, h, 0, 5, 1).is_one());
            if n > 0 {
                assert!(s_sum(n, n, h, 0, 5, 1).is_zero());
            }
        }
    }

    #[test]
    fn s_sum_small_hand_expansion() {
        // r=1, a=3, i=1: -q^{h+n-1}[1] + q^{2(h+n-1)}[2]
        let (n, h) = (2, 3);
        let e = h + n - 1;
        let expected = QPoly::from_terms([
            (e as u32, BigRat::from_integer((-1).into())),
            (2 * e as u32, BigRat::from_integer(1.into())),
            (2 * e as u32 + 1, BigRat::from_integer(1.into())),
        ]);
        assert_eq!(s_sum(n as u32, 1, h, 1, 3, 1), expected.into());
    }

    #[test]
    fn s_sum_matches_nested_loops() {
        let q = BigRat::new(2.into(), 7.into());
        for (n, i, h, r, a, c) in [(3, 2, 1, 2, 3, 1), (2, 1, -1, 3, 3, 2), (4, 4, 0, 2, 5, 3), (1, 0, -3, 2, 3, 1)] {
            let exact = s_sum(n, i, h, r, a, c).eval(&q).unwrap();
            assert_eq!(exact, s_sum_at(n, i, h, r, a, c, &q), "{:?}", (n, i, h, r, a, c));
        }
    }

    #[test]
    fn thm22_examples() {
        let p = params(1, 1, 3, 2, 2, 1);
        let expected = &LaurentPoly::one_plus(1, 1).pow(2).to_ratfunc()
            * &euler_exact(&EulerParams::integer(3, 2, 2, 1));
        assert_eq!(thm22_side(Side::Left, &p).unwrap(), expected);
        assert_eq!(thm22_side(Side::Right, &p).unwrap(), expected);
        assert_eq!(
            thm22_side(Side::Left, &params(2, 1, 1, 1, 1, 0)),
            Err(Error::Parity { a: 2, b: 1 })
        );
        assert!(thm22_check(&params(3, 1, 1, 1, 1, 0)).unwrap().equal);
        assert!(thm22_check(&params(3, 5, 2, 1, 1, 0)).unwrap().equal);
    }

    #[test]
    fn swapping_moduli_swaps_sides() {
        let p = params(3, 5, 2, -1, 2, 1);
        let q = params(5, 3, 2, -1, 2, 1);
        assert_eq!(thm22_side(Side::Left, &p).unwrap(), thm22_side(Side::Right, &q).unwrap());
        assert_eq!(thm24_side(Side::Right, &p).unwrap(), thm24_side(Side::Left, &q).unwrap());
    }

    #[test]
    fn thm24_examples() {
        let p = params(1, 1, 3, 0, 2, 2);
        let expected = thm22_side(Side::Left, &p).unwrap();
        assert_eq!(thm24_side(Side::Left, &p).unwrap(), expected);
        let p = params(3, 5, 2, 2, 1, 1);
        let left = thm24_side(Side::Left, &p).unwrap();
        assert_eq!(left, thm24_side(Side::Right, &p).unwrap());
        assert_eq!(left, thm22_side(Side::Left, &p).unwrap());
        let p = params(5, 3, 0, 1, 2, 1);
        assert!(thm24_check(&p).unwrap().equal);
    }

    #[test]
    fn thm25_examples() {
        assert!(thm25_check(0, 0, 1, 1, 2, 1).equal);
        let lhs = thm25_side(Side::Left, 2, 1, 1, 2, 0, 1);
        assert_eq!(lhs, euler_exact(&EulerParams::integer(3, 1, 2, 1)));
        assert_eq!(thm25_side(Side::Right, 2, 1, 1, 2, 0, 1), lhs);
        assert!(thm25_check(1, 2, 1, 1, 1, 1).equal);
    }

    #[test]
    fn addition_and_umbral_reports() {
        assert!(prop23_check(2, 1, 1, 1, 1).equal);
        assert!(umbral_check(4, 0, 2, 3).equal);
    }
}
