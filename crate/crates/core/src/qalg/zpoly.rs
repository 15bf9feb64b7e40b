//! Dense univariate polynomials over the integers.
//!
//! This is the arithmetic kernel behind [`QPoly`](super::QPoly) and
//! [`QRatFunc`](super::QRatFunc): rational-coefficient polynomials are
//! cleared of denominators, handed here as primitive integer polynomials,
//! and multiplied, divided and reduced without any rational normalisation
//! in the inner loops.
//!
//! A polynomial is a `Vec<BigInt>` indexed by exponent with no trailing
//! zeros; the empty vector is zero.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type ZPoly = Vec<BigInt>;

pub fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

/// Index of the lowest non-zero coefficient.
pub fn low_degree(p: &[BigInt]) -> Option<usize> {
    p.iter().position(|c| !c.is_zero())
}

fn max_bits(p: &[BigInt]) -> u64 {
    p.iter().map(BigInt::bits).max().unwrap_or(0)
}

fn to_i128s(p: &[BigInt]) -> Option<Vec<i128>> {
    p.iter().map(ToPrimitive::to_i128).collect()
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let terms = a.len().min(b.len()) as u64;
    let bound = max_bits(a) + max_bits(b) + 64 - terms.leading_zeros() as u64;
    if bound < 126 {
        if let (Some(x), Some(y)) = (to_i128s(a), to_i128s(b)) {
            let mut out = vec![0i128; x.len() + y.len() - 1];
            for (i, &xi) in x.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in y.iter().enumerate() {
                    out[i + j] += xi * yj;
                }
            }
            let mut out: ZPoly = out.into_iter().map(BigInt::from).collect();
            trim(&mut out);
            return out;
        }
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    trim(&mut out);
    out
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(&mut out);
    out
}

pub fn scale(p: &[BigInt], k: &BigInt) -> ZPoly {
    if k.is_zero() {
        return Vec::new();
    }
    p.iter().map(|c| c * k).collect()
}

pub fn shift(p: &[BigInt], by: usize) -> ZPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); by];
    out.extend_from_slice(p);
    out
}

/// Non-negative gcd of the coefficients; zero for the zero polynomial.
pub fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Splits `p` into `(c, pp)` with `p = c * pp`, `pp` primitive and with a
/// positive leading coefficient. Zero maps to `(0, [])`.
pub fn primitive(p: &[BigInt]) -> (BigInt, ZPoly) {
    if p.is_empty() {
        return (BigInt::zero(), Vec::new());
    }
    let mut c = content(p);
    if p.last().unwrap().sign() == Sign::Minus {
        c = -c;
    }
    if c.is_one() {
        return (c, p.to_vec());
    }
    let pp = p.iter().map(|x| x / &c).collect();
    (c, pp)
}

pub fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// `a / b` when `b` divides `a` exactly over the integers, `None` otherwise.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    if b.len() == 1 {
        return a
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&b[0]);
                r.is_zero().then_some(q)
            })
            .collect();
    }
    if let Some(q) = exact_div_small(a, b) {
        return q;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        if rem[k + db].is_zero() {
            continue;
        }
        let (q, r) = rem[k + db].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &q * bi;
        }
        quot[k] = q;
    }
    if rem[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

/// i128 version of [`exact_div`]; the outer `None` means an intermediate
/// value overflowed and the caller must redo the work with big integers.
fn exact_div_small(a: &[BigInt], b: &[BigInt]) -> Option<Option<ZPoly>> {
    let mut rem = to_i128s(a)?;
    let b = to_i128s(b)?;
    let db = b.len() - 1;
    let lc = b[db];
    let mut quot = vec![0i128; rem.len() - db];
    for k in (0..quot.len()).rev() {
        let top = rem[k + db];
        if top == 0 {
            continue;
        }
        if top % lc != 0 {
            return Some(None);
        }
        let q = top / lc;
        for (i, &bi) in b.iter().enumerate() {
            rem[k + i] = rem[k + i].checked_sub(q.checked_mul(bi)?)?;
        }
        quot[k] = q;
    }
    if rem[..db].iter().any(|&c| c != 0) {
        return Some(None);
    }
    let mut out: ZPoly = quot.into_iter().map(BigInt::from).collect();
    trim(&mut out);
    Some(Some(out))
}

/// Pseudo-remainder of `a` by `b` (some positive power of `lc(b)` times `a`, reduced mod `b`).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] -= &top * bi;
        }
        trim(&mut r);
    }
    r
}

/// Result of [`gcd`]: `a = gcd * cof_a` and `b = gcd * cof_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcdCofactors {
    pub gcd: ZPoly,
    pub cof_a: ZPoly,
    pub cof_b: ZPoly,
}

/// Primitive gcd with positive leading coefficient, together with the cofactors.
///
/// Common powers of `q` are split off first, then the heuristic
/// evaluation/interpolation gcd is tried, with a primitive remainder
/// sequence as the fallback.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> GcdCofactors {
    if a.is_empty() && b.is_empty() {
        return GcdCofactors {
            gcd: vec![BigInt::one()],
            cof_a: Vec::new(),
            cof_b: Vec::new(),
        };
    }
    if a.is_empty() {
        let (c, pp) = primitive(b);
        return GcdCofactors {
            gcd: pp,
            cof_a: Vec::new(),
            cof_b: vec![c],
        };
    }
    if b.is_empty() {
        let (c, pp) = primitive(a);
        return GcdCofactors {
            gcd: pp,
            cof_a: vec![c],
            cof_b: Vec::new(),
        };
    }
    if a == b {
        let (c, pp) = primitive(a);
        return GcdCofactors {
            gcd: pp,
            cof_a: vec![c.clone()],
            cof_b: vec![c],
        };
    }

    let sa = low_degree(a).unwrap();
    let sb = low_degree(b).unwrap();
    let s = sa.min(sb);
    let a0 = &a[sa..];
    let b0 = &b[sb..];

    let g = gcd_unshifted(a0, b0);
    // undo the q-power split: a = q^sa a0 = q^s g * q^(sa-s) cof
    GcdCofactors {
        gcd: shift(&g.gcd, s),
        cof_a: shift(&g.cof_a, sa - s),
        cof_b: shift(&g.cof_b, sb - s),
    }
}

fn gcd_unshifted(a: &[BigInt], b: &[BigInt]) -> GcdCofactors {
    let (ca, pa) = primitive(a);
    let (cb, pb) = primitive(b);
    if pa.len() == 1 || pb.len() == 1 {
        return GcdCofactors {
            gcd: vec![BigInt::one()],
            cof_a: a.to_vec(),
            cof_b: b.to_vec(),
        };
    }
    let (g, fa, fb) = heuristic_gcd(&pa, &pb).unwrap_or_else(|| prs_gcd(&pa, &pb));
    GcdCofactors {
        gcd: g,
        cof_a: scale(&fa, &ca),
        cof_b: scale(&fb, &cb),
    }
}

fn norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Digits of `v` in base `xi` taken in the symmetric range `(-xi/2, xi/2]`.
fn interpolate(mut v: BigInt, xi: &BigInt) -> ZPoly {
    let half = xi / 2;
    let mut out = Vec::new();
    while !v.is_zero() {
        let mut d = v.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        v = (v - &d) / xi;
        out.push(d);
    }
    out
}

fn normalize_sign(mut g: ZPoly, mut fa: ZPoly, mut fb: ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    if g.last().is_some_and(|c| c.is_negative()) {
        for p in [&mut g, &mut fa, &mut fb] {
            for c in p.iter_mut() {
                *c = -&*c;
            }
        }
    }
    (g, fa, fb)
}

/// Heuristic gcd of primitive polynomials: evaluate at a large integer,
/// take the integer gcd, and read the polynomial back from its balanced
/// base-`xi` digits. Any candidate is accepted only after exact division
/// of both inputs, and `xi` always exceeds `2 min(|a|, |b|) + 2`, which
/// makes an accepted candidate the true gcd.
fn heuristic_gcd(a: &[BigInt], b: &[BigInt]) -> Option<(ZPoly, ZPoly, ZPoly)> {
    let mut xi = 2 * norm(a).min(norm(b)) + 29u32;
    for _ in 0..6 {
        let fa = eval(a, &xi);
        let fb = eval(b, &xi);
        if !fa.is_zero() && !fb.is_zero() {
            let gamma = fa.gcd(&fb);

            let (_, g) = primitive(&interpolate(gamma.clone(), &xi));
            if !g.is_empty() {
                if let Some(ca) = exact_div(a, &g) {
                    if let Some(cb) = exact_div(b, &g) {
                        return Some(normalize_sign(g, ca, cb));
                    }
                }
            }

            let ca = interpolate(&fa / &gamma, &xi);
            if !ca.is_empty() {
                if let Some(g) = exact_div(a, &ca) {
                    if let Some(cb) = exact_div(b, &g) {
                        return Some(normalize_sign(g, ca, cb));
                    }
                }
            }

            let cb = interpolate(&fb / &gamma, &xi);
            if !cb.is_empty() {
                if let Some(g) = exact_div(b, &cb) {
                    if let Some(ca) = exact_div(a, &g) {
                        return Some(normalize_sign(g, ca, cb));
                    }
                }
            }
        }
        xi = &xi * 73794u32 * xi.sqrt().sqrt() / 27011u32;
    }
    None
}

/// Euclid over Z[q] with primitive pseudo-remainders.
fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> (ZPoly, ZPoly, ZPoly) {
    let (mut x, mut y) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    while !y.is_empty() {
        let r = primitive(&pseudo_rem(&x, &y)).1;
        x = y;
        y = r;
    }
    let g = primitive(&x).1;
    let ca = exact_div(a, &g).expect("gcd divides its first argument");
    let cb = exact_div(b, &g).expect("gcd divides its second argument");
    (g, ca, cb)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(cs: &[i64]) -> ZPoly {
        let mut p: ZPoly = cs.iter().map(|&c| BigInt::from(c)).collect();
        trim(&mut p);
        p
    }

    #[test]
    fn multiplication_matches_hand_expansion() {
        // (1 + q)(1 - q + q^2) = 1 + q^3
        assert_eq!(mul(&z(&[1, 1]), &z(&[1, -1, 1])), z(&[1, 0, 0, 1]));
        assert_eq!(mul(&z(&[]), &z(&[1, 2])), z(&[]));
    }

    #[test]
    fn big_coefficients_take_the_bigint_path() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let p = vec![big.clone(), BigInt::one()];
        let sq = mul(&p, &p);
        assert_eq!(sq[0], &big * &big);
        assert_eq!(sq[1], 2 * &big);
        assert_eq!(exact_div(&sq, &p), Some(p));
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = z(&[1, 0, 0, 1]);
        assert_eq!(exact_div(&a, &z(&[1, 1])), Some(z(&[1, -1, 1])));
        assert_eq!(exact_div(&a, &z(&[1, 2])), None);
        assert_eq!(exact_div(&z(&[2, 4]), &z(&[2])), Some(z(&[1, 2])));
        assert_eq!(exact_div(&z(&[2, 3]), &z(&[2])), None);
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (1 - q^6) and (1 - q^4) share 1 - q^2
        let a = z(&[1, 0, 0, 0, 0, 0, -1]);
        let b = z(&[1, 0, 0, 0, -1]);
        let g = gcd(&a, &b);
        assert_eq!(g.gcd, z(&[-1, 0, 1]).into_iter().collect::<ZPoly>());
        assert_eq!(mul(&g.gcd, &g.cof_a), a);
        assert_eq!(mul(&g.gcd, &g.cof_b), b);
    }

    #[test]
    fn gcd_splits_powers_of_q_and_content() {
        let a = z(&[0, 0, 6, 6]); // 6 q^2 (1 + q)
        let b = z(&[0, 4, -4]); // 4 q (1 - q)
        let g = gcd(&a, &b);
        assert_eq!(g.gcd, z(&[0, 1]));
        assert_eq!(mul(&g.gcd, &g.cof_a), a);
        assert_eq!(mul(&g.gcd, &g.cof_b), b);
    }

    #[test]
    fn prs_fallback_agrees_with_heuristic() {
        let a = mul(&z(&[3, -2, 7, 1]), &z(&[5, 0, 2]));
        let b = mul(&z(&[3, -2, 7, 1]), &z(&[-1, 4, 0, 9]));
        let (g1, _, _) = heuristic_gcd(&a, &b).unwrap();
        let (g2, _, _) = prs_gcd(&a, &b);
        assert_eq!(g1, g2);
        assert_eq!(g1, z(&[3, -2, 7, 1]));
    }

    #[test]
    fn coprime_inputs_have_unit_gcd() {
        let g = gcd(&z(&[1, 1]), &z(&[1, 0, 1]));
        assert_eq!(g.gcd, z(&[1]));
    }
}
