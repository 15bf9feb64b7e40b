//! q-brackets, q-factorials, Gaussian binomials and q-Pochhammer products.

use num_traits::One;

use super::{BigRat, LaurentPoly, QPoly, QRatFunc};

/// `(1 - q^n) / (1 - q^c)`, i.e. `[n/c]` in base `q^c`.
pub fn qbracket(n: i64, c: u32) -> QRatFunc {
    assert!(c >= 1, "base exponent must be positive");
    let c64 = i64::from(c);
    if n >= 0 && n % c64 == 0 {
        // 1 + q^c + ... + q^(n-c)
        return QPoly::from_terms((0..n / c64).map(|i| ((i * c64) as u32, BigRat::one()))).into();
    }
    let top = QRatFunc::from_laurent([(0, BigRat::one()), (n, -BigRat::one())]);
    let bottom = QRatFunc::from_laurent([(0, BigRat::one()), (c64, -BigRat::one())]);
    top.checked_div(&bottom).expect("1 - q^c is non-zero")
}

/// `[m]_{q^c}! = Π_{k=1}^{m} [k]_{q^c}`, with `[0]! = 1`.
pub fn qfactorial(m: u32, c: u32) -> QPoly {
    (1..=m).fold(QPoly::one(), |acc, k| {
        let bracket = qbracket(i64::from(c) * i64::from(k), c);
        &acc * bracket.as_polynomial().expect("[k]_{q^c} is a polynomial")
    })
}

/// Gaussian binomial coefficient `[m choose k]` in base `q^c`; zero when `k > m`.
pub fn gauss_binom(m: u32, k: u32, c: u32) -> QPoly {
    if k > m {
        return QPoly::zero();
    }
    let k = k.min(m - k);
    let c = i64::from(c);
    let (mut top, mut bottom) = (QPoly::one(), QPoly::one());
    for i in 0..k {
        top = &top * &one_minus_q_pow((i64::from(m - i)) * c);
        bottom = &bottom * &one_minus_q_pow(i64::from(i + 1) * c);
    }
    let (quot, rem) = top.div_rem(&bottom).expect("non-zero q-factorial");
    debug_assert!(rem.is_zero());
    quot
}

fn one_minus_q_pow(e: i64) -> QPoly {
    QPoly::from_terms([(0, BigRat::one()), (e as u32, -BigRat::one())])
}

/// `(sign q^k ; q^c)_r = Π_{i=0}^{r-1} (1 - sign q^(k + c i))` for any integer `k`.
pub fn qpoch_monomial(sign: i8, k: i64, c: u32, r: u32) -> QRatFunc {
    assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
    assert!(c >= 1, "base exponent must be positive");
    (0..r)
        .fold(LaurentPoly::one(), |acc, i| {
            acc.mul(&LaurentPoly::one_plus(-i64::from(sign), k + i64::from(c) * i64::from(i)))
        })
        .to_ratfunc()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::from_int_coeffs(cs.iter().copied())
    }

    #[test]
    fn qbracket_examples() {
        assert!(qbracket(0, 1).is_zero());
        assert_eq!(qbracket(3, 1), poly(&[1, 1, 1]).into());
        assert_eq!(qbracket(-1, 1), QRatFunc::from_laurent([(-1, -BigRat::one())]));
        assert_eq!(qbracket(-1, 1).to_string(), "-1 / q");
        let five_thirds = qbracket(5, 3);
        let expected = QRatFunc::new(poly(&[1, 0, 0, 0, 0, -1]), poly(&[1, 0, 0, -1])).unwrap();
        assert_eq!(five_thirds, expected);
        assert_eq!(qbracket(6, 3), poly(&[1, 0, 0, 1]).into());
    }

    #[test]
    fn qfactorial_examples() {
        assert_eq!(qfactorial(0, 1), QPoly::one());
        assert_eq!(qfactorial(2, 1), poly(&[1, 1]));
        assert_eq!(qfactorial(3, 1), &poly(&[1, 1]) * &poly(&[1, 1, 1]));
        assert_eq!(qfactorial(2, 2), poly(&[1, 0, 1]));
    }

    #[test]
    fn gauss_binom_examples() {
        assert_eq!(gauss_binom(5, 0, 1), QPoly::one());
        assert_eq!(gauss_binom(2, 1, 1), poly(&[1, 1]));
        assert_eq!(gauss_binom(4, 2, 1), poly(&[1, 1, 2, 1, 1]));
        assert!(gauss_binom(2, 3, 1).is_zero());
        assert_eq!(gauss_binom(4, 2, 2), poly(&[1, 0, 1, 0, 2, 0, 1, 0, 1]));
    }

    #[test]
    fn qpoch_examples() {
        assert!(qpoch_monomial(1, 1, 1, 0).is_one());
        assert_eq!(qpoch_monomial(-1, 1, 1, 2), (&poly(&[1, 1]) * &poly(&[1, 0, 1])).into());
        // (1 + q^-2)(1 + q^-1)(2) = 2 (q^2 + 1)(q + 1) / q^3
        let expected = QRatFunc::new(
            (&poly(&[1, 0, 1]) * &poly(&[1, 1])).scale(&BigRat::from_integer(2.into())),
            QPoly::q_pow(3),
        )
        .unwrap();
        assert_eq!(qpoch_monomial(-1, -2, 1, 3), expected);
        assert!(qpoch_monomial(1, 0, 1, 2).is_zero());
    }
}
