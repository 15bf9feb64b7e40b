use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::zpoly::{self, ZPoly};
use super::{BigRat, QRatFunc};

/// Integer Laurent polynomial `q^low * Σ coeffs[i] q^i`.
///
/// Kept normalised: `coeffs` has no leading or trailing zeros, and the
/// zero polynomial has empty `coeffs` and `low = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    low: i64,
    coeffs: ZPoly,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![c] }
    }

    /// `1 + sign * q^exp`
    pub fn one_plus(sign: i64, exp: i64) -> Self {
        Self::from_terms([(0, BigInt::one()), (exp, BigInt::from(sign))])
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, BigInt)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|(e, _)| *e).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low) as usize + 1];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::normalized(low, coeffs)
    }

    fn normalized(low: i64, mut coeffs: ZPoly) -> Self {
        zpoly::trim(&mut coeffs);
        match zpoly::low_degree(&coeffs) {
            None => Self::zero(),
            Some(0) => Self { low, coeffs },
            Some(s) => Self {
                low: low + s as i64,
                coeffs: coeffs.split_off(s),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::normalized(self.low + other.low, zpoly::mul(&self.coeffs, &other.coeffs))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = zpoly::shift(&self.coeffs, (self.low - low) as usize);
        let b = zpoly::shift(&other.coeffs, (other.low - low) as usize);
        Self::normalized(low, zpoly::add(&a, &b))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::normalized(self.low, zpoly::scale(&self.coeffs, k))
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + by, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn to_ratfunc(&self) -> QRatFunc {
        QRatFunc::from_laurent(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (self.low + i as i64, BigRat::from_integer(c.clone()))),
        )
    }

    /// Canonical form of `self / den`.
    pub fn ratio(&self, den: &Self) -> crate::Result<QRatFunc> {
        if den.is_zero() {
            return Err(crate::Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(QRatFunc::zero());
        }
        let net = self.low - den.low;
        let (n, d) = if net >= 0 {
            (zpoly::shift(&self.coeffs, net as usize), den.coeffs.clone())
        } else {
            (self.coeffs.clone(), zpoly::shift(&den.coeffs, net.unsigned_abs() as usize))
        };
        Ok(QRatFunc::from_int_ratio(&n, &d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalisation_strips_zero_ends() {
        let p = LaurentPoly::from_terms([(-3, 0.into()), (-1, 2.into()), (4, 0.into())]);
        assert_eq!(p, LaurentPoly::monomial(2.into(), -1));
        assert!(LaurentPoly::from_terms([(2, 1.into()), (2, (-1).into())]).is_zero());
    }

    #[test]
    fn products_track_negative_exponents() {
        let a = LaurentPoly::one_plus(1, -2); // 1 + q^-2
        let b = LaurentPoly::one_plus(1, 1); // 1 + q
        let p = a.mul(&b);
        assert_eq!(p.low(), -2);
        assert_eq!(p.to_ratfunc().to_string(), "1 + q + q^2 + q^3 / q^2");
    }

    #[test]
    fn ratio_reduces() {
        let num = LaurentPoly::one_plus(-1, 2); // 1 - q^2
        let den = LaurentPoly::one_plus(-1, 1).shift(-1); // (1 - q)/q
        assert_eq!(num.ratio(&den).unwrap().to_string(), "q + q^2 / 1");
    }
}
