use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zpoly::{self, ZPoly};
use super::BigRat;
use crate::error::{Error, Result};

/// Sparse polynomial in `q` with exact rational coefficients.
///
/// Zero coefficients are never stored, so the derived equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash, Debug)]
pub struct QPoly {
    terms: BTreeMap<u32, BigRat>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: BigRat, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `q^exp`
    pub fn q_pow(exp: u32) -> Self {
        Self::monomial(BigRat::one(), exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (u32, BigRat)>>(terms: I) -> Self {
        let mut map: BTreeMap<u32, BigRat> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_insert_with(BigRat::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self { terms: map }
    }

    /// Builds a polynomial from integer coefficients in ascending order.
    pub fn from_int_coeffs<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(e, c)| (e as u32, BigRat::from_integer(c.into()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a non-zero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRat> {
        self.terms.values().next_back()
    }

    pub fn coeff(&self, exp: u32) -> BigRat {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Non-zero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRat)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    /// Multiplies by `q^by`.
    pub fn shift(&self, by: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + by, c.clone())).collect(),
        }
    }

    /// Substitutes `q -> q^k`.
    pub fn dilate(&self, k: u32) -> Self {
        assert!(k > 0, "dilation factor must be positive");
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, at: &BigRat) -> BigRat {
        if self.is_zero() {
            return BigRat::zero();
        }
        let (k, z) = self.to_primitive();
        k * eval_scaled(&z, at)
    }

    pub fn eval_f64(&self, at: f64) -> f64 {
        use num_traits::ToPrimitive;
        let deg = self.degree().unwrap_or(0);
        let mut acc = 0.0;
        for e in (0..=deg).rev() {
            acc = acc * at + self.terms.get(&e).and_then(ToPrimitive::to_f64).unwrap_or(0.0);
        }
        acc
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let d_deg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.leading_coeff().unwrap().recip();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((&e, c)) = rem.iter().next_back() {
            if e < d_deg {
                break;
            }
            let factor = c * &lc_inv;
            let shift = e - d_deg;
            for (&de, dc) in &divisor.terms {
                let slot = rem.entry(de + shift).or_insert_with(BigRat::zero);
                *slot -= &factor * dc;
                if slot.is_zero() {
                    rem.remove(&(de + shift));
                }
            }
            quot.insert(shift, factor);
        }
        Ok((Self { terms: quot }, Self { terms: rem }))
    }

    /// Monic greatest common divisor over the rationals; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        let (_, a) = self.to_primitive();
        let (_, b) = other.to_primitive();
        Self::from_zpoly(&zpoly::gcd(&a, &b).gcd, &BigRat::one()).monic()
    }

    /// `self = k * z` with `z` a primitive integer polynomial whose leading
    /// coefficient is positive. Zero gives `(0, [])`.
    pub(crate) fn to_primitive(&self) -> (BigRat, ZPoly) {
        let Some(deg) = self.degree() else {
            return (BigRat::zero(), Vec::new());
        };
        let denom_lcm = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints = vec![BigInt::zero(); deg as usize + 1];
        for (&e, c) in &self.terms {
            ints[e as usize] = c.numer() * (&denom_lcm / c.denom());
        }
        let (content, pp) = zpoly::primitive(&ints);
        (BigRat::new(content, denom_lcm), pp)
    }

    pub(crate) fn from_zpoly(z: &[BigInt], k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: z
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as u32, k * BigRat::from_integer(c.clone())))
                .collect(),
        }
    }
}

/// `z(p/s)` evaluated with integer Horner steps and a single final division.
pub(crate) fn eval_scaled(z: &[BigInt], at: &BigRat) -> BigRat {
    let Some(deg) = zpoly::degree(z) else {
        return BigRat::zero();
    };
    let p = at.numer();
    let s = at.denom();
    let mut acc = BigInt::zero();
    let mut s_pow = BigInt::one();
    for c in z.iter().rev() {
        acc = acc * p + c * &s_pow;
        s_pow *= s;
    }
    BigRat::new(acc, num_traits::pow(s.clone(), deg))
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut terms = self.terms.clone();
        for (&e, c) in &rhs.terms {
            let slot = terms.entry(e).or_insert_with(BigRat::zero);
            *slot += c;
            if slot.is_zero() {
                terms.remove(&e);
            }
        }
        QPoly { terms }
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        if self.terms.len() == 1 || rhs.terms.len() == 1 {
            let (mono, other) = if self.terms.len() == 1 { (self, rhs) } else { (rhs, self) };
            let (&e, c) = mono.terms.iter().next().unwrap();
            return other.scale(c).shift(e);
        }
        let (ka, za) = self.to_primitive();
        let (kb, zb) = rhs.to_primitive();
        QPoly::from_zpoly(&zpoly::mul(&za, &zb), &(ka * kb))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

/// Canonical text: ascending exponents joined by `" + "`, e.g.
/// `1 + 2*q + 1/3*q^2`; a unit coefficient is dropped on non-constant
/// terms and the zero polynomial prints as `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    f.write_str("q")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse_coeff(s: &str) -> Result<BigRat> {
    s.parse::<BigRat>()
        .map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))
}

fn parse_q_power(s: &str) -> Result<u32> {
    match s {
        "q" => Ok(1),
        _ => s
            .strip_prefix("q^")
            .and_then(|e| e.parse().ok())
            .filter(|&e| e > 1)
            .ok_or_else(|| Error::Parse(format!("bad power of q `{s}`"))),
    }
}

impl FromStr for QPoly {
    type Err = Error;

    /// Accepts exactly the canonical text produced by `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = BTreeMap::new();
        let mut last: Option<u32> = None;
        for term in s.split(" + ") {
            let (c, e) = match term.split_once('*') {
                Some((c, q)) => (parse_coeff(c)?, parse_q_power(q)?),
                None if term.starts_with('q') => (BigRat::one(), parse_q_power(term)?),
                None => (parse_coeff(term)?, 0),
            };
            if c.is_zero() || last.is_some_and(|l| l >= e) {
                return Err(Error::Parse(format!("non-canonical polynomial `{s}`")));
            }
            last = Some(e);
            terms.insert(e, c);
        }
        Ok(Self { terms })
    }
}

/// Renders a rational as `p` or `p/r`.
pub fn format_rat(r: &BigRat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> Result<BigRat> {
    let r = parse_coeff(s.trim())?;
    if r.denom().is_negative() {
        return Err(Error::Parse(format!("bad rational `{s}`")));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = QPoly::from_terms([(1, r(1, 1)), (1, r(-1, 1)), (0, r(2, 1))]);
        assert_eq!(p, QPoly::constant(r(2, 1)));
        assert_eq!(QPoly::zero().degree(), None);
    }

    #[test]
    fn display_matches_canonical_text() {
        let p = QPoly::from_int_coeffs([1, 2, 3, 2, 1]);
        assert_eq!(p.to_string(), "1 + 2*q + 3*q^2 + 2*q^3 + q^4");
        let p = QPoly::from_terms([(1, r(-1, 1)), (3, r(1, 2))]);
        assert_eq!(p.to_string(), "-1*q + 1/2*q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-1*q + 1/2*q^3", "3/7 + q + q^10"] {
            assert_eq!(s.parse::<QPoly>().unwrap().to_string(), s);
        }
        assert!("q^2 + 1".parse::<QPoly>().is_err());
        assert!("0*q".parse::<QPoly>().is_err());
        assert!("1*q^1".parse::<QPoly>().is_err());
    }

    #[test]
    fn division_with_remainder() {
        let a = QPoly::from_int_coeffs([1, 0, 0, 1]);
        let b = QPoly::from_int_coeffs([2, 2]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, QPoly::from_terms([(0, r(1, 2)), (1, r(-1, 2)), (2, r(1, 2))]));
        assert!(rem.is_zero());
        assert!(a.div_rem(&QPoly::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic() {
        let a = QPoly::from_int_coeffs([-3, 0, 3]);
        let b = QPoly::from_int_coeffs([2, 2]);
        assert_eq!(a.gcd(&b), QPoly::from_int_coeffs([1, 1]));
    }

    #[test]
    fn evaluation_at_rationals() {
        let p = QPoly::from_int_coeffs([1, 1, 1]);
        assert_eq!(p.eval(&r(1, 1)), r(3, 1));
        assert_eq!(p.eval(&r(1, 2)), r(7, 4));
        assert_eq!(p.scale(&r(2, 3)).eval(&r(-1, 3)), r(14, 27));
    }
}
