use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{eval_scaled, format_rat, parse_rat};
use super::zpoly::{self, ZPoly};
use super::{BigRat, QPoly};
use crate::error::{Error, Result};

/// An element of Q(q) in canonical form.
///
/// `num / den` is fully reduced and `den` is monic, so two values are
/// equal as functions exactly when they are structurally equal. Zero is
/// `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRatFunc {
    num: QPoly,
    den: QPoly,
}

/// Working form `k * n / d` with `n`, `d` coprime primitive integer
/// polynomials whose leading coefficients are positive.
struct Frac {
    k: BigRat,
    n: ZPoly,
    d: ZPoly,
}

impl Frac {
    fn zero() -> Self {
        Self {
            k: BigRat::zero(),
            n: Vec::new(),
            d: vec![BigInt::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.n.is_empty()
    }

    fn of(f: &QRatFunc) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let (a, n) = f.num.to_primitive();
        let (b, d) = f.den.to_primitive();
        Self { k: a / b, n, d }
    }

    /// Reduces an arbitrary `k * n / d` (with `d != 0`).
    fn reduce(k: BigRat, n: &[BigInt], d: &[BigInt]) -> Self {
        let (cn, n) = zpoly::primitive(n);
        if n.is_empty() || k.is_zero() {
            return Self::zero();
        }
        let (cd, d) = zpoly::primitive(d);
        let g = zpoly::gcd(&n, &d);
        Self {
            k: k * BigRat::new(cn, cd),
            n: g.cof_a,
            d: g.cof_b,
        }
    }

    fn into_canonical(self) -> QRatFunc {
        if self.is_zero() {
            return QRatFunc::zero();
        }
        let lc = BigRat::from_integer(self.d.last().unwrap().clone());
        QRatFunc {
            num: QPoly::from_zpoly(&self.n, &(self.k / &lc)),
            den: QPoly::from_zpoly(&self.d, &lc.recip()),
        }
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return Self { k: other.k.clone(), n: other.n.clone(), d: other.d.clone() };
        }
        if other.is_zero() {
            return Self { k: self.k.clone(), n: self.n.clone(), d: self.d.clone() };
        }
        // k1 n1/(g d1') + k2 n2/(g d2') = (k1 n1 d2' + k2 n2 d1') / (g d1' d2');
        // the sum is already coprime to d1' d2', so only g needs reducing.
        let (g, d1, d2) = if self.d == other.d {
            (self.d.clone(), vec![BigInt::one()], vec![BigInt::one()])
        } else {
            let c = zpoly::gcd(&self.d, &other.d);
            (c.gcd, c.cof_a, c.cof_b)
        };
        let (p1, s1) = (self.k.numer(), self.k.denom());
        let (p2, s2) = (other.k.numer(), other.k.denom());
        let left = zpoly::scale(&zpoly::mul(&self.n, &d2), &(p1 * s2));
        let right = zpoly::scale(&zpoly::mul(&other.n, &d1), &(p2 * s1));
        let sum = zpoly::add(&left, &right);
        if sum.is_empty() {
            return Self::zero();
        }
        let (c, sum) = zpoly::primitive(&sum);
        let red = zpoly::gcd(&sum, &g);
        let (cg, g) = zpoly::primitive(&red.cof_b);
        Self {
            k: BigRat::new(c, s1 * s2 * cg),
            n: red.cof_a,
            d: zpoly::mul(&g, &zpoly::mul(&d1, &d2)),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g1 = zpoly::gcd(&self.n, &other.d);
        let g2 = zpoly::gcd(&other.n, &self.d);
        Self {
            k: &self.k * &other.k,
            n: zpoly::mul(&g1.cof_a, &g2.cof_a),
            d: zpoly::mul(&g2.cof_b, &g1.cof_b),
        }
    }
}

impl QRatFunc {
    pub fn zero() -> Self {
        Self {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRat::from_integer(c.into()))
    }

    pub fn from_poly(p: QPoly) -> Self {
        Self {
            num: p,
            den: QPoly::one(),
        }
    }

    /// `q^exp` for any integer exponent; negative powers become `1 / q^k`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(BigRat::one(), exp)
    }

    pub fn monomial(c: BigRat, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if exp >= 0 {
            Self::from_poly(QPoly::monomial(c, exp as u32))
        } else {
            Self {
                num: QPoly::constant(c),
                den: QPoly::q_pow(exp.unsigned_abs() as u32),
            }
        }
    }

    /// Builds `Σ c_e q^e` over possibly negative exponents.
    pub fn from_laurent<I: IntoIterator<Item = (i64, BigRat)>>(terms: I) -> Self {
        let terms: Vec<(i64, BigRat)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let Some(low) = terms.iter().map(|(e, _)| *e).min() else {
            return Self::zero();
        };
        let shift = low.min(0);
        let num = QPoly::from_terms(terms.into_iter().map(|(e, c)| ((e - shift) as u32, c)));
        if num.is_zero() {
            return Self::zero();
        }
        if shift == 0 {
            return Self::from_poly(num);
        }
        match num.low_degree() {
            // the lowest surviving term is below q^0 so num(0) != 0 and num, q^k are coprime
            Some(0) => Self {
                num,
                den: QPoly::q_pow(shift.unsigned_abs() as u32),
            },
            _ => Self::new(num, QPoly::q_pow(shift.unsigned_abs() as u32))
                .expect("q^k is never zero"),
        }
    }

    /// Reduces `num / den` to canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (a, n) = num.to_primitive();
        let (b, d) = den.to_primitive();
        if a.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Frac::reduce(a / b, &n, &d).into_canonical())
    }

    /// Canonical form of `n / d` for integer polynomials, `d` non-zero.
    pub(crate) fn from_int_ratio(n: &[BigInt], d: &[BigInt]) -> Self {
        assert!(!d.is_empty(), "zero denominator");
        Frac::reduce(BigRat::one(), n, d).into_canonical()
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn into_parts(self) -> (QPoly, QPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&QPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = Frac::of(self);
        Ok(Frac { k: f.k.recip(), n: f.d, d: f.n }.into_canonical())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        // powers of a reduced fraction stay reduced
        let f = Frac::of(self);
        if f.is_zero() {
            return if n == 0 { Self::one() } else { Self::zero() };
        }
        let mut n_acc = vec![BigInt::one()];
        let mut d_acc = vec![BigInt::one()];
        for _ in 0..n {
            n_acc = zpoly::mul(&n_acc, &f.n);
            d_acc = zpoly::mul(&d_acc, &f.d);
        }
        Frac {
            k: num_traits::pow(f.k, n as usize),
            n: n_acc,
            d: d_acc,
        }
        .into_canonical()
    }

    /// Integer power; negative exponents fail on zero.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let p = self.pow(n.unsigned_abs() as u32);
        if n < 0 {
            p.recip()
        } else {
            Ok(p)
        }
    }

    pub fn scale(&self, k: &BigRat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }

    /// Substitutes `q -> q^k`; reducedness and monicity are preserved.
    pub fn dilate(&self, k: u32) -> Self {
        Self {
            num: self.num.dilate(k),
            den: self.den.dilate(k),
        }
    }

    /// Exact value at `q = at`.
    pub fn eval(&self, at: &BigRat) -> Result<BigRat> {
        let (b, d) = self.den.to_primitive();
        let den = eval_scaled(&d, at);
        if den.is_zero() {
            return Err(Error::Pole {
                at: format_rat(at),
            });
        }
        let (a, n) = self.num.to_primitive();
        Ok(a / b * eval_scaled(&n, at) / den)
    }
}

impl Default for QRatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<QPoly> for QRatFunc {
    fn from(p: QPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn add(self, rhs: &QRatFunc) -> QRatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return QRatFunc::from_poly(&self.num + &rhs.num);
        }
        Frac::of(self).add(&Frac::of(rhs)).into_canonical()
    }
}

impl Sub<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn sub(self, rhs: &QRatFunc) -> QRatFunc {
        self + &(-rhs)
    }
}

impl Neg for &QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        QRatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for QRatFunc {
    type Output = QRatFunc;
    fn neg(self) -> QRatFunc {
        -&self
    }
}

impl Mul<&QRatFunc> for &QRatFunc {
    type Output = QRatFunc;
    fn mul(self, rhs: &QRatFunc) -> QRatFunc {
        if self.is_zero() || rhs.is_zero() {
            return QRatFunc::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return QRatFunc::from_poly(&self.num * &rhs.num);
        }
        Frac::of(self).mul(&Frac::of(rhs)).into_canonical()
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QRatFunc {
            type Output = QRatFunc;
            fn $m(self, rhs: QRatFunc) -> QRatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QRatFunc> for QRatFunc {
            type Output = QRatFunc;
            fn $m(self, rhs: &QRatFunc) -> QRatFunc {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Sum for QRatFunc {
    /// Accumulates in working form so a long sum over a shared
    /// denominator is reduced once per term against that denominator only.
    fn sum<I: Iterator<Item = QRatFunc>>(iter: I) -> Self {
        iter.fold(Frac::zero(), |acc, f| acc.add(&Frac::of(&f)))
            .into_canonical()
    }
}

impl<'a> Sum<&'a QRatFunc> for QRatFunc {
    fn sum<I: Iterator<Item = &'a QRatFunc>>(iter: I) -> Self {
        iter.fold(Frac::zero(), |acc, f| acc.add(&Frac::of(f)))
            .into_canonical()
    }
}

/// `num / den`, each polynomial in canonical text.
impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / {}", self.num, self.den)
    }
}

impl FromStr for QRatFunc {
    type Err = Error;

    /// Parses `num / den` and re-canonicalises, so any valid pair of
    /// polynomials is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once(" / ")
            .ok_or_else(|| Error::Parse(format!("expected `num / den`, got `{s}`")))?;
        Self::new(n.parse()?, d.parse()?)
    }
}

/// `{"num": [[exp, "p/r"], ...], "den": [...]}` with ascending exponents.
#[derive(Serialize, Deserialize)]
struct RatFuncJson {
    num: Vec<(u32, String)>,
    den: Vec<(u32, String)>,
}

fn poly_to_json(p: &QPoly) -> Vec<(u32, String)> {
    p.terms().map(|(e, c)| (e, format_rat(c))).collect()
}

fn poly_from_json(terms: &[(u32, String)]) -> Result<QPoly> {
    let mut last = None;
    let mut out = Vec::with_capacity(terms.len());
    for (e, c) in terms {
        if last.is_some_and(|l| l >= *e) {
            return Err(Error::Parse("exponents must be strictly ascending".into()));
        }
        last = Some(*e);
        out.push((*e, parse_rat(c)?));
    }
    Ok(QPoly::from_terms(out))
}

impl Serialize for QRatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RatFuncJson {
            num: poly_to_json(&self.num),
            den: poly_to_json(&self.den),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QRatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RatFuncJson::deserialize(deserializer)?;
        let num = poly_from_json(&raw.num).map_err(serde::de::Error::custom)?;
        let den = poly_from_json(&raw.den).map_err(serde::de::Error::custom)?;
        QRatFunc::new(num, den).map_err(serde::de::Error::custom)
    }
}

impl QRatFunc {
    /// True when the stored fields already satisfy the canonical-form invariants.
    pub fn is_canonical(&self) -> bool {
        if self.den.is_zero() || self.den.leading_coeff().is_some_and(|c| !c.is_one()) {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        self.num.gcd(&self.den).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::from_int_coeffs(cs.iter().copied())
    }

    #[test]
    fn construction_reduces_and_normalizes() {
        // (2 - 2q^2) / (4 + 4q) = (1 - q)/2 = (-1/2 q + 1/2) / 1
        let f = QRatFunc::new(poly(&[2, 0, -2]), poly(&[4, 4])).unwrap();
        assert_eq!(f.to_string(), "1/2 + -1/2*q / 1");
        assert!(f.is_canonical());
        // 1 / (2q + 1) has monic den q + 1/2
        let g = QRatFunc::new(poly(&[1]), poly(&[1, 2])).unwrap();
        assert_eq!(g.to_string(), "1/2 / 1/2 + q");
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            QRatFunc::new(poly(&[1]), QPoly::zero()),
            Err(Error::DivisionByZero)
        );
        assert!(QRatFunc::zero().recip().is_err());
    }

    #[test]
    fn arithmetic_on_negative_powers() {
        let inv_q = QRatFunc::q_pow(-1);
        let q = QRatFunc::q_pow(1);
        assert!((&inv_q * &q).is_one());
        let s = &inv_q + &q; // (1 + q^2)/q
        assert_eq!(s.to_string(), "1 + q^2 / q");
        assert_eq!((&s - &inv_q), q);
    }

    #[test]
    fn laurent_construction() {
        let f = QRatFunc::from_laurent([(-2, r(1, 1)), (0, r(3, 1)), (1, r(-1, 1))]);
        assert_eq!(f.to_string(), "1 + 3*q^2 + -1*q^3 / q^2");
        let cancelled = QRatFunc::from_laurent([(-1, r(0, 1)), (2, r(1, 1))]);
        assert_eq!(cancelled, QRatFunc::q_pow(2));
        assert_eq!(QRatFunc::from_laurent(Vec::new()), QRatFunc::zero());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = QRatFunc::new(poly(&[1]), poly(&[-1, 1])).unwrap();
        assert_eq!(f.eval(&r(3, 1)).unwrap(), r(1, 2));
        assert!(matches!(f.eval(&r(1, 1)), Err(Error::Pole { .. })));
    }

    #[test]
    fn sum_matches_pairwise_addition() {
        let terms: Vec<QRatFunc> = (1..6)
            .map(|k| QRatFunc::new(poly(&[k]), poly(&[1, k, 1])).unwrap())
            .collect();
        let pairwise = terms.iter().fold(QRatFunc::zero(), |acc, t| &acc + t);
        let summed: QRatFunc = terms.iter().sum();
        assert_eq!(pairwise, summed);
        assert!(summed.is_canonical());
    }

    #[test]
    fn powers_and_inverse_powers() {
        let f = QRatFunc::new(poly(&[1, 1]), poly(&[0, 2])).unwrap();
        let cube = f.pow(3);
        assert_eq!(cube, &(&f * &f) * &f);
        assert!((&cube * &f.powi(-3).unwrap()).is_one());
        assert_eq!(QRatFunc::zero().pow(0), QRatFunc::one());
    }

    #[test]
    fn text_and_json_round_trip() {
        let f = QRatFunc::new(poly(&[0, -1]), poly(&[1, 0, 1])).unwrap();
        assert_eq!(f.to_string(), "-1*q / 1 + q^2");
        assert_eq!(f.to_string().parse::<QRatFunc>().unwrap(), f);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num":[[1,"-1"]],"den":[[0,"1"],[2,"1"]]}"#);
        let back: QRatFunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
