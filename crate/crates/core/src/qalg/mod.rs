//! Exact arithmetic in Q(q): rationals, sparse polynomials, canonical
//! rational functions, and the q-combinatorial building blocks.

mod comb;
mod laurent;
mod poly;
mod ratfunc;
pub(crate) mod zpoly;

pub use comb::{gauss_binom, qbracket, qfactorial, qpoch_monomial};
pub use laurent::LaurentPoly;
pub use poly::{format_rat, parse_rat, QPoly};
pub use ratfunc::QRatFunc;

/// Exact arbitrary-precision rational; always stored reduced with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// `ratfunc_eval`: exact value of `f` at `q = at`, failing at a pole of the reduced form.
pub fn ratfunc_eval(f: &QRatFunc, at: &BigRat) -> crate::Result<BigRat> {
    f.eval(at)
}

/// Binomial coefficient as an exact rational.
pub fn binomial(n: u32, k: u32) -> BigRat {
    if k > n {
        return num_traits::Zero::zero();
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1);
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    BigRat::from_integer(acc)
}
