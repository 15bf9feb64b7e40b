use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The reduced denominator vanishes at the requested evaluation point.
    #[error("pole: denominator vanishes at q = {at}")]
    Pole { at: String },

    #[error("division by the zero rational function")]
    DivisionByZero,

    /// The alternating series only converges geometrically when h >= r.
    #[error("series does not converge for h = {h} < r = {r}; use the closed form")]
    ConvergenceDomain { h: i64, r: u32 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    /// Symmetry theorems require both moduli to be odd.
    #[error("moduli must be odd, got a = {a}, b = {b}")]
    Parity { a: u32, b: u32 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
