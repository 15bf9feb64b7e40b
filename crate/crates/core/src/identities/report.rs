use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::qalg::QRatFunc;

/// The identities this crate can check. `as_str` gives the stable
/// command-line token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityName {
    /// Zeta-function symmetry under `a <-> b` (numeric).
    ZetaSymmetry,
    /// Euler-polynomial symmetry under `a <-> b` with shifted arguments (exact).
    EulerSymmetry,
    /// The same symmetry rewritten through alternating q-power sums (exact).
    PowerSumSymmetry,
    /// Two-index symmetry mixing `[x]_q` and `[-x]_q` (exact).
    ShiftSymmetry,
    /// Addition theorem for the argument (exact).
    Addition,
    /// Umbral expansion around argument zero (exact).
    Umbral,
    /// Zeta values at non-positive integers reproduce the polynomials (numeric).
    Interpolation,
}

impl IdentityName {
    pub const ALL: [IdentityName; 7] = [
        Self::ZetaSymmetry,
        Self::EulerSymmetry,
        Self::PowerSumSymmetry,
        Self::ShiftSymmetry,
        Self::Addition,
        Self::Umbral,
        Self::Interpolation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::ZetaSymmetry => "thm2.1",
            Self::EulerSymmetry => "thm2.2",
            Self::PowerSumSymmetry => "thm2.4",
            Self::ShiftSymmetry => "thm2.5",
            Self::Addition => "prop2.3",
            Self::Umbral => "umbral",
            Self::Interpolation => "lemma1.1",
        }
    }

    pub fn is_exact(self) -> bool {
        !matches!(self, Self::ZetaSymmetry | Self::Interpolation)
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity `{s}`")))
    }
}

impl Serialize for IdentityName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for IdentityName {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Named parameters of one check, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamRecord(pub Vec<(&'static str, String)>);

impl ParamRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &'static str, value: impl fmt::Display) -> Self {
        self.0.push((name, value.to_string()));
        self
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| *k == name).map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for ParamRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for ParamRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// One side of an identity: canonical text for exact checks, a complex
/// number for numeric ones.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Exact(String),
    Numeric(Complex64),
}

impl From<&QRatFunc> for ReportValue {
    fn from(f: &QRatFunc) -> Self {
        Self::Exact(f.to_string())
    }
}

impl fmt::Display for ReportValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(s) => f.write_str(s),
            Self::Numeric(z) => write!(f, "{}{:+}i", z.re, z.im),
        }
    }
}

impl Serialize for ReportValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Exact(s) => serializer.serialize_str(s),
            Self::Numeric(z) => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("re", &z.re)?;
                map.serialize_entry("im", &z.im)?;
                map.end()
            }
        }
    }
}

/// Pass/fail record for one identity check.
///
/// For exact checks `equal` means the canonical forms are identical and
/// `deviation` is 0 (or 1 on mismatch). Points that could not be evaluated
/// carry `error` and are failures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: IdentityName,
    pub params: ParamRecord,
    pub lhs: Option<ReportValue>,
    pub rhs: Option<ReportValue>,
    pub equal: bool,
    pub deviation: f64,
    pub error: Option<String>,
}

impl IdentityReport {
    pub fn exact(identity: IdentityName, params: ParamRecord, lhs: &QRatFunc, rhs: &QRatFunc) -> Self {
        let equal = lhs == rhs;
        Self {
            identity,
            params,
            lhs: Some(lhs.into()),
            rhs: Some(rhs.into()),
            equal,
            deviation: if equal { 0.0 } else { 1.0 },
            error: None,
        }
    }

    pub fn failed(identity: IdentityName, params: ParamRecord, err: &Error) -> Self {
        Self {
            identity,
            params,
            lhs: None,
            rhs: None,
            equal: false,
            deviation: f64::INFINITY,
            error: Some(err.to_string()),
        }
    }

    pub fn passed(&self) -> bool {
        self.equal && self.error.is_none()
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} {}", self.identity, self.params)?;
        match &self.error {
            Some(e) => write!(f, " error: {e}"),
            None => write!(f, " deviation={:e}", self.deviation),
        }
    }
}
