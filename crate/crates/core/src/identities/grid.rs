//! Cartesian-product grids of identity checks.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exact::{prop23_check, thm22_check, thm24_check, thm25_check, umbral_check};
use super::zeta_sym::{thm21_check, thm21_exact_check};
use super::{IdentityName, IdentityReport, ParamRecord, SymCheckParams};
use crate::error::{Error, Result};
use crate::zeta::lemma_1_1_check;

/// A value of `s`: a real number, `{"re": .., "im": ..}`, or text such as `"2+1i"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SValue {
    Real(f64),
    Parts { re: f64, im: f64 },
    Text(String),
}

impl SValue {
    pub fn to_complex(&self) -> Result<Complex64> {
        match self {
            Self::Real(re) => Ok(Complex64::new(*re, 0.0)),
            Self::Parts { re, im } => Ok(Complex64::new(*re, *im)),
            Self::Text(t) => t
                .trim()
                .parse::<Complex64>()
                .map_err(|_| Error::Parse(format!("bad complex value `{t}`"))),
        }
    }
}

/// A grid description: integer ranges per parameter name, plus the numeric
/// axes `s`, `q` and `tol` for the zeta identities.
///
/// `dh` may replace `h` and means `h = r + dh`. For the zeta symmetry
/// `exact: true` checks each `s = -n` against the exact Euler symmetry
/// value instead of taking `s` from the `s` list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub identity: IdentityName,
    #[serde(default)]
    pub ranges: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub s: Vec<SValue>,
    #[serde(default)]
    pub q: Vec<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub exact: bool,
}

impl GridSpec {
    pub fn new(identity: IdentityName) -> Self {
        Self { identity, ranges: BTreeMap::new(), s: Vec::new(), q: Vec::new(), tol: None, exact: false }
    }

    pub fn range(mut self, name: &str, values: impl IntoIterator<Item = i64>) -> Self {
        self.ranges.insert(name.to_string(), values.into_iter().collect());
        self
    }

    /// Integer parameters in iteration order; `h` stands for `h` or `dh`.
    pub fn int_params(&self) -> &'static [&'static str] {
        match self.identity {
            IdentityName::EulerSymmetry | IdentityName::PowerSumSymmetry => &["a", "b", "n", "h", "r", "x"],
            IdentityName::ZetaSymmetry if self.exact => &["a", "b", "n", "h", "r", "x"],
            IdentityName::ZetaSymmetry => &["a", "b", "h", "r", "x"],
            IdentityName::ShiftSymmetry => &["m", "n", "h", "r", "x", "y"],
            IdentityName::Addition => &["n", "h", "r", "x", "y"],
            IdentityName::Umbral => &["n", "h", "r", "x"],
            IdentityName::Interpolation => &["n", "x", "h", "r"],
        }
    }

    fn default_tol(&self) -> f64 {
        match self.identity {
            IdentityName::Interpolation => 1e-9,
            _ => 1e-8,
        }
    }

    fn uses_s(&self) -> bool {
        self.identity == IdentityName::ZetaSymmetry && !self.exact
    }

    fn uses_q(&self) -> bool {
        !self.identity.is_exact()
    }

    /// Checks that every required axis is present and that no unknown
    /// parameter is given.
    pub fn validate(&self) -> Result<()> {
        let names = self.int_params();
        for key in self.ranges.keys() {
            let known = names.contains(&key.as_str()) || (key == "dh" && names.contains(&"h"));
            if !known {
                return Err(Error::Domain(format!("parameter `{key}` does not apply to {}", self.identity)));
            }
        }
        if self.ranges.contains_key("h") && self.ranges.contains_key("dh") {
            return Err(Error::Domain("give either h or dh, not both".into()));
        }
        for name in names {
            let present = self.ranges.contains_key(*name) || (*name == "h" && self.ranges.contains_key("dh"));
            if !present {
                return Err(Error::Domain(format!("missing range for `{name}`")));
            }
        }
        if self.uses_s() && self.s.is_empty() {
            return Err(Error::Domain("missing values for `s`".into()));
        }
        if self.uses_q() && self.q.is_empty() {
            return Err(Error::Domain("missing values for `q`".into()));
        }
        for s in &self.s {
            s.to_complex()?;
        }
        Ok(())
    }

    /// All grid points in lexicographic parameter order.
    pub fn points(&self) -> Result<Vec<GridPoint>> {
        self.validate()?;
        let tol = self.tol.unwrap_or_else(|| self.default_tol());
        let axes: Vec<Vec<i64>> = self
            .int_params()
            .iter()
            .map(|name| {
                let key = if *name == "h" && self.ranges.contains_key("dh") { "dh" } else { name };
                let mut v = self.ranges[key].clone();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        let s_axis: Vec<Option<Complex64>> = if self.uses_s() {
            let mut v = self.s.iter().map(SValue::to_complex).collect::<Result<Vec<_>>>()?;
            v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
            v.dedup();
            v.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        let q_axis: Vec<Option<f64>> = if self.uses_q() {
            let mut v = self.q.clone();
            v.sort_by(f64::total_cmp);
            v.dedup();
            v.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        let relative_h = self.ranges.contains_key("dh");
        let names = self.int_params();
        let h_pos = names.iter().position(|n| *n == "h");
        let r_pos = names.iter().position(|n| *n == "r");
        let mut out = Vec::new();
        for ints in cartesian(&axes) {
            let mut values: Vec<(&'static str, i64)> = names.iter().copied().zip(ints).collect();
            if relative_h {
                if let (Some(hp), Some(rp)) = (h_pos, r_pos) {
                    values[hp].1 += values[rp].1;
                }
            }
            for s in &s_axis {
                for q in &q_axis {
                    out.push(GridPoint { values: values.clone(), s: *s, q: *q, tol });
                }
            }
        }
        Ok(out)
    }
}

fn cartesian(axes: &[Vec<i64>]) -> Vec<Vec<i64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push(*v);
                    p
                })
            })
            .collect()
    })
}

/// One point of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub values: Vec<(&'static str, i64)>,
    pub s: Option<Complex64>,
    pub q: Option<f64>,
    pub tol: f64,
}

impl GridPoint {
    fn get(&self, name: &str) -> i64 {
        self.values.iter().find(|(k, _)| *k == name).map(|(_, v)| *v).unwrap_or(0)
    }

    fn unsigned(&self, name: &str) -> Result<u32> {
        u32::try_from(self.get(name))
            .map_err(|_| Error::Domain(format!("{name} = {} must be a non-negative integer", self.get(name))))
    }

    fn record(&self) -> ParamRecord {
        let mut rec = ParamRecord::new();
        for (k, v) in &self.values {
            rec = rec.with(k, v);
        }
        if let Some(s) = self.s {
            rec = rec.with("s", s);
        }
        if let Some(q) = self.q {
            rec = rec.with("q", q).with("tol", self.tol);
        }
        rec
    }

    fn sym(&self) -> Result<SymCheckParams> {
        let n = if self.values.iter().any(|(k, _)| *k == "n") { self.unsigned("n")? } else { 0 };
        Ok(SymCheckParams {
            a: self.unsigned("a")?,
            b: self.unsigned("b")?,
            n,
            h: self.get("h"),
            r: self.unsigned("r")?,
            x: self.unsigned("x")?,
        })
    }

    pub fn evaluate(&self, identity: IdentityName) -> IdentityReport {
        self.try_evaluate(identity)
            .unwrap_or_else(|e| IdentityReport::failed(identity, self.record(), &e))
    }

    fn try_evaluate(&self, identity: IdentityName) -> Result<IdentityReport> {
        let q = self.q.unwrap_or(0.0);
        match identity {
            IdentityName::EulerSymmetry => thm22_check(&self.sym()?),
            IdentityName::PowerSumSymmetry => thm24_check(&self.sym()?),
            IdentityName::ZetaSymmetry => match self.s {
                Some(s) => thm21_check(s, &self.sym()?, q, self.tol),
                None => thm21_exact_check(&self.sym()?, q, self.tol),
            },
            IdentityName::ShiftSymmetry => Ok(thm25_check(
                self.unsigned("m")?,
                self.unsigned("n")?,
                self.get("h"),
                self.unsigned("r")?,
                self.get("x"),
                self.get("y"),
            )),
            IdentityName::Addition => Ok(prop23_check(
                self.unsigned("n")?,
                self.get("h"),
                self.unsigned("r")?,
                self.get("x"),
                self.get("y"),
            )),
            IdentityName::Umbral => Ok(umbral_check(
                self.unsigned("n")?,
                self.get("h"),
                self.unsigned("r")?,
                self.get("x"),
            )),
            IdentityName::Interpolation => lemma_1_1_check(
                self.unsigned("n")?,
                self.get("x"),
                self.get("h"),
                self.unsigned("r")?,
                q,
                self.tol,
            ),
        }
    }
}

/// Evaluates every point of the grid, in parallel on the current rayon
/// pool. Reports come back in lexicographic parameter order; points that
/// fail to evaluate become failed reports. A malformed grid is an error.
pub fn verify_grid(spec: &GridSpec) -> Result<Vec<IdentityReport>> {
    let points = spec.points()?;
    Ok(points.par_iter().map(|p| p.evaluate(spec.identity)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_single_point_grids() {
        let spec = GridSpec::new(IdentityName::Umbral)
            .range("n", [])
            .range("h", [0])
            .range("r", [1])
            .range("x", [1]);
        assert!(verify_grid(&spec).unwrap().is_empty());
        let spec = spec.range("n", [3]);
        let reports = verify_grid(&spec).unwrap();
        assert_eq!(reports.len(), 1);
        assert!(reports[0].passed());
        assert_eq!(reports[0].params.to_string(), "n=3 h=0 r=1 x=1");
    }

    #[test]
    fn ordering_is_lexicographic() {
        let spec = GridSpec::new(IdentityName::Addition)
            .range("n", [2, 1])
            .range("h", [1])
            .range("r", [1])
            .range("x", [1, 0])
            .range("y", [0]);
        let order: Vec<String> = verify_grid(&spec).unwrap().iter().map(|r| r.params.to_string()).collect();
        assert_eq!(
            order,
            [
                "n=1 h=1 r=1 x=0 y=0",
                "n=1 h=1 r=1 x=1 y=0",
                "n=2 h=1 r=1 x=0 y=0",
                "n=2 h=1 r=1 x=1 y=0"
            ]
        );
    }

    #[test]
    fn point_errors_become_failed_reports() {
        let spec = GridSpec::new(IdentityName::EulerSymmetry)
            .range("a", [1, 2])
            .range("b", [1])
            .range("n", [1])
            .range("h", [1])
            .range("r", [1])
            .range("x", [0]);
        let reports = verify_grid(&spec).unwrap();
        assert!(reports[0].passed());
        assert!(!reports[1].passed());
        assert!(reports[1].error.as_deref().unwrap().contains("odd"));
    }

    #[test]
    fn malformed_grids_are_rejected() {
        let spec = GridSpec::new(IdentityName::Umbral).range("n", [1]);
        assert!(verify_grid(&spec).is_err());
        let spec = GridSpec::new(IdentityName::Umbral)
            .range("n", [1])
            .range("h", [1])
            .range("r", [1])
            .range("x", [1])
            .range("a", [1]);
        assert!(verify_grid(&spec).is_err());
    }

    #[test]
    fn relative_h_and_json_config() {
        let json = r#"{"identity": "lemma1.1", "ranges": {"n": [1], "x": [1], "r": [1, 2], "dh": [0]}, "q": [0.5], "tol": 1e-9}"#;
        let spec: GridSpec = serde_json::from_str(json).unwrap();
        let reports = verify_grid(&spec).unwrap();
        let hs: Vec<&str> = reports.iter().map(|r| r.params.get("h").unwrap()).collect();
        assert_eq!(hs, ["1", "2"]);
        assert!(reports.iter().all(IdentityReport::passed));
        let json = r#"{"identity": "thm2.1", "ranges": {"a": [1], "b": [3], "h": [2], "r": [1], "x": [1]}, "s": [-1, "2+1i", {"re": 1.5, "im": 0.5}], "q": [0.5]}"#;
        let spec: GridSpec = serde_json::from_str(json).unwrap();
        let reports = verify_grid(&spec).unwrap();
        assert_eq!(reports.len(), 3);
        assert!(reports.iter().all(IdentityReport::passed));
    }
}
