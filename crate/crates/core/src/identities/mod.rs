//! Symmetry identities for the (h,q)-Euler polynomials and the q-Euler zeta
//! function: exact side builders, the numeric zeta symmetry check and the
//! grid verification engine.

mod exact;
mod grid;
mod report;
mod zeta_sym;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{
    prop23_check, s_sum, thm22_check, thm22_side, thm24_check, thm24_side, thm25_check, thm25_side,
    umbral_check,
};
pub use grid::{verify_grid, GridSpec, SValue};
pub use report::{IdentityName, IdentityReport, ParamRecord, ReportValue};
pub use zeta_sym::{thm21_check, thm21_exact_check, thm21_side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Parameters shared by the `a <-> b` symmetry identities. Both moduli must be odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymCheckParams {
    pub a: u32,
    pub b: u32,
    pub n: u32,
    pub h: i64,
    pub r: u32,
    pub x: u32,
}

impl SymCheckParams {
    pub fn validate(&self) -> Result<()> {
        if self.a % 2 == 0 || self.b % 2 == 0 {
            return Err(Error::Parity { a: self.a, b: self.b });
        }
        Ok(())
    }

    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, ..*self }
    }

    pub(crate) fn record(&self) -> ParamRecord {
        ParamRecord::new()
            .with("a", self.a)
            .with("b", self.b)
            .with("n", self.n)
            .with("h", self.h)
            .with("r", self.r)
            .with("x", self.x)
    }
}
