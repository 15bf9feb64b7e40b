//! Exact and numeric computation of (h,q)-extended higher-order Euler
//! polynomials `E_{n,q}^{(h,r)}(x)` and the multiple q-Euler zeta function
//! `ζ_{q,r}^{(h)}(s,x)`, together with builders and checkers for their
//! symmetry identities under exchanging two odd moduli `a` and `b`.
//!
//! - [`qalg`]: exact arithmetic in Q(q) with canonical rational functions.
//! - [`euler`]: the closed form, two series oracles, the classical limit
//!   and the addition theorem.
//! - [`zeta`]: numeric zeta values with rigorous truncation bounds.
//! - [`identities`]: both sides of every symmetry identity, plus grid
//!   verification producing [`IdentityReport`]s.

pub mod error;
pub mod euler;
pub mod identities;
pub mod numeric;
pub mod qalg;
pub mod zeta;

pub use error::{Error, Result};
pub use euler::{
    addition_rhs, addition_rhs_mirrored, classical_euler, euler_exact, euler_multisum_num,
    euler_series_num, EulerParams,
};
pub use identities::{verify_grid, GridSpec, IdentityName, IdentityReport, ReportValue, Side, SymCheckParams};
pub use qalg::{BigRat, QPoly, QRatFunc};
pub use zeta::{zeta_multi_sum, zeta_single_sum, ZetaQuery};
