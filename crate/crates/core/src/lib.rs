//! Exact mixed moments and linearization coefficients of monic orthogonal
//! polynomials, computed along several independent combinatorial routes.
//!
//! * [`ring`]: big rationals and sparse polynomials in b_i, λ_i, γ_i, √λ_i, α.
//! * [`orthopoly`]: three-term recurrences, σ tables, transfer matrices.
//! * [`motzkin`]: weighted Motzkin paths and their enumeration.
//! * [`lecturehall`]: the two-level symmetric lecture hall graph.
//! * [`bijection`]: weight-preserving maps between the two path models.
//! * [`quantum`]: oscillator and hydrogen position moments with integral oracles.
//! * [`verify`]: batch identity checks with pass/fail reports.

mod error;

pub mod bijection;
pub mod lecturehall;
pub mod motzkin;
pub mod orthopoly;
pub mod quantum;
pub mod ring;
pub mod verify;

pub use error::Error;
pub use ring::{Indet, Monomial, Poly, Rat};

/// Default ceiling on the number of paths a single enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Environment variable that overrides [`DEFAULT_ENUM_CAP`].
pub const ENUM_CAP_ENV: &str = "ORTHOPATH_ENUM_CAP";

/// Enumeration cap from `ORTHOPATH_ENUM_CAP`, falling back to the default.
pub fn enum_cap_from_env() -> u64 {
    std::env::var(ENUM_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_ENUM_CAP)
}
