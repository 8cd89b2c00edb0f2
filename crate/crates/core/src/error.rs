use crate::ring::Indet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no value assigned to indeterminate {0}")]
    MissingAssignment(Indet),
    #[error("s{0} has an odd exponent; the path is not closed")]
    OddSqrtExponent(usize),
    #[error("transfer matrix of dimension {dim} is too small for power {power} and index {index}")]
    DimensionTooSmall { dim: usize, power: usize, index: usize },
    #[error("enumeration would visit {count} paths, above the cap of {cap}")]
    SizeGuard { count: String, cap: u64 },
    #[error("path contains a horizontal step")]
    HasHorizontalStep,
    #[error("path endpoints do not fit the bijection: {0}")]
    BadEndpoints(String),
    #[error("recurrence has b_{0} != 0")]
    NonzeroB(usize),
    #[error("gamma decomposition does not reproduce {0}")]
    GammaMismatch(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("route `{0}` does not apply here")]
    UnsupportedRoute(String),
    #[error("parse error: {0}")]
    Parse(String),
}
