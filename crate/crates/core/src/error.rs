use thiserror::Error;

/// Every failure the library can report.
///
/// Validation variants are named after the invariant they found violated so
/// that the CLI can print the variant name verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotPrime: {0} is not prime")]
    NotPrime(u64),
    #[error("Shape: {0}")]
    Shape(String),
    #[error("BadRank: rank {n} is not a positive multiple of p-1 = {p_minus_one}")]
    BadRank { n: usize, p_minus_one: u64 },
    #[error("WrongOrder: {0}")]
    WrongOrder(String),
    #[error("NotFree: fixed vector ({})", fmt_vec(.fixed_vector))]
    NotFree { fixed_vector: Vec<String> },
    #[error("MismatchedPrime: {0} vs {1}")]
    MismatchedPrime(u64, u64),
    #[error("DegreeOutOfRange: {0}")]
    DegreeOutOfRange(String),
    #[error("ExteriorTooLarge: C({n},{m}) = {dim} exceeds the limit {limit} (set CRYSTALK_MAX_EXT_DIM to raise it)")]
    ExteriorTooLarge { n: usize, m: usize, dim: u128, limit: u128 },
    #[error("POddRequired: {0} requires an odd prime")]
    POddRequired(&'static str),
    #[error("NonIntegral: {0}")]
    NonIntegral(String),
    #[error("CokernelMismatch: {0}")]
    CokernelMismatch(String),
    #[error("Internal: {0}")]
    Internal(String),
}

fn fmt_vec(v: &[String]) -> String {
    v.join(",")
}

impl Error {
    /// The variant name, used for exit diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::Shape(_) => "Shape",
            Error::BadRank { .. } => "BadRank",
            Error::WrongOrder(_) => "WrongOrder",
            Error::NotFree { .. } => "NotFree",
            Error::MismatchedPrime(..) => "MismatchedPrime",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::ExteriorTooLarge { .. } => "ExteriorTooLarge",
            Error::POddRequired(_) => "POddRequired",
            Error::NonIntegral(_) => "NonIntegral",
            Error::CokernelMismatch(_) => "CokernelMismatch",
            Error::Internal(_) => "Internal",
        }
    }

    /// True for errors caused by bad input rather than by a broken invariant
    /// inside the library.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::Shape(_)
                | Error::BadRank { .. }
                | Error::WrongOrder(_)
                | Error::NotFree { .. }
                | Error::MismatchedPrime(..)
                | Error::DegreeOutOfRange(_)
                | Error::ExteriorTooLarge { .. }
                | Error::POddRequired(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
