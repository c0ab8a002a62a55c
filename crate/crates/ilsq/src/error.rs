use std::fmt;

/// Errors shared by all solver stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input shapes are inconsistent for the requested operation.
    DimensionMismatch { context: &'static str },
    /// A normal matrix failed its symmetric positive definite factorization,
    /// indicating a rank-deficient design.
    RankDeficient { context: &'static str },
    /// A matrix that must be symmetric positive definite is not.
    NotSpd { context: &'static str },
    /// The decorrelation sweep exceeded its step cap.
    ReductionStall { steps: usize, cap: usize },
    /// An exact integer computation left the 64-bit range.
    IntegerOverflow,
    /// Synthetic model generation kept producing rank-deficient designs.
    GenerationFailed { attempts: usize },
    /// A search box exceeds the configured enumeration guard.
    BoxTooLarge { size: u128, limit: u128 },
    /// A bit vector entry was not 0 or 1.
    BitOutOfRange { index: usize },
    /// A decoded value violates its per-coordinate cap constraint.
    CapViolated { coordinate: usize },
    /// The 0-1 program has no feasible point.
    Infeasible,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { context } => {
                write!(f, "DimensionMismatch: {context}")
            }
            Error::RankDeficient { context } => write!(f, "RankDeficient: {context}"),
            Error::NotSpd { context } => write!(f, "NotSpd: {context}"),
            Error::ReductionStall { steps, cap } => {
                write!(f, "ReductionStall: {steps} steps exceeded cap {cap}")
            }
            Error::IntegerOverflow => write!(
                f,
                "IntegerOverflow: exact integer arithmetic left the 64-bit range"
            ),
            Error::GenerationFailed { attempts } => {
                write!(
                    f,
                    "GenerationFailed: no full-rank design after {attempts} attempts"
                )
            }
            Error::BoxTooLarge { size, limit } => {
                write!(f, "BoxTooLarge: {size} exceeds guard {limit}")
            }
            Error::BitOutOfRange { index } => {
                write!(f, "BitOutOfRange: entry {index} is not a 0-1 value")
            }
            Error::CapViolated { coordinate } => {
                write!(
                    f,
                    "CapViolated: coordinate {coordinate} decodes outside its box"
                )
            }
            Error::Infeasible => write!(f, "Infeasible: empty feasible set"),
        }
    }
}

impl std::error::Error for Error {}
