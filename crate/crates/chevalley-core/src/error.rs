use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values from different ring contexts were combined.
    ContextMismatch,
    /// Inversion (or a constructor requiring a unit) was given a
    /// radical element.
    NonUnit,
    /// A matrix expected to be invertible over the local ring is not.
    NotInvertible,
    /// Root systems of type B_l need rank at least 2.
    RankTooSmall(usize),
    /// A coordinate vector is not a root of the system.
    NotARoot,
    /// The operation does not support the given ring.
    UnsupportedRing(&'static str),
    /// Input matrix is not congruent to the identity modulo the radical.
    NotRadicalCongruent,
    /// Reconstruction converged to coefficients that do not reproduce
    /// the input matrix (the input is not in the decomposable set).
    ReconstructionMismatch,
    /// Radical-coefficient tuple violates its shape invariants.
    InvalidCoefficients(String),
    /// A matrix-unit recipe failed exact certification.
    CertificationFailed { row: usize, col: usize },
    /// Caller violated a documented precondition.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "ring context mismatch"),
            Error::NonUnit => write!(f, "element is not a unit"),
            Error::NotInvertible => write!(f, "matrix is not invertible over the local ring"),
            Error::RankTooSmall(l) => write!(f, "rank {l} too small for B_l (need l >= 2)"),
            Error::NotARoot => write!(f, "vector is not a root of the system"),
            Error::UnsupportedRing(what) => write!(f, "unsupported ring: {what}"),
            Error::NotRadicalCongruent => {
                write!(f, "matrix is not congruent to the identity mod the radical")
            }
            Error::ReconstructionMismatch => {
                write!(f, "matrix is not a product of the decomposed form")
            }
            Error::InvalidCoefficients(why) => write!(f, "invalid radical coefficients: {why}"),
            Error::CertificationFailed { row, col } => {
                write!(f, "matrix unit certification failed at ({row}, {col})")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
        }
    }
}
