//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operator dimensions do not match the operation's requirement.
    #[error("DimMismatch: expected dimension {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    /// Matrix deviates from Hermitian symmetry beyond tolerance.
    #[error("NotHermitian: deviation {deviation:.3e} from conjugate symmetry")]
    NotHermitian { deviation: f64 },

    /// Input does not describe a valid density matrix.
    #[error("NotAState: {0}")]
    NotAState(String),

    /// A Bloch vector that must have unit length does not.
    #[error("NotUnitVector: norm {norm} differs from 1")]
    NotUnitVector { norm: f64 },

    /// The reference state fails the partial-transpose separability test.
    #[error("NotSeparable: reference state has a negative partial transpose")]
    NotSeparable,

    /// Two states coincide, leaving no direction to build a witness from.
    #[error("ZeroDirection: states coincide within tolerance")]
    ZeroDirection,

    /// Unrecognized mesh region name.
    #[error("UnknownRegion: {0}")]
    UnknownRegion(String),
}
