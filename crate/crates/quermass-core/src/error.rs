//! Error type shared by all geometry and verification routines.

use core::fmt;

/// Everything that can go wrong when building bodies or evaluating
/// functionals on them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input points span an affine subspace below the requested rank and the
    /// caller did not permit a degenerate result.
    DegenerateHull,
    /// Two bodies (or a body and a direction) live in different dimensions.
    DimensionMismatch,
    /// A mixed functional was handed the wrong number of bodies.
    WrongArity,
    /// Quermassintegral index outside 0..=n.
    IndexOutOfRange,
    /// Ball or grid refinement level above the supported cap.
    LevelTooHigh,
    /// An L_p operation needs the origin strictly inside the body.
    OriginNotInterior,
    /// The direction grid is too coarse to carry the requested construction.
    GridTooCoarse,
    /// A difference functional requires the second body inside the first.
    NotNested,
    /// An inequality instance fails its theorem's hypothesis.
    HypothesisViolated,
    /// No homothety ratio places the inner body inside the outer one.
    CannotNest,
    /// A random instance could not be built after bounded retries.
    ConstructionFailed,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::DegenerateHull => "input points are affinely degenerate",
            Error::DimensionMismatch => "dimension mismatch",
            Error::WrongArity => "wrong number of bodies",
            Error::IndexOutOfRange => "index out of range",
            Error::LevelTooHigh => "refinement level too high",
            Error::OriginNotInterior => "origin is not interior to the body",
            Error::GridTooCoarse => "direction grid too coarse",
            Error::NotNested => "bodies are not nested",
            Error::HypothesisViolated => "instance violates the theorem hypothesis",
            Error::CannotNest => "no homothety ratio nests the bodies",
            Error::ConstructionFailed => "could not construct a valid instance",
        };
        f.write_str(msg)
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
