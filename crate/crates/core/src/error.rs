use core::fmt;

use crate::spin::Triad;

/// Errors raised by the 6j machinery.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A spin was negative, not a multiple of 1/2, or otherwise malformed.
    InvalidSpin,
    /// One of the four coupling triads fails the triangle rule.
    TriangleViolation(Triad),
    /// The edge lengths of a triangle do not close.
    NotATriangle { a: f64, b: f64, c: f64 },
    /// No intermediate angular momentum couples the four spins.
    EmptySubspace,
    /// A magnetic quantum number lies outside `[-j, j]` or has the wrong integrality.
    DomainError,
    /// The tridiagonal eigensolver did not converge.
    ConvergenceFailure { iterations: usize },
    /// A face of the tetrahedron has zero area, so dihedral angles are undefined.
    DegenerateFaces,
    /// The two level sets do not intersect (classically forbidden).
    NoIntersection,
    /// A bracketing search found no sign change.
    NoRoot { lo: f64, hi: f64 },
    /// The primitive Ponzano-Regge formula diverges at a caustic.
    CausticDivergence,
    /// The sign could not be fixed from the primitive limit.
    AmbiguousPhase,
    /// Operator dimension does not match the requested spin.
    DimensionMismatch { expected: usize, found: usize },
    /// Bracket requested too close to a pole of the sphere.
    PoleProximity,
    /// A potential has no turning point in its domain.
    NoTurningPoint,
    /// A potential has more than one turning point in its domain.
    MultipleTurningPoints(usize),
    /// The commutator left the tridiagonal band.
    NotTridiagonal,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpin => write!(f, "spin must be a non-negative multiple of 1/2"),
            Error::TriangleViolation(t) => write!(f, "triangle condition violated for {t}"),
            Error::NotATriangle { a, b, c } => {
                write!(f, "lengths ({a}, {b}, {c}) violate the triangle inequality")
            }
            Error::EmptySubspace => write!(f, "no intermediate coupling exists"),
            Error::DomainError => write!(f, "magnetic quantum number out of range"),
            Error::ConvergenceFailure { iterations } => {
                write!(f, "eigensolver failed to converge after {iterations} iterations")
            }
            Error::DegenerateFaces => write!(f, "tetrahedron has a degenerate face"),
            Error::NoIntersection => write!(f, "level sets do not intersect"),
            Error::NoRoot { lo, hi } => write!(f, "no root bracketed in [{lo}, {hi}]"),
            Error::CausticDivergence => write!(f, "Ponzano-Regge estimate diverges at a caustic"),
            Error::AmbiguousPhase => write!(f, "phase could not be determined"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::PoleProximity => write!(f, "point too close to a pole"),
            Error::NoTurningPoint => write!(f, "potential has no turning point in the domain"),
            Error::MultipleTurningPoints(n) => {
                write!(f, "potential has {n} turning points in the domain")
            }
            Error::NotTridiagonal => write!(f, "operator is not tridiagonal"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
