//! Error type shared by the whole crate.

use std::fmt;

/// Errors reported by scalar, matrix and system-level operations.
///
/// Every fallible operation in the crate returns [`Result`]; none of the
/// public entry points panic on bad input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two elements (or matrices) from different rings were combined.
    RingMismatch,
    /// Division by zero, or a fraction with a zero denominator.
    DivisionByZero,
    /// `divide_exact(a, b)` was called with `b` not dividing `a`.
    NotDivisible,
    /// A square matrix was required (determinant, system block `A`, ...).
    NotSquare,
    /// Matrix dimensions do not conform (products, block assembly, ...).
    ShapeMismatch,
    /// Index set out of bounds or not strictly increasing.
    BadIndexSet,
    /// Matrix inversion (or a Schur complement) hit a singular matrix.
    Singular,
    /// Exhaustive minor enumeration refused a matrix larger than its guard.
    GuardExceeded,
    /// A prime argument was zero or a unit.
    BadPrime,
    /// The operation only applies over a unique factorization domain
    /// instance (integers or polynomials).
    UnsupportedRing,
    /// Matrices that had to be coprime are not (with the side that failed).
    NotCoprime(&'static str),
    /// A structural hypothesis on the input data failed; the message names it.
    Hypothesis(String),
    /// A fraction-valued entry was found where a ring element was required.
    NotRingValued,
    /// The input was irreducible but the operation expects a reducible system.
    IrreducibleInput,
    /// An internal invariant a theorem guarantees did not hold; this is a bug.
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "elements belong to different rings"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::NotDivisible => write!(f, "exact division failed: divisor does not divide"),
            Error::NotSquare => write!(f, "square matrix required"),
            Error::ShapeMismatch => write!(f, "matrix dimensions do not conform"),
            Error::BadIndexSet => write!(f, "index set out of bounds or not strictly increasing"),
            Error::Singular => write!(f, "matrix is singular"),
            Error::GuardExceeded => {
                write!(f, "matrix too large for exhaustive minor enumeration")
            }
            Error::BadPrime => write!(f, "prime argument must be a non-unit, nonzero element"),
            Error::UnsupportedRing => {
                write!(f, "operation not supported over this coefficient ring")
            }
            Error::NotCoprime(side) => write!(f, "matrices are not {side} coprime"),
            Error::Hypothesis(msg) => write!(f, "hypothesis failed: {msg}"),
            Error::NotRingValued => write!(f, "entry is a proper fraction, not a ring element"),
            Error::IrreducibleInput => write!(f, "system is irreducible; nothing to diagnose"),
            Error::Internal(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

impl std::error::Error for Error {}
