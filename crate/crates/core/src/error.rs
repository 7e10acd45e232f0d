use alloc::string::String;
use core::fmt;

use crate::numberfield::FieldDescriptor;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Operands live in different fields.
    FieldMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },
    DivisionByZero,
    /// `d` is not a square-free integer >= 2.
    InvalidField {
        d: i64,
    },
    Parse {
        input: String,
        reason: &'static str,
    },
    ZeroCoefficient {
        index: usize,
    },
    DimTooSmall {
        dim: usize,
    },
    DimMismatch {
        expected: usize,
        found: usize,
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NotSymmetric {
        row: usize,
        col: usize,
    },
    SingularForm,
    NoConjugateForQ,
    /// The form does not have signature `(n, 1)` at the identity embedding.
    NotLorentzian,
    /// `f(x) >= 0`, so `x` is not a point of the projective model.
    PointNotInModel,
    /// `f(v) <= 0`, so `v` is not the normal of a hyperplane.
    NotSpacelike,
    FormMismatch,
    NotUltraparallel,
    /// First entry `(row, col)` where `M^T F M` differs from `F`.
    NotFOrthogonal {
        row: usize,
        col: usize,
    },
    NotAReflection {
        label: String,
    },
    TooManySideReflections {
        count: usize,
    },
    EmptyGeneratorSet,
    InvalidWordLength,
    WordBudgetExceeded {
        cap: usize,
    },
    InvalidPrecision {
        bits: u32,
    },
}

impl Error {
    /// Stable upper-case code used in machine-readable diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch { .. } => "FIELD_MISMATCH",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::InvalidField { .. } => "INVALID_FIELD",
            Error::Parse { .. } => "PARSE_ERROR",
            Error::ZeroCoefficient { .. } => "ZERO_COEFFICIENT",
            Error::DimTooSmall { .. } => "DIM_TOO_SMALL",
            Error::DimMismatch { .. } => "DIM_MISMATCH",
            Error::NotSquare { .. } => "NOT_SQUARE",
            Error::NotSymmetric { .. } => "NOT_SYMMETRIC",
            Error::SingularForm => "SINGULAR_FORM",
            Error::NoConjugateForQ => "NO_CONJUGATE_FOR_Q",
            Error::NotLorentzian => "NOT_LORENTZIAN",
            Error::PointNotInModel => "POINT_NOT_IN_MODEL",
            Error::NotSpacelike => "NOT_SPACELIKE",
            Error::FormMismatch => "FORM_MISMATCH",
            Error::NotUltraparallel => "NOT_ULTRAPARALLEL",
            Error::NotFOrthogonal { .. } => "NOT_F_ORTHOGONAL",
            Error::NotAReflection { .. } => "NOT_A_REFLECTION",
            Error::TooManySideReflections { .. } => "TOO_MANY_SIDE_REFLECTIONS",
            Error::EmptyGeneratorSet => "EMPTY_GENERATOR_SET",
            Error::InvalidWordLength => "INVALID_WORD_LENGTH",
            Error::WordBudgetExceeded { .. } => "WORD_BUDGET_EXCEEDED",
            Error::InvalidPrecision { .. } => "INVALID_PRECISION",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: {left} vs {right}")
            }
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::InvalidField { d } => {
                write!(f, "d = {d} must be a square-free integer >= 2")
            }
            Error::Parse { input, reason } => write!(f, "cannot parse {input:?}: {reason}"),
            Error::ZeroCoefficient { index } => write!(f, "diagonal coefficient {index} is zero"),
            Error::DimTooSmall { dim } => write!(f, "dimension {dim} is below the minimum of 3"),
            Error::DimMismatch { expected, found } => {
                write!(f, "expected dimension {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::NotSymmetric { row, col } => {
                write!(f, "gram matrix is not symmetric at ({row}, {col})")
            }
            Error::SingularForm => f.write_str("gram matrix is singular"),
            Error::NoConjugateForQ => f.write_str("forms over Q have no Galois conjugate"),
            Error::NotLorentzian => {
                f.write_str("form does not have signature (n,1) at the identity embedding")
            }
            Error::PointNotInModel => f.write_str("f(x) must be negative for a model point"),
            Error::NotSpacelike => f.write_str("f(v) must be positive for a hyperplane normal"),
            Error::FormMismatch => f.write_str("objects belong to different ambient forms"),
            Error::NotUltraparallel => {
                f.write_str("hyperplanes are not ultraparallel; no common perpendicular")
            }
            Error::NotFOrthogonal { row, col } => {
                write!(f, "M^T F M differs from F at entry ({row}, {col})")
            }
            Error::NotAReflection { label } => {
                write!(f, "{label} is not an involution with determinant -1")
            }
            Error::TooManySideReflections { count } => {
                write!(f, "{count} side reflections given, at most 3 allowed")
            }
            Error::EmptyGeneratorSet => f.write_str("generator set is empty"),
            Error::InvalidWordLength => f.write_str("maximum word length must be at least 1"),
            Error::WordBudgetExceeded { cap } => {
                write!(f, "word enumeration exceeded the cap of {cap} words")
            }
            Error::InvalidPrecision { bits } => {
                write!(f, "precision of {bits} bits is below the minimum of 8")
            }
        }
    }
}

impl core::error::Error for Error {}
