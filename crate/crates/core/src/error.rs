use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code (see [`Error::code`])
/// and to one of the process exit classes used by the command-line driver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic extensions")]
    FieldMismatch,
    #[error("x^2 - ({p})*x - ({q}) is reducible over the rationals")]
    ReducibleMinPoly { p: String, q: String },

    #[error("linear factor does not divide the binary form")]
    NotARoot,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("gcd certificate failed: cofactors are not coprime")]
    GcdCertificate,

    #[error("line spanned by coincident points")]
    DegenerateLine,
    #[error("point lies on the line; no unique plane")]
    DegenerateSpan,
    #[error("planes are proportional")]
    SamePlane,
    #[error("point lies on one of the two lines; transversal undefined")]
    DegenerateTransversal,

    #[error("form is not a nonzero homogeneous cubic in x0..x3: {0}")]
    NotCubic(String),
    #[error("line {0} is not contained in the surface")]
    InputNotOnSurface(String),
    #[error("degenerate chart: {0}")]
    DegenerateChart(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("surface is singular: {0}")]
    Singular(String),

    #[error("prime {0} divides a coefficient denominator")]
    BadPrime(u64),
    #[error("minimal polynomial does not split modulo {0}")]
    NonSplitPrime(u64),
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("no good prime among the candidates")]
    NoGoodPrime,

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol '{name}' at {pos}")]
    UnknownSymbol { pos: usize, name: String },
    #[error("exponent at {pos} exceeds 64")]
    ExponentOverflow { pos: usize },
    #[error("malformed file: {0}")]
    Format(String),

    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier for machine-readable error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::FieldMismatch => "FIELD_MISMATCH",
            Error::ReducibleMinPoly { .. } => "REDUCIBLE_MINPOLY",
            Error::NotARoot => "NOT_A_ROOT",
            Error::Unsupported(_) => "UNSUPPORTED",
            Error::GcdCertificate => "GCD_CERTIFICATE",
            Error::DegenerateLine => "DEGENERATE_LINE",
            Error::DegenerateSpan => "DEGENERATE_SPAN",
            Error::SamePlane => "SAME_PLANE",
            Error::DegenerateTransversal => "DEGENERATE_TRANSVERSAL",
            Error::NotCubic(_) => "NOT_CUBIC",
            Error::InputNotOnSurface(_) => "INPUT_NOT_ON_SURFACE",
            Error::DegenerateChart(_) => "DEGENERATE_CHART",
            Error::InvalidInput(_) => "INVALID_INPUT",
            Error::Singular(_) => "SINGULAR_SURFACE",
            Error::BadPrime(_) => "BAD_PRIME",
            Error::NonSplitPrime(_) => "NON_SPLIT_PRIME",
            Error::BadReduction(_) => "BAD_REDUCTION",
            Error::NoGoodPrime => "NO_GOOD_PRIME",
            Error::Syntax { .. } => "SYNTAX_ERROR",
            Error::UnknownSymbol { .. } => "UNKNOWN_SYMBOL",
            Error::ExponentOverflow { .. } => "EXPONENT_OVERFLOW",
            Error::Format(_) => "FORMAT_ERROR",
            Error::Verification(_) => "VERIFICATION_FAILED",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// Process exit code: 2 verification failure, 3 input invariant failure,
    /// 4 parse error, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) | Error::GcdCertificate => 2,
            Error::NotCubic(_)
            | Error::InputNotOnSurface(_)
            | Error::InvalidInput(_)
            | Error::Singular(_)
            | Error::DegenerateLine
            | Error::DegenerateSpan
            | Error::SamePlane
            | Error::DegenerateTransversal
            | Error::DegenerateChart(_)
            | Error::ReducibleMinPoly { .. }
            | Error::BadPrime(_)
            | Error::NonSplitPrime(_)
            | Error::BadReduction(_)
            | Error::NoGoodPrime => 3,
            Error::Syntax { .. } | Error::UnknownSymbol { .. } | Error::ExponentOverflow { .. } | Error::Format(_) => 4,
            _ => 1,
        }
    }

    /// Character offset for parse errors.
    pub fn position(&self) -> Option<usize> {
        match self {
            Error::Syntax { pos, .. } | Error::UnknownSymbol { pos, .. } | Error::ExponentOverflow { pos } => {
                Some(*pos)
            }
            _ => None,
        }
    }
}
