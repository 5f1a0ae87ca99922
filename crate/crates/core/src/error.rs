use thiserror::Error;

/// Failures raised by the certificate pipeline.
///
/// A failed sign check is not an error: it yields an `Indeterminate`
/// verdict and an inconclusive report. Errors are reserved for inputs the
/// pipeline cannot process at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("substitution makes a denominator identically zero")]
    DivisionByZeroDenominator,
    #[error("parameter `{0}` is not bound to a rational value")]
    UnboundParameter(String),
    #[error("expected degree {expected} in `{var}`, found {found}")]
    WrongDegree { var: String, expected: u32, found: u32 },
    #[error("leading coefficient in y is not certifiably one-signed on the region")]
    NotMonic,
    #[error("M_s has no certifiable shape: {0}")]
    UnsupportedShape(String),
    #[error("curve topology unsupported: {0}")]
    TopologyUnsupported(String),
    #[error("vector field does not vanish at the origin")]
    NonzeroAtOrigin,
    #[error("expression is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("radial average has a nonzero even power r^{0}")]
    ParityViolation(u32),
    #[error("w(r) vanishes identically")]
    ZeroW,
    #[error("polynomial vanishes identically")]
    ZeroPolynomial,
    #[error("system has the wrong shape: {0}")]
    WrongShape(String),
    #[error("g1 vanishes identically")]
    ZeroG1,
    #[error("hypothesis on g violated: {0}")]
    GOriginViolation(String),
    #[error("expression is not well defined on the interval: {0}")]
    NotWellDefined(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
