use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("amplitude {index} is not finite")]
    NonFinite { index: usize },

    #[error("expected {expected} amplitudes, got {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("expected a {expected}x{expected} density matrix, got {found}x{found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("operator on party {party} is singular")]
    SingularOperator { party: char },

    #[error("operator on party {party} is not of the declared kind ({kind})")]
    KindMismatch { party: char, kind: &'static str },

    #[error("gauge element is singular")]
    SingularGauge,

    #[error("twistor pair is degenerate (Z and W linearly dependent)")]
    DegeneratePair,

    #[error("bivector is not separable (Plücker residual {0:e})")]
    NotSeparable(f64),

    #[error("state has zero norm")]
    NullState,

    #[error("internal consistency check `{check}` failed: residual {residual:e} > {tolerance:e}")]
    Consistency {
        check: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("random operator rejection sampling exhausted after {0} tries")]
    RejectionExhausted(usize),

    #[error("invalid ensemble specification: {0}")]
    InvalidEnsemble(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
