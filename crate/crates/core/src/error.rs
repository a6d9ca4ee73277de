use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("scalars from different framing modes cannot be combined")]
    ModeMismatch,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("cannot evaluate at framing {0}: pole or excluded value")]
    Evaluation(String),
    #[error("framing {0} is not generic (must avoid 0 and -1)")]
    Genericity(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("singular series: {0}")]
    SingularSeries(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("reversion error: {0}")]
    Reversion(String),
    #[error("antiderivative would produce a logarithmic term (nonzero coefficient {0})")]
    LogarithmicTerm(String),
    #[error("degenerate ramification point")]
    DegenerateRamification,
    #[error("basis decomposition left a nonzero remainder: {0}")]
    Decomposition(String),
    #[error("correlator is not symmetric: {0}")]
    Symmetry(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::Precision(_))
    }
}

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
