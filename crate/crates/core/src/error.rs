use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in different polynomial rings (variables, field or order differ).
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// Structural misuse: wrong order kind, malformed tower, bad variable index.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("quotient has positive dimension: no leading monomial is a pure power of `{variable}`")]
    DimensionPositive { variable: String },

    #[error("local length did not stabilize up to m-adic precision {max}")]
    PrecisionExceeded { max: u32 },

    #[error("invalid tower spec: {0}")]
    InvalidSpec(String),

    #[error("hensel obstruction: {0}")]
    HenselObstruction(String),

    #[error("lifting failure: {0}")]
    LiftingFailure(String),

    #[error("gorenstein-required: the quotient by the parameter ideal has socle dimension {socle_dim}")]
    GorensteinRequired { socle_dim: usize },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("basis completion failed: {0}")]
    BasisCompletion(String),

    #[error("inconclusive Hilbert-Samuel fit: {0}")]
    InconclusiveFit(String),

    #[error("invalid q = {q}: not a power of the characteristic {p}")]
    InvalidQ { q: u64, p: u32 },

    #[error("name collision: variable `{0}` already exists")]
    NameCollision(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable kebab-case tag used in reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RingMismatch(_) => "ring-mismatch",
            Error::Structural(_) => "structural",
            Error::DegenerateInput(_) => "degenerate-input",
            Error::DimensionPositive { .. } => "dimension-positive",
            Error::PrecisionExceeded { .. } => "precision-exceeded",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::HenselObstruction(_) => "hensel-obstruction",
            Error::LiftingFailure(_) => "lifting-failure",
            Error::GorensteinRequired { .. } => "gorenstein-required",
            Error::InvalidWitness(_) => "invalid-witness",
            Error::BasisCompletion(_) => "basis-completion",
            Error::InconclusiveFit(_) => "inconclusive-fit",
            Error::InvalidQ { .. } => "invalid-q",
            Error::NameCollision(_) => "name-collision",
            Error::Parse { .. } => "parse",
        }
    }
}
