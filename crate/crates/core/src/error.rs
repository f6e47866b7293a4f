use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("operands live on different models: {left} vs {right}")]
    ModelMismatch { left: String, right: String },

    #[error("expected {expected} entries for {model}, got {found}")]
    LengthMismatch {
        model: String,
        expected: usize,
        found: usize,
    },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("symbol `{symbol}` is a {found}-side symbol, {expected}-side required")]
    SideMismatch {
        symbol: String,
        expected: &'static str,
        found: &'static str,
    },

    #[error("{what} is not available on {model}")]
    Unsupported { what: String, model: String },

    #[error("symbol `{symbol}` aliases: tail {tail:e} at the grid boundary exceeds 1e-12")]
    Aliasing { symbol: String, tail: f64 },

    #[error("basis mismatch: {left} cannot be combined with {right}")]
    BasisMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("{what} = {value} is not a grid point")]
    OffGrid { what: &'static str, value: f64 },

    #[error("spectrum has mass {mass:e} on negative dual bins")]
    NegativeSpectrum { mass: f64 },

    #[error("insufficient evidence: {levels} truncation levels given, at least 3 required")]
    InsufficientEvidence { levels: usize },

    #[error("invalid truncation schedule: {0}")]
    InvalidSchedule(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
