use thiserror::Error;

/// Errors raised by the series engine, the invariant computations, the
/// constructive pipeline and the numerical cross-checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("constant term {magnitude:e} is below the division tolerance; series is not a unit")]
    NonUnitConstantTerm { magnitude: f64 },

    #[error("constant term {value} is not a positive real above the division tolerance")]
    NonPositiveConstantTerm { value: String },

    #[error("series is not real-valued: {context}")]
    NotReal { context: String },

    #[error("truncation order exhausted: need order >= {needed}, have {available}")]
    OrderExhausted { needed: u32, available: u32 },

    #[error("evaluation point is not on the conjugate locus (z1b must equal conj(z1), z2b must equal conj(z2))")]
    NonConjugatePoint,

    #[error("germ is 2-degenerate at the origin: |S(0)| = {s0:e}")]
    TwoDegenerate { s0: f64 },

    #[error("S_1 vanishes at the origin without vanishing identically; the S_111/S_1 term has no power-series value")]
    IndeterminateTerm,

    #[error("rho(0) = {value} does not lie in the open unit disk")]
    RhoNotInDisk { value: String },

    #[error("rho'(0) vanishes (|rho'(0)| = {magnitude:e}); the Liouville metric needs a nowhere vanishing derivative")]
    RhoCritical { magnitude: f64 },

    #[error("order mismatch: {0}")]
    OrderMismatch(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("scale factor w0 vanishes")]
    ZeroScale,

    #[error("germ is not of the form r|z1|^2 + 2 Re(t z1^2 + u z1 + v): {0}")]
    NotInModelForm(String),

    #[error("invalid germ: {0}")]
    InvalidGerm(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("probe point {probe} lies within two grid cells of the boundary")]
    QuadratureDegenerate { probe: String },

    #[error("u does not solve u_2b = (r/2) conj(u): residual {residual:e}")]
    NotDbarSolution { residual: f64 },

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
