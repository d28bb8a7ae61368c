use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GfunError {
    #[error("invalid G-function parameter: {0}")]
    InvalidParameter(String),
    #[error("not a G-function: {0}")]
    NotAGFunction(String),
    #[error("degenerate sample set: {0}")]
    DegenerateSamples(String),
    #[error("conjugate search diverged at y = {y:?} (best value {best}): {detail}")]
    ConjugateDiverged { y: Vec<f64>, best: f64, detail: String },
    #[error("minorant never reached {target} (max {reached} at radius {r_max})")]
    EmbeddingRange { target: f64, reached: f64, r_max: f64 },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrliczError {
    #[error("invalid grid function: {0}")]
    InvalidGrid(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("Luxemburg bracket failed: {0}")]
    Bracket(String),
    #[error(transparent)]
    Gfun(#[from] GfunError),
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProblemError {
    #[error("invalid problem: {field}: {message}")]
    Invariant { field: String, message: String },
    #[error("non-finite Lagrangian value at t = {t}, x = {x:?}, v = {v:?}")]
    NonFiniteEvaluation { t: f64, x: Vec<f64>, v: Vec<f64> },
    #[error("time {t} outside the interval [{a}, {b}]")]
    OutsideInterval { t: f64, a: f64, b: f64 },
    #[error(transparent)]
    Gfun(#[from] GfunError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
}

impl ProblemError {
    pub(crate) fn invariant(field: &str, message: impl Into<String>) -> Self {
        ProblemError::Invariant {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("valley seed never reaches |u0| >= r0 = {r0} on the grid")]
    SeedBelowThreshold { r0: f64 },
    #[error("no valley point up to lambda = {lambda}: J = {total} (kinetic {kinetic}, potential {potential}, forcing {forcing}); dominant term: {dominant}")]
    NoValley {
        lambda: f64,
        total: f64,
        kinetic: f64,
        potential: f64,
        forcing: f64,
        dominant: String,
    },
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Gfun(#[from] GfunError),
}
