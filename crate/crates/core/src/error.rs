use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("curve polynomial is not squarefree")]
    NotSquarefree,
    #[error("curve polynomial must have odd degree at least 5, got {0}")]
    BadDegree(i64),
    #[error("field characteristic must be an odd prime below 2^32, got {0}")]
    BadCharacteristic(u64),
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("the zero differential has no divisor")]
    ZeroDifferential,
    #[error("function has a pole at {0}")]
    PoleAtPlace(String),
    #[error("point ({0}, {1}) is not on the curve")]
    NotOnCurve(u64, u64),
    #[error("divisor support is not rational over the base field")]
    IrrationalSupport,
    #[error("function is not a section of the required line bundle: {0}")]
    NotASection(String),
    #[error("gauge transformation is not invertible")]
    NotInvertible,
    #[error("operation supports rank 2 only, got rank {0}")]
    UnsupportedRank(usize),
    #[error("Higgs bundle must have degree 0, got {0}")]
    NonzeroDegree(i64),
    #[error("cannot evaluate the Higgs field at the base point: {0}")]
    EvaluationFailure(String),
    #[error("bundle is not trivialized on the chart: {0}")]
    NotTrivializable(String),
    #[error("presentation is not linearizable to T*I + C: {0}")]
    NotLinearizable(String),
    #[error("charts do not cover the curve")]
    ChartsDontCover,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("hypercohomology Euler identity violated: {0}")]
    EulerMismatch(String),
    #[error("invalid input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
