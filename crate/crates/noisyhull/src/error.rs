use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("collinear input: the noise channel has no outcome for ties")]
    CollinearInput,
    #[error("point lies exactly on a plane")]
    OnBoundary,
    #[error("degenerate tangent: three involved points are collinear")]
    DegenerateTangent,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("empty input")]
    EmptyInput,
    #[error("failure budget exceeded: {failed} children failed, budget {budget}")]
    BudgetExceeded { failed: usize, budget: usize },
    #[error("halfspace intersection is unbounded or empty")]
    UnboundedOrEmpty,
    #[error("not a triangulation: {0}")]
    NotATriangulation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
