use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Lemma-style feasibility failure: `degree <= n` and `(degree + 1) * n` even.
    #[error("no {degree}-regular graph with loops on {n} vertices exists: need degree <= n and (degree+1)*n even")]
    NoSuchRegularGraph { n: usize, degree: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("opinion vector has {got} entries but the graph has {expected} vertices")]
    OpinionLength { expected: usize, got: usize },

    #[error("2-to-1 matching needs |A| = 2|B|, got |A| = {left}, |B| = {right}")]
    MatchingSize { left: usize, right: usize },

    #[error("{0}")]
    InvalidParameters(String),

    #[error("order {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("csv: {0}")]
    Csv(String),

    #[error("enumeration budget exhausted after {graphs} graphs without a conclusive answer")]
    BudgetExhausted { graphs: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
