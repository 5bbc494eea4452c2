use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("{what}: n={n} exceeds the exhaustive bound {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn at(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AdditiveError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no prime in [{lo}, {hi}]")]
    NoPrime { lo: u64, hi: u64 },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("verification budget exceeded: {needed} > {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("construction failed verification for {family}: {detail}")]
    Verification { family: String, detail: String },
    #[error("translate retries exhausted after {attempts} attempts; best size {best} < bound {bound:.3}")]
    Retries { attempts: usize, best: usize, bound: f64 },
    #[error("sets live in different moduli")]
    ModulusMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("invalid ordering: {0}")]
    Ordering(String),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
