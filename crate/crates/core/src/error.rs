use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("coefficient index k={k} outside [1, {max}] for (a, b) = ({a}, {b})")]
    CoefficientIndex { a: u32, b: u32, k: u32, max: u32 },
    #[error("polynomial must vanish at 0, but P(0) = {0}")]
    NonzeroConstantTerm(String),
    #[error("malformed combination term: {0}")]
    MalformedTerm(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericsError {
    #[error("Clausen order must be at least 1, got {0}")]
    InvalidOrder(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("ball contains zero, cannot divide")]
    DivisionByBallContainingZero,
    #[error("precision budget exhausted: radius {radius} does not support {digits} digits after {retries} retries")]
    PrecisionBudget {
        digits: u32,
        radius: String,
        retries: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("empty composition")]
    EmptyComposition,
    #[error("composition parts must be positive: {0:?}")]
    ZeroPart(Vec<u32>),
    #[error("inadmissible composition {0:?}: last part must exceed 1")]
    Inadmissible(Vec<u32>),
    #[error("invalid truncation plan: {0}")]
    InvalidPlan(String),
    #[error("table cache: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("Gauss-Legendre rule needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("Newton iteration for the {nodes}-node rule did not converge at {precision} bits")]
    NewtonDiverged { nodes: usize, precision: u32 },
    #[error("no convergence up to {nodes} nodes: last difference {difference:e} > tolerance {tolerance:e}")]
    NoConvergence {
        nodes: usize,
        difference: f64,
        tolerance: f64,
    },
    #[error("invalid integrand parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("invalid harness configuration: {0}")]
    InvalidConfig(String),
    #[error("worker pool: {0}")]
    WorkerPool(String),
}

/// Any failure raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
