use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} has color {color}, expected 1, 2 or 3")]
    InvalidColor { vertex: usize, color: u8 },
    #[error("expected {expected} entries (one per vertex), got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("weight of vertex {0} is not finite")]
    NonFiniteWeight(usize),
}

/// DIMACS parse failure. `line` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing problem line `p edge <n> <m>`")]
    MissingProblemLine,
    #[error("duplicate problem line")]
    DuplicateProblemLine,
    #[error("edge line before problem line")]
    EdgeBeforeProblemLine,
    #[error("vertex index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("malformed line: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecError {
    #[error("vertex count must be at least 3, got {0}")]
    TooFewVertices(usize),
    #[error("edge probability must lie in (0, 1], got {0}")]
    ProbabilityOutOfRange(f64),
    #[error("flat graph needs {target} edges but only {eligible} cross-class pairs exist")]
    FlatTargetUnreachable { target: usize, eligible: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamsError {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(usize),
    #[error("lower bound {lb} must be below upper bound {ub}")]
    EmptyBounds { lb: f64, ub: f64 },
    #[error("evaluation budget {max_fes} is smaller than the population size {np}")]
    BudgetBelowPopulation { max_fes: u64, np: usize },
    #[error("step size must be positive and finite, got {0}")]
    InvalidStep(f64),
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid experiment plan: {0}")]
    InvalidPlan(String),
    #[error("instance {family} n={n} p={p} seed={seed}: {source}")]
    Instance {
        family: String,
        n: usize,
        p: f64,
        seed: u64,
        #[source]
        source: SpecError,
    },
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("record row {row}: {message}")]
    Record { row: usize, message: String },
    #[error("missing variant `{variant}` for {family} n={n} p={p}")]
    MissingVariant {
        family: String,
        n: usize,
        p: f64,
        variant: String,
    },
    #[error("no records")]
    NoRecords,
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
