use thiserror::Error;

/// Errors raised by graph loading and the analysis kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}self-loop at vertex {vertex}", at_line(*.line))]
    SelfLoop { line: Option<usize>, vertex: usize },

    #[error("{}duplicate edge {{{u}, {v}}}", at_line(*.line))]
    DuplicateEdge {
        line: Option<usize>,
        u: usize,
        v: usize,
    },

    #[error("{}vertex {vertex} out of range for n = {n}", at_line(*.line))]
    VertexOutOfRange {
        line: Option<usize>,
        vertex: usize,
        n: usize,
    },

    #[error("graph is not fully oriented ({unoriented} unoriented edges)")]
    NotFullyOriented { unoriented: usize },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("pattern search space too large (k = {k}, estimated {states} states, limit {limit})")]
    PatternTooLarge { k: usize, states: u128, limit: u128 },

    #[error("eigenvalue iteration did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure { iterations: usize, residual: f64 },

    #[error("n = {n} exceeds the exact-search limit {limit} for {what}; use the heuristic")]
    TooLargeForExact {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("n = {n} exceeds the size cap {limit} for {what}")]
    SizeCap {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("incomplete inputs: {0}")]
    IncompleteInputs(String),
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}

impl Error {
    /// Attach a source line to a validation error raised while loading.
    pub(crate) fn with_line(self, at: usize) -> Self {
        match self {
            Error::SelfLoop { vertex, .. } => Error::SelfLoop {
                line: Some(at),
                vertex,
            },
            Error::DuplicateEdge { u, v, .. } => Error::DuplicateEdge {
                line: Some(at),
                u,
                v,
            },
            Error::VertexOutOfRange { vertex, n, .. } => Error::VertexOutOfRange {
                line: Some(at),
                vertex,
                n,
            },
            other => other,
        }
    }

    /// Source line of a load error, when known.
    pub fn line(&self) -> Option<usize> {
        match self {
            Error::Parse { line, .. } => Some(*line),
            Error::SelfLoop { line, .. }
            | Error::DuplicateEdge { line, .. }
            | Error::VertexOutOfRange { line, .. } => *line,
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
