use thiserror::Error;

use crate::geom::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate segment: {from} and {to} coincide")]
    DegenerateSegment { from: Point, to: Point },

    #[error("degenerate triangle {0} {1} {2}")]
    DegenerateTriangle(Point, Point, Point),

    #[error("triangle has an interior angle of {angle:.6} degrees at {corner}; a Fermat point needs all angles below 120")]
    WideAngleTriangle { corner: Point, angle: f64 },

    #[error("terminals do not admit the requested Steiner topology: {0}")]
    DegenerateTerminals(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("vertex `{0}` has no incident edges")]
    IsolatedVertex(String),

    #[error("edges {0} and {1} overlap along a common segment")]
    OverlayEdges(String, String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("vertices `{0}` and `{1}` collided during relaxation")]
    VertexCollision(String, String),

    #[error("vertex `{id}` has degree {degree}, above the subset enumeration budget of {limit}")]
    DegreeTooLarge {
        id: String,
        degree: usize,
        limit: usize,
    },

    #[error("subnet search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable kebab-case tag for machine-readable reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateSegment { .. } => "degenerate-segment",
            Error::DegenerateTriangle(..) => "degenerate-triangle",
            Error::WideAngleTriangle { .. } => "wide-angle-triangle",
            Error::DegenerateTerminals(_) => "degenerate-terminals",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::IsolatedVertex(_) => "isolated-vertex",
            Error::OverlayEdges(..) => "overlay-edges",
            Error::InvariantViolation(_) => "invariant-violation",
            Error::VertexCollision(..) => "vertex-collision",
            Error::DegreeTooLarge { .. } => "degree-too-large",
            Error::SearchBudgetExceeded(_) => "search-budget-exceeded",
            Error::Parse { .. } => "parse-error",
            Error::Io(_) => "io",
        }
    }
}
