use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("graph has {found} vertices, at most {cap} are supported here")]
    TooManyVertices { found: usize, cap: usize },
    #[error("graph has {found} edges, at most {cap} are supported here")]
    TooManyEdges { found: usize, cap: usize },
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex set must be a nonempty proper subset")]
    ImproperSubset,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("cochain has {found} entries but the graph has {expected} vertices")]
    GraphMismatch { expected: usize, found: usize },
    #[error("total degrees differ: {left} vs {right}")]
    DegreeMismatch { left: i64, right: i64 },
    #[error("cochain has total degree {found}, expected {expected}")]
    DegreeBudget { expected: i64, found: i64 },
    #[error("polarization total {0} is not an integer")]
    NonIntegralTotal(String),
    #[error("restriction is not integral: q_W - val(W)/2 = {0}")]
    NonIntegralRestriction(String),
    #[error("canonical polarization undefined for total genus 1")]
    GenusOne,
    #[error("value does not fit in a machine integer")]
    Overflow,
    #[error("reduction did not terminate after {0} steps")]
    NonTermination(u64),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
