use alloc::string::String;

use crate::design::{DesignViolation, FamilyViolation};

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("vertex {vertex} outside 0..{n}")]
    NoSuchVertex { vertex: usize, n: usize },
    #[error("label count {got} does not match vertex count {n}")]
    LabelCount { got: usize, n: usize },
    #[error("invalid recovery set: {0}")]
    RecoverySet(String),
    #[error("window side {n} too small: need more than {min}")]
    WindowTooSmall { n: usize, min: usize },
    #[error("window side {n} exceeds the configured maximum {max}")]
    WindowTooLarge { n: usize, max: usize },
    #[error("torus side {0} is below 3")]
    TorusTooSmall(usize),
    #[error("{0} requires an undirected graph")]
    DirectedInput(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid design: {0}")]
    InvalidDesign(DesignViolation),
    #[error("invalid orthogonal partition family: {0}")]
    InvalidFamily(FamilyViolation),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },
    #[error("no codeword matches the pinned values")]
    EmptySubcode,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("part {part} is not a clique: {u} and {v} are not mutually adjacent")]
    NotAClique { part: usize, u: usize, v: usize },
    #[error("parts do not partition the vertex set: {0}")]
    NotAPartition(String),
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("matching edges overlap at vertex {0}")]
    OverlappingMatching(usize),
    #[error("({0}, {1}) is not an edge")]
    MissingEdge(usize, usize),
    #[error("divisibility violated: {0}")]
    Divisibility(String),
    #[error("coloring uses {colors} colors but the family has only {matrices} matrices")]
    TooFewMatrices { colors: usize, matrices: usize },
    #[error("coloring is not proper: {0} and {1} share a color")]
    ImproperColoring(usize, usize),
    #[error("expected {expected} seed words, got {got}")]
    SeedCount { expected: usize, got: usize },
    #[error("full interleaving needs {size} words (cap {cap}); use sample mode")]
    UseSampleMode { size: u128, cap: u128 },
    #[error("gadget color {color} outside 0..{tau}")]
    ColorOutOfRange { color: usize, tau: usize },
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("inconsistent certificates: lower bound `{lower}` exceeds upper bound `{upper}`")]
    Inconsistent { lower: String, upper: String },
    #[error("certificate `{kind}` failed revalidation: {reason}")]
    BadWitness { kind: &'static str, reason: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}
