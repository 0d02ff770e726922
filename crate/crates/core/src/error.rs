use thiserror::Error;

/// Failure to read a DIMACS `.col` file. Line numbers are one-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed problem line, expected `p edge <n> <m>`")]
    MalformedHeader { line: usize },
    #[error("line {line}: second problem line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: graph has zero vertices")]
    ZeroVertices { line: usize },
    #[error("line {line}: edge listed before the problem line")]
    EdgeBeforeHeader { line: usize },
    #[error("line {line}: malformed edge line, expected `e <u> <v>`")]
    MalformedEdge { line: usize },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: unrecognized line")]
    UnknownLine { line: usize },
    #[error("no problem line found")]
    MissingHeader,
}

/// A caller handed an operation inputs that violate its preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("expected {expected} entries, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("color {color} of vertex {vertex} outside 1..={k}")]
    ColorOutOfRange { vertex: usize, color: usize, k: usize },
    #[error("vertex {vertex} outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("partition does not cover vertex {vertex}")]
    Uncovered { vertex: usize },
    #[error("vertex {vertex} appears in more than one class")]
    Overlap { vertex: usize },
    #[error("cannot remove a color from a {k}-coloring")]
    TooFewColors { k: usize },
    #[error("population has {have} members, need at least {need}")]
    PopulationTooSmall { have: usize, need: usize },
    #[error("archived vertex {vertex} is missing from the new reduced graph")]
    NotASubset { vertex: usize },
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}
