use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("table is not a Latin square: {0}")]
    NotLatinSquare(String),
    #[error("identity must be element 0: {0}")]
    IdentityNotZero(String),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("variable x{index} out of range 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operands are bound to different groups")]
    GroupMismatch,
    #[error("group is not soluble")]
    NotSoluble,
    #[error("permutation degree {degree} exceeds the limit {limit}")]
    DegreeLimit { degree: usize, limit: usize },
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("matrix does not preserve the relation lattice")]
    NotLatticePreserving,
    #[error("matrix is not invertible modulo the relation lattice")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("rewritten word exceeds {0} syllables")]
    WordTooLong(usize),
    #[error("enumeration limit exceeded: {0}")]
    Limit(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
