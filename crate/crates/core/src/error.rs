use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension n = {n} (allowed range {min}..={max})")]
    InvalidDimension { n: usize, min: usize, max: usize },
    #[error("element {element} is outside [1, {n}]")]
    InvalidSubset { element: usize, n: usize },
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("{count} vectors cannot extend to a basis of a rank {rank} lattice")]
    TooManyVectors { count: usize, rank: usize },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("relation ({lo}, {hi}) has an element outside [1, {n}]")]
    InvalidRelation { lo: usize, hi: usize, n: usize },
    #[error("preposet is not a tree preposet")]
    NotATree,
    #[error("edge ({lower}, {upper}) is not a cover of the preposet")]
    InvalidEdge { lower: usize, upper: usize },
    #[error("preposet is not antisymmetric")]
    NotAPoset,
    #[error("the zero vector is not a ray")]
    InvalidRay,
    #[error("cone label is not connected")]
    Disconnected,
    #[error("duplicate maximal cone")]
    DuplicateCone,
    #[error("cone {face} is a face of cone {cone}, so it is not maximal")]
    NotMaximal { face: usize, cone: usize },
    #[error("fan is not smooth")]
    NotSmooth,
    #[error("cone is not a face of any maximal cone of the fan")]
    NotAFace,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("subdivision center is stale: its face is not in the fan")]
    StaleCenter,
    #[error("internal verification failure: {0}")]
    InternalVerification(String),
    #[error("n = {n} exceeds the enumeration bound {max}")]
    TooLarge { n: usize, max: usize },
    #[error("enumeration exceeded its time budget")]
    BudgetExceeded,
}
