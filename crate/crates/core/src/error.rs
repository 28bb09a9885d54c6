use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative power of a non-monomial")]
    NotInvertible,
    #[error("polynomial is not divisible by the linear factor")]
    NotDivisible,
    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<u32>),
    #[error("code {0:?} is not realizable")]
    InvalidCode(Vec<u32>),

    #[error("box ({0}, {1}) is outside the shape")]
    BoxOutOfShape(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("skew shape is not a ribbon")]
    NotARibbon,
    #[error("skew shape is not a horizontal strip")]
    NotHorizontalStrip,
    #[error("skew shape is not a vertical strip")]
    NotVerticalStrip,

    #[error("code {0:?} is not weakly decreasing")]
    NotDominant(Vec<u32>),
    #[error("permutation {0:?} is not Grassmannian with descent {1}")]
    NotGrassmannian(Vec<u32>, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("column {0:?} is not strictly decreasing with positive entries")]
    InvalidColumn(Vec<u32>),
    #[error("column {0:?} does not fit in 1..{1}")]
    ColumnOutOfRange(Vec<u32>, u32),
    #[error("column lengths {0} and {1} do not differ by one")]
    LengthMismatch(usize, usize),
    #[error("columns {0:?} and {1:?} do not interleave")]
    NotInterleaving(Vec<u32>, Vec<u32>),
    #[error("invalid staircase: {0}")]
    InvalidStaircase(String),
    #[error("staircase does not have column lengths n, n-1, ..., 1")]
    NotFullStaircase,
    #[error("no weight-neutral completion: {0}")]
    NoCanonicalCompletion(String),
    #[error("column is empty")]
    EmptyColumn,
    #[error("not an alternating sign matrix: {0}")]
    NotAnAsm(String),
    #[error("enumeration cap of {0} objects exceeded")]
    CapExceeded(u64),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
}
