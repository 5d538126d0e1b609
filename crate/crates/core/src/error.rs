use thiserror::Error;

use crate::primes::PrimeCountEstimate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed monomial text {text:?}: {reason}")]
    Malformed { text: String, reason: String },

    #[error("duplicate variable index {0}")]
    DuplicateIndex(usize),

    #[error("variable indices must be positive, got {0}")]
    NonPositiveIndex(i64),

    #[error("the unit monomial (empty index set) is not allowed")]
    EmptyMonomial,

    #[error("indices must be strictly increasing")]
    NotIncreasing,

    #[error("malformed fraction {0:?}")]
    MalformedFraction(String),

    #[error("target {numerator}/{denominator} must be at least 1 with positive parts")]
    InvalidTarget { numerator: i64, denominator: i64 },

    #[error("associated-prime enumeration truncated: predicted {predicted} primes exceeds cap {cap}")]
    EnumerationCapExceeded {
        predicted: PrimeCountEstimate,
        cap: usize,
    },

    #[error("input is truncated; operation needs the complete set")]
    Truncated,

    #[error("{what} has {actual} variables, above the limit {limit}")]
    TooManyVariables {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("covering LP row {0} has no nonzero entries")]
    EmptyRow(usize),

    #[error("covering LP row {row} references column {column} outside 1..={n_vars}")]
    ColumnOutOfRange {
        row: usize,
        column: usize,
        n_vars: usize,
    },

    #[error("covering LP needs at least one column and one row")]
    EmptyProgram,

    #[error("solver cap exceeded: {rows} rows x {cols} columns (cap {max_rows} x {max_cols})")]
    SolverCapExceeded {
        rows: usize,
        cols: usize,
        max_rows: usize,
        max_cols: usize,
    },

    #[error("simplex pivot guard exceeded after {0} pivots")]
    PivotGuard(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("closed form does not apply: t_0 = {t0} > i_(t_k) = {itk}")]
    FormulaInapplicable { t0: usize, itk: usize },

    #[error("search budget of {0} exponent vectors exceeded")]
    BudgetExceeded(u64),

    #[error("oracle limits exceeded: {0}")]
    OracleLimits(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
