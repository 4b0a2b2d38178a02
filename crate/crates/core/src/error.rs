use thiserror::Error;

/// Errors surfaced by the library.
///
/// The CLI maps these onto its exit-code contract: usage-type errors exit 2,
/// budget violations exit 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("operands live in different cyclotomic rings (p = {0} vs p = {1})")]
    CyclotomicMismatch(usize, usize),

    #[error("division by zero in Q(zeta_p)")]
    DivisionByZero,

    #[error("root index {index} out of range 1..={max}")]
    RootIndexOutOfRange { index: usize, max: usize },

    #[error("operands live in different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("inversion of zero in F_q")]
    ZeroInversion,

    #[error("modulus polynomial is not irreducible over F_{p}")]
    ReducibleModulus { p: u32 },

    #[error("no shipped field table entry for q = {0}")]
    UnsupportedFieldSize(u64),

    #[error("point budget exceeded: needed {needed}, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("malformed block shapes: {0}")]
    ShapeMismatch(String),

    #[error("operation requires a nilpotent representation")]
    NotNilpotent,

    #[error("input function is not invariant under the group action")]
    NotInvariant,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors that the CLI treats as usage errors (exit code 2).
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::BudgetExceeded { .. })
    }
}
