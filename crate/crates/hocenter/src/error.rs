use thiserror::Error;

/// Library-wide error type.
///
/// Variants fall into three classes that the CLI maps to distinct exit
/// codes: validation failures (bad input data), budget failures (the
/// requested computation is larger than the configured cap), and
/// consistency failures (two independent computations disagree, which
/// signals a bug rather than bad input).
#[derive(Debug, Error)]
pub enum Error {
    // -- group / groupoid / category validation --
    #[error("table is not associative at triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} is not a two-sided identity")]
    NoIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("composite of morphisms {0} and {1} is missing or has wrong endpoints")]
    NotComposable(usize, usize),
    #[error("object {0} has no identity morphism")]
    MissingIdentity(usize),
    #[error("morphism {0} is not invertible")]
    NotInvertible(usize),
    #[error("malformed input: {0}")]
    Malformed(String),

    // -- enriched categories --
    #[error("composition is not strictly associative: {0}")]
    CompNotAssociative(String),
    #[error("composition is not strictly unital: {0}")]
    NotUnital(String),
    #[error("composition is not functorial: {0}")]
    BadFunctor(String),
    #[error("induced composition on components is ill-defined: {0}")]
    IllDefinedComposition(String),

    // -- centers and spectral data --
    #[error("automorphism group of a composition basepoint is not abelian: {0}")]
    NonAbelianEntry(String),
    #[error("a result the theory guarantees commutative is not: {0}")]
    NotCommutative(String),
    #[error("induced multiplication is not well-defined on classes: {0}")]
    NotWellDefined(String),
    #[error("groupoid center does not match the product of vertex-group centers: {0}")]
    SplittingMismatch(String),
    #[error("cross-check between exact center and spectral assembly failed: {0}")]
    InconsistencyDetected(String),

    // -- resource limits --
    #[error("search space of size {size} exceeds budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded { .. } => 3,
            Error::InconsistencyDetected(_) => 4,
            Error::NonAbelianEntry(_)
            | Error::NotCommutative(_)
            | Error::NotWellDefined(_)
            | Error::SplittingMismatch(_)
            | Error::Internal(_) => 4,
            _ => 2,
        }
    }
}
