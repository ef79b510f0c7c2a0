use thiserror::Error;

use crate::structure::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid structure: {}", join_violations(.0))]
    InvalidStructure(Vec<Violation>),
    #[error("subset is empty")]
    EmptySubset,
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("symbol `{0}` is not binary")]
    NotBinary(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("budget exceeded: {what} would be {size}, budget is {budget}")]
    BudgetExceeded { what: &'static str, size: u128, budget: u128 },
    #[error("generators have empty intersection: the family would contain the empty set")]
    ImproperFilter,
    #[error("filter is not an ultrafilter")]
    NotUltrafilter,
    #[error("ultrafilter does not contain the power's filter")]
    NotContaining,
    #[error("invalid homomorphism: {0}")]
    InvalidHomomorphism(String),
    #[error("gadget does not define the clique relation on the target")]
    NotAClique,
    #[error("extraction failed: {0}")]
    ExtractionFailure(String),
    #[error("n must be at least 2, got {0}")]
    BadN(usize),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("component census failed: {0}")]
    CensusFailure(String),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("validation failed: {0}")]
    ValidationFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Errors that can only come from a broken implementation, because the
    /// corresponding claim holds for every finite input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::ExtractionFailure(_)
                | Error::CensusFailure(_)
                | Error::NotAPartialOrder(_)
                | Error::ValidationFailure(_)
        )
    }

    pub(crate) fn budget(what: &'static str, size: u128, budget: u128) -> Self {
        Error::BudgetExceeded { what, size, budget }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}
