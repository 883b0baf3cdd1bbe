use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group specification {0:?}")]
    GroupSpec(String),

    #[error("invalid group element {0:?}")]
    ElementSpec(String),

    #[error("group order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("group order {order} exceeds the automorphism enumeration bound {bound}")]
    AutomorphismBound { order: usize, bound: usize },

    #[error("group contains involutions; inverse pairs are not all of size two")]
    Involution,

    #[error("connection set is not symmetric or contains the identity: {0}")]
    NotSymmetric(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("search budget exceeded: {needed} candidates, budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
