use thiserror::Error;

use crate::group::SimpleFactorLabel;

/// Errors raised by the group, permutation and reduction machinery.
///
/// "No isomorphism" is never an error: solvers return an empty
/// [`Subcoset`](crate::perm::Subcoset) instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("simple group order {0} is outside the classification table")]
    OrderOutOfRange(usize),
    #[error("group of order {0} is not simple")]
    NotSimple(usize),
    #[error("composition factor {0} is neither cyclic nor projective special linear")]
    FactorClassViolation(SimpleFactorLabel),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("domain size mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("filtered set is not a subcoset: {0}")]
    NotASubcoset(String),
    #[error("product domain of size {size} exceeds bound {bound}")]
    DomainTooLarge { size: usize, bound: usize },
    #[error("permutation is not a member of the wreath tower: {0}")]
    NotMember(String),
    #[error("top factor of the second group is not isomorphic to the anchor")]
    TopFactorNotIsomorphic,
    #[error("component of order {order} exceeds the Cayley-table bound {bound}")]
    ComponentTooLarge { order: u128, bound: usize },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("map is not bilinear at ({0}, {1})")]
    NotBilinear(usize, usize),
    #[error("map is not an isometry")]
    NotIsometry,
    #[error("automorphism does not fix the central subgroup")]
    DoesNotFixA,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
