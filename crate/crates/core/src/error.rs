use thiserror::Error;

/// Errors raised by constructors, validators and functors.
///
/// Validation failures carry the smallest witness found so callers can report
/// it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid partial map: {0}")]
    InvalidPartialMap(String),

    #[error("map is not continuous at point {point}")]
    NotContinuous { point: usize },

    #[error("semigroup is empty")]
    EmptySemigroup,

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("not associative: ({0}·{1})·{2} != {0}·({1}·{2})", .triple.0, .triple.1, .triple.2)]
    NotAssociative { triple: (usize, usize, usize) },

    #[error("element {element} has {count} inverses, expected exactly one")]
    NoUniqueInverse { element: usize, count: usize },

    #[error("not a semigroup homomorphism at ({0}, {1})", .pair.0, .pair.1)]
    NotHomomorphism { pair: (usize, usize) },

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("invalid action morphism, condition {condition}: {witness}")]
    InvalidMorphism { condition: String, witness: String },

    #[error("groupoid axiom ({axiom}) fails: {witness}")]
    GroupoidAxiom { axiom: String, witness: String },

    #[error("groupoid is not étale at arrow {arrow}")]
    NotEtale { arrow: usize },

    #[error("invalid groupoid homomorphism: {0}")]
    InvalidGroupoidHom(String),

    #[error("invalid couple morphism: {0}")]
    InvalidCouple(String),

    #[error("endpoints do not match: {0}")]
    EndpointMismatch(String),

    #[error("space is not discrete")]
    NonDiscreteSpace,

    #[error("groupoid topology is not discrete")]
    NonDiscreteGroupoid,

    #[error("not a *-homomorphism: {0}")]
    NotStarHom(String),

    #[error("invalid *-algebra: {0}")]
    InvalidAlgebra(String),

    #[error("size guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: String, limit: usize },

    #[error("malformed input: {0}")]
    Json(String),
}

impl Error {
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }

    pub(crate) fn guard(what: impl Into<String>, limit: usize) -> Self {
        Error::GuardExceeded { what: what.into(), limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
