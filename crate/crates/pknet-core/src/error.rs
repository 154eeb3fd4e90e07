use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Crate-wide error type. Variants carry enough context to name the violated
/// precondition and, for exhaustive checks, a concrete witness.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCap { order: u128, cap: usize },

    #[error("elements belong to different groups")]
    GroupMismatch,

    #[error("no group element labelled {0:?}")]
    UnknownElement(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid group extension: {0}")]
    InvalidExtension(String),

    #[error("malformed category: {0}")]
    MalformedCategory(String),

    #[error("category is not a poset with a bottom object: {0}")]
    NotPosetWithBottom(String),

    #[error("category is not a groupoid: {0}")]
    NotAGroupoid(String),

    #[error("groupoid is not connected: {0}")]
    NotConnected(String),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("not a natural transformation: {0}")]
    NotNatural(String),

    #[error("not a group action: {0}")]
    InvalidAction(String),

    #[error("no object named {0:?}")]
    UnknownObject(String),

    #[error("no morphism named {0:?}")]
    UnknownMorphism(String),

    #[error("chord classes are incompatible: {0}")]
    ClassMismatch(String),

    #[error("network is structurally invalid: {0}")]
    MalformedNetwork(String),

    #[error("network violates naturality: {0}")]
    UnnaturalNetwork(String),

    #[error("section is not closed under composition: {0}")]
    SectionNotClosed(String),

    #[error("invalid bisection: {0}")]
    InvalidBisection(String),

    #[error("invalid transport frame: {0}")]
    InvalidFrame(String),

    #[error("no transport morphism from chord {from} to chord {to}")]
    NoTransport { from: usize, to: usize },

    #[error("unknown pitch class {0:?}")]
    UnknownPitch(String),

    #[error("search bound of {bound} exceeded: {context}")]
    SearchBound { bound: u64, context: String },

    #[error("invalid descriptor: {0}")]
    Descriptor(String),
}

impl Error {
    /// True for errors caused by blowing a configured resource limit rather
    /// than by bad input; the CLI maps these to a dedicated exit code.
    pub fn is_resource_bound(&self) -> bool {
        matches!(
            self,
            Error::OrderCap { .. } | Error::SearchBound { .. }
        )
    }
}
