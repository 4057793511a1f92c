use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("graphs are limited to {} vertices, got {0}", crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("finite cyclic vertex groups need order at least 2, got {0}")]
    TrivialVertexGroup(u64),
    #[error("missing vertex group for `{0}`")]
    MissingGroup(String),
    #[error("elements live in different group contexts")]
    ContextMismatch,
    #[error("malformed word at byte {position}: {message}")]
    Word { position: usize, message: String },
    #[error("the identity has no order")]
    IdentityHasNoOrder,
    #[error("`{0}` is not a cone vertex of the support")]
    NotConeVertex(String),
    #[error("empty letter set")]
    EmptyLetterSet,
    #[error("operation needs every vertex group to be infinite cyclic")]
    TorsionPresent,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    /// A scan ran past a bound that a theorem guarantees. Reaching this is a
    /// bug or a counterexample, never an expected outcome.
    #[error("exponent scan exceeded its guaranteed cap {cap} ({context}); reproduce with {reproduction}")]
    CapExceeded {
        cap: u64,
        context: &'static str,
        reproduction: String,
    },
    /// A constructed object failed a property that the construction is
    /// proven to guarantee.
    #[error("guaranteed property failed: {claim}; reproduce with {reproduction}")]
    Falsified { claim: &'static str, reproduction: String },
    #[error("enumeration budget of {0} states exceeded")]
    BudgetExceeded(usize),
    #[error("parameter out of supported range: {0}")]
    Unsupported(String),
}
