use thiserror::Error;

/// Errors raised while validating inputs or running a construction.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("missing composite for ({g}, {f})")]
    MissingComposite { g: String, f: String },
    #[error("composite of ({g}, {f}) given as {gf} has the wrong source or target")]
    BadComposite { g: String, f: String, gf: String },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("bad identity at object {object}: {reason}")]
    BadIdentity { object: String, reason: String },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("not a natural transformation: {0}")]
    NotNatural(String),
    #[error("not a monoid: {0}")]
    NotAMonoid(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("size limit exceeded: {what} exceeds {limit}")]
    SizeLimitExceeded { what: String, limit: usize },
    #[error("categorification did not close within word length {bound}")]
    NotFinite { bound: usize },
    #[error("simplicial set is not skeletal at its bound")]
    NotSkeletal,
    #[error("simplicial identity {0} fails")]
    SimplicialIdentity(String),
    #[error("not a simplicial map: {0}")]
    NotSimplicialMap(String),
    #[error("truncation too low: need bound {required}, have {actual}")]
    InsufficientTruncation { required: usize, actual: usize },
    #[error("group action is not free: object {object} is fixed by {element}")]
    ActionNotFree { object: String, element: String },
    #[error("not a group action: {0}")]
    NotAnAction(String),
    #[error("indexing category is not strongly connected")]
    NotStronglyConnected,
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("unitality fails at {0}")]
    UnitalityViolation(String),
    #[error("lax functoriality fails at chain {0}")]
    LaxFunctorialityViolation(String),
    #[error("cocycle condition fails at chain {0}")]
    CocycleViolation(String),
    #[error("{0} is not a homomorphism")]
    NotAHomomorphism(String),
    #[error("conditions (a)/(b) fail: {0}")]
    ConditionsFailed(String),
    #[error("bad reconstruction choice: {0}")]
    BadChoice(String),
}

pub type Result<T> = std::result::Result<T, Error>;
