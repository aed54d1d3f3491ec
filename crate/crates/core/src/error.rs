use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order underflow: divisor has order {divisor}, dividend has order {dividend}")]
    OrderUnderflow { divisor: usize, dividend: usize },
    #[error("division by zero")]
    ZeroDivisor,
    #[error("inner series not delta: composition needs a zero constant term")]
    InnerNotDelta,
    #[error("not a delta series (need zero constant term and nonzero linear term)")]
    NotDelta,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("insufficient order: need {needed}, series is valid to {available}")]
    InsufficientOrder { needed: usize, available: usize },
    #[error("invalid Sheffer pair: {0}")]
    InvalidPair(String),
    #[error("index out of range: ({n}, {k})")]
    IndexOutOfRange { n: usize, k: usize },
    #[error("oracle limit: enumeration supports 1 <= n <= {max}, got {n}")]
    OracleLimit { n: usize, max: usize },
    #[error("family `{0}` has no Sheffer pair")]
    NoShefferPair(String),
    #[error("family `{0}` is not an associated sequence (g != 1)")]
    NotAssociated(String),
    #[error("Frobenius hypothesis violated: p_n(0) != 0 for family `{0}`")]
    FrobeniusHypothesis(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("missing parameter `{param}` for `{id}`")]
    MissingParam { id: String, param: String },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("routes disagree for {what} at ({n}, {k}): {left} vs {right}")]
    RouteMismatch {
        what: String,
        n: usize,
        k: usize,
        left: String,
        right: String,
    },
}
