use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MotiveError {
    #[error("incompatible rings: {0}")]
    IncompatibleRings(String),
    #[error("variety mismatch: {0}")]
    VarietyMismatch(String),
    #[error("unsupported morphism: {0}")]
    UnsupportedMorphism(String),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("not idempotent: {0}")]
    NotIdempotent(String),
    #[error("class is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("morphism does not lie in the cut Hom space: {0}")]
    NotInHomSpace(String),
    #[error(
        "direct sum of Chow motives with twists {0} and {1} is not supported; \
         pass to the orbit category, where twists are identified"
    )]
    UnsupportedDirectSum(i64, i64),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("unregistered ledger symbol `{0}`")]
    UnregisteredSymbol(String),
    #[error("symbol `{symbol}` has no value for measure {measure}")]
    MissingValue { symbol: String, measure: String },
    #[error("relation violated by {measure}: {relation}")]
    InconsistentRelation { measure: String, relation: String },
    #[error("symmetric power S^{n}({symbol}) is not registered in the ledger")]
    MissingSymmetricPower { symbol: String, n: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

impl MotiveError {
    /// Errors that indicate the engine disagrees with itself, as opposed to
    /// a caller violating a precondition.
    pub fn is_internal_consistency(&self) -> bool {
        matches!(self, MotiveError::InternalConsistency(_))
    }
}

pub type Result<T, E = MotiveError> = std::result::Result<T, E>;
