use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid expression: {0}")]
    InvalidExpression(String),

    #[error("invalid action: {0}")]
    InvalidAction(String),

    #[error("central identification error: {0}")]
    CentralIdentification(String),

    #[error("order {order} exceeds the table limit {limit} and has no twisted-product form")]
    OrderLimitExceeded { order: u128, limit: usize },

    #[error("subgroup closure exceeded the limit of {0} elements")]
    SubgroupLimitExceeded(usize),

    #[error("the given elements do not generate a normal subgroup")]
    NotNormal,

    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),

    #[error("automorphism budget of {0} exceeded")]
    AutBudgetExceeded(u64),

    #[error("order {order} requires enumeration tier {required}, but tier {tier} is active")]
    TierLimitExceeded { order: u64, required: u8, tier: u8 },

    #[error("order {order} has a divisor {divisor} beyond the perfect-seed coverage")]
    IncompleteSeedSet { order: u64, divisor: u64 },

    #[error("unknown label {0:?}")]
    UnknownLabel(String),

    #[error("{0} is out of range")]
    OutOfRange(u64),

    #[error("no certificate covers target {target} in a twisted-product ambient")]
    IncompleteCertificates { target: String },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("operation needs a table-form group")]
    NeedsTable,

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
