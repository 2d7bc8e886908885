use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("unknown vertex label `{0}`")]
    UnknownVertex(String),
    #[error("{0} is not a face of the complex")]
    NotAFace(String),
    #[error("vertex labels clash: `{0}`")]
    LabelClash(String),
    #[error("{what}: {value} exceeds the limit {limit}")]
    LimitExceeded { what: &'static str, value: usize, limit: usize },
    #[error("enumeration needs {needed} bits but the budget is {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error("not a sphere: {0}")]
    NotASphere(String),
    #[error("invalid building set: {0}")]
    InvalidBuildingSet(String),
    #[error("{0} is not an element of the building set")]
    NotInBuildingSet(String),
    #[error("building set is not connected")]
    Disconnected,
    #[error("sum of building sets is undefined: {0}")]
    SumUndefined(String),
    #[error("input is not a cocycle: {0}")]
    NotCocycle(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("family {family} is defined for n >= {min}, got {n}")]
    FamilyRange { family: String, n: usize, min: usize },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("invalid characteristic matrix: {0}")]
    InvalidCharacteristic(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by a configured limit or budget.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::LimitExceeded { .. } | Error::BudgetExceeded { .. })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
