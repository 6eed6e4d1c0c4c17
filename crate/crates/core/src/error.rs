use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("dimension out of range: {0}")]
    DimensionOutOfRange(String),
    #[error("mismatched shape: {0}")]
    MismatchedShape(String),
    #[error("infinite domain and no sample budget: {0}")]
    InfiniteDomainWithoutSampleBudget(String),
    #[error("missing certificate: {0}")]
    MissingCertificate(String),
    #[error("missing datum: {0}")]
    MissingDatum(String),
    #[error("mismatched signature: {0}")]
    MismatchedSignature(String),
    #[error("Verdier admission missing: {0}")]
    VerdierAdmissionMissing(String),
    #[error("object tables differ: {0}")]
    ObjMismatch(String),
    #[error("stored action disagrees with the derived one: {0}")]
    SigmaMismatch(String),
    #[error("product not well defined: {0}")]
    ProductNotWellDefined(String),
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}
