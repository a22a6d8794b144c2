//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {0} exceeds the supported maximum 2^16")]
    OrderTooLarge(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("operands belong to different fields (orders {0} and {1})")]
    FieldMismatch(u32, u32),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot project a point from itself")]
    ProjectCenterItself,
    #[error("duplicate points supplied")]
    DuplicatePoints,
    #[error("{what} requires {limit} {unit} but the cap is {cap}")]
    TooLarge {
        what: &'static str,
        limit: u64,
        cap: u64,
        unit: &'static str,
    },
    #[error("degree {degree} too large for field of order {q}")]
    DegreeTooLarge { degree: usize, q: u32 },
    #[error("codewords belong to different codes")]
    CodeMismatch,
    #[error("star constraints are inconsistent (empty star)")]
    InconsistentConstraints,
    #[error("generator matrix rows are dependent (rank below {0})")]
    RankDeficient(usize),
    #[error("code is not projective: {0}")]
    NotProjective(String),
    #[error("spectrum verification failed: {0}")]
    VerificationFailed(String),
    #[error("weak EKR property fails: no avoiding hyperplanes")]
    WeakEkrFails,
    #[error("EKR module property fails: a point off the system lies on no avoiding hyperplane")]
    ModulePropertyFails,
    #[error("apex codeword already lies in the star")]
    BadApex,
    #[error("closed form disagrees with enumeration: {0}")]
    FormulaMismatch(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("spectrum unsuitable: {0}")]
    BadSpectrum(String),
    #[error("graph is not regular")]
    NotRegular,
    #[error("spectrum has no negative eigenvalue")]
    NonnegativeSpectrum,
    #[error("the zero polynomial has no factorization type")]
    ZeroPolynomial,
    #[error("relation partition is not an association scheme: {0}")]
    NotAScheme(String),
    #[error("eigenvalue matrices do not match the closed-form table: {0}")]
    TableMismatch(String),
    #[error("intersection number p^{k}_{{{i},{j}}} is not constant across class-{k} representatives")]
    NotConstant { k: usize, i: usize, j: usize },
    #[error("bad relation set: {0}")]
    BadRelationSet(String),
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("search timed out after {0:?}")]
    Timeout(std::time::Duration),
}
