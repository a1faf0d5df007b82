use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A byte string does not decode to the expected object.
    #[error("format error: {0}")]
    Format(String),

    /// Point or scalar is outside the group / field.
    #[error("invalid group encoding: {0}")]
    InvalidEncoding(&'static str),

    /// The identity element was supplied where a public key is required.
    #[error("identity element not allowed here")]
    IdentityPoint,

    /// MAC check failed or the wrong private key was used.
    #[error("decryption failed")]
    Decrypt,

    /// The unwrapped credential does not satisfy the issuance equation.
    #[error("invalid credential: issuance equation does not hold")]
    InvalidCredential,

    #[error("metadata validity window is empty ({start} >= {end})")]
    InvalidValidity { start: u32, end: u32 },

    #[error("index {j} out of range 1..={n_cs}")]
    IndexOutOfRange { j: u32, n_cs: u32 },

    #[error("generation policy exhausted after {0} short-term certificates")]
    PolicyExhausted(u32),

    #[error("CA identity is {0} bytes, at most 12 fit in a linkage block")]
    IdTooLong(usize),

    #[error("truncation width {0} must be within 1..=16")]
    InvalidTruncation(usize),

    #[error("n_c = {n_c} is not a multiple of n_cs = {n_cs}")]
    NonDivisible { n_c: u64, n_cs: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("profile mismatch: expected {expected}, found {found}")]
    ProfileMismatch { expected: String, found: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
