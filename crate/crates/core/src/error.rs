use thiserror::Error;

/// Malformed decimal input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid digit {ch:?} at position {pos}")]
    InvalidDigit { ch: char, pos: usize },
}

/// Arguments outside an operation's domain.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("input must be at least 1")]
    Zero,
    #[error("{0} is divisible by 2 or 3")]
    NotCoprimeToSix(String),
    #[error("{0} is not a residue coprime to 18")]
    NotAResidue(u64),
    #[error("lower member {lower} is in class [{class}], which cannot start a twin pair")]
    NotTwinAligned { lower: String, class: u8 },
    #[error("upper member {upper} is not lower member {lower} plus 2")]
    NotTwinSpaced { lower: String, upper: String },
}

/// Failures raised by the certification engines.
///
/// Everything except `Domain` signals a broken internal invariant and should
/// never be observed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("branch a={a} ran past its step budget of {budget}")]
    StepBudgetExhausted { a: u8, budget: u32 },
    #[error("branch a={a} reported root {root} which fails re-exponentiation")]
    VerificationFailed { a: u8, root: String },
    #[error("more than one candidate branch reported an exact root")]
    AmbiguousRoot,
}
