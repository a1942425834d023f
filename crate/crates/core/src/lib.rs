//! Exact perfect-square and perfect-cube certification for arbitrary
//! precision integers.
//!
//! Inputs are reduced to a core coprime to 6, classified into one of the six
//! residue classes mod 18 by digit root, and each admissible candidate `a`
//! runs a loop that recovers the root `a + 18p` one zeroless base-9 digit of
//! `p` at a time, or certifies that no such root exists.
//!
//! ```
//! use mod18root::{sqrt_certify, Natural};
//!
//! let n: Natural = "1429822969".parse().unwrap();
//! let cert = sqrt_certify(&n).unwrap();
//! assert_eq!(cert.root().unwrap().to_decimal(), "37813");
//! ```

pub mod bench;
pub mod cbrt;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod natural;
pub mod oracle;
pub mod residue;
pub mod sqrt;
pub mod twin;

pub use cbrt::{cbrt_certify, cbrt_certify_with, CubeEvaluation};
pub use certificate::{BranchOutcome, BranchReport, Certificate, IterationRow, Rejection, Step, Verdict};
pub use error::{CertifyError, DomainError, ParseError};
pub use natural::{Natural, SignedResidual};
pub use residue::{
    candidates_for_root, residue_class_of, root_feasible, strip_factors, u18_power_table,
    CandidateSet, Normalization, ResidueClass,
};
pub use sqrt::sqrt_certify;
pub use twin::{discriminate, twin_type, Discrimination, TwinType};
