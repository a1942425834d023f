//! Residue-class discriminator between twin-prime products and squares.
//!
//! A pair `(q, q + 2)` with both members coprime to 6 sits in classes
//! `([5], [7])`, `([11], [13])` or `([17], [1])`, and its product is always
//! in `[17]`. Squares coprime to 6 only occupy `[1]`, `[7]` and `[13]`.
//! Primality is never checked: class `[17]` is necessary for a twin-prime
//! product, not sufficient.

use std::fmt;

use serde::Serialize;

use crate::error::DomainError;
use crate::natural::Natural;
use crate::residue::{residue_class_of, strip_factors, ResidueClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TwinType {
    /// `([5], [7])`
    A,
    /// `([11], [13])`
    B,
    /// `([17], [1])`
    C,
}

impl TwinType {
    /// Type keyed by the class of the lower member.
    pub fn from_lower_class(class: ResidueClass) -> Option<TwinType> {
        match class.value() {
            5 => Some(TwinType::A),
            11 => Some(TwinType::B),
            17 => Some(TwinType::C),
            _ => None,
        }
    }

    /// `(lower class, upper class)`.
    pub fn classes(self) -> (ResidueClass, ResidueClass) {
        let (lo, hi) = match self {
            TwinType::A => (5, 7),
            TwinType::B => (11, 13),
            TwinType::C => (17, 1),
        };
        (ResidueClass::new(lo).unwrap(), ResidueClass::new(hi).unwrap())
    }
}

impl fmt::Display for TwinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TwinType::A => "A",
            TwinType::B => "B",
            TwinType::C => "C",
        };
        f.pad(s)
    }
}

pub fn twin_type(lower: &Natural, upper: &Natural) -> Result<TwinType, DomainError> {
    if lower.add_small(2) != *upper {
        return Err(DomainError::NotTwinSpaced {
            lower: lower.to_decimal(),
            upper: upper.to_decimal(),
        });
    }
    // Lower classes [1], [7], [13] would put the upper member on a multiple of 3.
    let class = residue_class_of(lower)?;
    TwinType::from_lower_class(class).ok_or_else(|| DomainError::NotTwinAligned {
        lower: lower.to_decimal(),
        class: class.value(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Discrimination {
    /// Class `[1]`, `[7]` or `[13]`.
    SquareCandidate { class: ResidueClass, a_values: Vec<ResidueClass> },
    /// Class `[17]`.
    TwinProductCandidate,
    /// Class `[5]` or `[11]`.
    Neither { class: ResidueClass },
}

impl Discrimination {
    pub fn name(&self) -> &'static str {
        match self {
            Discrimination::SquareCandidate { .. } => "SquareCandidate",
            Discrimination::TwinProductCandidate => "TwinProductCandidate",
            Discrimination::Neither { .. } => "Neither",
        }
    }
}

/// Classify a value coprime to 6.
pub fn discriminate(n: &Natural) -> Result<Discrimination, DomainError> {
    let class = residue_class_of(n)?;
    Ok(match class.value() {
        17 => Discrimination::TwinProductCandidate,
        1 | 7 | 13 => Discrimination::SquareCandidate {
            class,
            a_values: crate::residue::candidates_for_root(class, 2).a_values,
        },
        _ => Discrimination::Neither { class },
    })
}

/// Strip factors of 2 and 3, then classify the core.
pub fn discriminate_any(m: &Natural) -> Result<Discrimination, DomainError> {
    discriminate(&strip_factors(m)?.core)
}
