//! Factor stripping, classification into the six residue classes coprime to
//! 18, and candidate enumeration for e-th roots.

use std::fmt;

use serde::Serialize;

use crate::error::DomainError;
use crate::natural::Natural;

/// One of the six residues mod 18 coprime to 18: 1, 5, 7, 11, 13, 17.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(into = "u8")]
pub struct ResidueClass(u8);

impl ResidueClass {
    pub const ALL: [ResidueClass; 6] = [
        ResidueClass(1),
        ResidueClass(5),
        ResidueClass(7),
        ResidueClass(11),
        ResidueClass(13),
        ResidueClass(17),
    ];

    pub const ONE: ResidueClass = ResidueClass(1);

    pub fn new(value: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.0 == value)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// The class whose residue mod 9 equals the digit root `dr`.
    ///
    /// 1, 5, 7 map to themselves; 2, 4, 8 map to 11, 13, 17. Digit roots
    /// 3, 6, 9 (multiples of three) have no class.
    pub fn from_digit_root(dr: u8) -> Option<Self> {
        match dr {
            1 => Some(ResidueClass(1)),
            2 => Some(ResidueClass(11)),
            4 => Some(ResidueClass(13)),
            5 => Some(ResidueClass(5)),
            7 => Some(ResidueClass(7)),
            8 => Some(ResidueClass(17)),
            _ => None,
        }
    }

    /// Product in the multiplicative group mod 18.
    pub fn mul(self, other: ResidueClass) -> ResidueClass {
        ResidueClass((self.0 as u16 * other.0 as u16 % 18) as u8)
    }
}

impl From<ResidueClass> for u8 {
    fn from(c: ResidueClass) -> u8 {
        c.0
    }
}

impl TryFrom<u64> for ResidueClass {
    type Error = DomainError;

    fn try_from(v: u64) -> Result<Self, Self::Error> {
        u8::try_from(v)
            .ok()
            .and_then(ResidueClass::new)
            .ok_or(DomainError::NotAResidue(v))
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&format!("[{}]", self.0))
    }
}

/// `m = 2^k · 3^l · core` with `core` coprime to 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub k: u32,
    pub l: u32,
    pub core: Natural,
}

impl Normalization {
    pub fn reconstruct(&self) -> Natural {
        Natural::from(2u64)
            .pow(self.k)
            .mul(&Natural::from(3u64).pow(self.l))
            .mul(&self.core)
    }
}

/// Strip every factor of 2 and 3 from `m` by short division.
pub fn strip_factors(m: &Natural) -> Result<Normalization, DomainError> {
    if m.is_zero() {
        return Err(DomainError::Zero);
    }
    let mut core = m.clone();
    let mut k = 0;
    while core.is_even() {
        core = core.div_small(2).0;
        k += 1;
    }
    let mut l = 0;
    loop {
        let (q, r) = core.div_small(3);
        if r != 0 {
            break;
        }
        core = q;
        l += 1;
    }
    Ok(Normalization { k, l, core })
}

/// Residue class of `n` mod 18, found from its digit root rather than by
/// dividing by 18.
pub fn residue_class_of(n: &Natural) -> Result<ResidueClass, DomainError> {
    if n.is_even() {
        return Err(DomainError::NotCoprimeToSix(n.to_decimal()));
    }
    ResidueClass::from_digit_root(n.digit_root())
        .ok_or_else(|| DomainError::NotCoprimeToSix(n.to_decimal()))
}

/// Class of `a^e` mod 18.
pub fn u18_power_table(a: ResidueClass, e: u32) -> ResidueClass {
    // Every element's order divides 6.
    (0..e % 6).fold(ResidueClass::ONE, |acc, _| acc.mul(a))
}

/// The residues `a` whose e-th power lands in a given class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub exponent: u32,
    pub class: ResidueClass,
    pub a_values: Vec<ResidueClass>,
}

impl CandidateSet {
    pub fn is_empty(&self) -> bool {
        self.a_values.is_empty()
    }

    pub fn len(&self) -> usize {
        self.a_values.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = ResidueClass> + '_ {
        self.a_values.iter().copied()
    }
}

/// All `a` with `a^e ≡ class (mod 18)`, ascending. An empty set means no
/// integer coprime to 6 has an e-th power in `class`.
pub fn candidates_for_root(class: ResidueClass, e: u32) -> CandidateSet {
    let a_values = ResidueClass::ALL
        .into_iter()
        .filter(|&a| u18_power_table(a, e) == class)
        .collect();
    CandidateSet { exponent: e, class, a_values }
}

/// Whether the stripped powers of 2 and 3 allow an e-th root at all.
pub fn root_feasible(norm: &Normalization, e: u32) -> bool {
    norm.k % e == 0 && norm.l % e == 0
}
