//! Arbitrary-precision nonnegative integers.
//!
//! Only the operations the root engines need are provided: addition,
//! checked subtraction, multiplication and short division by one-word
//! constants, and (for verification and the cube engine) general
//! multiplication and powers. Values are immutable once built; every
//! operation returns a fresh [`Natural`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

type Limb = u64;
type Wide = u128;

const LIMB_BITS: u32 = Limb::BITS;

/// Largest power of ten that fits in a limb, and its exponent.
const DEC_CHUNK: Limb = 10_000_000_000_000_000_000;
const DEC_CHUNK_DIGITS: usize = 19;

/// An arbitrary-precision nonnegative integer.
///
/// Limbs are little-endian and the vector never carries high zero limbs, so
/// zero is the empty vector and derived equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Natural {
    limbs: Vec<Limb>,
}

impl Natural {
    pub fn zero() -> Self {
        Natural { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Natural::from(1u64)
    }

    /// Build from little-endian 64-bit words; high zero words are dropped.
    pub fn from_u64_limbs(limbs: Vec<u64>) -> Self {
        Natural::from_limbs(limbs)
    }

    fn from_limbs(mut limbs: Vec<Limb>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Natural { limbs }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs == [1]
    }

    pub fn is_even(&self) -> bool {
        self.limbs.first().is_none_or(|l| l & 1 == 0)
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_len(&self) -> u64 {
        match self.limbs.last() {
            None => 0,
            Some(top) => {
                (self.limbs.len() as u64 - 1) * LIMB_BITS as u64
                    + (LIMB_BITS - top.leading_zeros()) as u64
            }
        }
    }

    /// The value as a `u64`, if it fits.
    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    /// The top (up to) 64 significant bits and the number of bits shifted
    /// out below them: `self ≈ top · 2^shift`.
    pub fn leading_bits(&self) -> (u64, u64) {
        let bits = self.bit_len();
        if bits <= 64 {
            return (self.to_u64().unwrap_or(0), 0);
        }
        let shift = bits - 64;
        let word = (shift / LIMB_BITS as u64) as usize;
        let off = (shift % LIMB_BITS as u64) as u32;
        let lo = self.limbs[word] >> off;
        let hi = if off == 0 {
            0
        } else {
            self.limbs.get(word + 1).map_or(0, |h| h << (LIMB_BITS - off))
        };
        (lo | hi, shift)
    }

    /// Parse an unsigned decimal digit string (no sign, no separators).
    pub fn parse_decimal(text: &str) -> Result<Self, ParseError> {
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        if let Some((pos, ch)) = text.char_indices().find(|(_, c)| !c.is_ascii_digit()) {
            return Err(ParseError::InvalidDigit { ch, pos });
        }
        let bytes = text.as_bytes();
        let head = bytes.len() % DEC_CHUNK_DIGITS;
        let mut acc = Natural::zero();
        let mut push = |chunk: &[u8], scale: Limb| {
            let v = chunk
                .iter()
                .fold(0 as Limb, |v, d| v * 10 + (d - b'0') as Limb);
            acc = acc.mul_add_limb(scale, v);
        };
        if head > 0 {
            push(&bytes[..head], 10u64.pow(head as u32));
        }
        for chunk in bytes[head..].chunks(DEC_CHUNK_DIGITS) {
            push(chunk, DEC_CHUNK);
        }
        Ok(acc)
    }

    pub fn to_decimal(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut chunks = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_rem_limb(DEC_CHUNK);
            chunks.push(r);
            rest = q;
        }
        let mut out = chunks.pop().map(|c| c.to_string()).unwrap_or_default();
        for c in chunks.iter().rev() {
            out.push_str(&format!("{c:019}"));
        }
        out
    }

    pub fn add(&self, other: &Natural) -> Natural {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = false;
        for (i, &x) in long.iter().enumerate() {
            let y = short.get(i).copied().unwrap_or(0);
            let (s1, c1) = x.overflowing_add(y);
            let (s2, c2) = s1.overflowing_add(carry as Limb);
            out.push(s2);
            carry = c1 || c2;
        }
        if carry {
            out.push(1);
        }
        Natural { limbs: out }
    }

    pub fn add_small(&self, v: u64) -> Natural {
        self.add(&Natural::from(v))
    }

    /// `self - other`, or `None` when `other > self`.
    pub fn sub_checked(&self, other: &Natural) -> Option<Natural> {
        if self < other {
            return None;
        }
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = false;
        for (i, &x) in self.limbs.iter().enumerate() {
            let y = other.limbs.get(i).copied().unwrap_or(0);
            let (d1, b1) = x.overflowing_sub(y);
            let (d2, b2) = d1.overflowing_sub(borrow as Limb);
            out.push(d2);
            borrow = b1 || b2;
        }
        debug_assert!(!borrow);
        Some(Natural::from_limbs(out))
    }

    /// `|self - other|` together with the ordering of `self` against `other`.
    pub fn abs_diff(&self, other: &Natural) -> (Ordering, Natural) {
        match self.cmp(other) {
            Ordering::Less => (Ordering::Less, other.sub_checked(self).unwrap()),
            ord => (ord, self.sub_checked(other).unwrap()),
        }
    }

    /// Product with a small constant, `0 <= m <= 81`.
    ///
    /// This is the only multiplication the square engine's loop performs.
    pub fn mul_small(&self, m: u32) -> Natural {
        assert!(m <= 81, "mul_small factor {m} exceeds 81");
        self.mul_limb(m as Limb)
    }

    fn mul_limb(&self, m: Limb) -> Natural {
        self.mul_add_limb(m, 0)
    }

    /// `self * m + add` in one pass.
    fn mul_add_limb(&self, m: Limb, add: Limb) -> Natural {
        if m == 0 {
            return Natural::from(add);
        }
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = add as Wide;
        for &x in &self.limbs {
            let t = x as Wide * m as Wide + carry;
            out.push(t as Limb);
            carry = t >> LIMB_BITS;
        }
        if carry != 0 {
            out.push(carry as Limb);
        }
        Natural::from_limbs(out)
    }

    /// `self * 9^i`, built from repeated small multiplications.
    pub fn shift9(&self, i: u32) -> Natural {
        let mut out = self.clone();
        // 9^20 < 2^64, so step in blocks of up to 20 powers.
        let mut left = i;
        while left > 0 && !out.is_zero() {
            let step = left.min(20);
            out = out.mul_limb(9u64.pow(step));
            left -= step;
        }
        out
    }

    /// Short division by a one-word divisor: `(quotient, remainder)`.
    ///
    /// The engines only divide by 2, 3, 9, 18, 27, 36 and 54.
    pub fn div_small(&self, d: u32) -> (Natural, u32) {
        assert!(d != 0, "division by zero");
        let (q, r) = self.div_rem_limb(d as Limb);
        (q, r as u32)
    }

    fn div_rem_limb(&self, d: Limb) -> (Natural, Limb) {
        let mut out = vec![0; self.limbs.len()];
        let mut rem: Wide = 0;
        for (i, &x) in self.limbs.iter().enumerate().rev() {
            let cur = (rem << LIMB_BITS) | x as Wide;
            out[i] = (cur / d as Wide) as Limb;
            rem = cur % d as Wide;
        }
        (Natural::from_limbs(out), rem as Limb)
    }

    /// `self mod d` without building the quotient.
    pub fn rem_small(&self, d: u32) -> u32 {
        assert!(d != 0, "division by zero");
        let d = d as Wide;
        self.limbs
            .iter()
            .rev()
            .fold(0 as Wide, |rem, &x| ((rem << LIMB_BITS) | x as Wide) % d) as u32
    }

    /// Iterated decimal digit sum: 0 for zero, otherwise in `1..=9`.
    ///
    /// Computed through the residue mod 9, which agrees with repeated digit
    /// summation.
    pub fn digit_root(&self) -> u8 {
        if self.is_zero() {
            return 0;
        }
        match self.rem_small(9) {
            0 => 9,
            r => r as u8,
        }
    }

    pub fn mul(&self, other: &Natural) -> Natural {
        if self.is_zero() || other.is_zero() {
            return Natural::zero();
        }
        let mut out = vec![0 as Limb; self.limbs.len() + other.limbs.len()];
        for (i, &x) in self.limbs.iter().enumerate() {
            let mut carry: Wide = 0;
            for (j, &y) in other.limbs.iter().enumerate() {
                let t = x as Wide * y as Wide + out[i + j] as Wide + carry;
                out[i + j] = t as Limb;
                carry = t >> LIMB_BITS;
            }
            let mut k = i + other.limbs.len();
            while carry != 0 {
                let t = out[k] as Wide + carry;
                out[k] = t as Limb;
                carry = t >> LIMB_BITS;
                k += 1;
            }
        }
        Natural::from_limbs(out)
    }

    pub fn pow(&self, e: u32) -> Natural {
        let mut result = Natural::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Number of base-9 digits (zero has none).
    pub fn base9_len(&self) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let mut n = 0;
        let mut rest = self.clone();
        loop {
            let (q, mut top) = rest.div_rem_limb(9u64.pow(20));
            if q.is_zero() {
                while top > 0 {
                    top /= 9;
                    n += 1;
                }
                return n;
            }
            n += 20;
            rest = q;
        }
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural::from_limbs(vec![v])
    }
}

impl From<u32> for Natural {
    fn from(v: u32) -> Self {
        Natural::from(v as u64)
    }
}

impl From<u128> for Natural {
    fn from(v: u128) -> Self {
        Natural::from_limbs(vec![v as Limb, (v >> LIMB_BITS) as Limb])
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Natural {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Natural::parse_decimal(s)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.to_decimal())
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Natural({})", self.to_decimal())
    }
}

/// A signed value carried as sign and magnitude.
///
/// Only appears where a branch terminates with `frac < f`; its magnitude is
/// how far the comparison overshot.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignedResidual {
    negative: bool,
    magnitude: Natural,
}

impl SignedResidual {
    pub fn zero() -> Self {
        SignedResidual { negative: false, magnitude: Natural::zero() }
    }

    pub fn positive(magnitude: Natural) -> Self {
        SignedResidual { negative: false, magnitude }
    }

    /// Negative value of the given magnitude; zero stays unsigned.
    pub fn negative(magnitude: Natural) -> Self {
        let negative = !magnitude.is_zero();
        SignedResidual { negative, magnitude }
    }

    /// `x - y` as a signed value.
    pub fn difference(x: &Natural, y: &Natural) -> Self {
        match x.abs_diff(y) {
            (Ordering::Less, m) => SignedResidual::negative(m),
            (_, m) => SignedResidual::positive(m),
        }
    }

    pub fn signum(&self) -> Ordering {
        if self.negative {
            Ordering::Less
        } else if self.magnitude.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn magnitude(&self) -> &Natural {
        &self.magnitude
    }

    /// The value if it is nonnegative.
    pub fn as_natural(&self) -> Option<&Natural> {
        (!self.negative).then_some(&self.magnitude)
    }

    /// `self - y` for a nonnegative `y`.
    pub fn sub_natural(&self, y: &Natural) -> SignedResidual {
        if self.negative {
            SignedResidual::negative(self.magnitude.add(y))
        } else {
            SignedResidual::difference(&self.magnitude, y)
        }
    }
}

impl fmt::Display for SignedResidual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.pad(&format!("-{}", self.magnitude))
        } else {
            f.pad(&self.magnitude.to_decimal())
        }
    }
}

impl fmt::Debug for SignedResidual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedResidual({self})")
    }
}
