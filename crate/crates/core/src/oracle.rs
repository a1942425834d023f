//! Independent reference computations.
//!
//! The root oracles use plain bisection on `r^e ≤ n` with general
//! multiplication; they share nothing with the digit-expansion engines
//! beyond the [`Natural`] type.

use crate::error::DomainError;
use crate::natural::Natural;

/// Largest `r` with `r^e ≤ n`, and whether `r^e = n`.
pub fn iroot_oracle(n: &Natural, e: u32) -> (Natural, bool) {
    assert!(e >= 1, "root degree must be positive");
    if n.is_zero() {
        return (Natural::zero(), true);
    }
    // n < 2^bits ≤ (2^⌈bits/e⌉)^e, so hi is a strict upper bound.
    let hi_bits = n.bit_len().div_ceil(e as u64) as u32;
    let mut lo = Natural::zero();
    let mut hi = Natural::from(2u64).pow(hi_bits);
    while hi.sub_checked(&lo).is_some_and(|gap| !gap.is_one()) {
        let mid = lo.add(&hi).div_small(2).0;
        if mid.pow(e) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let exact = lo.pow(e) == *n;
    (lo, exact)
}

pub fn isqrt_oracle(n: &Natural) -> (Natural, bool) {
    iroot_oracle(n, 2)
}

pub fn icbrt_oracle(n: &Natural) -> (Natural, bool) {
    iroot_oracle(n, 3)
}

/// Digits `b_1, b_2, …` in `1..=9` with `p = Σ 9^i · b_{i+1}`.
pub fn zeroless_base9(p: &Natural) -> Result<Vec<u8>, DomainError> {
    if p.is_zero() {
        return Err(DomainError::Zero);
    }
    let mut digits = Vec::new();
    let mut rest = p.clone();
    while !rest.is_zero() {
        let digit = match rest.rem_small(9) {
            0 => 9,
            r => r,
        };
        rest = rest.sub_checked(&Natural::from(digit)).unwrap().div_small(9).0;
        digits.push(digit as u8);
    }
    Ok(digits)
}

/// Inverse of [`zeroless_base9`].
pub fn from_zeroless_base9(digits: &[u8]) -> Natural {
    digits
        .iter()
        .rev()
        .fold(Natural::zero(), |acc, &d| acc.mul_small(9).add_small(d as u64))
}

/// Predicted index of the terminating step for a square branch on `n`:
/// `log_9(√n / 2) − 3/2`, rounded to nearest, and 0 below 361.
///
/// `log₂ n` is taken from the bit length plus the top 64 bits, so only
/// that small window is ever converted to floating point.
pub fn predicted_iterations(n: &Natural) -> u32 {
    if *n < Natural::from(361u64) {
        return 0;
    }
    let (top, shift) = n.leading_bits();
    let log2_n = (top as f64).log2() + shift as f64;
    let estimate = (log2_n / 2.0 - 1.0) / 9f64.log2() - 1.5;
    estimate.round().max(0.0) as u32
}
