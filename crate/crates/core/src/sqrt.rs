//! Square-root certification.
//!
//! For a core `n` coprime to 6 and a candidate `a`, `n` is a square with
//! root `a + 18p` exactly when `N_0 = (n - a²)/36` satisfies
//! `(N_0 - a·p)/9 = p²`. The loop discovers `p` one zeroless base-9 digit
//! at a time:
//!
//! ```text
//! b_{i+1} : a·b_{i+1} ≡ N_i (mod 9), 1 ≤ b_{i+1} ≤ 9
//! frac_i  = (N_i - a·b_{i+1}) / 9
//! p_i     = p_{i-1} + 9^i·b_{i+1}
//! f_i     = b_{i+1}·(p_{i-1} + p_i)
//! N_{i+1} = frac_i - f_i
//! ```
//!
//! and stops when `frac_i = f_i` (square) or `frac_i < f_i` (not a square
//! on this branch). Inside the loop only addition, subtraction, and
//! multiplication or division by one- or two-digit constants are used.

use crate::certificate::{
    certify_with, drive_branch, step_budget, BranchReport, Certificate, IterationRow, Setup, Step,
    Stepper,
};
use crate::error::CertifyError;
use crate::natural::{Natural, SignedResidual};
use crate::residue::ResidueClass;

/// Inverses mod 9 indexed by residue; zero where none exists.
const INV_MOD9: [u8; 9] = [0, 1, 5, 0, 7, 2, 0, 4, 8];

/// Unique digit `b` in `1..=9` with `m·b ≡ target (mod 9)`; `b = 9`
/// stands for residue 0. `m` must be coprime to 3.
pub(crate) fn digit_for_multiplier(target: u8, m: u32) -> u8 {
    let inv = INV_MOD9[(m % 9) as usize];
    assert!(inv != 0, "multiplier {m} is not invertible mod 9");
    match (target as u32 % 9) * inv as u32 % 9 {
        0 => 9,
        b => b as u8,
    }
}

/// The nine-entry lookup: the digit `b` making `N_i - a·b` divisible by 9.
pub fn select_digit(target: u8, a: ResidueClass) -> u8 {
    digit_for_multiplier(target, a.value() as u32)
}

/// Loop state for one candidate `a`.
#[derive(Clone, Debug)]
pub struct SquareBranch {
    a: ResidueClass,
    n0: Natural,
    i: u32,
    n_i: Natural,
    p_prev: Natural,
    pow9: Natural,
    rows: Vec<IterationRow>,
}

/// Prepare the branch for candidate `a`, applying the mod-36 gate.
pub fn setup(n: &Natural, a: ResidueClass) -> Setup<SquareBranch> {
    let a_sq = Natural::from(a.value() as u64 * a.value() as u64);
    let Some(diff) = n.sub_checked(&a_sq) else {
        return Setup::Below;
    };
    if diff.is_zero() {
        return Setup::Trivial;
    }
    let (n0, remainder) = diff.div_small(36);
    if remainder != 0 {
        return Setup::Gate { remainder };
    }
    Setup::Ready(SquareBranch {
        a,
        n_i: n0.clone(),
        n0,
        i: 0,
        p_prev: Natural::zero(),
        pow9: Natural::one(),
        rows: Vec::new(),
    })
}

impl Stepper for SquareBranch {
    fn step(&mut self) -> Step {
        SquareBranch::step(self)
    }

    fn steps_taken(&self) -> usize {
        self.rows.len()
    }

    fn into_parts(self) -> (Natural, Vec<IterationRow>) {
        (self.n0, self.rows)
    }
}

impl SquareBranch {
    pub fn a(&self) -> ResidueClass {
        self.a
    }

    pub fn n0(&self) -> &Natural {
        &self.n0
    }

    pub fn rows(&self) -> &[IterationRow] {
        &self.rows
    }

    /// Run one iteration; on `Continue` the state has advanced to `i + 1`.
    pub fn step(&mut self) -> Step {
        let a = self.a.value() as u64;
        let dr = self.n_i.digit_root();
        let b = select_digit(dr % 9, self.a);
        let correction = Natural::from(a * b as u64);
        let frac = match self.n_i.sub_checked(&correction) {
            Some(d) => {
                let (q, r) = d.div_small(9);
                debug_assert_eq!(r, 0);
                SignedResidual::positive(q)
            }
            None => {
                let (q, r) = correction.sub_checked(&self.n_i).unwrap().div_small(9);
                debug_assert_eq!(r, 0);
                SignedResidual::negative(q)
            }
        };
        let p_i = self.p_prev.add(&self.pow9.mul_small(b as u32));
        let f = self.p_prev.add(&p_i).mul_small(b as u32);

        let residual = frac.sub_natural(&f);
        self.rows.push(IterationRow {
            i: self.i,
            n_i: std::mem::take(&mut self.n_i),
            dr,
            b_next: b,
            p_i: p_i.clone(),
            frac_i: frac,
            f_i: f,
        });

        match residual.signum() {
            std::cmp::Ordering::Equal => Step::Equal(p_i.mul_small(18).add_small(a)),
            std::cmp::Ordering::Less => Step::Fail(residual),
            std::cmp::Ordering::Greater => {
                self.n_i = residual.magnitude().clone();
                self.p_prev = p_i;
                self.pow9 = self.pow9.mul_small(9);
                self.i += 1;
                Step::Continue
            }
        }
    }
}

/// Run the branch for candidate `a` to termination.
pub fn run_branch(n: &Natural, a: ResidueClass) -> Result<BranchReport, CertifyError> {
    drive_branch(a, setup(n, a), step_budget(n, 2))
}

/// Decide whether `n` is a perfect square.
pub fn sqrt_certify(n: &Natural) -> Result<Certificate, CertifyError> {
    certify_with(n, 2, run_branch)
}
