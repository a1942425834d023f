//! Cube-root certification.
//!
//! With `N_0 = (n - a³)/54`, `n = (a + 18p)³` holds exactly when
//! `N_0 = a²p + 18ap² + 108p³`. The loop mirrors the square engine; the
//! digit `b_{i+1}` makes `N_i - a²·b_{i+1}` divisible by 9, and
//!
//! ```text
//! frac_i  = (N_i - a²·b_{i+1}) / 9
//! f_i     = b_{i+1}·[2a·(p_i + p_{i-1}) + 12·(p_i² + p_i·p_{i-1} + p_{i-1}²)]
//! N_{i+1} = frac_i - f_i
//! ```
//!
//! This incremental `f_i` is the difference of `2a·p² + 12·p³` between
//! consecutive prefixes `p_{i-1}` and `p_i = p_{i-1} + 9^i·b_{i+1}`, divided
//! by `9^i`. At `i = 0` it collapses to `2a·b₁² + 12·b₁³`.
//!
//! [`CubeEvaluation::Direct`] instead evaluates `(N_0 - a²·p_i)/9` against
//! `2a·p_i² + 12·p_i³` outright at every step. It is slower and exists as a
//! cross-check of the incremental form.

use std::cmp::Ordering;

use crate::certificate::{
    certify_with, drive_branch, step_budget, BranchReport, Certificate, IterationRow, Setup, Step,
    Stepper,
};
use crate::error::CertifyError;
use crate::natural::{Natural, SignedResidual};
use crate::residue::ResidueClass;
use crate::sqrt::digit_for_multiplier;

/// How `frac_i` and `f_i` are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CubeEvaluation {
    /// Scaled recursion on `N_i`; the rows match the worked cube table.
    #[default]
    Incremental,
    /// Closed-form evaluation at each prefix `p_i`; rows carry the unscaled
    /// `(N_0 - a²·p_i)/9` and `2a·p_i² + 12·p_i³`.
    Direct,
}

/// Digit `b` in `1..=9` with `a²·b ≡ target (mod 9)`.
pub fn cube_select_digit(target: u8, a: ResidueClass) -> u8 {
    let a = a.value() as u32;
    digit_for_multiplier(target, a * a)
}

/// The i = 0 closed form `2a·b² + 12·b³`.
pub fn f0_closed_form(a: ResidueClass, b: u8) -> u64 {
    let (a, b) = (a.value() as u64, b as u64);
    2 * a * b * b + 12 * b * b * b
}

/// `b·[2a·(p_i + p_prev) + 12·(p_i² + p_i·p_prev + p_prev²)]`.
pub fn incremental_f(a: ResidueClass, b: u8, p_prev: &Natural, p_i: &Natural) -> Natural {
    let linear = p_i.add(p_prev).mul_small(2 * a.value() as u32);
    let quad = p_i
        .mul(p_i)
        .add(&p_i.mul(p_prev))
        .add(&p_prev.mul(p_prev))
        .mul_small(12);
    linear.add(&quad).mul_small(b as u32)
}

/// `a²·p + 18a·p² + 108·p³`, the value `N_0` must equal for `(a + 18p)³`.
fn cubic_target(a: ResidueClass, p: &Natural) -> Natural {
    let a = a.value() as u64;
    let p2 = p.mul(p);
    let p3 = p2.mul(p);
    p.mul(&Natural::from(a * a))
        .add(&p2.mul(&Natural::from(18 * a)))
        .add(&p3.mul(&Natural::from(108u64)))
}

/// Loop state for one cube candidate `a`.
#[derive(Clone, Debug)]
pub struct CubeBranch {
    a: ResidueClass,
    mode: CubeEvaluation,
    n0: Natural,
    i: u32,
    n_i: Natural,
    p_prev: Natural,
    pow9: Natural,
    rows: Vec<IterationRow>,
}

/// Prepare the branch for candidate `a`, applying the mod-54 gate.
pub fn cube_setup(n: &Natural, a: ResidueClass, mode: CubeEvaluation) -> Setup<CubeBranch> {
    let a_cube = Natural::from(a.value() as u64).pow(3);
    let Some(diff) = n.sub_checked(&a_cube) else {
        return Setup::Below;
    };
    if diff.is_zero() {
        return Setup::Trivial;
    }
    let (n0, remainder) = diff.div_small(54);
    if remainder != 0 {
        return Setup::Gate { remainder };
    }
    Setup::Ready(CubeBranch {
        a,
        mode,
        n_i: n0.clone(),
        n0,
        i: 0,
        p_prev: Natural::zero(),
        pow9: Natural::one(),
        rows: Vec::new(),
    })
}

/// Exact division of a nonnegative value by `9^e`.
fn div_pow9(x: &Natural, e: u32) -> Natural {
    let mut out = x.clone();
    let mut left = e;
    while left > 0 {
        // 9^10 is the largest power of nine below 2^32.
        let step = left.min(10);
        let (q, r) = out.div_small(9u32.pow(step));
        debug_assert_eq!(r, 0);
        out = q;
        left -= step;
    }
    out
}

impl CubeBranch {
    pub fn a(&self) -> ResidueClass {
        self.a
    }

    pub fn n0(&self) -> &Natural {
        &self.n0
    }

    pub fn rows(&self) -> &[IterationRow] {
        &self.rows
    }

    pub fn step(&mut self) -> Step {
        let a = self.a.value() as u64;
        let dr = self.n_i.digit_root();
        let b = cube_select_digit(dr % 9, self.a);
        let p_i = self.p_prev.add(&self.pow9.mul_small(b as u32));

        // `scaled` is frac_i - f_i in the incremental scale; in direct mode
        // it is recovered from the closed-form difference divided by 9^{i+1}.
        let (frac, f, scaled) = match self.mode {
            CubeEvaluation::Incremental => {
                let correction = Natural::from(a * a * b as u64);
                let frac = match self.n_i.sub_checked(&correction) {
                    Some(d) => SignedResidual::positive(d.div_small(9).0),
                    None => SignedResidual::negative(
                        correction.sub_checked(&self.n_i).unwrap().div_small(9).0,
                    ),
                };
                let f = incremental_f(self.a, b, &self.p_prev, &p_i);
                let scaled = frac.sub_natural(&f);
                (frac, f, scaled)
            }
            CubeEvaluation::Direct => {
                let a_sq_p = p_i.mul(&Natural::from(a * a));
                let lhs = SignedResidual::difference(&self.n0, &a_sq_p);
                debug_assert_eq!(lhs.magnitude().rem_small(9), 0);
                let frac = if lhs.is_negative() {
                    SignedResidual::negative(lhs.magnitude().div_small(9).0)
                } else {
                    SignedResidual::positive(lhs.magnitude().div_small(9).0)
                };
                let p2 = p_i.mul(&p_i);
                let f = p2
                    .mul_small(2 * a as u32)
                    .add(&p2.mul(&p_i).mul_small(12));
                let whole = SignedResidual::difference(&self.n0, &cubic_target(self.a, &p_i));
                let mag = div_pow9(whole.magnitude(), self.i + 1);
                let scaled = if whole.is_negative() {
                    SignedResidual::negative(mag)
                } else {
                    SignedResidual::positive(mag)
                };
                (frac, f, scaled)
            }
        };

        self.rows.push(IterationRow {
            i: self.i,
            n_i: std::mem::take(&mut self.n_i),
            dr,
            b_next: b,
            p_i: p_i.clone(),
            frac_i: frac,
            f_i: f,
        });

        match scaled.signum() {
            Ordering::Equal => Step::Equal(p_i.mul_small(18).add_small(a)),
            Ordering::Less => Step::Fail(scaled),
            Ordering::Greater => {
                self.n_i = scaled.magnitude().clone();
                self.p_prev = p_i;
                self.pow9 = self.pow9.mul_small(9);
                self.i += 1;
                Step::Continue
            }
        }
    }
}

impl Stepper for CubeBranch {
    fn step(&mut self) -> Step {
        CubeBranch::step(self)
    }

    fn steps_taken(&self) -> usize {
        self.rows.len()
    }

    fn into_parts(self) -> (Natural, Vec<IterationRow>) {
        (self.n0, self.rows)
    }
}

pub fn run_cube_branch(
    n: &Natural,
    a: ResidueClass,
    mode: CubeEvaluation,
) -> Result<BranchReport, CertifyError> {
    drive_branch(a, cube_setup(n, a, mode), step_budget(n, 3))
}

/// Decide whether `n` is a perfect cube.
pub fn cbrt_certify(n: &Natural) -> Result<Certificate, CertifyError> {
    cbrt_certify_with(n, CubeEvaluation::Incremental)
}

pub fn cbrt_certify_with(n: &Natural, mode: CubeEvaluation) -> Result<Certificate, CertifyError> {
    certify_with(n, 3, |core, a| run_cube_branch(core, a, mode))
}
