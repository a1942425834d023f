//! Verdicts and evidence shared by the square and cube engines.

use crate::error::CertifyError;
use crate::natural::{Natural, SignedResidual};
use crate::residue::{
    candidates_for_root, residue_class_of, root_feasible, strip_factors, CandidateSet,
    Normalization, ResidueClass,
};

/// One step of a branch, in the column order of the worked tables:
/// `(i, N_i, DR(N_i), b_{i+1}, p_i, frac_i, f_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IterationRow {
    pub i: u32,
    pub n_i: Natural,
    pub dr: u8,
    pub b_next: u8,
    pub p_i: Natural,
    /// Negative only when `N_i` was smaller than the digit correction.
    pub frac_i: SignedResidual,
    pub f_i: Natural,
}

/// Result of a single loop step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Continue,
    /// `frac_i = f_i`; carries the root of the core, `a + 18·p_i`.
    Equal(Natural),
    /// `frac_i < f_i`; carries `frac_i - f_i`.
    Fail(SignedResidual),
}

/// Outcome of branch setup.
#[derive(Debug)]
pub enum Setup<B> {
    Ready(B),
    /// The core equals `a^e` (p = 0).
    Trivial,
    /// The core is smaller than `a^e`.
    Below,
    /// `n - a^e` is not divisible by the gate modulus (36 or 54).
    Gate { remainder: u32 },
}

/// How a candidate branch ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchOutcome {
    Trivial,
    Equal,
    Fail,
    Below,
    Gate { remainder: u32 },
}

impl BranchOutcome {
    pub fn is_exact(self) -> bool {
        matches!(self, BranchOutcome::Trivial | BranchOutcome::Equal)
    }

    pub fn name(self) -> &'static str {
        match self {
            BranchOutcome::Trivial => "trivial",
            BranchOutcome::Equal => "equal",
            BranchOutcome::Fail => "fail",
            BranchOutcome::Below => "below",
            BranchOutcome::Gate { .. } => "gate",
        }
    }
}

/// Complete record of one candidate branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReport {
    pub a: ResidueClass,
    /// Present once setup succeeded.
    pub n0: Option<Natural>,
    pub rows: Vec<IterationRow>,
    pub outcome: BranchOutcome,
    /// Root of the core when the branch is exact.
    pub root: Option<Natural>,
    /// `frac_i - f_i` at the terminating row: zero on `Equal`, negative on `Fail`.
    pub residual: Option<SignedResidual>,
}

impl BranchReport {
    pub(crate) fn terminal(a: ResidueClass, outcome: BranchOutcome, root: Option<Natural>) -> Self {
        BranchReport { a, n0: None, rows: Vec::new(), outcome, root, residual: None }
    }

    /// Index `i` of the terminating step, or `None` if the loop never ran.
    pub fn iterations(&self) -> Option<u32> {
        self.rows.last().map(|r| r.i)
    }

    pub fn steps(&self) -> usize {
        self.rows.len()
    }
}

/// A branch state that can be advanced one loop step at a time.
pub(crate) trait Stepper {
    fn step(&mut self) -> Step;
    fn steps_taken(&self) -> usize;
    /// `(N_0, rows)`.
    fn into_parts(self) -> (Natural, Vec<IterationRow>);
}

/// Step cap: the core's base-9 length divided by the root degree, plus 4.
/// The termination criterion always fires before it.
pub(crate) fn step_budget(n: &Natural, exponent: u32) -> u32 {
    n.base9_len().div_ceil(exponent) + 4
}

/// Run a prepared branch to termination and package its report.
pub(crate) fn drive_branch<S: Stepper>(
    a: ResidueClass,
    setup: Setup<S>,
    budget: u32,
) -> Result<BranchReport, CertifyError> {
    let mut state = match setup {
        Setup::Ready(s) => s,
        Setup::Trivial => {
            let mut r = BranchReport::terminal(a, BranchOutcome::Trivial, Some(Natural::from(a.value() as u64)));
            r.residual = Some(SignedResidual::zero());
            return Ok(r);
        }
        Setup::Below => return Ok(BranchReport::terminal(a, BranchOutcome::Below, None)),
        Setup::Gate { remainder } => {
            return Ok(BranchReport::terminal(a, BranchOutcome::Gate { remainder }, None))
        }
    };
    let (outcome, root, residual) = loop {
        if state.steps_taken() as u32 >= budget {
            return Err(CertifyError::StepBudgetExhausted { a: a.value(), budget });
        }
        match state.step() {
            Step::Continue => {}
            Step::Equal(root) => break (BranchOutcome::Equal, Some(root), SignedResidual::zero()),
            Step::Fail(res) => break (BranchOutcome::Fail, None, res),
        }
    };
    let (n0, rows) = state.into_parts();
    Ok(BranchReport { a, n0: Some(n0), rows, outcome, root, residual: Some(residual) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// An exponent of 2 or 3 is not a multiple of the root degree.
    Infeasible,
    /// No residue's e-th power falls in the core's class.
    ClassExcluded,
    /// Every candidate branch terminated without a root.
    BranchesExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Exact(Natural),
    NotExact(Rejection),
}

/// A checkable verdict on whether the input is a perfect e-th power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: Natural,
    pub exponent: u32,
    pub normalization: Normalization,
    pub class: ResidueClass,
    pub candidates: CandidateSet,
    /// One report per candidate, ascending in `a`. Empty when rejected
    /// before any branch ran.
    pub branches: Vec<BranchReport>,
    pub verdict: Verdict,
}

impl Certificate {
    pub fn root(&self) -> Option<&Natural> {
        match &self.verdict {
            Verdict::Exact(r) => Some(r),
            Verdict::NotExact(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.root().is_some()
    }

    /// The branch that produced the root, if any.
    pub fn winning_branch(&self) -> Option<&BranchReport> {
        self.branches.iter().find(|b| b.outcome.is_exact())
    }

    /// Verdict label: `square`/`non-square`, `cube`/`non-cube`.
    pub fn verdict_name(&self) -> &'static str {
        match (self.exponent, self.is_exact()) {
            (2, true) => "square",
            (2, false) => "non-square",
            (3, true) => "cube",
            (3, false) => "non-cube",
            (_, true) => "exact",
            (_, false) => "non-exact",
        }
    }

    /// Loop steps summed over all branches.
    pub fn total_steps(&self) -> usize {
        self.branches.iter().map(BranchReport::steps).sum()
    }
}

/// Shared certification flow: normalize, gate on the exponents of 2 and 3,
/// classify, run every candidate branch, then re-verify and reassemble.
pub(crate) fn certify_with<F>(
    n: &Natural,
    exponent: u32,
    run_branch: F,
) -> Result<Certificate, CertifyError>
where
    F: Fn(&Natural, ResidueClass) -> Result<BranchReport, CertifyError>,
{
    let normalization = strip_factors(n)?;
    let class = residue_class_of(&normalization.core)?;
    let candidates = candidates_for_root(class, exponent);
    let mut cert = Certificate {
        input: n.clone(),
        exponent,
        normalization,
        class,
        candidates,
        branches: Vec::new(),
        verdict: Verdict::NotExact(Rejection::Infeasible),
    };
    if !root_feasible(&cert.normalization, exponent) {
        return Ok(cert);
    }
    if cert.candidates.is_empty() {
        cert.verdict = Verdict::NotExact(Rejection::ClassExcluded);
        return Ok(cert);
    }

    let core = &cert.normalization.core;
    cert.branches = cert
        .candidates
        .iter()
        .map(|a| run_branch(core, a))
        .collect::<Result<_, _>>()?;

    let mut exact = cert.branches.iter().filter(|b| b.outcome.is_exact());
    let winner = exact.next();
    if exact.next().is_some() {
        return Err(CertifyError::AmbiguousRoot);
    }
    cert.verdict = match winner {
        None => Verdict::NotExact(Rejection::BranchesExhausted),
        Some(branch) => {
            let core_root = branch.root.as_ref().expect("exact branch carries a root");
            if core_root.pow(exponent) != *core {
                return Err(CertifyError::VerificationFailed {
                    a: branch.a.value(),
                    root: core_root.to_decimal(),
                });
            }
            let norm = &cert.normalization;
            let full = Natural::from(2u64)
                .pow(norm.k / exponent)
                .mul(&Natural::from(3u64).pow(norm.l / exponent))
                .mul(core_root);
            Verdict::Exact(full)
        }
    };
    Ok(cert)
}
