//! Seeded benchmark runs measuring loop length against the iteration model.
//!
//! Inputs come from `ChaCha8Rng::seed_from_u64(seed)`; the same seed always
//! yields the same inputs, verdicts and iteration counts. Within each bit
//! size, even-indexed inputs are constructed squares and odd-indexed inputs
//! are random values coprime to 6.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::certificate::Certificate;
use crate::error::CertifyError;
use crate::natural::Natural;
use crate::oracle::{isqrt_oracle, predicted_iterations};
use crate::sqrt::sqrt_certify;

pub fn bench_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform value with exactly `bits` significant bits (`bits ≥ 1`).
pub fn random_bits<R: Rng>(rng: &mut R, bits: u32) -> Natural {
    assert!(bits >= 1);
    let words = bits.div_ceil(64) as usize;
    let mut limbs: Vec<u64> = (0..words).map(|_| rng.gen()).collect();
    let top_bits = bits - 64 * (words as u32 - 1);
    let top = limbs.last_mut().unwrap();
    if top_bits < 64 {
        *top &= (1u64 << top_bits) - 1;
    }
    *top |= 1u64 << (top_bits - 1);
    Natural::from_u64_limbs(limbs)
}

/// Random value coprime to 6 with `bits` bits (`bits ≥ 3`); may carry one
/// extra bit when the adjustment for divisibility by 3 overflows.
pub fn random_coprime6<R: Rng>(rng: &mut R, bits: u32) -> Natural {
    let mut n = random_bits(rng, bits);
    if n.is_even() {
        n = n.add_small(1);
    }
    if n.rem_small(3) == 0 {
        n = n.add_small(2);
    }
    n
}

/// Square of a random root coprime to 6, about `bits` bits long.
pub fn random_square<R: Rng>(rng: &mut R, bits: u32) -> Natural {
    random_coprime6(rng, (bits / 2).max(3)).pow(2)
}

/// Cube of a random root coprime to 6, about `bits` bits long.
pub fn random_cube<R: Rng>(rng: &mut R, bits: u32) -> Natural {
    random_coprime6(rng, (bits / 3).max(3)).pow(3)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Square,
    Random,
}

/// Loop length of one branch: `None` when setup ended it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchIterations {
    pub a: u8,
    pub iterations: Option<u32>,
}

/// One benchmarked input.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub n_bits: u32,
    pub kind: InputKind,
    #[serde(serialize_with = "crate::cli::as_decimal")]
    pub input: Natural,
    /// Candidate that produced the root, if any.
    pub a: Option<u8>,
    /// Terminating step of the winning branch, or the longest branch for
    /// non-squares; `None` if no branch iterated.
    pub iterations_measured: Option<u32>,
    pub iterations_predicted: u32,
    pub branches: Vec<BranchIterations>,
    pub verdict: &'static str,
    pub oracle_agrees: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl BenchRecord {
    fn from_certificate(n_bits: u32, kind: InputKind, cert: &Certificate, elapsed: Duration) -> Self {
        let branches: Vec<_> = cert
            .branches
            .iter()
            .map(|b| BranchIterations { a: b.a.value(), iterations: b.iterations() })
            .collect();
        let winner = cert.winning_branch();
        let iterations_measured = match winner {
            Some(b) => b.iterations(),
            None => branches.iter().filter_map(|b| b.iterations).max(),
        };
        let (oracle_root, oracle_exact) = isqrt_oracle(&cert.input);
        let oracle_agrees = match cert.root() {
            Some(r) => oracle_exact && *r == oracle_root,
            None => !oracle_exact,
        };
        BenchRecord {
            n_bits,
            kind,
            input: cert.input.clone(),
            a: winner.map(|b| b.a.value()),
            iterations_measured,
            iterations_predicted: predicted_iterations(&cert.normalization.core),
            branches,
            verdict: cert.verdict_name(),
            oracle_agrees,
            elapsed,
        }
    }

    /// `|measured − predicted|` for every branch that iterated.
    pub fn branch_deviations(&self) -> impl Iterator<Item = u32> + '_ {
        self.branches
            .iter()
            .filter_map(|b| b.iterations)
            .map(|m| m.abs_diff(self.iterations_predicted))
    }
}

/// Certify `count` seeded inputs at each bit size, in order.
pub fn bench_run(bit_sizes: &[u32], count: usize, seed: u64) -> Result<Vec<BenchRecord>, CertifyError> {
    let mut rng = bench_rng(seed);
    let mut records = Vec::with_capacity(bit_sizes.len() * count);
    for &bits in bit_sizes {
        for idx in 0..count {
            let (kind, n) = if idx % 2 == 0 {
                (InputKind::Square, random_square(&mut rng, bits))
            } else {
                (InputKind::Random, random_coprime6(&mut rng, bits.max(3)))
            };
            let start = Instant::now();
            let cert = sqrt_certify(&n)?;
            let elapsed = start.elapsed();
            records.push(BenchRecord::from_certificate(bits, kind, &cert, elapsed));
        }
    }
    Ok(records)
}

/// Aggregate of a bench run over branches that iterated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchSummary {
    pub records: usize,
    pub branches: usize,
    pub mean_abs_deviation: f64,
    pub within_one: usize,
    pub oracle_mismatches: usize,
}

pub fn summarize(records: &[BenchRecord]) -> BenchSummary {
    let devs: Vec<u32> = records.iter().flat_map(BenchRecord::branch_deviations).collect();
    let total: u64 = devs.iter().map(|&d| d as u64).sum();
    BenchSummary {
        records: records.len(),
        branches: devs.len(),
        mean_abs_deviation: if devs.is_empty() { 0.0 } else { total as f64 / devs.len() as f64 },
        within_one: devs.iter().filter(|&&d| d <= 1).count(),
        oracle_mismatches: records.iter().filter(|r| !r.oracle_agrees).count(),
    }
}
