//! Uniform random incidence matrices by rejection on pairs of random
//! preorders.
//!
//! Two independent uniform preorders (ordered set partitions) of `{1..n}`
//! are drawn. If no pair of elements shares a block in both, the `K×L`
//! matrix marking nonempty block intersections is an incidence matrix with
//! `n` ones, and each incidence matrix arises from exactly `n!` pairs. The
//! accepted output is therefore uniform, and the acceptance probability is
//! `n! F(n) / P(n)²`.

pub mod stats;

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::f_count;
use crate::error::{Error, Result};
use crate::exact::{binomial_u64, factorial, ordered_bell_recurrence};
use crate::matrix::IncidenceMatrix;

/// Trials evaluated per parallel batch; aggregation happens in trial order.
const BATCH: u64 = 8192;

/// An ordered set partition of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preorder {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Preorder {
    /// Validates that `blocks` are nonempty, disjoint and cover `{1..n}`.
    /// Elements within a block are stored sorted.
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            block.sort_unstable();
            for &e in block.iter() {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::Precondition(format!(
                        "element {e} out of range or repeated"
                    )));
                }
                seen[e] = true;
            }
        }
        if seen.iter().skip(1).any(|&s| !s) {
            return Err(Error::Precondition(
                "blocks do not cover the ground set".into(),
            ));
        }
        Ok(Preorder { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index of every element, indexed by `element - 1`.
    pub fn labels(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                out[e - 1] = b as u32;
            }
        }
        out
    }
}

/// Uniform big integer in `[0, bound)` by rejection on `⌈log₂ bound⌉`-bit draws.
pub fn uniform_below<R: RngCore + ?Sized>(bound: &BigUint, rng: &mut R) -> BigUint {
    assert!(!bound.is_zero(), "empty range");
    let bits = (bound - 1u32).bits();
    if bits == 0 {
        return BigUint::zero();
    }
    let words = bits.div_ceil(32) as usize;
    let top_bits = bits - 32 * (words as u64 - 1);
    let top_mask = if top_bits == 32 {
        u32::MAX
    } else {
        (1u32 << top_bits) - 1
    };
    let mut digits = vec![0u32; words];
    loop {
        for d in digits.iter_mut() {
            *d = rng.next_u32();
        }
        digits[words - 1] &= top_mask;
        let candidate = BigUint::from_slice(&digits);
        if &candidate < bound {
            return candidate;
        }
    }
}

/// Precomputed first-block weights for drawing uniform preorders of `{1..n}`.
///
/// A preorder of an `m`-set whose first block has `j` elements can be
/// completed in `C(m, j) P(m - j)` ways, so drawing `u < P(m)` and taking the
/// first `j` whose cumulative weight exceeds `u` picks the block size with
/// exact probability.
#[derive(Debug, Clone)]
pub struct PreorderSampler {
    n: usize,
    /// `cumulative[m][j-1] = Σ_{i≤j} C(m,i) P(m-i)`; the last entry is `P(m)`.
    cumulative: Vec<Vec<BigUint>>,
}

impl PreorderSampler {
    pub fn new(n: usize) -> Self {
        let p = ordered_bell_recurrence(n);
        let cumulative = (0..=n)
            .map(|m| {
                let mut acc = BigUint::zero();
                (1..=m)
                    .map(|j| {
                        acc += binomial_u64(m as u64, j) * &p[m - j];
                        acc.clone()
                    })
                    .collect()
            })
            .collect();
        PreorderSampler { n, cumulative }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Preorder {
        let mut pool: Vec<usize> = (1..=self.n).collect();
        let mut start = 0;
        let mut blocks = Vec::new();
        while start < self.n {
            let m = self.n - start;
            let weights = &self.cumulative[m];
            let u = uniform_below(&weights[m - 1], rng);
            let j = weights.partition_point(|c| c <= &u) + 1;
            // partial Fisher-Yates over the unused tail
            for t in start..start + j {
                let pick = rng.gen_range(t..self.n);
                pool.swap(t, pick);
            }
            let mut block = pool[start..start + j].to_vec();
            block.sort_unstable();
            blocks.push(block);
            start += j;
        }
        Preorder { n: self.n, blocks }
    }
}

/// Uniformly random preorder of `{1..n}`.
pub fn random_preorder<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Preorder {
    PreorderSampler::new(n).sample(rng)
}

fn check_sizes(p1: &Preorder, p2: &Preorder) -> Result<()> {
    if p1.n != p2.n {
        return Err(Error::SizeMismatch {
            left: p1.n,
            right: p2.n,
        });
    }
    Ok(())
}

fn w_from_labels(a: &[u32], b: &[u32]) -> u64 {
    let mut joint: HashMap<(u32, u32), u64> = HashMap::with_capacity(a.len());
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_insert(0) += 1;
    }
    joint.values().map(|&c| c * (c - 1) / 2).sum()
}

/// Number of pairs `i < j` lying in a common block of both preorders.
pub fn w_statistic(p1: &Preorder, p2: &Preorder) -> Result<u64> {
    check_sizes(p1, p2)?;
    Ok(w_from_labels(&p1.labels(), &p2.labels()))
}

fn matrix_from_labels(rows: usize, cols: usize, a: &[u32], b: &[u32]) -> IncidenceMatrix {
    let mut bits = vec![false; rows * cols];
    for (&x, &y) in a.iter().zip(b) {
        bits[x as usize * cols + y as usize] = true;
    }
    IncidenceMatrix::new(rows, cols, bits).expect("every block meets some other block")
}

/// The block-intersection matrix of an accepted pair, or `None` when the
/// pair is rejected (`W > 0`).
pub fn pair_to_matrix(p1: &Preorder, p2: &Preorder) -> Result<Option<IncidenceMatrix>> {
    check_sizes(p1, p2)?;
    let (a, b) = (p1.labels(), p2.labels());
    if w_from_labels(&a, &b) > 0 {
        return Ok(None);
    }
    Ok(Some(matrix_from_labels(
        p1.block_count(),
        p2.block_count(),
        &a,
        &b,
    )))
}

/// Draws incidence matrices uniformly from the `F(n)` with `n` ones.
#[derive(Debug, Clone)]
pub struct IncidenceSampler {
    preorders: PreorderSampler,
}

impl IncidenceSampler {
    pub fn new(n: usize) -> Self {
        IncidenceSampler {
            preorders: PreorderSampler::new(n),
        }
    }

    /// One preorder pair: its `W` and, if accepted, the matrix.
    pub fn trial<R: Rng + ?Sized>(&self, rng: &mut R) -> (u64, Preorder, Preorder) {
        let p1 = self.preorders.sample(rng);
        let p2 = self.preorders.sample(rng);
        let w = w_from_labels(&p1.labels(), &p2.labels());
        (w, p1, p2)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> IncidenceMatrix {
        loop {
            let (w, p1, p2) = self.trial(rng);
            if w == 0 {
                return matrix_from_labels(
                    p1.block_count(),
                    p2.block_count(),
                    &p1.labels(),
                    &p2.labels(),
                );
            }
        }
    }
}

/// Uniformly random incidence matrix with `n ≥ 1` ones.
pub fn sample_incidence<R: Rng + ?Sized>(n: usize, rng: &mut R) -> IncidenceMatrix {
    IncidenceSampler::new(n).sample(rng)
}

/// `n! F(n) / P(n)²`, the exact probability that a trial is accepted.
pub fn exact_acceptance(n: usize) -> Result<BigRational> {
    let p = ordered_bell_recurrence(n).swap_remove(n);
    let num = factorial(n) * f_count(n)?;
    Ok(BigRational::new(
        BigInt::from_biguint(Sign::Plus, num),
        BigInt::from_biguint(Sign::Plus, &p * &p),
    ))
}

/// Generator for trial `t` under `seed`: a ChaCha stream keyed by the seed
/// and selected by the trial index, so any schedule sees the same draws.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Aggregate statistics of a batch of preorder-pair trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub n: usize,
    pub seed: u64,
    pub trials: u64,
    pub accepted: u64,
    pub acceptance_rate: f64,
    pub mean_w: f64,
    /// Trials by value of `W`.
    pub w_histogram: BTreeMap<u64, u64>,
    /// Accepted trials by row count of the produced matrix.
    pub row_histogram: BTreeMap<usize, u64>,
}

impl SampleReport {
    fn new(n: usize, seed: u64) -> Self {
        SampleReport {
            n,
            seed,
            trials: 0,
            accepted: 0,
            acceptance_rate: 0.0,
            mean_w: 0.0,
            w_histogram: BTreeMap::new(),
            row_histogram: BTreeMap::new(),
        }
    }

    /// Most frequent row count among accepted matrices (smallest on ties).
    pub fn modal_rows(&self) -> Option<usize> {
        self.row_histogram
            .iter()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
            .map(|(&rows, _)| rows)
    }
}

struct Outcome {
    w: u64,
    rows: usize,
    matrix: Option<IncidenceMatrix>,
}

/// Trial accumulator over one seeded trial sequence.
struct TrialRun<'a> {
    sampler: &'a IncidenceSampler,
    seed: u64,
    keep: bool,
    report: SampleReport,
    w_total: u128,
}

impl<'a> TrialRun<'a> {
    fn new(sampler: &'a IncidenceSampler, seed: u64, keep: bool) -> Self {
        TrialRun {
            sampler,
            seed,
            keep,
            report: SampleReport::new(sampler.preorders.n(), seed),
            w_total: 0,
        }
    }

    /// Runs trials `first..first+count`, passing accepted matrices to
    /// `on_accept` in trial order. Stops early when `on_accept` returns false.
    fn run(
        &mut self,
        first: u64,
        count: u64,
        on_accept: &mut dyn FnMut(IncidenceMatrix) -> bool,
    ) -> bool {
        let mut start = first;
        let end = first + count;
        while start < end {
            let stop = (start + BATCH).min(end);
            let outcomes: Vec<Outcome> = (start..stop)
                .into_par_iter()
                .map(|t| {
                    let mut rng = trial_rng(self.seed, t);
                    let (w, p1, p2) = self.sampler.trial(&mut rng);
                    let matrix = (self.keep && w == 0).then(|| {
                        matrix_from_labels(
                            p1.block_count(),
                            p2.block_count(),
                            &p1.labels(),
                            &p2.labels(),
                        )
                    });
                    Outcome {
                        w,
                        rows: p1.block_count(),
                        matrix,
                    }
                })
                .collect();
            for o in outcomes {
                let report = &mut self.report;
                report.trials += 1;
                self.w_total += o.w as u128;
                *report.w_histogram.entry(o.w).or_insert(0) += 1;
                if o.w == 0 {
                    report.accepted += 1;
                    *report.row_histogram.entry(o.rows).or_insert(0) += 1;
                    if let Some(m) = o.matrix {
                        if !on_accept(m) {
                            return false;
                        }
                    }
                }
            }
            start = stop;
        }
        true
    }

    fn finish(mut self) -> SampleReport {
        let report = &mut self.report;
        if report.trials > 0 {
            report.acceptance_rate = report.accepted as f64 / report.trials as f64;
            report.mean_w = self.w_total as f64 / report.trials as f64;
        }
        self.report
    }
}

/// Runs `trials` seeded trials and reports acceptance and `W` statistics.
/// Accepted matrices are passed to `on_accept` in trial order.
pub fn run_trials(
    n: usize,
    trials: u64,
    seed: u64,
    mut on_accept: Option<&mut dyn FnMut(IncidenceMatrix)>,
) -> Result<SampleReport> {
    if n == 0 || trials == 0 {
        return Err(Error::Precondition(
            "sampling needs n ≥ 1 and trials ≥ 1".into(),
        ));
    }
    let sampler = IncidenceSampler::new(n);
    let mut run = TrialRun::new(&sampler, seed, on_accept.is_some());
    run.run(0, trials, &mut |m| {
        if let Some(f) = on_accept.as_mut() {
            f(m);
        }
        true
    });
    Ok(run.finish())
}

/// Statistics only.
pub fn run_stats(n: usize, trials: u64, seed: u64) -> Result<SampleReport> {
    run_trials(n, trials, seed, None)
}

/// The first `count` accepted matrices of the seeded trial sequence, with
/// the report over exactly the trials consumed to get them.
pub fn sample_accepted(
    n: usize,
    count: usize,
    seed: u64,
) -> Result<(Vec<IncidenceMatrix>, SampleReport)> {
    if n == 0 {
        return Err(Error::Precondition("sampling needs n ≥ 1".into()));
    }
    let sampler = IncidenceSampler::new(n);
    let mut run = TrialRun::new(&sampler, seed, true);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let next = run.report.trials;
        run.run(next, BATCH, &mut |m| {
            out.push(m);
            out.len() < count
        });
    }
    Ok((out, run.finish()))
}
