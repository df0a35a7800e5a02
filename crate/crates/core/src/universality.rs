//! Exhaustive universality scans over bounded ranges.
//!
//! A sum is scanned by building sorted tables of each term's values up to
//! the bound, marking all pairwise sums of the first two tables, then
//! completing with the third. Scans over `n` can be split across worker
//! threads; the least failure always wins, so results do not depend on the
//! partition.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::certify::verify;
use crate::pipelines::{self, Domain, SumForm};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    NoFailure,
    FirstFailure(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessSource {
    /// Every `n` was represented by a verified pipeline certificate.
    Pipeline,
    /// Representability was decided by exhaustive table search.
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub sum: SumForm,
    pub bound: u64,
    pub outcome: Outcome,
    pub source: WitnessSource,
}

impl ScanReport {
    pub fn is_success(&self) -> bool {
        self.outcome == Outcome::NoFailure
    }
}

/// `p5 + b p5 + c p5` pairs that survive the necessity filter for
/// universality over Z (with `b <= c`).
pub const CANDIDATE_PAIRS: [(u64, u64); 20] = [
    (1, 1),
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 6),
    (1, 8),
    (1, 9),
    (1, 10),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 6),
    (2, 8),
    (3, 3),
    (3, 4),
    (3, 6),
    (3, 7),
    (3, 8),
    (3, 9),
];

/// Candidate pairs whose universality was open.
pub const CONJECTURED_PAIRS: [(u64, u64); 14] = [
    (1, 3),
    (1, 6),
    (1, 8),
    (1, 9),
    (1, 10),
    (2, 3),
    (2, 6),
    (2, 8),
    (3, 3),
    (3, 4),
    (3, 6),
    (3, 7),
    (3, 8),
    (3, 9),
];

/// Candidate pairs already known to be universal before the six pipeline
/// pairs: `p5+p5+p5`, `p5+p5+2p5`, `p5+p5+4p5`, `p5+2p5+2p5`,
/// `p5+2p5+4p5` and `p5+p5+5p5`.
pub const KNOWN_UNIVERSAL_PAIRS: [(u64, u64); 6] = [(1, 1), (1, 2), (1, 4), (2, 2), (2, 4), (1, 5)];

/// Read-only tables for one sum and bound.
struct Tables {
    /// `pair[v]`: `v` is a sum of values of the first two terms.
    pair: Vec<bool>,
    last: Vec<u64>,
}

fn term_values(sum: &SumForm, i: usize, bound: u64) -> Vec<u64> {
    let Some(t) = sum.terms().get(i) else {
        return vec![0];
    };
    let limit = bound / t.coefficient;
    let raw = match sum.domain {
        Domain::Integers => t.kind.values_up_to(limit),
        Domain::Naturals => t.kind.values_up_to_naturals(limit),
    };
    raw.into_iter().map(|v| v * t.coefficient).collect()
}

impl Tables {
    fn build(sum: &SumForm, bound: u64) -> Tables {
        let first = term_values(sum, 0, bound);
        let second = term_values(sum, 1, bound);
        let mut pair = vec![false; bound as usize + 1];
        for &a in &first {
            for &b in second.iter().take_while(|&&b| a + b <= bound) {
                pair[(a + b) as usize] = true;
            }
        }
        Tables {
            pair,
            last: term_values(sum, 2, bound),
        }
    }

    fn represents(&self, n: u64) -> bool {
        self.last
            .iter()
            .take_while(|&&c| c <= n)
            .any(|&c| self.pair[(n - c) as usize])
    }
}

/// Decides representability of every `n <= bound` and reports the least
/// failure, if any.
pub fn check_range(sum: &SumForm, bound: u64) -> ScanReport {
    let tables = Tables::build(sum, bound);
    let failure = (0..=bound).find(|&n| !tables.represents(n));
    report(sum, bound, failure, WitnessSource::BruteForce)
}

/// [`check_range`] with the `n` range split over `jobs` worker threads.
pub fn check_range_parallel(sum: &SumForm, bound: u64, jobs: usize) -> ScanReport {
    check_range_observed(sum, bound, jobs, |_| {})
}

/// [`check_range_parallel`] that calls `progress` with the running count of
/// scanned values each time a chunk finishes. Calls may come from any
/// worker thread and in any order of completion.
pub fn check_range_observed(
    sum: &SumForm,
    bound: u64,
    jobs: usize,
    progress: impl Fn(u64) + Sync,
) -> ScanReport {
    let tables = Tables::build(sum, bound);
    let scanned = AtomicU64::new(0);
    let failure = in_pool(jobs, || {
        chunks(bound, jobs)
            .into_par_iter()
            .filter_map(|(lo, hi)| {
                let found = (lo..=hi).find(|&n| !tables.represents(n));
                progress(scanned.fetch_add(hi - lo + 1, Ordering::Relaxed) + hi - lo + 1);
                found
            })
            .min()
    });
    report(sum, bound, failure, WitnessSource::BruteForce)
}

fn report(sum: &SumForm, bound: u64, failure: Option<u64>, source: WitnessSource) -> ScanReport {
    ScanReport {
        sum: sum.clone(),
        bound,
        outcome: failure.map_or(Outcome::NoFailure, Outcome::FirstFailure),
        source,
    }
}

/// Inclusive subranges of `0..=bound`, several per worker.
fn chunks(bound: u64, jobs: usize) -> Vec<(u64, u64)> {
    let pieces = (jobs.max(1) as u64 * 8).min(bound + 1);
    let width = (bound + 1).div_ceil(pieces);
    (0..pieces)
        .map(|i| (i * width, ((i + 1) * width - 1).min(bound)))
        .filter(|(lo, hi)| lo <= hi)
        .collect()
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Least `n <= bound` not represented by `sum`.
pub fn find_counterexample(sum: &SumForm, bound: u64) -> Option<u64> {
    match check_range(sum, bound).outcome {
        Outcome::NoFailure => None,
        Outcome::FirstFailure(n) => Some(n),
    }
}

/// Runs the witness pipeline for every `n <= bound` and verifies each
/// certificate. Fails with the first pipeline or verification error.
pub fn check_range_pipeline(sum: &SumForm, bound: u64, jobs: usize) -> Result<ScanReport> {
    let first_error = in_pool(jobs, || {
        (0..=bound)
            .into_par_iter()
            .filter_map(|n| pipeline_check(sum, n).err().map(|e| (n, e)))
            .min_by_key(|(n, _)| *n)
    });
    match first_error {
        Some((_, e)) => Err(e),
        None => Ok(report(sum, bound, None, WitnessSource::Pipeline)),
    }
}

fn pipeline_check(sum: &SumForm, n: u64) -> Result<()> {
    let w = pipelines::witness(sum, n)?;
    verify(&w.certificate).map_err(|e| Error::pipeline("verify", format!("n = {n}: {e}")))?;
    let value = sum.eval(&w.indices)?;
    if value != n {
        return Err(Error::pipeline(
            "evaluate",
            format!("n = {n}: indices give {value}"),
        ));
    }
    Ok(())
}

/// Each pair `b <= c` within the bounds together with the least
/// counterexample `n <= bound` for `p5 + b p5 + c p5` over Z, if any.
pub fn pair_scan(b_max: u64, c_max: u64, bound: u64) -> Vec<((u64, u64), Option<u64>)> {
    let pairs: Vec<(u64, u64)> = (1..=b_max)
        .flat_map(|b| (b..=c_max).map(move |c| (b, c)))
        .collect();
    pairs
        .into_par_iter()
        .map(|(b, c)| {
            let sum = SumForm::pentagonal(b, c).expect("positive coefficients");
            ((b, c), find_counterexample(&sum, bound))
        })
        .collect()
}

/// Pairs `b <= c` within the bounds for which `p5 + b p5 + c p5` has no
/// counterexample up to `bound`.
pub fn candidate_filter(b_max: u64, c_max: u64, bound: u64) -> Vec<(u64, u64)> {
    pair_scan(b_max, c_max, bound)
        .into_iter()
        .filter(|(_, cex)| cex.is_none())
        .map(|(pair, _)| pair)
        .collect()
}

/// Range scans for every pair in [`CONJECTURED_PAIRS`].
pub fn conjectured_pairs_check(bound: u64) -> Vec<ScanReport> {
    CONJECTURED_PAIRS
        .par_iter()
        .map(|&(b, c)| check_range(&SumForm::pentagonal(b, c).expect("valid"), bound))
        .collect()
}
