//! The synthetic benchmark: many generated datasets through every
//! criterion, aggregated into accuracy tables and score histograms.
//!
//! Datasets are independent, so the run fans out across a thread pool;
//! each dataset's RNG stream depends only on `(master seed, index)` and
//! records are collected in index order, so the report is bit-identical
//! no matter how many workers ran or in what order they finished.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use crate::criteria::{evaluate_all, CriterionScore, SignConfig};
use crate::data::{CriterionKind, Direction};
use crate::scmgen::{generate_dataset, GenConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub n_datasets: usize,
    /// Generator template; its `seed` is the benchmark's master seed.
    pub gen: GenConfig,
    /// Bin count for continuous discretization during evaluation.
    pub n_bins: usize,
    /// Bin count for the score histograms in the report.
    pub histogram_bins: usize,
    pub signs: SignConfig,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_datasets: 1000,
            gen: GenConfig::default(),
            n_bins: 100,
            histogram_bins: 50,
            signs: SignConfig::default(),
        }
    }
}

/// One dataset's outcome: the ground truth and all six scores.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub index: u64,
    pub truth: Direction,
    /// In [`CriterionKind::ALL`] order.
    pub scores: Vec<CriterionScore>,
}

/// Histogram of oriented scores, split by ground truth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    /// `histogram_bins + 1` equal-width edges over the observed score
    /// range. A degenerate range (all scores identical) collapses every
    /// edge to that value and every count into bin 0.
    pub bin_edges: Vec<f64>,
    pub counts_truth_xy: Vec<u64>,
    pub counts_truth_yx: Vec<u64>,
}

/// One criterion's row of the results table, plus its histogram.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionSummary {
    pub kind: CriterionKind,
    pub n_correct: usize,
    pub n_errors: usize,
    pub n_abstain: usize,
    /// Correct / all; abstentions count as incorrect.
    pub accuracy: f64,
    /// Correct / (all − abstentions); `0` if every dataset abstained.
    pub accuracy_excluding_abstentions: f64,
    pub abstention_rate: f64,
    /// Mean per-direction measure of the model fitted *along* the true
    /// causal direction, resolved per dataset via ground truth.
    pub mean_measure_causal: f64,
    /// Same for the model fitted against it.
    pub mean_measure_anticausal: f64,
    pub histogram: FigureData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub duration_seconds: f64,
    /// Exactly six, in [`CriterionKind::ALL`] order.
    pub criteria: Vec<CriterionSummary>,
}

/// Bin `scores` into `n_hist_bins` equal-width bins over their observed
/// range, counting each truth class separately.
pub fn histogram_scores(
    scores: &[f64],
    truths: &[Direction],
    n_hist_bins: usize,
) -> Result<FigureData> {
    if scores.len() != truths.len() {
        return Err(Error::LengthMismatch {
            x: scores.len(),
            y: truths.len(),
        });
    }
    if scores.is_empty() {
        return Err(Error::EmptyInput);
    }
    assert!(n_hist_bins >= 1, "need at least one histogram bin");
    assert!(
        truths.iter().all(|&t| t != Direction::Abstain),
        "ground truths cannot abstain"
    );

    let mut lo = scores[0];
    let mut hi = scores[0];
    for &s in &scores[1..] {
        lo = lo.min(s);
        hi = hi.max(s);
    }
    let width = (hi - lo) / n_hist_bins as f64;
    let bin_edges: Vec<f64> = (0..=n_hist_bins)
        .map(|i| {
            if i == n_hist_bins {
                hi
            } else {
                lo + width * i as f64
            }
        })
        .collect();

    let mut counts_truth_xy = vec![0u64; n_hist_bins];
    let mut counts_truth_yx = vec![0u64; n_hist_bins];
    let top = n_hist_bins as i64 - 1;
    for (&s, &t) in scores.iter().zip(truths) {
        let bin = if width == 0.0 {
            0
        } else {
            (((s - lo) / width).floor() as i64).clamp(0, top)
        } as usize;
        match t {
            Direction::XtoY => counts_truth_xy[bin] += 1,
            Direction::YtoX => counts_truth_yx[bin] += 1,
            Direction::Abstain => unreachable!(),
        }
    }
    Ok(FigureData {
        bin_edges,
        counts_truth_xy,
        counts_truth_yx,
    })
}

/// Collapse per-dataset records into one summary per criterion.
pub fn aggregate(records: &[DatasetRecord], histogram_bins: usize) -> Result<Vec<CriterionSummary>> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = records.len();
    let truths: Vec<Direction> = records.iter().map(|r| r.truth).collect();

    CriterionKind::ALL
        .iter()
        .enumerate()
        .map(|(slot, &kind)| {
            let mut n_correct = 0usize;
            let mut n_abstain = 0usize;
            let mut sum_causal = 0.0;
            let mut sum_anticausal = 0.0;
            let mut scores = Vec::with_capacity(n);
            for record in records {
                let score = &record.scores[slot];
                debug_assert_eq!(score.kind, kind);
                if score.decision == record.truth {
                    n_correct += 1;
                } else if score.decision == Direction::Abstain {
                    n_abstain += 1;
                }
                let (causal, anticausal) = match record.truth {
                    Direction::XtoY => (score.measure_xy, score.measure_yx),
                    Direction::YtoX => (score.measure_yx, score.measure_xy),
                    Direction::Abstain => unreachable!("truth cannot abstain"),
                };
                sum_causal += causal;
                sum_anticausal += anticausal;
                scores.push(score.j_oriented);
            }
            let n_errors = n - n_correct - n_abstain;
            let decided = n - n_abstain;
            Ok(CriterionSummary {
                kind,
                n_correct,
                n_errors,
                n_abstain,
                accuracy: n_correct as f64 / n as f64,
                accuracy_excluding_abstentions: if decided == 0 {
                    0.0
                } else {
                    n_correct as f64 / decided as f64
                },
                abstention_rate: n_abstain as f64 / n as f64,
                mean_measure_causal: sum_causal / n as f64,
                mean_measure_anticausal: sum_anticausal / n as f64,
                histogram: histogram_scores(&scores, &truths, histogram_bins)?,
            })
        })
        .collect()
}

/// Generate, evaluate, and aggregate the whole benchmark.
///
/// A single failing dataset aborts the run, wrapped with its index and the
/// master seed so it can be replayed in isolation.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    if cfg.n_datasets < 1 {
        return Err(Error::ConfigInvalid("n_datasets must be at least 1".into()));
    }
    if cfg.n_bins < 1 || cfg.histogram_bins < 1 {
        return Err(Error::ConfigInvalid(
            "n_bins and histogram_bins must be at least 1".into(),
        ));
    }
    cfg.gen.validate()?;

    let start = Instant::now();
    let at = |index: u64| {
        move |e: Error| Error::AtDataset {
            index: index as usize,
            seed: cfg.gen.seed,
            source: Box::new(e),
        }
    };
    let results: Vec<Result<DatasetRecord>> = (0..cfg.n_datasets as u64)
        .into_par_iter()
        .map(|index| {
            let ds = generate_dataset(&cfg.gen, index).map_err(at(index))?;
            let scores = evaluate_all(&ds.data, cfg.n_bins, &cfg.signs).map_err(at(index))?;
            Ok(DatasetRecord {
                index,
                truth: ds.truth,
                scores,
            })
        })
        .collect();
    // Surface the lowest failing index so reruns see the same error
    // regardless of scheduling.
    let mut records = Vec::with_capacity(cfg.n_datasets);
    for r in results {
        records.push(r?);
    }

    let criteria = aggregate(&records, cfg.histogram_bins)?;
    Ok(BenchReport {
        config: *cfg,
        duration_seconds: start.elapsed().as_secs_f64(),
        criteria,
    })
}
