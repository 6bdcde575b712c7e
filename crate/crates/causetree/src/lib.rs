//! Infer the causal direction between two dependent variables from
//! observational data alone.
//!
//! The idea: fit a decision tree predicting `y` from `x` and another
//! predicting `x` from `y`, then compare how complex the two models had to
//! become. Modelling the true direction tends to need a simpler tree than
//! modelling against it, so complexity asymmetry is evidence of direction.
//! Six criteria quantify that asymmetry — tree depth (`TD`), node count
//! (`TN`), leaf count (`TL`), mean path length (`PL`), residual entropy
//! (`RE`), and interpolation hardness (`IH`). Each yields an oriented score
//! `J`: positive means `x → y`, negative means `y → x`, exactly zero means
//! the criterion abstains.
//!
//! The crate is organised bottom-up:
//!
//! - [`data`]: the validated two-column dataset and shared enums.
//! - [`binning`]: equal-width discretization for continuous variables.
//! - [`cart`]: a deterministic single-feature Gini classification tree of
//!   unbounded depth, the model family every criterion measures.
//! - [`stats`]: plug-in entropy, misclassification, and MSE.
//! - [`criteria`]: fits both directional models and scores the six criteria.
//! - [`scmgen`]: a seeded generator of synthetic cause–effect datasets with
//!   polynomial mechanisms and configurable noise.
//! - [`bench`]: runs many generated datasets through all criteria and
//!   aggregates accuracy tables and score histograms.
//!
//! Numeric code is generic over the scalar type via [`Real`] (`f32` or
//! `f64`); the `*64` aliases at the crate root fix the common case. All
//! randomness flows from explicit seeds and every pipeline stage is
//! deterministic, so identical inputs reproduce results bit for bit.

use std::fmt;

pub mod bench;
pub mod binning;
pub mod cart;
pub mod criteria;
pub mod data;
pub mod io;
pub mod scmgen;
pub mod stats;

/// Floating-point scalar the dataset and binning layers are generic over.
///
/// `f64` is the default throughout; `f32` works for the inference pipeline
/// but cannot represent large discrete values exactly (anything beyond
/// 2^24 loses integrality), so generated benchmark data stays `f64`.
pub trait Real:
    num_traits::Float
    + num_traits::FromPrimitive
    + num_traits::NumCast
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl Real for f32 {}
impl Real for f64 {}

pub type PairDataset64 = data::PairDataset<f64>;
pub type BinSpec64 = binning::BinSpec<f64>;
pub type FittedPair64 = criteria::FittedPair<f64>;

/// Default seed used by the CLI and the benchmark when none is given.
pub const DEFAULT_SEED: u64 = 0;

/// Errors shared across the library.
///
/// Variants map one-to-one onto the contract violations the module
/// boundaries check; the CLI turns them into exit code 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("x and y lengths differ ({x} vs {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("non-finite value in column {column} at row {row}")]
    NonFinite { column: &'static str, row: usize },
    #[error("discrete data requires exact integer values; column {column} row {row} holds {value}")]
    NonInteger {
        column: &'static str,
        row: usize,
        value: f64,
    },
    #[error("need at least 2 samples, got {0}")]
    TooSmall(usize),
    #[error("empty input")]
    EmptyInput,
    #[error("bin label {label} out of range for {n_bins} bins")]
    LabelOutOfRange { label: i64, n_bins: usize },
    #[error("invalid generator config: {0}")]
    ConfigInvalid(String),
    #[error("criterion score is not finite")]
    NonFiniteScore,
    #[error("dataset {index} (master seed {seed}): {source}")]
    AtDataset {
        index: usize,
        seed: u64,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
