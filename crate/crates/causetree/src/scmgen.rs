//! Seeded generator of synthetic cause–effect datasets.
//!
//! The structural model is `X = U_X`, `Y = f(X) + g(U_Y)` (additive) or
//! `Y = f(X) · g(U_Y)` (multiplicative), where `f` and `g` are random
//! integer-coefficient polynomials and the noises come from one of four
//! regimes. With probability `flip_probability` the columns are swapped, so
//! the ground truth is `YtoX` and a direction-inference method cannot cheat
//! by position.
//!
//! Determinism contract: a dataset is a pure function of
//! `(master seed, dataset index)`. Each index gets its own ChaCha stream,
//! so batches can be generated concurrently in any order and still
//! reproduce bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::binning::{apply_bins, fit_bins};
use crate::data::{validate_dataset, DataKind, Direction, PairDataset};
use crate::{Error, Result, DEFAULT_SEED};

/// Integer-coefficient polynomial; `coeffs[i]` multiplies `x^i`.
///
/// Sampled ones always have degree in `[1, 5]` (so 2–6 coefficients) with
/// every coefficient in `[−10, 10]`. A leading zero coefficient is kept as
/// drawn, reducing the effective degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    pub coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Noise regime for one variable. `R` is the discrete cardinality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum NoiseSpec {
    /// Uniform over the `R` consecutive integers `{−⌊R/2⌋, …, −⌊R/2⌋+R−1}`.
    DiscreteUniform { r: u32 },
    /// Standard normal draws binned to `R` equal-width bins over the
    /// observed sample range, reported as zero-centered integer indices.
    DiscreteGaussian { r: u32 },
    /// Uniform on the open interval `(−1, 1)`.
    ContinuousUniform,
    /// Standard normal.
    ContinuousGaussian,
}

impl NoiseSpec {
    pub fn kind(self) -> DataKind {
        match self {
            NoiseSpec::DiscreteUniform { .. } | NoiseSpec::DiscreteGaussian { .. } => {
                DataKind::Discrete
            }
            NoiseSpec::ContinuousUniform | NoiseSpec::ContinuousGaussian => DataKind::Continuous,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseMode {
    Additive,
    Multiplicative,
}

/// Everything that determines a generated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub n_samples: usize,
    pub noise_x: NoiseSpec,
    pub noise_y: NoiseSpec,
    pub noise_mode: NoiseMode,
    pub flip_probability: f64,
    /// Master seed; see [`generate_dataset`] for how per-dataset streams
    /// derive from it.
    pub seed: u64,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n_samples: 1000,
            noise_x: NoiseSpec::DiscreteUniform { r: 20 },
            noise_y: NoiseSpec::DiscreteUniform { r: 20 },
            noise_mode: NoiseMode::Additive,
            flip_probability: 0.5,
            seed: DEFAULT_SEED,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.noise_x.kind() != self.noise_y.kind() {
            return Err(Error::ConfigInvalid(
                "noise_x and noise_y must share a kind (both discrete or both continuous)".into(),
            ));
        }
        for spec in [self.noise_x, self.noise_y] {
            if let NoiseSpec::DiscreteUniform { r } | NoiseSpec::DiscreteGaussian { r } = spec {
                if r < 2 {
                    return Err(Error::ConfigInvalid(format!(
                        "discrete noise cardinality must be at least 2, got {r}"
                    )));
                }
            }
        }
        if !(0.0..=1.0).contains(&self.flip_probability) {
            return Err(Error::ConfigInvalid(format!(
                "flip_probability must lie in [0, 1], got {}",
                self.flip_probability
            )));
        }
        if self.n_samples < 2 {
            return Err(Error::ConfigInvalid(format!(
                "n_samples must be at least 2, got {}",
                self.n_samples
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> DataKind {
        self.noise_x.kind()
    }
}

/// How a dataset was built: the sampled polynomials, the noise regimes, and
/// whether the columns were flipped. Together with the master seed and
/// dataset index this replays the dataset exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Mechanism {
    /// `f`, applied to the cause.
    pub mechanism_poly: Polynomial,
    /// `g`, applied to the effect's noise.
    pub noise_poly: Polynomial,
    pub noise_x: NoiseSpec,
    pub noise_y: NoiseSpec,
    pub mode: NoiseMode,
    pub flipped: bool,
}

/// A generated dataset with its ground truth.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub data: PairDataset<f64>,
    /// `XtoY` or `YtoX`, never `Abstain`.
    pub truth: Direction,
    pub mechanism: Mechanism,
}

/// Degree uniform on `{1..5}`, then `degree + 1` coefficients uniform on
/// `{−10..10}` — except the leading one, which is drawn from the nonzero
/// integers so the polynomial genuinely has the sampled degree (a zero
/// leading coefficient would demote it, and a demoted-to-constant noise
/// transform would silently produce noiseless mechanisms).
pub fn sample_polynomial<R: Rng>(rng: &mut R) -> Polynomial {
    let degree = rng.random_range(1..=5usize);
    let coeffs = (0..=degree)
        .map(|position| loop {
            let c = rng.random_range(-10i64..=10);
            if c != 0 || position < degree {
                break c;
            }
        })
        .collect();
    Polynomial { coeffs }
}

/// Horner evaluation in f64.
pub fn eval_polynomial(p: &Polynomial, x: f64) -> f64 {
    let mut acc = 0.0;
    for &c in p.coeffs.iter().rev() {
        acc = acc * x + c as f64;
    }
    acc
}

/// Draw `n` noise values per the spec. Discrete families yield exact
/// integers stored in f64.
pub fn sample_noise<R: Rng>(spec: NoiseSpec, n: usize, rng: &mut R) -> Vec<f64> {
    match spec {
        NoiseSpec::DiscreteUniform { r } => {
            let low = -((r / 2) as i64);
            let high = low + r as i64 - 1;
            (0..n).map(|_| rng.random_range(low..=high) as f64).collect()
        }
        NoiseSpec::DiscreteGaussian { r } => {
            let draws: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let spec = fit_bins(&draws, r as usize).expect("n >= 1");
            let shift = (r / 2) as i64;
            apply_bins(&draws, spec)
                .labels
                .iter()
                .map(|&label| (label - shift) as f64)
                .collect()
        }
        NoiseSpec::ContinuousUniform => (0..n)
            .map(|_| loop {
                // random_range samples the half-open [−1, 1); redraw the
                // (measure-zero) left endpoint to honor the open interval.
                let v = rng.random_range(-1.0f64..1.0);
                if v != -1.0 {
                    break v;
                }
            })
            .collect(),
        NoiseSpec::ContinuousGaussian => (0..n).map(|_| rng.sample(StandardNormal)).collect(),
    }
}

/// The RNG stream for dataset `index` under `master_seed`. Streams are
/// independent, so generation order (or concurrency) cannot matter.
pub fn dataset_rng(master_seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(index);
    rng
}

/// Generate dataset `index` of the batch described by `cfg`.
///
/// Draw order within the stream: mechanism polynomial, noise polynomial,
/// `U_X`, `U_Y`, flip. Fully determined by `(cfg, index)`.
pub fn generate_dataset(cfg: &GenConfig, index: u64) -> Result<LabeledDataset> {
    cfg.validate()?;
    let mut rng = dataset_rng(cfg.seed, index);

    let mechanism_poly = sample_polynomial(&mut rng);
    let noise_poly = sample_polynomial(&mut rng);
    let u_x = sample_noise(cfg.noise_x, cfg.n_samples, &mut rng);
    let u_y = sample_noise(cfg.noise_y, cfg.n_samples, &mut rng);

    let cause = u_x;
    let effect: Vec<f64> = cause
        .iter()
        .zip(&u_y)
        .map(|(&x, &u)| {
            let fx = eval_polynomial(&mechanism_poly, x);
            let gu = eval_polynomial(&noise_poly, u);
            match cfg.noise_mode {
                NoiseMode::Additive => fx + gu,
                NoiseMode::Multiplicative => fx * gu,
            }
        })
        .collect();

    let flipped = rng.random_bool(cfg.flip_probability);
    let (x, y, truth) = if flipped {
        (effect, cause, Direction::YtoX)
    } else {
        (cause, effect, Direction::XtoY)
    };

    let data = validate_dataset(x, y, cfg.kind())?;
    Ok(LabeledDataset {
        data,
        truth,
        mechanism: Mechanism {
            mechanism_poly,
            noise_poly,
            noise_x: cfg.noise_x,
            noise_y: cfg.noise_y,
            mode: cfg.noise_mode,
            flipped,
        },
    })
}
