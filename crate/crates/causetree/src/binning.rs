//! Equal-width discretization.
//!
//! Continuous variables are binned over their observed range so that both
//! sides of a pair share a finite cardinality before tree fitting and
//! entropy estimation. Discrete variables never pass through here — their
//! integer values already are labels.

use crate::{Error, Real, Result};

/// An equal-width binning of `[lo, hi]` into `n_bins` labeled bins.
///
/// Bin `b` covers `[lo + b·width, lo + (b+1)·width)`, except the last bin,
/// which is closed on the right so `hi` itself is representable. A
/// degenerate spec (`lo == hi`, width 0) maps everything to bin 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinSpec<T: Real> {
    pub lo: T,
    pub hi: T,
    pub n_bins: usize,
    pub width: T,
}

/// Labels produced by applying a [`BinSpec`], kept with their spec so
/// midpoints can be recovered.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedVariable<T: Real> {
    pub labels: Vec<i64>,
    pub spec: BinSpec<T>,
}

/// Fit a spec over the observed range of `values`.
pub fn fit_bins<T: Real>(values: &[T], n_bins: usize) -> Result<BinSpec<T>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    assert!(n_bins >= 1, "n_bins must be positive");
    let mut lo = values[0];
    let mut hi = values[0];
    for &v in &values[1..] {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    let width = (hi - lo) / T::from_usize(n_bins).unwrap();
    Ok(BinSpec {
        lo,
        hi,
        n_bins,
        width,
    })
}

/// Map each value to its bin label. Values outside `[lo, hi]` clamp to the
/// nearest end bin, so a spec can be re-applied to data it was not fit on.
pub fn apply_bins<T: Real>(values: &[T], spec: BinSpec<T>) -> BinnedVariable<T> {
    let top = spec.n_bins as i64 - 1;
    let labels = values
        .iter()
        .map(|&v| {
            if spec.width == T::zero() {
                return 0;
            }
            let raw = ((v - spec.lo) / spec.width).floor();
            let label = num_traits::cast::<T, i64>(raw).unwrap_or(i64::MAX);
            label.clamp(0, top)
        })
        .collect();
    BinnedVariable {
        labels,
        spec,
    }
}

/// The numeric representative of a bin: its center, `lo + (label + ½)·width`.
/// A degenerate spec represents every value as `lo`.
pub fn midpoint<T: Real>(spec: BinSpec<T>, label: i64) -> Result<T> {
    if label < 0 || label >= spec.n_bins as i64 {
        return Err(Error::LabelOutOfRange {
            label,
            n_bins: spec.n_bins,
        });
    }
    let half = T::from_f64(0.5).unwrap();
    Ok(spec.lo + (T::from_i64(label).unwrap() + half) * spec.width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec01x4() -> BinSpec<f64> {
        fit_bins(&[0.0, 1.0], 4).unwrap()
    }

    #[test]
    fn fit_covers_observed_range() {
        let spec = spec01x4();
        assert_eq!(spec.lo, 0.0);
        assert_eq!(spec.hi, 1.0);
        assert_eq!(spec.n_bins, 4);
        assert_eq!(spec.width, 0.25);
    }

    #[test]
    fn fit_on_constant_input_degenerates_to_one_bin() {
        let spec = fit_bins(&[5.0, 5.0, 5.0], 100).unwrap();
        assert_eq!(spec.width, 0.0);
        let binned = apply_bins(&[5.0, 5.0, 5.0], spec);
        assert!(binned.labels.iter().all(|&l| l == 0));
        assert_eq!(midpoint(spec, 0).unwrap(), 5.0);
    }

    #[test]
    fn fit_rejects_empty_input() {
        assert!(matches!(fit_bins::<f64>(&[], 4), Err(Error::EmptyInput)));
    }

    #[test]
    fn bin_boundaries_are_left_closed_and_last_bin_right_closed() {
        let binned = apply_bins(&[0.0, 0.24, 0.25, 1.0], spec01x4());
        assert_eq!(binned.labels, vec![0, 0, 1, 3]);
    }

    #[test]
    fn out_of_range_values_clamp() {
        assert_eq!(apply_bins(&[-2.0], spec01x4()).labels, vec![0]);
        assert_eq!(apply_bins(&[7.0], spec01x4()).labels, vec![3]);
    }

    #[test]
    fn midpoints_are_bin_centers() {
        assert_eq!(midpoint(spec01x4(), 0).unwrap(), 0.125);
        assert_eq!(midpoint(spec01x4(), 3).unwrap(), 0.875);
        assert!(matches!(
            midpoint(spec01x4(), 4),
            Err(Error::LabelOutOfRange { label: 4, n_bins: 4 })
        ));
    }

    #[test]
    fn uniform_sample_spans_expected_width() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let values: Vec<f64> = (0..1000).map(|_| rng.random_range(-1.0..1.0)).collect();
        let spec = fit_bins(&values, 100).unwrap();
        assert!(spec.lo > -1.0 && spec.lo < -0.98, "lo = {}", spec.lo);
        assert!(spec.hi < 1.0 && spec.hi > 0.98, "hi = {}", spec.hi);
        assert!((spec.width - 0.02).abs() < 1e-3);
    }

    /// Width so small relative to the range ends that `lo + k·width`
    /// cannot be told apart from `lo` in f64 — the midpoint identities
    /// don't survive such a spec and the properties skip it.
    fn representable(spec: BinSpec<f64>) -> bool {
        spec.width == 0.0
            || spec.width > spec.lo.abs().max(spec.hi.abs()) * f64::EPSILON * 8.0
    }

    proptest! {
        #[test]
        fn midpoint_round_trip_stays_within_half_width(
            mut values in proptest::collection::vec(-1e6f64..1e6, 1..50),
            n_bins in 1usize..64,
        ) {
            let spec = fit_bins(&values, n_bins).unwrap();
            prop_assume!(representable(spec));
            values.push(spec.lo);
            values.push(spec.hi);
            let binned = apply_bins(&values, spec);
            for (&v, &label) in values.iter().zip(&binned.labels) {
                let m = midpoint(spec, label).unwrap();
                prop_assert!((v - m).abs() <= spec.width / 2.0 + 1e-9);
            }
        }

        #[test]
        fn labels_are_monotone_in_the_value(
            values in proptest::collection::vec(-1e6f64..1e6, 2..50),
            n_bins in 1usize..64,
        ) {
            let spec = fit_bins(&values, n_bins).unwrap();
            let mut sorted = values.clone();
            sorted.sort_by(f64::total_cmp);
            let binned = apply_bins(&sorted, spec);
            for pair in binned.labels.windows(2) {
                prop_assert!(pair[0] <= pair[1]);
            }
        }

        #[test]
        fn midpoints_rebin_to_their_own_bins(
            values in proptest::collection::vec(-1e3f64..1e3, 2..50),
            n_bins in 1usize..64,
        ) {
            let spec = fit_bins(&values, n_bins).unwrap();
            prop_assume!(representable(spec));
            let labels = apply_bins(&values, spec).labels;
            let mids: Vec<f64> = labels.iter().map(|&l| midpoint(spec, l).unwrap()).collect();
            let relabeled = apply_bins(&mids, spec).labels;
            prop_assert_eq!(labels, relabeled);
        }
    }
}
