//! Empirical statistics over label sequences and numeric residuals:
//! plug-in Shannon entropy, misclassification, and mean squared error.

use crate::{Error, Real, Result};

/// Plug-in Shannon entropy (base 2) of the empirical distribution of
/// integer labels. Bounded by `log2` of the number of distinct values and
/// zero exactly when the sequence is constant.
pub fn entropy_of_labels(values: &[i64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    Ok(entropy_from_sorted_runs(&sorted, |a, b| a == b))
}

/// Plug-in Shannon entropy of real values, with each distinct value its own
/// category. Values are rounded to 12 significant decimal digits first so
/// floating-point noise in midpoint arithmetic cannot mint spurious
/// categories.
pub fn entropy_of_reals<T: Real>(values: &[T]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rounded: Vec<f64> = values
        .iter()
        .map(|&v| round_sig(num_traits::cast::<T, f64>(v).unwrap()))
        .collect();
    rounded.sort_by(f64::total_cmp);
    Ok(entropy_from_sorted_runs(&rounded, |a, b| a == b))
}

/// Sum `−p·log2(p)` over the runs of a sorted slice.
///
/// The run counts are themselves sorted before summing, so the result
/// depends only on the *multiset* of category counts. That makes entropy
/// not just permutation invariant but bit-identical under any injective
/// relabeling of the categories, even ones that reorder them.
fn entropy_from_sorted_runs<V: Copy>(sorted: &[V], eq: impl Fn(V, V) -> bool) -> f64 {
    let n = sorted.len() as f64;
    let mut runs = Vec::new();
    let mut run = 1usize;
    for i in 1..=sorted.len() {
        if i < sorted.len() && eq(sorted[i], sorted[i - 1]) {
            run += 1;
            continue;
        }
        runs.push(run);
        run = 1;
    }
    runs.sort_unstable();
    let mut h = 0.0;
    for run in runs {
        let p = run as f64 / n;
        h -= p * p.log2();
    }
    // -0.0 from a single full run reads badly in reports.
    if h == 0.0 {
        0.0
    } else {
        h
    }
}

/// Round to 12 significant decimal digits, collapsing `-0` to `+0`.
///
/// Goes through the decimal string representation rather than
/// `log10`/`powi` so the cut is exact at decade boundaries and identical
/// across platforms.
pub fn round_sig(v: f64) -> f64 {
    if v == 0.0 {
        return 0.0;
    }
    format!("{v:.11e}").parse().unwrap()
}

/// Fraction of positions where the two label sequences disagree.
pub fn misclassification(y: &[i64], yhat: &[i64]) -> Result<f64> {
    check_paired(y.len(), yhat.len())?;
    let wrong = y.iter().zip(yhat).filter(|(a, b)| a != b).count();
    Ok(wrong as f64 / y.len() as f64)
}

/// Mean squared error between paired real sequences.
pub fn mse<T: Real>(y: &[T], yhat: &[T]) -> Result<f64> {
    check_paired(y.len(), yhat.len())?;
    let sum: f64 = y
        .iter()
        .zip(yhat)
        .map(|(&a, &b)| {
            let d = num_traits::cast::<T, f64>(a - b).unwrap();
            d * d
        })
        .sum();
    Ok(sum / y.len() as f64)
}

/// Element-wise `target − predicted`.
pub fn residuals<T: Real>(target: &[T], predicted: &[T]) -> Result<Vec<T>> {
    if target.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            x: target.len(),
            y: predicted.len(),
        });
    }
    Ok(target.iter().zip(predicted).map(|(&t, &p)| t - p).collect())
}

fn check_paired(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { x: a, y: b });
    }
    if a == 0 {
        return Err(Error::EmptyInput);
    }
    Ok(())
}
