//! Core domain types: the validated pair dataset and the enums every other
//! module shares.

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Whether both columns of a dataset are discrete (integer-valued) or
/// continuous. Mixed pairs are out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DataKind {
    Discrete,
    Continuous,
}

/// Outcome of the decision rule. `Abstain` is a valid *prediction* (score
/// exactly zero) but never a valid ground truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    XtoY,
    YtoX,
    Abstain,
}

impl Direction {
    /// Swap the roles of the two columns; `Abstain` is its own mirror.
    pub fn flipped(self) -> Direction {
        match self {
            Direction::XtoY => Direction::YtoX,
            Direction::YtoX => Direction::XtoY,
            Direction::Abstain => Direction::Abstain,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Direction::XtoY => "x->y",
            Direction::YtoX => "y->x",
            Direction::Abstain => "abstain",
        })
    }
}

/// The six complexity criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriterionKind {
    /// Tree depth.
    TD,
    /// Total node count.
    TN,
    /// Leaf count.
    TL,
    /// Mean path length over the training inputs.
    PL,
    /// Normalized decrease in Shannon entropy from target to residual.
    RE,
    /// Interpolation hardness: training misclassification (discrete) or
    /// MSE (continuous).
    IH,
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 6] = [
        CriterionKind::TD,
        CriterionKind::TN,
        CriterionKind::TL,
        CriterionKind::PL,
        CriterionKind::RE,
        CriterionKind::IH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CriterionKind::TD => "J_TD",
            CriterionKind::TN => "J_TN",
            CriterionKind::TL => "J_TL",
            CriterionKind::PL => "J_PL",
            CriterionKind::RE => "J_RE",
            CriterionKind::IH => "J_IH",
        }
    }
}

/// `n` observed `(x, y)` value pairs plus the kind both columns share — the
/// unit every inference runs on.
///
/// Construction goes through [`validate_dataset`], which guarantees equal
/// column lengths `≥ 2`, finite values, and (for [`DataKind::Discrete`])
/// integer-valued entries. Instances are immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDataset<T: Real> {
    x: Vec<T>,
    y: Vec<T>,
    kind: DataKind,
}

impl<T: Real> PairDataset<T> {
    pub fn x(&self) -> &[T] {
        &self.x
    }

    pub fn y(&self) -> &[T] {
        &self.y
    }

    pub fn kind(&self) -> DataKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// The same data with the columns exchanged.
    pub fn swapped(&self) -> PairDataset<T> {
        PairDataset {
            x: self.y.clone(),
            y: self.x.clone(),
            kind: self.kind,
        }
    }
}

/// Check raw columns against the `PairDataset` invariants and wrap them.
pub fn validate_dataset<T: Real>(x: Vec<T>, y: Vec<T>, kind: DataKind) -> Result<PairDataset<T>> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            x: x.len(),
            y: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::TooSmall(x.len()));
    }
    for (column, values) in [("x", &x), ("y", &y)] {
        for (row, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { column, row });
            }
            // Beyond 2^53 consecutive integers stop being representable, so
            // "integer-valued" is no longer a meaningful claim about the
            // underlying data; reject rather than guess.
            let exact_limit = T::from_f64(9_007_199_254_740_992.0).unwrap();
            if kind == DataKind::Discrete && (v.fract() != T::zero() || v.abs() >= exact_limit) {
                return Err(Error::NonInteger {
                    column,
                    row,
                    value: num_traits::cast(v).unwrap_or(f64::NAN),
                });
            }
        }
    }
    Ok(PairDataset { x, y, kind })
}
