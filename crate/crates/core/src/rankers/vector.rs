use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Converged influence scores with their ordinal ranks.
#[derive(Debug, Clone, PartialEq)]
pub struct RankVector<T> {
    /// Non-negative, summing to one.
    pub scores: Vec<T>,
    /// 1 = highest score; equal scores ordered by node index.
    pub ranks: Vec<usize>,
    pub iterations: usize,
    /// L1 change of the final iteration.
    pub residual: T,
}

impl<T: Scalar> RankVector<T> {
    /// Normalizes `scores` to sum one and derives ordinal ranks.
    pub fn from_scores(mut scores: Vec<T>, iterations: usize, residual: T) -> Self {
        let total: T = scores.iter().copied().sum();
        if total > T::zero() {
            scores.iter_mut().for_each(|s| *s = *s / total);
        }
        let ranks = ordinal_ranks(&scores);
        Self {
            scores,
            ranks,
            iterations,
            residual,
        }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Ordinal ranks, 1 for the largest value, ties broken by ascending index.
pub fn ordinal_ranks<T: Scalar>(values: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut ranks = vec![0; values.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = pos + 1;
    }
    ranks
}

/// Probability vector used for the non-link share of the recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportVector<T>(Vec<T>);

impl<T: Scalar> TeleportVector<T> {
    pub fn uniform(n: usize) -> Self {
        Self(vec![T::one() / T::from_usize_lossy(n); n])
    }

    /// Normalizes non-negative raw mass; all-zero mass falls back to uniform.
    pub fn from_mass(raw: Vec<T>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::DimensionMismatch("teleport vector is empty".into()));
        }
        if raw.iter().any(|&x| !(x >= T::zero()) || !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "teleport mass must be finite and non-negative".into(),
            ));
        }
        let total: T = raw.iter().copied().sum();
        if total > T::zero() {
            Ok(Self(raw.into_iter().map(|x| x / total).collect()))
        } else {
            Ok(Self::uniform(raw.len()))
        }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}
