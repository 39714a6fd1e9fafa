use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub const DEFAULT_HEAD_FRACTION_CAP: f64 = 0.4;

/// One division: `head` holds the items strictly above the mean of the
/// parent set, `tail` the rest. Members are indices into the source values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HtLevel {
    pub level: usize,
    pub mean: f64,
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HtPartition<T> {
    pub levels: Vec<HtLevel>,
    pub source_values: Vec<T>,
}

impl<T> HtPartition<T> {
    /// Number of recorded divisions with a non-empty head.
    pub fn depth(&self) -> usize {
        self.levels.iter().filter(|l| !l.head.is_empty()).count()
    }
}

/// Recursive mean split of heavy-tailed values.
///
/// A division is recorded only when its head is non-empty and holds at most
/// `head_fraction_cap` of the parent set; recursion continues into heads
/// with at least two members. If the first division fails those tests a
/// single level with an empty head is recorded.
pub fn head_tail_breaks<T: Scalar>(values: &[T], head_fraction_cap: f64) -> Result<HtPartition<T>> {
    if values.len() < 2 {
        return Err(Error::InvalidParameter(
            "head/tail breaks needs at least two values".into(),
        ));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "head/tail breaks needs finite values".into(),
        ));
    }
    if !(head_fraction_cap > 0.0 && head_fraction_cap <= 1.0) {
        return Err(Error::InvalidParameter(
            "head fraction cap must lie in (0, 1]".into(),
        ));
    }
    let mut levels = Vec::new();
    let mut current: Vec<usize> = (0..values.len()).collect();
    let mut level = 1;
    loop {
        let mean =
            current.iter().map(|&i| values[i]).sum::<T>() / T::from_usize_lossy(current.len());
        let (head, tail): (Vec<usize>, Vec<usize>) =
            current.iter().partition(|&&i| values[i] > mean);
        let fraction = head.len() as f64 / current.len() as f64;
        if head.is_empty() || fraction > head_fraction_cap {
            if level == 1 {
                levels.push(HtLevel {
                    level,
                    mean: mean.as_f64(),
                    head: Vec::new(),
                    tail: current,
                });
            }
            break;
        }
        let recurse = head.len() >= 2;
        levels.push(HtLevel {
            level,
            mean: mean.as_f64(),
            head: head.clone(),
            tail,
        });
        if !recurse {
            break;
        }
        current = head;
        level += 1;
    }
    Ok(HtPartition {
        levels,
        source_values: values.to_vec(),
    })
}
