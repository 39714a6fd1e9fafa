use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluation::spearman;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LossKind {
    L1,
    L2,
    #[default]
    NegSpearman,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::L1 => "l1",
            LossKind::L2 => "l2",
            LossKind::NegSpearman => "neg_spearman",
        }
    }
}

impl std::str::FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(LossKind::L1),
            "l2" => Ok(LossKind::L2),
            "neg_spearman" | "spearman" => Ok(LossKind::NegSpearman),
            other => Err(Error::InvalidParameter(format!("unknown loss `{other}`"))),
        }
    }
}

fn min_max(values: &[f64]) -> Vec<f64> {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    values
        .iter()
        .map(|&v| if span > 0.0 { (v - lo) / span } else { 0.5 })
        .collect()
}

/// Discrepancy between predicted scores and labels over the same nodes.
///
/// L1 and L2 compare min-max normalized vectors. `NegSpearman` is `1 − ρ`;
/// when either side is constant ρ is undefined and the loss is 1.
pub fn loss(predicted: &[f64], labels: &[f64], kind: LossKind) -> Result<f64> {
    if predicted.len() != labels.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} predictions for {} labels",
            predicted.len(),
            labels.len()
        )));
    }
    if labels.len() < 2 {
        return Err(Error::InvalidParameter(
            "loss needs at least two labels".into(),
        ));
    }
    let n = labels.len() as f64;
    match kind {
        LossKind::L1 | LossKind::L2 => {
            let (p, y) = (min_max(predicted), min_max(labels));
            let total: f64 = p
                .iter()
                .zip(&y)
                .map(|(a, b)| {
                    let e = (a - b).abs();
                    if kind == LossKind::L1 {
                        e
                    } else {
                        e * e
                    }
                })
                .sum();
            Ok(total / n)
        }
        LossKind::NegSpearman => {
            if labels.len() < 3 {
                return Err(Error::InvalidParameter(
                    "spearman loss needs at least three labels".into(),
                ));
            }
            match spearman(predicted, labels) {
                Ok(rho) => Ok(1.0 - rho),
                Err(Error::UndefinedCorrelation(_)) => Ok(1.0),
                Err(e) => Err(e),
            }
        }
    }
}

/// Maps a loss to a fitness in `(0, 1]`: `1 / (1 + loss)`.
pub fn fitness(loss_value: f64) -> Result<f64> {
    if loss_value.is_nan() || loss_value < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "loss {loss_value} is negative"
        )));
    }
    Ok(1.0 / (1.0 + loss_value))
}
