use crate::error::{Error, Result};
use crate::rankers::{HnrParams, DAMPING_CAP};

/// Flat gene vector: for each group `k`, `(d(k), a(k)_1, …, a(k)_m)`.
/// Every gene lies in `[0, 1]`; damping genes are scaled by the damping cap
/// when decoded.
#[derive(Debug, Clone, PartialEq)]
pub struct Chromosome {
    pub genes: Vec<f64>,
}

impl Chromosome {
    pub fn new(genes: Vec<f64>) -> Result<Self> {
        if let Some(g) = genes.iter().find(|g| !(0.0..=1.0).contains(*g)) {
            return Err(Error::InvalidParameter(format!("gene {g} outside [0, 1]")));
        }
        Ok(Self { genes })
    }

    pub fn len(&self) -> usize {
        self.genes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.genes.is_empty()
    }
}

pub fn chromosome_len(k: usize, m: usize) -> usize {
    k * (1 + m)
}

pub fn decode_chromosome(genes: &[f64], k: usize, m: usize) -> Result<HnrParams<f64>> {
    if genes.len() != chromosome_len(k, m) || k == 0 || m == 0 {
        return Err(Error::DimensionMismatch(format!(
            "chromosome has {} genes, expected {} for K={k}, m={m}",
            genes.len(),
            chromosome_len(k, m)
        )));
    }
    if let Some(g) = genes.iter().find(|g| !(0.0..=1.0).contains(*g)) {
        return Err(Error::InvalidParameter(format!("gene {g} outside [0, 1]")));
    }
    let (damping, weights) = genes
        .chunks_exact(1 + m)
        .map(|block| {
            (
                (DAMPING_CAP * block[0]).min(DAMPING_CAP),
                block[1..].to_vec(),
            )
        })
        .unzip();
    HnrParams::new(damping, weights)
}

pub fn encode_params(params: &HnrParams<f64>) -> Chromosome {
    let genes = params
        .damping()
        .iter()
        .zip(params.attr_weights())
        .flat_map(|(&d, a)| std::iter::once((d / DAMPING_CAP).min(1.0)).chain(a.iter().copied()))
        .collect();
    Chromosome { genes }
}
