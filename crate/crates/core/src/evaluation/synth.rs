use rand::Rng as _;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::{
    assign_groups_default, build_graph, standardize_attributes, AttributeMatrix, GroupAssignment,
    LabelSet, WeightedDigraph,
};
use crate::rankers::{hnr_rank, HnrParams, IterOptions, DAMPING_CAP};
use crate::seed::{self, stream};

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_nodes: usize,
    /// Upper bound on the number of groups; the realized count comes from
    /// head/tail breaks on in-strength.
    pub k: usize,
    pub m: usize,
    /// Standard deviation of the label noise (in units of standardized
    /// log-score). Zero gives the raw scores as labels.
    pub noise_sd: f64,
    /// Edges added by each new node.
    pub out_degree: usize,
    /// Probability that a target links back to the new node.
    pub reciprocity: f64,
    /// Fixed hidden parameters; drawn uniformly from the legal box when unset.
    pub hidden: Option<HnrParams<f64>>,
}

impl SynthConfig {
    pub fn new(n_nodes: usize, k: usize, m: usize) -> Self {
        Self {
            n_nodes,
            k,
            m,
            noise_sd: 0.0,
            out_degree: 3,
            reciprocity: 0.3,
            hidden: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SyntheticDataset {
    pub graph: WeightedDigraph<f64>,
    /// Attribute draws before standardization, in node order.
    pub raw_attributes: Vec<Vec<f64>>,
    pub attrs: AttributeMatrix<f64>,
    pub groups: GroupAssignment,
    pub hidden: HnrParams<f64>,
    /// Noise-free model scores under `hidden`.
    pub scores: Vec<f64>,
    pub labels: LabelSet,
}

/// Tight solve used to produce ground truth.
pub fn reference_iter() -> IterOptions<f64> {
    IterOptions::new(1e-13, 100_000)
}

/// Noise-free dataset with hidden parameters drawn from the legal box.
pub fn generate_synthetic(
    n_nodes: usize,
    k: usize,
    m: usize,
    seed: u64,
) -> Result<SyntheticDataset> {
    generate_synthetic_with(&SynthConfig::new(n_nodes, k, m), seed)
}

/// Preferential-attachment digraph with uniform attributes and labels
/// produced by the model itself.
pub fn generate_synthetic_with(config: &SynthConfig, seed: u64) -> Result<SyntheticDataset> {
    let SynthConfig {
        n_nodes: n,
        k,
        m,
        noise_sd,
        out_degree,
        reciprocity,
        ..
    } = *config;
    if n < 10 || !(1..=5).contains(&k) || !(1..=8).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "synthetic data needs n_nodes >= 10, 1 <= K <= 5, 1 <= m <= 8 (got {n}, {k}, {m})"
        )));
    }
    if out_degree == 0
        || out_degree + 1 > n
        || !(0.0..=1.0).contains(&reciprocity)
        || !(noise_sd >= 0.0)
    {
        return Err(Error::InvalidParameter(
            "invalid synthetic graph settings".into(),
        ));
    }
    let mut rng = seed::rng(seed, stream::SYNTH, 0);

    let core = out_degree + 1;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut in_deg = vec![0usize; n];
    let weight = |rng: &mut seed::Rng| rng.random_range(1.0..10.0);
    for s in 0..core {
        for t in 0..core {
            if s != t {
                edges.push((s, t, weight(&mut rng)));
                in_deg[t] += 1;
            }
        }
    }
    for v in core..n {
        let mut targets = Vec::with_capacity(out_degree);
        while targets.len() < out_degree {
            let total: usize = (0..v)
                .filter(|u| !targets.contains(u))
                .map(|u| in_deg[u] + 1)
                .sum();
            let mut pick = rng.random_range(0..total);
            for u in (0..v).filter(|u| !targets.contains(u)) {
                let w = in_deg[u] + 1;
                if pick < w {
                    targets.push(u);
                    break;
                }
                pick -= w;
            }
        }
        for &t in &targets {
            edges.push((v, t, weight(&mut rng)));
            in_deg[t] += 1;
            if rng.random::<f64>() < reciprocity {
                edges.push((t, v, weight(&mut rng)));
                in_deg[v] += 1;
            }
        }
    }
    let ids: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let graph = build_graph(
        edges
            .iter()
            .map(|&(s, t, w)| (ids[s].as_str(), ids[t].as_str(), w)),
    )?;

    let raw_attributes: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
        .collect();
    let names = (1..=m).map(|j| format!("x{j}")).collect();
    let attrs = standardize_attributes(&raw_attributes, names)?;

    let groups = if k > 1 {
        assign_groups_default(&graph, k - 1)?
    } else {
        GroupAssignment::single(n)
    };
    let hidden = match &config.hidden {
        Some(h) => {
            if h.groups() != groups.k() || h.attr_dim() != m {
                return Err(Error::DimensionMismatch(format!(
                    "hidden parameters have K={}, m={}; dataset has K={}, m={m}",
                    h.groups(),
                    h.attr_dim(),
                    groups.k()
                )));
            }
            h.clone()
        }
        None => {
            let damping = (0..groups.k())
                .map(|_| rng.random_range(0.0..=DAMPING_CAP))
                .collect();
            let weights = (0..groups.k())
                .map(|_| (0..m).map(|_| rng.random::<f64>()).collect())
                .collect();
            HnrParams::new(damping, weights)?
        }
    };
    let scores = hnr_rank(&graph, &attrs, &groups, &hidden, reference_iter())?.scores;

    let values: Vec<f64> = if noise_sd > 0.0 {
        let logs: Vec<f64> = scores.iter().map(|s| s.ln()).collect();
        let mean = logs.iter().sum::<f64>() / n as f64;
        let sd = (logs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64).sqrt();
        let noise = Normal::new(0.0, noise_sd).expect("positive sd");
        logs.iter()
            .map(|x| (x - mean) / if sd > 0.0 { sd } else { 1.0 } + noise.sample(&mut rng))
            .collect()
    } else {
        scores.clone()
    };
    let labels = LabelSet::new(values.into_iter().enumerate().collect(), n)?;
    Ok(SyntheticDataset {
        graph,
        raw_attributes,
        attrs,
        groups,
        hidden,
        scores,
        labels,
    })
}
