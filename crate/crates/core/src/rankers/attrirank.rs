use rand_distr::{Beta, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{AttributeMatrix, Transition, WeightedDigraph};
use crate::rankers::fixed_point::iterate;
use crate::rankers::{IterOptions, RankVector};
use crate::scalar::Scalar;
use crate::seed::{self, stream};

pub const DEFAULT_DAMPING_SAMPLES: usize = 64;

/// Shape parameters of the link-preference distribution.
pub const BETA_ALPHA: f64 = 2.0;
pub const BETA_BETA: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttriRankConfig<T> {
    /// RBF kernel width; `None` means `1 / m`.
    pub gamma: Option<T>,
    pub damping_samples: usize,
    pub iter: IterOptions<T>,
}

impl<T: Scalar> Default for AttriRankConfig<T> {
    fn default() -> Self {
        Self {
            gamma: None,
            damping_samples: DEFAULT_DAMPING_SAMPLES,
            iter: IterOptions::new(T::lit(1e-9), 10_000),
        }
    }
}

/// Unweighted structural walk: `1/δ_v` over the out-edges of `v`, uniform
/// for nodes with no out-edges.
pub fn structural_transition<T: Scalar>(graph: &WeightedDigraph<T>) -> Transition<T> {
    let columns = graph
        .out_neighbors()
        .into_iter()
        .map(|targets| targets.into_iter().map(|u| (u, T::one())).collect())
        .collect();
    Transition::from_weighted_columns(graph.node_count(), columns)
}

/// Column-normalized RBF similarity `Q[u][v] = s_uv / Σ_k s_kv`, row-major.
pub fn similarity_transition<T: Scalar>(attrs: &AttributeMatrix<T>, gamma: T) -> Vec<Vec<T>> {
    let n = attrs.rows();
    let mut s = vec![vec![T::zero(); n]; n];
    for u in 0..n {
        for v in u..n {
            let dist2: T = attrs
                .row(u)
                .iter()
                .zip(attrs.row(v))
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            let k = (-gamma * dist2).exp();
            s[u][v] = k;
            s[v][u] = k;
        }
    }
    for v in 0..n {
        let col: T = (0..n).map(|k| s[k][v]).sum();
        for row in s.iter_mut() {
            row[v] = row[v] / col;
        }
    }
    s
}

fn solve_sample<T: Scalar>(
    p: &Transition<T>,
    q: &[Vec<T>],
    d: T,
    opts: IterOptions<T>,
) -> Result<Vec<T>> {
    let n = p.node_count();
    let mut linked = vec![T::zero(); n];
    let (x, _, _) = iterate(n, opts, |x, out| {
        p.apply(x, &mut linked);
        for (u, o) in out.iter_mut().enumerate() {
            let similar: T = q[u].iter().zip(x).map(|(&a, &b)| a * b).sum();
            *o = (T::one() - d) * similar + d * linked[u];
        }
    })?;
    let total: T = x.iter().copied().sum();
    Ok(x.into_iter().map(|v| v / total).collect())
}

/// AttriRank with explicit link-preference values, one solve per value,
/// averaged and renormalized.
pub fn attrirank_with_dampings<T: Scalar>(
    graph: &WeightedDigraph<T>,
    attrs: &AttributeMatrix<T>,
    gamma: T,
    dampings: &[T],
    opts: IterOptions<T>,
) -> Result<RankVector<T>> {
    let n = graph.node_count();
    if attrs.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "graph has {n} nodes, attribute matrix {} rows",
            attrs.rows()
        )));
    }
    if !(gamma > T::zero()) {
        return Err(Error::InvalidParameter("gamma must be positive".into()));
    }
    if dampings.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one damping sample is required".into(),
        ));
    }
    if let Some(d) = dampings
        .iter()
        .find(|&&d| !(d >= T::zero() && d < T::one()))
    {
        return Err(Error::InvalidParameter(format!(
            "damping sample {d} outside [0, 1)"
        )));
    }
    let p = structural_transition(graph);
    let q = similarity_transition(attrs, gamma);
    let solutions: Vec<Result<Vec<T>>> = dampings
        .par_iter()
        .enumerate()
        .map(|(index, &d)| {
            solve_sample(&p, &q, d, opts).map_err(|e| Error::AttriRankSample {
                index,
                source: Box::new(e),
            })
        })
        .collect();
    // Report the lowest failing sample index regardless of scheduling.
    let solutions: Vec<Vec<T>> = solutions.into_iter().collect::<Result<_>>()?;
    let mut mean = vec![T::zero(); n];
    for sol in &solutions {
        for (m, &v) in mean.iter_mut().zip(sol) {
            *m = *m + v;
        }
    }
    Ok(RankVector::from_scores(mean, solutions.len(), T::zero()))
}

/// Draws `damping_samples` values from Beta(2, 3); sample `s` uses its own
/// stream derived from `seed`.
pub fn sample_dampings(samples: usize, seed: u64) -> Vec<f64> {
    let beta = Beta::new(BETA_ALPHA, BETA_BETA).expect("valid beta parameters");
    (0..samples)
        .map(|s| {
            let mut rng = seed::rng(seed, stream::ATTRIRANK, s as u64);
            beta.sample(&mut rng)
        })
        .collect()
}

pub fn attrirank<T: Scalar>(
    graph: &WeightedDigraph<T>,
    attrs: &AttributeMatrix<T>,
    config: AttriRankConfig<T>,
    seed: u64,
) -> Result<RankVector<T>> {
    if config.damping_samples == 0 {
        return Err(Error::InvalidParameter(
            "damping_samples must be at least 1".into(),
        ));
    }
    let gamma = config
        .gamma
        .unwrap_or_else(|| T::one() / T::from_usize_lossy(attrs.cols()));
    let dampings: Vec<T> = sample_dampings(config.damping_samples, seed)
        .into_iter()
        .map(T::lit)
        .collect();
    attrirank_with_dampings(graph, attrs, gamma, &dampings, config.iter)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, standardize_attributes};
    use crate::rankers::pagerank_with;

    fn cycle_with_chord() -> WeightedDigraph<f64> {
        build_graph([
            ("a", "b", 1.0),
            ("b", "c", 1.0),
            ("c", "a", 1.0),
            ("a", "c", 1.0),
            ("c", "d", 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn identical_attributes_reduce_to_pagerank() {
        let g = cycle_with_chord();
        let attrs = AttributeMatrix::uniform(4);
        let opts = IterOptions::new(1e-13, 10_000);
        let r = attrirank_with_dampings(&g, &attrs, 1.0, &[0.6], opts).unwrap();
        let p = pagerank_with(&g, 0.6, opts).unwrap();
        for (a, b) in r.scores.iter().zip(&p.scores) {
            assert!((a - b).abs() < 1e-11, "{a} vs {b}");
        }
    }

    #[test]
    fn flat_kernel_matches_identical_attributes() {
        let g = cycle_with_chord();
        let raw = vec![
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![0.3, 0.2],
            vec![0.9, 0.9],
        ];
        let attrs = standardize_attributes(&raw, vec!["x".into(), "y".into()]).unwrap();
        let opts = IterOptions::new(1e-13, 10_000);
        let flat = attrirank_with_dampings(&g, &attrs, 1e-12, &[0.3, 0.7], opts).unwrap();
        let same =
            attrirank_with_dampings(&g, &AttributeMatrix::uniform(4), 1.0, &[0.3, 0.7], opts)
                .unwrap();
        for (a, b) in flat.scores.iter().zip(&same.scores) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn seeded_sampling_is_deterministic() {
        let a = sample_dampings(16, 42);
        assert_eq!(a, sample_dampings(16, 42));
        assert_ne!(a, sample_dampings(16, 43));
        assert!(a.iter().all(|&d| (0.0..1.0).contains(&d)));
    }

    #[test]
    fn sample_failure_names_index() {
        let g = cycle_with_chord();
        let attrs = AttributeMatrix::uniform(4);
        let err = attrirank_with_dampings(&g, &attrs, 1.0, &[0.5, 0.9], IterOptions::new(0.0, 5))
            .unwrap_err();
        assert!(matches!(err, Error::AttriRankSample { index: 0, .. }));
        assert!(err.is_convergence());
    }
}
