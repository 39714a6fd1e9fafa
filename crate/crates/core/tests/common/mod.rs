#![allow(dead_code)]

use hnr_core::graph::{
    build_graph, standardize_attributes, AttributeMatrix, GroupAssignment, WeightedDigraph,
};
use hnr_core::rankers::HnrParams;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random weighted digraph on `n` nodes. Every node appears in at least one
/// edge so the interned order is 0..n; some nodes may end up dangling.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> WeightedDigraph<f64> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if rng.random_bool(density) {
                edges.push((u, v, rng.random_range(0.1..10.0)));
            }
        }
    }
    // anchor each node so ids are interned in index order
    let mut anchored: Vec<(String, String, f64)> = (0..n)
        .map(|u| (format!("v{u}"), format!("v{}", (u + 1) % n), 0.0))
        .collect();
    anchored.extend(
        edges
            .into_iter()
            .map(|(u, v, w)| (format!("v{u}"), format!("v{v}"), w)),
    );
    build_graph(anchored).unwrap()
}

pub fn random_attrs(rng: &mut ChaCha8Rng, n: usize, m: usize) -> AttributeMatrix<f64> {
    let raw: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..m).map(|_| rng.random()).collect())
        .collect();
    standardize_attributes(&raw, (0..m).map(|j| format!("x{j}")).collect()).unwrap()
}

pub fn random_groups(rng: &mut ChaCha8Rng, n: usize, k: usize) -> GroupAssignment {
    let mut g: Vec<usize> = (0..n)
        .map(|u| if u < k { u } else { rng.random_range(0..k) })
        .collect();
    g.rotate_left(rng.random_range(0..n));
    GroupAssignment::new(g).unwrap()
}

pub fn random_params(rng: &mut ChaCha8Rng, k: usize, m: usize) -> HnrParams<f64> {
    let d = (0..k).map(|_| rng.random_range(0.0..=0.99)).collect();
    let a = (0..k)
        .map(|_| {
            let mut w: Vec<f64> = (0..m).map(|_| rng.random()).collect();
            w[0] = w[0].max(0.05);
            w
        })
        .collect();
    HnrParams::new(d, a).unwrap()
}

/// Dense column-stochastic matrix built from the raw edge list, with
/// dangling columns spread uniformly.
pub fn dense_transition(graph: &WeightedDigraph<f64>) -> DMatrix<f64> {
    let n = graph.node_count();
    let mut w = DMatrix::<f64>::zeros(n, n);
    for &(s, t, x) in graph.edges() {
        w[(t, s)] += x;
    }
    for v in 0..n {
        let col: f64 = w.column(v).sum();
        if col > 0.0 {
            for u in 0..n {
                w[(u, v)] /= col;
            }
        } else {
            for u in 0..n {
                w[(u, v)] = 1.0 / n as f64;
            }
        }
    }
    w
}

/// Solves `(I − D·T)·x = (I − D)·t` by LU and normalizes to sum one.
pub fn direct_solve(t: &DMatrix<f64>, teleport: &[f64], damping: &[f64]) -> Vec<f64> {
    let n = teleport.len();
    let d = DMatrix::from_diagonal(&DVector::from_column_slice(damping));
    let a = DMatrix::identity(n, n) - &d * t;
    let b = DVector::from_iterator(n, (0..n).map(|u| (1.0 - damping[u]) * teleport[u]));
    let x = a.lu().solve(&b).expect("non-singular system");
    let s = x.sum();
    x.iter().map(|v| v / s).collect()
}

/// Teleport computed directly from the definitions.
pub fn teleport_oracle(
    attrs: &AttributeMatrix<f64>,
    groups: &GroupAssignment,
    params: &HnrParams<f64>,
) -> Vec<f64> {
    let raw: Vec<f64> = (0..attrs.rows())
        .map(|u| {
            let a = &params.attr_weights()[groups.group_of(u)];
            (0..attrs.cols()).map(|j| a[j] * attrs.get(u, j)).sum()
        })
        .collect();
    let s: f64 = raw.iter().sum();
    if s == 0.0 {
        vec![1.0 / raw.len() as f64; raw.len()]
    } else {
        raw.iter().map(|r| r / s).collect()
    }
}

pub fn hnr_oracle(
    graph: &WeightedDigraph<f64>,
    attrs: &AttributeMatrix<f64>,
    groups: &GroupAssignment,
    params: &HnrParams<f64>,
) -> Vec<f64> {
    let t = dense_transition(graph);
    let tele = teleport_oracle(attrs, groups, params);
    let d: Vec<f64> = (0..graph.node_count())
        .map(|u| params.damping()[groups.group_of(u)])
        .collect();
    direct_solve(&t, &tele, &d)
}

/// Connected undirected simple graph as an adjacency matrix: a random
/// spanning tree plus random extra edges.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.random_range(0..v);
        a[u][v] = true;
        a[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(extra) {
                a[u][v] = true;
                a[v][u] = true;
            }
        }
    }
    a
}

/// Digraph whose undirected projection equals `adj` under ids `v{i}`; each
/// undirected edge gets one random orientation (sometimes both).
pub fn digraph_from_adjacency(rng: &mut ChaCha8Rng, adj: &[Vec<bool>]) -> WeightedDigraph<f64> {
    let n = adj.len();
    let mut edges: Vec<(String, String, f64)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] {
                match rng.random_range(0..3) {
                    0 => edges.push((format!("v{u}"), format!("v{v}"), 1.0)),
                    1 => edges.push((format!("v{v}"), format!("v{u}"), 2.5)),
                    _ => {
                        edges.push((format!("v{u}"), format!("v{v}"), 1.0));
                        edges.push((format!("v{v}"), format!("v{u}"), 0.5));
                    }
                }
            }
        }
    }
    build_graph(edges).unwrap()
}

/// Enumerates every infection event sequence of length two from `seed`:
/// the infected set grows by one uninfected node adjacent to it per event.
/// Returns the outgoing-edge count of each final cluster, or `None` when the
/// entropy is undefined.
pub fn exf_oracle(adj: &[Vec<bool>], seed: usize) -> Option<f64> {
    let n = adj.len();
    let mut d = Vec::new();
    for a in 0..n {
        if !adj[seed][a] {
            continue;
        }
        for b in 0..n {
            if b == seed || b == a || !(adj[seed][b] || adj[a][b]) {
                continue;
            }
            let inside = |x: usize| x == seed || x == a || x == b;
            let mut out = 0usize;
            for c in [seed, a, b] {
                for y in 0..n {
                    if adj[c][y] && !inside(y) {
                        out += 1;
                    }
                }
            }
            d.push(out as f64);
        }
    }
    match d.len() {
        0 => None,
        1 => Some(0.0),
        _ => {
            let s: f64 = d.iter().sum();
            if s == 0.0 {
                return None;
            }
            Some(
                -d.iter()
                    .filter(|&&x| x > 0.0)
                    .map(|x| (x / s) * (x / s).ln())
                    .sum::<f64>(),
            )
        }
    }
}

/// Average ranks via pairwise counting: rank = 1 + #smaller + (#equal − 1)/2.
pub fn average_ranks(x: &[f64]) -> Vec<f64> {
    x.iter()
        .map(|&a| {
            let less = x.iter().filter(|&&b| b < a).count() as f64;
            let equal = x.iter().filter(|&&b| b == a).count() as f64;
            1.0 + less + (equal - 1.0) / 2.0
        })
        .collect()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    sxy / (sxx * syy).sqrt()
}

pub fn spearman_oracle(x: &[f64], y: &[f64]) -> f64 {
    pearson(&average_ranks(x), &average_ranks(y))
}

/// Pareto(x_m = 1, alpha) draws by inversion.
pub fn pareto(rng: &mut ChaCha8Rng, n: usize, alpha: f64) -> Vec<f64> {
    (0..n)
        .map(|_| (1.0 - rng.random::<f64>()).powf(-1.0 / alpha))
        .collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Undirected unweighted adjacency of a digraph, self-loops dropped.
pub fn adjacency(graph: &WeightedDigraph<f64>) -> Vec<Vec<bool>> {
    let n = graph.node_count();
    let mut a = vec![vec![false; n]; n];
    for &(s, t, _) in graph.edges() {
        if s != t {
            a[s][t] = true;
            a[t][s] = true;
        }
    }
    a
}
