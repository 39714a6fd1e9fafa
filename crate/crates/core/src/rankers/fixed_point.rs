use crate::error::{Error, Result};
use crate::graph::Transition;
use crate::rankers::params::DAMPING_CAP;
use crate::rankers::{ordinal_ranks, RankVector, TeleportVector};
use crate::scalar::Scalar;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Stopping rule shared by every iterative ranker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterOptions<T> {
    /// Stop once the L1 change between sweeps drops below this.
    pub tol: T,
    pub max_iter: usize,
}

impl<T: Scalar> Default for IterOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(DEFAULT_TOL),
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl<T: Scalar> IterOptions<T> {
    pub fn new(tol: T, max_iter: usize) -> Self {
        Self { tol, max_iter }
    }
}

/// Iterates `step` from the uniform vector until the L1 change is below
/// `opts.tol`. Returns the last iterate, iteration count and residual.
pub(crate) fn iterate<T, F>(
    n: usize,
    opts: IterOptions<T>,
    mut step: F,
) -> Result<(Vec<T>, usize, T)>
where
    T: Scalar,
    F: FnMut(&[T], &mut [T]),
{
    if opts.max_iter == 0 {
        return Err(Error::InvalidParameter(
            "max_iter must be at least 1".into(),
        ));
    }
    let mut x = vec![T::one() / T::from_usize_lossy(n); n];
    let mut next = vec![T::zero(); n];
    let mut residual = T::infinity();
    for it in 1..=opts.max_iter {
        step(&x, &mut next);
        residual = x.iter().zip(&next).map(|(&a, &b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if residual < opts.tol {
            return Ok((x, it, residual));
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: residual.as_f64(),
        partial: x.iter().map(|v| v.as_f64()).collect(),
    })
}

/// Solves `PR(u) = (1 − d(u))·t(u) + d(u)·Σ_v T[u,v]·PR(v)` by fixed-point
/// iteration and renormalizes the result to sum one.
///
/// With every `d(u) = 0` the map is constant, so the first sweep is already
/// the fixed point; that case returns after one iteration with residual 0.
pub fn fixed_point_rank<T: Scalar>(
    transition: &Transition<T>,
    teleport: &TeleportVector<T>,
    damping_per_node: &[T],
    opts: IterOptions<T>,
) -> Result<RankVector<T>> {
    let n = transition.node_count();
    if teleport.len() != n || damping_per_node.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "transition has {n} nodes, teleport {} and damping {}",
            teleport.len(),
            damping_per_node.len()
        )));
    }
    let cap = T::lit(DAMPING_CAP);
    if let Some(d) = damping_per_node
        .iter()
        .find(|&&d| !(d >= T::zero() && d <= cap))
    {
        return Err(Error::InvalidParameter(format!(
            "damping {d} outside [0, {DAMPING_CAP}]"
        )));
    }
    let t = teleport.as_slice();

    if damping_per_node.iter().all(|&d| d == T::zero()) {
        return Ok(RankVector {
            ranks: ordinal_ranks(t),
            scores: t.to_vec(),
            iterations: 1,
            residual: T::zero(),
        });
    }

    let mut linked = vec![T::zero(); n];
    let (x, iterations, residual) = iterate(n, opts, |x, out| {
        transition.apply(x, &mut linked);
        for u in 0..n {
            let d = damping_per_node[u];
            out[u] = (T::one() - d) * t[u] + d * linked[u];
        }
    })?;
    Ok(RankVector::from_scores(x, iterations, residual))
}
