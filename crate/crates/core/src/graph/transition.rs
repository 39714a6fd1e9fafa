use crate::scalar::Scalar;

/// Column-stochastic transition matrix stored by source column.
///
/// Entry `(u, v)` is the probability of moving from `v` to `u`. Columns with
/// no outgoing weight are dangling and behave as the uniform column `1/N`;
/// they are kept implicit so that sparse products stay `O(E + N)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition<T> {
    n: usize,
    columns: Vec<Vec<(usize, T)>>,
    dangling: Vec<usize>,
}

impl<T: Scalar> Transition<T> {
    /// Standardizes raw non-negative column weights. `columns[v]` lists
    /// `(target, weight)` with distinct targets.
    pub(crate) fn from_weighted_columns(n: usize, columns: Vec<Vec<(usize, T)>>) -> Self {
        debug_assert_eq!(columns.len(), n);
        let mut dangling = Vec::new();
        let columns = columns
            .into_iter()
            .enumerate()
            .map(|(v, col)| {
                let total: T = col.iter().map(|&(_, w)| w).sum();
                if total > T::zero() {
                    col.into_iter()
                        .filter(|&(_, w)| w > T::zero())
                        .map(|(u, w)| (u, w / total))
                        .collect()
                } else {
                    dangling.push(v);
                    Vec::new()
                }
            })
            .collect();
        Self {
            n,
            columns,
            dangling,
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Explicit entries of column `v`; empty for dangling columns.
    pub fn column(&self, v: usize) -> &[(usize, T)] {
        &self.columns[v]
    }

    pub fn is_dangling(&self, v: usize) -> bool {
        self.columns[v].is_empty()
    }

    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }

    pub fn get(&self, u: usize, v: usize) -> T {
        if self.is_dangling(v) {
            return T::one() / T::from_usize_lossy(self.n);
        }
        self.columns[v]
            .iter()
            .find(|&&(t, _)| t == u)
            .map_or(T::zero(), |&(_, p)| p)
    }

    /// Dense column `v` of length `N`.
    pub fn dense_column(&self, v: usize) -> Vec<T> {
        (0..self.n).map(|u| self.get(u, v)).collect()
    }

    /// Row-major dense copy, `dense[u][v]`.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let mut dense = vec![vec![T::zero(); self.n]; self.n];
        for v in 0..self.n {
            for (u, row) in dense.iter_mut().enumerate() {
                row[v] = self.get(u, v);
            }
        }
        dense
    }

    /// `out = T · x`.
    pub fn apply(&self, x: &[T], out: &mut [T]) {
        let dangling_mass: T = self.dangling.iter().map(|&v| x[v]).sum();
        let spread = dangling_mass / T::from_usize_lossy(self.n);
        out.iter_mut().for_each(|o| *o = spread);
        for (v, col) in self.columns.iter().enumerate() {
            let xv = x[v];
            if xv == T::zero() {
                continue;
            }
            for &(u, p) in col {
                out[u] = out[u] + p * xv;
            }
        }
    }

    pub fn column_sum(&self, v: usize) -> T {
        if self.is_dangling(v) {
            T::one()
        } else {
            self.columns[v].iter().map(|&(_, p)| p).sum()
        }
    }
}
