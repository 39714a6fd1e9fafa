use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Per-node attribute vectors scaled column-wise into `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeMatrix<T> {
    rows: usize,
    cols: usize,
    values: Vec<T>,
    names: Vec<String>,
}

/// Min-max scales every column of `raw` (row-major, one row per node).
///
/// A constant column maps to all `0.5`. Re-applying the transform to its own
/// output is the identity.
pub fn standardize_attributes<T: Scalar>(
    raw: &[Vec<T>],
    names: Vec<String>,
) -> Result<AttributeMatrix<T>> {
    let rows = raw.len();
    let cols = names.len();
    if rows == 0 {
        return Err(Error::DimensionMismatch(
            "attribute matrix has no rows".into(),
        ));
    }
    if cols == 0 {
        return Err(Error::DimensionMismatch(
            "attribute matrix has no columns".into(),
        ));
    }
    for (r, row) in raw.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!(
                "attribute row {r} has {} values, expected {cols}",
                row.len()
            )));
        }
        if let Some(c) = row.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite { row: r, col: c });
        }
    }

    let half = T::lit(0.5);
    let mut values = vec![T::zero(); rows * cols];
    for c in 0..cols {
        let (lo, hi) = raw
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), row| {
                (lo.min(row[c]), hi.max(row[c]))
            });
        let span = hi - lo;
        for (r, row) in raw.iter().enumerate() {
            values[r * cols + c] = if span > T::zero() {
                (row[c] - lo) / span
            } else {
                half
            };
        }
    }
    Ok(AttributeMatrix {
        rows,
        cols,
        values,
        names,
    })
}

impl<T: Scalar> AttributeMatrix<T> {
    /// Wraps values that are already scaled into `[0, 1]`.
    pub fn from_standardized(rows: &[Vec<T>], names: Vec<String>) -> Result<Self> {
        let cols = names.len();
        if rows.is_empty() || cols == 0 {
            return Err(Error::DimensionMismatch("attribute matrix is empty".into()));
        }
        let mut values = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "attribute row {r} has {} values, expected {cols}",
                    row.len()
                )));
            }
            for (c, &x) in row.iter().enumerate() {
                if !x.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
                if x < T::zero() || x > T::one() {
                    return Err(Error::InvalidParameter(format!(
                        "standardized attribute at row {r}, column {c} is {x}, outside [0, 1]"
                    )));
                }
                values.push(x);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            values,
            names,
        })
    }

    /// Single constant attribute: every node gets the same teleport share.
    pub fn uniform(rows: usize) -> Self {
        Self {
            rows,
            cols: 1,
            values: vec![T::lit(0.5); rows],
            names: vec!["uniform".to_string()],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.values[r * self.cols..(r + 1) * self.cols]
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.values[r * self.cols + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Reorders rows so that row `i` of the result is row `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let values = order
            .iter()
            .flat_map(|&r| self.row(r).iter().copied())
            .collect();
        Self {
            rows: order.len(),
            cols: self.cols,
            values,
            names: self.names.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(raw: &[f64]) -> Vec<f64> {
        let rows: Vec<Vec<f64>> = raw.iter().map(|&x| vec![x]).collect();
        let m = standardize_attributes(&rows, vec!["x".into()]).unwrap();
        (0..m.rows()).map(|r| m.get(r, 0)).collect()
    }

    #[test]
    fn min_max_endpoints() {
        assert_eq!(column(&[0.0, 5.0, 10.0]), vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn constant_column_is_half() {
        assert_eq!(column(&[7.0, 7.0, 7.0]), vec![0.5, 0.5, 0.5]);
    }

    #[test]
    fn uneven_column() {
        let c = column(&[1.0, 2.0, 4.0]);
        assert_eq!(c[0], 0.0);
        assert!((c[1] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(c[2], 1.0);
    }

    #[test]
    fn non_finite_reports_position() {
        let raw = vec![vec![1.0, 2.0], vec![3.0, f64::NAN]];
        let err = standardize_attributes(&raw, vec!["a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 1, col: 1 }));
        let raw = vec![vec![f64::INFINITY, 2.0]];
        let err = standardize_attributes(&raw, vec!["a".into(), "b".into()]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 0, col: 0 }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let raw = vec![vec![1.0, 2.0], vec![3.0]];
        assert!(standardize_attributes(&raw, vec!["a".into(), "b".into()]).is_err());
    }
}
