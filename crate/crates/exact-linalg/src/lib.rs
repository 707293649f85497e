//! Exact row reduction over the rationals and prime fields.
//!
//! Rows are stored sparsely; elimination inserts rows one at a time into a
//! normalized echelon basis, which keeps fill-in low on the very sparse
//! derivation matrices this is used for.

use exact_arith::Field;
use std::collections::BTreeMap;

mod echelon;
mod jacobian;

pub use echelon::RowEchelon;
pub use jacobian::{jacobian_rank, jacobian_rank_at};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("column index {col} out of range for {cols} columns")]
    ColumnOutOfRange { col: usize, cols: usize },
    #[error("a coefficient has a denominator divisible by the field characteristic")]
    BadReduction,
    #[error("evaluation point is missing a coordinate")]
    MissingCoordinate,
}

/// Sparse row: (column, nonzero entry), strictly increasing columns.
pub type SparseRow<E> = Vec<(usize, E)>;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    cols: usize,
    rows: Vec<SparseRow<F::Elem>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let rows = (0..n).map(|i| vec![(i, one.clone())]).collect();
        ExactMatrix {
            field,
            cols: n,
            rows,
        }
    }

    pub fn from_dense(
        field: F,
        cols: usize,
        dense: Vec<Vec<F::Elem>>,
    ) -> Result<Self, LinalgError> {
        let mut m = ExactMatrix {
            field,
            cols,
            rows: Vec::with_capacity(dense.len()),
        };
        for row in dense {
            if row.len() != cols {
                return Err(LinalgError::ShapeMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            let sparse = row
                .into_iter()
                .enumerate()
                .filter(|(_, e)| !m.field.is_zero(e))
                .collect();
            m.rows.push(sparse);
        }
        Ok(m)
    }

    /// Rows given as (column, value) lists in any order; duplicates are summed.
    pub fn from_sparse(
        field: F,
        cols: usize,
        rows: Vec<Vec<(usize, F::Elem)>>,
    ) -> Result<Self, LinalgError> {
        let mut m = ExactMatrix {
            field,
            cols,
            rows: Vec::with_capacity(rows.len()),
        };
        for row in rows {
            let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
            for (c, e) in row {
                if c >= cols {
                    return Err(LinalgError::ColumnOutOfRange { col: c, cols });
                }
                let cur = acc.remove(&c).unwrap_or_else(|| m.field.zero());
                let s = m.field.add(&cur, &e);
                if !m.field.is_zero(&s) {
                    acc.insert(c, s);
                }
            }
            m.rows.push(acc.into_iter().collect());
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow<F::Elem> {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        (0..self.nrows())
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.cols];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, e) in row {
                rows[*j].push((i, e.clone()));
            }
        }
        ExactMatrix {
            field: self.field.clone(),
            cols: self.nrows(),
            rows,
        }
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch {
                expected: self.cols,
                got: v.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| {
                row.iter().fold(self.field.zero(), |acc, (j, e)| {
                    self.field.add(&acc, &self.field.mul(e, &v[*j]))
                })
            })
            .collect())
    }

    pub fn echelon(&self) -> RowEchelon<F> {
        let mut ech = RowEchelon::new(self.field.clone(), self.cols);
        for row in &self.rows {
            ech.insert(row.clone());
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of {v : A v = 0}, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        self.echelon().kernel_basis()
    }

    /// Some x with A x = b, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>, LinalgError> {
        if b.len() != self.nrows() {
            return Err(LinalgError::ShapeMismatch {
                expected: self.nrows(),
                got: b.len(),
            });
        }
        // Augment with b as the last column; a pivot there means no solution.
        let mut ech = RowEchelon::new(self.field.clone(), self.cols + 1);
        for (row, bi) in self.rows.iter().zip(b) {
            let mut r = row.clone();
            if !self.field.is_zero(bi) {
                r.push((self.cols, bi.clone()));
            }
            ech.insert(r);
        }
        if ech.pivot_columns().contains(&self.cols) {
            return Ok(None);
        }
        ech.reduce_fully();
        let mut x = vec![self.field.zero(); self.cols];
        for (pc, row) in ech.pivot_rows() {
            if let Some((_, e)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[pc] = e.clone();
            }
        }
        Ok(Some(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_arith::{PrimeField, Rationals, Ring};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        Rationals.from_i64(n)
    }

    #[test]
    fn identity_and_zero() {
        for n in 0..5 {
            let id = ExactMatrix::identity(Rationals, n);
            assert_eq!(id.rank(), n);
            assert!(id.kernel_basis().is_empty());
        }
        let z = ExactMatrix::zero(Rationals, 2, 3);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.kernel_basis().len(), 3);
    }

    #[test]
    fn small_rank_and_kernel() {
        let a = ExactMatrix::from_dense(
            Rationals,
            3,
            vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]],
        )
        .unwrap();
        assert_eq!(a.rank(), 1);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(|e| Rationals.is_zero(e)));
        }
        let f2 = PrimeField::new(2).unwrap();
        let b = ExactMatrix::from_dense(f2, 2, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn solve_basic() {
        let id = ExactMatrix::identity(Rationals, 3);
        let b = vec![q(4), q(-1), q(7)];
        assert_eq!(id.solve(&b).unwrap(), Some(b.clone()));
        let z = ExactMatrix::zero(Rationals, 2, 2);
        assert_eq!(z.solve(&[q(0), q(1)]).unwrap(), None);
        assert_eq!(z.solve(&[q(0), q(0)]).unwrap(), Some(vec![q(0), q(0)]));
    }

    #[test]
    fn sparse_duplicates_are_summed() {
        let m =
            ExactMatrix::from_sparse(Rationals, 2, vec![vec![(1, q(2)), (0, q(1)), (1, q(-2))]])
                .unwrap();
        assert_eq!(m.row(0), &vec![(0, q(1))]);
        assert!(ExactMatrix::from_sparse(Rationals, 2, vec![vec![(2, q(1))]]).is_err());
    }
}
