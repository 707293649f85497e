use crate::SparseRow;
use exact_arith::Field;
use std::collections::BTreeMap;

/// Incrementally built echelon basis of a row space.
///
/// Every stored row is monic at its pivot, and no stored row has a nonzero
/// entry in a pivot column smaller than its own that belongs to another row.
#[derive(Debug, Clone)]
pub struct RowEchelon<F: Field> {
    field: F,
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<F::Elem>>,
}

impl<F: Field> RowEchelon<F> {
    pub fn new(field: F, cols: usize) -> Self {
        RowEchelon {
            field,
            cols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn pivot_rows(&self) -> impl Iterator<Item = (usize, &SparseRow<F::Elem>)> {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }

    /// `a - s * b` on sparse rows.
    fn axpy(
        &self,
        a: &SparseRow<F::Elem>,
        s: &F::Elem,
        b: &SparseRow<F::Elem>,
    ) -> SparseRow<F::Elem> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ca = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
            let cb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
            if ca < cb {
                out.push(a[i].clone());
                i += 1;
            } else if cb < ca {
                out.push((cb, f.neg(&f.mul(s, &b[j].1))));
                j += 1;
            } else {
                let e = f.sub(&a[i].1, &f.mul(s, &b[j].1));
                if !f.is_zero(&e) {
                    out.push((ca, e));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }

    /// Reduce `row` against the stored pivots (leading part only).
    pub fn reduce(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let mut k = 0;
        while k < row.len() {
            let c = row[k].0;
            if let Some(p) = self.pivots.get(&c) {
                let s = row[k].1.clone();
                row = self.axpy(&row, &s, p);
                // Entries before position k are untouched since p starts at c.
            } else {
                k += 1;
            }
        }
        row
    }

    /// Insert a row; returns true if it was independent of the current span.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let row = self.reduce(row);
        let Some((c, lead)) = row.first().cloned() else {
            return false;
        };
        let inv = self
            .field
            .inv(&lead)
            .expect("nonzero field element is invertible");
        let row = row
            .into_iter()
            .map(|(j, e)| (j, self.field.mul(&e, &inv)))
            .collect();
        self.pivots.insert(c, row);
        true
    }

    pub fn insert_dense(&mut self, row: &[F::Elem]) -> bool {
        let sparse = row
            .iter()
            .enumerate()
            .filter(|(_, e)| !self.field.is_zero(e))
            .map(|(j, e)| (j, e.clone()))
            .collect();
        self.insert(sparse)
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce(row).is_empty()
    }

    /// Bring the basis to reduced row echelon form.
    pub fn reduce_fully(&mut self) {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &pc in &cols {
            let prow = self.pivots[&pc].clone();
            let others: Vec<usize> = self.pivots.range(..pc).map(|(c, _)| *c).collect();
            for oc in others {
                let orow = &self.pivots[&oc];
                if let Ok(k) = orow.binary_search_by_key(&pc, |x| x.0) {
                    let s = orow[k].1.clone();
                    let new = self.axpy(orow, &s, &prow);
                    self.pivots.insert(oc, new);
                }
            }
        }
    }

    pub fn kernel_basis(mut self) -> Vec<Vec<F::Elem>> {
        self.reduce_fully();
        let f = &self.field;
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (pc, row) in &self.pivots {
                if let Ok(k) = row.binary_search_by_key(&free, |x| x.0) {
                    v[*pc] = f.neg(&row[k].1);
                }
            }
            out.push(v);
        }
        out
    }
}
