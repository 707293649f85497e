//! Square matrices over any `Ring`, including polynomial rings.

use crate::{MultiPoly, PolyError, PolyRing, VarId};
use exact_arith::{Field, Ring};
use std::fmt;

#[derive(Clone, PartialEq)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    entries: Vec<R::Elem>,
}

pub type MatrixPoly<R> = Matrix<PolyRing<R>>;

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.n, self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.ring.format(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<R: Ring> Matrix<R> {
    pub fn from_fn(ring: R, n: usize, f: impl Fn(usize, usize) -> R::Elem) -> Self {
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Matrix { ring, n, entries }
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self, PolyError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(PolyError::SizeMismatch);
        }
        Ok(Matrix {
            ring,
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zero(ring: R, n: usize) -> Self {
        let z = ring.zero();
        Self::from_fn(ring, n, |_, _| z.clone())
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Self::diagonal(ring.clone(), &vec![ring.one(); n])
    }

    pub fn diagonal(ring: R, d: &[R::Elem]) -> Self {
        let z = ring.zero();
        Self::from_fn(
            ring,
            d.len(),
            |i, j| if i == j { d[i].clone() } else { z.clone() },
        )
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: R::Elem) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Matrix<S> {
        Matrix {
            ring,
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn same_shape(&self, other: &Self) -> Result<(), PolyError> {
        if self.n != other.n {
            return Err(PolyError::SizeMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let r = &self.ring;
        Ok(Self::from_fn(r.clone(), self.n, |i, j| {
            r.add(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let r = &self.ring;
        Ok(Self::from_fn(r.clone(), self.n, |i, j| {
            r.sub(self.get(i, j), other.get(i, j))
        }))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.same_shape(other)?;
        let r = &self.ring;
        let n = self.n;
        Ok(Self::from_fn(r.clone(), n, |i, j| {
            let mut acc = r.zero();
            for k in 0..n {
                acc = r.add(&acc, &r.mul(self.get(i, k), other.get(k, j)));
            }
            acc
        }))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(self.ring.clone(), |x| self.ring.mul(x, c))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ring.clone(), self.n, |i, j| self.get(j, i).clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.ring.clone(), self.n);
        for _ in 0..e {
            acc = acc.try_mul(self).unwrap();
        }
        acc
    }

    pub fn trace(&self) -> R::Elem {
        let mut acc = self.ring.zero();
        for i in 0..self.n {
            acc = self.ring.add(&acc, self.get(i, i));
        }
        acc
    }

    /// Submatrix on the given rows and columns.
    pub fn minor_matrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        debug_assert_eq!(rows.len(), cols.len());
        Self::from_fn(self.ring.clone(), rows.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Cofactor expansion up to size 4, Berkowitz above.
    pub fn det(&self) -> Result<R::Elem, PolyError> {
        match self.n {
            0 => Ok(self.ring.one()),
            n if n <= 4 => Ok(self.det_cofactor()),
            n => {
                let v = self.berkowitz();
                Ok(if n % 2 == 0 {
                    v[n].clone()
                } else {
                    self.ring.neg(&v[n])
                })
            }
        }
    }

    /// Coefficients of det(t*1 - M) in descending powers of t, division free.
    fn berkowitz(&self) -> Vec<R::Elem> {
        let r = &self.ring;
        let mut v = vec![r.one()];
        for k in 1..=self.n {
            // Border the leading (k-1)-block by row and column k-1.
            let last = k - 1;
            let mut t = vec![r.one(), r.neg(self.get(last, last))];
            // c_i = A^i C, t_{i+2} = -R A^i C
            let mut c: Vec<R::Elem> = (0..last).map(|i| self.get(i, last).clone()).collect();
            for i in 0..last {
                let rc = (0..last).fold(r.zero(), |acc, j| {
                    r.add(&acc, &r.mul(self.get(last, j), &c[j]))
                });
                t.push(r.neg(&rc));
                if i + 1 < last {
                    c = (0..last)
                        .map(|a| {
                            (0..last).fold(r.zero(), |acc, b| {
                                r.add(&acc, &r.mul(self.get(a, b), &c[b]))
                            })
                        })
                        .collect();
                }
            }
            v = (0..=k)
                .map(|i| {
                    (0..=i.min(k - 1))
                        .fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&t[i - j], &v[j])))
                })
                .collect();
        }
        v
    }

    fn det_cofactor(&self) -> R::Elem {
        let r = &self.ring;
        match self.n {
            0 => r.one(),
            1 => self.get(0, 0).clone(),
            2 => r.sub(
                &r.mul(self.get(0, 0), self.get(1, 1)),
                &r.mul(self.get(0, 1), self.get(1, 0)),
            ),
            n => {
                let rows: Vec<usize> = (1..n).collect();
                let mut acc = r.zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if r.is_zero(a) {
                        continue;
                    }
                    let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                    let t = r.mul(a, &self.minor_matrix(&rows, &cols).det_cofactor());
                    acc = if j % 2 == 0 {
                        r.add(&acc, &t)
                    } else {
                        r.sub(&acc, &t)
                    };
                }
                acc
            }
        }
    }

    #[cfg(test)]
    fn det_leibniz(&self) -> R::Elem {
        let r = &self.ring;
        let mut acc = r.zero();
        for (perm, sign) in permutations(self.n) {
            let mut t = r.one();
            for (i, &j) in perm.iter().enumerate() {
                t = r.mul(&t, self.get(i, j));
                if r.is_zero(&t) {
                    break;
                }
            }
            acc = if sign {
                r.add(&acc, &t)
            } else {
                r.sub(&acc, &t)
            };
        }
        acc
    }

    /// Transposed cofactor matrix, M * adj(M) = det(M) * 1.
    pub fn adjugate(&self) -> Result<Self, PolyError> {
        let n = self.n;
        if n == 1 {
            return Ok(Self::identity(self.ring.clone(), 1));
        }
        let r = &self.ring;
        let mut out = Self::zero(r.clone(), n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&k| k != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&k| k != i).collect();
                let m = self.minor_matrix(&rows, &cols).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { m } else { r.neg(&m) });
            }
        }
        Ok(out)
    }

    /// (c_0, ..., c_n) with det(t*1 - M) = sum_j (-1)^j c_j t^{n-j}; c_j is
    /// the sum of the principal j x j minors.
    pub fn charpoly_coeffs(&self) -> Result<Vec<R::Elem>, PolyError> {
        let r = &self.ring;
        Ok(self
            .berkowitz()
            .into_iter()
            .enumerate()
            .map(|(j, c)| if j % 2 == 0 { c } else { r.neg(&c) })
            .collect())
    }

    /// q-th exterior power on the lexicographically ordered basis
    /// e_{i1} ^ ... ^ e_{iq}, i1 < ... < iq.
    pub fn wedge_power(&self, q: usize) -> Result<Self, PolyError> {
        if q == 0 || q >= self.n.max(1) {
            return Err(PolyError::BadQ { q, g: self.n });
        }
        let basis = subsets(self.n, q);
        let m = basis.len();
        let mut out = Self::zero(self.ring.clone(), m);
        for (a, rows) in basis.iter().enumerate() {
            for (b, cols) in basis.iter().enumerate() {
                out.set(a, b, self.minor_matrix(rows, cols).det()?);
            }
        }
        Ok(out)
    }
}

impl<F: Field> Matrix<F> {
    /// Gauss-Jordan inverse, `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.ring;
        let n = self.n;
        let mut a = self.clone();
        let mut b = Self::identity(f.clone(), n);
        for col in 0..n {
            let piv = (col..n).find(|&i| !f.is_zero(a.get(i, col)))?;
            for j in 0..n {
                a.entries.swap(piv * n + j, col * n + j);
                b.entries.swap(piv * n + j, col * n + j);
            }
            let inv = f.inv(a.get(col, col))?;
            for j in 0..n {
                a.set(col, j, f.mul(&inv, a.get(col, j)));
                b.set(col, j, f.mul(&inv, b.get(col, j)));
            }
            for i in (0..n).filter(|&i| i != col) {
                let c = a.get(i, col).clone();
                if f.is_zero(&c) {
                    continue;
                }
                for j in 0..n {
                    a.set(i, j, f.sub(a.get(i, j), &f.mul(&c, a.get(col, j))));
                    b.set(i, j, f.sub(b.get(i, j), &f.mul(&c, b.get(col, j))));
                }
            }
        }
        Some(b)
    }
}

impl<R: Ring> MatrixPoly<R> {
    /// Generic matrix with entries the variables `var(i, j)` (0-based).
    pub fn generic(base: R, n: usize, var: impl Fn(usize, usize) -> VarId) -> Self {
        let ring = PolyRing::new(base);
        let r2 = ring.clone();
        Self::from_fn(ring, n, |i, j| r2.var(var(i, j)))
    }

    pub fn substitute_entries(
        &self,
        sigma: &std::collections::BTreeMap<VarId, MultiPoly<R>>,
        trunc: Option<u32>,
    ) -> Result<Self, PolyError> {
        let entries = self
            .entries()
            .iter()
            .map(|e| e.substitute(sigma, trunc))
            .collect::<Result<Vec<_>, _>>()?;
        let mut ring = self.ring().clone();
        if let Some(d) = trunc {
            ring.trunc = Some(ring.trunc.map_or(d, |t| t.min(d)));
        }
        Ok(Matrix {
            ring,
            n: self.size(),
            entries,
        })
    }
}

/// All k-subsets of {0..n} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All permutations of 0..n with their sign (true = even).
pub fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, sign: &mut bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if k <= 1 {
            out.push((p.clone(), *sign));
            return;
        }
        for i in 0..k - 1 {
            heap(k - 1, p, sign, out);
            if k.is_multiple_of(2) {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
            *sign = !*sign;
        }
        heap(k - 1, p, sign, out);
    }
    let mut sign = true;
    heap(n, &mut p, &mut sign, &mut out);
    out
}

/// g x g symmetric matrix of polynomials, entries stored for i <= j.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrixPoly<R: Ring> {
    g: usize,
    upper: Vec<MultiPoly<R>>,
}

impl<R: Ring> SymMatrixPoly<R> {
    fn idx(g: usize, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        i * g - i * (i + 1) / 2 + j
    }

    pub fn from_fn(g: usize, f: impl Fn(usize, usize) -> MultiPoly<R>) -> Self {
        let mut upper = Vec::with_capacity(g * (g + 1) / 2);
        for i in 0..g {
            for j in i..g {
                upper.push(f(i, j));
            }
        }
        SymMatrixPoly { g, upper }
    }

    /// The matrix T^{(level)} of indeterminates.
    pub fn generic_t(base: R, g: usize, level: u16) -> Self {
        Self::from_fn(g, |i, j| {
            MultiPoly::var(base.clone(), VarId::t(level, i as u16 + 1, j as u16 + 1))
        })
    }

    /// The matrix Q^{(level)} of indeterminates.
    pub fn generic_q(base: R, g: usize, level: u16) -> Self {
        Self::from_fn(g, |i, j| {
            MultiPoly::var(base.clone(), VarId::q(level, i as u16 + 1, j as u16 + 1))
        })
    }

    pub fn size(&self) -> usize {
        self.g
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<R> {
        &self.upper[Self::idx(self.g, i, j)]
    }

    /// Upper-triangle entries in lexicographic (i, j) order.
    pub fn upper(&self) -> &[MultiPoly<R>] {
        &self.upper
    }

    pub fn map(&self, f: impl Fn(&MultiPoly<R>) -> MultiPoly<R>) -> Self {
        SymMatrixPoly {
            g: self.g,
            upper: self.upper.iter().map(f).collect(),
        }
    }

    pub fn to_matrix(&self) -> MatrixPoly<R> {
        let base = self.upper.first().map(|p| p.ring().clone());
        let base = base.expect("matrix has at least one entry");
        Matrix::from_fn(PolyRing::new(base), self.g, |i, j| self.get(i, j).clone())
    }

    /// Reads a matrix as symmetric; fails if it is not.
    pub fn from_matrix(m: &MatrixPoly<R>) -> Result<Self, PolyError> {
        let g = m.size();
        for i in 0..g {
            for j in 0..i {
                if m.get(i, j) != m.get(j, i) {
                    return Err(PolyError::NotSymmetric);
                }
            }
        }
        Ok(Self::from_fn(g, |i, j| m.get(i, j).clone()))
    }

    pub fn det(&self) -> Result<MultiPoly<R>, PolyError> {
        self.to_matrix().det()
    }
}
