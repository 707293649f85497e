use crate::endo::{generic_endos, pi_n, trace_word, WordInvariant};
use crate::{ConjError, RANK_PRIME};
use exact_arith::Ring;
use exact_arith::{PrimeField, Rationals};
use exact_linalg::ExactMatrix;
use multipoly::{Matrix, MultiPoly, SymMatrixPoly};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;

/// Words of length 1..=max_len over n letters, one per rotation class.
pub fn words(n: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        for w in &layer {
            let least = (0..w.len())
                .map(|k| [&w[k..], &w[..k]].concat())
                .min()
                .expect("non-empty");
            if &least == w {
                out.push(w.clone());
            }
        }
    }
    out
}

/// c_j of every word up to `max_len` in generic X_0, ..., X_{n-1}.
pub fn trace_words(
    g: usize,
    n: usize,
    max_len: usize,
) -> Result<Vec<MultiPoly<Rationals>>, ConjError> {
    let x = generic_endos(g, n);
    let mut out = Vec::new();
    for w in words(n, max_len) {
        for j in 1..=g {
            out.push(trace_word(&WordInvariant::new(j, w.clone()), &x)?);
        }
    }
    Ok(out)
}

/// Trace words pulled back along π_n to n+1 generic symmetric matrices Q^{(0..=n)}.
pub fn pulled_back_words(
    g: usize,
    n: usize,
    max_len: usize,
) -> Result<Vec<MultiPoly<Rationals>>, ConjError> {
    let qs: Vec<_> = (0..=n)
        .map(|l| SymMatrixPoly::generic_q(Rationals, g, l as u16).to_matrix())
        .collect();
    let x = pi_n(&qs)?;
    let mut out = Vec::new();
    for w in words(n, max_len) {
        for j in 1..=g {
            out.push(trace_word(&WordInvariant::new(j, w.clone()), &x)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankKind {
    /// Conjugation invariants of n matrices: (n − 1) g² + 1.
    Conjugation,
    /// Invariants pulled back from n + 1 symmetric matrices: (n − 1) g(g+1)/2 + g.
    PulledBack,
}

/// A randomized lower bound for a transcendence degree together with the
/// expected closed form; `rank == expected` certifies equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankClaim {
    pub kind: RankKind,
    pub g: usize,
    pub n: usize,
    pub max_len: usize,
    pub rank: usize,
    pub expected: usize,
    pub field: u64,
    pub points: usize,
}

impl RankClaim {
    pub fn expected(kind: RankKind, g: usize, n: usize) -> usize {
        match kind {
            RankKind::Conjugation => (n - 1) * g * g + 1,
            RankKind::PulledBack => (n - 1) * g * (g + 1) / 2 + g,
        }
    }

    /// Jacobian rank of every c_j of every word up to `max_len`, maximized
    /// over `points` random points of F_p, p = `RANK_PRIME`. Words are
    /// evaluated on first-order jets, so no symbolic expansion happens.
    pub fn compute(
        kind: RankKind,
        g: usize,
        n: usize,
        max_len: usize,
        points: usize,
        rng: &mut impl Rng,
    ) -> Result<Self, ConjError> {
        if n < 2 || g == 0 {
            return Err(ConjError::SizeMismatch);
        }
        let field = PrimeField::new(RANK_PRIME).map_err(|_| ConjError::BadField(RANK_PRIME))?;
        let mut rank = 0;
        for _ in 0..points {
            let rows = match kind {
                RankKind::Conjugation => {
                    let jets = JetRing::new(field, n * g * g);
                    let x: Vec<Matrix<JetRing>> = (0..n)
                        .map(|l| {
                            let vals: Vec<u64> =
                                (0..g * g).map(|_| rng.gen_range(0..RANK_PRIME)).collect();
                            Matrix::from_fn(jets.clone(), g, |i, j| {
                                jets.variable(l * g * g + i * g + j, vals[i * g + j])
                            })
                        })
                        .collect();
                    word_gradients(&x, g, max_len)?
                }
                RankKind::PulledBack => {
                    let per = g * (g + 1) / 2;
                    let jets = JetRing::new(field, (n + 1) * per);
                    let qs: Vec<Matrix<JetRing>> = (0..=n)
                        .map(|l| {
                            let vals: Vec<u64> =
                                (0..per).map(|_| rng.gen_range(0..RANK_PRIME)).collect();
                            Matrix::from_fn(jets.clone(), g, |i, j| {
                                let k = sym_index(g, i.min(j), i.max(j));
                                jets.variable(l * per + k, vals[k])
                            })
                        })
                        .collect();
                    word_gradients(&pi_n(&qs)?, g, max_len)?
                }
            };
            let cols = rows.first().map_or(0, |r| r.len());
            rank = rank.max(ExactMatrix::from_dense(field, cols, rows)?.rank());
        }
        Ok(RankClaim {
            kind,
            g,
            n,
            max_len,
            rank,
            expected: Self::expected(kind, g, n),
            field: RANK_PRIME,
            points,
        })
    }

    pub fn holds(&self) -> bool {
        self.rank == self.expected
    }
}

/// Position of (i, j), i <= j, in the row-major upper triangle.
fn sym_index(g: usize, i: usize, j: usize) -> usize {
    i * g - i * (i + 1) / 2 + j
}

fn word_gradients(
    x: &[Matrix<JetRing>],
    g: usize,
    max_len: usize,
) -> Result<Vec<Vec<u64>>, ConjError> {
    let mut rows = Vec::new();
    for w in words(x.len(), max_len) {
        for j in 1..=g {
            let v = trace_word(&WordInvariant::new(j, w.clone()), x)?;
            rows.push(v[1..].to_vec());
        }
    }
    Ok(rows)
}

/// F_p[ε_1, ..., ε_n]/(ε_i ε_j): elements are (value, gradient).
#[derive(Debug, Clone, PartialEq)]
pub struct JetRing {
    field: PrimeField,
    n: usize,
}

impl JetRing {
    pub fn new(field: PrimeField, n: usize) -> Self {
        JetRing { field, n }
    }

    /// The coordinate function x_k at value `v`.
    pub fn variable(&self, k: usize, v: u64) -> Vec<u64> {
        let mut e = vec![0; self.n + 1];
        e[0] = v;
        e[k + 1] = 1;
        e
    }

    fn constant(&self, v: u64) -> Vec<u64> {
        let mut e = vec![0; self.n + 1];
        e[0] = v;
        e
    }
}

impl Ring for JetRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        self.constant(0)
    }

    fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        let p = BigInt::from(self.field.order());
        let r = ((n % &p) + &p) % &p;
        self.constant(r.to_u64().expect("reduced below p"))
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len());
        out.push(f.mul(&a[0], &b[0]));
        for k in 1..a.len() {
            out.push(f.add(&f.mul(&a[0], &b[k]), &f.mul(&b[0], &a[k])));
        }
        out
    }

    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn format(&self, a: &Vec<u64>) -> String {
        format!("{a:?}")
    }
}
