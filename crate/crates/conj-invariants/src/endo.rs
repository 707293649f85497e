use crate::ConjError;
use exact_arith::{Field, PrimeField, Rationals, Ring};
use multipoly::{Matrix, MatrixPoly, VarId};

fn common_size<R: Ring>(x: &[Matrix<R>]) -> Result<usize, ConjError> {
    let g = x.first().map_or(0, |m| m.size());
    if x.iter().any(|m| m.size() != g) {
        return Err(ConjError::SizeMismatch);
    }
    Ok(g)
}

/// (Λ, (M_l)) ↦ (Λ M_l Λ⁻¹).
pub fn conj_act<F: Field>(lam: &Matrix<F>, x: &[Matrix<F>]) -> Result<Vec<Matrix<F>>, ConjError> {
    let inv = lam.inverse().ok_or(ConjError::Singular)?;
    x.iter()
        .map(|m| {
            if m.size() != lam.size() {
                return Err(ConjError::SizeMismatch);
            }
            Ok(lam.try_mul(m)?.try_mul(&inv)?)
        })
        .collect()
}

/// Generic matrices X_0, ..., X_{n-1} with entries `VarId::entry(l, i, j)`.
pub fn generic_endos(g: usize, n: usize) -> Vec<MatrixPoly<Rationals>> {
    (0..n)
        .map(|l| {
            MatrixPoly::generic(Rationals, g, |i, j| {
                VarId::entry(l as u16, i as u16 + 1, j as u16 + 1)
            })
        })
        .collect()
}

/// c_j(X_{l_1} ⋯ X_{l_N}).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordInvariant {
    pub j: usize,
    pub word: Vec<usize>,
}

impl WordInvariant {
    pub fn new(j: usize, word: Vec<usize>) -> Self {
        WordInvariant { j, word }
    }
}

pub fn trace_word<R: Ring>(w: &WordInvariant, x: &[Matrix<R>]) -> Result<R::Elem, ConjError> {
    let g = common_size(x)?;
    if w.word.is_empty() {
        return Err(ConjError::BadWord("empty word".into()));
    }
    if w.j == 0 || w.j > g {
        return Err(ConjError::BadWord(format!("j = {} outside 1..={g}", w.j)));
    }
    if let Some(&l) = w.word.iter().find(|&&l| l >= x.len()) {
        return Err(ConjError::BadWord(format!(
            "letter {l} but only {} matrices",
            x.len()
        )));
    }
    let mut prod = x[w.word[0]].clone();
    for &l in &w.word[1..] {
        prod = prod.try_mul(&x[l])?;
    }
    Ok(prod.charpoly_coeffs()?.swap_remove(w.j))
}

/// Φ_q(M0, M1) = det(M0^∧q M1^∧q − M1^∧q M0^∧q).
pub fn phi_q<R: Ring>(m0: &Matrix<R>, m1: &Matrix<R>, q: usize) -> Result<R::Elem, ConjError> {
    let g = common_size(&[m0.clone(), m1.clone()])?;
    if q == 0 || q >= g {
        return Err(ConjError::BadQ { q, g });
    }
    let a = m0.wedge_power(q)?;
    let b = m1.wedge_power(q)?;
    Ok(a.try_mul(&b)?.try_sub(&b.try_mul(&a)?)?.det()?)
}

/// Permutation matrix of the g-cycle (1 ⋯ g), e_i ↦ e_{i+1}.
pub fn cycle_permutation<R: Ring>(ring: R, g: usize) -> Matrix<R> {
    let r2 = ring.clone();
    Matrix::from_fn(ring, g, |i, j| {
        if i == (j + 1) % g {
            r2.one()
        } else {
            r2.zero()
        }
    })
}

/// Diag(ζ^{2^0}, ..., ζ^{2^{g-1}}) for ζ of order N ≥ 2^g, N | q − 1; every
/// wedge power then has distinct eigenvalues.
pub fn root_of_unity_diagonal(f: PrimeField, g: usize) -> Result<Matrix<PrimeField>, ConjError> {
    let q = f.order();
    let order = (1u64 << g..q)
        .find(|n| (q - 1).is_multiple_of(*n))
        .ok_or(ConjError::NoRootOfUnity(q))?;
    let is_order = |z: u64| {
        f.pow(&z, order) == 1
            && (2..=order)
                .filter(|d| order % d == 0 && is_prime(*d))
                .all(|d| f.pow(&z, order / d) != 1)
    };
    let zeta = (2..q)
        .map(|x| f.pow(&x, (q - 1) / order))
        .find(|&z| is_order(z))
        .ok_or(ConjError::NoRootOfUnity(q))?;
    let diag: Vec<u64> = (0..g).map(|i| f.pow(&zeta, 1 << i)).collect();
    Ok(Matrix::diagonal(f, &diag))
}

fn is_prime(n: u64) -> bool {
    exact_arith::is_prime_u64(n)
}

/// A pair with Φ_q ≠ 0: a diagonal matrix whose q-th wedge power has distinct
/// eigenvalues, and the g-cycle permutation matrix. Conjugating the diagonal
/// by the cycle permutes the wedge eigenvalues without fixed points.
pub fn phi_q_witness(
    f: PrimeField,
    g: usize,
) -> Result<(Matrix<PrimeField>, Matrix<PrimeField>), ConjError> {
    Ok((root_of_unity_diagonal(f, g)?, cycle_permutation(f, g)))
}

/// A diagonal matrix with uniformly random nonzero entries.
pub fn random_diagonal(f: PrimeField, g: usize, rng: &mut impl rand::Rng) -> Matrix<PrimeField> {
    let diag: Vec<u64> = (0..g).map(|_| rng.gen_range(1..f.order())).collect();
    Matrix::diagonal(f, &diag)
}

/// π_n(Q_0, ..., Q_n) = (Q_0 Q_1*, ..., Q_{n-1} Q_n*).
pub fn pi_n<R: Ring>(qs: &[Matrix<R>]) -> Result<Vec<Matrix<R>>, ConjError> {
    common_size(qs)?;
    qs.windows(2)
        .map(|w| Ok(w[0].try_mul(&w[1].adjugate()?)?))
        .collect()
}

/// Discriminant of t^g + c_1 t^{g-1} + ⋯ + c_g, normalized so that it equals
/// ∏_{i<j} (r_i − r_j)² over the roots; coeffs = (1, c_1, ..., c_g).
pub fn disc0<R: Ring>(ring: &R, coeffs: &[R::Elem]) -> Result<R::Elem, ConjError> {
    let g = coeffs.len().saturating_sub(1);
    if g == 0 || !ring.is_one(&coeffs[0]) {
        return Err(ConjError::BadWord(
            "disc0 needs a monic polynomial of degree >= 1".into(),
        ));
    }
    if g == 1 {
        return Ok(ring.one());
    }
    // C' coefficients, descending: (g − k) c_k for k < g.
    let deriv: Vec<R::Elem> = (0..g)
        .map(|k| ring.mul(&ring.from_i64((g - k) as i64), &coeffs[k]))
        .collect();
    // Sylvester matrix of C (degree g) and C' (degree g−1), size 2g−1.
    let n = 2 * g - 1;
    let mut syl = Matrix::zero(ring.clone(), n);
    for row in 0..g - 1 {
        for (k, c) in coeffs.iter().enumerate() {
            syl.set(row, row + k, c.clone());
        }
    }
    for row in 0..g {
        for (k, c) in deriv.iter().enumerate() {
            syl.set(g - 1 + row, row + k, c.clone());
        }
    }
    let res = syl.det()?;
    Ok(if (g * (g - 1) / 2) % 2 == 0 {
        res
    } else {
        ring.neg(&res)
    })
}
