use crate::ConjError;
use exact_arith::Rationals;
use multipoly::{MatrixPoly, MultiPoly, SymMatrixPoly};

fn check_cycle(levels: &[u16]) -> Result<(), ConjError> {
    if levels.is_empty() || !levels.len().is_multiple_of(2) {
        return Err(ConjError::BadCycle(format!(
            "length {} is not positive and even",
            levels.len()
        )));
    }
    let n = levels.len();
    for k in 0..n {
        if levels[k] == levels[(k + 1) % n] {
            return Err(ConjError::BadCycle(format!(
                "adjacent levels {} and {} coincide",
                k,
                (k + 1) % n
            )));
        }
    }
    Ok(())
}

/// Y = Q^{(m_1)} (Q^{(m_2)})* Q^{(m_3)} (Q^{(m_4)})* ⋯ with m_k the larger of
/// the cyclically adjacent levels a_k, a_{k+1}, in generic symmetric Q^{(m)}.
pub fn cyclic_matrix_product(g: usize, levels: &[u16]) -> Result<MatrixPoly<Rationals>, ConjError> {
    check_cycle(levels)?;
    let n = levels.len();
    let mut out: Option<MatrixPoly<Rationals>> = None;
    for k in 0..n {
        let m = levels[k].max(levels[(k + 1) % n]);
        let q = SymMatrixPoly::generic_q(Rationals, g, m).to_matrix();
        let factor = if k % 2 == 0 { q } else { q.adjugate()? };
        out = Some(match out {
            None => factor,
            Some(acc) => acc.try_mul(&factor)?,
        });
    }
    Ok(out.expect("cycle is non-empty"))
}

/// y_{j; a_1, ..., a_{2s}} = c_j(Y_{a_1, ..., a_{2s}}).
pub fn y_invariant(g: usize, j: usize, levels: &[u16]) -> Result<MultiPoly<Rationals>, ConjError> {
    if j == 0 || j > g {
        return Err(ConjError::BadWord(format!("j = {j} outside 1..={g}")));
    }
    Ok(cyclic_matrix_product(g, levels)?
        .charpoly_coeffs()?
        .swap_remove(j))
}
