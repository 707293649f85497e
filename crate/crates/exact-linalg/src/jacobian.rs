use crate::{ExactMatrix, LinalgError};
use exact_arith::{PrimeField, Rationals};
use multipoly::{MultiPoly, VarId};
use std::collections::BTreeMap;

/// Rank over F_q of the Jacobian of `polys` with respect to `vars` at a point.
///
/// The rank at any point is a lower bound for the generic rank, so a full
/// rank certifies algebraic independence.
pub fn jacobian_rank_at(
    polys: &[MultiPoly<Rationals>],
    vars: &[VarId],
    field: PrimeField,
    point: &BTreeMap<VarId, u64>,
) -> Result<usize, LinalgError> {
    let mut rows = Vec::with_capacity(polys.len());
    for f in polys {
        let fq = f.try_map_coeffs(field, |c| {
            field.from_rational(c).ok_or(LinalgError::BadReduction)
        })?;
        let mut row = Vec::with_capacity(vars.len());
        for &v in vars {
            let d = fq.derivative(v);
            let val = d
                .eval(|w| point.get(&w).copied())
                .map_err(|_| LinalgError::MissingCoordinate)?;
            row.push(val);
        }
        rows.push(row);
    }
    Ok(ExactMatrix::from_dense(field, vars.len(), rows)?.rank())
}

/// Largest Jacobian rank over the given points.
pub fn jacobian_rank(
    polys: &[MultiPoly<Rationals>],
    vars: &[VarId],
    field: PrimeField,
    points: &[BTreeMap<VarId, u64>],
) -> Result<usize, LinalgError> {
    let mut best = 0;
    for pt in points {
        best = best.max(jacobian_rank_at(polys, vars, field, pt)?);
    }
    Ok(best)
}
