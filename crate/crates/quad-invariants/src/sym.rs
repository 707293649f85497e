use crate::QuadError;
use exact_arith::{PrimeField, Rationals, Ring};
use exact_linalg::jacobian_rank;
use multipoly::{Matrix, MultiPoly, PolyRing, VarId};
use rand::Rng;
use std::collections::BTreeMap;

/// (Λ, (M_l)) ↦ (Λ M_l Λᵗ).
pub fn congruence_act<R: Ring>(
    lam: &Matrix<R>,
    x: &[Matrix<R>],
) -> Result<Vec<Matrix<R>>, QuadError> {
    let lt = lam.transpose();
    x.iter()
        .map(|m| {
            if m.size() != lam.size() {
                return Err(QuadError::SizeMismatch);
            }
            Ok(lam.try_mul(m)?.try_mul(&lt)?)
        })
        .collect()
}

/// Substitution T^{(l)} ↦ Λ T^{(l)} Λᵗ on polynomials in the T-variables.
pub fn congruence_substitute(
    f: &MultiPoly<Rationals>,
    lam: &Matrix<Rationals>,
) -> Result<MultiPoly<Rationals>, QuadError> {
    let g = lam.size();
    let ring = PolyRing::new(Rationals);
    let lp = lam.map(ring.clone(), |c| MultiPoly::constant(Rationals, c.clone()));
    let mut images: BTreeMap<u16, Matrix<PolyRing<Rationals>>> = BTreeMap::new();
    for v in f.variables() {
        if v.i as usize > g || v.j as usize > g {
            return Err(QuadError::SizeMismatch);
        }
        if let std::collections::btree_map::Entry::Vacant(e) = images.entry(v.level) {
            let t = multipoly::SymMatrixPoly::generic_t(Rationals, g, v.level).to_matrix();
            e.insert(lp.try_mul(&t)?.try_mul(&lp.transpose())?);
        }
    }
    Ok(f.substitute_with(
        |v| {
            Some(
                images[&v.level]
                    .get(v.i as usize - 1, v.j as usize - 1)
                    .clone(),
            )
        },
        None,
    )?)
}

/// A uniformly random point of F_q^n on the given variables.
pub fn random_point(vars: &[VarId], q: u64, rng: &mut impl Rng) -> BTreeMap<VarId, u64> {
    vars.iter().map(|&v| (v, rng.gen_range(0..q))).collect()
}

/// Generic Jacobian rank over F_q, maximized over `points` random points.
pub fn random_jacobian_rank(
    polys: &[MultiPoly<Rationals>],
    vars: &[VarId],
    q: u64,
    points: usize,
    rng: &mut impl Rng,
) -> Result<usize, QuadError> {
    let field = PrimeField::new(q).map_err(|_| QuadError::BadField(q))?;
    let pts: Vec<_> = (0..points).map(|_| random_point(vars, q, rng)).collect();
    Ok(jacobian_rank(polys, vars, field, &pts)?)
}
