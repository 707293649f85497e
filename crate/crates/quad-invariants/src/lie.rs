use crate::QuadError;
use exact_arith::Rationals;
use exact_linalg::ExactMatrix;
use multipoly::{Monomial, MultiPoly, VarId};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;

/// Default cap on the torus slice size handed to elimination.
pub const DEFAULT_SLICE_CAP: usize = 50_000;

/// T^{(l)}_{ij}, l ≤ r, i ≤ j, ordered by level then lexicographically.
pub fn t_vars(g: usize, r: usize) -> Vec<VarId> {
    let mut out = Vec::new();
    for l in 0..=r {
        for i in 1..=g {
            for j in i..=g {
                out.push(VarId::t(l as u16, i as u16, j as u16));
            }
        }
    }
    out
}

/// Degree g·s, as an integer, for s = s2/2.
pub fn slice_degree(g: usize, s2: u32) -> Result<u32, QuadError> {
    let gs2 = g as u32 * s2;
    if !gs2.is_multiple_of(2) {
        return Err(QuadError::HalfIntegerInvalid { g, s2 });
    }
    Ok(gs2 / 2)
}

/// Monomials of degree g·s in the T^{(l)}_{ij} with Index_m = 2s for every m.
///
/// Index_m counts occurrences of the index m, so T_mm contributes twice.
pub fn torus_slice(g: usize, r: usize, s2: u32) -> Result<Vec<Monomial>, QuadError> {
    let d = slice_degree(g, s2)?;
    let vars = t_vars(g, r);
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    let mut index = vec![0u32; g + 1];
    enumerate(&vars, 0, d, s2, &mut exps, &mut index, &mut out);
    Ok(out)
}

fn enumerate(
    vars: &[VarId],
    k: usize,
    left: u32,
    target: u32,
    exps: &mut [u32],
    index: &mut [u32],
    out: &mut Vec<Monomial>,
) {
    if k == vars.len() {
        if left == 0 && index[1..].iter().all(|&c| c == target) {
            out.push(Monomial::from_factors(
                vars.iter().copied().zip(exps.iter().copied()),
            ));
        }
        return;
    }
    let (i, j) = (vars[k].i as usize, vars[k].j as usize);
    let mut e = 0;
    loop {
        if index[i] > target || index[j] > target {
            break;
        }
        exps[k] = e;
        enumerate(vars, k + 1, left - e, target, exps, index, out);
        if e == left {
            break;
        }
        e += 1;
        index[i] += 1;
        index[j] += 1;
    }
    index[i] -= e;
    index[j] -= e;
    exps[k] = 0;
}

/// Image of T_{ij} (one level) under the derivation induced by
/// T ↦ E_ab T + T E_abᵗ: δ_{ia} T_{bj} + δ_{ja} T_{ib}.
fn derive_var(v: VarId, a: u16, b: u16) -> Vec<(VarId, i64)> {
    let mut out = Vec::new();
    if v.i == a {
        out.push((VarId::t(v.level, b, v.j), 1));
    }
    if v.j == a {
        out.push((VarId::t(v.level, v.i, b), 1));
    }
    out
}

/// Apply the E_ab derivation to a monomial.
pub fn derive_monomial(m: &Monomial, a: u16, b: u16) -> Vec<(Monomial, i64)> {
    let mut out: HashMap<Monomial, i64> = HashMap::new();
    for &(v, e) in m.factors() {
        let rest = Monomial::from_factors(
            m.factors()
                .iter()
                .map(|&(w, f)| (w, if w == v { f - 1 } else { f })),
        );
        for (w, c) in derive_var(v, a, b) {
            *out.entry(rest.mul(&Monomial::var(w))).or_insert(0) += c * e as i64;
        }
    }
    out.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Apply the E_ab derivation to a polynomial.
pub fn derive_poly(f: &MultiPoly<Rationals>, a: u16, b: u16) -> MultiPoly<Rationals> {
    let mut out = MultiPoly::zero(Rationals);
    for (m, c) in f.terms() {
        for (m2, k) in derive_monomial(m, a, b) {
            out.add_term(m2, c * BigRational::from_integer(k.into()));
        }
    }
    out
}

/// Annihilated by every off-diagonal E_ab (these generate sl_g).
pub fn is_lie_invariant(f: &MultiPoly<Rationals>, g: usize) -> bool {
    (1..=g as u16).all(|a| {
        (1..=g as u16)
            .filter(|&b| b != a)
            .all(|b| derive_poly(f, a, b).is_zero())
    })
}

#[derive(Debug, Clone)]
pub struct InvariantBasis {
    pub g: usize,
    pub r: usize,
    /// Twice s.
    pub s2: u32,
    pub slice_size: usize,
    pub basis: Vec<MultiPoly<Rationals>>,
}

impl InvariantBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of the degree-g·s SL_g invariants of (r+1)-tuples of symmetric
/// g×g matrices, in characteristic 0: the joint kernel of the E_ab
/// derivations on the torus slice.
pub fn invariant_dimension(
    g: usize,
    r: usize,
    s2: u32,
    cap: usize,
) -> Result<InvariantBasis, QuadError> {
    let slice = torus_slice(g, r, s2)?;
    if slice.len() > cap {
        return Err(QuadError::ResourceBound {
            size: slice.len(),
            cap,
        });
    }
    let mut rows: HashMap<(u16, u16, Monomial), Vec<(usize, BigRational)>> = HashMap::new();
    for (col, m) in slice.iter().enumerate() {
        for a in 1..=g as u16 {
            for b in (1..=g as u16).filter(|&b| b != a) {
                for (m2, c) in derive_monomial(m, a, b) {
                    rows.entry((a, b, m2))
                        .or_default()
                        .push((col, BigRational::from_integer(c.into())));
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().cloned().collect();
    keys.sort();
    let sparse = keys.into_iter().map(|k| rows.remove(&k).unwrap()).collect();
    let mat = ExactMatrix::from_sparse(Rationals, slice.len(), sparse)?;
    let basis = mat
        .kernel_basis()
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(
                Rationals,
                slice.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()),
            )
        })
        .collect();
    Ok(InvariantBasis {
        g,
        r,
        s2,
        slice_size: slice.len(),
        basis,
    })
}
