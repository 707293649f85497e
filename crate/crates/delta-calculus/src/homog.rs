use crate::delta::{frobenius_lift, is_p_integral};
use crate::{DeltaError, Weight};
use exact_arith::Rationals;
use multipoly::{Family, Monomial, MultiPoly, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

type Q = MultiPoly<Rationals>;

fn shift_phi(f: &Q) -> Q {
    f.rename(|v| VarId::zphi(v.i, v.level + 1))
}

/// z_i^{(l)} written in the coordinates w_k = z_i^{φ^k}, k ≤ l.
pub fn delta_var_in_phi_coords(i: u16, level: u16, p: u64) -> Q {
    let inv_p = BigRational::new(BigInt::from(1), BigInt::from(p));
    let mut cur = MultiPoly::var(Rationals, VarId::zphi(i, 0));
    for _ in 0..level {
        cur = (&shift_phi(&cur) - &cur.pow(p as u32)).scale(&inv_p);
    }
    cur
}

/// Rewrite a polynomial in the z_i^{(l)} into the z_i^{φ^k}.
pub fn to_phi_coords(f: &Q, p: u64) -> Result<Q, DeltaError> {
    for v in f.variables() {
        if v.family != Family::Z {
            return Err(DeltaError::UnsupportedVariable(v.to_string()));
        }
    }
    Ok(f.substitute_with(|v| Some(delta_var_in_phi_coords(v.i, v.level, p)), None)?)
}

/// Inverse change of variables: z_i^{φ^k} = φ^k(z_i).
pub fn from_phi_coords(f: &Q, p: u64) -> Result<Q, DeltaError> {
    for v in f.variables() {
        if v.family != Family::ZPhi {
            return Err(DeltaError::UnsupportedVariable(v.to_string()));
        }
    }
    Ok(f.substitute_with(
        |v| {
            let mut x = MultiPoly::var(Rationals, VarId::z(v.i, 0));
            for _ in 0..v.level {
                x = frobenius_lift(&x, p);
            }
            Some(x)
        },
        None,
    )?)
}

/// Σ e·φ^k over the factors (z_i^{φ^k})^e.
pub fn phi_weight(m: &Monomial) -> Weight {
    m.factors().iter().fold(Weight::zero(), |acc, &(v, e)| {
        &acc + &Weight::phi_pow(v.level as usize, e as i64)
    })
}

/// Components by weight, in the φ-coordinates. `multiplier` rescales every
/// weight (a shifted grading).
pub fn delta_homog_decompose(
    f: &Q,
    p: u64,
    multiplier: &Weight,
) -> Result<BTreeMap<Weight, Q>, DeltaError> {
    let g = to_phi_coords(f, p)?;
    let mut out: BTreeMap<Weight, Q> = BTreeMap::new();
    for (m, c) in g.terms() {
        let w = multiplier * &phi_weight(m);
        out.entry(w)
            .or_insert_with(|| MultiPoly::zero(Rationals))
            .add_term(m.clone(), c.clone());
    }
    Ok(out)
}

/// F ∈ S_n(w): p-integral, and a single δ-homogeneous component of weight w.
pub fn in_s_n(f: &Q, p: u64, w: &Weight) -> Result<bool, DeltaError> {
    if !is_p_integral(f, p) {
        return Ok(false);
    }
    let comps = delta_homog_decompose(f, p, &Weight::int(1))?;
    Ok(match comps.len() {
        0 => true,
        1 => comps.contains_key(w),
        _ => false,
    })
}
