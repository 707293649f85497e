use crate::series::{
    expansion_basic, phi_twist, psi_phi_direct, BasicKind, ExpansionParams, ExpansionSeries,
};
use crate::SerreTateError;
use conj_invariants::{y_invariant, ConjError};
use exact_arith::{Ring, Zpn};
use multipoly::{Family, MultiPoly};

/// Ψ^{φ^{a−1}} computed directly against the twist of Ψ.
pub fn route_check(params: ExpansionParams, a: u16) -> Result<bool, SerreTateError> {
    let direct = psi_phi_direct(params, a)?;
    let twisted = phi_twist(&crate::series::psi(params)?, a - 1)?;
    Ok(direct.matrix == twisted.matrix)
}

/// f^2 against (f^1)^φ f^∂ + p ((f^∂)^φ)^{−t} f^1.
pub fn key_identity_check(params: ExpansionParams) -> Result<bool, SerreTateError> {
    let f2 = expansion_basic(params, BasicKind::FR(2))?;
    let f1 = expansion_basic(params, BasicKind::Angle(1))?;
    let fd = expansion_basic(params, BasicKind::Partial)?;
    let fd_phi = phi_twist(&fd, 1)?;
    let det = fd_phi.matrix.det()?;
    if !fd_phi.matrix.ring().is_one(&det) {
        return Err(SerreTateError::BadParams(
            "f^∂ twist is not unimodular".into(),
        ));
    }
    let inv_t = ExpansionSeries {
        params,
        matrix: fd_phi.matrix.adjugate()?.transpose(),
        symmetric: false,
    };
    let first = phi_twist(&f1, 1)?.try_mul(&fd)?;
    let second = inv_t.try_mul(&f1)?.scale_int(params.p as i64);
    Ok(f2.matrix == first.try_add(&second)?.matrix)
}

/// f^[a] against Σ_{i<a} p^i f^⟨a−i⟩.
pub fn bracket_sum_check(params: ExpansionParams, a: u16) -> Result<bool, SerreTateError> {
    let lhs = expansion_basic(params, BasicKind::Bracket(a))?;
    let mut rhs = expansion_basic(params, BasicKind::Angle(a))?;
    let mut pi = 1i64;
    for i in 1..a {
        pi *= params.p as i64;
        rhs = rhs.try_add(&expansion_basic(params, BasicKind::Angle(a - i))?.scale_int(pi))?;
    }
    Ok(lhs.matrix == rhs.matrix)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonzeroStatus {
    Nonzero,
    /// Both sides vanish below the truncation degree.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CyclicExpansionCheck {
    pub levels: Vec<u16>,
    pub j: usize,
    pub lhs: MultiPoly<Zpn>,
    pub rhs: MultiPoly<Zpn>,
    pub equal: bool,
    pub status: NonzeroStatus,
    /// y_j itself is nonzero mod p as a polynomial in the Q^{(m)}.
    pub symbolic_nonzero: bool,
}

fn conj_err(e: ConjError) -> SerreTateError {
    match e {
        ConjError::BadCycle(s) => SerreTateError::BadCycle(s),
        other => SerreTateError::BadParams(other.to_string()),
    }
}

/// E(f^{ab}): φ^b(f^{a−b}) for a > b, its transpose for a < b.
fn edge(params: ExpansionParams, a: u16, b: u16) -> Result<ExpansionSeries, SerreTateError> {
    if a > b {
        phi_twist(&expansion_basic(params, BasicKind::FR(a - b))?, b)
    } else {
        Ok(edge(params, b, a)?.transpose())
    }
}

/// c_j of E(f^{a1a2}) E(f^{a3a2})^* E(f^{a3a4}) ⋯ E(f^{a1a2s})^* mod p, against
/// y_j with Q^{(m)} ↦ Ψ^{φ^{m−1}}.
pub fn cyclic_expansion_check(
    levels: &[u16],
    j: usize,
    g: usize,
    p: u64,
    d: u32,
) -> Result<CyclicExpansionCheck, SerreTateError> {
    let y = y_invariant(g, j, levels).map_err(conj_err)?;
    let top = *levels.iter().max().expect("cycle is nonempty");
    let params = ExpansionParams::new(g, p, 1, d, top)?;
    let n = levels.len();
    let mut prod: Option<ExpansionSeries> = None;
    for k in 0..n {
        let (a, b) = (levels[k], levels[(k + 1) % n]);
        let factor = if k % 2 == 0 {
            edge(params, a, b)?
        } else {
            let e = edge(params, b, a)?;
            ExpansionSeries {
                params,
                matrix: e.matrix.adjugate()?,
                symmetric: false,
            }
        };
        prod = Some(match prod {
            None => factor,
            Some(acc) => acc.try_mul(&factor)?,
        });
    }
    let prod = prod.expect("cycle is nonempty");
    let coeffs = prod.matrix.charpoly_coeffs()?;
    let lhs = coeffs.get(j).cloned().ok_or(SerreTateError::BadIndex)?;

    let ring = params.ring();
    let y_mod_p = delta_calculus::reduce_poly(&y, ring)?;
    let symbolic_nonzero = !y_mod_p.is_zero();
    let mut images = Vec::new();
    for m in 0..=top {
        images.push(if m == 0 {
            None
        } else {
            Some(psi_phi_direct(params, m)?)
        });
    }
    let rhs = y_mod_p.substitute_with(
        |v| {
            if v.family != Family::Q {
                return None;
            }
            images
                .get(v.level as usize)?
                .as_ref()
                .map(|s| s.get(v.i as usize - 1, v.j as usize - 1).clone())
        },
        Some(d),
    )?;
    let lhs = lhs.truncated(d);
    let equal = lhs == rhs;
    let status = if lhs.is_zero() {
        NonzeroStatus::Inconclusive
    } else {
        NonzeroStatus::Nonzero
    };
    Ok(CyclicExpansionCheck {
        levels: levels.to_vec(),
        j,
        lhs,
        rhs,
        equal,
        status,
        symbolic_nonzero,
    })
}
