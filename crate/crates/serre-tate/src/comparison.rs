use crate::series::{log1p_series, phi_twist, psi, psi_rational, ExpansionParams};
use crate::SerreTateError;
use delta_calculus::{canonical_delta_rational, reduce_poly};
use exact_arith::{Rationals, Ring, Zpn};
use multipoly::{Family, Matrix, MultiPoly, PolyRing, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;

/// Rational expansions get expensive quickly; ♠ is capped at this degree.
pub const SPADE_MAX_DEGREE: u32 = 6;

/// Checks that `f` only uses T^{(k)}_{ij} with k < slots and i <= j <= g.
fn check_slots<R: Ring>(f: &MultiPoly<R>, slots: u16, g: usize) -> Result<(), SerreTateError> {
    for v in f.variables() {
        if v.family != Family::T || v.level >= slots || v.i == 0 || v.j as usize > g {
            return Err(SerreTateError::SlotMismatch(v.name()));
        }
    }
    Ok(())
}

/// F^♦: slot k ↦ Ψ^{φ^k}, k = 0..slots−1, as a series mod p^N.
pub fn diamond_realize(
    f: &MultiPoly<Rationals>,
    slots: u16,
    params: ExpansionParams,
) -> Result<MultiPoly<Zpn>, SerreTateError> {
    check_slots(f, slots, params.g)?;
    let ring = params.ring();
    let fz = f.try_map_coeffs(ring, |c| {
        ring.from_rational(c)
            .map_err(|_| SerreTateError::NotIntegral(exact_arith::format_rational(c)))
    })?;
    let base = psi(params)?;
    let mut twists = Vec::with_capacity(slots as usize);
    for k in 0..slots {
        twists.push(phi_twist(&base, k)?);
    }
    let out = fz.substitute_with(
        |v| {
            Some(
                twists[v.level as usize]
                    .get(v.i as usize - 1, v.j as usize - 1)
                    .clone(),
            )
        },
        Some(params.d),
    )?;
    Ok(out)
}

/// F^♠ over Q: slot 0 ↦ log(1 + T), slot k ↦ Ψ^{φ^{k−1}} for k = 1..=r.
pub fn spade(
    f: &MultiPoly<Rationals>,
    r: u16,
    g: usize,
    p: u64,
    d: u32,
) -> Result<MultiPoly<Rationals>, SerreTateError> {
    if d > SPADE_MAX_DEGREE {
        return Err(SerreTateError::DegreeTooLarge(d));
    }
    check_slots(f, r + 1, g)?;
    let log_coeffs: Vec<BigRational> = (1..=d as i64)
        .map(|k| {
            BigRational::new(
                BigInt::from(if k % 2 == 1 { 1 } else { -1 }),
                BigInt::from(k),
            )
        })
        .collect();
    let base = psi_rational(g, p, d);
    let ring = PolyRing::truncated(Rationals, d);
    let mut twists = Vec::with_capacity(r as usize);
    for k in 0..r {
        twists.push(base.map(ring.clone(), |e| crate::series::phi_twist_poly(e, p, k)));
    }
    let out = f.substitute_with(
        |v| {
            let (i, j) = (v.i as usize - 1, v.j as usize - 1);
            if v.level == 0 {
                let t = MultiPoly::var(Rationals, VarId::t(0, v.i, v.j)).truncated(d);
                Some(log1p_series(&t, &log_coeffs, d))
            } else {
                Some(twists[v.level as usize - 1].get(i, j).clone())
            }
        },
        Some(d),
    )?;
    Ok(out)
}

/// S^♣: the homogeneous component of degree d.
pub fn club<R: Ring>(s: &MultiPoly<R>, d: u32) -> MultiPoly<R> {
    s.homogeneous_component(d).untruncated()
}

fn level_difference(k: u16, i: u16, j: u16, scale: &BigInt) -> MultiPoly<Rationals> {
    let hi = MultiPoly::var(Rationals, VarId::t(k + 1, i, j));
    let lo = MultiPoly::var(Rationals, VarId::t(k, i, j));
    (&hi - &lo).scale(&BigRational::from_integer(scale.clone()))
}

/// F(T, T' − T, p(T'' − T'), …, p^{r−1}(T^{(r)} − T^{(r−1)})).
pub fn heart_spade(
    f: &MultiPoly<Rationals>,
    r: u16,
    g: usize,
    p: u64,
) -> Result<MultiPoly<Rationals>, SerreTateError> {
    check_slots(f, r + 1, g)?;
    Ok(f.untruncated_clone().substitute_with(
        |v| {
            if v.level == 0 {
                Some(MultiPoly::var(Rationals, v))
            } else {
                Some(level_difference(
                    v.level - 1,
                    v.i,
                    v.j,
                    &BigInt::from(p).pow(v.level as u32 - 1),
                ))
            }
        },
        None,
    )?)
}

/// F^♥ = F(T' − T, p(T'' − T'), …, p^{r−1}(T^{(r)} − T^{(r−1)})), slots 0..r−1.
pub fn heart_diamond(
    f: &MultiPoly<Rationals>,
    slots: u16,
    g: usize,
    p: u64,
) -> Result<MultiPoly<Rationals>, SerreTateError> {
    check_slots(f, slots, g)?;
    Ok(f.untruncated_clone().substitute_with(
        |v| {
            Some(level_difference(
                v.level,
                v.i,
                v.j,
                &BigInt::from(p).pow(v.level as u32),
            ))
        },
        None,
    )?)
}

trait Untrunc {
    fn untruncated_clone(&self) -> Self;
}

impl<R: Ring> Untrunc for MultiPoly<R> {
    fn untruncated_clone(&self) -> Self {
        self.clone().untruncated()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpadeClubCheck {
    pub degree: u32,
    pub lhs: MultiPoly<Rationals>,
    pub rhs: MultiPoly<Rationals>,
    pub holds: bool,
}

/// (F^♠)^♣ against F(T, T' − T, …) for homogeneous F with slots 0..=r.
pub fn check_spade_club(
    f: &MultiPoly<Rationals>,
    r: u16,
    g: usize,
    p: u64,
) -> Result<SpadeClubCheck, SerreTateError> {
    let degree = f.degree().unwrap_or(0);
    if f.terms().any(|(m, _)| m.degree() != degree) {
        return Err(SerreTateError::NotHomogeneous);
    }
    let lhs = club(&spade(f, r, g, p, degree)?, degree);
    let rhs = heart_spade(f, r, g, p)?;
    let holds = lhs == rhs;
    Ok(SpadeClubCheck {
        degree,
        lhs,
        rhs,
        holds,
    })
}

fn det_i64(m: &[Vec<i64>]) -> Result<i64, SerreTateError> {
    let g = m.len();
    if m.iter().any(|row| row.len() != g) {
        return Err(SerreTateError::BadParams("matrix is not square".into()));
    }
    let rows = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let det = Matrix::from_rows(Rationals, rows)?.det()?;
    Ok(i64::try_from(det.to_integer()).unwrap_or(0))
}

/// Images of T^{(l)}_{ij}, l <= levels, under the multiplicative action of
/// Λ ∈ GL_g(Z): 1 + T ↦ ∏_{k,l} (1 + T_kl)^{λ_ik λ_jl}, prolonged by δ.
pub fn hecke_images(
    lam: &[Vec<i64>],
    p: u64,
    d: u32,
    levels: u16,
) -> Result<BTreeMap<VarId, MultiPoly<Rationals>>, SerreTateError> {
    if det_i64(lam)?.abs() != 1 {
        return Err(SerreTateError::NotUnimodular);
    }
    let g = lam.len();
    let one = MultiPoly::one(Rationals).truncated(d);
    let power = |x: &MultiPoly<Rationals>, e: i64| -> MultiPoly<Rationals> {
        // (1 + x)^e by the binomial series, exact below degree d + 1
        let mut acc = one.clone();
        let mut term = one.clone();
        let mut c = BigRational::from_integer(1.into());
        for k in 0..d as i64 {
            if e >= 0 && k >= e {
                break;
            }
            c *= BigRational::new(BigInt::from(e - k), BigInt::from(k + 1));
            term = &term * x;
            acc = &acc + &term.scale(&c);
        }
        acc
    };
    let mut out = BTreeMap::new();
    for i in 0..g {
        for j in i..g {
            let mut prod = one.clone();
            for k in 0..g {
                for l in 0..g {
                    let e = lam[i][k] * lam[j][l];
                    if e != 0 {
                        let t = MultiPoly::var(Rationals, VarId::t(0, k as u16 + 1, l as u16 + 1))
                            .truncated(d);
                        prod = &prod * &power(&t, e);
                    }
                }
            }
            let mut img = &prod - &one;
            let (a, b) = (i as u16 + 1, j as u16 + 1);
            out.insert(VarId::t(0, a, b), img.clone());
            for level in 1..=levels {
                img = canonical_delta_rational(&img, p);
                out.insert(VarId::t(level, a, b), img.clone());
            }
        }
    }
    Ok(out)
}

/// S(Λ · T), reducing the action mod p^N.
pub fn hecke_act(
    s: &MultiPoly<Zpn>,
    lam: &[Vec<i64>],
    p: u64,
    d: u32,
) -> Result<MultiPoly<Zpn>, SerreTateError> {
    let levels = s.variables().iter().map(|v| v.level).max().unwrap_or(0);
    let images = hecke_images(lam, p, d, levels)?;
    let ring = *s.ring();
    let mut reduced = BTreeMap::new();
    for (v, f) in images {
        reduced.insert(v, reduce_poly(&f, ring)?);
    }
    Ok(s.substitute(&reduced, Some(d))?)
}
