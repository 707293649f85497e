use crate::SerreTateError;
use delta_calculus::frobenius_lift;
use exact_arith::{binomial, is_prime_u64, log1p_scaled_coeffs, Rationals, Ring, Zpn};
use multipoly::{Matrix, MultiPoly, PolyRing, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;

pub type SeriesMatrix = Matrix<PolyRing<Zpn>>;

/// (g, p, N, D) and the level budget r: series live in Z/p^N[T^{(0..=r)}]
/// truncated above total degree D.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionParams {
    pub g: usize,
    pub p: u64,
    pub n: u32,
    pub d: u32,
    pub r: u16,
}

impl ExpansionParams {
    pub fn new(g: usize, p: u64, n: u32, d: u32, r: u16) -> Result<Self, SerreTateError> {
        if g == 0 || !is_prime_u64(p) || n == 0 || d == 0 {
            return Err(SerreTateError::BadParams(format!(
                "g={g} p={p} N={n} D={d}"
            )));
        }
        Zpn::new(p, n + 1).map_err(|e| SerreTateError::BadParams(e.to_string()))?;
        Ok(ExpansionParams { g, p, n, d, r })
    }

    pub fn ring(&self) -> Zpn {
        Zpn::new(self.p, self.n).expect("checked in new")
    }

    pub fn poly_ring(&self) -> PolyRing<Zpn> {
        PolyRing::truncated(self.ring(), self.d)
    }

    fn check_level(&self, needed: u16) -> Result<(), SerreTateError> {
        if needed > self.r {
            return Err(SerreTateError::LevelOverflow {
                needed,
                budget: self.r,
            });
        }
        Ok(())
    }
}

/// A g x g matrix of truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionSeries {
    pub params: ExpansionParams,
    pub matrix: SeriesMatrix,
    pub symmetric: bool,
}

impl ExpansionSeries {
    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<Zpn> {
        self.matrix.get(i, j)
    }

    pub fn max_level(&self) -> u16 {
        self.matrix
            .entries()
            .iter()
            .flat_map(|e| e.variables())
            .map(|v| v.level)
            .max()
            .unwrap_or(0)
    }

    pub fn identity(params: ExpansionParams) -> Self {
        ExpansionSeries {
            params,
            matrix: Matrix::identity(params.poly_ring(), params.g),
            symmetric: true,
        }
    }

    fn from_upper(
        params: ExpansionParams,
        mut entry: impl FnMut(usize, usize) -> MultiPoly<Zpn>,
    ) -> Self {
        let g = params.g;
        let mut m = Matrix::zero(params.poly_ring(), g);
        for i in 0..g {
            for j in i..g {
                let e = entry(i, j);
                m.set(j, i, e.clone());
                m.set(i, j, e);
            }
        }
        ExpansionSeries {
            params,
            matrix: m,
            symmetric: true,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SerreTateError> {
        Ok(ExpansionSeries {
            params: self.params,
            matrix: self.matrix.try_add(&other.matrix)?,
            symmetric: self.symmetric && other.symmetric,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SerreTateError> {
        Ok(ExpansionSeries {
            params: self.params,
            matrix: self.matrix.try_mul(&other.matrix)?,
            symmetric: false,
        })
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let e = self.matrix.ring().from_i64(c);
        ExpansionSeries {
            params: self.params,
            matrix: self.matrix.scale(&e),
            symmetric: self.symmetric,
        }
    }

    pub fn transpose(&self) -> Self {
        ExpansionSeries {
            params: self.params,
            matrix: self.matrix.transpose(),
            symmetric: self.symmetric,
        }
    }
}

fn tvar<R: Ring>(ring: &R, level: u16, i: usize, j: usize, d: u32) -> MultiPoly<R> {
    let (a, b) = (i.min(j) as u16 + 1, i.max(j) as u16 + 1);
    MultiPoly::var(ring.clone(), VarId::t(level, a, b)).truncated(d)
}

/// Σ c_k u^k for a series u without constant term, c_k given from k = 1.
pub fn log1p_series<R: Ring>(u: &MultiPoly<R>, coeffs: &[R::Elem], d: u32) -> MultiPoly<R> {
    let ring = u.ring().clone();
    let mut acc = MultiPoly::zero(ring.clone()).truncated(d);
    let mut power = MultiPoly::one(ring).truncated(d);
    for c in coeffs.iter().take(d as usize) {
        power = &power * u;
        if power.is_zero() {
            break;
        }
        acc = &acc + &power.scale(c);
    }
    acc
}

/// (1 + x)^{-1} for x without constant term.
fn inv_one_plus<R: Ring>(x: &MultiPoly<R>, d: u32) -> MultiPoly<R> {
    let ring = x.ring().clone();
    let mut acc = MultiPoly::one(ring.clone()).truncated(d);
    let mut power = acc.clone();
    let minus = x.neg();
    for _ in 0..d {
        power = &power * &minus;
        acc = &acc + &power;
    }
    acc
}

/// u = δq / q^p for q = 1 + t, δq = t' − Σ_{k=1}^{p−1} (C(p,k)/p) t^k.
fn psi_u<R: Ring>(t: &MultiPoly<R>, t1: &MultiPoly<R>, p: u64, d: u32) -> MultiPoly<R> {
    let ring = t.ring().clone();
    let mut dq = t1.clone();
    for k in 1..p {
        let c = binomial(p, k) / BigInt::from(p);
        dq = &dq - &t.pow(k as u32).scale(&ring.from_int(&c));
    }
    &dq * &inv_one_plus(t, d).pow(p as u32)
}

/// Ψ_ij = (1/p) log(1 + p u_ij), entries in T^{(0)}, T^{(1)}.
pub fn psi(params: ExpansionParams) -> Result<ExpansionSeries, SerreTateError> {
    params.check_level(1)?;
    let ring = params.ring();
    let coeffs = log1p_scaled_coeffs(&ring);
    Ok(ExpansionSeries::from_upper(params, |i, j| {
        let t = tvar(&ring, 0, i, j, params.d);
        let t1 = tvar(&ring, 1, i, j, params.d);
        log1p_series(&psi_u(&t, &t1, params.p, params.d), &coeffs, params.d)
    }))
}

/// The same series over Q, truncated at degree d.
pub fn psi_rational(g: usize, p: u64, d: u32) -> Matrix<PolyRing<Rationals>> {
    let coeffs: Vec<BigRational> = (1..=d as u64)
        .map(|k| {
            let s = if k % 2 == 1 { 1 } else { -1 };
            BigRational::new(
                BigInt::from(s) * BigInt::from(p).pow(k as u32 - 1),
                BigInt::from(k),
            )
        })
        .collect();
    let mut m = Matrix::zero(PolyRing::truncated(Rationals, d), g);
    for i in 0..g {
        for j in i..g {
            let t = tvar(&Rationals, 0, i, j, d);
            let t1 = tvar(&Rationals, 1, i, j, d);
            let e = log1p_series(&psi_u(&t, &t1, p, d), &coeffs, d);
            m.set(j, i, e.clone());
            m.set(i, j, e);
        }
    }
    m
}

/// k-fold T^{(l)} ↦ (T^{(l)})^p + p T^{(l+1)}, keeping the truncation.
pub fn phi_twist_poly<R: Ring>(f: &MultiPoly<R>, p: u64, k: u16) -> MultiPoly<R> {
    let mut out = f.clone();
    for _ in 0..k {
        out = frobenius_lift(&out, p);
    }
    out
}

pub fn phi_twist(s: &ExpansionSeries, k: u16) -> Result<ExpansionSeries, SerreTateError> {
    s.params.check_level(s.max_level() + k)?;
    let p = s.params.p;
    let ring = s.matrix.ring().clone();
    let m = s.matrix.map(ring, |e| phi_twist_poly(e, p, k));
    Ok(ExpansionSeries {
        params: s.params,
        matrix: m,
        symmetric: s.symmetric,
    })
}

/// Ψ^{φ^{a−1}} = (1/p) log((1 + τ_a)/(1 + τ_{a−1})^p), τ_k = φ^k(T), without
/// twisting Ψ itself.
pub fn psi_phi_direct(params: ExpansionParams, a: u16) -> Result<ExpansionSeries, SerreTateError> {
    if a == 0 {
        return Err(SerreTateError::BadIndex);
    }
    params.check_level(a)?;
    let lo = params.ring();
    let hi = Zpn::new(params.p, params.n + 1).expect("checked in new");
    let (p, d) = (params.p, params.d);
    let coeffs = log1p_scaled_coeffs(&lo);
    let lower = |f: &MultiPoly<Zpn>| f.map_coeffs(lo, |c| hi.reduce_to(*c, &lo));
    let mut err = None;
    let out = ExpansionSeries::from_upper(params, |i, j| {
        let t = tvar(&hi, 0, i, j, d);
        let prev = phi_twist_poly(&t, p, a - 1);
        let cur = frobenius_lift(&prev, p);
        let one = MultiPoly::one(hi).truncated(d);
        let num = &(&one + &cur) - &(&one + &prev).pow(p as u32);
        let num = match num.try_map_coeffs(lo, |c| hi.div_p(*c).ok_or(())) {
            Ok(x) => x,
            Err(()) => {
                err = Some(SerreTateError::NotIntegral(
                    "(1 + τ_a) − (1 + τ_{a−1})^p".into(),
                ));
                return MultiPoly::zero(lo);
            }
        };
        let u = &num * &inv_one_plus(&lower(&prev), d).pow(p as u32);
        log1p_series(&u, &coeffs, d)
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// The basic forms, by their expansion laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasicKind {
    /// f^r: Ψ^{φ^{r−1}} + pΨ^{φ^{r−2}} + ⋯ + p^{r−1}Ψ, from twists of Ψ.
    FR(u16),
    /// f^∂: the identity matrix.
    Partial,
    /// f^⟨a⟩: Ψ^{φ^{a−1}}, computed directly.
    Angle(u16),
    /// f^[a]: same law as f^a, computed by the recursion B_a = B_{a−1}^φ + p^{a−1}Ψ.
    Bracket(u16),
}

pub fn expansion_basic(
    params: ExpansionParams,
    kind: BasicKind,
) -> Result<ExpansionSeries, SerreTateError> {
    let p = params.p as i64;
    match kind {
        BasicKind::Partial => Ok(ExpansionSeries::identity(params)),
        BasicKind::Angle(a) => psi_phi_direct(params, a),
        BasicKind::FR(r) => {
            if r == 0 {
                return Err(SerreTateError::BadIndex);
            }
            let base = psi(params)?;
            let mut acc = phi_twist(&base, r - 1)?;
            let mut pi = 1i64;
            for i in 1..r {
                pi *= p;
                acc = acc.try_add(&phi_twist(&base, r - 1 - i)?.scale_int(pi))?;
            }
            Ok(acc)
        }
        BasicKind::Bracket(a) => {
            if a == 0 {
                return Err(SerreTateError::BadIndex);
            }
            let base = psi(params)?;
            let mut acc = base.clone();
            let mut pk = 1i64;
            for _ in 1..a {
                pk *= p;
                acc = phi_twist(&acc, 1)?.try_add(&base.scale_int(pk))?;
            }
            Ok(acc)
        }
    }
}

/// Ψ for g = 1 evaluated at T = 0, T' = t1; enough degree is kept that the
/// evaluation is exact mod p^N.
pub fn psi_scalar_at_zero(p: u64, n: u32, t1: u64) -> Result<u64, SerreTateError> {
    let d = exact_arith::log1p_scaled_cutoff(p, n) as u32;
    let params = ExpansionParams::new(1, p, n, d, 1)?;
    let s = psi(params)?;
    Ok(s.get(0, 0)
        .eval(|v| Some(if v.level == 0 { 0 } else { t1 }))?)
}
