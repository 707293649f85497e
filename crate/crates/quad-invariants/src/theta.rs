use crate::QuadError;
use exact_arith::{binomial, Rationals, Ring};
use multipoly::{Matrix, MultiPoly, PolyRing, SymMatrixPoly, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;

type Q = MultiPoly<Rationals>;

fn t(l: usize, i: usize, j: usize) -> Q {
    MultiPoly::var(Rationals, VarId::t(l as u16, i as u16 + 1, j as u16 + 1))
}

/// All (m_0, …, m_r) with Σ m_l = g, in decreasing lexicographic order.
pub fn multidegrees(g: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for m in (0..=left).rev() {
            cur.push(m);
            rec(left - m, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, r + 1, &mut Vec::new(), &mut out);
    out
}

/// Distinct row → level assignments with the given level counts.
fn assignments(m: &[usize]) -> Vec<Vec<usize>> {
    fn rec(m: &mut [usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for l in 0..m.len() {
            if m[l] > 0 {
                m[l] -= 1;
                cur.push(l);
                rec(m, left - 1, cur, out);
                cur.pop();
                m[l] += 1;
            }
        }
    }
    let mut mm = m.to_vec();
    let mut out = Vec::new();
    rec(&mut mm, m.iter().sum(), &mut Vec::new(), &mut out);
    out
}

/// Θ_m: coefficient of ∏ y_l^{m_l} in det(Σ y_l T^{(l)}).
///
/// det is multilinear in rows, so this is the sum over row → level
/// assignments with counts m of the determinant with row k taken from
/// T^{(σ(k))}.
pub fn theta(g: usize, m: &[usize]) -> Result<Q, QuadError> {
    if m.iter().sum::<usize>() != g || m.is_empty() {
        return Err(QuadError::BadMultidegree(m.to_vec()));
    }
    let ring = PolyRing::new(Rationals);
    let mut out = MultiPoly::zero(Rationals);
    for sigma in assignments(m) {
        let mat = Matrix::from_fn(ring.clone(), g, |i, j| t(sigma[i], i, j));
        out = &out + &mat.det()?;
    }
    Ok(out)
}

/// Number of Θ's for (g, r): binomial(g + r, r).
pub fn theta_count(g: usize, r: usize) -> u64 {
    let b = binomial((g + r) as u64, r as u64);
    u64::try_from(b).expect("small")
}

/// Δ_3(2,3): the nine multidegrees of Δ(2,3) other than (0,0,1,1), i.e.
/// at most one nonzero entry among the last two positions.
pub fn delta3_2_3() -> Vec<Vec<usize>> {
    multidegrees(2, 3)
        .into_iter()
        .filter(|m| (m[2] > 0) as u8 + (m[3] > 0) as u8 <= 1)
        .collect()
}

/// Column vector c(T^{(l)}) of the upper entries in lexicographic (i, j) order.
fn column(g: usize, l: usize) -> Vec<Q> {
    let mut out = Vec::new();
    for i in 0..g {
        for j in i..g {
            out.push(t(l, i, j));
        }
    }
    out
}

/// Υ = det[c(T^{(q_1)}) | ⋯ | c(T^{(q_N)})], N = g(g+1)/2.
pub fn upsilon(g: usize, levels: &[usize]) -> Result<Q, QuadError> {
    let n = g * (g + 1) / 2;
    if levels.len() != n || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadError::BadLevels(levels.to_vec()));
    }
    let cols: Vec<Vec<Q>> = levels.iter().map(|&l| column(g, l)).collect();
    let mat = Matrix::from_fn(PolyRing::new(Rationals), n, |i, j| cols[j][i].clone());
    Ok(mat.det()?)
}

fn a_var(k: usize) -> VarId {
    VarId::aux(k as u16, 0)
}

/// Discriminant of the generic binary form Σ_k a_k y0^{g−k} y1^k, as a
/// polynomial in a_0, …, a_g (variables `x0`, …), normalized so that for
/// F = ∏ (β_i y0 − α_i y1) it equals ∏_{i<j} (α_i β_j − α_j β_i)².
///
/// Computed as Res(∂F/∂y0, ∂F/∂y1) = (−1)^{g(g−1)/2} g^{g−2} Disc(F).
pub fn binary_discriminant(g: usize) -> Result<Q, QuadError> {
    if !(2..=4).contains(&g) {
        return Err(QuadError::SizeTooLarge(g));
    }
    let a = |k: usize| MultiPoly::var(Rationals, a_var(k));
    // Coefficients of y0^{g-1-k} y1^k in each partial.
    let d0: Vec<Q> = (0..g).map(|k| a(k).scale_int((g - k) as i64)).collect();
    let d1: Vec<Q> = (0..g).map(|k| a(k + 1).scale_int((k + 1) as i64)).collect();
    let n = 2 * (g - 1);
    let ring = PolyRing::new(Rationals);
    let syl = Matrix::from_fn(ring, n, |i, j| {
        let (row, coeffs) = if i < g - 1 {
            (i, &d0)
        } else {
            (i - (g - 1), &d1)
        };
        if j >= row && j - row < g {
            coeffs[j - row].clone()
        } else {
            MultiPoly::zero(Rationals)
        }
    });
    let res = syl.det()?;
    let sign = if (g * (g - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let c = BigInt::from(sign) * BigInt::from(g).pow(g as u32 - 2);
    Ok(res.scale(&(BigRational::from_integer(1.into()) / BigRational::from_integer(c))))
}

/// Θ_0, …, Θ_g for a pair (T^{(0)}, T^{(1)}): Θ_i = coefficient of y0^{g−i} y1^i.
pub fn pencil_thetas(g: usize) -> Result<Vec<Q>, QuadError> {
    (0..=g).map(|i| theta(g, &[g - i, i])).collect()
}

/// Cayley's tact-invariant J = Disc_g(Θ_0, …, Θ_g) on pairs.
pub fn tact_invariant(g: usize) -> Result<Q, QuadError> {
    let disc = binary_discriminant(g)?;
    let th = pencil_thetas(g)?;
    Ok(disc.substitute_with(|v| Some(th[v.i as usize].clone()), None)?)
}

/// F_0 = Θ_0 · F_1 · J with F_1 = 1 for p ≠ 2 and F_1 = Θ_1 for p = 2.
pub fn separating_f0(g: usize, p: u64) -> Result<Q, QuadError> {
    let th = pencil_thetas(g)?;
    let j = tact_invariant(g)?;
    let f1 = if p == 2 {
        th[1].clone()
    } else {
        MultiPoly::one(Rationals)
    };
    Ok(&(&th[0] * &f1) * &j)
}

/// Substitution T^{(l)} ↦ numeric symmetric matrices, as a coordinate map.
pub fn point_from_matrices<R: Ring>(mats: &[Matrix<R>]) -> impl Fn(VarId) -> Option<R::Elem> + '_ {
    move |v: VarId| {
        let m = mats.get(v.level as usize)?;
        Some(m.get(v.i as usize - 1, v.j as usize - 1).clone())
    }
}

/// The generic symmetric matrix T^{(l)} of size g.
pub fn generic_t(g: usize, l: usize) -> SymMatrixPoly<Rationals> {
    SymMatrixPoly::generic_t(Rationals, g, l as u16)
}
