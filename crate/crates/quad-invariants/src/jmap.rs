use crate::theta::{multidegrees, theta};
use crate::QuadError;
use exact_arith::{Rationals, Ring};
use exact_linalg::ExactMatrix;
use multipoly::{Family, Monomial, MultiPoly, VarId};
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, HashMap};

type Q = MultiPoly<Rationals>;

fn u(l: u16) -> Q {
    MultiPoly::var(Rationals, VarId::u(l))
}

fn v(l: u16) -> Q {
    MultiPoly::var(Rationals, VarId::v(l))
}

/// ȷ (g = 2): T^{(l)}_{11}, T^{(l)}_{22}, T^{(l)}_{12} ↦ u_l², v_l², u_l v_l.
pub fn jmath(f: &Q, g: usize) -> Result<Q, QuadError> {
    if g != 2 {
        return Err(QuadError::WrongG(g));
    }
    Ok(f.substitute_with(
        |w| {
            Some(match (w.family, w.i, w.j) {
                (Family::T, 1, 1) => u(w.level).pow(2),
                (Family::T, 2, 2) => v(w.level).pow(2),
                (Family::T, 1, 2) => &u(w.level) * &v(w.level),
                _ => MultiPoly::var(Rationals, w),
            })
        },
        None,
    )?)
}

/// y_{i,j} = u_i v_j − v_i u_j.
pub fn plucker_y(i: usize, j: usize) -> Q {
    let (i, j) = (i as u16, j as u16);
    &(&u(i) * &v(j)) - &(&v(i) * &u(j))
}

/// ξ_ω = −∏ y_{q_k, q_{k+1}}, indices read cyclically.
pub fn xi_target(omega: &[usize]) -> Q {
    let m = omega.len();
    let mut out = MultiPoly::from_int(Rationals, -1);
    for k in 0..m {
        out = &out * &plucker_y(omega[k], omega[(k + 1) % m]);
    }
    out
}

fn check_cycle(omega: &[usize], min_len: usize) -> Result<(), QuadError> {
    let mut sorted = omega.to_vec();
    sorted.sort();
    sorted.dedup();
    if omega.len() < min_len || sorted.len() != omega.len() {
        return Err(QuadError::BadIndices(format!("{omega:?}")));
    }
    Ok(())
}

/// Ξ_ω: the unique polynomial of partial T-degree 1 in each level of ω
/// (0 elsewhere) with ȷ(Ξ_ω) = ξ_ω, found by exact linear solving.
pub fn xi_lift(omega: &[usize]) -> Result<Q, QuadError> {
    check_cycle(omega, 2)?;
    let mut slice = vec![Monomial::one()];
    for &l in omega {
        let mut next = Vec::with_capacity(slice.len() * 3);
        for m in &slice {
            for (i, j) in [(1, 1), (1, 2), (2, 2)] {
                next.push(m.mul(&Monomial::var(VarId::t(l as u16, i, j))));
            }
        }
        slice = next;
    }
    let target = xi_target(omega);
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, BigRational)>> = Vec::new();
    let mut add =
        |m: &Monomial, col: usize, c: BigRational, rows: &mut Vec<Vec<(usize, BigRational)>>| {
            let n = row_of.len();
            let r = *row_of.entry(m.clone()).or_insert(n);
            if r == rows.len() {
                rows.push(Vec::new());
            }
            rows[r].push((col, c));
        };
    for (col, m) in slice.iter().enumerate() {
        let img = jmath(
            &MultiPoly::monomial(Rationals, m.clone(), Rationals.one()),
            2,
        )?;
        for (m2, c) in img.terms() {
            add(m2, col, c.clone(), &mut rows);
        }
    }
    let mut b = vec![BigRational::zero(); rows.len()];
    for (m, c) in target.terms() {
        match row_of.get(m) {
            Some(&r) => b[r] = c.clone(),
            None => return Err(QuadError::NoSolution),
        }
    }
    let mat = ExactMatrix::from_sparse(Rationals, slice.len(), rows)?;
    let x = mat.solve(&b)?.ok_or(QuadError::NoSolution)?;
    Ok(MultiPoly::from_terms(
        Rationals,
        slice.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
    ))
}

#[derive(Debug, Clone)]
pub struct CyclicCheck {
    pub holds: bool,
    pub lhs: Q,
    pub rhs: Q,
    pub reordered: Vec<usize>,
}

/// Ξ_{(q_1,…,q_m)} + Ξ_{(q_1,q_{s+1},…,q_m)} Ξ_{(q_2,…,q_s)}
///   = (−1)^s Ξ_{(q_1,q_s,q_{s−1},…,q_2,q_{s+1},…,q_m)}.
pub fn cyclic_relation(q: &[usize], s: usize) -> Result<CyclicCheck, QuadError> {
    check_cycle(q, 4)?;
    let m = q.len();
    if !(3..m).contains(&s) {
        return Err(QuadError::BadIndices(format!(
            "split point {s} for m = {m}"
        )));
    }
    let outer: Vec<usize> = std::iter::once(q[0])
        .chain(q[s..].iter().copied())
        .collect();
    let inner: Vec<usize> = q[1..s].to_vec();
    let reordered: Vec<usize> = std::iter::once(q[0])
        .chain(q[1..s].iter().rev().copied())
        .chain(q[s..].iter().copied())
        .collect();
    let lhs = &xi_lift(q)? + &(&xi_lift(&outer)? * &xi_lift(&inner)?);
    let mut rhs = xi_lift(&reordered)?;
    if s % 2 == 1 {
        rhs = rhs.neg();
    }
    Ok(CyclicCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
        reordered,
    })
}

/// A polynomial in Θ-symbols: Θ-monomials (multisets of multidegrees) with
/// rational coefficients.
pub type ThetaPoly = Vec<(Vec<Vec<usize>>, BigRational)>;

#[derive(Debug, Clone)]
pub struct PluckerCheck {
    pub levels: [usize; 4],
    pub slice_size: usize,
    pub kernel_dim: usize,
    /// The kernel generator, normalized.
    pub quartic: ThetaPoly,
    /// The quartic without the terms involving a det Θ.
    pub reduced: ThetaPoly,
    /// `reduced` equals X²+Y²+Z²−2XY−2XZ−2YZ up to a scalar, with
    /// X = Θ_{ij}Θ_{ns}, Y = Θ_{in}Θ_{js}, Z = Θ_{is}Θ_{jn}.
    pub matches_plucker_shape: bool,
    pub j_image_vanishes: bool,
}

fn theta_multidegree(r: usize, pairs: &[usize]) -> Vec<usize> {
    let mut m = vec![0; r + 1];
    for &p in pairs {
        m[p] += 1;
    }
    m
}

fn eval_theta_poly(p: &ThetaPoly, thetas: &BTreeMap<Vec<usize>, Q>) -> Q {
    let mut out = MultiPoly::zero(Rationals);
    for (mono, c) in p {
        let mut t = MultiPoly::constant(Rationals, c.clone());
        for m in mono {
            t = &t * &thetas[m];
        }
        out = &out + &t;
    }
    out
}

fn normalize(p: &mut ThetaPoly) {
    p.sort();
    if let Some((_, c)) = p.first().cloned() {
        for (_, x) in p.iter_mut() {
            *x = &*x / &c;
        }
    }
}

/// Kernel of Θ-monomials of degree 4 ↦ T-polynomials on the partial
/// T-degree (2,2,2,2) slice over the levels (i, j, n, s).
pub fn plucker_relation(levels: [usize; 4]) -> Result<PluckerCheck, QuadError> {
    check_cycle(&levels, 4)?;
    let r = *levels.iter().max().unwrap();
    let target = {
        let mut t = vec![0; r + 1];
        for &l in &levels {
            t[l] = 2;
        }
        t
    };
    let degs: Vec<Vec<usize>> = multidegrees(2, r)
        .into_iter()
        .filter(|m| (0..=r).all(|l| m[l] == 0 || target[l] > 0))
        .collect();
    let mut thetas = BTreeMap::new();
    for m in &degs {
        thetas.insert(m.clone(), theta(2, m)?);
    }
    // Multisets of size 4 summing to the target.
    let mut monos: Vec<Vec<Vec<usize>>> = Vec::new();
    fn rec(
        degs: &[Vec<usize>],
        start: usize,
        left: usize,
        acc: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        target: &[usize],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if left == 0 {
            if acc.as_slice() == target {
                out.push(cur.clone());
            }
            return;
        }
        for k in start..degs.len() {
            if degs[k]
                .iter()
                .zip(acc.iter())
                .zip(target)
                .any(|((d, a), t)| d + a > *t)
            {
                continue;
            }
            for (a, d) in acc.iter_mut().zip(&degs[k]) {
                *a += d;
            }
            cur.push(degs[k].clone());
            rec(degs, k, left - 1, acc, cur, target, out);
            cur.pop();
            for (a, d) in acc.iter_mut().zip(&degs[k]) {
                *a -= d;
            }
        }
    }
    rec(
        &degs,
        0,
        4,
        &mut vec![0; r + 1],
        &mut Vec::new(),
        &target,
        &mut monos,
    );

    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows: Vec<Vec<(usize, BigRational)>> = Vec::new();
    for (col, mono) in monos.iter().enumerate() {
        let val = eval_theta_poly(
            &vec![(mono.clone(), BigRational::from_integer(1.into()))],
            &thetas,
        );
        for (m, c) in val.terms() {
            let n = row_of.len();
            let rr = *row_of.entry(m.clone()).or_insert(n);
            if rr == rows.len() {
                rows.push(Vec::new());
            }
            rows[rr].push((col, c.clone()));
        }
    }
    let kernel = ExactMatrix::from_sparse(Rationals, monos.len(), rows)?.kernel_basis();
    let kernel_dim = kernel.len();
    let mut quartic: ThetaPoly = match kernel.first() {
        Some(vec) => monos
            .iter()
            .cloned()
            .zip(vec.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect(),
        None => Vec::new(),
    };
    normalize(&mut quartic);
    let is_det = |m: &Vec<usize>| m.contains(&2);
    let mut reduced: ThetaPoly = quartic
        .iter()
        .filter(|(mono, _)| !mono.iter().any(is_det))
        .cloned()
        .collect();
    normalize(&mut reduced);

    let [i, j, n, s] = levels;
    let th = |a: usize, b: usize| theta_multidegree(r, &[a, b]);
    let x = vec![th(i, j), th(n, s)];
    let y = vec![th(i, n), th(j, s)];
    let z = vec![th(i, s), th(j, n)];
    let prod = |a: &Vec<Vec<usize>>, b: &Vec<Vec<usize>>| {
        let mut m: Vec<Vec<usize>> = a.iter().chain(b.iter()).cloned().collect();
        m.sort();
        m
    };
    let one = BigRational::from_integer(1.into());
    let two = BigRational::from_integer((-2).into());
    let mut shape: ThetaPoly = vec![
        (prod(&x, &x), one.clone()),
        (prod(&y, &y), one.clone()),
        (prod(&z, &z), one),
        (prod(&x, &y), two.clone()),
        (prod(&x, &z), two.clone()),
        (prod(&y, &z), two),
    ];
    let mut red_sorted: ThetaPoly = reduced
        .iter()
        .map(|(m, c)| (sorted(m), c.clone()))
        .collect();
    normalize(&mut red_sorted);
    normalize(&mut shape);
    let matches_plucker_shape = red_sorted == shape;
    let j_image_vanishes = jmath(&eval_theta_poly(&reduced, &thetas), 2)?.is_zero();
    Ok(PluckerCheck {
        levels,
        slice_size: monos.len(),
        kernel_dim,
        quartic,
        reduced,
        matches_plucker_shape,
        j_image_vanishes,
    })
}

fn sorted(m: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut m = m.to_vec();
    m.sort();
    m
}

/// Dimension of the span of the degree-d monomials in the y_{i,j}
/// (0 ≤ i < j < n) inside the u, v polynomial ring.
pub fn plucker_span_dimension(n: usize, d: usize) -> Result<usize, QuadError> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let ys: Vec<Q> = pairs.iter().map(|&(i, j)| plucker_y(i, j)).collect();
    let mut monos: Vec<Q> = vec![MultiPoly::one(Rationals)];
    let mut starts = vec![0usize];
    for _ in 0..d {
        let mut next = Vec::new();
        let mut next_starts = Vec::new();
        for (m, &st) in monos.iter().zip(&starts) {
            for (k, y) in ys.iter().enumerate().skip(st) {
                next.push(m * y);
                next_starts.push(k);
            }
        }
        monos = next;
        starts = next_starts;
    }
    let mut col_of: HashMap<Monomial, usize> = HashMap::new();
    let mut rows = Vec::new();
    for m in &monos {
        let mut row = Vec::new();
        for (mono, c) in m.terms() {
            let n = col_of.len();
            row.push((*col_of.entry(mono.clone()).or_insert(n), c.clone()));
        }
        rows.push(row);
    }
    Ok(ExactMatrix::from_sparse(Rationals, col_of.len(), rows)?.rank())
}

/// Format a Θ-monomial as `Theta_1100*Theta_0011`.
pub fn format_theta_monomial(m: &[Vec<usize>]) -> String {
    m.iter()
        .map(|d| {
            format!(
                "Theta_{}",
                d.iter().map(|x| x.to_string()).collect::<String>()
            )
        })
        .collect::<Vec<_>>()
        .join("*")
}
