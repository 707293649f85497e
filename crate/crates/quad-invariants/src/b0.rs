use crate::QuadError;
use exact_arith::{is_prime_u64, PrimeField, Ring};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B0Report {
    pub g: usize,
    pub q: u64,
    pub counts: Vec<usize>,
    pub max_count: usize,
}

fn check_field(q: u64, g: usize) -> Result<PrimeField, QuadError> {
    if !is_prime_u64(q) || q.is_multiple_of(2) || q.is_multiple_of(3) || (g == 3 && q > 1000) {
        return Err(QuadError::BadField(q));
    }
    PrimeField::new(q).map_err(|_| QuadError::BadField(q))
}

fn sqrts(f: &PrimeField, a: u64) -> Vec<u64> {
    match f.sqrt(a) {
        None => vec![],
        Some(0) => vec![0],
        Some(r) => vec![r, f.neg(&r)],
    }
}

/// g = 2 after the reductions q11 = d11, q22 = d22: solutions of
/// Tr(Q²) = Tr(D²), i.e. q12² = d12².
pub fn b0_count_g2(f: &PrimeField, d12: u64) -> usize {
    sqrts(f, f.mul(&d12, &d12)).len()
}

/// g = 3: solutions (x, y, z) ∈ F_q³ of
///   x² + y² + z² = α² + β² + γ²,
///   y² + ν z² = β² + ν γ²,
///   x y z − z² = α β γ − γ².
pub fn b0_count_g3(f: &PrimeField, alpha: u64, beta: u64, gamma: u64, nu: u64) -> usize {
    let sq = |a: u64| f.mul(&a, &a);
    let abg = f.mul(&f.mul(&alpha, &beta), &gamma);
    let s1 = f.add(&f.add(&sq(alpha), &sq(beta)), &sq(gamma));
    let s2 = f.add(&sq(beta), &f.mul(&nu, &sq(gamma)));
    let s3 = f.sub(&abg, &sq(gamma));
    let mut count = 0;
    for z in 0..f.order() {
        let z2 = sq(z);
        let y2 = f.sub(&s2, &f.mul(&nu, &z2));
        let x2 = f.sub(&f.sub(&s1, &y2), &z2);
        for y in sqrts(f, y2) {
            for x in sqrts(f, x2) {
                if f.sub(&f.mul(&f.mul(&x, &y), &z), &z2) == s3 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Exhaustive count over F_q³, for cross-checking `b0_count_g3`.
pub fn b0_count_g3_brute(f: &PrimeField, alpha: u64, beta: u64, gamma: u64, nu: u64) -> usize {
    let sq = |a: u64| f.mul(&a, &a);
    let rhs1 = f.add(&f.add(&sq(alpha), &sq(beta)), &sq(gamma));
    let rhs2 = f.add(&sq(beta), &f.mul(&nu, &sq(gamma)));
    let rhs3 = f.sub(&f.mul(&f.mul(&alpha, &beta), &gamma), &sq(gamma));
    let mut count = 0;
    for x in 0..f.order() {
        for y in 0..f.order() {
            for z in 0..f.order() {
                if f.add(&f.add(&sq(x), &sq(y)), &sq(z)) == rhs1
                    && f.add(&sq(y), &f.mul(&nu, &sq(z))) == rhs2
                    && f.sub(&f.mul(&f.mul(&x, &y), &z), &sq(z)) == rhs3
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Per-draw solution counts for random parameters over F_q.
pub fn b0_count(
    g: usize,
    q: u64,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<B0Report, QuadError> {
    let f = check_field(q, g)?;
    let counts: Vec<usize> = match g {
        2 => (0..trials)
            .map(|_| b0_count_g2(&f, rng.gen_range(0..q)))
            .collect(),
        3 => (0..trials)
            .map(|_| {
                let (a, b, c) = (
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                );
                let nu = rng.gen_range(2..q);
                b0_count_g3(&f, a, b, c, nu)
            })
            .collect(),
        _ => return Err(QuadError::WrongG(g)),
    };
    let max_count = counts.iter().copied().max().unwrap_or(0);
    Ok(B0Report {
        g,
        q,
        counts,
        max_count,
    })
}
