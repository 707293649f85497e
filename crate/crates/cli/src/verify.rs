//! Verification suites: each check is an identity that must hold exactly.

use crate::Suite;
use conj_invariants as conj;
use delta_calculus::{canonical_delta, cp_poly, delta_bracket, frobenius_lift};
use exact_arith::{binomial, PrimeField, Rationals, Ring, Zpn};
use multipoly::{Matrix, Monomial, MultiPoly, VarId};
use num_bigint::BigInt;
use quad_invariants as quad;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serre_tate::{self as st, ExpansionParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub source: &'static str,
}

fn check(name: impl Into<String>, passed: bool, source: &'static str) -> Check {
    Check {
        name: name.into(),
        passed,
        source,
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

pub fn run_suite(
    suite: Suite,
    p: u64,
    prec: u32,
    deg: u32,
    seed: u64,
) -> Result<Vec<Check>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if matches!(suite, Suite::Delta | Suite::All) {
        out.extend(delta_suite(&mut rng)?);
    }
    if matches!(suite, Suite::Quadratic | Suite::All) {
        out.extend(quadratic_suite(&mut rng)?);
    }
    if matches!(suite, Suite::Conjugation | Suite::All) {
        out.extend(conjugation_suite(&mut rng)?);
    }
    if matches!(suite, Suite::Expansions | Suite::All) {
        out.extend(expansion_suite(p, prec, deg)?);
    }
    Ok(out)
}

/// A random polynomial in z_0, z_1, z_0' with up to four terms.
pub fn random_delta_poly(ring: Zpn, rng: &mut impl Rng) -> MultiPoly<Zpn> {
    let vars = [VarId::z(0, 0), VarId::z(1, 0), VarId::z(0, 1)];
    let n = rng.gen_range(0..=4);
    MultiPoly::from_terms(
        ring,
        (0..n).map(|_| {
            let m = Monomial::from_factors(vars.iter().map(|&v| (v, rng.gen_range(0..3))));
            (m, rng.gen_range(0..ring.modulus()))
        }),
    )
}

fn lower(f: &MultiPoly<Zpn>) -> MultiPoly<Zpn> {
    let r = *f.ring();
    let low = r.lower(1).expect("precision at least 2");
    f.map_coeffs(low, |c| r.reduce_to(*c, &low))
}

/// The sum and product rules for δ and φ(F) = F^p + pδF on one pair over Z/p^N, with δ landing in
/// Z/p^{N−1}.
pub fn delta_axioms_hold(f: &MultiPoly<Zpn>, g: &MultiPoly<Zpn>) -> Result<bool, String> {
    let p = f.ring().prime();
    let (df, dg) = (
        canonical_delta(f).map_err(e)?,
        canonical_delta(g).map_err(e)?,
    );
    let (fl, gl) = (lower(f), lower(g));
    let pc = fl.ring().from_i64(p as i64);
    let sum = &(&df + &dg) + &cp_poly(&fl, &gl, p);
    let prod = &(&(&fl.pow(p as u32) * &dg) + &(&gl.pow(p as u32) * &df)) + &(&df * &dg).scale(&pc);
    let lift = &fl.pow(p as u32) + &df.scale(&pc);
    Ok(canonical_delta(&(f + g)).map_err(e)? == sum
        && canonical_delta(&(f * g)).map_err(e)? == prod
        && frobenius_lift(&fl, p) == lift)
}

fn delta_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        for n in [2u32, 3] {
            // δ drops one digit, so work at N + 1 to compare at N
            let ring = Zpn::new(p, n + 1).map_err(e)?;
            let mut ok = true;
            for _ in 0..100 {
                let (f, g) = (random_delta_poly(ring, rng), random_delta_poly(ring, rng));
                ok &= delta_axioms_hold(&f, &g)?;
            }
            out.push(check(
                format!("delta axioms, 100 pairs, p={p} N={n}"),
                ok,
                "p-derivation axioms",
            ));
        }
        let z = |i, l| MultiPoly::var(Rationals, VarId::z(i, l));
        let br = delta_bracket(&z(0, 0), &z(1, 0), p).map_err(e)?;
        let want = &(&z(0, 0).pow(p as u32) * &z(1, 1)) - &(&z(1, 0).pow(p as u32) * &z(0, 1));
        out.push(check(
            format!("bracket of coordinates, p={p}"),
            br == want,
            "δ-bracket of z_i, z_j",
        ));
    }
    Ok(out)
}

fn quadratic_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let dim = |g, r, s2| {
        quad::invariant_dimension(g, r, s2, quad::DEFAULT_SLICE_CAP)
            .map(|b| b.dimension())
            .map_err(e)
    };
    let b = |n: u64, k: u64| binomial(n, k).to_string().parse::<usize>().unwrap_or(0);
    let mut ok = dim(2, 2, 0)? == 1 && dim(3, 1, 0)? == 1;
    for s in 1..=3u32 {
        ok &= dim(2, 1, 2 * s)? == b(s as u64 + 2, 2);
    }
    for s in 1..=2u32 {
        ok &= dim(2, 2, 2 * s)? == b(s as u64 + 5, 5);
    }
    ok &= dim(3, 1, 2)? == 4;
    for r in 1..=3 {
        ok &= dim(2, r, 1)? == 0;
    }
    out.push(check("invariant dimensions", ok, "dimension closed forms"));

    let mut ok = true;
    for (g, r) in [(2, 1), (2, 2), (3, 1)] {
        let ms = quad::multidegrees(g, r);
        ok &= ms.len() as u64 == quad::theta_count(g, r);
        for m in &ms {
            ok &= quad::is_lie_invariant(&quad::theta(g, m).map_err(e)?, g);
        }
    }
    out.push(check(
        "theta counts and invariance",
        ok,
        "partial polarizations",
    ));

    let h = quad::hilbert_closed(4, quad::HilbertVariant::Even).map_err(e)?;
    let want: Vec<BigInt> = [1, 3, 6, 10].iter().map(|&x| BigInt::from(x)).collect();
    out.push(check(
        "hilbert numerator r=4",
        h.numerator == want,
        "closed-form Hilbert series",
    ));
    let gr = quad::hilbert_closed(3, quad::HilbertVariant::Grassmannian)
        .map_err(e)?
        .coefficients(3);
    let brute = quad::plucker_span_dimension(4, 2).map_err(e)?;
    let ok = gr == [1, 6, 20].map(BigInt::from) && brute == 20;
    out.push(check(
        "grassmannian series r=3",
        ok,
        "Plücker coordinate ring",
    ));

    let th11 = quad::theta(2, &[1, 1]).map_err(e)?;
    let y01 = quad::plucker_y(0, 1);
    let det0 = quad::theta(2, &[2, 0]).map_err(e)?;
    let ok = quad::jmath(&det0, 2).map_err(e)?.is_zero()
        && quad::jmath(&th11, 2).map_err(e)? == y01.pow(2)
        && quad::xi_lift(&[0, 1]).map_err(e)? == th11
        && quad::xi_lift(&[0, 1, 2]).map_err(e)? == quad::upsilon(2, &[0, 1, 2]).map_err(e)?;
    out.push(check("j-map and Xi lifts", ok, "ȷ-map"));

    let rep = quad::b0_count(2, 101, 200, rng).map_err(e)?;
    out.push(check(
        "b0 g=2 maximum",
        rep.max_count == 2,
        "b0 solution counts",
    ));
    Ok(out)
}

fn conjugation_suite(rng: &mut ChaCha8Rng) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let f = PrimeField::new(conj::RANK_PRIME).map_err(e)?;
    let mut ok = true;
    for _ in 0..20 {
        let g = rng.gen_range(2..=4);
        let d = conj::random_diagonal(f, g, rng);
        let c = conj::cycle_permutation(f, g);
        for q in 1..g {
            ok &= conj::phi_q(&d, &c, q).map_err(e)? != 0;
        }
    }
    out.push(check(
        "Phi_q nonzero on diagonal/cycle pairs",
        ok,
        "commutator of wedge powers",
    ));

    let mut ok = true;
    for g in 2..=4 {
        for q in 1..g {
            // block diagonal pair: span(e_1..e_q) is invariant for both
            let block = |rng: &mut ChaCha8Rng| {
                let vals: Vec<u64> = (0..g * g).map(|_| rng.gen_range(0..f.order())).collect();
                Matrix::from_fn(f, g, |i, j| {
                    if (i < q) == (j < q) {
                        vals[i * g + j]
                    } else {
                        0
                    }
                })
            };
            let (a, b) = (block(rng), block(rng));
            ok &= conj::phi_q(&a, &b, q).map_err(e)? == 0;
        }
    }
    out.push(check(
        "Phi_q vanishes on block pairs",
        ok,
        "reducible pairs",
    ));

    for kind in [conj::RankKind::Conjugation, conj::RankKind::PulledBack] {
        let c = conj::RankClaim::compute(kind, 2, 2, 3, 3, rng).map_err(e)?;
        out.push(check(
            format!("{kind:?} trace-word rank (2,2)"),
            c.rank == 5 && c.holds(),
            "Jacobian rank",
        ));
    }
    Ok(out)
}

fn expansion_suite(p: u64, n: u32, d: u32) -> Result<Vec<Check>, String> {
    let mut out = Vec::new();
    let params = ExpansionParams::new(2, p, n, d, 3).map_err(e)?;
    let ring = params.ring();
    let s = st::psi(params).map_err(e)?;
    let sp = st::phi_twist(&s, 1).map_err(e)?;
    let tz = |l, i, j| MultiPoly::var(ring, VarId::t(l, i, j));
    let mut ok = true;
    for (i, j) in [(1u16, 1u16), (1, 2), (2, 2)] {
        let (a, b) = (i as usize - 1, j as usize - 1);
        ok &= st::club(s.get(a, b), 1) == &tz(1, i, j) - &tz(0, i, j);
        ok &= st::club(sp.get(a, b), 1) == (&tz(2, i, j) - &tz(1, i, j)).scale_int(p as i64);
    }
    out.push(check(
        "linear parts of Psi and its twist",
        ok,
        "lowest terms of Ψ^{φ^i}",
    ));

    let mut ok = true;
    for a in 1..=3 {
        ok &= st::route_check(params, a).map_err(e)?;
    }
    out.push(check(
        "direct and twisted routes agree, a<=3",
        ok,
        "Frobenius twist of Ψ",
    ));
    let ok = st::bracket_sum_check(params, 2).map_err(e)?
        && st::bracket_sum_check(params, 3).map_err(e)?;
    out.push(check(
        "bracket forms are sums of angle forms",
        ok,
        "expansion of f^[a]",
    ));
    out.push(check(
        "key identity",
        st::key_identity_check(params).map_err(e)?,
        "f^2 from f^1 and f^∂",
    ));

    let scalar = st::psi_scalar_at_zero(p, n, 1).map_err(e)?;
    let reference =
        exact_arith::padic_log1p_scaled(&exact_arith::TruncatedPadic::new(p, n, 1).map_err(e)?);
    out.push(check(
        "scalar value at (0, 1)",
        scalar == reference.residue(),
        "(1/p) log(1 + p)",
    ));

    let th11 = quad::theta(2, &[1, 1]).map_err(e)?;
    let det = quad::theta(2, &[2]).map_err(e)?;
    let mut ok = true;
    for f in [&det, &th11] {
        for r in [1, 2] {
            ok &= st::check_spade_club(f, r, 2, p).map_err(e)?.holds;
        }
    }
    out.push(check(
        "spade then club recovers the form",
        ok,
        "lowest terms of F^♠",
    ));

    let small = ExpansionParams::new(2, p, n, d.min(3), 2).map_err(e)?;
    let fd = st::diamond_realize(&th11, 2, small).map_err(e)?;
    let mut ok = true;
    for lam in [vec![vec![1, 1], vec![0, 1]], vec![vec![2, 1], vec![1, 1]]] {
        ok &= st::hecke_act(&fd, &lam, p, small.d).map_err(e)? == fd;
    }
    out.push(check(
        "diamond of Theta_{1,1} is SL_2(Z)-invariant",
        ok,
        "Hecke covariance",
    ));

    let c = st::cyclic_expansion_check(&[0, 1, 2, 3], 2, 2, p, d).map_err(e)?;
    out.push(check(
        "cyclic product mod p, levels (0,1,2,3)",
        c.equal && c.symbolic_nonzero,
        "mod p cyclic products",
    ));
    Ok(out)
}
