//! The twelve acceptance criteria, run in order with one PASS/FAIL line each.
//! Everything is exact; there are no tolerances.

use conj_invariants as conj;
use delta_calculus::{canonical_delta, cp_poly, delta_bracket, frobenius_lift};
use exact_arith::{padic_log1p_scaled, PrimeField, Rationals, Ring, TruncatedPadic, Zpn};
use exact_linalg::ExactMatrix;
use multipoly::{Matrix, Monomial, MultiPoly, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;
use quad_invariants as quad;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serre_tate::{self as st, ExpansionParams};
use std::collections::HashMap;
use std::time::Instant;

type Q = MultiPoly<Rationals>;
type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

fn t(l: u16, i: u16, j: u16) -> Q {
    MultiPoly::var(Rationals, VarId::t(l, i, j))
}

fn coefficient_rank(polys: &[Q]) -> usize {
    let mut col: HashMap<Monomial, usize> = HashMap::new();
    let mut rows = Vec::new();
    for p in polys {
        let mut row = Vec::new();
        for (m, c) in p.terms() {
            let n = col.len();
            row.push((*col.entry(m.clone()).or_insert(n), c.clone()));
        }
        rows.push(row);
    }
    ExactMatrix::from_sparse(Rationals, col.len(), rows)
        .unwrap()
        .rank()
}

fn random_poly(ring: Zpn, rng: &mut ChaCha8Rng) -> MultiPoly<Zpn> {
    let vars = [
        VarId::z(0, 0),
        VarId::z(1, 0),
        VarId::z(0, 1),
        VarId::z(1, 1),
    ];
    let n = rng.gen_range(1..=4);
    MultiPoly::from_terms(
        ring,
        (0..n)
            .map(|_| {
                let m = Monomial::from_factors(vars.iter().map(|&v| (v, rng.gen_range(0..3))));
                (m, rng.gen_range(0..ring.modulus()))
            })
            .collect::<Vec<_>>(),
    )
}

fn lower(f: &MultiPoly<Zpn>) -> MultiPoly<Zpn> {
    let r = *f.ring();
    let low = r.lower(1).unwrap();
    f.map_coeffs(low, |c| r.reduce_to(*c, &low))
}

fn delta_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pairs = 0;
    for p in [2u64, 3, 5] {
        for n in [2u32, 3] {
            // δ loses one digit: inputs mod p^{N+1}, identities mod p^N
            let ring = Zpn::new(p, n + 1).unwrap();
            for _ in 0..100 {
                let (f, g) = (random_poly(ring, &mut rng), random_poly(ring, &mut rng));
                let (df, dg) = (
                    canonical_delta(&f).map_err(err)?,
                    canonical_delta(&g).map_err(err)?,
                );
                let (fl, gl) = (lower(&f), lower(&g));
                let pc = fl.ring().from_i64(p as i64);
                let sum = &(&df + &dg) + &cp_poly(&fl, &gl, p);
                ensure!(
                    canonical_delta(&(&f + &g)).map_err(err)? == sum,
                    "sum rule p={p} N={n}"
                );
                let prod = &(&(&fl.pow(p as u32) * &dg) + &(&gl.pow(p as u32) * &df))
                    + &(&df * &dg).scale(&pc);
                ensure!(
                    canonical_delta(&(&f * &g)).map_err(err)? == prod,
                    "product rule p={p} N={n}"
                );
                ensure!(
                    frobenius_lift(&fl, p) == &fl.pow(p as u32) + &df.scale(&pc),
                    "lift p={p} N={n}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} random pairs"))
}

fn bracket_identity() -> Outcome {
    let z = |i, l| MultiPoly::var(Rationals, VarId::z(i, l));
    for p in [2u64, 3, 5] {
        let got = delta_bracket(&z(0, 0), &z(1, 0), p).map_err(err)?;
        let want = &(&z(0, 0).pow(p as u32) * &z(1, 1)) - &(&z(1, 0).pow(p as u32) * &z(0, 1));
        ensure!(got == want, "p={p}: {got}");
    }
    Ok("p = 2, 3, 5".into())
}

fn dimensions() -> Outcome {
    let dim = |g, r, s2| -> Result<usize, String> {
        quad::invariant_dimension(g, r, s2, quad::DEFAULT_SLICE_CAP)
            .map(|b| b.dimension())
            .map_err(err)
    };
    let mut cases: Vec<(usize, usize, u32, u64)> =
        vec![(2, 1, 0, 1), (2, 2, 0, 1), (3, 1, 0, 1), (3, 2, 0, 1)];
    for s in 1..=4 {
        cases.push((2, 1, 2 * s, binom(s as u64 + 2, 2)));
    }
    for s in 1..=3 {
        cases.push((2, 2, 2 * s, binom(s as u64 + 5, 5)));
    }
    cases.extend([(2, 3, 2, 10), (2, 3, 4, 55), (2, 4, 2, 15), (2, 4, 4, 120)]);
    for s in 1..=2 {
        cases.push((3, 1, 2 * s, binom(3 + s as u64, s as u64)));
    }
    for r in 1..=3 {
        cases.push((2, r, 1, 0));
    }
    for &(g, r, s2, want) in &cases {
        let got = dim(g, r, s2)?;
        ensure!(
            got as u64 == want,
            "D({g},{r},{}/2) = {got}, expected {want}",
            s2
        );
    }
    Ok(format!("{} cases", cases.len()))
}

fn theta_independence() -> Outcome {
    for (g, r) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let thetas: Vec<Q> = quad::multidegrees(g, r)
            .iter()
            .map(|m| quad::theta(g, m))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let want = binom((g + r) as u64, r as u64) as usize;
        ensure!(thetas.len() == want, "({g},{r}): {} members", thetas.len());
        ensure!(coefficient_rank(&thetas) == want, "({g},{r}): dependent");
        ensure!(
            thetas.iter().all(|f| quad::is_lie_invariant(f, g)),
            "({g},{r}): not invariant"
        );
    }
    Ok("(2,1) (2,2) (2,3) (3,1) (3,2)".into())
}

fn jacobian_ranks() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let p = quad::RANK_PRIME;
    ensure!(p > 1 << 30, "field too small");
    for g in 2..=3 {
        let th = quad::pencil_thetas(g).map_err(err)?;
        let rank =
            quad::random_jacobian_rank(&th, &quad::t_vars(g, 1), p, 3, &mut rng).map_err(err)?;
        ensure!(rank == g + 1, "pencil g={g}: rank {rank}");
    }
    let all22: Vec<Q> = quad::multidegrees(2, 2)
        .iter()
        .map(|m| quad::theta(2, m).unwrap())
        .collect();
    let r22 =
        quad::random_jacobian_rank(&all22, &quad::t_vars(2, 2), p, 3, &mut rng).map_err(err)?;
    ensure!(r22 == 6, "T_(2,2) rank {r22}");
    let d3: Vec<Q> = quad::delta3_2_3()
        .iter()
        .map(|m| quad::theta(2, m).unwrap())
        .collect();
    let r23 = quad::random_jacobian_rank(&d3, &quad::t_vars(2, 3), p, 3, &mut rng).map_err(err)?;
    ensure!(d3.len() == 9 && r23 == 9, "T_(2,3) rank {r23}");
    Ok("pencils g+1, ranks 6 and 9".into())
}

fn j_map() -> Outcome {
    for l in 0..3 {
        let det = &(&t(l, 1, 1) * &t(l, 2, 2)) - &t(l, 1, 2).pow(2);
        ensure!(
            quad::jmath(&det, 2).map_err(err)?.is_zero(),
            "ȷ(det T^({l})) ≠ 0"
        );
    }
    let th11 = quad::theta(2, &[1, 1]).map_err(err)?;
    // written out by hand
    let th11_hand = &(&(&t(0, 1, 1) * &t(1, 2, 2)) + &(&t(0, 2, 2) * &t(1, 1, 1)))
        - &(&t(0, 1, 2) * &t(1, 1, 2)).scale_int(2);
    ensure!(th11 == th11_hand, "Θ_11 = {th11}");
    // y_01 = u_0 v_1 − v_0 u_1
    let (u, v) = (
        |i| MultiPoly::var(Rationals, VarId::u(i)),
        |i| MultiPoly::var(Rationals, VarId::v(i)),
    );
    let y01 = &(&u(0) * &v(1)) - &(&v(0) * &u(1));
    ensure!(quad::plucker_y(0, 1) == y01, "y_01 convention");
    ensure!(quad::jmath(&th11, 2).map_err(err)? == y01.pow(2), "ȷ(Θ_11)");
    ensure!(quad::xi_lift(&[0, 1]).map_err(err)? == th11, "Ξ_(0,1)");
    ensure!(
        quad::xi_lift(&[0, 1, 2]).map_err(err)? == quad::upsilon(2, &[0, 1, 2]).map_err(err)?,
        "Ξ_(0,1,2)"
    );
    Ok("ȷ(det) = 0, ȷ(Θ_11) = y01², Ξ lifts".into())
}

fn relations() -> Outcome {
    let c = quad::cyclic_relation(&[0, 1, 2, 3], 3).map_err(err)?;
    ensure!(c.holds, "cyclic relation: {} vs {}", c.lhs, c.rhs);
    let pl = quad::plucker_relation([0, 1, 2, 3]).map_err(err)?;
    ensure!(pl.kernel_dim == 1, "kernel dimension {}", pl.kernel_dim);
    ensure!(pl.j_image_vanishes, "ȷ-image of the quartic");
    Ok(format!("kernel dim 1 on a slice of {}", pl.slice_size))
}

fn hilbert() -> Outcome {
    let h = quad::hilbert_closed(4, quad::HilbertVariant::Even).map_err(err)?;
    ensure!(
        h.numerator == [1, 3, 6, 10].map(BigInt::from),
        "numerator {:?}",
        h.numerator
    );
    let gr = quad::hilbert_closed(3, quad::HilbertVariant::Grassmannian)
        .map_err(err)?
        .coefficients(3);
    ensure!(gr == [1, 6, 20].map(BigInt::from), "Grassmannian {gr:?}");
    // 6 Plücker coordinates give binom(7, 2) = 21 quadratic monomials, one relation
    let brute = quad::plucker_span_dimension(4, 2).map_err(err)?;
    ensure!(brute as u64 == binom(7, 2) - 1, "brute force {brute}");
    Ok("(1,3,6,10); 1, 6, 20 = 21 − 1".into())
}

fn brute_g3(q: u64, a: u64, b: u64, c: u64, nu: u64) -> usize {
    let m = |x: u64, y: u64| x * y % q;
    let rhs1 = (m(a, a) + m(b, b) + m(c, c)) % q;
    let rhs2 = (m(b, b) + m(nu, m(c, c))) % q;
    let rhs3 = (m(m(a, b), c) + q - m(c, c)) % q;
    let mut n = 0;
    for x in 0..q {
        for y in 0..q {
            let (xx, yy) = (m(x, x), m(y, y));
            for z in 0..q {
                let zz = m(z, z);
                if (xx + yy + zz) % q == rhs1
                    && (yy + m(nu, zz)) % q == rhs2
                    && (m(m(x, y), z) + q - zz) % q == rhs3
                {
                    n += 1;
                }
            }
        }
    }
    n
}

fn b0_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for q in [101u64, 211] {
        let rep = quad::b0_count(2, q, 500, &mut rng).map_err(err)?;
        ensure!(rep.max_count == 2, "g=2 q={q}: max {}", rep.max_count);
    }
    for q in [101u64, 211] {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let rep = quad::b0_count(3, q, 3000, &mut rng).map_err(err)?;
        ensure!(
            rep.counts.iter().all(|&c| c <= 12),
            "g=3 q={q}: count above 12"
        );
        ensure!(rep.max_count == 12, "g=3 q={q}: max {}", rep.max_count);
    }
    let f = PrimeField::new(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..12 {
        let (a, b, c, nu) = (
            rng.gen_range(0..101),
            rng.gen_range(0..101),
            rng.gen_range(0..101),
            rng.gen_range(2..101),
        );
        let got = quad::b0_count_g3(&f, a, b, c, nu);
        ensure!(
            got == brute_g3(101, a, b, c, nu),
            "brute force mismatch at ({a},{b},{c},{nu})"
        );
    }
    Ok("max 2 and 12 over 3000 seeded draws, brute force agrees".into())
}

fn conjugation() -> Outcome {
    let f = PrimeField::new(conj::RANK_PRIME).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for g in 2..=4 {
        for q in 1..g {
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
            let (a, b) = (block(&mut rng), block(&mut rng));
            ensure!(
                conj::phi_q(&a, &b, q).map_err(err)? == 0,
                "block pair g={g} q={q}"
            );
        }
    }
    for k in 0..20 {
        let g = 2 + k % 3;
        let d = conj::random_diagonal(f, g, &mut rng);
        let c = conj::cycle_permutation(f, g);
        let cinv = c.inverse().unwrap();
        for q in 1..g {
            let phi = conj::phi_q(&d, &c, q).map_err(err)?;
            ensure!(phi != 0, "diagonal/cycle pair {k} g={g} q={q}");
            // [D, C] = (D − C D C⁻¹) C
            let conj_d = c.try_mul(&d).unwrap().try_mul(&cinv).unwrap();
            let diff = d
                .wedge_power(q)
                .unwrap()
                .try_sub(&conj_d.wedge_power(q).unwrap())
                .unwrap();
            let want = f.mul(
                &diff.det().unwrap(),
                &c.wedge_power(q).unwrap().det().unwrap(),
            );
            ensure!(phi == want, "factorization g={g} q={q}");
        }
    }
    let c =
        conj::RankClaim::compute(conj::RankKind::Conjugation, 2, 2, 3, 3, &mut rng).map_err(err)?;
    // (n − 1)g² + 1 at g = n = 2
    ensure!(c.rank == 5 && c.holds(), "trace words rank {}", c.rank);
    let c =
        conj::RankClaim::compute(conj::RankKind::PulledBack, 2, 2, 3, 3, &mut rng).map_err(err)?;
    // (n − 1)g(g + 1)/2 + g at g = n = 2
    ensure!(c.rank == 5 && c.holds(), "pulled-back rank {}", c.rank);
    Ok("block pairs 0, 20 pairs nonzero, ranks 5 and 5".into())
}

/// Σ_k (−1)^{k+1} p^{k−1}/k mod p^N.
fn scaled_log_of_one(p: u64, n: u32) -> u64 {
    let modulus = BigInt::from(p).pow(n);
    let mut acc = BigRational::from_integer(0.into());
    for k in 1..=(4 * n as i64 + 8) {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        acc += BigRational::new(
            BigInt::from(sign) * BigInt::from(p).pow(k as u32 - 1),
            BigInt::from(k),
        );
    }
    let inv = acc.denom().modinv(&modulus).unwrap();
    let r = ((acc.numer() * inv) % &modulus + &modulus) % &modulus;
    u64::try_from(r).unwrap()
}

fn expansions() -> Outcome {
    for p in [2u64, 3, 5] {
        let params = ExpansionParams::new(2, p, 2, 3, 2).map_err(err)?;
        let ring = params.ring();
        let s = st::psi(params).map_err(err)?;
        let sp = st::phi_twist(&s, 1).map_err(err)?;
        let tz = |l, i, j| MultiPoly::var(ring, VarId::t(l, i, j));
        for (i, j) in [(1u16, 1u16), (1, 2), (2, 2)] {
            let (a, b) = (i as usize - 1, j as usize - 1);
            ensure!(
                st::club(s.get(a, b), 1) == &tz(1, i, j) - &tz(0, i, j),
                "linear part of Ψ, p={p}"
            );
            let want = (&tz(2, i, j) - &tz(1, i, j)).scale_int(p as i64);
            ensure!(
                st::club(sp.get(a, b), 1) == want,
                "linear part of Ψ^φ, p={p}"
            );
        }
    }
    let mut grid = 0;
    for p in [2u64, 3, 5] {
        for n in [2u32, 3] {
            for d in [3u32, 4] {
                let params = ExpansionParams::new(2, p, n, d, 3).map_err(err)?;
                for a in 1..=3 {
                    ensure!(
                        st::route_check(params, a).map_err(err)?,
                        "routes p={p} N={n} D={d} a={a}"
                    );
                }
                for a in [2, 3] {
                    ensure!(
                        st::bracket_sum_check(params, a).map_err(err)?,
                        "bracket sum p={p} N={n} D={d} a={a}"
                    );
                }
                ensure!(
                    st::key_identity_check(params).map_err(err)?,
                    "key identity p={p} N={n} D={d}"
                );
                grid += 1;
            }
        }
    }
    for p in [2u64, 3] {
        for n in 1..=3 {
            let want = scaled_log_of_one(p, n);
            ensure!(
                st::psi_scalar_at_zero(p, n, 1).map_err(err)? == want,
                "ψ(0,1) p={p} N={n}"
            );
            let one = TruncatedPadic::new(p, n, 1).unwrap();
            ensure!(
                padic_log1p_scaled(&one).residue() == want,
                "log helper p={p} N={n}"
            );
        }
    }
    let c = st::cyclic_expansion_check(&[0, 1, 2, 3], 2, 2, 3, 4).map_err(err)?;
    ensure!(c.equal, "cyclic product (0,1,2,3) mod 3");
    ensure!(c.symbolic_nonzero, "y_2 vanishes mod 3");
    Ok(format!(
        "{grid} grid cells; cyclic (0,1,2,3) equal, series status {:?}",
        c.status
    ))
}

fn spade_club() -> Outcome {
    let det = &(&t(0, 1, 1) * &t(0, 2, 2)) - &t(0, 1, 2).pow(2);
    let th11 = quad::theta(2, &[1, 1]).map_err(err)?;
    for (name, f) in [("det T", &det), ("Θ_11", &th11)] {
        for r in [1, 2] {
            for p in [2u64, 3, 5] {
                let c = st::check_spade_club(f, r, 2, p).map_err(err)?;
                ensure!(c.holds, "{name} r={r} p={p}: {} vs {}", c.lhs, c.rhs);
            }
        }
    }
    // the right side for Θ_11 written out: Θ_11(T, T' − T)
    let want = &(&(&t(0, 1, 1) * &(&t(1, 2, 2) - &t(0, 2, 2)))
        + &(&t(0, 2, 2) * &(&t(1, 1, 1) - &t(0, 1, 1))))
        - &(&t(0, 1, 2) * &(&t(1, 1, 2) - &t(0, 1, 2))).scale_int(2);
    ensure!(
        st::check_spade_club(&th11, 1, 2, 3).map_err(err)?.rhs == want,
        "explicit form"
    );
    Ok("det T and Θ_11, r = 1, 2".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("delta axioms", delta_axioms),
        ("bracket identity", bracket_identity),
        ("invariant dimensions", dimensions),
        ("theta count and independence", theta_independence),
        ("jacobian ranks", jacobian_ranks),
        ("j-map and Xi lifts", j_map),
        ("cyclic and Plucker relations", relations),
        ("Hilbert closed forms", hilbert),
        ("b0 counts", b0_counts),
        ("conjugation invariants", conjugation),
        ("expansion engine", expansions),
        ("spade and club", spade_club),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = run();
        let secs = start.elapsed().as_secs_f64();
        match &res {
            Ok(msg) => println!("criterion {:>2} {name}: PASS ({msg}) [{secs:.1}s]", k + 1),
            Err(msg) => {
                println!("criterion {:>2} {name}: FAIL ({msg}) [{secs:.1}s]", k + 1);
                failed.push(k + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
