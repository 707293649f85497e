use delta_calculus::*;
use exact_arith::{fermat_quotient, Rationals, Ring, TruncatedPadic, Zpn};
use multipoly::{Monomial, MultiPoly, VarId};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn zp(p: u64, n: u32) -> Zpn {
    Zpn::new(p, n).unwrap()
}

fn z(i: u16, l: u16) -> VarId {
    VarId::z(i, l)
}

fn qz(i: u16, l: u16) -> MultiPoly<Rationals> {
    MultiPoly::var(Rationals, z(i, l))
}

fn lower(f: &MultiPoly<Zpn>) -> MultiPoly<Zpn> {
    let r = *f.ring();
    let low = r.lower(1).unwrap();
    f.map_coeffs(low, |c| r.reduce_to(*c, &low))
}

#[test]
fn sum_rule_is_cp() {
    for p in [2u64, 3, 5] {
        let r = zp(p, 4);
        let x = MultiPoly::var(r, z(0, 0));
        let y = MultiPoly::var(r, z(1, 0));
        let lhs = &(&canonical_delta(&(&x + &y)).unwrap() - &canonical_delta(&x).unwrap())
            - &canonical_delta(&y).unwrap();
        // Oracle: (x^p + y^p - (x+y)^p)/p straight from the binomial theorem.
        let mut want = MultiPoly::zero(r.lower(1).unwrap());
        for k in 1..p {
            let c = -exact_arith::binomial(p, k) / BigInt::from(p);
            let m = Monomial::from_factors([(z(0, 0), k as u32), (z(1, 0), (p - k) as u32)]);
            want.add_term(m, want.ring().from_int(&c));
        }
        assert_eq!(lhs, want, "p={p}");
    }
}

#[test]
fn frobenius_of_variable() {
    for p in [2u64, 3, 5] {
        let y = qz(0, 0);
        let want = &y.pow(p as u32) + &qz(0, 1).scale_int(p as i64);
        assert_eq!(frobenius_lift(&y, p), want);
        let yp = frobenius_lift(&qz(0, 2), p);
        assert_eq!(yp, &qz(0, 2).pow(p as u32) + &qz(0, 3).scale_int(p as i64));
    }
}

#[test]
fn delta_on_constants_is_fermat_quotient() {
    for (p, n) in [(2u64, 5u32), (3, 4), (5, 3)] {
        let r = zp(p, n);
        for c in 0..r.modulus().min(200) {
            let d = canonical_delta(&MultiPoly::constant(r, c)).unwrap();
            let fq = fermat_quotient(&TruncatedPadic::in_ring(r, c)).unwrap();
            assert_eq!(d.constant_term(), fq.residue(), "p={p} c={c}");
            assert!(d.is_constant());
        }
    }
}

#[test]
fn bracket_examples() {
    for p in [2u64, 3, 5] {
        let b = delta_bracket(&qz(0, 0), &qz(1, 0), p).unwrap();
        let want = &(&qz(0, 0).pow(p as u32) * &qz(1, 1)) - &(&qz(1, 0).pow(p as u32) * &qz(0, 1));
        assert_eq!(b, want);

        let f = &qz(0, 0) + &qz(1, 1).pow(2);
        assert!(delta_bracket(&f, &f, p).unwrap().is_zero());

        // (z^p φ(2z) - (2z)^p φ(z))/p = ((2 - 2^p)/p) z^p z^φ, z^φ = z^p + p z'.
        let two_z = qz(0, 0).scale_int(2);
        let c = BigRational::new(
            BigInt::from(2) - BigInt::from(2).pow(p as u32),
            BigInt::from(p),
        );
        let zphi = &qz(0, 0).pow(p as u32) + &qz(0, 1).scale_int(p as i64);
        let want = (&qz(0, 0).pow(p as u32) * &zphi).scale(&c);
        assert_eq!(delta_bracket(&qz(0, 0), &two_z, p).unwrap(), want);
    }
}

#[test]
fn bracket_padic_matches_rational() {
    let p = 3;
    let r = zp(p, 3);
    let b1 = &qz(0, 0).pow(2) + &(&qz(1, 0) * &qz(0, 0)).scale_int(5);
    let b2 = &qz(1, 0).pow(2).scale_int(-2) + &qz(0, 0).pow(2);
    let rat = delta_bracket(&b1, &b2, p).unwrap();
    let pad =
        delta_bracket_padic(&reduce_poly(&b1, r).unwrap(), &reduce_poly(&b2, r).unwrap()).unwrap();
    assert_eq!(pad, reduce_poly(&rat, r.lower(1).unwrap()).unwrap());
}

#[test]
fn decomposition_examples() {
    for p in [2u64, 3, 5] {
        let comps = delta_homog_decompose(&qz(0, 1), p, &Weight::int(1)).unwrap();
        let inv_p = BigRational::new(BigInt::from(1), BigInt::from(p));
        let wphi = Weight::phi_pow(1, 1);
        let wp = Weight::int(p as i64);
        assert_eq!(comps.len(), 2);
        assert_eq!(
            comps[&wphi],
            MultiPoly::var(Rationals, VarId::zphi(0, 1)).scale(&inv_p)
        );
        assert_eq!(
            comps[&wp],
            MultiPoly::var(Rationals, VarId::zphi(0, 0))
                .pow(p as u32)
                .scale(&inv_p)
                .neg()
        );
        for c in comps.values() {
            assert!(!is_p_integral(&from_phi_coords(c, p).unwrap(), p));
        }
        assert!(!in_s_n(&qz(0, 1), p, &wphi).unwrap());

        assert!(in_s_n(&qz(0, 0), p, &Weight::int(1)).unwrap());
        let b = &(&qz(0, 0).pow(p as u32) * &qz(1, 1)) - &(&qz(1, 0).pow(p as u32) * &qz(0, 1));
        assert!(in_s_n(&b, p, &(&wphi + &wp)).unwrap());
        assert!(!in_s_n(&b, p, &wphi).unwrap());
    }
}

#[test]
fn weight_multiplier_rescales() {
    let m = Weight::new(vec![1, 1]);
    let comps = delta_homog_decompose(&qz(0, 0).pow(2), 3, &m).unwrap();
    assert_eq!(
        comps.keys().cloned().collect::<Vec<_>>(),
        vec![Weight::new(vec![2, 2])]
    );
}

#[test]
fn phi_coords_roundtrip() {
    let p = 3;
    let f = &(&qz(0, 2) * &qz(1, 0)) + &qz(1, 1).pow(2).scale_int(7);
    assert_eq!(
        from_phi_coords(&to_phi_coords(&f, p).unwrap(), p).unwrap(),
        f
    );
    assert!(matches!(
        to_phi_coords(&MultiPoly::var(Rationals, VarId::t(0, 1, 1)), p),
        Err(DeltaError::UnsupportedVariable(_))
    ));
}

fn vars() -> Vec<VarId> {
    vec![z(0, 0), z(1, 0), z(0, 1)]
}

fn padic_poly(r: Zpn) -> impl Strategy<Value = MultiPoly<Zpn>> {
    prop::collection::vec((prop::collection::vec(0u32..3, 3), 0..r.modulus()), 0..4).prop_map(
        move |terms| {
            MultiPoly::from_terms(
                r,
                terms
                    .into_iter()
                    .map(|(es, c)| (Monomial::from_factors(vars().into_iter().zip(es)), c)),
            )
        },
    )
}

fn ring_strategy() -> impl Strategy<Value = Zpn> {
    prop_oneof![
        Just(zp(2, 3)),
        Just(zp(2, 4)),
        Just(zp(3, 2)),
        Just(zp(3, 3)),
        Just(zp(5, 2))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_agrees_with_lift((f, _g) in ring_strategy().prop_flat_map(|r| (padic_poly(r), padic_poly(r)))) {
        prop_assert_eq!(canonical_delta(&f).unwrap(), delta_via_lift(&f).unwrap());
    }

    #[test]
    fn dax_rules((f, g) in ring_strategy().prop_flat_map(|r| (padic_poly(r), padic_poly(r)))) {
        let p = f.ring().prime();
        let (df, dg) = (canonical_delta(&f).unwrap(), canonical_delta(&g).unwrap());
        let (fl, gl) = (lower(&f), lower(&g));
        let sum = &(&df + &dg) + &cp_poly(&fl, &gl, p);
        prop_assert_eq!(canonical_delta(&(&f + &g)).unwrap(), sum);
        let pc = fl.ring().from_i64(p as i64);
        let prod = &(&(&fl.pow(p as u32) * &dg) + &(&gl.pow(p as u32) * &df)) + &(&df * &dg).scale(&pc);
        prop_assert_eq!(canonical_delta(&(&f * &g)).unwrap(), prod);
    }

    #[test]
    fn frobenius_is_ring_hom_and_lifts_frobenius((f, g) in ring_strategy().prop_flat_map(|r| (padic_poly(r), padic_poly(r)))) {
        let p = f.ring().prime();
        prop_assert_eq!(frobenius_lift(&(&f * &g), p), &frobenius_lift(&f, p) * &frobenius_lift(&g, p));
        let diff = &frobenius_lift(&f, p) - &f.pow(p as u32);
        prop_assert!(diff.terms().all(|(_, c)| c % p == 0));
        // φ(F) = F^p + p δF at precision N.
        let fl = lower(&f);
        let pc = fl.ring().from_i64(p as i64);
        let rhs = &fl.pow(p as u32) + &canonical_delta(&f).unwrap().scale(&pc);
        prop_assert_eq!(frobenius_lift(&fl, p), rhs);
    }

    #[test]
    fn bracket_of_equal_weight_is_homogeneous(
        d in 1u32..3,
        c1 in prop::collection::vec(-4i64..5, 3),
        c2 in prop::collection::vec(-4i64..5, 3),
        p in prop_oneof![Just(2u64), Just(3u64)],
    ) {
        // Degree-d forms in z_0, z_1 have weight d.
        let form = |cs: &[i64]| {
            let mut f = MultiPoly::zero(Rationals);
            for (k, c) in cs.iter().enumerate().take(d as usize + 1) {
                let m = Monomial::from_factors([(z(0, 0), k as u32), (z(1, 0), d - k as u32)]);
                f.add_term(m, Rationals.from_i64(*c));
            }
            f
        };
        let (b1, b2) = (form(&c1), form(&c2));
        let w = Weight::int(d as i64);
        let br = delta_bracket(&b1, &b2, p).unwrap();
        let target = &(&Weight::phi_pow(1, 1) + &Weight::int(p as i64)) * &w;
        prop_assert!(in_s_n(&br, p, &target).unwrap());
    }
}
