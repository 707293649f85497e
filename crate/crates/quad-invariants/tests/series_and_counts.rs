use exact_arith::{binomial, PrimeField};
use num_bigint::BigInt;
use proptest::prelude::*;
use quad_invariants::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// D(2, r, s) as the coefficient of x^{2s} in
/// Σ_i [x^{2i} C(r+i,i)² − x^{2i+1} C(r+i,i) C(r+i+1,i+1)] / (1 − x)^{r+1}.
fn representation_oracle(r: u64, s: u64) -> BigInt {
    let n = 2 * s;
    let mut total = BigInt::from(0);
    for k in 0..=n {
        let i = k / 2;
        let a = if k % 2 == 0 {
            binomial(r + i, i) * binomial(r + i, i)
        } else {
            -(binomial(r + i, i) * binomial(r + i + 1, i + 1))
        };
        total += a * binomial(n - k + r, r);
    }
    total
}

#[test]
fn even_closed_forms() {
    let s4 = hilbert_closed(4, HilbertVariant::Even).unwrap();
    assert_eq!(s4.numerator, ints(&[1, 3, 6, 10]));
    assert_eq!(s4.denominator_power, 12);
    assert_eq!(
        hilbert_closed(3, HilbertVariant::Even)
            .unwrap()
            .coefficients(3)[2],
        BigInt::from(55)
    );
    assert_eq!(
        hilbert_closed(4, HilbertVariant::Even)
            .unwrap()
            .coefficients(3)[1..],
        ints(&[15, 120])
    );
    assert!(matches!(
        hilbert_closed(5, HilbertVariant::Even),
        Err(QuadError::UnsupportedR(5))
    ));
    for r in 0..=4u64 {
        let c = hilbert_closed(r as usize, HilbertVariant::Even)
            .unwrap()
            .coefficients(9);
        for s in 0..9u64 {
            assert_eq!(c[s as usize], representation_oracle(r, s), "r={r} s={s}");
        }
    }
}

#[test]
fn even_closed_forms_match_lie_kernel() {
    for (r, smax) in [(1usize, 3u32), (2, 2), (3, 2), (4, 2)] {
        let c = hilbert_closed(r, HilbertVariant::Even)
            .unwrap()
            .coefficients(smax as usize + 1);
        for s in 0..=smax {
            let d = invariant_dimension(2, r, 2 * s, DEFAULT_SLICE_CAP)
                .unwrap()
                .dimension();
            assert_eq!(BigInt::from(d), c[s as usize], "r={r} s={s}");
        }
    }
}

#[test]
fn published_polynomial_forms() {
    let c3 = hilbert_closed(3, HilbertVariant::Even)
        .unwrap()
        .coefficients(10);
    let c4 = hilbert_closed(4, HilbertVariant::Even)
        .unwrap()
        .coefficients(10);
    let fact11: BigInt = (1..=11).map(BigInt::from).product();
    for s in 0..10u64 {
        let d3: BigInt = (5..=8).map(|i| binomial(s + i, 8)).sum();
        assert_eq!(c3[s as usize], d3);
        let d4 = binomial(s + 11, 11)
            + binomial(s + 10, 11) * 3
            + binomial(s + 9, 11) * 6
            + binomial(s + 8, 11) * 10;
        assert_eq!(c4[s as usize], d4);
        // Expanded form: ∏_{i=1}^{8}(s+i)·(20s³ + 105s² + 535s + 990)/11!.
        let prod: BigInt = (1..=8).map(|i| BigInt::from(s + i)).product();
        let si = BigInt::from(s);
        let cubic = BigInt::from(20) * &si * &si * &si
            + BigInt::from(105) * &si * &si
            + BigInt::from(535) * &si
            + 990;
        assert_eq!(&prod * cubic % &fact11, BigInt::from(0));
        assert_eq!(
            c4[s as usize],
            prod * (BigInt::from(20) * &si * &si * &si
                + BigInt::from(105) * &si * &si
                + BigInt::from(535) * &si
                + 990)
                / &fact11
        );
    }
}

#[test]
fn grassmannian_series() {
    let s = hilbert_closed(3, HilbertVariant::Grassmannian).unwrap();
    assert_eq!(s.numerator, ints(&[1, 1]));
    assert_eq!(s.denominator_power, 5);
    assert_eq!(s.coefficients(3), ints(&[1, 6, 20]));
    // 21 quadratic monomials in the six y_{ij}, one Plücker relation.
    assert_eq!(plucker_span_dimension(4, 2).unwrap(), 20);
    for (r, dmax) in [(2usize, 4usize), (3, 3), (4, 2)] {
        let c = hilbert_closed(r, HilbertVariant::Grassmannian)
            .unwrap()
            .coefficients(dmax + 1);
        for (d, cd) in c.iter().enumerate() {
            assert_eq!(
                BigInt::from(plucker_span_dimension(r + 1, d).unwrap()),
                *cd,
                "r={r} d={d}"
            );
        }
    }
}

#[test]
fn b0_g2() {
    let f = PrimeField::new(101).unwrap();
    // 4 = 2² is a nonzero square.
    assert_eq!(b0_count_g2(&f, 2), 2);
    assert_eq!(b0_count_g2(&f, 0), 1);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rep = b0_count(2, 101, 50, &mut rng).unwrap();
    assert_eq!(rep.max_count, 2);
    assert!(matches!(
        b0_count(2, 9, 5, &mut rng),
        Err(QuadError::BadField(9))
    ));
    assert!(matches!(
        b0_count(3, 3, 5, &mut rng),
        Err(QuadError::BadField(3))
    ));
    assert!(matches!(
        b0_count(3, 1009, 5, &mut rng),
        Err(QuadError::BadField(1009))
    ));
}

/// Exhaustive oracle for g = 2: all (q11, q12, q22) with Tr Q = Tr D,
/// Tr Q² = Tr D² and ν1 q11 + ν2 q22 = ν1 d11 + ν2 d22.
#[test]
fn b0_g2_brute_force() {
    let q = 13u64;
    for (d11, d12, d22, n1, n2) in [
        (1u64, 3u64, 5u64, 2u64, 7u64),
        (4, 0, 9, 1, 3),
        (0, 6, 2, 5, 11),
    ] {
        let tr2 = |a: u64, b: u64, c: u64| (a * a + 2 * b * b + c * c) % q;
        let mut count = 0;
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if (a + c) % q == (d11 + d22) % q
                        && tr2(a, b, c) == tr2(d11, d12, d22)
                        && (n1 * a + n2 * c) % q == (n1 * d11 + n2 * d22) % q
                    {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, b0_count_g2(&PrimeField::new(q).unwrap(), d12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn b0_g3_matches_brute_force(q in prop_oneof![Just(13u64), Just(17u64), Just(19u64)], a in 0u64..1000, b in 0u64..1000, c in 0u64..1000, nu in 0u64..1000) {
        let f = PrimeField::new(q).unwrap();
        let nu = 2 + nu % (q - 2);
        prop_assert_eq!(b0_count_g3(&f, a % q, b % q, c % q, nu), b0_count_g3_brute(&f, a % q, b % q, c % q, nu));
    }
}

#[test]
fn b0_g3_reaches_twelve() {
    for q in [101u64, 211] {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let rep = b0_count(3, q, 3000, &mut rng).unwrap();
        assert_eq!(rep.max_count, 12, "q={q}");
        assert!(rep.counts.iter().all(|&c| c <= 12));
    }
}
