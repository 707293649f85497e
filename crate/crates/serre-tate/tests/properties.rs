use exact_arith::Rationals;
use multipoly::{MultiPoly, VarId};
use proptest::prelude::*;
use serre_tate::*;

fn params_strategy() -> impl Strategy<Value = ExpansionParams> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        1u32..=3,
        2u32..=4,
        1usize..=2,
    )
        .prop_map(|(p, n, d, g)| ExpansionParams::new(g, p, n, d, 3).unwrap())
}

fn shear() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (-2i64..=2, -2i64..=2, any::<bool>()).prop_map(|(a, b, swap)| {
        let m = vec![vec![1, a], vec![b, 1 + a * b]];
        if swap {
            vec![m[1].clone(), m[0].clone()]
        } else {
            m
        }
    })
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..2)
        .map(|i| {
            (0..2)
                .map(|j| (0..2).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twists_compose(params in params_strategy(), a in 0u16..=1, b in 0u16..=1) {
        let s = psi(params).unwrap();
        let lhs = phi_twist(&phi_twist(&s, a).unwrap(), b).unwrap();
        prop_assert_eq!(lhs, phi_twist(&s, a + b).unwrap());
    }

    #[test]
    fn expansions_are_symmetric(params in params_strategy(), r in 1u16..=3) {
        let s = expansion_basic(params, BasicKind::FR(r)).unwrap();
        prop_assert_eq!(s.matrix.transpose(), s.matrix);
    }

    #[test]
    fn hecke_action_composes(l1 in shear(), l2 in shear()) {
        // a single variable, so (Λ1Λ2)·T = Λ1·(Λ2·T) can be compared directly
        let ring = exact_arith::Zpn::new(3, 2).unwrap();
        let f = MultiPoly::var(ring, VarId::t(0, 1, 2)).truncated(3);
        let once = hecke_act(&f, &mat_mul(&l1, &l2), 3, 3).unwrap();
        let twice = hecke_act(&hecke_act(&f, &l1, 3, 3).unwrap(), &l2, 3, 3).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn diamond_heart_agree(p in prop::sample::select(vec![2u64, 3, 5]), c in -3i64..=3) {
        let params = ExpansionParams::new(2, p, 2, 2, 2).unwrap();
        let t = |l, i, j| MultiPoly::var(Rationals, VarId::t(l, i, j));
        let f = &(&t(0, 1, 1) * &t(1, 2, 2)).scale_int(c) + &(&t(0, 1, 2) * &t(1, 1, 2));
        let fd = diamond_realize(&f, 2, params).unwrap();
        let heart = delta_calculus::reduce_poly(&heart_diamond(&f, 2, 2, p).unwrap(), params.ring()).unwrap();
        prop_assert_eq!(club(&fd, 2), heart);
    }
}
