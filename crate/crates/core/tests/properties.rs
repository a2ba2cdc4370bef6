//! Randomized structural properties of the series arithmetic, driven by
//! proptest so shrinking reports minimal counterexamples.

use proptest::prelude::*;

use qseries::{ExactInts, Mod, Ring, Series, Sign};

fn coeff_vec(order: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-100i64..=100, order + 1..=order + 1)
}

fn arb_series() -> impl Strategy<Value = Series<ExactInts>> {
    (1usize..=40).prop_flat_map(|order| {
        coeff_vec(order).prop_map(|coeffs| Series::from_i64(&ExactInts, &coeffs))
    })
}

fn arb_pair() -> impl Strategy<Value = (Series<ExactInts>, Series<ExactInts>)> {
    (1usize..=40).prop_flat_map(|order| {
        (coeff_vec(order), coeff_vec(order)).prop_map(|(a, b)| {
            (
                Series::from_i64(&ExactInts, &a),
                Series::from_i64(&ExactInts, &b),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn addition_commutes((a, b) in arb_pair()) {
        let ab = a.add(&b).unwrap();
        let ba = b.add(&a).unwrap();
        prop_assert!(ab.first_mismatch(&ba, ab.order()).unwrap().is_none());
    }

    #[test]
    fn multiplication_commutes((a, b) in arb_pair()) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert!(ab.first_mismatch(&ba, ab.order()).unwrap().is_none());
    }

    #[test]
    fn subtraction_inverts_addition((a, b) in arb_pair()) {
        let back = a.add(&b).unwrap().sub(&b).unwrap();
        prop_assert!(back.first_mismatch(&a, back.order()).unwrap().is_none());
    }

    #[test]
    fn unit_inverts_when_constant_is_one(mut coeffs in (1usize..=40).prop_flat_map(coeff_vec)) {
        coeffs[0] = 1;
        let u = Series::from_i64(&ExactInts, &coeffs);
        let prod = u.mul(&u.invert().unwrap()).unwrap();
        let one = Series::one(&ExactInts, u.order());
        prop_assert!(prod.first_mismatch(&one, prod.order()).unwrap().is_none());
    }

    #[test]
    fn dissection_reconstructs(a in arb_series(), step in 1usize..=5) {
        for n in 0..=a.order() {
            let part = a.extract(step, n % step);
            prop_assert_eq!(a.coeff(n), part.coeff(n / step));
        }
    }

    #[test]
    fn upsample_then_extract_round_trips(a in arb_series(), k in 1usize..=4) {
        let up = a.upsample(k, Sign::Plus, k * a.order());
        let back = up.extract(k, 0);
        prop_assert!(back.first_mismatch(&a, a.order()).unwrap().is_none());
        for r in 1..k {
            prop_assert!(up.extract(k, r).is_zero());
        }
    }

    #[test]
    fn substitute_is_multiplicative((a, b) in arb_pair(), k in 1usize..=3, minus in any::<bool>()) {
        let sign = if minus { Sign::Minus } else { Sign::Plus };
        let lhs = a.mul(&b).unwrap().substitute(k, sign);
        let rhs = a.substitute(k, sign).mul(&b.substitute(k, sign)).unwrap();
        prop_assert!(lhs.first_mismatch(&rhs, lhs.order()).unwrap().is_none());
    }

    #[test]
    fn reduce_mod_is_a_ring_map((a, b) in arb_pair(), m in 2u64..=1 << 16) {
        let order = a.order();
        let prod = a.mul(&b).unwrap().reduce_mod(m);
        let prod_red = a.reduce_mod(m).mul(&b.reduce_mod(m)).unwrap();
        prop_assert!(prod.first_mismatch(&prod_red, order).unwrap().is_none());
        let sum = a.add(&b).unwrap().reduce_mod(m);
        let sum_red = a.reduce_mod(m).add(&b.reduce_mod(m)).unwrap();
        prop_assert!(sum.first_mismatch(&sum_red, order).unwrap().is_none());
    }

    #[test]
    fn modular_scale_matches_exact(a in arb_series(), c in -20i64..=20, m in 2u64..=1 << 16) {
        let lhs = a.scale(c).reduce_mod(m);
        let rhs = a.reduce_mod(m).scale(c);
        prop_assert!(lhs.first_mismatch(&rhs, a.order()).unwrap().is_none());
    }

    #[test]
    fn shift_moves_coefficients_up(a in arb_series(), t in 0usize..=5) {
        let shifted = a.shift(t);
        let zero = ExactInts.zero();
        for n in 0..=a.order() {
            let want = if n < t { &zero } else { a.coeff(n - t) };
            prop_assert_eq!(shifted.coeff(n), want);
        }
    }

    #[test]
    fn reduction_matches_elementwise_residues(
        coeffs in (1usize..=40).prop_flat_map(coeff_vec),
        m in 2u64..=1 << 16,
    ) {
        let a = Series::from_i64(&ExactInts, &coeffs);
        let red = a.reduce_mod(m);
        let ring = Mod::new(m);
        for (n, &c) in coeffs.iter().enumerate() {
            let want = ring.from_i64(c);
            prop_assert_eq!(red.coeff(n), &want);
        }
    }
}
