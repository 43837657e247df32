use num_traits::{Signed, Zero};
use proptest::prelude::*;

use refined_kato::decomposition::decompose;
use refined_kato::ellipticity::{ne_sets, OperatorSubset};
use refined_kato::kato::{vertex_values, KatoSolver};
use refined_kato::numeric::{
    elementary_symmetric, int, parse_rational, power_sum, rat, HalfInt, Rational, Series,
};
use refined_kato::verify::{check_ratio_lemma, check_useful_inequalities};
use refined_kato::weights::DominantWeight;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..25).prop_map(|(p, q)| rat(p, q))
}

/// A dominant weight with n in `dims`, entries up to 3 in absolute value.
fn weight(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = DominantWeight> {
    (dims, any::<bool>(), any::<bool>(), prop::collection::vec(0i64..4, 6))
        .prop_map(|(n, half, flip, mut raw)| {
            let m = n / 2;
            raw.truncate(m);
            raw.sort_unstable_by(|a, b| b.cmp(a));
            let mut twice: Vec<i64> = raw.iter().map(|&k| if half { 2 * k + 1 } else { 2 * k }).collect();
            if flip && n % 2 == 0 && twice[m - 1] != 0 {
                twice[m - 1] = -twice[m - 1];
            }
            DominantWeight::from_twice(n, &twice).expect("generated weights are dominant")
        })
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn newton_identities(values in prop::collection::vec(rational(), 1..6)) {
        for k in 1..=values.len() + 2 {
            let mut acc = Rational::zero();
            for i in 1..=k {
                let term = elementary_symmetric(&values, i - 1) * power_sum(&values, (k - i + 1) as u32);
                if i % 2 == 1 { acc += term } else { acc -= term }
            }
            let last = int(k as i64) * elementary_symmetric(&values, k);
            if k % 2 == 1 { acc -= last } else { acc += last }
            prop_assert!(acc.is_zero(), "k = {}", k);
        }
    }

    #[test]
    fn rationals_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn half_integers_round_trip(t in -40i64..40) {
        let h = HalfInt::from_twice(t);
        prop_assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
    }

    #[test]
    fn series_division_inverts_multiplication(
        a in prop::collection::vec(rational(), 1..5),
        mut b in prop::collection::vec(rational(), 1..5),
    ) {
        b[0] = int(1);
        let len = 6;
        let sa = Series::from_coeffs(a, len);
        let sb = Series::from_coeffs(b, len);
        prop_assert_eq!(sa.mul(&sb).div(&sb).unwrap(), sa);
    }

    #[test]
    fn weights_round_trip(w in weight(3..=10)) {
        let text = w.to_string();
        let inner = text.trim_start_matches('(').trim_end_matches(')');
        prop_assert_eq!(DominantWeight::parse(w.n(), inner).unwrap(), w.clone());
        prop_assert_eq!(w.profile().reconstruct(), w.entries().to_vec());
    }

    #[test]
    fn mirror_decomposes_identically(w in weight(4..=10)) {
        let a = decompose(&w);
        let b = decompose(&w.mirror());
        prop_assert_eq!(a.w(), b.w());
        prop_assert_eq!(a.w_tilde(), b.w_tilde());
    }

    #[test]
    fn ratio_orderings(w in weight(3..=12)) {
        let d = decompose(&w);
        let r = check_useful_inequalities(std::slice::from_ref(&d));
        prop_assert_eq!(r.failures, 0, "{:?}", r.first_failure);
        let r = check_ratio_lemma(std::slice::from_ref(&d));
        prop_assert_eq!(r.failures, 0, "{:?}", r.first_failure);
    }

    #[test]
    fn ne_vertices_partition_unity(w in weight(3..=10)) {
        let d = decompose(&w);
        for j in ne_sets(&d) {
            let total = vertex_values(&d, &j).into_iter().fold(Rational::zero(), |a, b| a + b);
            prop_assert_eq!(total, int(1));
        }
    }

    #[test]
    fn k_squared_shrinks_as_i_grows(w in weight(3..=9), mask in 1u32..512, extra in 1usize..10) {
        let d = decompose(&w);
        let n_comp = d.N();
        let set = OperatorSubset::new((1..=n_comp).filter(|j| mask & (1 << (j - 1)) != 0));
        prop_assume!(!set.is_empty());
        let extra = (extra - 1) % n_comp + 1;
        let bigger = OperatorSubset::new(set.indices().iter().copied().chain([extra]));
        let solver = KatoSolver::new(&d);
        let small = solver.solve(&set).unwrap().k_squared;
        let big = solver.solve(&bigger).unwrap().k_squared;
        prop_assert!(big <= small, "{} -> {}, {} -> {}", set, small, bigger, big);
        prop_assert!(!small.is_negative() && small <= int(1));
    }
}
