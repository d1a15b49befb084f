use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};
use proptest::prelude::*;

use onebitcs::designs::{BinaryDesign, DesignRequest};
use onebitcs::oracles::{cauchy_check, descartes_check, random_polynomial};
use onebitcs::recovery::{
    approx_recover, reals_eps_cap, superset_dynrange, superset_rationals, superset_reals_passes, superset_same_sign,
    trim_to_approximate, Mode, SupportEstimate,
};
use onebitcs::seed::rng_from_seed;
use onebitcs::sensing::{
    attach_generic_constants, build_dynamic_range, build_prime_log, build_same_sign, combine_sign_star,
    prime_power_sign, sign_scalar, sign_star, FloatTolerance, SensingMatrix, Sign, SignVector,
};
use onebitcs::signals::{random_sparse, SignalClass, SparseSignal};

/// Random 0/1 design with `n` columns and `m` rows.
fn design(max_n: usize, max_m: usize) -> impl Strategy<Value = BinaryDesign> {
    (2..=max_n, 1..=max_m)
        .prop_flat_map(|(n, m)| proptest::collection::vec(proptest::collection::vec(0u8..=1, n), m))
        .prop_map(|rows| BinaryDesign::from_rows(&rows).unwrap())
}

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-9i64..=9, 1i64..=6)
        .prop_filter("nonzero", |(p, _)| *p != 0)
        .prop_map(|(p, q)| BigRational::new(p.into(), q.into()))
}

fn signal_on(n: usize) -> impl Strategy<Value = SparseSignal> {
    proptest::collection::btree_map(0..n, small_rational(), 0..=n.min(4)).prop_map(move |entries| {
        SparseSignal::from_rationals(n, entries, SignalClass::Rational { denom_bound: 6 }).unwrap()
    })
}

fn touches(a: &SensingMatrix, i: usize, x: &SparseSignal) -> bool {
    a.row_support(i).iter().any(|&j| x.exact(j).is_some())
}

fn exact_matrices(base: &BinaryDesign) -> Vec<SensingMatrix> {
    vec![
        build_dynamic_range(base, 3.0).unwrap(),
        build_prime_log(base),
        build_same_sign(base, 1),
    ]
}

fn seeded_signal(n: usize, k: usize, class: SignalClass, seed: u64) -> SparseSignal {
    random_sparse(n, k, class, &mut rng_from_seed(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sign_star_pair_recovers_sign(x in prop_oneof![Just(0.0), Just(-0.0), -1e6f64..1e6]) {
        prop_assert_eq!(combine_sign_star(sign_star(x), sign_star(-x)).unwrap(), sign_scalar(x, 0.0));
    }

    #[test]
    fn sign_vector_survives_sign_star(v in proptest::collection::vec(-1i8..=1, 0..40)) {
        let y: SignVector = v.iter().map(|&s| match s { -1 => Sign::Negative, 0 => Sign::Zero, _ => Sign::Positive }).collect();
        let (pos, neg) = y.to_sign_star();
        prop_assert_eq!(SignVector::from_sign_star(&pos, &neg).unwrap(), y);
    }

    #[test]
    fn prime_log_rows_vanish_iff_disjoint(
        (base, x) in design(7, 6).prop_flat_map(|d| { let n = d.n(); (Just(d), signal_on(n)) })
    ) {
        let a = build_prime_log(&base);
        let y = a.measure(&x, FloatTolerance::default()).unwrap();
        for i in 0..a.m() {
            prop_assert_eq!(y.get(i).is_zero(), !touches(&a, i, &x), "row {}", i);
        }
    }

    #[test]
    fn exact_decoders_keep_the_support(base in design(8, 10), k in 1usize..=3, seed in any::<u64>()) {
        let n = base.n();
        let k = k.min(n);
        let cases = [
            (build_dynamic_range(&base, 3.0).unwrap(), SignalClass::BoundedKappa { eta: 3.0 }),
            (build_prime_log(&base), SignalClass::Rational { denom_bound: 20 }),
            (build_same_sign(&base, 1), SignalClass::BoundedRho { r: 1 }),
        ];
        for (a, class) in &cases {
            let x = seeded_signal(n, k, *class, seed);
            let y = a.measure(&x, FloatTolerance::default()).unwrap();
            let est = match a.family() {
                onebitcs::sensing::Family::DynamicRange => superset_dynrange(a, &y),
                onebitcs::sensing::Family::PrimeLog => superset_rationals(a, &y),
                _ => superset_same_sign(a, &y),
            }.unwrap();
            for j in x.support() {
                prop_assert!(est.contains(j), "{} dropped {}", a.family().name(), j);
            }
            if a.family() != onebitcs::sensing::Family::SameSign {
                for i in 0..a.m() {
                    prop_assert_eq!(y.get(i).is_zero(), !touches(a, i, &x));
                }
            }
        }
    }

    #[test]
    fn float_signs_agree_with_exact_signs(base in design(8, 10), seed in any::<u64>()) {
        let n = base.n();
        for (a, class) in [
            (build_dynamic_range(&base, 3.0).unwrap(), SignalClass::BoundedKappa { eta: 3.0 }),
            (build_prime_log(&base), SignalClass::Rational { denom_bound: 20 }),
        ] {
            let x = seeded_signal(n, n.min(3), class, seed);
            let exact = a.measure(&x, FloatTolerance::default()).unwrap();
            let float = a.measure_float(&x, FloatTolerance::Relative(1e-6)).unwrap();
            for i in 0..a.m() {
                if !float.get(i).is_zero() {
                    prop_assert_eq!(float.get(i), exact.get(i), "{} row {}", a.family().name(), i);
                }
            }
        }
    }

    #[test]
    fn prime_power_sign_matches_products(
        terms in proptest::collection::btree_map(
            prop::sample::select(vec![2u64, 3, 5, 7, 11, 13]),
            small_rational(),
            1..=4,
        )
    ) {
        let terms: Vec<(u64, BigRational)> = terms.into_iter().collect();
        let borrowed: Vec<(u64, &BigRational)> = terms.iter().map(|(q, x)| (*q, x)).collect();
        let w = terms.iter().fold(BigInt::one(), |acc, (_, x)| acc * x.denom());
        let (mut pos, mut neg) = (BigUint::one(), BigUint::one());
        for (q, x) in &terms {
            let z = &w * x.numer() / x.denom();
            let power: BigUint = Pow::pow(BigUint::from(*q), u32::try_from(z.magnitude()).unwrap());
            if z.is_positive() { pos *= power } else { neg *= power }
        }
        let expected = match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => Sign::Positive,
            std::cmp::Ordering::Less => Sign::Negative,
            std::cmp::Ordering::Equal => Sign::Zero,
        };
        prop_assert_eq!(prime_power_sign(&borrowed).unwrap(), expected);
    }

    #[test]
    fn second_pass_extends_the_first(seed in any::<u64>(), k in 1usize..=2) {
        let n = 12;
        let eps = reals_eps_cap(n, k).min(0.9);
        let base = DesignRequest::strongly_list_union_free(n, k, eps / 2.0, 0.5).sample(seed).unwrap();
        let a = attach_generic_constants(&base, &mut rng_from_seed(seed));
        let x = seeded_signal(n, k, SignalClass::GeneralReal, seed ^ 1);
        let y = a.measure(&x, FloatTolerance::default()).unwrap();
        let passes = superset_reals_passes(&a, &y, eps, k).unwrap();
        for j in &passes.first.indices {
            prop_assert!(passes.second.contains(*j));
        }
    }

    #[test]
    fn approximate_output_shrinks_as_eps_grows(
        seed in any::<u64>(),
        lo in 0.05f64..1.0,
        step in 0.0f64..1.0,
    ) {
        let n = 12;
        let base = DesignRequest::strongly_list_union_free(n, 2, 0.5, 0.5).sample(seed).unwrap();
        let a = attach_generic_constants(&base, &mut rng_from_seed(seed));
        let x = seeded_signal(n, 2, SignalClass::GeneralReal, seed ^ 2);
        let y = a.measure(&x, FloatTolerance::default()).unwrap();
        let small = approx_recover(&base, &y, lo).unwrap();
        let large = approx_recover(&base, &y, lo + step).unwrap();
        prop_assert!(large.indices.iter().all(|j| small.contains(*j)));
    }

    #[test]
    fn trimming_drops_the_largest_indices(
        indices in proptest::collection::btree_set(0usize..100, 0..30),
        eps in 0.0f64..2.0,
    ) {
        let c = SupportEstimate::new(indices.iter().copied().collect(), Mode::Superset, None);
        let t = trim_to_approximate(&c, eps).unwrap();
        let drop = (eps / (1.0 + eps) * c.len() as f64 + 1e-12).floor() as usize;
        prop_assert_eq!(t.len(), c.len() - drop);
        prop_assert_eq!(&t.indices[..], &c.indices[..t.len()]);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), scale in 0.2f64..1.0) {
        let request = DesignRequest::strongly_list_disjunct(10, 2, 0.5).with_m_scale(scale);
        prop_assert_eq!(request.sample(seed).unwrap(), request.sample(seed).unwrap());
        for class in [SignalClass::GeneralReal, SignalClass::BoundedRho { r: 2 }, SignalClass::Binary] {
            prop_assert_eq!(seeded_signal(10, 3, class, seed), seeded_signal(10, 3, class, seed));
        }
    }

    #[test]
    fn designs_round_trip_through_json(base in design(20, 12)) {
        prop_assert_eq!(BinaryDesign::from_json(&base.to_json()).unwrap(), base);
    }

    #[test]
    fn signals_round_trip_through_json(x in signal_on(30)) {
        prop_assert_eq!(SparseSignal::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn float_signals_round_trip_through_json(values in proptest::collection::vec(-1e3f64..1e3, 1..20)) {
        let x = SparseSignal::from_dense(&values).unwrap();
        let back = SparseSignal::from_json(&x.to_json()).unwrap();
        prop_assert_eq!(back.to_dense(), values);
    }

    #[test]
    fn matrices_round_trip_through_json(base in design(8, 6), seed in any::<u64>()) {
        let mut all = exact_matrices(&base);
        all.push(attach_generic_constants(&base, &mut rng_from_seed(seed)));
        for a in all {
            prop_assert_eq!(SensingMatrix::from_json(&a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn cauchy_bound_holds(seed in any::<u64>(), eta in 1.0f64..8.0) {
        let p = random_polynomial(10, 5, eta, &mut rng_from_seed(seed));
        prop_assert!(cauchy_check(&p, eta).unwrap());
    }

    #[test]
    fn descartes_bound_holds(seed in any::<u64>()) {
        let p = random_polynomial(10, 6, 20.0, &mut rng_from_seed(seed));
        prop_assert!(descartes_check(&p).unwrap());
    }
}
