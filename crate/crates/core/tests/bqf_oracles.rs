//! Decision procedures in `bqf` against brute-force oracles.

use k3cert::bqf::{
    self, isotropic_vector, modular_obstruction, represents, represents_via_cycle,
    represents_via_pell, QuadraticForm, RepStatus, DEFAULT_MODULI,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn eval(a: i64, b: i64, c: i64, m: i64, n: i64) -> i64 {
    a * m * m + b * m * n + c * n * n
}

fn brute_zero(a: i64, b: i64, c: i64, r: i64) -> Option<(i64, i64)> {
    (-r..=r)
        .flat_map(|m| (-r..=r).map(move |n| (m, n)))
        .find(|&(m, n)| (m, n) != (0, 0) && eval(a, b, c, m, n) == 0)
}

fn brute_rep(a: i64, b: i64, c: i64, t: i64, r: i64) -> Option<(i64, i64)> {
    (-r..=r)
        .flat_map(|m| (-r..=r).map(move |n| (m, n)))
        .find(|&(m, n)| eval(a, b, c, m, n) == t)
}

fn is_square(v: i64) -> bool {
    v >= 0 && {
        let r = (v as f64).sqrt() as i64;
        (r - 1..=r + 1).any(|x| x >= 0 && x * x == v)
    }
}

fn anisotropic_indefinite(bound: i64) -> impl Strategy<Value = (i64, i64, i64)> {
    (-bound..=bound, -bound..=bound, -bound..=bound).prop_filter(
        "indefinite with non-square discriminant",
        |&(a, b, c)| {
            let disc = b * b - 4 * a * c;
            disc > 0 && !is_square(disc)
        },
    )
}

fn form(a: i64, b: i64, c: i64) -> QuadraticForm {
    QuadraticForm::new(a, b, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn isotropic_agrees_with_brute_force(a in -30i64..=30, b in -30i64..=30, c in -30i64..=30) {
        let f = form(a, b, c);
        let decided = isotropic_vector(&f);
        if let Some((m, n)) = &decided {
            prop_assert!(!(m == &BigInt::from(0) && n == &BigInt::from(0)));
            prop_assert_eq!(f.eval(m, n), BigInt::from(0));
        }
        if brute_zero(a, b, c, 60).is_some() {
            prop_assert!(decided.is_some());
        }
        let disc = b * b - 4 * a * c;
        if a == 0 || c == 0 || is_square(disc) {
            prop_assert!(decided.is_some());
        } else {
            prop_assert!(decided.is_none());
        }
    }

    #[test]
    fn modular_obstruction_is_sound(
        a in -40i64..=40, b in -40i64..=40, c in -40i64..=40, t in -5i64..=5,
    ) {
        let f = form(a, b, c);
        if let Some(k) = modular_obstruction(&f, &BigInt::from(t), &DEFAULT_MODULI).unwrap() {
            let k = k as i64;
            for m in 0..k {
                for n in 0..k {
                    prop_assert_ne!(eval(a, b, c, m, n).rem_euclid(k), t.rem_euclid(k));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(600))]

    #[test]
    fn represents_is_sound_and_complete(
        (a, b, c) in anisotropic_indefinite(25),
        t in prop::sample::select(vec![-2i64, -1, 1, 2]),
    ) {
        let f = form(a, b, c);
        let target = BigInt::from(t);
        let decision = represents(&f, &target).unwrap();
        if let RepStatus::Witness { m, n } = &decision.status {
            prop_assert_eq!(f.eval(m, n), target.clone());
        }
        if brute_rep(a, b, c, t, 80).is_some() {
            prop_assert!(decision.is_witness(), "{} on {:?} missed t = {}", decision, (a, b, c), t);
        }
    }

    #[test]
    fn cycle_route_matches_pell_route(
        (a, b, c) in anisotropic_indefinite(12),
        t in prop::sample::select(vec![-2i64, -1, 1, 2]),
    ) {
        let f = form(a, b, c);
        let target = BigInt::from(t);
        let disc = f.discriminant();
        let bound = bqf::pell_search_bound(&f, &target, &disc).unwrap();
        prop_assume!(bound <= BigInt::from(20_000));
        let by_cycle = represents_via_cycle(&f, &target).unwrap();
        let by_pell = represents_via_pell(&f, &target).unwrap();
        prop_assert_eq!(by_cycle.is_witness(), by_pell.is_witness(), "{:?} t = {}", (a, b, c), t);
        for d in [by_cycle, by_pell] {
            if let RepStatus::Witness { m, n } = &d.status {
                prop_assert_eq!(f.eval(m, n), target.clone());
            }
        }
    }

    #[test]
    fn cycle_route_alone_is_complete(
        (a, b, c) in anisotropic_indefinite(25),
        t in prop::sample::select(vec![-2i64, -1, 1, 2]),
    ) {
        let f = form(a, b, c);
        let d = represents_via_cycle(&f, &BigInt::from(t)).unwrap();
        if let Some((m, n)) = brute_rep(a, b, c, t, 40) {
            prop_assert!(d.is_witness(), "missed ({m}, {n}) on {:?} t = {}", (a, b, c), t);
        }
    }
}

#[test]
fn negative_pell_family() {
    // x² − Dy² = −1 is solvable exactly when the period of √D is odd.
    let solvable = [
        2, 5, 10, 13, 17, 26, 29, 37, 41, 50, 53, 58, 61, 65, 73, 74, 82, 85, 89, 97,
    ];
    for d in 2..100i64 {
        if is_square(d) {
            continue;
        }
        let f = form(1, 0, -d);
        let decision = represents(&f, &BigInt::from(-1)).unwrap();
        assert_eq!(
            decision.is_witness(),
            solvable.contains(&d),
            "D = {d}: {decision}"
        );
    }
}

#[test]
fn minus_two_forms_agree_with_brute_force() {
    // the forms 3m² + dmn + (g − 1)n² the certificates query
    for g in 12..=120i64 {
        for s in -1..=8i64 {
            let d = g - s;
            let disc = d * d - 12 * (g - 1);
            if disc <= 0 || is_square(disc) {
                continue;
            }
            let decision = represents(&form(3, d, g - 1), &BigInt::from(-1)).unwrap();
            if let Some(w) = brute_rep(3, d, g - 1, -1, 60) {
                assert!(decision.is_witness(), "(g, s) = ({g}, {s}) misses {w:?}");
            }
            if let RepStatus::Witness { m, n } = &decision.status {
                assert_eq!(form(3, d, g - 1).eval(m, n), BigInt::from(-1));
            }
        }
    }
}

#[test]
fn certificate_forms_exercise_every_route() {
    use k3cert::bqf::RepMethod;
    use std::collections::BTreeMap;
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for g in 12..=300i64 {
        for s in -1..=6i64 {
            let d = g - s;
            let disc = d * d - 12 * (g - 1);
            if disc <= 0 || is_square(disc) {
                continue;
            }
            let decision = represents(&form(3, d, g - 1), &BigInt::from(-1)).unwrap();
            *seen.entry(decision.method.to_string()).or_default() += 1;
        }
    }
    eprintln!("{seen:?}");
    for method in [
        RepMethod::ModScan,
        RepMethod::BruteForce,
        RepMethod::PellSearch,
        RepMethod::ReductionCycle,
    ] {
        assert!(
            seen.contains_key(&method.to_string()),
            "{method} never used: {seen:?}"
        );
    }
}
