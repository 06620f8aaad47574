use k3cert::clifford::{
    brute_force_min_f, constraints, f_value, gamma, gamma1_max, mercat_lower_bound,
    minimize_over_region, search_radius, verify_clifford,
};
use k3cert::lattice::{deg_c, self_intersection, DivisorClass, K3Config};
use k3cert::ExactRational;
use proptest::prelude::*;

fn config() -> impl Strategy<Value = K3Config> {
    (2i64..=3000, -1i64..=300).prop_map(|(g, s)| K3Config::new(g, s).unwrap())
}

/// Configurations whose reduced discriminant is positive and not a square.
fn hyperbolic(g_max: i64) -> impl Strategy<Value = K3Config> {
    (12i64..=g_max, -1i64..=20)
        .prop_map(|(g, s)| K3Config::new(g, s).unwrap())
        .prop_filter("hyperbolic, non-square", |c| search_radius(c).is_ok())
}

/// Radius of a box that contains every point of the certified region.
fn covering_radius(cfg: &K3Config) -> i64 {
    let bound = search_radius(cfg).unwrap();
    bound.max((bound * cfg.d() + cfg.d()) / 6 + 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn f_is_degree_minus_square_minus_two(cfg in config(), m in -300i64..=300, n in -300i64..=300) {
        let x = DivisorClass::new(m, n);
        prop_assert_eq!(f_value(&cfg, m, n), deg_c(&cfg, x) - self_intersection(&cfg, x) - 2);
    }

    #[test]
    fn gamma_of_rank_two_with_four_sections(d in -100_000i64..=100_000) {
        prop_assert_eq!(gamma(2, d, 4), ExactRational::new(d, 2) - ExactRational::from_integer(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn corner_values(cfg in config()) {
        let d = cfg.d();
        prop_assert_eq!(f_value(&cfg, -1, 1), d - 8);
        prop_assert_eq!(f_value(&cfg, 1, 0), d - 8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn region_lies_within_search_radius(cfg in hyperbolic(400)) {
        let bound = search_radius(&cfg).unwrap();
        for m in -100i64..=100 {
            for n in -100i64..=100 {
                let c = constraints(&cfg, m, n);
                if c.positive_square && c.degree_window {
                    prop_assert!(n.abs() <= bound, "({m}, {n}) outside |n| ≤ {bound} for {cfg}");
                }
            }
        }
    }

    #[test]
    fn region_minimum_matches_brute_force(cfg in hyperbolic(150)) {
        let fast = minimize_over_region(&cfg).unwrap();
        let slow = brute_force_min_f(&cfg, covering_radius(&cfg)).unwrap();
        prop_assert_eq!(fast.min_value, slow.min_value);
        prop_assert_eq!(fast.argmin, slow.argmin);
        prop_assert_eq!(fast.region_size, slow.region_size);
    }

    #[test]
    fn report_invariants(cfg in hyperbolic(600)) {
        let r = minimize_over_region(&cfg).unwrap();
        prop_assert_eq!(r.target, gamma1_max(cfg.g()));
        match (r.min_value, r.argmin) {
            (Some(v), Some(x)) => {
                prop_assert!(constraints(&cfg, x.m, x.n).all());
                prop_assert_eq!(v, f_value(&cfg, x.m, x.n));
                prop_assert_eq!(r.pass, v >= r.target);
            }
            (None, None) => {
                prop_assert!(r.pass);
                prop_assert_eq!(r.region_size, 0);
            }
            other => prop_assert!(false, "inconsistent report {:?}", other),
        }
    }
}

#[test]
fn mercat_bound_never_exceeds_gamma1() {
    for g in 4..=500 {
        assert!(
            mercat_lower_bound(g) <= ExactRational::from_integer(gamma1_max(g)),
            "g = {g}"
        );
    }
}

#[test]
fn genus_eleven_values() {
    assert_eq!(k3cert::clifford::gonality(11, 4), 13);
    assert_eq!(gamma1_max(11), 5);
    assert_eq!(gamma(2, 13, 4), ExactRational::new(9, 2));
}

#[test]
fn verify_agrees_with_radius_sixty_box() {
    for (g, s) in [(12, -1), (14, 0), (19, 1), (16, 1), (40, 3), (60, 5)] {
        let cfg = K3Config::new(g, s).unwrap();
        let certified = verify_clifford(&cfg).unwrap();
        assert!(covering_radius(&cfg) <= 60, "({g}, {s})");
        let boxed = brute_force_min_f(&cfg, 60).unwrap();
        assert_eq!(certified.min_value, boxed.min_value, "({g}, {s})");
    }
}
