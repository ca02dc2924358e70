//! Closed forms and exact routes checked against brute-force enumeration.

use latdense_core::density::{
    convergence_table, empirical_density, orthant_density, set_density, shift_sandwich_check,
    shift_sandwich_rows, DensityMethod,
};
use latdense_core::lattice::ball_lattice_count;
use latdense_core::linalg::{int_rat, rat};
use latdense_core::ratset::{check_disjoint_bounded, parse, ValidatedSet};
use latdense_core::scan::{count_cube_points, norm_within};
use latdense_core::{NormKind, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

fn set(text: &str) -> ValidatedSet {
    ValidatedSet::new(parse(text).unwrap()).unwrap()
}

const SKEW: &str = "(0,0) + {(2,1),(1,2)}*";
const SUBGROUP: &str = "(0,0)+{(2,0),(0,1)}* | (-2,0)+{(-2,0),(0,1)}* | (0,-1)+{(2,0),(0,-1)}* | (-2,-1)+{(-2,0),(0,-1)}*";
const PLANE: &str = "(0,0)+{(1,0),(0,1)}* | (-1,0)+{(-1,0),(0,1)}* | (0,-1)+{(1,0),(0,-1)}* | (-1,-1)+{(-1,0),(0,-1)}*";

#[test]
fn ball_counts_match_enumeration() {
    for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
        for n in 1..=3 {
            for r in 0..=12 {
                let brute = count_cube_points(n, r, |x| norm_within(norm, x, r));
                assert_eq!(
                    ball_lattice_count(norm, r, n),
                    BigInt::from(brute),
                    "{norm} n={n} r={r}"
                );
            }
        }
    }
}

#[test]
fn skew_frequency_at_radius_three() {
    let row = empirical_density(&set(SKEW), NormKind::L1, 3);
    assert_eq!(row.hits, BigInt::from(3));
    assert_eq!(row.ball, BigInt::from(25));
    assert_eq!(row.frequency, rat(3, 25));
}

#[test]
fn singleton_frequency_is_one_over_ball() {
    let s = set("(0,0)");
    for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
        for r in [1, 4, 9] {
            let row = empirical_density(&s, norm, r);
            assert_eq!(
                row.frequency,
                Rational::new(1.into(), ball_lattice_count(norm, r, 2))
            );
        }
    }
}

#[test]
fn four_orthants_tile_the_plane() {
    let s = set(PLANE);
    assert!(check_disjoint_bounded(&s, 10).is_clean());
    for norm in [NormKind::L1, NormKind::L2, NormKind::Linf] {
        for r in [1, 5, 17] {
            assert_eq!(empirical_density(&s, norm, r).frequency, rat(1, 1));
        }
    }
    for norm in [NormKind::L1, NormKind::Linf] {
        assert_eq!(
            set_density(&s, norm, DensityMethod::Volume, None)
                .unwrap()
                .total,
            rat(1, 1)
        );
    }
}

#[test]
fn subgroup_frequency_tracks_index() {
    let s = set(SUBGROUP);
    for norm in [NormKind::L1, NormKind::Linf] {
        let exact = set_density(&s, norm, DensityMethod::Volume, None)
            .unwrap()
            .total;
        assert_eq!(exact, rat(1, 2));
        let f = empirical_density(&s, norm, 30).frequency;
        assert!((f - &exact).abs() < rat(1, 50));
    }
}

#[test]
fn skew_convergence() {
    let table = convergence_table(&set(SKEW), NormKind::L1, &[30, 60, 120]).unwrap();
    assert_eq!(table.exact, Some(rat(1, 36)));
    let errors: Vec<Rational> = table
        .rows
        .iter()
        .map(|r| r.error.clone().unwrap())
        .collect();
    assert!(errors.windows(2).all(|w| w[1] <= w[0]), "{errors:?}");
    assert!(errors[2].clone() * int_rat(36.into()) < rat(1, 10));
}

#[test]
fn orthant_frequency_closed_form() {
    let s = set("(0,0) + {(1,0),(0,1)}*");
    for r in [1u64, 2, 7, 20] {
        let row = empirical_density(&s, NormKind::Linf, r);
        let k = BigInt::from(r + 1);
        let side = BigInt::from(2 * r + 1);
        assert_eq!(row.frequency, Rational::new(&k * &k, &side * &side));
    }
}

#[test]
fn repeated_estimates_are_identical() {
    let s = set(SUBGROUP);
    let a = convergence_table(&s, NormKind::L2, &[5, 9, 13]).unwrap();
    let b = convergence_table(&s, NormKind::L2, &[5, 9, 13]).unwrap();
    assert_eq!(a, b);
    assert!(a.exact.is_none());
}

#[test]
fn sandwich_examples() {
    let skew = &set(SKEW).components()[0].clone();
    assert!(shift_sandwich_check(skew, NormKind::L1, 10).unwrap());
    let orthant = set("(0,0) + {(1,0),(0,1)}*").components()[0].clone();
    let rows = shift_sandwich_rows(&orthant, NormKind::Linf, 5).unwrap();
    assert!(rows.iter().all(|r| r.holds()));
    assert_eq!(rows[0].lower, 25);
    assert_eq!(rows[0].upper, 49);
    for norm in [NormKind::L1, NormKind::Linf] {
        assert!(shift_sandwich_check(skew, norm, 2).unwrap());
    }
    assert!(shift_sandwich_rows(skew, NormKind::L1, 1).is_err());
}

#[test]
fn sandwich_counts_match_membership_scan() {
    let s = set(SKEW);
    let c = s.components()[0].clone();
    for norm in [NormKind::L1, NormKind::Linf] {
        for r in [2u64, 6, 11] {
            let rows = shift_sandwich_rows(&c, norm, r).unwrap();
            let brute = |radius: u64| {
                count_cube_points(2, radius, |x| norm_within(norm, x, radius) && s.contains(x))
            };
            for row in &rows {
                assert_eq!(row.lower, brute(r - 1));
                assert_eq!(row.upper, brute(r + 1));
                let e = row.shift.to_i64().unwrap();
                let shifted = count_cube_points(2, r, |x| {
                    norm_within(norm, x, r) && s.contains(&[x[0] - e[0], x[1] - e[1]])
                });
                assert_eq!(row.shifted, shifted);
            }
        }
    }
}

#[test]
fn rank_deficient_frequency_vanishes() {
    let s = set("(0,0) + {(1,1)}*");
    assert_eq!(
        set_density(&s, NormKind::Linf, DensityMethod::Volume, None)
            .unwrap()
            .total,
        rat(0, 1)
    );
    let f = empirical_density(&s, NormKind::Linf, 100).frequency;
    assert!(f < rat(1, 100));
    assert_eq!(f.numer().to_u64(), Some(101));
}

#[test]
fn standard_orthants_in_low_dimension() {
    for n in 1..=4usize {
        let gens: Vec<String> = (0..n)
            .map(|i| {
                let v: Vec<&str> = (0..n).map(|j| if i == j { "1" } else { "0" }).collect();
                format!("({})", v.join(","))
            })
            .collect();
        let zero = format!("({})", vec!["0"; n].join(","));
        let s = set(&format!("{zero} + {{{}}}*", gens.join(",")));
        for norm in [NormKind::L1, NormKind::Linf] {
            for method in [DensityMethod::Volume, DensityMethod::Ehrhart] {
                let d = set_density(&s, norm, method, None).unwrap().total;
                assert_eq!(d, orthant_density(n));
            }
        }
    }
}
