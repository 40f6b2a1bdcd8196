use mbspline::analysis::{check, midpoints, overlap_count, smoothness_order};
use mbspline::basis::{bspline, expand, reproduction_coeffs, default_window};
use mbspline::poly::{PiecewisePoly, Poly, Side};
use mbspline::rational::{int, rat, Rational};
use mbspline::{build_mb_spline, named_basis, BasisId, GeneratorSet};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn scaled_rows(f: &PiecewisePoly, s: Rational, rows: &[&[i64]]) {
    let g = f.scale(&s);
    assert_eq!(g.start(), 0);
    assert_eq!(g.end(), rows.len() as i64);
    for (k, row) in rows.iter().enumerate() {
        assert_eq!(g.piece(k as i64), Poly::from_ints(row), "slice {k}");
    }
}

fn named(s: &str) -> GeneratorSet {
    named_basis(s.parse().unwrap()).unwrap()
}

#[test]
fn quintic_derivative_sampling_rows() {
    let gs = named("derivative_sampling(2)");
    scaled_rows(&gs.gens[0], int(4), &[&[0, 0, 0, 0, 5, -3], &[2, 5, 0, -10, 5], &[2, -5, 0, 10, -10, 3]]);
    scaled_rows(
        &gs.gens[1],
        int(8),
        &[&[0, 0, 0, 0, 15, -11], &[4, 5, -20, -50, 95, -38], &[-4, 5, 20, -50, 40, -11]],
    );
    assert_eq!(gs.gens[0].eval(&int(1)), rat(1, 2));
}

#[test]
fn septic_derivative_sampling_rows() {
    let gs = named("derivative_sampling(3)");
    scaled_rows(
        &gs.gens[0],
        int(108),
        &[
            &[0, 0, 0, 0, 0, 0, 21, -11],
            &[10, 49, 84, 35, -70, -105, 112, -27],
            &[88, 0, -168, 0, 140, 0, -77, 27],
            &[10, -49, 84, -35, -70, 105, -56, 11],
        ],
    );
    scaled_rows(
        &gs.gens[1],
        rat(918, 5),
        &[
            &[0, 0, 0, 0, 0, 0, 42, -25],
            &[17, 77, 105, -35, -245, -273, 539, -185],
            &[0, -224, 0, 560, 0, -924, 756, -185],
            &[-17, 77, -105, -35, 245, -273, 133, -25],
        ],
    );
}

#[test]
fn cubic_derivative_sampling_rows() {
    let gs = named("derivative_sampling(1)");
    scaled_rows(&gs.gens[1], int(1), &[&[0, 0, -1, 1], &[0, 1, -2, 1]]);
    // the value generator is the C¹ bump with η(1) = 1, η'(1) = 0
    scaled_rows(&gs.gens[0], int(1), &[&[0, 0, 3, -2], &[1, 0, -3, 2]]);
    assert_eq!(smoothness_order(&gs.gens[0]), 1);
}

#[test]
fn hermite_interpolation_conditions() {
    let gs = named("hermite_cubic");
    for (p, g) in gs.gens.iter().enumerate() {
        for nu in 0..2u32 {
            for k in -3..=3 {
                let want = if nu as usize == p && k == 0 { Rational::one() } else { Rational::zero() };
                for side in [Side::Left, Side::Right] {
                    assert_eq!(g.eval_derivative(&int(k), nu, side), want, "η{} ν={nu} k={k}", p + 1);
                }
            }
        }
    }
    assert_eq!(gs.gens[1].eval_derivative(&int(0), 1, Side::Right), Rational::one());
}

#[test]
fn low_order_schedules() {
    assert_eq!(build_mb_spline(&[0, 3]).unwrap().support_sizes(), vec![1, 3]);
    assert_eq!(build_mb_spline(&[3]).unwrap().gens[0], bspline(3));
}

#[test]
fn named_bases_pass_validation() {
    for s in [
        "hermite_cubic",
        "derivative_sampling(1)",
        "derivative_sampling(2)",
        "derivative_sampling(3)",
        "derivative_sampling(4)",
        "lagrange(1)",
        "lagrange(2)",
        "lagrange(3)",
        "bezier_quadratic",
        "bezier_cubic",
        "mixed_s2s3s4",
        "direct_s2345",
        "bispline_interp(0)",
        "bispline_interp(1)",
        "bispline_interp(2)",
        "hybrid(0,1)",
        "hybrid(0,2)",
        "hybrid(0,3)",
    ] {
        let report = check(&named(s), 256);
        assert!(report.passed(), "{s}\n{}", report.table());
    }
}

#[test]
fn generator_set_json_round_trip() {
    let gs = named("bezier_cubic");
    let back = GeneratorSet::from_json(&gs.to_json()).unwrap();
    assert_eq!(back.gens, gs.gens);
    assert_eq!(back.degrees, gs.degrees);
    assert_eq!(back.postprocess, gs.postprocess);
}

#[test]
fn unknown_ids_are_rejected() {
    for s in ["", "spline", "lagrange(0)", "derivative_sampling(9)", "hybrid(1,2)"] {
        assert!(s.parse::<BasisId>().is_err(), "{s}");
    }
}

fn degree_vector() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(0u32..=7, 1..=4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn built_bases_are_shortest(n in degree_vector()) {
        let gs = build_mb_spline(&n).unwrap();
        let top = *n.last().unwrap();
        prop_assert_eq!(gs.support_sum() as u32, top + 1);
        prop_assert!(gs.is_standardized());
        for x in midpoints(4) {
            for j in -2..=(top as i64 + 2) {
                prop_assert_eq!(overlap_count(&gs, &(&x + int(j))) as u32, top + 1);
            }
        }
        for g in &gs.gens {
            prop_assert!(smoothness_order(g) >= n[0] as i32 - 1);
            prop_assert!(g.degree().unwrap_or(0) as u32 <= top);
        }
    }

    #[test]
    fn bsplines_are_reproduced_causally(n in degree_vector()) {
        let gs = build_mb_spline(&n).unwrap();
        let repro = gs.repro.as_ref().unwrap();
        for (i, c) in repro.iter().enumerate() {
            prop_assert!(c.is_causal());
            prop_assert_eq!(expand(&gs.gens, c), bspline(n[i]));
            let solved = reproduction_coeffs(&gs, &bspline(n[i]), default_window(&gs));
            prop_assert!(solved.is_ok());
        }
    }
}
