use mbspline::basis::bspline;
use mbspline::poly::{PiecewisePoly, Poly};
use mbspline::rational::{int, rat, to_f64, Rational};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rational(), 0..5).prop_map(Poly::new)
}

fn piecewise() -> impl Strategy<Value = PiecewisePoly> {
    (-3i64..3, prop::collection::vec(poly(), 1..5)).prop_map(|(s, p)| PiecewisePoly::new(s, p))
}

fn rational_point() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..8).prop_map(|(n, d)| rat(n, d))
}

/// `β^n(x) = 1/n! Σ_k (-1)^k C(n+1,k) (x-k)_+^n`
fn truncated_power_bspline(n: u32, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut binom = 1i64;
    for k in 0..=(n as i64 + 1) {
        let y = x - int(k);
        if !y.is_negative() {
            let term = (0..n).fold(int(binom), |a, _| a * &y);
            acc += if k % 2 == 0 { term } else { -term };
        }
        binom = binom * (n as i64 + 1 - k) / (k + 1);
    }
    let fact: i64 = (1..=n as i64).product();
    acc / int(fact)
}

#[test]
fn bsplines_match_truncated_powers() {
    for n in 0..=6 {
        let b = bspline(n);
        for i in -4..=(8 * (n as i64 + 2)) {
            let x = rat(i, 8);
            assert_eq!(b.eval(&x), truncated_power_bspline(n, &x), "n={n} x={x}");
        }
    }
}

#[test]
fn derivative_of_cubic_bspline() {
    let d = bspline(3).derivative(1);
    assert_eq!(d.eval(&int(1)), rat(1, 2));
    assert!(bspline(0).derivative(1).is_zero());
}

proptest! {
    #[test]
    fn slices_reassemble(f in piecewise()) {
        prop_assert_eq!(PiecewisePoly::from_slices(&f.slices()), f);
    }

    #[test]
    fn antiderivative_differentiates_back(f in piecewise()) {
        let h = f.antiderivative();
        prop_assert_eq!(h.tail(), &f.integral());
        let compact = PiecewisePoly::new(h.start(), h.pieces().to_vec());
        prop_assert_eq!(compact.derivative(1), f.clone());
        // Δ∫f differentiates to f - f(·-1)
        let delta = h.finite_difference();
        prop_assert_eq!(delta.derivative(1), &f - &f.shifted(1));
    }

    #[test]
    fn inner_product_is_symmetric(f in piecewise(), g in piecewise(), lag in -5i64..5) {
        prop_assert_eq!(f.inner_product(&g, lag), g.inner_product(&f, -lag));
    }

    #[test]
    fn combine_is_pointwise(
        f in piecewise(),
        g in piecewise(),
        a in small_rational(),
        b in small_rational(),
        s in -3i64..3,
        t in -3i64..3,
        x in rational_point(),
    ) {
        let h = PiecewisePoly::combine(&[a.clone(), b.clone()], &[f.clone(), g.clone()], &[s, t]);
        let want = a * f.eval(&(&x - int(s))) + b * g.eval(&(&x - int(t)));
        prop_assert_eq!(h.eval(&x), want);
    }

    #[test]
    fn float_eval_agrees(f in piecewise(), x in rational_point()) {
        let exact = to_f64(&f.eval(&x));
        prop_assert!((f.eval_f64(to_f64(&x)) - exact).abs() < 1e-9 * (1.0 + exact.abs()));
    }

    #[test]
    fn json_round_trip(f in piecewise()) {
        let s = serde_json::to_string(&f).unwrap();
        let back: PiecewisePoly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn reflection_is_an_involution(f in piecewise(), c in -4i64..4, x in rational_point()) {
        prop_assume!(!x.is_integer());
        let r = f.reflect(c);
        prop_assert_eq!(r.reflect(c), f.clone());
        prop_assert_eq!(r.eval(&x), f.eval(&(int(c) - &x)));
    }
}
