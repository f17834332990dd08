//! Property-based checks over random rational inputs: the exact backend lets
//! every polynomial identity be asserted with zero tolerance.

use bernstein_kit::basis::{eval_closed_form, eval_recursive, symmetry_partner};
use bernstein_kit::{BasisIndex, BernsteinPoly, BezierCurve, Interval, Rational, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=8).prop_map(|(num, den)| Rational::from_ratio(num, den))
}

fn interval() -> impl Strategy<Value = Interval<Rational>> {
    (-5i64..=5, -5i64..=5)
        .prop_filter("endpoints must differ", |(a, b)| a != b)
        .prop_map(|(a, b)| Interval::from_ints(a, b).unwrap())
}

fn coeffs(max_len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_equals_closed_form(
        n in 0u32..=9,
        k in -2i64..=11,
        m in -2i32..=12,
        x in rational(),
        iv in interval(),
    ) {
        // Holds for every m and for x outside the interval too.
        let idx = BasisIndex::new(n, k, m);
        prop_assert_eq!(eval_recursive(idx, &x, &iv), eval_closed_form(idx, &x, &iv));
    }

    #[test]
    fn symmetry_holds_for_all_m(
        n in 0u32..=9,
        k in -1i64..=10,
        m in -2i32..=12,
        x in rational(),
        iv in interval(),
    ) {
        let idx = BasisIndex::new(n, k, m);
        prop_assert_eq!(symmetry_partner(idx, &x, &iv), eval_closed_form(idx, &x, &iv));
    }

    #[test]
    fn scaling_law(
        n in 0u32..=9,
        k in 0i64..=9,
        m in -2i32..=12,
        x in rational(),
        iv in interval(),
    ) {
        let general = eval_closed_form(BasisIndex::new(n, k, m), &x, &iv);
        let standard = eval_closed_form(BasisIndex::standard(n, k), &x, &iv);
        prop_assert_eq!(general, Scalar::powi(&iv.width(), n as i32 - m) * standard);
    }

    #[test]
    fn multiply_divide_round_trip(
        coeffs in coeffs(7),
        d in 1u32..=3,
        iv in interval(),
    ) {
        let p = BernsteinPoly::standard(coeffs, iv).unwrap();
        prop_assert_eq!(p.multiply_by_xi_power(d).divide_by_xi_power(d).unwrap(), p.clone());
        prop_assert_eq!(p.multiply_by_eta_power(d).divide_by_eta_power(d).unwrap(), p);
    }

    #[test]
    fn monomial_round_trip_and_horner(
        coeffs in coeffs(7),
        x in rational(),
        iv in interval(),
    ) {
        let p = BernsteinPoly::standard(coeffs, iv.clone()).unwrap();
        let mono = p.to_monomial();
        let back = BernsteinPoly::from_monomial(&mono, iv, p.degree()).unwrap();
        prop_assert_eq!(&back, &p);
        let horner = mono
            .iter()
            .rev()
            .fold(Rational::from_int(0), |acc, c| acc * x.clone() + c.clone());
        prop_assert_eq!(horner, p.eval(&x));
    }

    #[test]
    fn elevation_preserves_values(
        coeffs in coeffs(6),
        times in 1u32..=3,
        x in rational(),
        iv in interval(),
    ) {
        let p = BernsteinPoly::standard(coeffs, iv).unwrap();
        prop_assert_eq!(p.elevate(times).eval(&x), p.eval(&x));
    }

    #[test]
    fn split_reproduces_curve(
        pts in prop::collection::vec((rational(), rational()), 2..=5),
        t in 1i64..=6,
        iv in interval(),
    ) {
        let points: Vec<Vec<Rational>> = pts.into_iter().map(|(u, v)| vec![u, v]).collect();
        let curve = BezierCurve::new(points, iv.clone()).unwrap();
        let split_at = iv.from_unit(&Rational::from_ratio(t, 7));
        let (left, right) = curve.split(&split_at).unwrap();
        for x in left.interval().grid(5) {
            prop_assert_eq!(left.eval(&x), curve.eval(&x));
        }
        for x in right.interval().grid(5) {
            prop_assert_eq!(right.eval(&x), curve.eval(&x));
        }
        prop_assert_eq!(curve.eval(&split_at), curve.eval_de_casteljau(&split_at));
    }
}
