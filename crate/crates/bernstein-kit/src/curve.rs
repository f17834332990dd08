//! Subdivision identities and Bezier curves.
//!
//! The composition identity
//!
//! ```text
//! Y[j,n](xy; a,b,n) = sum_{k=j}^{n} Y[j,k](x; a,b,k) Y[k,n](y; a,b,n-k)
//! ```
//!
//! is implemented verbatim as [`subdivision_identity`] (the right-hand sum).
//! Exact-arithmetic exploration shows it holds as an identity in `x, y`
//! precisely on the standard interval `a = 0, b = 1`, where it is the
//! classical subdivision property; [`composition_identity_holds_on`] performs that
//! determination so verification reports can archive the validity domain.
//! The two further variants stated on the standard interval hold for all
//! degrees and are implemented as [`affine_subdivision_identity`] and
//! [`blend_subdivision_identity`].

use serde_json::{json, Value};

use crate::basis::{eval_closed_form, BasisIndex, Interval};
use crate::error::Error;
use crate::scalar::Scalar;

/// Right-hand side of the composition identity:
/// `sum_{k=j}^{n} Y[j,k](x; a,b,k) Y[k,n](y; a,b,n-k)`.
///
/// Matches `Y[j,n](xy; a,b,n)` identically on the unit interval; see the
/// module docs for the general-interval situation.
pub fn subdivision_identity<S: Scalar>(j: u32, n: u32, x: &S, y: &S, iv: &Interval<S>) -> S {
    let mut acc = S::zero();
    for k in j..=n {
        let first = eval_closed_form(BasisIndex::new(k, j as i64, k as i32), x, iv);
        let second = eval_closed_form(BasisIndex::new(n, k as i64, (n - k) as i32), y, iv);
        acc = acc + first * second;
    }
    acc
}

/// Standard-interval basis function `B[k,n](x)`.
fn unit_basis<S: Scalar>(n: u32, k: i64, x: &S) -> S {
    eval_closed_form(BasisIndex::standard(n, k), x, &Interval::unit())
}

/// Affine composition variant on the standard interval:
/// `sum_{k=0}^{j} B[j-k, n-k](x) B[k,n](y)`, equal to `B[j,n]((1-y)x + y)`.
pub fn affine_subdivision_identity<S: Scalar>(j: u32, n: u32, x: &S, y: &S) -> S {
    let mut acc = S::zero();
    for k in 0..=j.min(n) {
        acc = acc + unit_basis(n - k, (j - k) as i64, x) * unit_basis(n, k as i64, y);
    }
    acc
}

/// Blended composition variant on the standard interval:
/// `sum_{k=0}^{n} ( sum_{p+q=j} B[p,n-k](x) B[q,k](z) ) B[k,n](y)`,
/// equal to `B[j,n]((1-y)x + yz)`.
pub fn blend_subdivision_identity<S: Scalar>(j: u32, n: u32, x: &S, y: &S, z: &S) -> S {
    let mut acc = S::zero();
    for k in 0..=n {
        let mut inner = S::zero();
        for p in 0..=j {
            let q = j - p;
            inner = inner + unit_basis(n - k, p as i64, x) * unit_basis(k, q as i64, z);
        }
        acc = acc + inner * unit_basis(n, k as i64, y);
    }
    acc
}

/// Exhaustive check of the composition identity over one interval: compares
/// [`subdivision_identity`] against `Y[j,n](xy; a,b,n)` for all
/// `j <= n <= max_n` on a `points x points` rational grid. Deviations beyond
/// `tol` count as counterexamples (pass zero in the rational backend).
/// Returns `Ok(())` or the first counterexample `(j, n, x, y)`.
pub fn composition_identity_holds_on<S: Scalar>(
    iv: &Interval<S>,
    max_n: u32,
    points: usize,
    tol: &S,
) -> Result<(), (u32, u32, S, S)> {
    let grid = iv.grid(points.max(2));
    for n in 0..=max_n {
        for j in 0..=n {
            for x in &grid {
                for y in &grid {
                    let rhs = subdivision_identity(j, n, x, y, iv);
                    let prod = x.clone() * y.clone();
                    let lhs = eval_closed_form(BasisIndex::standard(n, j as i64), &prod, iv);
                    if (lhs - rhs).abs() > *tol {
                        return Err((j, n, x.clone(), y.clone()));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Bezier curve `B(x) = sum_k P_k B[k,n](x; a, b)` with control points in
/// d-dimensional space over an interval (standard normalization `m = n`).
#[derive(Debug, Clone, PartialEq)]
pub struct BezierCurve<S> {
    points: Vec<Vec<S>>,
    interval: Interval<S>,
}

impl<S: Scalar> BezierCurve<S> {
    pub fn new(points: Vec<Vec<S>>, interval: Interval<S>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::Parse(
                "curve needs at least one control point".into(),
            ));
        }
        let dim = points[0].len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::Parse(
                "control points must share one nonzero dimension".into(),
            ));
        }
        Ok(BezierCurve { points, interval })
    }

    pub fn degree(&self) -> u32 {
        (self.points.len() - 1) as u32
    }

    pub fn dimension(&self) -> usize {
        self.points[0].len()
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    pub fn interval(&self) -> &Interval<S> {
        &self.interval
    }

    /// Evaluation by basis summation.
    pub fn eval(&self, x: &S) -> Vec<S> {
        let n = self.degree();
        let mut out = vec![S::zero(); self.dimension()];
        for (k, point) in self.points.iter().enumerate() {
            let w = eval_closed_form(BasisIndex::standard(n, k as i64), x, &self.interval);
            for (o, c) in out.iter_mut().zip(point) {
                *o = o.clone() + w.clone() * c.clone();
            }
        }
        out
    }

    /// Evaluation by repeated linear interpolation with weight
    /// `(x-a)/(b-a)`, the geometric oracle for [`BezierCurve::eval`].
    pub fn eval_de_casteljau(&self, x: &S) -> Vec<S> {
        let lambda = self.interval.xi(x);
        let mut layer = self.points.clone();
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len() - 1);
            for pair in layer.windows(2) {
                let p = pair[0]
                    .iter()
                    .zip(&pair[1])
                    .map(|(u, v)| {
                        (S::one() - lambda.clone()) * u.clone() + lambda.clone() * v.clone()
                    })
                    .collect();
                next.push(p);
            }
            layer = next;
        }
        layer.pop().unwrap()
    }

    /// Split at a strictly interior point into curves over `[a, x]` and
    /// `[x, b]` via the de Casteljau triangle. Boundary splits are rejected.
    pub fn split(&self, x: &S) -> Result<(Self, Self), Error> {
        let lambda = self.interval.xi(x);
        if lambda <= S::zero() || lambda >= S::one() {
            return Err(Error::OutOfRange(
                "split point must be strictly interior to the interval".into(),
            ));
        }
        let mut left = vec![self.points[0].clone()];
        let mut right = vec![self.points[self.points.len() - 1].clone()];
        let mut layer = self.points.clone();
        while layer.len() > 1 {
            let mut next: Vec<Vec<S>> = Vec::with_capacity(layer.len() - 1);
            for pair in layer.windows(2) {
                next.push(
                    pair[0]
                        .iter()
                        .zip(&pair[1])
                        .map(|(u, v)| {
                            (S::one() - lambda.clone()) * u.clone() + lambda.clone() * v.clone()
                        })
                        .collect(),
                );
            }
            left.push(next[0].clone());
            right.push(next[next.len() - 1].clone());
            layer = next;
        }
        right.reverse();
        let left_curve =
            BezierCurve::new(left, Interval::new(self.interval.a().clone(), x.clone())?)?;
        let right_curve =
            BezierCurve::new(right, Interval::new(x.clone(), self.interval.b().clone())?)?;
        Ok((left_curve, right_curve))
    }

    /// JSON form `{"a":..., "b":..., "points":[[...],...]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.interval.a().to_json(),
            "b": self.interval.b().to_json(),
            "points": self
                .points
                .iter()
                .map(|p| p.iter().map(Scalar::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("curve JSON must be an object".into()))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| Error::Parse(format!("curve JSON missing field {name:?}")))
        };
        let a = S::from_json(field("a")?)?;
        let b = S::from_json(field("b")?)?;
        let interval = Interval::new(a, b)?;
        let points = field("points")?
            .as_array()
            .ok_or_else(|| Error::Parse("field \"points\" must be an array".into()))?
            .iter()
            .map(|p| {
                p.as_array()
                    .ok_or_else(|| Error::Parse("control point must be an array".into()))?
                    .iter()
                    .map(S::from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        BezierCurve::new(points, interval)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn unit() -> Interval<Rational> {
        Interval::unit()
    }

    fn quadratic_arc() -> BezierCurve<Rational> {
        BezierCurve::new(
            vec![
                vec![Rational::zero(), Rational::zero()],
                vec![Rational::one(), Rational::from_int(2)],
                vec![Rational::from_int(2), Rational::zero()],
            ],
            unit(),
        )
        .unwrap()
    }

    #[test]
    fn subdivision_identity_examples() {
        // Brute-force both sides: B[1,2](1/4) = 3/8.
        let v = subdivision_identity(1, 2, &rat(1, 2), &rat(1, 2), &unit());
        assert_eq!(v, rat(3, 8));

        // y = 1 is the identity on [0,1].
        for n in 0..=5u32 {
            for x in unit().grid(5) {
                let v = subdivision_identity(0, n, &x, &Rational::one(), &unit());
                assert_eq!(v, unit_basis(n, 0, &x));
            }
        }

        // j = n = 2 at x = 1/2, y = 1: B[2,2](1/2) = 1/4.
        let v = subdivision_identity(2, 2, &rat(1, 2), &Rational::one(), &unit());
        assert_eq!(v, rat(1, 4));
    }

    #[test]
    fn subdivision_identity_exact_on_unit_interval() {
        assert_eq!(
            composition_identity_holds_on(&unit(), 6, 5, &Rational::zero()),
            Ok(())
        );
    }

    #[test]
    fn subdivision_identity_is_polynomial_in_x_and_y() {
        // On the unit interval the identity holds for arguments outside
        // [0, 1] as well (both sides are polynomials).
        for n in 0..=4u32 {
            for j in 0..=n {
                for x in [rat(-1, 2), rat(5, 2), rat(7, 3)] {
                    for y in [rat(-2, 3), rat(3, 1)] {
                        let rhs = subdivision_identity(j, n, &x, &y, &unit());
                        let lhs = eval_closed_form(
                            BasisIndex::standard(n, j as i64),
                            &(x.clone() * y.clone()),
                            &unit(),
                        );
                        assert_eq!(lhs, rhs, "j={j} n={n} x={x} y={y}");
                    }
                }
            }
        }
    }

    #[test]
    fn subdivision_identity_fails_off_unit_interval() {
        // The identity as printed needs a = 0, b = 1; other intervals admit
        // counterexamples, which the domain determination reports.
        let zero = Rational::zero();
        let shifted = Interval::<Rational>::from_ints(1, 3).unwrap();
        assert!(composition_identity_holds_on(&shifted, 3, 3, &zero).is_err());
        let scaled = Interval::<Rational>::from_ints(0, 2).unwrap();
        assert!(composition_identity_holds_on(&scaled, 3, 3, &zero).is_err());
        let width_one = Interval::<Rational>::from_ints(1, 2).unwrap();
        assert!(composition_identity_holds_on(&width_one, 3, 3, &zero).is_err());
    }

    #[test]
    fn affine_variant_examples() {
        // j = n = 1: x(1-y) + y.
        for x in unit().grid(4) {
            for y in unit().grid(4) {
                let v = affine_subdivision_identity(1, 1, &x, &y);
                let arg = (Rational::one() - y.clone()) * x.clone() + y.clone();
                assert_eq!(v, unit_basis(1, 1, &arg));
            }
        }

        // y = 0 collapses to B[j,n](x).
        let v = affine_subdivision_identity(0, 1, &rat(1, 3), &Rational::zero());
        assert_eq!(v, rat(2, 3));

        // x = 1, j = n: both sides are 1.
        let v = affine_subdivision_identity(3, 3, &Rational::one(), &rat(2, 7));
        assert_eq!(v, Rational::one());
    }

    #[test]
    fn affine_variant_holds_exactly() {
        for n in 0..=6u32 {
            for j in 0..=n {
                for x in unit().grid(4) {
                    for y in unit().grid(4) {
                        let v = affine_subdivision_identity(j, n, &x, &y);
                        let arg = (Rational::one() - y.clone()) * x.clone() + y.clone();
                        assert_eq!(v, unit_basis(n, j as i64, &arg), "j={j} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn blend_variant_examples() {
        // z = 1 reduces to the affine variant.
        for x in unit().grid(3) {
            for y in unit().grid(3) {
                let blend = blend_subdivision_identity(2, 3, &x, &y, &Rational::one());
                let affine = affine_subdivision_identity(2, 3, &x, &y);
                assert_eq!(blend, affine);
            }
        }

        // y = 0 leaves only k = 0: B[j,n](x).
        let v = blend_subdivision_identity(1, 2, &rat(1, 3), &Rational::zero(), &rat(1, 2));
        assert_eq!(v, unit_basis(2, 1, &rat(1, 3)));

        // Brute-force anchor: B[1,2](3/8) = 15/32.
        let v = blend_subdivision_identity(1, 2, &rat(1, 2), &rat(1, 2), &rat(1, 4));
        assert_eq!(v, rat(15, 32));
    }

    #[test]
    fn blend_variant_holds_exactly() {
        let pts = unit().grid(3);
        for n in 0..=5u32 {
            for j in 0..=n {
                for x in &pts {
                    for y in &pts {
                        for z in &pts {
                            let v = blend_subdivision_identity(j, n, x, y, z);
                            let arg =
                                (Rational::one() - y.clone()) * x.clone() + y.clone() * z.clone();
                            assert_eq!(v, unit_basis(n, j as i64, &arg), "j={j} n={n}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn bezier_eval_examples() {
        let c = quadratic_arc();
        assert_eq!(
            c.eval(&Rational::zero()),
            vec![Rational::zero(), Rational::zero()]
        );
        assert_eq!(
            c.eval(&Rational::one()),
            vec![Rational::from_int(2), Rational::zero()]
        );
        // De Casteljau oracle gives (1, 1) at the midpoint.
        assert_eq!(
            c.eval_de_casteljau(&rat(1, 2)),
            vec![Rational::one(), Rational::one()]
        );
        assert_eq!(c.eval(&rat(1, 2)), vec![Rational::one(), Rational::one()]);
    }

    #[test]
    fn bezier_eval_routes_agree() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let c = BezierCurve::new(
            vec![
                vec![rat(1, 2), Rational::zero(), rat(-3, 4)],
                vec![rat(2, 1), rat(1, 3), rat(1, 1)],
                vec![rat(-1, 1), rat(5, 2), rat(0, 1)],
                vec![rat(3, 1), rat(1, 1), rat(2, 7)],
            ],
            iv.clone(),
        )
        .unwrap();
        for x in iv.grid(9) {
            assert_eq!(c.eval(&x), c.eval_de_casteljau(&x));
        }
    }

    #[test]
    fn bezier_split_examples() {
        let c = quadratic_arc();
        let (left, right) = c.split(&rat(1, 2)).unwrap();
        assert_eq!(
            left.points(),
            &[
                vec![Rational::zero(), Rational::zero()],
                vec![rat(1, 2), Rational::one()],
                vec![Rational::one(), Rational::one()],
            ]
        );
        // The shared endpoint equals the original curve's value.
        assert_eq!(left.eval(&rat(1, 2)), c.eval(&rat(1, 2)));
        assert_eq!(right.eval(&rat(1, 2)), c.eval(&rat(1, 2)));

        // Both halves reproduce the original on an 11-point grid.
        for x in left.interval().grid(11) {
            assert_eq!(left.eval(&x), c.eval(&x));
        }
        for x in right.interval().grid(11) {
            assert_eq!(right.eval(&x), c.eval(&x));
        }
    }

    #[test]
    fn bezier_split_rejects_boundary() {
        let c = quadratic_arc();
        assert!(matches!(
            c.split(&Rational::zero()),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            c.split(&Rational::one()),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(c.split(&rat(3, 2)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn affine_invariance() {
        // Mapping control points by an affine map commutes with evaluation.
        let c = quadratic_arc();
        let map = |p: &[Rational]| -> Vec<Rational> {
            vec![
                rat(2, 1) * p[0].clone() - rat(1, 3) * p[1].clone() + rat(5, 1),
                p[0].clone() + rat(1, 2) * p[1].clone() - rat(7, 2),
            ]
        };
        let mapped = BezierCurve::new(
            c.points().iter().map(|p| map(p)).collect(),
            c.interval().clone(),
        )
        .unwrap();
        for x in c.interval().grid(7) {
            assert_eq!(mapped.eval(&x), map(&c.eval(&x)));
        }
    }

    #[test]
    fn curve_json_round_trip() {
        let c = quadratic_arc();
        let back = BezierCurve::<Rational>::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn curve_rejects_mixed_dimensions() {
        let err = BezierCurve::new(
            vec![
                vec![Rational::zero()],
                vec![Rational::one(), Rational::one()],
            ],
            unit(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
