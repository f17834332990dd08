//! Generalized Bernstein basis functions on an arbitrary interval.
//!
//! The basis function of degree `n`, index `k` and normalization exponent `m`
//! over `[a, b]` is
//!
//! ```text
//! Y[k,n](x; a, b, m) = C(n,k) (x-a)^k (b-x)^(n-k) / (b-a)^m
//! ```
//!
//! With `m == n` these are the classical Bernstein basis functions for the
//! interval; a general `m` rescales every value by `(b-a)^(n-m)`. Indices
//! outside `0..=n` evaluate to zero, which is the convention every summation
//! identity in this crate relies on.

use crate::error::Error;
use crate::scalar::Scalar;

/// The domain `[a, b]` with `a != b`; owns the normalization map
/// `xi(x) = (x - a)/(b - a)`.
///
/// Any pair of distinct reals is accepted; nonnegativity of the endpoints is
/// not mathematically required by any identity implemented here.
#[derive(Debug, Clone, PartialEq)]
pub struct Interval<S> {
    a: S,
    b: S,
}

impl<S: Scalar> Interval<S> {
    pub fn new(a: S, b: S) -> Result<Self, Error> {
        if a == b {
            return Err(Error::DegenerateInterval);
        }
        Ok(Interval { a, b })
    }

    /// Convenience constructor from integer endpoints.
    pub fn from_ints(a: i64, b: i64) -> Result<Self, Error> {
        Interval::new(S::from_int(a), S::from_int(b))
    }

    /// The standard interval `[0, 1]`.
    pub fn unit() -> Self {
        Interval {
            a: S::zero(),
            b: S::one(),
        }
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn width(&self) -> S {
        self.b.clone() - self.a.clone()
    }

    /// `xi(x) = (x - a)/(b - a)`; maps `a -> 0`, `b -> 1`.
    pub fn xi(&self, x: &S) -> S {
        (x.clone() - self.a.clone()) / self.width()
    }

    /// `eta(x) = (b - x)/(b - a) = 1 - xi(x)`.
    pub fn eta(&self, x: &S) -> S {
        (self.b.clone() - x.clone()) / self.width()
    }

    /// Alias for [`Interval::xi`].
    pub fn normalize(&self, x: &S) -> S {
        self.xi(x)
    }

    /// Inverse of [`Interval::xi`]: maps `r in [0,1]` onto `[a, b]`.
    pub fn from_unit(&self, r: &S) -> S {
        self.a.clone() + self.width() * r.clone()
    }

    /// True when `x` lies between the endpoints (either orientation).
    pub fn contains(&self, x: &S) -> bool {
        let t = self.xi(x);
        t >= S::zero() && t <= S::one()
    }

    /// `count` equally spaced points including both endpoints. The nodes are
    /// rational multiples of the width, so they are exactly representable in
    /// the rational backend. Requires `count >= 2`.
    pub fn grid(&self, count: usize) -> Vec<S> {
        assert!(count >= 2, "inclusive grid needs at least two points");
        (0..count)
            .map(|i| self.from_unit(&S::from_ratio(i as i64, (count - 1) as i64)))
            .collect()
    }

    /// `count` equally spaced interior points (endpoints excluded).
    pub fn interior_grid(&self, count: usize) -> Vec<S> {
        (0..count)
            .map(|i| self.from_unit(&S::from_ratio(i as i64 + 1, count as i64 + 1)))
            .collect()
    }
}

/// The `(n, k, m)` triple indexing a basis function: degree, index,
/// normalization exponent.
///
/// `k` is a signed integer so that shifted indices arising in derivative and
/// recurrence formulas can fall out of range and evaluate to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    pub n: u32,
    pub k: i64,
    pub m: i32,
}

impl BasisIndex {
    pub fn new(n: u32, k: i64, m: i32) -> Self {
        BasisIndex { n, k, m }
    }

    /// Index with the standard normalization `m = n`.
    pub fn standard(n: u32, k: i64) -> Self {
        BasisIndex { n, k, m: n as i32 }
    }

    /// False exactly when the function is identically zero (`k < 0 || k > n`).
    pub fn in_range(&self) -> bool {
        self.k >= 0 && self.k <= self.n as i64
    }
}

/// Closed-form evaluation `C(n,k) (x-a)^k (b-x)^(n-k) / (b-a)^m`.
///
/// `x` may lie outside `[a, b]` (the formula is a polynomial); zero is
/// returned for out-of-range `k`. In the float backend the binomial factor
/// stays finite for `n <= 1029` and overflows to infinity beyond.
pub fn eval_closed_form<S: Scalar>(idx: BasisIndex, x: &S, iv: &Interval<S>) -> S {
    if !idx.in_range() {
        return S::zero();
    }
    // Grouped as C(n,k) xi^k eta^(n-k) (b-a)^(n-m): identical rational value,
    // and the float backend stays finite at m = n for degrees where the raw
    // powers of (b-x) and (b-a)^(-m) would overflow separately.
    let k = idx.k as u32;
    S::binomial(idx.n, k)
        * Scalar::powi(&iv.xi(x), k as i32)
        * Scalar::powi(&iv.eta(x), (idx.n - k) as i32)
        * Scalar::powi(&iv.width(), idx.n as i32 - idx.m)
}

/// Evaluation through the two-term recurrence
///
/// ```text
/// Y[k,n](m) = xi(x) Y[k-1,n-1](m-1) + eta(x) Y[k,n-1](m-1)
/// ```
///
/// with base case `Y[0,0](mu) = (b-a)^(-mu)`. Agrees with
/// [`eval_closed_form`] exactly in the rational backend.
pub fn eval_recursive<S: Scalar>(idx: BasisIndex, x: &S, iv: &Interval<S>) -> S {
    if !idx.in_range() {
        return S::zero();
    }
    let n = idx.n as usize;
    let xi = iv.xi(x);
    let eta = iv.eta(x);
    // Level l of the pyramid holds Y[j,l] at normalization exponent m - (n - l).
    let mut row = vec![Scalar::powi(&iv.width(), -(idx.m - idx.n as i32))];
    for level in 1..=n {
        let mut next = Vec::with_capacity(level + 1);
        for j in 0..=level {
            let mut v = S::zero();
            if j > 0 {
                v = v + xi.clone() * row[j - 1].clone();
            }
            if j < level {
                v = v + eta.clone() * row[j].clone();
            }
            next.push(v);
        }
        row = next;
    }
    row[idx.k as usize].clone()
}

/// Closed form of the alternating sum at `m = n`:
/// `sum_k (-1)^k Y[k,n](x; a,b,n) = ((a + b - 2x)/(b - a))^n`.
pub fn alternating_sum<S: Scalar>(n: u32, x: &S, iv: &Interval<S>) -> S {
    let num = iv.a().clone() + iv.b().clone() - (x.clone() + x.clone());
    Scalar::powi(&(num / iv.width()), n as i32)
}

/// The reflected partner `Y[n-k, n](a + b - x; a, b, m)`, equal to
/// `Y[k,n](x; a, b, m)` for every `m` (the width factor is common to both
/// sides).
pub fn symmetry_partner<S: Scalar>(idx: BasisIndex, x: &S, iv: &Interval<S>) -> S {
    let reflected = iv.a().clone() + iv.b().clone() - x.clone();
    let partner = BasisIndex::new(idx.n, idx.n as i64 - idx.k, idx.m);
    eval_closed_form(partner, &reflected, iv)
}

/// Degree elevation of a single basis function at `m = n`: the two weighted
/// degree-`n+1` terms
///
/// ```text
/// ((k+1)/(n+1)) Y[k+1,n+1](x; a,b,n+1),   ((n+1-k)/(n+1)) Y[k,n+1](x; a,b,n+1)
/// ```
///
/// whose sum equals `Y[k,n](x; a,b,n)`.
pub fn elevate_basis<S: Scalar>(n: u32, k: i64, x: &S, iv: &Interval<S>) -> (S, S) {
    let up = BasisIndex::standard(n + 1, k + 1);
    let same = BasisIndex::standard(n + 1, k);
    let d = (n + 1) as i64;
    let first = S::from_ratio(k + 1, d) * eval_closed_form(up, x, iv);
    let second = S::from_ratio(d - k, d) * eval_closed_form(same, x, iv);
    (first, second)
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

    #[test]
    fn interval_rejects_degenerate() {
        assert_eq!(
            Interval::new(Rational::one(), Rational::one()).unwrap_err(),
            Error::DegenerateInterval
        );
    }

    #[test]
    fn interval_normalization() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        assert_eq!(iv.width(), Rational::from_int(2));
        assert_eq!(iv.xi(&Rational::from_int(1)), Rational::zero());
        assert_eq!(iv.xi(&Rational::from_int(3)), Rational::one());
        assert_eq!(iv.xi(&Rational::from_int(2)), rat(1, 2));
        assert!(iv.contains(&Rational::from_int(2)));
        assert!(!iv.contains(&Rational::from_int(4)));
    }

    #[test]
    fn closed_form_examples() {
        // Direct rational evaluation of the closed form.
        let v = eval_closed_form(BasisIndex::new(2, 1, 2), &rat(1, 2), &unit());
        assert_eq!(v, rat(1, 2));

        // Corner value at x = a with m = n.
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        let v = eval_closed_form(BasisIndex::new(5, 0, 5), &Rational::from_int(-2), &iv);
        assert_eq!(v, Rational::one());

        // Shifted interval: C(2,1)*(2-1)*(3-2)/(3-1)^2 = 1/2.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let v = eval_closed_form(BasisIndex::new(2, 1, 2), &Rational::from_int(2), &iv);
        assert_eq!(v, rat(1, 2));

        // Out-of-range index convention.
        let v = eval_closed_form(BasisIndex::new(3, 7, 3), &rat(1, 2), &unit());
        assert_eq!(v, Rational::zero());
        let v = eval_closed_form(BasisIndex::new(3, -1, 3), &rat(1, 2), &unit());
        assert_eq!(v, Rational::zero());
    }

    #[test]
    fn recursive_examples() {
        let v = eval_recursive(BasisIndex::new(2, 1, 2), &rat(1, 2), &unit());
        assert_eq!(v, rat(1, 2));

        // Base case: Y[0,0](x; a, b, 0) = 1 for any x and interval.
        let iv = Interval::<Rational>::from_ints(2, 9).unwrap();
        let v = eval_recursive(BasisIndex::new(0, 0, 0), &Rational::from_int(17), &iv);
        assert_eq!(v, Rational::one());

        // Direct rational evaluation: 3*(9/16)*(1/4) = 27/64.
        let iv = Interval::<Rational>::from_ints(0, 4).unwrap();
        let v = eval_recursive(BasisIndex::new(3, 2, 3), &Rational::from_int(3), &iv);
        assert_eq!(v, rat(27, 64));
    }

    #[test]
    fn recursive_equals_closed_form_with_general_m() {
        let intervals = [
            Interval::<Rational>::from_ints(0, 1).unwrap(),
            Interval::<Rational>::from_ints(1, 3).unwrap(),
            Interval::<Rational>::from_ints(-2, 5).unwrap(),
        ];
        for iv in &intervals {
            for n in 0..=6u32 {
                for k in 0..=n as i64 {
                    for m in [0, n as i32 - 1, n as i32, n as i32 + 2] {
                        for x in iv.grid(5) {
                            let idx = BasisIndex::new(n, k, m);
                            assert_eq!(
                                eval_recursive(idx, &x, iv),
                                eval_closed_form(idx, &x, iv),
                                "n={n} k={k} m={m}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_of_unity_exact() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 0..=8u32 {
            for x in iv.grid(7) {
                let sum: Rational = (0..=n as i64)
                    .map(|k| eval_closed_form(BasisIndex::standard(n, k), &x, &iv))
                    .fold(Rational::zero(), |a, b| a + b);
                assert_eq!(sum, Rational::one());
            }
        }
    }

    #[test]
    fn partition_of_unity_float_tolerance() {
        let iv = Interval::new(-2.0_f64, 5.0).unwrap();
        for n in 0..=20u32 {
            for x in iv.grid(11) {
                let sum: f64 = (0..=n as i64)
                    .map(|k| eval_closed_form(BasisIndex::standard(n, k), &x, &iv))
                    .sum();
                assert!((sum - 1.0).abs() <= 1e-12, "n={n} x={x} sum={sum}");
            }
        }
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Interval<Rational>>();
        assert_send_sync::<Interval<f64>>();
        assert_send_sync::<BasisIndex>();
        assert_send_sync::<crate::poly::BernsteinPoly<Rational>>();
        assert_send_sync::<crate::curve::BezierCurve<Rational>>();
        assert_send_sync::<crate::duality::WeightSequence<Rational>>();
    }

    #[test]
    fn alternating_sum_examples() {
        // Midpoint symmetry.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        assert_eq!(
            alternating_sum(3, &Rational::from_int(2), &iv),
            Rational::zero()
        );
        // Brute-force signed sum 9/16 - 6/16 + 1/16 = 1/4.
        assert_eq!(alternating_sum(2, &rat(1, 4), &unit()), rat(1, 4));
        // At x = a the closed form is 1.
        assert_eq!(
            alternating_sum(1, &Rational::from_int(1), &iv),
            Rational::one()
        );
    }

    #[test]
    fn alternating_sum_matches_brute_force() {
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        for n in 0..=8u32 {
            for x in iv.grid(7) {
                let brute: Rational = (0..=n as i64)
                    .map(|k| {
                        let sign = if k % 2 == 0 {
                            Rational::one()
                        } else {
                            -Rational::one()
                        };
                        sign * eval_closed_form(BasisIndex::standard(n, k), &x, &iv)
                    })
                    .fold(Rational::zero(), |a, b| a + b);
                assert_eq!(alternating_sum(n, &x, &iv), brute, "n={n}");
            }
        }
    }

    #[test]
    fn symmetry_examples() {
        let iv = Interval::<Rational>::from_ints(0, 4).unwrap();
        let idx = BasisIndex::new(3, 1, 3);
        let x = Rational::one();
        assert_eq!(symmetry_partner(idx, &x, &iv), rat(27, 64));
        assert_eq!(
            symmetry_partner(idx, &x, &iv),
            eval_closed_form(idx, &x, &iv)
        );

        // Midpoint is fixed by the reflection.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let idx = BasisIndex::new(1, 0, 1);
        let mid = Rational::from_int(2);
        assert_eq!(symmetry_partner(idx, &mid, &iv), rat(1, 2));

        // General m: the width factor is common to both sides.
        let idx = BasisIndex::new(2, 2, 0);
        let x = rat(1, 3);
        assert_eq!(symmetry_partner(idx, &x, &unit()), rat(1, 9));
        assert_eq!(eval_closed_form(idx, &x, &unit()), rat(1, 9));
    }

    #[test]
    fn corner_values_standard_m() {
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        for n in 0..=6u32 {
            for k in 0..=n as i64 {
                let idx = BasisIndex::standard(n, k);
                let at_a = eval_closed_form(idx, iv.a(), &iv);
                let at_b = eval_closed_form(idx, iv.b(), &iv);
                assert_eq!(
                    at_a,
                    if k == 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                );
                assert_eq!(
                    at_b,
                    if k == n as i64 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                );
            }
        }
    }

    #[test]
    fn scaling_law() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 0..=6u32 {
            for k in 0..=n as i64 {
                for m in [-1, 0, 2, n as i32, n as i32 + 3] {
                    for x in iv.grid(5) {
                        let general = eval_closed_form(BasisIndex::new(n, k, m), &x, &iv);
                        let standard = eval_closed_form(BasisIndex::standard(n, k), &x, &iv);
                        let scale = Scalar::powi(&iv.width(), n as i32 - m);
                        assert_eq!(general, scale * standard);
                    }
                }
            }
        }
    }

    #[test]
    fn nonnegative_inside_interval() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 0..=5u32 {
            for k in 0..=n as i64 {
                for m in [0, n as i32, n as i32 + 2] {
                    for x in iv.grid(9) {
                        let v = eval_closed_form(BasisIndex::new(n, k, m), &x, &iv);
                        assert!(v >= Rational::zero());
                    }
                }
            }
        }
    }

    #[test]
    fn elevate_basis_examples() {
        // (n=1, k=0, x=1/2): terms (1/4, 1/4) summing to B[0,1](1/2) = 1/2.
        let (t1, t2) = elevate_basis(1, 0, &rat(1, 2), &unit());
        assert_eq!(t1, rat(1, 4));
        assert_eq!(t2, rat(1, 4));

        // At x = b only k = n survives; the sum is the corner value 1.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let (t1, t2) = elevate_basis(1, 1, &Rational::from_int(3), &iv);
        assert_eq!(t1 + t2, Rational::one());

        // Sum reproduces 2*(1/3)*(2/3) = 4/9.
        let (t1, t2) = elevate_basis(2, 1, &rat(1, 3), &unit());
        assert_eq!(t1 + t2, rat(4, 9));
    }

    #[test]
    fn elevate_basis_identity_on_grid() {
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        for n in 0..=6u32 {
            for k in 0..=n as i64 {
                for x in iv.grid(7) {
                    let (t1, t2) = elevate_basis(n, k, &x, &iv);
                    let lhs = eval_closed_form(BasisIndex::standard(n, k), &x, &iv);
                    assert_eq!(t1 + t2, lhs);
                }
            }
        }
    }
}
