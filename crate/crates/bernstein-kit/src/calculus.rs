//! Derivatives and recurrence-composition identities.
//!
//! The higher-order derivative formula expands `d^l/dx^l Y[k,n](x; a,b,m)`
//! into a signed sum of degree-`n-l` basis functions with mixed
//! normalization exponents `m - j`; shifted indices that fall outside
//! `0..=n-l` contribute zero. A derivative of order `l > n` vanishes
//! identically (the basis function is a polynomial of degree `n`), which is
//! the convention this module adopts since the multinomial coefficient in the
//! expansion is undefined there.

use crate::basis::{eval_closed_form, BasisIndex, Interval};
use crate::scalar::{factorial, multinomial3, Scalar};

/// `l`-th derivative of `Y[k,n](x; a, b, m)`:
///
/// ```text
/// sum_{j=0}^{l} (-1)^(l-j) (n; n-l, l-j, j) l! / (b-a)^j  Y[k-j, n-l](x; a,b, m-j)
/// ```
///
/// Returns zero for `l > n`.
pub fn derivative<S: Scalar>(idx: BasisIndex, l: u32, x: &S, iv: &Interval<S>) -> S {
    if l > idx.n {
        return S::zero();
    }
    let lfac = factorial::<S>(l);
    let mut acc = S::zero();
    for j in 0..=l {
        let sign = if (l - j).is_multiple_of(2) {
            S::one()
        } else {
            -S::one()
        };
        let coeff = multinomial3::<S>(idx.n, idx.n - l, l - j, j);
        let shifted = BasisIndex::new(idx.n - l, idx.k - j as i64, idx.m - j as i32);
        acc = acc
            + sign
                * coeff
                * lfac.clone()
                * Scalar::powi(&iv.width(), -(j as i32))
                * eval_closed_form(shifted, x, iv);
    }
    acc
}

/// Two-term first derivative:
/// `n (Y[k-1,n-1](m-1) - Y[k,n-1](m-1)) / (b-a)`.
///
/// Equals [`derivative`] with `l = 1` exactly; zero for `n = 0`.
pub fn derivative_first<S: Scalar>(idx: BasisIndex, x: &S, iv: &Interval<S>) -> S {
    if idx.n == 0 {
        return S::zero();
    }
    let left = eval_closed_form(BasisIndex::new(idx.n - 1, idx.k - 1, idx.m - 1), x, iv);
    let right = eval_closed_form(BasisIndex::new(idx.n - 1, idx.k, idx.m - 1), x, iv);
    S::from_int(idx.n as i64) * (left - right) / iv.width()
}

/// Degree-splitting recurrence: for `0 <= v <= n`,
///
/// ```text
/// Y[k,n](x; a,b,m) = sum_{j=0}^{v} (b-a)^(v-j) Y[j,v](x; a,b,v) Y[k-j, n-v](x; a,b, m-j)
/// ```
///
/// Returns the right-hand side. Panics if `v > n`.
pub fn recurrence_compose<S: Scalar>(idx: BasisIndex, v: u32, x: &S, iv: &Interval<S>) -> S {
    assert!(v <= idx.n, "split order v must satisfy v <= n");
    let mut acc = S::zero();
    for j in 0..=v {
        let split = eval_closed_form(BasisIndex::standard(v, j as i64), x, iv);
        let rest = eval_closed_form(
            BasisIndex::new(idx.n - v, idx.k - j as i64, idx.m - j as i32),
            x,
            iv,
        );
        acc = acc + Scalar::powi(&iv.width(), (v - j) as i32) * split * rest;
    }
    acc
}

/// Product composition: returns
///
/// ```text
/// (2^(k1+k2-n) k1! k2! / (k1+k2)!) sum_{j=0}^{n} C(n,j) Y[k1,j](m1) Y[k2,n-j](m2)
/// ```
///
/// which equals `Y[k1+k2, n](x; a, b, m1+m2)` (zero when `k1 + k2 > n`).
pub fn product_identity<S: Scalar>(
    k1: u32,
    k2: u32,
    m1: i32,
    m2: i32,
    n: u32,
    x: &S,
    iv: &Interval<S>,
) -> S {
    let mut sum = S::zero();
    for j in 0..=n {
        let left = eval_closed_form(BasisIndex::new(j, k1 as i64, m1), x, iv);
        let right = eval_closed_form(BasisIndex::new(n - j, k2 as i64, m2), x, iv);
        sum = sum + S::binomial(n, j) * left * right;
    }
    let two_pow = Scalar::powi(&S::from_int(2), k1 as i32 + k2 as i32 - n as i32);
    two_pow * factorial::<S>(k1) * factorial::<S>(k2) / factorial::<S>(k1 + k2) * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::BernsteinPoly;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn unit() -> Interval<Rational> {
        Interval::unit()
    }

    /// Independent oracle: expand the basis function into monomial
    /// coefficients, differentiate the coefficient vector formally `l` times,
    /// and evaluate by Horner.
    fn derivative_oracle(
        idx: BasisIndex,
        l: u32,
        x: &Rational,
        iv: &Interval<Rational>,
    ) -> Rational {
        if !idx.in_range() {
            return Rational::zero();
        }
        let mut coeffs = vec![Rational::zero(); idx.n as usize + 1];
        coeffs[idx.k as usize] = Rational::one();
        let poly = BernsteinPoly::new(coeffs, iv.clone(), idx.m).unwrap();
        let mut mono = poly.to_monomial();
        for _ in 0..l {
            let mut next = Vec::with_capacity(mono.len().saturating_sub(1));
            for (p, c) in mono.iter().enumerate().skip(1) {
                next.push(Rational::from_int(p as i64) * c.clone());
            }
            if next.is_empty() {
                next.push(Rational::zero());
            }
            mono = next;
        }
        mono.iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    #[test]
    fn derivative_examples() {
        // Second derivative of 2x(1-x) is -4 everywhere.
        for x in [rat(0, 1), rat(1, 3), rat(9, 10)] {
            let v = derivative(BasisIndex::new(2, 1, 2), 2, &x, &unit());
            assert_eq!(v, Rational::from_int(-4));
        }

        // l = 0 is the identity.
        let v = derivative(BasisIndex::new(2, 1, 2), 0, &rat(1, 2), &unit());
        assert_eq!(v, rat(1, 2));

        // d/dx (4-x)/4 = -1/4 on [0,4].
        let iv = Interval::<Rational>::from_ints(0, 4).unwrap();
        for x in [Rational::zero(), Rational::from_int(3)] {
            let v = derivative(BasisIndex::new(1, 0, 1), 1, &x, &iv);
            assert_eq!(v, rat(-1, 4));
        }
    }

    #[test]
    fn derivative_matches_symbolic_oracle() {
        let intervals = [
            Interval::<Rational>::from_ints(0, 1).unwrap(),
            Interval::<Rational>::from_ints(1, 3).unwrap(),
        ];
        for iv in &intervals {
            for n in 0..=6u32 {
                for k in 0..=n as i64 {
                    for m in [n as i32, n as i32 + 1] {
                        for l in 0..=n + 2 {
                            for x in iv.grid(3) {
                                let idx = BasisIndex::new(n, k, m);
                                assert_eq!(
                                    derivative(idx, l, &x, iv),
                                    derivative_oracle(idx, l, &x, iv),
                                    "n={n} k={k} m={m} l={l}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn derivative_above_degree_is_zero() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 0..=5u32 {
            for k in 0..=n as i64 {
                let idx = BasisIndex::standard(n, k);
                assert_eq!(derivative(idx, n + 1, &rat(3, 2), &iv), Rational::zero());
                assert_eq!(derivative(idx, n + 7, &rat(3, 2), &iv), Rational::zero());
            }
        }
    }

    #[test]
    fn first_derivative_examples() {
        // Interior maximum of 2x(1-x).
        let v = derivative_first(BasisIndex::new(2, 1, 2), &rat(1, 2), &unit());
        assert_eq!(v, Rational::zero());

        // d/dx x^2 at 1/2 is 1.
        let v = derivative_first(BasisIndex::new(2, 2, 2), &rat(1, 2), &unit());
        assert_eq!(v, Rational::one());

        // d/dx ((b-x)/(b-a))^3 at a is -3/(b-a).
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let v = derivative_first(BasisIndex::new(3, 0, 3), &Rational::one(), &iv);
        assert_eq!(v, rat(-3, 2));
    }

    #[test]
    fn first_derivative_equals_general_formula() {
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        for n in 0..=6u32 {
            for k in -1..=n as i64 + 1 {
                for m in [n as i32, n as i32 + 1] {
                    for x in iv.grid(5) {
                        let idx = BasisIndex::new(n, k, m);
                        assert_eq!(derivative_first(idx, &x, &iv), derivative(idx, 1, &x, &iv));
                    }
                }
            }
        }
    }

    #[test]
    fn derivative_sum_over_k_vanishes() {
        // Differentiated partition of unity at m = n.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 1..=6u32 {
            for x in iv.grid(5) {
                let sum: Rational = (0..=n as i64)
                    .map(|k| derivative_first(BasisIndex::standard(n, k), &x, &iv))
                    .fold(Rational::zero(), |a, b| a + b);
                assert_eq!(sum, Rational::zero());
            }
        }
    }

    #[test]
    fn central_difference_agreement() {
        let iv = Interval::new(1.0_f64, 3.0).unwrap();
        let h = 1e-6;
        for n in 1..=8u32 {
            for k in 0..=n as i64 {
                let idx = BasisIndex::standard(n, k);
                for x in iv.interior_grid(21) {
                    let analytic = derivative_first(idx, &x, &iv);
                    let numeric = (eval_closed_form(idx, &(x + h), &iv)
                        - eval_closed_form(idx, &(x - h), &iv))
                        / (2.0 * h);
                    assert!(
                        (analytic - numeric).abs() <= 1e-5 * analytic.abs().max(1.0),
                        "n={n} k={k} x={x}: {analytic} vs {numeric}"
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_compose_examples() {
        // v = 1 on B[1,2]: B0 B1 + B1 B0 = 2x(1-x).
        for x in [rat(1, 5), rat(2, 3)] {
            let v = recurrence_compose(BasisIndex::new(2, 1, 2), 1, &x, &unit());
            let direct = eval_closed_form(BasisIndex::new(2, 1, 2), &x, &unit());
            assert_eq!(v, direct);
        }

        // v = 0 is the empty split.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        let idx = BasisIndex::new(3, 2, 4);
        let x = rat(5, 2);
        assert_eq!(
            recurrence_compose(idx, 0, &x, &iv),
            eval_closed_form(idx, &x, &iv)
        );

        // v = n.
        let v = recurrence_compose(BasisIndex::new(2, 1, 2), 2, &rat(1, 2), &unit());
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn recurrence_compose_equals_closed_form() {
        let iv = Interval::<Rational>::from_ints(-2, 5).unwrap();
        for n in 0..=6u32 {
            for k in 0..=n as i64 {
                for m in [n as i32, n as i32 + 1] {
                    for v in 0..=n {
                        for x in iv.grid(3) {
                            let idx = BasisIndex::new(n, k, m);
                            assert_eq!(
                                recurrence_compose(idx, v, &x, &iv),
                                eval_closed_form(idx, &x, &iv),
                                "n={n} k={k} m={m} v={v}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn product_identity_examples() {
        // Only j = 1 survives: result is B[2,2](1/2) = 1/4.
        let v = product_identity(1, 1, 2, 2, 2, &rat(1, 2), &unit());
        assert_eq!(v, rat(1, 4));

        // k1 = k2 = 0 reduces to Y[0,1] at m = 0.
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for x in iv.grid(5) {
            let v = product_identity(0, 0, 0, 0, 1, &x, &iv);
            assert_eq!(v, eval_closed_form(BasisIndex::new(1, 0, 0), &x, &iv));
        }

        // k1 + k2 > n vanishes term by term.
        let v = product_identity(2, 2, 2, 2, 3, &rat(1, 3), &unit());
        assert_eq!(v, Rational::zero());
    }

    #[test]
    fn product_identity_equals_closed_form() {
        let iv = Interval::<Rational>::from_ints(1, 3).unwrap();
        for n in 0..=6u32 {
            for k1 in 0..=n {
                for k2 in 0..=n - k1 {
                    for (m1, m2) in [(n as i32, n as i32), (0, 2), (n as i32, n as i32 + 1)] {
                        for x in iv.grid(3) {
                            let lhs = eval_closed_form(
                                BasisIndex::new(n, (k1 + k2) as i64, m1 + m2),
                                &x,
                                &iv,
                            );
                            let rhs = product_identity(k1, k2, m1, m2, n, &x, &iv);
                            assert_eq!(lhs, rhs, "n={n} k1={k1} k2={k2} m1={m1} m2={m2}");
                        }
                    }
                }
            }
        }
    }
}
