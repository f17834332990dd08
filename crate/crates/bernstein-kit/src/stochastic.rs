//! The probabilistic reading of the basis.
//!
//! At `m = n` the degree-`n` basis values at a fixed `x` in `[a, b]` form a
//! binomial probability mass function with success probability
//! `xi = (x-a)/(b-a)`; its mean is `n xi` and its variance `n xi (1 - xi)`.
//! Letting `n` grow with `x = a + (b-a) mu / n` produces the Poisson limit,
//! which motivates the Szasz-Mirakjan type basis functions
//! `f_i(x, n; a, b) = (n xi)^i e^(-n xi) / i!`.

use crate::basis::{eval_closed_form, BasisIndex, Interval};
use crate::error::Error;
use crate::scalar::{factorial, Scalar};

fn check_in_interval<S: Scalar>(x: &S, iv: &Interval<S>) -> Result<(), Error> {
    if !iv.contains(x) {
        return Err(Error::OutOfRange(format!(
            "x = {x} lies outside the interval [{}, {}]",
            iv.a(),
            iv.b()
        )));
    }
    Ok(())
}

/// The probability mass function `(Y[0,n], ..., Y[n,n])` at `m = n`.
/// Entries are nonnegative and sum to one. Requires `x` in `[a, b]`.
pub fn binomial_pmf<S: Scalar>(n: u32, x: &S, iv: &Interval<S>) -> Result<Vec<S>, Error> {
    check_in_interval(x, iv)?;
    Ok((0..=n as i64)
        .map(|k| eval_closed_form(BasisIndex::standard(n, k), x, iv))
        .collect())
}

/// Closed-form mean and variance of the pmf:
/// `mu = n (x-a)/(b-a)`, `sigma^2 = n (x-a)(b-x)/(b-a)^2`.
pub fn mean_variance<S: Scalar>(n: u32, x: &S, iv: &Interval<S>) -> Result<(S, S), Error> {
    check_in_interval(x, iv)?;
    let nf = S::from_int(n as i64);
    let mean = nf.clone() * iv.xi(x);
    let variance = nf * iv.xi(x) * iv.eta(x);
    Ok((mean, variance))
}

/// Distance to the Poisson limit:
/// `| Y[k,n]((b-a) mu / n + a; a,b,n) - mu^k e^(-mu) / k! |`.
///
/// Decreases toward zero as `n` grows at fixed `mu`, `k` (first-order `1/n`
/// behavior). Requires `0 <= mu <= n` so the evaluation point stays in the
/// interval.
pub fn poisson_limit_error(n: u32, mu: f64, k: u32, iv: &Interval<f64>) -> Result<f64, Error> {
    if !(0.0..=n as f64).contains(&mu) {
        return Err(Error::OutOfRange(format!(
            "mu = {mu} must satisfy 0 <= mu <= n = {n}"
        )));
    }
    let x = iv.a() + iv.width() * mu / n as f64;
    let basis = eval_closed_form(BasisIndex::standard(n, k as i64), &x, iv);
    let poisson = mu.powi(k as i32) * (-mu).exp() / factorial::<f64>(k);
    Ok((basis - poisson).abs())
}

/// Parameters of the Szasz-Mirakjan type family: the operator index `n >= 1`
/// and the interval carrying the normalization `xi`.
#[derive(Debug, Clone, PartialEq)]
pub struct SzaszBasisParams {
    n: u32,
    interval: Interval<f64>,
}

impl SzaszBasisParams {
    pub fn new(n: u32, interval: Interval<f64>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::OutOfRange(
                "Szasz parameter n must be positive".into(),
            ));
        }
        Ok(SzaszBasisParams { n, interval })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn interval(&self) -> &Interval<f64> {
        &self.interval
    }

    /// The Poisson rate `lambda = n (x-a)/(b-a)`.
    pub fn rate(&self, x: f64) -> f64 {
        self.n as f64 * self.interval.xi(&x)
    }
}

/// `ln(i!)` by direct summation; exact enough for the index ranges used here.
fn ln_factorial(i: u32) -> f64 {
    (2..=i as u64).map(|v| (v as f64).ln()).sum()
}

/// Szasz-Mirakjan type basis function `f_i(x, n; a, b) = lambda^i e^(-lambda) / i!`
/// with `lambda = n (x-a)/(b-a)`.
///
/// Large indices are computed in log space so the factorial never overflows
/// binary64. The value depends on `(a, b, x)` only through `lambda`, so it is
/// invariant under reparametrizing onto the unit interval.
pub fn szasz_basis(p: &SzaszBasisParams, i: u32, x: f64) -> f64 {
    let lambda = p.rate(x);
    if lambda == 0.0 {
        return if i == 0 { 1.0 } else { 0.0 };
    }
    // Log space for large indices (factorial overflow) and for large rates,
    // where lambda^i * exp(-lambda) would hit inf * 0.
    if lambda > 0.0 && (i > 30 || lambda > 700.0) {
        return (i as f64 * lambda.ln() - lambda - ln_factorial(i)).exp();
    }
    lambda.powi(i as i32) * (-lambda).exp() / factorial::<f64>(i)
}

/// Truncated generating-function check value `sum_{i=0}^{trunc} f_i(x) t^i`;
/// converges to `exp((t-1) lambda)`.
pub fn szasz_generating_sum(p: &SzaszBasisParams, t: f64, x: f64, trunc: u32) -> f64 {
    (0..=trunc)
        .map(|i| szasz_basis(p, i, x) * t.powi(i as i32))
        .sum()
}

/// Brute-force moments `(sum k p_k, sum k^2 p_k - mu^2)` of a pmf; the oracle
/// for [`mean_variance`].
pub fn pmf_moments<S: Scalar>(pmf: &[S]) -> (S, S) {
    let mut mean = S::zero();
    let mut second = S::zero();
    for (k, p) in pmf.iter().enumerate() {
        let kf = S::from_int(k as i64);
        mean = mean + kf.clone() * p.clone();
        second = second + kf.clone() * kf * p.clone();
    }
    let variance = second - mean.clone() * mean.clone();
    (mean, variance)
}
