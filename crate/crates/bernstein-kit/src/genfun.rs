//! Generating functions for the basis.
//!
//! Three routes to the same family, cross-checking one another:
//!
//! * [`eval_double_sum`]: the defining double series (a negative-binomial
//!   sum in `j` against a finite alternating sum in `l`), convergent for
//!   `|a/b| < 1`;
//! * [`eval_exponential_form`]: its closed exponential form
//!   `t^k (x-a)^k e^((b-x)t) / ((b-a)^m k!)`;
//! * [`taylor_coefficients`]: the Taylor coefficients of the closed form,
//!   which reproduce the basis values `Y[k,n]` exactly;
//! * [`poly_genfun`]: the finite ordinary generating function
//!   `sum_k Y[k,n](x;a,b,n) t^k = (eta + t xi)^n`.

use crate::basis::Interval;
use crate::error::Error;
use crate::scalar::{factorial, Scalar};

/// Largest exponent argument we allow before `exp` overflows binary64.
const EXP_ARG_LIMIT: f64 = 709.0;

/// Truncated exponential-type series: `coefficients[n]` multiplies `t^n / n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coefficients: Vec<S>,
}

impl<S: Scalar> TruncatedSeries<S> {
    pub fn new(coefficients: Vec<S>) -> Self {
        assert!(!coefficients.is_empty(), "series needs order >= 0");
        TruncatedSeries { coefficients }
    }

    /// Truncation order `N`; the series stores `N + 1` coefficients.
    pub fn order(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    /// Coefficient of `t^n / n!`.
    pub fn coefficient(&self, n: u32) -> &S {
        &self.coefficients[n as usize]
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }
}

/// Closed exponential generating function
/// `t^k (x-a)^k e^((b-x)t) / ((b-a)^m k!)`.
///
/// Float backend only (the exponential is transcendental). Fails with a range
/// error when `(b-x)t` would overflow `exp`.
pub fn eval_exponential_form(
    k: u32,
    x: f64,
    t: f64,
    iv: &Interval<f64>,
    m: i32,
) -> Result<f64, Error> {
    let arg = (iv.b() - x) * t;
    if arg > EXP_ARG_LIMIT {
        return Err(Error::Overflow(format!(
            "exp argument (b-x)*t = {arg} exceeds {EXP_ARG_LIMIT}"
        )));
    }
    let width: f64 = iv.width();
    Ok(t.powi(k as i32) * (x - iv.a()).powi(k as i32) * arg.exp()
        / (width.powi(m) * factorial::<f64>(k)))
}

fn check_double_sum_preconditions(iv: &Interval<f64>, m: u32) -> Result<f64, Error> {
    if m == 0 {
        return Err(Error::OutOfRange(
            "double-sum normalization exponent m must be positive".into(),
        ));
    }
    let b = *iv.b();
    if b == 0.0 {
        return Err(Error::DivergentSeries {
            ratio: f64::INFINITY,
        });
    }
    let ratio = (iv.a() / b).abs();
    if ratio >= 1.0 {
        return Err(Error::DivergentSeries { ratio });
    }
    Ok(ratio)
}

/// Partial sum of the defining double series
///
/// ```text
/// sum_{j=0}^{j_max} sum_{l=0}^{k} C(j+m-1, j) (-1)^(k-l)
///     t^k x^l a^(j+k-l) b^(-m-j) e^((b-x)t) / (l! (k-l)!)
/// ```
///
/// with the convention `0^0 = 1` for the powers of `a`. Converges to
/// [`eval_exponential_form`] as `j_max` grows whenever `|a/b| < 1` and
/// `b != 0`; otherwise a divergence error is returned. `m` must be positive
/// (the `j`-sum is a negative-binomial series of order `m`).
pub fn eval_double_sum(
    k: u32,
    x: f64,
    t: f64,
    iv: &Interval<f64>,
    m: u32,
    j_max: u32,
) -> Result<f64, Error> {
    check_double_sum_preconditions(iv, m)?;
    let (a, b) = (*iv.a(), *iv.b());
    let arg = (b - x) * t;
    if arg > EXP_ARG_LIMIT {
        return Err(Error::Overflow(format!(
            "exp argument (b-x)*t = {arg} exceeds {EXP_ARG_LIMIT}"
        )));
    }
    let efac = arg.exp();
    let tk = t.powi(k as i32);
    let mut sum = 0.0_f64;
    for j in 0..=j_max {
        let neg_binom = f64::binomial(j + m - 1, j);
        let bpow = b.powi(-((m + j) as i32));
        for l in 0..=k {
            let sign = if (k - l).is_multiple_of(2) { 1.0 } else { -1.0 };
            // 0^0 = 1 handled by powi.
            let apow = a.powi((j + k - l) as i32);
            sum += neg_binom * sign * tk * x.powi(l as i32) * apow * bpow * efac
                / (factorial::<f64>(l) * factorial::<f64>(k - l));
        }
    }
    Ok(sum)
}

/// Magnitude estimate for the `j > j_max` tail of [`eval_double_sum`]:
/// the first omitted negative-binomial weight, geometrically extended, times
/// the magnitude of the fixed `l`-sum prefactor.
pub fn double_sum_tail_estimate(
    k: u32,
    x: f64,
    t: f64,
    iv: &Interval<f64>,
    m: u32,
    j_max: u32,
) -> Result<f64, Error> {
    let ratio = check_double_sum_preconditions(iv, m)?;
    let (a, b) = (*iv.a(), *iv.b());
    let efac = ((b - x) * t).exp();
    let tk = t.powi(k as i32).abs();
    let mut prefactor = 0.0_f64;
    for l in 0..=k {
        prefactor += tk * x.abs().powi(l as i32) * a.abs().powi((k - l) as i32) * efac
            / (factorial::<f64>(l) * factorial::<f64>(k - l));
    }
    let head =
        f64::binomial(j_max + m, j_max) * ratio.powi(j_max as i32 + 1) * b.abs().powi(-(m as i32))
            / (1.0 - ratio);
    Ok(head * prefactor)
}

/// Taylor coefficients of the exponential form up to order `N`: position `n`
/// holds the coefficient of `t^n / n!`, which is `Y[k,n](x; a, b, m)` for
/// `n >= k` and zero below. Computed through the factorial route
/// `n! (x-a)^k (b-x)^(n-k) / ((b-a)^m k! (n-k)!)`, independent of the Pascal
/// binomial used by the closed-form evaluator.
pub fn taylor_coefficients<S: Scalar>(
    k: u32,
    x: &S,
    iv: &Interval<S>,
    m: i32,
    order: u32,
) -> TruncatedSeries<S> {
    let xa = x.clone() - iv.a().clone();
    let bx = iv.b().clone() - x.clone();
    let wm = Scalar::powi(&iv.width(), -m);
    let kfac = factorial::<S>(k);
    let mut coefficients = Vec::with_capacity(order as usize + 1);
    for n in 0..=order {
        if n < k {
            coefficients.push(S::zero());
            continue;
        }
        let c = factorial::<S>(n)
            * Scalar::powi(&xa, k as i32)
            * Scalar::powi(&bx, (n - k) as i32)
            * wm.clone()
            / (kfac.clone() * factorial::<S>(n - k));
        coefficients.push(c);
    }
    TruncatedSeries::new(coefficients)
}

/// Finite ordinary generating function at `m = n`:
/// `((b-x)/(b-a) + t (x-a)/(b-a))^n = sum_k Y[k,n](x; a,b,n) t^k`.
pub fn poly_genfun<S: Scalar>(n: u32, x: &S, t: &S, iv: &Interval<S>) -> S {
    let base = iv.eta(x) + t.clone() * iv.xi(x);
    Scalar::powi(&base, n as i32)
}
