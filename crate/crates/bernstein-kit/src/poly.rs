//! Polynomials in Bernstein form and their algebra.
//!
//! A [`BernsteinPoly`] stores coefficients `c_0..c_n` against the basis
//! `Y[k,n](x; a, b, m)`. Multiplication and exact division by powers of
//! `xi = (x-a)/(b-a)` and `eta = (b-x)/(b-a)`, degree elevation, and the
//! monomial-form conversions live here. The monomial conversion doubles as
//! the independent oracle for every other identity: it expands the basis
//! through plain binomial-theorem arithmetic rather than through basis
//! evaluation.

use serde_json::{json, Value};

use crate::basis::{eval_closed_form, BasisIndex, Interval};
use crate::error::Error;
use crate::scalar::Scalar;

/// Polynomial `sum_k c_k Y[k,n](x; a, b, m)` over a fixed interval.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinPoly<S> {
    coeffs: Vec<S>,
    interval: Interval<S>,
    m: i32,
}

impl<S: Scalar> BernsteinPoly<S> {
    /// Coefficients `c_0..c_n` (so `coeffs.len() == n + 1`) at normalization
    /// exponent `m`.
    pub fn new(coeffs: Vec<S>, interval: Interval<S>, m: i32) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::Parse(
                "polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(BernsteinPoly {
            coeffs,
            interval,
            m,
        })
    }

    /// Coefficients with the standard normalization `m = n`.
    pub fn standard(coeffs: Vec<S>, interval: Interval<S>) -> Result<Self, Error> {
        let m = coeffs.len() as i32 - 1;
        Self::new(coeffs, interval, m)
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn interval(&self) -> &Interval<S> {
        &self.interval
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn eval(&self, x: &S) -> S {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                c.clone()
                    * eval_closed_form(BasisIndex::new(n, k as i64, self.m), x, &self.interval)
            })
            .fold(S::zero(), |a, b| a + b)
    }

    /// Same polynomial re-expressed at normalization exponent `new_m` via the
    /// scaling law `Y(m) = (b-a)^(m'-m) Y(m')` applied to every coefficient.
    pub fn renormalized(&self, new_m: i32) -> Self {
        if new_m == self.m {
            return self.clone();
        }
        let scale = Scalar::powi(&self.interval.width(), new_m - self.m);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.clone() * scale.clone())
            .collect();
        BernsteinPoly {
            coeffs,
            interval: self.interval.clone(),
            m: new_m,
        }
    }

    fn standardized(&self) -> Self {
        self.renormalized(self.degree() as i32)
    }

    /// Multiply by `((x-a)/(b-a))^d`: degree grows to `n + d` with
    /// coefficients `c'_{k+d} = c_k n! (k+d)! / (k! (n+d)!)`.
    ///
    /// Polynomials with `m != n` are first renormalized to `m = n`; the
    /// result uses the standard normalization for its degree.
    pub fn multiply_by_xi_power(&self, d: u32) -> Self {
        if d == 0 {
            return self.standardized();
        }
        let p = self.standardized();
        let n = p.degree();
        let mut coeffs = vec![S::zero(); (n + d) as usize + 1];
        for (k, c) in p.coeffs.iter().enumerate() {
            let k = k as u32;
            // n! (k+d)! / (k! (n+d)!) = C(k+d, d) / C(n+d, d)
            let factor = S::binomial(k + d, d) / S::binomial(n + d, d);
            coeffs[(k + d) as usize] = c.clone() * factor;
        }
        BernsteinPoly {
            coeffs,
            interval: p.interval,
            m: (n + d) as i32,
        }
    }

    /// Multiply by `((b-x)/(b-a))^d`: coefficients
    /// `c'_k = c_k n! (n+d-k)! / ((n+d)! (n-k)!)`.
    pub fn multiply_by_eta_power(&self, d: u32) -> Self {
        if d == 0 {
            return self.standardized();
        }
        let p = self.standardized();
        let n = p.degree();
        let mut coeffs = vec![S::zero(); (n + d) as usize + 1];
        for (k, c) in p.coeffs.iter().enumerate() {
            let k = k as u32;
            let factor = S::binomial(n + d - k, d) / S::binomial(n + d, d);
            coeffs[k as usize] = c.clone() * factor;
        }
        BernsteinPoly {
            coeffs,
            interval: p.interval,
            m: (n + d) as i32,
        }
    }

    /// Exact division by `((x-a)/(b-a))^j`. Requires `c_0 = ... = c_{j-1} = 0`;
    /// reports the first offending coefficient otherwise.
    pub fn divide_by_xi_power(&self, j: u32) -> Result<Self, Error> {
        if j == 0 {
            return Ok(self.standardized());
        }
        let p = self.standardized();
        let n = p.degree();
        if j > n {
            return Err(Error::NotDivisible { index: n as usize });
        }
        for (k, c) in p.coeffs.iter().enumerate().take(j as usize) {
            if !c.is_zero() {
                return Err(Error::NotDivisible { index: k });
            }
        }
        let mut coeffs = Vec::with_capacity((n - j) as usize + 1);
        for k in j..=n {
            let factor = S::binomial(n, j) / S::binomial(k, j);
            coeffs.push(p.coeffs[k as usize].clone() * factor);
        }
        BernsteinPoly::new(coeffs, p.interval, (n - j) as i32)
    }

    /// Exact division by `((b-x)/(b-a))^j`. Requires the trailing `j`
    /// coefficients to vanish.
    pub fn divide_by_eta_power(&self, j: u32) -> Result<Self, Error> {
        if j == 0 {
            return Ok(self.standardized());
        }
        let p = self.standardized();
        let n = p.degree();
        if j > n {
            return Err(Error::NotDivisible { index: 0 });
        }
        for k in (n - j + 1)..=n {
            if !p.coeffs[k as usize].is_zero() {
                return Err(Error::NotDivisible { index: k as usize });
            }
        }
        let mut coeffs = Vec::with_capacity((n - j) as usize + 1);
        for k in 0..=(n - j) {
            let factor = S::binomial(n, j) / S::binomial(n - k, j);
            coeffs.push(p.coeffs[k as usize].clone() * factor);
        }
        BernsteinPoly::new(coeffs, p.interval, (n - j) as i32)
    }

    /// Degree elevation by `times` steps; one step maps
    /// `c'_k = (k/(n+1)) c_{k-1} + ((n+1-k)/(n+1)) c_k`.
    ///
    /// The update is a convex combination, so elevation preserves the
    /// coefficient range and the polynomial's values. Inputs with `m != n`
    /// are renormalized first.
    pub fn elevate(&self, times: u32) -> Self {
        let mut p = self.standardized();
        for _ in 0..times {
            let n = p.degree();
            let np1 = n as i64 + 1;
            let mut coeffs = Vec::with_capacity(n as usize + 2);
            for k in 0..=(n + 1) as i64 {
                let mut c = S::zero();
                if k > 0 {
                    c = c + S::from_ratio(k, np1) * p.coeffs[(k - 1) as usize].clone();
                }
                if k <= n as i64 {
                    c = c + S::from_ratio(np1 - k, np1) * p.coeffs[k as usize].clone();
                }
                coeffs.push(c);
            }
            p = BernsteinPoly {
                coeffs,
                interval: p.interval,
                m: np1 as i32,
            };
        }
        p
    }

    /// Expansion into monomial coefficients of `x` (position `i` multiplies
    /// `x^i`). Pure binomial-theorem arithmetic, independent of
    /// [`eval_closed_form`]; exact in the rational backend.
    pub fn to_monomial(&self) -> Vec<S> {
        let n = self.degree();
        let wm = Scalar::powi(&self.interval.width(), -self.m);
        let a = self.interval.a().clone();
        let b = self.interval.b().clone();
        let mut out = vec![S::zero(); n as usize + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = k as u32;
            // (x-a)^k = sum_i C(k,i) (-a)^(k-i) x^i
            let left: Vec<S> = (0..=k)
                .map(|i| S::binomial(k, i) * Scalar::powi(&(-a.clone()), (k - i) as i32))
                .collect();
            // (b-x)^(n-k) = sum_p C(n-k,p) b^(n-k-p) (-1)^p x^p
            let right: Vec<S> = (0..=(n - k))
                .map(|p| {
                    let sign = if p % 2 == 0 { S::one() } else { -S::one() };
                    S::binomial(n - k, p) * Scalar::powi(&b, (n - k - p) as i32) * sign
                })
                .collect();
            let scale = c.clone() * S::binomial(n, k) * wm.clone();
            for (i, lc) in left.iter().enumerate() {
                for (p, rc) in right.iter().enumerate() {
                    out[i + p] = out[i + p].clone() + scale.clone() * lc.clone() * rc.clone();
                }
            }
        }
        out
    }

    /// Inverse of [`BernsteinPoly::to_monomial`]: represent the monomial
    /// polynomial `sum_i q_i x^i` in the degree-`degree` Bernstein basis over
    /// `interval` at `m = degree`. Requires `degree >= len(monomial) - 1`.
    pub fn from_monomial(
        monomial: &[S],
        interval: Interval<S>,
        degree: u32,
    ) -> Result<Self, Error> {
        if monomial.is_empty() {
            return Err(Error::Parse(
                "monomial form needs at least one coefficient".into(),
            ));
        }
        if (degree as usize) < monomial.len() - 1 {
            return Err(Error::OutOfRange(format!(
                "degree {degree} cannot represent a monomial polynomial of degree {}",
                monomial.len() - 1
            )));
        }
        let n = degree;
        let a = interval.a().clone();
        let w = interval.width();
        // Substitute x = a + w u: collect coefficients in u.
        let mut in_u = vec![S::zero(); n as usize + 1];
        for (i, q) in monomial.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let i = i as u32;
            for r in 0..=i {
                let term = q.clone()
                    * S::binomial(i, r)
                    * Scalar::powi(&a, (i - r) as i32)
                    * Scalar::powi(&w, r as i32);
                in_u[r as usize] = in_u[r as usize].clone() + term;
            }
        }
        // u^r = sum_{k>=r} C(k,r)/C(n,r) B[k,n](u)
        let mut coeffs = vec![S::zero(); n as usize + 1];
        for (k, slot) in coeffs.iter_mut().enumerate() {
            let k = k as u32;
            for r in 0..=k {
                if in_u[r as usize].is_zero() {
                    continue;
                }
                let factor = S::binomial(k, r) / S::binomial(n, r);
                *slot = slot.clone() + in_u[r as usize].clone() * factor;
            }
        }
        BernsteinPoly::new(coeffs, interval, n as i32)
    }

    /// JSON form `{"a":..., "b":..., "m":..., "coeffs":[...]}` with rationals encoded
    /// as `"p/q"` strings and floats as numbers.
    pub fn to_json(&self) -> Value {
        json!({
            "a": self.interval.a().to_json(),
            "b": self.interval.b().to_json(),
            "m": self.m,
            "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("polynomial JSON must be an object".into()))?;
        let field = |name: &str| {
            obj.get(name)
                .ok_or_else(|| Error::Parse(format!("polynomial JSON missing field {name:?}")))
        };
        let a = S::from_json(field("a")?)?;
        let b = S::from_json(field("b")?)?;
        let interval = Interval::new(a, b)?;
        let m = field("m")?
            .as_i64()
            .ok_or_else(|| Error::Parse("field \"m\" must be an integer".into()))?
            as i32;
        let coeffs = field("coeffs")?
            .as_array()
            .ok_or_else(|| Error::Parse("field \"coeffs\" must be an array".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        BernsteinPoly::new(coeffs, interval, m)
    }
}
