//! Pointwise orthogonality machinery.
//!
//! A family `{f_i}` generated by `A_t(x) = sum_i f_i(x) t^i` satisfies, for a
//! suitable weight sequence `w_k(x)`, the pointwise orthogonality relation
//!
//! ```text
//! sum_k w_k(x) D^k f_i(x) D^k f_j(x) = delta_ij f_i(x)
//! ```
//!
//! where `D = d/dx`. This module hosts a generic Gram-matrix verifier over
//! arbitrary weight sequences, together with brute-force weight derivation:
//! the premise `sum_k w_k D^k A_t D^k A_z = A_tz` is matched coefficient-wise
//! in the shifted variables `u = t - 1`, `v = z - 1` at exact rational sample
//! points, the resulting linear systems are solved exactly, and the solution
//! is fitted to its closed form. Weight sequences are plain data so that
//! candidate sequences can be verified side by side and the verdicts
//! archived.

use serde_json::{json, Value};

use crate::basis::{eval_closed_form, BasisIndex, Interval};
use crate::calculus;
use crate::error::Error;
use crate::scalar::{factorial, Scalar};
use crate::stochastic::{szasz_basis, SzaszBasisParams};

/// Zero test that tolerates float rounding in the non-exact backend.
fn near_zero<S: Scalar>(v: &S) -> bool {
    if S::exact() {
        v.is_zero()
    } else {
        v.to_f64().abs() < 1e-9
    }
}

/// A function family with exact derivatives, suitable for the pairing sum.
pub trait DualFamily<S: Scalar> {
    /// `f_i(x)`; zero beyond a finite family.
    fn value(&self, i: usize, x: &S) -> S;

    /// `D^order f_i(x)`.
    fn derivative(&self, order: usize, i: usize, x: &S) -> S;

    /// Number of `k`-terms the pairing sum uses (finite cut; exact for
    /// families whose derivatives vanish beyond it).
    fn pairing_len(&self) -> usize;

    fn describe(&self) -> String;

    /// Bound on the truncated pairing tail at `x`, when the family cuts an
    /// infinite sum. `None` for families whose pairing sum is exact.
    fn tail_bound(&self, weights: &WeightSequence<S>, x: &S) -> Option<f64> {
        let _ = (weights, x);
        None
    }
}

/// One closed-form weight `w_k(x)`.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightTerm<S> {
    /// `coeff * ((x-a)(b-x))^power`
    ScaledXiEta { coeff: S, power: u32 },
    /// `coeff * ((x-a)/(b-a))^power`
    ScaledXi { coeff: S, power: u32 },
    /// `Y[k,n](x; a, b, n)`
    Basis { n: u32, k: u32 },
}

/// Weight sequence `w_0(x), w_1(x), ...` as closed-form terms over a fixed
/// interval. Indices beyond the stored terms weigh zero.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence<S> {
    terms: Vec<WeightTerm<S>>,
    interval: Interval<S>,
    label: String,
}

impl<S: Scalar> WeightSequence<S> {
    pub fn new(terms: Vec<WeightTerm<S>>, interval: Interval<S>, label: impl Into<String>) -> Self {
        WeightSequence {
            terms,
            interval,
            label: label.into(),
        }
    }

    /// The all-zero sequence (degenerate, for testing the verifier itself).
    pub fn zeros(len: usize, interval: Interval<S>) -> Self {
        WeightSequence {
            terms: vec![
                WeightTerm::ScaledXiEta {
                    coeff: S::zero(),
                    power: 0
                };
                len
            ],
            interval,
            label: "zero".into(),
        }
    }

    /// The Bernstein weight sequence quoted alongside the first worked
    /// example of the orthogonality relation: `w_k(x) = Y[k,n](x; a, b, n)`.
    pub fn bernstein_example(n: u32, interval: Interval<S>) -> Self {
        WeightSequence {
            terms: (0..=n).map(|k| WeightTerm::Basis { n, k }).collect(),
            interval,
            label: "example-basis-weights".into(),
        }
    }

    /// The Szasz weight sequence in its quoted unit-width form:
    /// `w_k(x) = xi^k / (n^k k!)`.
    pub fn szasz_example(n: u32, interval: Interval<S>, len: usize) -> Self {
        let terms = (0..len)
            .map(|k| WeightTerm::ScaledXi {
                coeff: S::one()
                    / (Scalar::powi(&S::from_int(n as i64), k as i32) * factorial::<S>(k as u32)),
                power: k as u32,
            })
            .collect();
        WeightSequence {
            terms,
            interval,
            label: "example-szasz-weights".into(),
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[WeightTerm<S>] {
        &self.terms
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Evaluate `w_k(x)`.
    pub fn weight(&self, k: usize, x: &S) -> S {
        match self.terms.get(k) {
            None => S::zero(),
            Some(WeightTerm::ScaledXiEta { coeff, power }) => {
                let shape = (x.clone() - self.interval.a().clone())
                    * (self.interval.b().clone() - x.clone());
                coeff.clone() * Scalar::powi(&shape, *power as i32)
            }
            Some(WeightTerm::ScaledXi { coeff, power }) => {
                coeff.clone() * Scalar::powi(&self.interval.xi(x), *power as i32)
            }
            Some(WeightTerm::Basis { n, k }) => {
                eval_closed_form(BasisIndex::standard(*n, *k as i64), x, &self.interval)
            }
        }
    }

    pub fn describe(&self) -> String {
        let shapes: Vec<String> = self
            .terms
            .iter()
            .take(4)
            .enumerate()
            .map(|(k, t)| match t {
                WeightTerm::ScaledXiEta { coeff, power } => {
                    format!("w_{k} = {coeff} * ((x-a)(b-x))^{power}")
                }
                WeightTerm::ScaledXi { coeff, power } => {
                    format!("w_{k} = {coeff} * xi^{power}")
                }
                WeightTerm::Basis { n, k: bk } => format!("w_{k} = Y[{bk},{n}]"),
            })
            .collect();
        let ellipsis = if self.terms.len() > 4 { ", ..." } else { "" };
        format!("{} [{}{}]", self.label, shapes.join(", "), ellipsis)
    }
}

/// The Bernstein family `f_i = Y[i,n](x; a, b, n)`, `i = 0..=n`, generated by
/// the finite ordinary generating function `(eta + t xi)^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernsteinFamily<S> {
    n: u32,
    interval: Interval<S>,
}

impl<S: Scalar> BernsteinFamily<S> {
    pub fn new(n: u32, interval: Interval<S>) -> Self {
        BernsteinFamily { n, interval }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn interval(&self) -> &Interval<S> {
        &self.interval
    }

    /// Derive the weight sequence from the generating-function premise by
    /// brute force: build both sides as polynomials in `u = t-1`, `v = z-1`
    /// at several rational sample points, solve the linear system for
    /// `w_0..w_max_k` exactly, and fit the closed form
    /// `coeff_k ((x-a)(b-x))^k`. `max_k = n` determines the system; smaller
    /// values are inconsistent, larger ones underdetermined.
    pub fn derive_weights(&self, max_k: usize) -> Result<WeightSequence<S>, Error> {
        let samples = self.interval.interior_grid(4);
        let solutions: Vec<Vec<S>> = samples
            .iter()
            .map(|x| self.solve_premise_at(x, max_k))
            .collect::<Result<_, _>>()?;

        let mut terms = Vec::with_capacity(max_k + 1);
        for k in 0..=max_k {
            let shape = |x: &S| {
                let s = (x.clone() - self.interval.a().clone())
                    * (self.interval.b().clone() - x.clone());
                Scalar::powi(&s, k as i32)
            };
            let coeff = solutions[0][k].clone() / shape(&samples[0]);
            for (x, sol) in samples.iter().zip(&solutions).skip(1) {
                let here = sol[k].clone() / shape(x);
                if !near_zero(&(here.clone() - coeff.clone())) {
                    return Err(Error::InconsistentSystem(format!(
                        "weight w_{k} does not fit coeff * ((x-a)(b-x))^{k}: \
                         {coeff} at {} vs {here} at {x}",
                        samples[0]
                    )));
                }
            }
            terms.push(WeightTerm::ScaledXiEta {
                coeff,
                power: k as u32,
            });
        }
        Ok(WeightSequence::new(
            terms,
            self.interval.clone(),
            "derived".to_string(),
        ))
    }

    /// Solve `sum_k w_k D^k A_t D^k A_z = A_tz` at one point: both sides are
    /// polynomials in `(u, v)` whose coefficients give one linear equation
    /// per monomial.
    fn solve_premise_at(&self, x: &S, max_k: usize) -> Result<Vec<S>, Error> {
        let n = self.n as usize;
        // Pascal triangle up to n.
        let binom: Vec<Vec<S>> = (0..=n)
            .map(|r| (0..=r).map(|c| S::binomial(r as u32, c as u32)).collect())
            .collect();

        // A_tz(x) = sum_r f_r(x) [(1+u)(1+v)]^r has (u^al v^be) coefficient
        // sum_r f_r C(r,al) C(r,be).
        let mut target = vec![vec![S::zero(); n + 1]; n + 1];
        for (r, row) in binom.iter().enumerate() {
            let fr = self.value(r, x);
            if fr.is_zero() {
                continue;
            }
            for (al, left) in row.iter().enumerate() {
                for (be, right) in row.iter().enumerate() {
                    target[al][be] =
                        target[al][be].clone() + fr.clone() * left.clone() * right.clone();
                }
            }
        }

        // rho_k(u) = D^k A_t = sum_i D^k f_i(x) (1+u)^i.
        let mut rho = Vec::with_capacity(max_k + 1);
        for k in 0..=max_k {
            let mut coeffs = vec![S::zero(); n + 1];
            for (i, row) in binom.iter().enumerate() {
                let d = self.derivative(k, i, x);
                if d.is_zero() {
                    continue;
                }
                for (c, b) in coeffs.iter_mut().zip(row) {
                    *c = c.clone() + d.clone() * b.clone();
                }
            }
            rho.push(coeffs);
        }

        // One equation per (al, be): sum_k w_k rho_k[al] rho_k[be] = target[al][be].
        let mut rows = Vec::with_capacity((n + 1) * (n + 1));
        for al in 0..=n {
            for be in 0..=n {
                let coeffs: Vec<S> = rho.iter().map(|r| r[al].clone() * r[be].clone()).collect();
                rows.push((coeffs, target[al][be].clone()));
            }
        }
        solve_linear_system(rows, max_k + 1)
    }
}

impl<S: Scalar> DualFamily<S> for BernsteinFamily<S> {
    fn value(&self, i: usize, x: &S) -> S {
        eval_closed_form(BasisIndex::standard(self.n, i as i64), x, &self.interval)
    }

    fn derivative(&self, order: usize, i: usize, x: &S) -> S {
        calculus::derivative(
            BasisIndex::standard(self.n, i as i64),
            order as u32,
            x,
            &self.interval,
        )
    }

    fn pairing_len(&self) -> usize {
        self.n as usize + 1
    }

    fn describe(&self) -> String {
        format!(
            "bernstein(n={}, interval=[{}, {}])",
            self.n,
            self.interval.a(),
            self.interval.b()
        )
    }
}

/// Gauss-Jordan elimination with exact zero tests in the exact backend.
/// Errors when the system is inconsistent or underdetermined, and validates
/// the solution against every equation.
fn solve_linear_system<S: Scalar>(
    rows: Vec<(Vec<S>, S)>,
    unknowns: usize,
) -> Result<Vec<S>, Error> {
    let mut work: Vec<(Vec<S>, S)> = rows
        .iter()
        .filter(|(coeffs, rhs)| !(coeffs.iter().all(near_zero) && near_zero(rhs)))
        .cloned()
        .collect();
    for (coeffs, rhs) in &work {
        if coeffs.iter().all(near_zero) && !near_zero(rhs) {
            return Err(Error::InconsistentSystem(
                "equation with zero coefficients and nonzero right-hand side".into(),
            ));
        }
    }

    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut next_row = 0usize;
    for col in 0..unknowns {
        // Partial pivoting keeps the float path stable; exact paths just need
        // any nonzero entry.
        let pivot = (next_row..work.len())
            .filter(|&r| !near_zero(&work[r].0[col]))
            .max_by(|&r1, &r2| {
                let a = work[r1].0[col].to_f64().abs();
                let b = work[r2].0[col].to_f64().abs();
                a.partial_cmp(&b).unwrap_or(std::cmp::Ordering::Equal)
            });
        let Some(pivot) = pivot else { continue };
        work.swap(next_row, pivot);
        let inv = S::one() / work[next_row].0[col].clone();
        for c in work[next_row].0.iter_mut() {
            *c = c.clone() * inv.clone();
        }
        work[next_row].1 = work[next_row].1.clone() * inv;
        for r in 0..work.len() {
            if r == next_row || near_zero(&work[r].0[col]) {
                continue;
            }
            let factor = work[r].0[col].clone();
            for c in 0..unknowns {
                let delta = factor.clone() * work[next_row].0[c].clone();
                work[r].0[c] = work[r].0[c].clone() - delta;
            }
            let delta = factor * work[next_row].1.clone();
            work[r].1 = work[r].1.clone() - delta;
        }
        pivot_rows.push(next_row);
        pivot_cols.push(col);
        next_row += 1;
    }

    if pivot_cols.len() < unknowns {
        return Err(Error::InconsistentSystem(format!(
            "underdetermined: rank {} < {unknowns} unknowns",
            pivot_cols.len()
        )));
    }
    for (coeffs, rhs) in work.iter().skip(next_row) {
        if coeffs.iter().all(near_zero) && !near_zero(rhs) {
            return Err(Error::InconsistentSystem(
                "rank-deficient system has no solution".into(),
            ));
        }
    }

    let mut solution = vec![S::zero(); unknowns];
    for (row, col) in pivot_rows.iter().zip(&pivot_cols) {
        solution[*col] = work[*row].1.clone();
    }
    // Residual check over the original equations.
    for (coeffs, rhs) in &rows {
        let lhs = coeffs
            .iter()
            .zip(&solution)
            .map(|(c, w)| c.clone() * w.clone())
            .fold(S::zero(), |a, b| a + b);
        if !near_zero(&(lhs - rhs.clone())) {
            return Err(Error::InconsistentSystem(
                "no weight sequence satisfies the premise".into(),
            ));
        }
    }
    Ok(solution)
}

/// The Szasz-Mirakjan type family `f_i = (n xi)^i e^(-n xi) / i!` with a
/// truncation index for the infinite pairing sum. Float backend.
#[derive(Debug, Clone, PartialEq)]
pub struct SzaszFamily {
    params: SzaszBasisParams,
    truncation: usize,
}

impl SzaszFamily {
    pub fn new(n: u32, interval: Interval<f64>, truncation: usize) -> Result<Self, Error> {
        Ok(SzaszFamily {
            params: SzaszBasisParams::new(n, interval)?,
            truncation,
        })
    }

    pub fn n(&self) -> u32 {
        self.params.n()
    }

    pub fn interval(&self) -> &Interval<f64> {
        self.params.interval()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `d/dx` scale factor: `d lambda / dx = n / (b - a)`.
    fn beta(&self) -> f64 {
        self.params.n() as f64 / self.params.interval().width()
    }

    /// Weight derivation by coefficient matching. The index recursion
    /// `D f_i = beta (f_{i-1} - f_i)` gives `D A_t = beta (t-1) A_t`, so the
    /// k-th derivative factors contribute `(beta u)^k (beta v)^k A_t A_z`,
    /// while `A_tz / (A_t A_z) = exp(n xi u v)` contributes `(n xi)^k / k!`
    /// at `(uv)^k`. Matching term by term:
    /// `w_k = xi^k (b-a)^(2k) / (n^k k!)`.
    pub fn derive_weights(&self, max_k: usize) -> Result<WeightSequence<f64>, Error> {
        let n = self.params.n();
        let width: f64 = self.params.interval().width();
        let terms = (0..=max_k)
            .map(|k| {
                let coeff = width.powi(2 * k as i32)
                    / ((n as f64).powi(k as i32) * factorial::<f64>(k as u32));
                WeightTerm::ScaledXi {
                    coeff,
                    power: k as u32,
                }
            })
            .collect();
        Ok(WeightSequence::new(
            terms,
            self.params.interval().clone(),
            "derived".to_string(),
        ))
    }
}

impl DualFamily<f64> for SzaszFamily {
    fn value(&self, i: usize, x: &f64) -> f64 {
        szasz_basis(&self.params, i as u32, *x)
    }

    /// `D^k f_i = beta^k sum_r C(k,r) (-1)^(k-r) f_{i-r}` from the index
    /// recursion `D f_i = beta (f_{i-1} - f_i)`, `f_{-1} = 0`.
    fn derivative(&self, order: usize, i: usize, x: &f64) -> f64 {
        let beta = self.beta();
        let mut sum = 0.0;
        for r in 0..=order.min(i) {
            let sign = if (order - r).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            sum += sign * f64::binomial(order as u32, r as u32) * self.value(i - r, x);
        }
        beta.powi(order as i32) * sum
    }

    fn pairing_len(&self) -> usize {
        self.truncation + 1
    }

    fn describe(&self) -> String {
        format!(
            "szasz(n={}, interval=[{}, {}], truncation={})",
            self.params.n(),
            self.params.interval().a(),
            self.params.interval().b(),
            self.truncation
        )
    }

    /// Geometric extension of the last included bound term
    /// `|w_k| (2 beta)^(2k)` (every `|D^k f_i|` is at most `beta^k 2^k`
    /// because the basis values lie in `[0, 1]`).
    fn tail_bound(&self, weights: &WeightSequence<f64>, x: &f64) -> Option<f64> {
        let last = self.pairing_len().min(weights.len()) - 1;
        if last == 0 {
            return Some(f64::INFINITY);
        }
        let factor = (2.0 * self.beta()).powi(2);
        let term = |k: usize| weights.weight(k, x).abs() * factor.powi(k as i32);
        let t_prev = term(last - 1);
        let t_last = term(last);
        if t_last == 0.0 {
            return Some(0.0);
        }
        let ratio = t_last / t_prev;
        if ratio.is_nan() || ratio >= 1.0 {
            return Some(f64::INFINITY);
        }
        Some(t_last * ratio / (1.0 - ratio))
    }
}

/// Gram matrix of the weighted derivative pairing:
/// `entry (i, j) = sum_k w_k(x) D^k f_i(x) D^k f_j(x)` for `i, j < size`.
///
/// The `k`-sum runs over `min(weights.len(), family.pairing_len())` terms;
/// for the Bernstein family that cut is exact (higher derivatives vanish),
/// for the Szasz family the truncation error is bounded by
/// [`DualFamily::tail_bound`].
pub fn gram_matrix<S: Scalar, F: DualFamily<S>>(
    family: &F,
    weights: &WeightSequence<S>,
    x: &S,
    size: usize,
) -> Vec<Vec<S>> {
    let k_len = weights.len().min(family.pairing_len());
    let derivs: Vec<Vec<S>> = (0..k_len)
        .map(|k| (0..size).map(|i| family.derivative(k, i, x)).collect())
        .collect();
    let w: Vec<S> = (0..k_len).map(|k| weights.weight(k, x)).collect();
    let mut out = vec![vec![S::zero(); size]; size];
    for i in 0..size {
        for j in i..size {
            let mut acc = S::zero();
            for k in 0..k_len {
                acc = acc + w[k].clone() * derivs[k][i].clone() * derivs[k][j].clone();
            }
            out[j][i] = acc.clone();
            out[i][j] = acc;
        }
    }
    out
}

/// Per-point entry of an orthogonality verification report.
#[derive(Debug, Clone)]
pub struct OrthoPoint {
    pub x: String,
    pub max_offdiag: String,
    pub max_diag_dev: String,
    pub max_error: f64,
    pub pass: bool,
}

/// Verification report for one family/weight-sequence pair over a grid.
#[derive(Debug, Clone)]
pub struct OrthogonalityReport {
    pub family: String,
    pub weights: String,
    pub backend: String,
    pub tolerance: String,
    pub matrix_size: usize,
    pub points: Vec<OrthoPoint>,
    pub tail_bound: Option<f64>,
    pub pass: bool,
}

impl OrthogonalityReport {
    pub fn max_error(&self) -> f64 {
        self.points.iter().map(|p| p.max_error).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "weights": self.weights,
            "backend": self.backend,
            "tolerance": self.tolerance,
            "matrix_size": self.matrix_size,
            "tail_bound": self.tail_bound,
            "points": self.points.iter().map(|p| json!({
                "x": p.x,
                "max_offdiag": p.max_offdiag,
                "max_diag_dev": p.max_diag_dev,
                "pass": p.pass,
            })).collect::<Vec<_>>(),
            "verdict": if self.pass { "PASS" } else { "FAIL" },
        })
    }
}

/// Verify the orthogonality relation over a grid: at each point, compare the
/// Gram matrix against `diag(f_0(x), ..., f_{size-1}(x))`. A point passes
/// when both the largest off-diagonal magnitude and the largest diagonal
/// deviation are within `tol` (zero tolerance is meaningful in the rational
/// backend) and, for truncated families, the tail bound stays below a
/// tenth of the tolerance. Failures are report entries, not errors.
pub fn verify_orthogonality<S: Scalar, F: DualFamily<S>>(
    family: &F,
    weights: &WeightSequence<S>,
    grid: &[S],
    tol: &S,
    size: usize,
) -> OrthogonalityReport {
    let mut points = Vec::with_capacity(grid.len());
    let mut all_pass = true;
    let mut worst_tail: Option<f64> = None;
    for x in grid {
        let gram = gram_matrix(family, weights, x, size);
        let mut max_off = S::zero();
        let mut max_diag = S::zero();
        for (i, row) in gram.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                if i == j {
                    let dev = (entry.clone() - family.value(i, x)).abs();
                    if dev > max_diag {
                        max_diag = dev;
                    }
                } else {
                    let mag = entry.abs();
                    if mag > max_off {
                        max_off = mag;
                    }
                }
            }
        }
        let mut pass = max_off <= *tol && max_diag <= *tol;
        if let Some(bound) = family.tail_bound(weights, x) {
            worst_tail = Some(worst_tail.unwrap_or(0.0).max(bound));
            if bound.is_nan() || bound > tol.to_f64() / 10.0 {
                pass = false;
            }
        }
        all_pass &= pass;
        points.push(OrthoPoint {
            x: x.to_string(),
            max_offdiag: max_off.to_string(),
            max_diag_dev: max_diag.to_string(),
            max_error: max_off.to_f64().max(max_diag.to_f64()),
            pass,
        });
    }
    OrthogonalityReport {
        family: family.describe(),
        weights: weights.describe(),
        backend: S::backend_name().to_string(),
        tolerance: tol.to_string(),
        matrix_size: size,
        points,
        tail_bound: worst_tail,
        pass: all_pass,
    }
}
