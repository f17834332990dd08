//! Identity verification suites.
//!
//! Each suite sweeps one family of identities over degree/index/interval
//! grids and reports per-identity instance counts and the largest observed
//! deviation. In the rational backend every listed identity is asserted
//! exactly (max error `0`); the float backend uses a small tolerance.
//! Checks that are inherently transcendental (Poisson limits, Szasz sums,
//! central differences) always run in binary64 at their own documented
//! tolerances and are tagged as such in the report.

use serde_json::{json, Value};

use crate::basis::{
    alternating_sum, elevate_basis, eval_closed_form, eval_recursive, symmetry_partner, BasisIndex,
    Interval,
};
use crate::calculus::{derivative, derivative_first, product_identity, recurrence_compose};
use crate::curve::{
    affine_subdivision_identity, blend_subdivision_identity, composition_identity_holds_on,
    subdivision_identity, BezierCurve,
};
use crate::duality::{
    verify_orthogonality, BernsteinFamily, SzaszFamily, WeightSequence, WeightTerm,
};
use crate::genfun::{eval_double_sum, eval_exponential_form, poly_genfun, taylor_coefficients};
use crate::poly::BernsteinPoly;
use crate::scalar::{factorial, Scalar};
use crate::stochastic::{
    binomial_pmf, mean_variance, pmf_moments, poisson_limit_error, szasz_basis,
    szasz_generating_sum, SzaszBasisParams,
};

/// Suites the verifier knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Recurrence,
    Derivatives,
    Subdivision,
    Product,
    Algebra,
    Elevation,
    Distribution,
    Orthogonality,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "recurrence" => Suite::Recurrence,
            "derivatives" => Suite::Derivatives,
            "subdivision" => Suite::Subdivision,
            "product" => Suite::Product,
            "algebra" => Suite::Algebra,
            "elevation" => Suite::Elevation,
            "distribution" => Suite::Distribution,
            "orthogonality" => Suite::Orthogonality,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Recurrence => "recurrence",
            Suite::Derivatives => "derivatives",
            Suite::Subdivision => "subdivision",
            Suite::Product => "product",
            Suite::Algebra => "algebra",
            Suite::Elevation => "elevation",
            Suite::Distribution => "distribution",
            Suite::Orthogonality => "orthogonality",
            Suite::All => "all",
        }
    }

    /// The individual suites, in the order `all` runs them.
    pub fn individual() -> [Suite; 8] {
        [
            Suite::Recurrence,
            Suite::Derivatives,
            Suite::Subdivision,
            Suite::Product,
            Suite::Algebra,
            Suite::Elevation,
            Suite::Distribution,
            Suite::Orthogonality,
        ]
    }
}

/// Outcome of one identity check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub identity: String,
    pub backend: String,
    pub instances: u64,
    pub max_error: String,
    pub max_error_f64: f64,
    pub pass: bool,
    pub detail: Option<String>,
}

/// Outcome of a whole suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub backend: String,
    pub max_n: u32,
    pub tolerance: String,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "backend": self.backend,
            "max_n": self.max_n,
            "tolerance": self.tolerance,
            "checks": self.checks.iter().map(|c| {
                json!({
                    "identity": c.identity,
                    "backend": c.backend,
                    "instances": c.instances,
                    "max_error": c.max_error,
                    "verdict": if c.pass { "PASS" } else { "FAIL" },
                    "detail": c.detail,
                })
            }).collect::<Vec<_>>(),
            "verdict": if self.pass { "PASS" } else { "FAIL" },
        })
    }
}

/// Accumulates instance counts and the worst deviation of one identity.
struct Tracker<S: Scalar> {
    identity: &'static str,
    instances: u64,
    max_error: S,
    pass: bool,
    tol: S,
    detail: Option<String>,
}

impl<S: Scalar> Tracker<S> {
    fn new(identity: &'static str, tol: &S) -> Self {
        Tracker {
            identity,
            instances: 0,
            max_error: S::zero(),
            pass: true,
            tol: tol.clone(),
            detail: None,
        }
    }

    fn record(&mut self, lhs: S, rhs: S) {
        let err = (lhs - rhs).abs();
        self.instances += 1;
        // A NaN deviation in the float backend must surface as a failure.
        if err.to_f64().is_nan() {
            self.pass = false;
        }
        if err > self.max_error {
            self.max_error = err;
        }
    }

    fn count_pass(&mut self, ok: bool) {
        self.instances += 1;
        self.pass &= ok;
    }

    fn finish(mut self) -> CheckResult {
        self.pass &= self.max_error <= self.tol;
        CheckResult {
            identity: self.identity.to_string(),
            backend: S::backend_name().to_string(),
            instances: self.instances,
            max_error: self.max_error.to_string(),
            max_error_f64: self.max_error.to_f64(),
            pass: self.pass,
            detail: self.detail,
        }
    }
}

/// The fixed interval set every suite sweeps.
fn test_intervals<S: Scalar>() -> Vec<Interval<S>> {
    vec![
        Interval::from_ints(0, 1).unwrap(),
        Interval::from_ints(1, 3).unwrap(),
        Interval::from_ints(-2, 5).unwrap(),
    ]
}

fn m_variants(n: u32) -> [i32; 2] {
    [n as i32, n as i32 + 1]
}

/// Run one suite. `max_n` caps the degree sweeps; `tol` is the identity
/// tolerance in the chosen backend (use zero for the rational backend).
pub fn run_suite<S: Scalar>(suite: Suite, max_n: u32, tol: &S) -> SuiteReport {
    let checks = match suite {
        Suite::Recurrence => recurrence_checks(max_n, tol),
        Suite::Derivatives => derivative_checks(max_n, tol),
        Suite::Subdivision => subdivision_checks(max_n, tol),
        Suite::Product => product_checks(max_n, tol),
        Suite::Algebra => algebra_checks(max_n, tol),
        Suite::Elevation => elevation_checks(max_n, tol),
        Suite::Distribution => distribution_checks(max_n, tol),
        Suite::Orthogonality => orthogonality_checks(max_n, tol, None, None),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::individual() {
                all.extend(run_suite(s, max_n, tol).checks);
            }
            all
        }
    };
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport {
        suite: suite.name().to_string(),
        backend: S::backend_name().to_string(),
        max_n,
        tolerance: tol.to_string(),
        checks,
        pass,
    }
}

fn recurrence_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut rec = Tracker::new("recurrence_equals_closed_form", tol);
    let mut partition = Tracker::new("partition_of_unity", tol);
    let mut alt = Tracker::new("alternating_sum_closed_form", tol);
    let mut sym = Tracker::new("symmetry", tol);
    let mut scale = Tracker::new("scaling_law", tol);
    let mut corner = Tracker::new("corner_values", tol);
    let mut compose = Tracker::new("recurrence_composition", tol);

    for iv in &intervals {
        let grid = iv.grid(11);
        for n in 0..=max_n {
            for x in &grid {
                for k in 0..=n as i64 {
                    for m in m_variants(n) {
                        let idx = BasisIndex::new(n, k, m);
                        rec.record(eval_recursive(idx, x, iv), eval_closed_form(idx, x, iv));

                        let std_idx = BasisIndex::standard(n, k);
                        let scaled = Scalar::powi(&iv.width(), n as i32 - m)
                            * eval_closed_form(std_idx, x, iv);
                        scale.record(eval_closed_form(idx, x, iv), scaled);

                        sym.record(symmetry_partner(idx, x, iv), eval_closed_form(idx, x, iv));
                    }
                }
                let sum = (0..=n as i64)
                    .map(|k| eval_closed_form(BasisIndex::standard(n, k), x, iv))
                    .fold(S::zero(), |a, b| a + b);
                partition.record(sum, S::one());

                let signed = (0..=n as i64)
                    .map(|k| {
                        let sign = if k % 2 == 0 { S::one() } else { -S::one() };
                        sign * eval_closed_form(BasisIndex::standard(n, k), x, iv)
                    })
                    .fold(S::zero(), |a, b| a + b);
                alt.record(alternating_sum(n, x, iv), signed);
            }
            for k in 0..=n as i64 {
                let idx = BasisIndex::standard(n, k);
                let delta_a = if k == 0 { S::one() } else { S::zero() };
                let delta_b = if k == n as i64 { S::one() } else { S::zero() };
                corner.record(eval_closed_form(idx, iv.a(), iv), delta_a);
                corner.record(eval_closed_form(idx, iv.b(), iv), delta_b);
            }
        }
        // Degree-splitting composition stays exact but is costlier; cap at 8.
        for n in 0..=max_n.min(8) {
            for k in 0..=n as i64 {
                for m in m_variants(n) {
                    for v in 0..=n {
                        for x in iv.grid(5) {
                            let idx = BasisIndex::new(n, k, m);
                            compose.record(
                                recurrence_compose(idx, v, &x, iv),
                                eval_closed_form(idx, &x, iv),
                            );
                        }
                    }
                }
            }
        }
    }
    vec![
        rec.finish(),
        partition.finish(),
        alt.finish(),
        sym.finish(),
        scale.finish(),
        corner.finish(),
        compose.finish(),
    ]
}

/// Formal derivative of a monomial coefficient vector.
fn monomial_derivative<S: Scalar>(coeffs: &[S]) -> Vec<S> {
    if coeffs.len() <= 1 {
        return vec![S::zero()];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(p, c)| S::from_int(p as i64) * c.clone())
        .collect()
}

fn horner<S: Scalar>(coeffs: &[S], x: &S) -> S {
    coeffs
        .iter()
        .rev()
        .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
}

fn derivative_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut oracle = Tracker::new("derivative_matches_symbolic_oracle", tol);
    let mut first = Tracker::new("first_derivative_two_term_form", tol);
    let mut above = Tracker::new("derivative_above_degree_vanishes", tol);
    let mut unity = Tracker::new("derivative_sum_over_k_vanishes", tol);

    for iv in &intervals {
        let grid = iv.grid(5);
        for n in 0..=max_n.min(8) {
            for k in 0..=n as i64 {
                for m in m_variants(n) {
                    let idx = BasisIndex::new(n, k, m);
                    // Monomial expansion of the single basis function, then
                    // formal differentiation of the coefficient vector.
                    let mut basis_coeffs = vec![S::zero(); n as usize + 1];
                    basis_coeffs[k as usize] = S::one();
                    let mut mono = BernsteinPoly::new(basis_coeffs, iv.clone(), m)
                        .unwrap()
                        .to_monomial();
                    for l in 0..=n + 2 {
                        for x in &grid {
                            let formal = horner(&mono, x);
                            if l == 1 {
                                first.record(derivative_first(idx, x, iv), formal.clone());
                            }
                            oracle.record(derivative(idx, l, x, iv), formal);
                            if l > n {
                                above.record(derivative(idx, l, x, iv), S::zero());
                            }
                        }
                        mono = monomial_derivative(&mono);
                    }
                }
            }
            for x in &grid {
                let sum = (0..=n as i64)
                    .map(|k| derivative_first(BasisIndex::standard(n, k), x, iv))
                    .fold(S::zero(), |a, b| a + b);
                unity.record(sum, S::zero());
            }
        }
    }

    // Float-only agreement with central differences (relative, floored at 1).
    let mut central = Tracker::new("central_difference_agreement", &1e-5_f64);
    for iv in test_intervals::<f64>() {
        let h = 1e-6;
        for n in 0..=max_n.min(8) {
            for k in 0..=n as i64 {
                let idx = BasisIndex::standard(n, k);
                for x in iv.interior_grid(21) {
                    let analytic = derivative(idx, 1, &x, &iv);
                    let numeric = (eval_closed_form(idx, &(x + h), &iv)
                        - eval_closed_form(idx, &(x - h), &iv))
                        / (2.0 * h);
                    let rel = (analytic - numeric).abs() / analytic.abs().max(1.0);
                    central.record(rel, 0.0);
                }
            }
        }
    }

    vec![
        oracle.finish(),
        first.finish(),
        above.finish(),
        unity.finish(),
        central.finish(),
    ]
}

fn subdivision_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let unit = Interval::<S>::unit();
    let grid = unit.grid(5);

    let mut unit_subdiv = Tracker::new("unit_interval_subdivision", tol);
    for n in 0..=max_n.min(8) {
        for j in 0..=n {
            for x in &grid {
                for y in &grid {
                    let rhs = subdivision_identity(j, n, x, y, &unit);
                    let lhs = eval_closed_form(
                        BasisIndex::standard(n, j as i64),
                        &(x.clone() * y.clone()),
                        &unit,
                    );
                    unit_subdiv.record(lhs, rhs);
                }
            }
        }
    }
    if max_n >= 2 {
        // Anchor instance: B[1,2](1/4) = 3/8 from x = y = 1/2.
        let half = S::from_ratio(1, 2);
        unit_subdiv.record(
            subdivision_identity(1, 2, &half, &half, &unit),
            S::from_ratio(3, 8),
        );
    }

    let mut affine = Tracker::new("affine_composition_variant", tol);
    let mut blend = Tracker::new("blend_composition_variant", tol);
    let coarse = unit.grid(4);
    for n in 0..=max_n.min(6) {
        for j in 0..=n {
            for x in &coarse {
                for y in &coarse {
                    let arg = (S::one() - y.clone()) * x.clone() + y.clone();
                    affine.record(
                        affine_subdivision_identity(j, n, x, y),
                        eval_closed_form(BasisIndex::standard(n, j as i64), &arg, &unit),
                    );
                    for z in &coarse {
                        let arg = (S::one() - y.clone()) * x.clone() + y.clone() * z.clone();
                        blend.record(
                            blend_subdivision_identity(j, n, x, y, z),
                            eval_closed_form(BasisIndex::standard(n, j as i64), &arg, &unit),
                        );
                    }
                }
            }
        }
    }

    // Determine and archive where the general-interval composition identity
    // holds; it is expected exactly on the unit interval and refuted by
    // counterexample elsewhere (shifts, scalings, and unit-width shifts all
    // fail, so neither a = 0 nor width 1 alone is sufficient).
    let mut domain = Tracker::new("general_interval_composition_domain", tol);
    let probe_intervals: Vec<(String, Interval<S>)> = vec![
        ("[0,1]".into(), Interval::from_ints(0, 1).unwrap()),
        ("[1,3]".into(), Interval::from_ints(1, 3).unwrap()),
        ("[-2,5]".into(), Interval::from_ints(-2, 5).unwrap()),
        ("[0,2]".into(), Interval::from_ints(0, 2).unwrap()),
        ("[1,2]".into(), Interval::from_ints(1, 2).unwrap()),
    ];
    let mut verdicts = Vec::new();
    for (name, iv) in &probe_intervals {
        let outcome = composition_identity_holds_on(iv, max_n.min(4), 4, tol);
        let holds = outcome.is_ok();
        match outcome {
            Ok(()) => verdicts.push(format!("{name}: holds exactly")),
            Err((j, n, x, y)) => verdicts.push(format!(
                "{name}: fails (first counterexample j={j} n={n} x={x} y={y})"
            )),
        }
        // Degree 0 holds everywhere; from degree 1 on, only the unit interval.
        let expected_to_hold = *name == "[0,1]" || max_n == 0;
        domain.count_pass(holds == expected_to_hold);
    }
    domain.detail = Some(verdicts.join("; "));

    // Geometric subdivision: splitting a curve reproduces it exactly.
    let mut split = Tracker::new("bezier_split_reproduces_curve", tol);
    let mut routes = Tracker::new("bezier_basis_equals_de_casteljau", tol);
    for iv in test_intervals::<S>() {
        let curve = BezierCurve::new(
            vec![
                vec![S::zero(), S::zero()],
                vec![S::one(), S::from_int(2)],
                vec![S::from_int(2), S::zero()],
                vec![S::from_int(3), S::from_ratio(1, 2)],
            ],
            iv.clone(),
        )
        .unwrap();
        let mid = iv.from_unit(&S::from_ratio(1, 2));
        let (left, right) = curve.split(&mid).unwrap();
        for x in left.interval().grid(6) {
            for (l, c) in left.eval(&x).into_iter().zip(curve.eval(&x)) {
                split.record(l, c);
            }
        }
        for x in right.interval().grid(6) {
            for (r, c) in right.eval(&x).into_iter().zip(curve.eval(&x)) {
                split.record(r, c);
            }
        }
        for x in iv.grid(7) {
            for (u, v) in curve.eval(&x).into_iter().zip(curve.eval_de_casteljau(&x)) {
                routes.record(u, v);
            }
        }
    }

    vec![
        unit_subdiv.finish(),
        affine.finish(),
        blend.finish(),
        domain.finish(),
        split.finish(),
        routes.finish(),
    ]
}

fn product_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut in_range = Tracker::new("product_composition_identity", tol);
    let mut out_range = Tracker::new("product_identity_out_of_range_zero", tol);
    for iv in &intervals {
        let grid = iv.grid(5);
        for n in 0..=max_n.min(8) {
            for k1 in 0..=n {
                for k2 in 0..=n {
                    let pairs = [(n as i32, n as i32), (0, 2), (n as i32, n as i32 + 1)];
                    for (m1, m2) in pairs {
                        for x in &grid {
                            let rhs = product_identity(k1, k2, m1, m2, n, x, iv);
                            if k1 + k2 <= n {
                                let lhs = eval_closed_form(
                                    BasisIndex::new(n, (k1 + k2) as i64, m1 + m2),
                                    x,
                                    iv,
                                );
                                in_range.record(lhs, rhs);
                            } else {
                                out_range.record(rhs, S::zero());
                            }
                        }
                    }
                }
            }
        }
    }
    vec![in_range.finish(), out_range.finish()]
}

/// Deterministic coefficient fixtures for the algebra sweeps.
fn fixture_coeffs<S: Scalar>(n: u32) -> Vec<S> {
    (0..=n as i64)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            S::from_ratio(sign * (2 * k + 1), k + 2)
        })
        .collect()
}

fn algebra_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut mul_xi = Tracker::new("xi_multiplication_pointwise", tol);
    let mut mul_eta = Tracker::new("eta_multiplication_pointwise", tol);
    let mut round_xi = Tracker::new("xi_multiply_divide_round_trip", tol);
    let mut round_eta = Tracker::new("eta_multiply_divide_round_trip", tol);
    let mut mono = Tracker::new("monomial_conversion_round_trip", tol);
    let mut not_div = Tracker::new("non_divisible_inputs_rejected", tol);

    for iv in &intervals {
        let grid = iv.grid(7);
        for n in 0..=max_n.min(8) {
            let p = BernsteinPoly::standard(fixture_coeffs::<S>(n), iv.clone()).unwrap();
            for d in 1..=3u32 {
                let qx = p.multiply_by_xi_power(d);
                let qe = p.multiply_by_eta_power(d);
                for x in &grid {
                    mul_xi.record(qx.eval(x), Scalar::powi(&iv.xi(x), d as i32) * p.eval(x));
                    mul_eta.record(qe.eval(x), Scalar::powi(&iv.eta(x), d as i32) * p.eval(x));
                }
                let back_x = qx.divide_by_xi_power(d).unwrap();
                let back_e = qe.divide_by_eta_power(d).unwrap();
                for (u, v) in back_x.coeffs().iter().zip(p.coeffs()) {
                    round_xi.record(u.clone(), v.clone());
                }
                for (u, v) in back_e.coeffs().iter().zip(p.coeffs()) {
                    round_eta.record(u.clone(), v.clone());
                }
            }

            let mono_coeffs = p.to_monomial();
            let back = BernsteinPoly::from_monomial(&mono_coeffs, iv.clone(), n).unwrap();
            for (u, v) in back.coeffs().iter().zip(p.coeffs()) {
                mono.record(u.clone(), v.clone());
            }
            for x in &grid {
                mono.record(horner(&mono_coeffs, x), p.eval(x));
            }

            // Division errors: nonzero leading/trailing coefficient.
            let blocked = BernsteinPoly::standard(
                std::iter::once(S::one())
                    .chain(fixture_coeffs::<S>(n))
                    .collect(),
                iv.clone(),
            )
            .unwrap();
            not_div.count_pass(blocked.divide_by_xi_power(1).is_err());
            let blocked = BernsteinPoly::standard(
                fixture_coeffs::<S>(n)
                    .into_iter()
                    .chain(std::iter::once(S::one()))
                    .collect(),
                iv.clone(),
            )
            .unwrap();
            not_div.count_pass(blocked.divide_by_eta_power(1).is_err());
        }
    }
    vec![
        mul_xi.finish(),
        mul_eta.finish(),
        round_xi.finish(),
        round_eta.finish(),
        mono.finish(),
        not_div.finish(),
    ]
}

fn elevation_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut example = Tracker::new("elevation_coefficient_example", tol);
    let mut pointwise = Tracker::new("elevation_preserves_values", tol);
    let mut range = Tracker::new("elevation_preserves_coefficient_range", tol);
    let mut single = Tracker::new("basis_degree_elevation_identity", tol);
    let mut constants = Tracker::new("constants_elevate_to_constants", tol);

    for iv in &intervals {
        // Coefficient anchor [0,1] -> [0, 1/2, 1].
        let p = BernsteinPoly::standard(vec![S::zero(), S::one()], iv.clone()).unwrap();
        let q = p.elevate(1);
        let expected = [S::zero(), S::from_ratio(1, 2), S::one()];
        for (u, v) in q.coeffs().iter().zip(expected.iter()) {
            example.record(u.clone(), v.clone());
        }

        let grid = iv.grid(7);
        for n in 0..=max_n.min(8) {
            let p = BernsteinPoly::standard(fixture_coeffs::<S>(n), iv.clone()).unwrap();
            let lo = p
                .coeffs()
                .iter()
                .cloned()
                .fold(None::<S>, |acc, c| {
                    Some(acc.map_or(c.clone(), |a| if c < a { c } else { a }))
                })
                .unwrap();
            let hi = p
                .coeffs()
                .iter()
                .cloned()
                .fold(None::<S>, |acc, c| {
                    Some(acc.map_or(c.clone(), |a| if c > a { c } else { a }))
                })
                .unwrap();
            for times in 1..=3u32 {
                let q = p.elevate(times);
                for x in &grid {
                    pointwise.record(q.eval(x), p.eval(x));
                }
                for c in q.coeffs() {
                    range.count_pass(*c >= lo && *c <= hi);
                }
            }

            for k in 0..=n as i64 {
                for x in &grid {
                    let (t1, t2) = elevate_basis(n, k, x, iv);
                    single.record(t1 + t2, eval_closed_form(BasisIndex::standard(n, k), x, iv));
                }
            }
        }

        let c = BernsteinPoly::standard(vec![S::from_ratio(3, 7)], iv.clone()).unwrap();
        for coeff in c.elevate(3).coeffs() {
            constants.record(coeff.clone(), S::from_ratio(3, 7));
        }
    }
    vec![
        example.finish(),
        pointwise.finish(),
        range.finish(),
        single.finish(),
        constants.finish(),
    ]
}

fn distribution_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let intervals = test_intervals::<S>();
    let mut partition = Tracker::new("pmf_nonnegative_unit_sum", tol);
    let mut moments = Tracker::new("pmf_moments_closed_form", tol);
    for iv in &intervals {
        for n in 0..=max_n.min(20) {
            for x in iv.grid(7) {
                let pmf = binomial_pmf(n, &x, iv).unwrap();
                partition.count_pass(pmf.iter().all(|p| *p >= S::zero()));
                let sum = pmf.iter().fold(S::zero(), |a, b| a + b.clone());
                partition.record(sum, S::one());

                let (mean, variance) = mean_variance(n, &x, iv).unwrap();
                let (bmean, bvariance) = pmf_moments(&pmf);
                moments.record(mean, bmean);
                moments.record(variance, bvariance);
            }
        }
    }

    // Poisson limit ladder (inherently float): strictly decreasing error in n
    // and first-order smallness at n = 10^4.
    let mut poisson = Tracker::new("poisson_limit_monotone_ladder", &5e-4_f64);
    for iv in test_intervals::<f64>() {
        for k in 0..=6u32 {
            let errs: Vec<f64> = [100, 1000, 10_000]
                .iter()
                .map(|&n| poisson_limit_error(n, 2.0, k, &iv).unwrap())
                .collect();
            poisson.count_pass(errs[1] < errs[0] && errs[2] < errs[1]);
            if k == 3 {
                poisson.record(errs[2], 0.0);
            }
        }
    }

    // Szasz partition of unity and reparametrization invariance (float).
    let mut szasz = Tracker::new("szasz_partition_and_reparametrization", &1e-12_f64);
    let params = SzaszBasisParams::new(5, Interval::<f64>::unit()).unwrap();
    let total: f64 = (0..=60).map(|i| szasz_basis(&params, i, 1.0)).sum();
    szasz.record(total, 1.0);
    for t in [0.5, 1.0] {
        for x in [0.3, 0.8] {
            szasz.record(
                szasz_generating_sum(&params, t, x, 80),
                ((t - 1.0) * params.rate(x)).exp(),
            );
        }
    }
    let wide = SzaszBasisParams::new(3, Interval::new(-2.0, 6.0).unwrap()).unwrap();
    let unit_params = SzaszBasisParams::new(3, Interval::<f64>::unit()).unwrap();
    for x in [-1.0, 2.0, 5.0] {
        for i in [0, 2, 9] {
            szasz.record(
                szasz_basis(&wide, i, x),
                szasz_basis(&unit_params, i, (x + 2.0) / 8.0),
            );
        }
    }

    vec![
        partition.finish(),
        moments.finish(),
        poisson.finish(),
        szasz.finish(),
    ]
}

/// Orthogonality checks; `family` / `weights` restrict the sweep when given
/// (`"bernstein"`/`"szasz"`, `"derived"`/`"example"`).
pub fn orthogonality_checks<S: Scalar>(
    max_n: u32,
    tol: &S,
    family: Option<&str>,
    weights: Option<&str>,
) -> Vec<CheckResult> {
    let want =
        |fam: &str, w: &str| family.is_none_or(|f| f == fam) && weights.is_none_or(|sel| sel == w);
    let mut checks = Vec::new();

    if want("bernstein", "derived") {
        let mut derived = Tracker::new("bernstein_gram_diagonal_derived_weights", tol);
        let mut closed = Tracker::new("derived_weight_closed_form", tol);
        for iv in test_intervals::<S>() {
            for n in 0..=max_n.min(6) {
                let fam = BernsteinFamily::new(n, iv.clone());
                let w = match fam.derive_weights(n as usize) {
                    Ok(w) => w,
                    Err(e) => {
                        derived.count_pass(false);
                        derived.detail = Some(format!("derivation failed: {e}"));
                        continue;
                    }
                };
                // Fitted coefficients match (n-k)!/(n! k!).
                for (k, term) in w.terms().iter().enumerate() {
                    let expected = factorial::<S>(n - k as u32)
                        / (factorial::<S>(n) * factorial::<S>(k as u32));
                    match term {
                        WeightTerm::ScaledXiEta { coeff, .. } => {
                            closed.record(coeff.clone(), expected)
                        }
                        _ => closed.count_pass(false),
                    }
                }
                let report =
                    verify_orthogonality(&fam, &w, &iv.interior_grid(11), tol, n as usize + 1);
                derived.count_pass(report.pass);
            }
        }
        checks.push(derived.finish());
        checks.push(closed.finish());
    }

    if want("bernstein", "example") {
        // Archived verdict: the quoted basis-function weights do not satisfy
        // the relation (counterexamples at every probed degree n >= 1).
        let mut quoted = Tracker::new("bernstein_gram_example_basis_weights", tol);
        let mut verdicts = Vec::new();
        for iv in test_intervals::<S>() {
            for n in 1..=max_n.min(3) {
                let fam = BernsteinFamily::new(n, iv.clone());
                let w = WeightSequence::bernstein_example(n, iv.clone());
                let report =
                    verify_orthogonality(&fam, &w, &iv.interior_grid(5), tol, n as usize + 1);
                verdicts.push(format!(
                    "n={n} [{}, {}]: {} (max error {:.3e})",
                    iv.a(),
                    iv.b(),
                    if report.pass { "PASS" } else { "FAIL" },
                    report.max_error()
                ));
                quoted.count_pass(!report.pass);
            }
        }
        quoted.detail = Some(format!(
            "archived verdicts (expected FAIL, pinned): {}",
            verdicts.join("; ")
        ));
        checks.push(quoted.finish());
    }

    if want("szasz", "derived") {
        let mut szasz = Tracker::new("szasz_gram_diagonal_derived_weights", &1e-10_f64);
        let fam = SzaszFamily::new(3, Interval::<f64>::unit(), 80).unwrap();
        let w = fam.derive_weights(80).unwrap();
        let grid: Vec<f64> = Interval::<f64>::unit().interior_grid(5);
        let report = verify_orthogonality(&fam, &w, &grid, &1e-10_f64, 9);
        szasz.count_pass(report.pass);
        szasz.record(report.max_error(), 0.0);
        szasz.detail = report
            .tail_bound
            .map(|b| format!("truncation tail bound {b:.3e}"));
        checks.push(szasz.finish());
    }

    if want("szasz", "example") {
        // The quoted unit-width Szasz weights coincide with the derived ones
        // on [0,1] (PASS) and miss the (b-a)^(2k) factor elsewhere (FAIL).
        let mut quoted = Tracker::new("szasz_gram_example_weights", &1e-10_f64);
        let mut verdicts = Vec::new();

        let fam = SzaszFamily::new(3, Interval::<f64>::unit(), 80).unwrap();
        let w = WeightSequence::szasz_example(3, Interval::<f64>::unit(), 81);
        let report = verify_orthogonality(&fam, &w, &[0.25, 0.5, 0.75], &1e-10_f64, 9);
        verdicts.push(format!(
            "[0,1]: {} (max error {:.3e})",
            if report.pass { "PASS" } else { "FAIL" },
            report.max_error()
        ));
        quoted.count_pass(report.pass);

        let iv = Interval::new(1.0, 3.0).unwrap();
        let fam = SzaszFamily::new(3, iv.clone(), 80).unwrap();
        let w = WeightSequence::szasz_example(3, iv, 81);
        let report = verify_orthogonality(&fam, &w, &[1.5, 2.0, 2.5], &1e-10_f64, 9);
        verdicts.push(format!(
            "[1,3]: {} (max error {:.3e})",
            if report.pass { "PASS" } else { "FAIL" },
            report.max_error()
        ));
        quoted.count_pass(!report.pass);

        quoted.detail = Some(format!(
            "archived verdicts (pinned: PASS on unit width, FAIL otherwise): {}",
            verdicts.join("; ")
        ));
        checks.push(quoted.finish());
    }

    checks
}

/// Orthogonality as a standalone suite report (used by the CLI's
/// family/weights filters).
pub fn run_orthogonality_suite<S: Scalar>(
    max_n: u32,
    tol: &S,
    family: Option<&str>,
    weights: Option<&str>,
) -> SuiteReport {
    let checks = orthogonality_checks(max_n, tol, family, weights);
    let pass = checks.iter().all(|c| c.pass);
    SuiteReport {
        suite: Suite::Orthogonality.name().to_string(),
        backend: S::backend_name().to_string(),
        max_n,
        tolerance: tol.to_string(),
        checks,
        pass,
    }
}

/// Series-consistency checks for the generating functions. Not part of the
/// named CLI suites; exercised by the acceptance tests.
pub fn series_consistency_checks<S: Scalar>(max_n: u32, tol: &S) -> Vec<CheckResult> {
    let mut taylor = Tracker::new("taylor_coefficients_reproduce_basis", tol);
    for iv in test_intervals::<S>() {
        for k in 0..=max_n.min(10) {
            for m in [0, k as i32 + 1] {
                for x in iv.grid(5) {
                    let series = taylor_coefficients(k, &x, &iv, m, max_n.min(10));
                    for n in 0..=max_n.min(10) {
                        taylor.record(
                            series.coefficient(n).clone(),
                            eval_closed_form(BasisIndex::new(n, k as i64, m), &x, &iv),
                        );
                    }
                }
            }
        }
    }

    let mut series = Tracker::new("double_sum_converges_to_exponential_form", &1e-10_f64);
    let iv = Interval::new(1.0_f64, 3.0).unwrap();
    for k in 0..=3u32 {
        for x in [1.0, 1.5, 2.5, 3.0] {
            for t in [0.5, 1.0, 2.0] {
                let closed = eval_exponential_form(k, x, t, &iv, 2).unwrap();
                let partial = eval_double_sum(k, x, t, &iv, 2, 40).unwrap();
                series.record(partial, closed);
            }
        }
    }

    let mut genfun = Tracker::new("poly_genfun_partition_and_alternating", tol);
    for iv in test_intervals::<S>() {
        for n in 0..=max_n.min(20) {
            for x in iv.grid(5) {
                genfun.record(poly_genfun(n, &x, &S::one(), &iv), S::one());
                genfun.record(
                    poly_genfun(n, &x, &(-S::one()), &iv),
                    alternating_sum(n, &x, &iv),
                );
            }
        }
    }

    vec![taylor.finish(), series.finish(), genfun.finish()]
}
