//! Number backends.
//!
//! Every identity in this crate is a statement about rational functions, so the
//! whole library is generic over a [`Scalar`] with two implementations:
//!
//! * [`Rational`] (`num_rational::BigRational`): exact arithmetic, used to
//!   assert polynomial identities with zero tolerance;
//! * `f64`: IEEE binary64, used for the transcendental operations
//!   (exponential generating functions, Poisson limits) and fast tabulation.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::Value;

use crate::error::Error;

/// Exact rational scalar backend.
pub type Rational = num_rational::BigRational;

/// Abstract number used throughout the crate.
///
/// The trait is deliberately small: field arithmetic via the `num_traits::Signed`
/// super-trait, integer powers, binomial coefficients in the backend's own
/// arithmetic, and conversions for I/O.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Signed {
    /// True when arithmetic carries no rounding error.
    fn exact() -> bool;

    /// Backend tag used in reports and serialized output.
    fn backend_name() -> &'static str;

    fn from_int(v: i64) -> Self;

    /// Exact ratio `num/den`; panics if `den == 0`.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Lossy view for reporting; exact backends may lose precision here.
    fn to_f64(&self) -> f64;

    /// Integer power, allowing negative exponents (the base must be nonzero
    /// for `e < 0`).
    fn powi(&self, e: i32) -> Self {
        if e < 0 {
            return Self::one() / self.powi_unsigned((-(e as i64)) as u64);
        }
        self.powi_unsigned(e as u64)
    }

    #[doc(hidden)]
    fn powi_unsigned(&self, e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Binomial coefficient `C(n, k)` computed in this backend.
    ///
    /// The default is the Pascal recurrence, which stays exact in the rational
    /// backend. The float backend overrides it (exact integers up to `n = 64`,
    /// a multiplicative product beyond; `n <= 1029` stays finite in binary64,
    /// larger `n` overflow to infinity).
    fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Self::zero();
        }
        let mut row = vec![Self::one()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(row.len() + 1);
            next.push(Self::one());
            for i in 1..row.len() {
                next.push(row[i - 1].clone() + row[i].clone());
            }
            next.push(Self::one());
            row = next;
        }
        row[k as usize].clone()
    }

    /// Serialize for the crate's JSON formats: rationals as `"p/q"` strings,
    /// floats as JSON numbers.
    fn to_json(&self) -> Value;

    /// Parse from the crate's JSON formats (accepts both string and numeric
    /// encodings).
    fn from_json(v: &Value) -> Result<Self, Error>;

    /// Parse a command-line or file literal: `"p/q"`, an integer, or a decimal
    /// (decimals are exact in the rational backend: `"0.25"` -> 1/4).
    fn parse_str(s: &str) -> Result<Self, Error>;
}

impl Scalar for Rational {
    fn exact() -> bool {
        true
    }

    fn backend_name() -> &'static str {
        "rational"
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::String(s) => Self::parse_str(s),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(Self::from_int(i))
                } else if let Some(f) = n.as_f64() {
                    Rational::from_float(f)
                        .ok_or_else(|| Error::Parse(format!("non-finite number {f}")))
                } else {
                    Err(Error::Parse(format!("unsupported number {n}")))
                }
            }
            other => Err(Error::Parse(format!(
                "expected rational literal, got {other}"
            ))),
        }
    }

    fn parse_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Ok(r) = Rational::from_str(s) {
            return Ok(r);
        }
        parse_decimal(s).ok_or_else(|| Error::Parse(format!("invalid rational literal {s:?}")))
    }
}

impl Scalar for f64 {
    fn exact() -> bool {
        false
    }

    fn backend_name() -> &'static str {
        "float64"
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        num as f64 / den as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return 0.0;
        }
        let k = k.min(n - k);
        if n <= 64 {
            // Stays an exact integer: C(64, 32) < 2^61.
            let mut c: u128 = 1;
            for i in 1..=k as u128 {
                c = c * (n as u128 - k as u128 + i) / i;
            }
            return c as f64;
        }
        // Partial products Pi (n-k+i)/i are the increasing sequence C(n-k+j, j),
        // so grouping each factor as a ratio keeps intermediates below the result.
        let mut c = 1.0_f64;
        for i in 1..=k as u64 {
            c *= (n as u64 - k as u64 + i) as f64 / i as f64;
        }
        c
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or_else(|| Value::String(self.to_string()))
    }

    fn from_json(v: &Value) -> Result<Self, Error> {
        match v {
            Value::Number(n) => n
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("unsupported number {n}"))),
            Value::String(s) => Self::parse_str(s),
            other => Err(Error::Parse(format!("expected float literal, got {other}"))),
        }
    }

    fn parse_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: f64 = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid numerator in {s:?}")))?;
            let den: f64 = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid denominator in {s:?}")))?;
            if den == 0.0 {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(num / den);
        }
        s.parse()
            .map_err(|_| Error::Parse(format!("invalid float literal {s:?}")))
    }
}

/// Exact decimal-to-rational conversion: `"1.25"` -> 5/4, `"-0.3"` -> -3/10.
fn parse_decimal(s: &str) -> Option<Rational> {
    let (sign, digits) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let mut num = BigInt::from_str(if int_part.is_empty() { "0" } else { int_part }).ok()?;
    let mut den = BigInt::from(1);
    for c in frac_part.chars() {
        num = num * 10 + (c.to_digit(10).unwrap() as i64);
        den *= 10;
    }
    Some(Rational::new(num * sign, den))
}

/// `n!` in the requested backend.
pub fn factorial<S: Scalar>(n: u32) -> S {
    let mut acc = S::one();
    for i in 1..=n as i64 {
        acc = acc * S::from_int(i);
    }
    acc
}

/// Multinomial coefficient `n! / (x! y! z!)` with `x + y + z == n`.
pub fn multinomial3<S: Scalar>(n: u32, x: u32, y: u32, z: u32) -> S {
    assert_eq!(x + y + z, n, "multinomial parts must sum to n");
    S::binomial(n, x) * S::binomial(n - x, y)
}
