//! Fixed-point edge weights and exact rational scaling.
//!
//! Every weight is an integer count of milli-units, so all threshold
//! comparisons (`d <= factor * rho`) are exact integer comparisons carried out
//! in 128-bit arithmetic.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// Exact non-negative rational used for every tunable factor (κ, α, β, η, ε).
pub type Scalar = Ratio<u64>;

/// Number of milli-units in one weight unit.
pub const MILLI_PER_UNIT: u64 = 1000;

/// A non-negative distance in milli-units. [`Weight::INFINITY`] marks
/// unreachable vertices.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(u64);

impl Weight {
    pub const ZERO: Weight = Weight(0);
    pub const INFINITY: Weight = Weight(u64::MAX);

    pub const fn from_milli(milli: u64) -> Weight {
        Weight(milli)
    }

    /// Whole units, e.g. `Weight::from_units(3)` is `3.000`.
    pub const fn from_units(units: u64) -> Weight {
        Weight(units * MILLI_PER_UNIT)
    }

    pub const fn milli(self) -> u64 {
        self.0
    }

    pub const fn is_finite(self) -> bool {
        self.0 != u64::MAX
    }

    pub fn as_f64(self) -> f64 {
        if self.is_finite() {
            self.0 as f64 / MILLI_PER_UNIT as f64
        } else {
            f64::INFINITY
        }
    }

    /// Saturating addition; anything involving infinity stays infinite.
    pub fn saturating_add(self, other: Weight) -> Weight {
        Weight(self.0.saturating_add(other.0))
    }

    pub fn saturating_sub(self, other: Weight) -> Weight {
        if !self.is_finite() {
            return self;
        }
        Weight(self.0.saturating_sub(other.0))
    }

    /// `floor(self * factor)`, infinite if `self` is.
    pub fn scale_floor(self, factor: Scalar) -> Weight {
        if !self.is_finite() {
            return self;
        }
        let v = self.0 as u128 * *factor.numer() as u128 / *factor.denom() as u128;
        Weight(v.min(u64::MAX as u128 - 1) as u64)
    }

    /// Exact test of `self <= factor * rho`.
    pub fn le_scaled(self, factor: Scalar, rho: Weight) -> bool {
        if !self.is_finite() {
            return false;
        }
        if !rho.is_finite() {
            return *factor.numer() > 0;
        }
        self.0 as u128 * *factor.denom() as u128 <= *factor.numer() as u128 * rho.0 as u128
    }

    /// Exact test of `self < factor * rho`.
    pub fn lt_scaled(self, factor: Scalar, rho: Weight) -> bool {
        if !self.is_finite() {
            return false;
        }
        if !rho.is_finite() {
            return *factor.numer() > 0;
        }
        (self.0 as u128 * *factor.denom() as u128) < *factor.numer() as u128 * rho.0 as u128
    }
}

impl Add for Weight {
    type Output = Weight;

    fn add(self, rhs: Weight) -> Weight {
        self.saturating_add(rhs)
    }
}

impl fmt::Display for Weight {
    /// Shortest exact decimal form: `3`, `0.65`, `2.951`, or `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_finite() {
            return f.write_str("inf");
        }
        let units = self.0 / MILLI_PER_UNIT;
        let frac = self.0 % MILLI_PER_UNIT;
        if frac == 0 {
            return write!(f, "{units}");
        }
        let digits = format!("{frac:03}");
        write!(f, "{units}.{}", digits.trim_end_matches('0'))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_finite() {
            serializer.serialize_f64(self.as_f64())
        } else {
            serializer.serialize_none()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseNumberError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("`{0}` has more than 3 fraction digits")]
    TooPrecise(String),
    #[error("`{0}` is out of range")]
    OutOfRange(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

impl FromStr for Weight {
    type Err = ParseNumberError;

    /// Parses a non-negative decimal with at most three fraction digits.
    fn from_str(s: &str) -> Result<Weight, ParseNumberError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseNumberError::Empty);
        }
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if (int_part.is_empty() && frac_part.is_empty())
            || !all_digits(int_part)
            || !all_digits(frac_part)
            || (s.contains('.') && frac_part.is_empty())
        {
            return Err(ParseNumberError::Invalid(s.to_string()));
        }
        if frac_part.len() > 3 {
            return Err(ParseNumberError::TooPrecise(s.to_string()));
        }
        let units: u64 = if int_part.is_empty() {
            0
        } else {
            int_part
                .parse()
                .map_err(|_| ParseNumberError::OutOfRange(s.to_string()))?
        };
        let mut frac: u64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().unwrap_or(0)
        };
        for _ in frac_part.len()..3 {
            frac *= 10;
        }
        units
            .checked_mul(MILLI_PER_UNIT)
            .and_then(|m| m.checked_add(frac))
            .filter(|&m| m < 1 << 60)
            .map(Weight)
            .ok_or_else(|| ParseNumberError::OutOfRange(s.to_string()))
    }
}

/// Parses `3`, `0.25`, or `1/64` into an exact rational.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseNumberError> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: u64 = n
            .trim()
            .parse()
            .map_err(|_| ParseNumberError::Invalid(s.to_string()))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| ParseNumberError::Invalid(s.to_string()))?;
        if d == 0 {
            return Err(ParseNumberError::ZeroDenominator(s.to_string()));
        }
        return Ok(Scalar::new(n, d));
    }
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    if s.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || (int_part.is_empty() && frac_part.is_empty())
    {
        return Err(ParseNumberError::Invalid(s.to_string()));
    }
    if frac_part.len() > 12 {
        return Err(ParseNumberError::TooPrecise(s.to_string()));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: u64 = digits
        .parse()
        .map_err(|_| ParseNumberError::OutOfRange(s.to_string()))?;
    Ok(Scalar::new(numer, 10u64.pow(frac_part.len() as u32)))
}

/// `ceil(x)` for a non-negative rational.
pub(crate) fn scalar_ceil(x: Scalar) -> u64 {
    x.numer().div_ceil(*x.denom())
}

pub(crate) fn scalar_to_f64(x: Scalar) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}
