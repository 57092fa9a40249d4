//! Exact scalars on the unit interval.
//!
//! A [`Scalar`] is an exact rational in `[0, 1]`. The algebra uses
//! `⊕ = max` and `⊗ = min`, so values are never created by arithmetic —
//! every result of `⊕`/`⊗` is one of the operands. The only genuinely new
//! values in the whole system are midpoints, used by the enumeration grid.
//! Equality and order are exact; there is no floating point anywhere.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::Error;

/// Cap on fractional digits accepted from text, so that the numerator and
/// denominator of any parsed value (and of midpoints derived from them)
/// stay comfortably inside `i64`.
const MAX_FRACTION_DIGITS: usize = 9;

/// An exact rational number in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(Ratio<i64>);

impl Scalar {
    /// The semiring zero (neutral element of `⊕`).
    pub fn zero() -> Self {
        Scalar(Ratio::from_integer(0))
    }

    /// The semiring one (neutral element of `⊗`).
    pub fn one() -> Self {
        Scalar(Ratio::from_integer(1))
    }

    /// Builds `numer/denom`, reduced, checking the `[0, 1]` range.
    pub fn new(numer: i64, denom: i64) -> Result<Self, Error> {
        if denom == 0 {
            return Err(Error::parse(format!("{numer}/{denom}"), "zero denominator"));
        }
        Scalar::from_ratio(Ratio::new(numer, denom))
    }

    /// Wraps a ratio after checking the `[0, 1]` range.
    pub fn from_ratio(r: Ratio<i64>) -> Result<Self, Error> {
        if r < Ratio::from_integer(0) || r > Ratio::from_integer(1) {
            return Err(Error::parse(r.to_string(), "value lies outside [0, 1]"));
        }
        Ok(Scalar(r))
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(self, other: Self) -> Self {
        Scalar(self.0.max(other.0))
    }

    /// `a ⊗ b = min(a, b)`.
    pub fn otimes(self, other: Self) -> Self {
        Scalar(self.0.min(other.0))
    }

    /// Exact midpoint `(a + b) / 2`; stays inside `[0, 1]`.
    pub fn midpoint(self, other: Self) -> Self {
        Scalar((self.0 + other.0) / 2)
    }

    pub fn is_zero(self) -> bool {
        self == Scalar::zero()
    }

    pub fn is_one(self) -> bool {
        self == Scalar::one()
    }

    /// Numerator of the reduced fraction.
    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    /// Denominator of the reduced fraction.
    pub fn denom(self) -> i64 {
        *self.0.denom()
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts finite decimals (`".7"`, `"0.35"`, `"1"`) and, as a
    /// fallback for values without a finite decimal form, fractions
    /// written as `"p/q"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.is_empty() {
            return Err(Error::parse(s, "empty token"));
        }
        if let Some((p, q)) = s.split_once('/') {
            let numer: i64 = p
                .parse()
                .map_err(|_| Error::parse(s, "malformed numerator"))?;
            let denom: i64 = q
                .parse()
                .map_err(|_| Error::parse(s, "malformed denominator"))?;
            if denom <= 0 || numer < 0 {
                return Err(Error::parse(
                    s,
                    "fraction must be nonnegative with a positive denominator",
                ));
            }
            return Scalar::from_ratio(Ratio::new(numer, denom))
                .map_err(|_| Error::parse(s, "value lies outside [0, 1]"));
        }

        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::parse(s, "no digits"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(Error::parse(s, "expected a decimal in [0, 1]"));
        }
        if frac_part.len() > MAX_FRACTION_DIGITS {
            return Err(Error::parse(
                s,
                format!("more than {MAX_FRACTION_DIGITS} fractional digits"),
            ));
        }
        let int: i64 = if int_part.is_empty() {
            0
        } else {
            int_part
                .parse()
                .map_err(|_| Error::parse(s, "integer part too large"))?
        };
        let denom = 10i64.pow(frac_part.len() as u32);
        let frac: i64 = if frac_part.is_empty() {
            0
        } else {
            frac_part.parse().expect("digits checked above")
        };
        let numer = int
            .checked_mul(denom)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| Error::parse(s, "value too large"))?;
        Scalar::from_ratio(Ratio::new(numer, denom))
            .map_err(|_| Error::parse(s, "value lies outside [0, 1]"))
    }
}

impl fmt::Display for Scalar {
    /// Renders the exact decimal expansion when one exists (denominator of
    /// the form `2^a 5^b`), falling back to `p/q` otherwise. Either form
    /// parses back to the identical value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = *self.0.numer();
        let q = *self.0.denom();
        if p == 0 {
            return write!(f, "0");
        }
        if p == q {
            return write!(f, "1");
        }
        let mut rest = q;
        let mut twos = 0u32;
        let mut fives = 0u32;
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        while rest % 5 == 0 {
            rest /= 5;
            fives += 1;
        }
        let digits = twos.max(fives);
        if rest != 1 || digits > 27 {
            return write!(f, "{p}/{q}");
        }
        let scale = 10i128.pow(digits) / q as i128;
        let frac = (p as i128 * scale).to_string();
        let padded = format!("{frac:0>width$}", width = digits as usize);
        write!(f, "0.{}", padded.trim_end_matches('0'))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
