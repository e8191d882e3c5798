//! Exact rational time.
//!
//! Every instant and duration in the crate is a reduced fraction. Membership
//! checks hinge on whether an endpoint is included or not, so there is no
//! floating point anywhere on the evaluation path.

use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

/// An instant or a duration on the real time axis, stored as a reduced
/// fraction with a positive denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Time(Ratio<i64>);

impl Time {
    pub const ZERO: Time = Time(Ratio::new_raw(0, 1));
    pub const ONE: Time = Time(Ratio::new_raw(1, 1));

    /// Builds `numer / denom`, reducing the fraction. Returns `None` for a
    /// zero denominator.
    pub fn new(numer: i64, denom: i64) -> Option<Time> {
        if denom == 0 {
            None
        } else {
            Some(Time(Ratio::new(numer, denom)))
        }
    }

    /// Builds `numer / denom`.
    ///
    /// Panics when `denom` is zero; intended for literals.
    pub fn ratio(numer: i64, denom: i64) -> Time {
        Time::new(numer, denom).expect("zero denominator")
    }

    pub const fn integer(n: i64) -> Time {
        Time(Ratio::new_raw(n, 1))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn half(self) -> Time {
        Time(self.0 / 2)
    }

    pub fn midpoint(a: Time, b: Time) -> Time {
        (a + b).half()
    }

    pub fn abs(self) -> Time {
        Time(self.0.abs())
    }
}

impl From<i64> for Time {
    fn from(n: i64) -> Time {
        Time::integer(n)
    }
}

impl From<Ratio<i64>> for Time {
    fn from(r: Ratio<i64>) -> Time {
        Time(r)
    }
}

impl From<Time> for Ratio<i64> {
    fn from(t: Time) -> Ratio<i64> {
        t.0
    }
}

impl Add for Time {
    type Output = Time;
    fn add(self, rhs: Time) -> Time {
        Time(self.0 + rhs.0)
    }
}

impl Sub for Time {
    type Output = Time;
    fn sub(self, rhs: Time) -> Time {
        Time(self.0 - rhs.0)
    }
}

impl Mul for Time {
    type Output = Time;
    fn mul(self, rhs: Time) -> Time {
        Time(self.0 * rhs.0)
    }
}

/// Panics on division by zero, like the integer operators.
impl Div for Time {
    type Output = Time;
    fn div(self, rhs: Time) -> Time {
        Time(self.0 / rhs.0)
    }
}

impl Neg for Time {
    type Output = Time;
    fn neg(self) -> Time {
        Time(-self.0)
    }
}

impl AddAssign for Time {
    fn add_assign(&mut self, rhs: Time) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Time {
    fn sub_assign(&mut self, rhs: Time) {
        self.0 -= rhs.0;
    }
}

impl fmt::Display for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Time {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseTimeError {
    #[error("empty time literal")]
    Empty,
    #[error("malformed time literal")]
    Malformed,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("time literal out of range")]
    Overflow,
}

fn parse_int(s: &str) -> Result<i64, ParseTimeError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseTimeError::Malformed);
    }
    s.parse::<i64>().map_err(|_| ParseTimeError::Overflow)
}

/// Accepts integers (`3`, `-2`), fractions (`1/2`, `-7/4`) and finite
/// decimals (`1.25`). The sign may only lead the literal.
impl FromStr for Time {
    type Err = ParseTimeError;

    fn from_str(s: &str) -> Result<Time, ParseTimeError> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseTimeError::Empty);
        }
        let (negative, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let value = if let Some((n, d)) = body.split_once('/') {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d == 0 {
                return Err(ParseTimeError::ZeroDenominator);
            }
            Ratio::new(n, d)
        } else if let Some((int, frac)) = body.split_once('.') {
            if int.is_empty() && frac.is_empty() {
                return Err(ParseTimeError::Malformed);
            }
            let whole = if int.is_empty() { 0 } else { parse_int(int)? };
            let (digits, scale) = if frac.is_empty() {
                (0, 1)
            } else {
                let scale = u32::try_from(frac.len())
                    .ok()
                    .and_then(|n| 10i64.checked_pow(n))
                    .ok_or(ParseTimeError::Overflow)?;
                (parse_int(frac)?, scale)
            };
            let numer = whole.checked_mul(scale).and_then(|w| w.checked_add(digits)).ok_or(ParseTimeError::Overflow)?;
            Ratio::new(numer, scale)
        } else {
            Ratio::from_integer(parse_int(body)?)
        };
        Ok(Time(if negative { -value } else { value }))
    }
}
