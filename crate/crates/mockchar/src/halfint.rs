//! Exact half-integer arithmetic for series indices.
//!
//! The level m, the shift s, and the theta indices j and k all live in
//! (1/2)Z. A `HalfInt` stores twice the value as an `i64`, so negation,
//! shifts by 1/2, comparisons, and the divisibility tests that decide when
//! two theta series coincide are exact integer operations. Conversion to
//! `f64` happens once, at the point where an index enters an exponent.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// A number in (1/2)Z, stored as its exact doubled value.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    /// Twice the represented value: `HalfInt { twice: 3 }` is 3/2.
    pub twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// The half-integer with doubled value `twice`.
    pub const fn new(twice: i64) -> Self {
        HalfInt { twice }
    }

    /// Embeds an integer.
    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// True exactly when the value lies in Z.
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn is_positive(self) -> bool {
        self.twice > 0
    }

    /// The value as a float. Exact for every index this crate produces.
    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::new(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::new(self.twice - rhs.twice)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::new(-self.twice)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt::new(self.twice * rhs)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt::new(self.twice + 2 * rhs)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Accepts `"2"`, `"-3"`, `"3/2"`, `"-1/2"`, and decimal forms like `"0.5"`.
impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| format!("bad numerator in half-integer '{s}'"))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| format!("bad denominator in half-integer '{s}'"))?;
            return match d {
                1 => Ok(HalfInt::from_int(n)),
                2 => Ok(HalfInt::new(n)),
                _ => Err(format!("denominator must be 1 or 2 in '{s}'")),
            };
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(HalfInt::from_int(n));
        }
        if let Ok(x) = s.parse::<f64>() {
            let t = 2.0 * x;
            if t.fract() == 0.0 && t.abs() < 4.0e15 {
                return Ok(HalfInt::new(t as i64));
            }
        }
        Err(format!("'{s}' is not an integer or half-integer"))
    }
}
