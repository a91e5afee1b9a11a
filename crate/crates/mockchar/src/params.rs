//! Guarded numeric types and evaluation parameters.
//!
//! `Cx` is the plain complex scalar used internally. `ComplexValue` is the
//! finite-checked form that crosses the public boundary, and `TauPoint`
//! pins the modulus to the open upper half-plane, where every q-series in
//! this crate converges.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, EvalResult};

/// The complex scalar all internal arithmetic runs on.
pub type Cx = num_complex::Complex64;

// ---- ComplexValue ----------------------------------------------------------

/// A finite complex number. No NaN or infinity escapes a public operation;
/// results that would overflow are reported as `EvalError::Overflow` instead.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub const ZERO: ComplexValue = ComplexValue { re: 0.0, im: 0.0 };

    /// Builds a value from finite parts.
    ///
    /// Panics if either part is NaN or infinite; checked conversion from
    /// computed quantities goes through [`ComplexValue::from_cx`].
    pub fn new(re: f64, im: f64) -> Self {
        assert!(
            re.is_finite() && im.is_finite(),
            "ComplexValue requires finite parts, got {re} + {im}i"
        );
        ComplexValue { re, im }
    }

    /// A real value.
    pub fn real(re: f64) -> Self {
        ComplexValue::new(re, 0.0)
    }

    /// Checked conversion for computed results.
    pub fn from_cx(v: Cx) -> EvalResult<Self> {
        if v.re.is_finite() && v.im.is_finite() {
            Ok(ComplexValue { re: v.re, im: v.im })
        } else {
            Err(EvalError::Overflow)
        }
    }

    pub fn cx(self) -> Cx {
        Cx::new(self.re, self.im)
    }

    pub fn abs(self) -> f64 {
        self.cx().norm()
    }
}

impl From<ComplexValue> for Cx {
    fn from(v: ComplexValue) -> Cx {
        v.cx()
    }
}

impl TryFrom<Cx> for ComplexValue {
    type Error = EvalError;
    fn try_from(v: Cx) -> EvalResult<Self> {
        ComplexValue::from_cx(v)
    }
}

/// Prints in the command-line literal form `a+bi` with no spaces.
impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.re == 0.0 {
            write!(f, "{}i", self.im)
        } else if self.im < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

/// Parses the command-line literal form: `1.5`, `2i`, `0.3+0.9i`, `-1-0.25i`,
/// `i`, `-i`. No spaces.
impl FromStr for ComplexValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Err("empty complex literal".into());
        }
        if s.contains(char::is_whitespace) {
            return Err(format!("complex literal '{s}' must not contain spaces"));
        }
        let parse_re = |t: &str| -> Result<f64, String> {
            t.parse::<f64>()
                .map_err(|_| format!("bad real part '{t}' in '{s}'"))
        };
        let parse_im = |t: &str| -> Result<f64, String> {
            match t {
                "" | "+" => Ok(1.0),
                "-" => Ok(-1.0),
                _ => t
                    .parse::<f64>()
                    .map_err(|_| format!("bad imaginary part '{t}' in '{s}'")),
            }
        };
        if !s.ends_with('i') {
            let re = parse_re(s)?;
            return finite(re, 0.0, s);
        }
        let body = &s[..s.len() - 1];
        // split before the sign of the imaginary part, skipping exponent signs
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(idx) => {
                let re = parse_re(&body[..idx])?;
                let im = parse_im(&body[idx..])?;
                finite(re, im, s)
            }
            None => {
                let im = parse_im(body)?;
                finite(0.0, im, s)
            }
        }
    }
}

fn finite(re: f64, im: f64, src: &str) -> Result<ComplexValue, String> {
    if re.is_finite() && im.is_finite() {
        Ok(ComplexValue { re, im })
    } else {
        Err(format!("complex literal '{src}' is out of range"))
    }
}

// ---- TauPoint --------------------------------------------------------------

/// A modulus tau with Im(tau) > 0 strictly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TauPoint {
    re: f64,
    im: f64,
}

impl TauPoint {
    /// Accepts only finite tau in the open upper half-plane.
    pub fn new(tau: Cx) -> EvalResult<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(EvalError::InvalidParameter(format!(
                "tau must be finite, got {tau}"
            )));
        }
        if tau.im <= 0.0 {
            return Err(EvalError::InvalidParameter(format!(
                "tau must satisfy Im(tau) > 0, got Im = {}",
                tau.im
            )));
        }
        Ok(TauPoint { re: tau.re, im: tau.im })
    }

    pub fn from_parts(re: f64, im: f64) -> EvalResult<Self> {
        TauPoint::new(Cx::new(re, im))
    }

    pub fn value(self) -> Cx {
        Cx::new(self.re, self.im)
    }

    pub fn re(self) -> f64 {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    /// 2 tau.
    pub fn double(self) -> TauPoint {
        TauPoint { re: 2.0 * self.re, im: 2.0 * self.im }
    }

    /// tau / 2.
    pub fn halve(self) -> TauPoint {
        TauPoint { re: self.re / 2.0, im: self.im / 2.0 }
    }

    /// tau + r for real r.
    pub fn shift(self, r: f64) -> TauPoint {
        TauPoint { re: self.re + r, im: self.im }
    }

    /// -1/tau, again in the upper half-plane.
    pub fn neg_inv(self) -> TauPoint {
        let n = self.re * self.re + self.im * self.im;
        TauPoint { re: -self.re / n, im: self.im / n }
    }
}

impl fmt::Display for TauPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ComplexValue { re: self.re, im: self.im }.fmt(f)
    }
}

// ---- EvalParams ------------------------------------------------------------

/// Knobs governing every series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Absolute per-term cutoff for the adaptive window.
    pub term_tol: f64,
    /// Hard cap on evaluated terms per series.
    pub max_terms: usize,
    /// Minimum admissible |denominator| before a point counts as a pole.
    pub pole_eps: f64,
    /// Consecutive sub-threshold terms required to close a tail.
    pub consecutive_small: usize,
}

impl Default for EvalParams {
    fn default() -> Self {
        EvalParams {
            term_tol: 1e-16,
            max_terms: 4096,
            pole_eps: 1e-10,
            consecutive_small: 3,
        }
    }
}

impl EvalParams {
    /// Checks the structural invariants and returns the parameters unchanged.
    pub fn validated(self) -> EvalResult<Self> {
        if !(self.term_tol > 0.0) {
            return Err(EvalError::InvalidParameter(format!(
                "term_tol must be positive, got {}",
                self.term_tol
            )));
        }
        if self.max_terms < 8 {
            return Err(EvalError::InvalidParameter(format!(
                "max_terms must be at least 8, got {}",
                self.max_terms
            )));
        }
        if !(self.pole_eps > 0.0) {
            return Err(EvalError::InvalidParameter(format!(
                "pole_eps must be positive, got {}",
                self.pole_eps
            )));
        }
        if self.consecutive_small < 1 {
            return Err(EvalError::InvalidParameter(
                "consecutive_small must be at least 1".into(),
            ));
        }
        Ok(self)
    }
}
