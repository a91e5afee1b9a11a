//! Shared machinery for adaptive bilateral summation.
//!
//! Every series in this crate has Gaussian term decay q^{c j^2 + ...} away
//! from a magnitude peak, so the summation loop walks outward from the peak
//! and closes each tail after `consecutive_small` successive terms drop
//! below `term_tol` in absolute value. The total number of evaluated terms
//! is capped by `max_terms`.

use crate::error::{EvalError, EvalResult};
use crate::params::{Cx, EvalParams};

/// Largest exponent real part accepted by `cx_exp` before the result would
/// leave the range of f64 (ln(f64::MAX) is about 709.78).
const EXP_OVERFLOW_RE: f64 = 709.0;

/// e^w with an overflow gate; deep underflow quietly returns 0.
pub(crate) fn cx_exp(w: Cx) -> EvalResult<Cx> {
    if !(w.re.is_finite() && w.im.is_finite()) || w.re > EXP_OVERFLOW_RE {
        return Err(EvalError::Overflow);
    }
    Ok(w.exp())
}

/// Kahan-compensated complex accumulator.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct CxSum {
    s: Cx,
    c: Cx,
}

impl CxSum {
    pub(crate) fn add(&mut self, v: Cx) {
        let y = v - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }

    pub(crate) fn value(&self) -> Cx {
        self.s
    }
}

/// Sums `term(j)` over all of Z, walking outward from `center`.
pub(crate) fn sum_bilateral<F>(center: i64, p: EvalParams, term: F) -> EvalResult<Cx>
where
    F: FnMut(i64) -> EvalResult<Cx>,
{
    sum_bilateral_covering(center, &[], p, term)
}

/// Like [`sum_bilateral`], but neither tail may close before the window
/// contains every index in `reach`. Series whose terms carry a near-pole
/// denominator use this to force the walk across the critical indices even
/// when the surrounding terms are already below `term_tol`.
pub(crate) fn sum_bilateral_covering<F>(
    center: i64,
    reach: &[i64],
    p: EvalParams,
    mut term: F,
) -> EvalResult<Cx>
where
    F: FnMut(i64) -> EvalResult<Cx>,
{
    let mut min_right = 0i64;
    let mut min_left = 0i64;
    for &idx in reach {
        if idx >= center {
            min_right = min_right.max(idx - center);
        } else {
            min_left = min_left.max(center - idx);
        }
    }

    let mut acc = CxSum::default();
    let mut used = 0usize;

    let mut eval = |j: i64, acc: &mut CxSum, used: &mut usize| -> EvalResult<f64> {
        if *used >= p.max_terms {
            return Err(EvalError::TruncationExceeded { max_terms: p.max_terms });
        }
        *used += 1;
        let v = term(j)?;
        acc.add(v);
        Ok(v.norm())
    };

    eval(center, &mut acc, &mut used)?;
    for (dir, min_offset) in [(1i64, min_right), (-1, min_left)] {
        let mut small_run = 0usize;
        let mut offset = 1i64;
        while small_run < p.consecutive_small || offset <= min_offset {
            let mag = eval(center + dir * offset, &mut acc, &mut used)?;
            if mag < p.term_tol {
                small_run += 1;
            } else {
                small_run = 0;
            }
            offset += 1;
        }
    }
    Ok(acc.value())
}
