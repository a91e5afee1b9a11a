//! Appell-Lerch sums, the mock half of every character numerator.
//!
//! With q = e^{2 pi i tau} and q^a := e^{2 pi i a tau}:
//!
//!   Phi1^{[m,s]}(tau,z1,z2,t) = e^{-2 pi i m t} sum_{j in Z}
//!       e^{2 pi i m j (z1+z2) + 2 pi i s z1} q^{m j^2 + s j} / (1 - e^{2 pi i z1} q^j)
//!
//!   Phi2^{[m,s]}(tau,z1,z2,t) = e^{-2 pi i m t} sum_{j in Z}
//!       e^{-2 pi i m j (z1+z2) - 2 pi i s z2} q^{m j^2 + s j} / (1 - e^{-2 pi i z2} q^j)
//!
//!   Phi = Phi1 - Phi2
//!
//! with level m in (1/2)N and shift s in (1/2)Z. The terms decay like a
//! Gaussian in j away from the magnitude peak, so once the adaptive window
//! passes the peak the truncation error is bounded by the last kept term
//! times the geometric factor 1/(1 - |q|).
//!
//! Each denominator crosses the unit circle at one real index
//! (j = -Im z1/Im tau for Phi1, j = Im z2/Im tau for Phi2). Those indices
//! are scanned for poles before summation, and the window always walks
//! across them, since a nearly vanishing denominator can revive terms whose
//! numerator alone would already have closed the tail.

use std::f64::consts::PI;

use crate::error::{EvalError, EvalResult};
use crate::halfint::HalfInt;
use crate::params::{ComplexValue, Cx, EvalParams, TauPoint};
use crate::qseries::{jacobi_theta_diff_cx, I};
use crate::series::{cx_exp, sum_bilateral_covering};

/// Real part of the denominator exponent above which 1 - e^x is evaluated
/// in its factored form -e^x (1 - e^{-x}).
const BIG_DEN_RE: f64 = 40.0;

/// Arguments of the Appell-Lerch sums: level m > 0, shift s, the modulus,
/// the two elliptic variables, and the scaling variable t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppellArgs {
    pub m: HalfInt,
    pub s: HalfInt,
    pub tau: TauPoint,
    pub z1: ComplexValue,
    pub z2: ComplexValue,
    pub t: ComplexValue,
}

impl AppellArgs {
    pub fn new(
        m: HalfInt,
        s: HalfInt,
        tau: TauPoint,
        z1: ComplexValue,
        z2: ComplexValue,
        t: ComplexValue,
    ) -> EvalResult<Self> {
        if !m.is_positive() {
            return Err(EvalError::InvalidParameter(format!(
                "Appell level m must be positive, got m = {m}"
            )));
        }
        Ok(AppellArgs { m, s, tau, z1, z2, t })
    }
}

/// One Appell denominator family 1 - e^{2 pi i (zeta + j tau)}, j in Z.
struct Denominator {
    zeta: Cx,
    tau: Cx,
}

impl Denominator {
    /// The real index where |e^{2 pi i (zeta + j tau)}| = 1.
    fn crossing(&self) -> f64 {
        -self.zeta.im / self.tau.im
    }

    /// Scans the indices around the crossing and reports the first pole.
    fn scan(&self, pole_eps: f64) -> EvalResult<()> {
        let jc = self.crossing().round() as i64;
        for j in jc - 2..=jc + 2 {
            let x = 2.0 * PI * I * (self.zeta + self.tau * j as f64);
            if x.re <= BIG_DEN_RE {
                let mag = (Cx::new(1.0, 0.0) - x.exp()).norm();
                if mag < pole_eps {
                    return Err(EvalError::Pole { j, magnitude: mag });
                }
            }
        }
        Ok(())
    }

    /// 1 / (1 - e^{2 pi i (zeta + j tau)}) times e^{numerator_exponent},
    /// arranged so neither factor overflows on its own.
    fn term(&self, j: i64, num_exp: Cx, pole_eps: f64) -> EvalResult<Cx> {
        let x = 2.0 * PI * I * (self.zeta + self.tau * j as f64);
        if x.re > BIG_DEN_RE {
            // 1 - e^x = -e^x (1 - e^{-x})
            let inv = cx_exp(-x)?;
            return Ok(-cx_exp(num_exp - x)? / (Cx::new(1.0, 0.0) - inv));
        }
        let den = Cx::new(1.0, 0.0) - x.exp();
        let mag = den.norm();
        if mag < pole_eps {
            return Err(EvalError::Pole { j, magnitude: mag });
        }
        Ok(cx_exp(num_exp)? / den)
    }
}

fn require_positive_level(m: HalfInt) -> EvalResult<()> {
    if !m.is_positive() {
        return Err(EvalError::InvalidParameter(format!(
            "Appell level m must be positive, got m = {m}"
        )));
    }
    Ok(())
}

// ---- Phi1 / Phi2 / Phi ------------------------------------------------------

/// Phi1^{[m,s]}(tau, z1, z2, t).
pub fn phi1(args: AppellArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    let a = args;
    ComplexValue::from_cx(phi1_cx(a.m, a.s, a.tau.value(), a.z1.cx(), a.z2.cx(), a.t.cx(), p)?)
}

/// Phi2^{[m,s]}(tau, z1, z2, t).
pub fn phi2(args: AppellArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    let a = args;
    ComplexValue::from_cx(phi2_cx(a.m, a.s, a.tau.value(), a.z1.cx(), a.z2.cx(), a.t.cx(), p)?)
}

/// Phi^{[m,s]} = Phi1^{[m,s]} - Phi2^{[m,s]}.
pub fn phi(args: AppellArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    let a = args;
    ComplexValue::from_cx(phi_cx(a.m, a.s, a.tau.value(), a.z1.cx(), a.z2.cx(), a.t.cx(), p)?)
}

pub(crate) fn phi_cx(
    m: HalfInt,
    s: HalfInt,
    tau: Cx,
    z1: Cx,
    z2: Cx,
    t: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    Ok(phi1_cx(m, s, tau, z1, z2, t, p)? - phi2_cx(m, s, tau, z1, z2, t, p)?)
}

pub(crate) fn phi1_cx(
    m: HalfInt,
    s: HalfInt,
    tau: Cx,
    z1: Cx,
    z2: Cx,
    t: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    require_positive_level(m)?;
    let mf = m.as_f64();
    let sf = s.as_f64();
    let den = Denominator { zeta: z1, tau };
    den.scan(p.pole_eps)?;
    let zsum = z1 + z2;

    // |numerator| peaks where d/dj [m j^2 Im tau + j (s Im tau + m Im(z1+z2))] = 0
    let vertex = -(sf * tau.im + mf * zsum.im) / (2.0 * mf * tau.im);
    let center = vertex.round() as i64;
    let jc = den.crossing().round() as i64;
    let reach = [jc - 2, jc + 2];

    let total = sum_bilateral_covering(center, &reach, p, |j| {
        let jf = j as f64;
        let num = 2.0 * PI * I * (zsum * (mf * jf) + z1 * sf + tau * (mf * jf * jf + sf * jf));
        den.term(j, num, p.pole_eps)
    })?;
    Ok(cx_exp(-2.0 * PI * I * m.as_f64() * t)? * total)
}

pub(crate) fn phi2_cx(
    m: HalfInt,
    s: HalfInt,
    tau: Cx,
    z1: Cx,
    z2: Cx,
    t: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    require_positive_level(m)?;
    let mf = m.as_f64();
    let sf = s.as_f64();
    let den = Denominator { zeta: -z2, tau };
    den.scan(p.pole_eps)?;
    let zsum = z1 + z2;

    let vertex = -(sf * tau.im - mf * zsum.im) / (2.0 * mf * tau.im);
    let center = vertex.round() as i64;
    let jc = den.crossing().round() as i64;
    let reach = [jc - 2, jc + 2];

    let total = sum_bilateral_covering(center, &reach, p, |j| {
        let jf = j as f64;
        let num = 2.0 * PI * I * (-zsum * (mf * jf) - z2 * sf + tau * (mf * jf * jf + sf * jf));
        den.term(j, num, p.pole_eps)
    })?;
    Ok(cx_exp(-2.0 * PI * I * m.as_f64() * t)? * total)
}

// ---- structural rules --------------------------------------------------------

/// The closed theta form of Phi^{[m,s]} - Phi^{[m,s+a]} for a >= 1:
///
///   e^{-2 pi i m t} sum_{k=0}^{a-1} e^{pi i (s+k)(z1-z2)} q^{-(s+k)^2/4m}
///       [theta_{s+k,m} - theta_{-(s+k),m}](tau, z1+z2)
pub fn phi_s_shift_difference(
    args: AppellArgs,
    a: u32,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    require_positive_level(args.m)?;
    if a == 0 {
        return Err(EvalError::InvalidParameter(
            "shift count a must be at least 1".into(),
        ));
    }
    let tau = args.tau.value();
    let z1 = args.z1.cx();
    let z2 = args.z2.cx();
    let mf = args.m.as_f64();
    let mut total = Cx::new(0.0, 0.0);
    for k in 0..a {
        let sk = args.s + k as i64;
        let skf = sk.as_f64();
        let pref = cx_exp(PI * I * skf * (z1 - z2) + 2.0 * PI * I * tau * (-skf * skf / (4.0 * mf)))?;
        total += pref * jacobi_theta_diff_cx(sk, args.m, tau, z1 + z2, p)?;
    }
    let scale = cx_exp(-2.0 * PI * I * mf * args.t.cx())?;
    ComplexValue::from_cx(scale * total)
}

/// The two-term right side of the modulus-doubling rule. The arguments
/// describe Phi^{[m,s]}(2 tau, z1, z2, t), so args.tau is the doubled
/// modulus; the returned value is
///
///   (1/2) { Phi^{[2m,2s]}(tau, z1/2, z2/2, t/2)
///           + e^{-2 pi i s} Phi^{[2m,2s]}(tau, (z1+1)/2, (z2-1)/2, t/2) }
///
/// evaluated at tau = args.tau / 2, for residual comparison against the
/// directly summed left side.
pub fn phi_double_tau(args: AppellArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    require_positive_level(args.m)?;
    let half_tau = args.tau.halve().value();
    let m2 = args.m * 2;
    let s2 = args.s * 2;
    let z1 = args.z1.cx();
    let z2 = args.z2.cx();
    let t_half = args.t.cx() / 2.0;
    let one = Cx::new(1.0, 0.0);

    let first = phi_cx(m2, s2, half_tau, z1 / 2.0, z2 / 2.0, t_half, p)?;
    let second = phi_cx(m2, s2, half_tau, (z1 + one) / 2.0, (z2 - one) / 2.0, t_half, p)?;
    let phase = cx_exp(-2.0 * PI * I * args.s.as_f64())?;
    ComplexValue::from_cx((first + phase * second) / 2.0)
}
