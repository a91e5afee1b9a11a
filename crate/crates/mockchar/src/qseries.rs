//! The nome, Dedekind eta, and the two theta families.
//!
//! Conventions, with q = e^{2 pi i tau} and q^a := e^{2 pi i a tau}:
//!
//!   eta(tau)           = q^{1/24} prod_{n >= 1} (1 - q^n)
//!   theta_{k,m}(tau,z) = sum_{j in Z} e^{2 pi i m (j + k/2m) z} q^{m (j + k/2m)^2}
//!   vartheta_ab(tau,z) = sum_{n in Z} e^{pi i tau (n + a/2)^2 + 2 pi i (n + a/2)(z + b/2)}
//!
//! theta_{k,m} takes m in (1/2)N and k in (1/2)Z and depends on k only
//! through k mod 2m. The four vartheta_ab have characteristics a, b in
//! {0, 1} and are theta_{k,m} in disguise:
//!
//!   vartheta_00(tau,z) = theta_{0,1/2}(tau,2z)      vartheta_10(tau,z) = theta_{1/2,1/2}(tau,2z)
//!   vartheta_01(tau,z) = theta_{0,1/2}(tau,2z+1)    vartheta_11(tau,z) = theta_{1/2,1/2}(tau,2z+1)
//!
//! Below the height `IM_SWITCH` the eta and vartheta evaluators route
//! through the exact S-transformation laws
//!
//!   eta(tau)           = (-i tau)^{-1/2} eta(-1/tau)
//!   vartheta_ab(tau,z) = i^{ab} (-i tau)^{-1/2} e^{-pi i z^2 / tau} vartheta_ba(-1/tau, z/tau)
//!
//! which move the evaluation to a fatter nome. The direct series still
//! converge near the real axis, but they do so by cancelling terms of order
//! one against a result that can be exponentially small; the routed form
//! keeps full double precision there.

use std::f64::consts::PI;

use crate::error::{EvalError, EvalResult};
use crate::halfint::HalfInt;
use crate::params::{ComplexValue, Cx, EvalParams, TauPoint};
use crate::series::{cx_exp, sum_bilateral};

pub(crate) const I: Cx = Cx::new(0.0, 1.0);
const ONE: Cx = Cx::new(1.0, 0.0);

/// Height below which eta and vartheta route through the S-transformation.
const IM_SWITCH: f64 = 0.35;

/// The principal square root of -i tau; its real part is positive whenever
/// tau lies in the upper half-plane.
pub(crate) fn sqrt_minus_i_tau(tau: Cx) -> Cx {
    Cx::new(tau.im, -tau.re).sqrt()
}

/// q = e^{2 pi i tau}.
pub fn nome(tau: TauPoint) -> ComplexValue {
    let q = (2.0 * PI * I * tau.value()).exp();
    ComplexValue::new(q.re, q.im)
}

// ---- Dedekind eta ----------------------------------------------------------

/// eta(tau) = q^{1/24} prod_{n >= 1} (1 - q^n).
pub fn dedekind_eta(tau: TauPoint, p: EvalParams) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(eta_cx(tau.value(), p, 0)?)
}

pub(crate) fn eta_cx(tau: Cx, p: EvalParams, depth: u32) -> EvalResult<Cx> {
    if tau.im < IM_SWITCH && depth < 64 {
        // pull Re(tau) into (-1/2, 1/2] with eta(tau + 1) = e^{i pi/12} eta(tau),
        // then invert; with |Re| <= 1/2 and Im < 0.35 the point is inside the
        // unit circle, so inversion strictly raises Im(tau)
        let n = (tau.re + 0.5).floor();
        if n != 0.0 {
            let phase = Cx::from_polar(1.0, PI * n / 12.0);
            return Ok(phase * eta_cx(tau - n, p, depth + 1)?);
        }
        if tau.norm_sqr() < 1.0 {
            return Ok(eta_cx(-tau.inv(), p, depth + 1)? / sqrt_minus_i_tau(tau));
        }
    }
    let q = cx_exp(2.0 * PI * I * tau)?;
    let mut prod = ONE;
    let mut qn = ONE;
    let mut small_run = 0usize;
    let mut used = 0usize;
    while small_run < p.consecutive_small {
        if used >= p.max_terms {
            return Err(EvalError::TruncationExceeded { max_terms: p.max_terms });
        }
        used += 1;
        qn *= q;
        prod *= ONE - qn;
        if qn.norm() < p.term_tol {
            small_run += 1;
        } else {
            small_run = 0;
        }
    }
    Ok(cx_exp(I * PI * tau / 12.0)? * prod)
}

// ---- theta_{k,m} -----------------------------------------------------------

/// theta_{k,m}(tau, z) = sum_{j in Z} e^{2 pi i m (j + k/2m) z} q^{m (j + k/2m)^2}.
///
/// Requires m > 0. The index arithmetic runs on doubled values: with
/// a_j = 2 (2m) j + 2k the j-th term is exp(2 pi i (z a_j/4 + tau a_j^2 / (16 m))).
pub fn jacobi_theta(
    k: HalfInt,
    m: HalfInt,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(jacobi_theta_cx(k, m, tau.value(), z.cx(), p)?)
}

pub(crate) fn jacobi_theta_cx(
    k: HalfInt,
    m: HalfInt,
    tau: Cx,
    z: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    if !m.is_positive() {
        return Err(EvalError::InvalidParameter(format!(
            "theta level m must be positive, got m = {m}"
        )));
    }
    let tm = m.twice;
    let tk = k.twice;
    // peak of |term| over real j: the decay exponent is
    // 2 pi (Im(tau) a^2/(8 tm) + Im(z) a/4) in a = 2 tm j + tk
    let a_star = -(tm as f64) * z.im / tau.im;
    let center = ((a_star - tk as f64) / (2.0 * tm as f64)).round() as i64;
    sum_bilateral(center, p, |j| {
        let a = (2 * tm * j + tk) as f64;
        cx_exp(2.0 * PI * I * (z * (a / 4.0) + tau * (a * a / (8.0 * tm as f64))))
    })
}

/// theta_{k,m} - theta_{-k,m} at the same (tau, z). Exactly zero when the
/// two indices agree mod 2m, that is when m.twice divides k.twice.
pub(crate) fn jacobi_theta_diff_cx(
    k: HalfInt,
    m: HalfInt,
    tau: Cx,
    z: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    if !m.is_positive() {
        return Err(EvalError::InvalidParameter(format!(
            "theta level m must be positive, got m = {m}"
        )));
    }
    if k.twice % m.twice == 0 {
        return Ok(Cx::new(0.0, 0.0));
    }
    Ok(jacobi_theta_cx(k, m, tau, z, p)? - jacobi_theta_cx(-k, m, tau, z, p)?)
}

// ---- vartheta_ab -----------------------------------------------------------

/// vartheta_ab(tau, z) = sum_{n in Z} e^{pi i tau (n + a/2)^2 + 2 pi i (n + a/2)(z + b/2)}
/// for characteristics a, b in {0, 1}.
pub fn mumford_theta(
    a: u8,
    b: u8,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(mumford_theta_cx(a, b, tau.value(), z.cx(), p, 0)?)
}

pub(crate) fn mumford_theta_cx(
    a: u8,
    b: u8,
    tau: Cx,
    z: Cx,
    p: EvalParams,
    depth: u32,
) -> EvalResult<Cx> {
    if a > 1 || b > 1 {
        return Err(EvalError::InvalidParameter(format!(
            "theta characteristics must be bits, got a = {a}, b = {b}"
        )));
    }
    if tau.im < IM_SWITCH && tau.norm_sqr() < 1.0 && depth < 4 {
        let root = sqrt_minus_i_tau(tau);
        let gauss = cx_exp(-I * PI * z * z / tau)?;
        let phase = if a & b == 1 { I } else { ONE };
        let inner = mumford_theta_cx(b, a, -tau.inv(), z / tau, p, depth + 1)?;
        return Ok(phase / root * gauss * inner);
    }
    // peak of |term| over real u = 2n + a: decay pi (Im(tau) u^2/4 + Im(z) u)
    let u_star = -2.0 * z.im / tau.im;
    let center = ((u_star - a as f64) / 2.0).round() as i64;
    let half_b = b as f64 / 2.0;
    sum_bilateral(center, p, |n| {
        let u = (2 * n + a as i64) as f64;
        cx_exp(I * PI * (tau * (u * u / 4.0) + u * (z + half_b)))
    })
}

// ---- theta product identities ----------------------------------------------

/// Names one of the three doubled-argument product identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaProductId {
    G1,
    G2,
    G3,
}

impl std::str::FromStr for ThetaProductId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "g1" => Ok(ThetaProductId::G1),
            "g2" => Ok(ThetaProductId::G2),
            "g3" => Ok(ThetaProductId::G3),
            _ => Err(format!("unknown theta product id '{s}' (expected g1, g2, or g3)")),
        }
    }
}

/// Evaluates both sides of the chosen product identity:
///
///   g1:  vartheta_11(2tau, 2z)                                 = (eta(2tau)/eta(tau)^2) vartheta_11(tau,z) vartheta_10(tau,z)
///   g2:  vartheta_10(2tau, z+tau/2) vartheta_10(2tau, z-tau/2) = q^{-1/8} (eta(2tau)^2/eta(tau)) vartheta_00(tau,z)
///   g3:  vartheta_11(2tau, z+tau/2) vartheta_11(2tau, z-tau/2) = q^{-1/8} (eta(2tau)^2/eta(tau)) vartheta_01(tau,z)
pub fn theta_product_identity(
    id: ThetaProductId,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<(ComplexValue, ComplexValue)> {
    let t = tau.value();
    let zz = z.cx();
    let eta1 = eta_cx(t, p, 0)?;
    let eta2 = eta_cx(2.0 * t, p, 0)?;
    let (lhs, rhs) = match id {
        ThetaProductId::G1 => {
            let lhs = mumford_theta_cx(1, 1, 2.0 * t, 2.0 * zz, p, 0)?;
            let rhs = eta2 / (eta1 * eta1)
                * mumford_theta_cx(1, 1, t, zz, p, 0)?
                * mumford_theta_cx(1, 0, t, zz, p, 0)?;
            (lhs, rhs)
        }
        ThetaProductId::G2 => {
            let lhs = mumford_theta_cx(1, 0, 2.0 * t, zz + t / 2.0, p, 0)?
                * mumford_theta_cx(1, 0, 2.0 * t, zz - t / 2.0, p, 0)?;
            let rhs = cx_exp(-I * PI * t / 4.0)? * eta2 * eta2 / eta1
                * mumford_theta_cx(0, 0, t, zz, p, 0)?;
            (lhs, rhs)
        }
        ThetaProductId::G3 => {
            let lhs = mumford_theta_cx(1, 1, 2.0 * t, zz + t / 2.0, p, 0)?
                * mumford_theta_cx(1, 1, 2.0 * t, zz - t / 2.0, p, 0)?;
            let rhs = cx_exp(-I * PI * t / 4.0)? * eta2 * eta2 / eta1
                * mumford_theta_cx(0, 1, t, zz, p, 0)?;
            (lhs, rhs)
        }
    };
    Ok((ComplexValue::from_cx(lhs)?, ComplexValue::from_cx(rhs)?))
}
