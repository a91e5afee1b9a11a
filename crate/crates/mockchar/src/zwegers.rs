//! The real-analytic correction layer: E, R_{j;m}, the correction term
//! Phi_add, and the completed sum Phi-tilde.
//!
//! Definitions, with q = e^{2 pi i tau}:
//!
//!   E(x)         = erf(sqrt(pi) x) = 2 int_0^x e^{-pi u^2} du
//!
//!   R_{j;m}(tau,w) = sum_{n = j + 2mk, k in Z}
//!       { sgn(2m(k+1) - 1/2) - E((n - 2m Im(w)/Im(tau)) sqrt(Im(tau)/m)) }
//!       e^{-pi i n^2 tau / 2m + 2 pi i n w}
//!
//!   Phi_add^{[m,s]}(tau,z1,z2,t) = -(1/2) e^{-2 pi i m t}
//!       sum_{k = s, s+1, ..., s+2m-1} R_{k;m}(tau, (z1-z2)/2)
//!       [theta_{k,m} - theta_{-k,m}](tau, z1+z2)
//!
//!   Phi-tilde^{[m,s]} = Phi^{[m,s]} + Phi_add^{[m,s]}
//!
//! The R-series pairs a complementary-error bracket against an exponential
//! that grows like e^{pi n^2 Im(tau)/2m}. On the decaying side the bracket
//! is written as erfcx(y) e^{-y^2} and the Gaussian exponent is merged into
//! the term exponent before a single exponentiation; the raw product would
//! underflow and overflow separately from |n| of about 20 onward.

use std::f64::consts::PI;

use crate::appell::{phi_cx, AppellArgs};
use crate::error::{EvalError, EvalResult};
use crate::halfint::HalfInt;
use crate::params::{ComplexValue, Cx, EvalParams, TauPoint};
use crate::qseries::{jacobi_theta_diff_cx, I};
use crate::series::{cx_exp, sum_bilateral_covering};

/// Arguments of R_{j;m}: the index j, the level m > 0, the modulus, and the
/// elliptic variable w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RArgs {
    pub j: HalfInt,
    pub m: HalfInt,
    pub tau: TauPoint,
    pub w: ComplexValue,
}

/// E(x) = erf(sqrt(pi) x). Odd, with E(x) -> +-1 as x -> +-infinity.
pub fn gauss_e(x: f64) -> f64 {
    libm::erf(PI.sqrt() * x)
}

/// Scaled complementary error function e^{y^2} erfc(y) for y >= 0.
///
/// Direct evaluation below y = 5; above that, erfc underflows and the
/// Lentz-evaluated continued fraction
///   erfcx(y) = (1/sqrt(pi)) / (y + (1/2)/(y + 1/(y + (3/2)/(y + ...))))
/// stays accurate.
pub(crate) fn erfcx(y: f64) -> f64 {
    debug_assert!(y >= 0.0, "erfcx argument must be nonnegative, got {y}");
    if y < 5.0 {
        return (y * y).exp() * libm::erfc(y);
    }
    let tiny = 1e-300;
    let mut f = y;
    let mut c = y;
    let mut d = 0.0f64;
    for n in 1..=80 {
        let a = n as f64 / 2.0;
        d = y + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = y + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

// ---- R_{j;m} -----------------------------------------------------------------

/// R_{j;m}(tau, w).
pub fn r_function(args: RArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(r_function_cx(args.j, args.m, args.tau.value(), args.w.cx(), p)?)
}

pub(crate) fn r_function_cx(
    j: HalfInt,
    m: HalfInt,
    tau: Cx,
    w: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    if !m.is_positive() {
        return Err(EvalError::InvalidParameter(format!(
            "R level m must be positive, got m = {m}"
        )));
    }
    let mf = m.as_f64();
    let jf = j.as_f64();
    let two_m = 2.0 * mf;
    let beta = tau.im / mf;
    let sqrt_beta = beta.sqrt();
    let alpha = 2.0 * w.im / beta;
    let sqrt_pi = PI.sqrt();

    // |term| peaks near n = alpha; the bracket switches from its erfc-small
    // tails to order one between n = 0 and n = alpha, and the sign factor
    // flips between k = -1 and k = 0, so the window must cross all three
    let k_center = ((alpha - jf) / two_m).round() as i64;
    let k_zero = (-jf / two_m).round() as i64;
    let reach = [k_zero - 1, k_zero + 1, -1, 0, k_center - 1, k_center + 1];

    sum_bilateral_covering(k_center, &reach, p, |k| {
        let n = jf + two_m * k as f64;
        let sgn_arg = two_m * (k as f64 + 1.0) - 0.5;
        debug_assert!(sgn_arg != 0.0, "sign argument hit zero at k = {k}");
        let sgn = sgn_arg.signum();
        let y = sqrt_pi * (n - alpha) * sqrt_beta;
        let eps = -PI * I * n * n * tau / (2.0 * mf) + 2.0 * PI * I * n * w;
        if sgn * y >= 0.0 {
            // bracket = sgn erfc(|y|); merge its Gaussian into the exponent
            Ok(sgn * erfcx(y.abs()) * cx_exp(eps - y * y)?)
        } else {
            // sign mismatch: bracket = sgn (2 - erfc(|y|)), order one
            let bracket = sgn * (2.0 - erfcx(y.abs()) * (-y * y).exp());
            Ok(bracket * cx_exp(eps)?)
        }
    })
}

// ---- Phi_add and Phi-tilde -----------------------------------------------------

/// Phi_add^{[m,s]}(tau, z1, z2, t): the finite theta-weighted R-sum over
/// k = s, s+1, ..., s+2m-1 with the -(1/2) e^{-2 pi i m t} prefactor.
pub fn phi_add(
    m: HalfInt,
    s: HalfInt,
    tau: TauPoint,
    z1: ComplexValue,
    z2: ComplexValue,
    t: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(phi_add_cx(m, s, tau.value(), z1.cx(), z2.cx(), t.cx(), p)?)
}

pub(crate) fn phi_add_cx(
    m: HalfInt,
    s: HalfInt,
    tau: Cx,
    z1: Cx,
    z2: Cx,
    t: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    if !m.is_positive() {
        return Err(EvalError::InvalidParameter(format!(
            "Phi_add level m must be positive, got m = {m}"
        )));
    }
    let w = (z1 - z2) / 2.0;
    let zsum = z1 + z2;
    let mut total = Cx::new(0.0, 0.0);
    // 2m is the integer m.twice; the loop index keeps k = s + i exact
    for i in 0..m.twice {
        let k = s + i;
        let bracket = jacobi_theta_diff_cx(k, m, tau, zsum, p)?;
        if bracket == Cx::new(0.0, 0.0) {
            continue;
        }
        total += r_function_cx(k, m, tau, w, p)? * bracket;
    }
    Ok(-0.5 * cx_exp(-2.0 * PI * I * m.as_f64() * t)? * total)
}

/// Phi-tilde^{[m,s]} = Phi^{[m,s]} + Phi_add^{[m,s]}, the completed sum that
/// every modified character is built from.
pub fn phi_tilde(args: AppellArgs, p: EvalParams) -> EvalResult<ComplexValue> {
    let a = args;
    ComplexValue::from_cx(phi_tilde_cx(a.m, a.s, a.tau.value(), a.z1.cx(), a.z2.cx(), a.t.cx(), p)?)
}

pub(crate) fn phi_tilde_cx(
    m: HalfInt,
    s: HalfInt,
    tau: Cx,
    z1: Cx,
    z2: Cx,
    t: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    Ok(phi_cx(m, s, tau, z1, z2, t, p)? + phi_add_cx(m, s, tau, z1, z2, t, p)?)
}

/// Both sides of the half-period transport law
///
///   Phi-tilde^{[m,s]}(tau, z+a+tau/2, z+b-tau/2, 0)
///     = e^{2 pi i m (a-b)} Phi-tilde^{[m,s]}(tau, z+a-tau/2, z+b+tau/2, 0)
///
/// returned as (lhs, rhs) for residual checking.
pub fn phi_tilde_elliptic_check(
    m: HalfInt,
    s: HalfInt,
    tau: TauPoint,
    z: ComplexValue,
    a: ComplexValue,
    b: ComplexValue,
    p: EvalParams,
) -> EvalResult<(ComplexValue, ComplexValue)> {
    let t = tau.value();
    let zz = z.cx();
    let av = a.cx();
    let bv = b.cx();
    let half = t / 2.0;
    let zero = Cx::new(0.0, 0.0);
    let lhs = phi_tilde_cx(m, s, t, zz + av + half, zz + bv - half, zero, p)?;
    let rhs = cx_exp(2.0 * PI * I * m.as_f64() * (av - bv))?
        * phi_tilde_cx(m, s, t, zz + av - half, zz + bv + half, zero, p)?;
    Ok((ComplexValue::from_cx(lhs)?, ComplexValue::from_cx(rhs)?))
}
