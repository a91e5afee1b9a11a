//! Honest and modified characters of the N=3 superconformal modules.
//!
//! A module is labeled by a level m >= 1 and an integer 0 <= m2 <= m; its
//! central charge is c(m) = (3m-1)/2. Every character in the four sectors
//! is a quotient
//!
//!   ch = numerator / denominator
//!
//! where the numerator is an Appell sum Phi^{[m/2,(m2+1)/2]} (honest) or its
//! completion Phi-tilde (modified) at a sector-specific substitution of
//! (2 tau, z1, z2, t), and the denominator is one of three eta/theta
//! products. In reduced single-variable form:
//!
//!   plus:        Phi^{[m/2,(m2+1)/2]}(2tau, z+tau/2-1/2, z-tau/2+1/2, tau/8)
//!   minus:       Phi^{[m/2,(m2+1)/2]}(2tau, z+tau/2,     z-tau/2,     tau/8)
//!   twist_plus:  Phi^{[m/2,(m2+1)/2]}(2tau, z+tau-1/2,   z-tau+1/2,   tau/2)
//!   twist_minus: Phi^{[m/2,(m2+1)/2]}(2tau, z-1/2,       z+1/2,       0)
//!
//! The t arguments carry the reduction prefactors (t = tau/8 contributes
//! q^{-m/16} through the e^{-2 pi i (m/2) t} factor of Phi).
//!
//! The modified characters are spanned by six blocks
//!
//!   Aring_i^{[m]}(tau, z) = prefactor_i(tau) * Phi-tilde^{[m,0]}(tau, z/2+delta_i, z/2-delta_i, 0)
//!
//! with delta_1..6 = tau/4+1/4, tau/4-1/4, tau/4+1/2, tau/4, 1/4, tau/2-1/4
//! and prefactors e^{-pi i m tau/8} (i=1..4), 1 (i=5), e^{-pi i m tau/2}
//! (i=6). The blocks close under S and T with explicit phases, satisfy six
//! level-doubling relations, and at m=2 reduce to the eta/theta functions
//! g_i^{(+-)} from which all m=2 closed forms follow.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::appell::phi_cx;
use crate::error::{EvalError, EvalResult};
use crate::halfint::HalfInt;
use crate::params::{ComplexValue, Cx, EvalParams, TauPoint};
use crate::qseries::{eta_cx, mumford_theta_cx, I};
use crate::series::cx_exp;
use crate::zwegers::phi_tilde_cx;

// ---- small exact rationals ---------------------------------------------------

/// A reduced fraction with a positive denominator. Holds exponents and the
/// central charge exactly, avoiding float rationals like 7/24 in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    /// Builds `num/den` in lowest terms. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "Ratio denominator must be nonzero");
        let sign = if den < 0 { -1 } else { 1 };
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i64;
        Ratio {
            num: sign * num / g,
            den: sign * den / g,
        }
    }

    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// c(m) = (3m - 1)/2, the central charge of the level-m module family.
pub fn central_charge(m: i64) -> EvalResult<Ratio> {
    if m < 1 {
        return Err(EvalError::InvalidParameter(format!(
            "central charge needs a positive level, got m = {m}"
        )));
    }
    Ok(Ratio::new(3 * m - 1, 2))
}

// ---- weight and character labels ---------------------------------------------

/// The discrete data of one module: the level m >= 1 and the label
/// 0 <= m2 <= m of the highest weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightParams {
    m: i64,
    m2: i64,
}

impl WeightParams {
    pub fn new(m: i64, m2: i64) -> EvalResult<Self> {
        if m < 1 {
            return Err(EvalError::InvalidParameter(format!(
                "weight level m must be positive, got m = {m}"
            )));
        }
        if m2 < 0 || m2 > m {
            return Err(EvalError::InvalidParameter(format!(
                "weight label must satisfy 0 <= m2 <= m, got m2 = {m2} at m = {m}"
            )));
        }
        Ok(WeightParams { m, m2 })
    }

    pub fn m(self) -> i64 {
        self.m
    }

    pub fn m2(self) -> i64 {
        self.m2
    }

    /// The first weight coordinate K(m) = -(m+2)/4 shared by the whole
    /// level-m family.
    pub fn k_level(self) -> Ratio {
        Ratio::new(-(self.m + 2), 4)
    }

    /// Half-integer level m/2 of the Appell numerator.
    fn half_level(self) -> HalfInt {
        HalfInt::new(self.m)
    }

    /// Half-integer index s = (m2+1)/2 of the Appell numerator.
    fn half_label(self) -> HalfInt {
        HalfInt::new(self.m2 + 1)
    }
}

/// The four trace sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sector {
    Plus,
    Minus,
    TwistPlus,
    TwistMinus,
}

impl Sector {
    pub const ALL: [Sector; 4] = [
        Sector::Plus,
        Sector::Minus,
        Sector::TwistPlus,
        Sector::TwistMinus,
    ];

    fn denominator_kind(self) -> DenominatorKind {
        match self {
            Sector::Plus => DenominatorKind::Plus,
            Sector::Minus => DenominatorKind::Minus,
            Sector::TwistPlus | Sector::TwistMinus => DenominatorKind::Twisted,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Sector::Plus => "plus",
            Sector::Minus => "minus",
            Sector::TwistPlus => "twist_plus",
            Sector::TwistMinus => "twist_minus",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Sector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" => Ok(Sector::Plus),
            "minus" => Ok(Sector::Minus),
            "twist_plus" => Ok(Sector::TwistPlus),
            "twist_minus" => Ok(Sector::TwistMinus),
            _ => Err(format!(
                "unknown sector '{s}' (expected plus, minus, twist_plus, or twist_minus)"
            )),
        }
    }
}

/// Names one character function: weight, sector, and whether the Appell
/// numerator is completed (modified) or not (honest).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterId {
    pub weight: WeightParams,
    pub sector: Sector,
    pub modified: bool,
}

impl CharacterId {
    /// Builds an id, rejecting modified twisted labels whose character is
    /// identically zero by the parity rule. Use [`CharacterId::allowing_zero`]
    /// to name those on purpose.
    pub fn new(weight: WeightParams, sector: Sector, modified: bool) -> EvalResult<Self> {
        let id = CharacterId {
            weight,
            sector,
            modified,
        };
        if id.is_identically_zero() {
            return Err(EvalError::InvalidParameter(format!(
                "{id} vanishes identically by the twisted parity rule; \
                 construct it with allowing_zero if that is intended"
            )));
        }
        Ok(id)
    }

    /// Builds an id without the parity check.
    pub fn allowing_zero(weight: WeightParams, sector: Sector, modified: bool) -> Self {
        CharacterId {
            weight,
            sector,
            modified,
        }
    }

    /// True exactly for the parity-killed modified twisted characters:
    /// twist_plus with m + m2 even, twist_minus with m2 even.
    pub fn is_identically_zero(self) -> bool {
        if !self.modified {
            return false;
        }
        match self.sector {
            Sector::TwistPlus => (self.weight.m + self.weight.m2) % 2 == 0,
            Sector::TwistMinus => self.weight.m2 % 2 == 0,
            _ => false,
        }
    }
}

impl fmt::Display for CharacterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={},m2={},{},{}",
            self.weight.m,
            self.weight.m2,
            self.sector,
            if self.modified { "modified" } else { "honest" }
        )
    }
}

impl FromStr for CharacterId {
    type Err = String;

    /// Parses the comma-separated form `m=2,m2=1,plus,honest`; the four
    /// fields may come in any order.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut m: Option<i64> = None;
        let mut m2: Option<i64> = None;
        let mut sector: Option<Sector> = None;
        let mut modified: Option<bool> = None;
        for part in s.split(',') {
            let part = part.trim();
            if let Some(v) = part.strip_prefix("m=") {
                m = Some(v.parse().map_err(|_| format!("bad level in '{part}'"))?);
            } else if let Some(v) = part.strip_prefix("m2=") {
                m2 = Some(v.parse().map_err(|_| format!("bad label in '{part}'"))?);
            } else if part == "honest" {
                modified = Some(false);
            } else if part == "modified" {
                modified = Some(true);
            } else {
                sector = Some(part.parse()?);
            }
        }
        let weight = WeightParams::new(
            m.ok_or("missing m= field")?,
            m2.ok_or("missing m2= field")?,
        )
        .map_err(|e| e.to_string())?;
        CharacterId::new(
            weight,
            sector.ok_or("missing sector field")?,
            modified.ok_or("missing honest/modified field")?,
        )
        .map_err(|e| e.to_string())
    }
}

// ---- numerators ----------------------------------------------------------------

/// The two-variable minus-sector numerator
///
///   (R ch)^{(-)}(tau, z1, z2, t) = Phi^{[m/2,(m2+1)/2]}(2 tau, z1, -z2, t/2).
pub fn numerator_super(
    w: WeightParams,
    tau: TauPoint,
    z1: ComplexValue,
    z2: ComplexValue,
    t: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    let v = phi_cx(
        w.half_level(),
        w.half_label(),
        2.0 * tau.value(),
        z1.cx(),
        -z2.cx(),
        t.cx() / 2.0,
        p,
    )?;
    ComplexValue::from_cx(v)
}

/// The numerator twisted by sigma_{j,k}:
///
///   Phi^{[m/2,(m2+1)/2]}(2 tau, z1+k tau-1/2, -z2-j tau+1/2, (t+j z1+k z2+j k tau)/2).
///
/// (j,k) = (0,0) gives the plus-sector numerator; (1/2,1/2) and (-1/2,-1/2)
/// give the two twisted sectors after the single-variable reduction
/// (z1, z2, t) = (z+tau/2, -z+tau/2, tau/4).
pub fn numerator_twisted(
    w: WeightParams,
    j: HalfInt,
    k: HalfInt,
    tau: TauPoint,
    z1: ComplexValue,
    z2: ComplexValue,
    t: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    let tt = tau.value();
    let (z1, z2, t) = (z1.cx(), z2.cx(), t.cx());
    let shift = (t + j.as_f64() * z1 + k.as_f64() * z2 + j.as_f64() * k.as_f64() * tt) / 2.0;
    let v = phi_cx(
        w.half_level(),
        w.half_label(),
        2.0 * tt,
        z1 + k.as_f64() * tt - 0.5,
        -z2 - j.as_f64() * tt + 0.5,
        shift,
        p,
    )?;
    ComplexValue::from_cx(v)
}

/// The reduced one-variable numerator of the given sector; `completed`
/// selects Phi-tilde over Phi.
fn sector_numerator_cx(
    w: WeightParams,
    sector: Sector,
    completed: bool,
    tau: Cx,
    z: Cx,
    p: EvalParams,
) -> EvalResult<Cx> {
    let f = if completed { phi_tilde_cx } else { phi_cx };
    let (m, s) = (w.half_level(), w.half_label());
    match sector {
        Sector::Plus => f(m, s, 2.0 * tau, z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, tau / 8.0, p),
        Sector::Minus => f(m, s, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, tau / 8.0, p),
        Sector::TwistPlus => f(m, s, 2.0 * tau, z + tau - 0.5, z - tau + 0.5, tau / 2.0, p),
        Sector::TwistMinus => f(m, s, 2.0 * tau, z - 0.5, z + 0.5, Cx::new(0.0, 0.0), p),
    }
}

/// The minus-sector numerator at the torsion point z = n + pp*tau, where it
/// vanishes identically in the level; returned unnormalized so callers can
/// compare |value| against the scale of nearby evaluations.
pub fn numerator_vanishing_check(
    w: WeightParams,
    n: i64,
    pp: i64,
    tau: TauPoint,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    let tt = tau.value();
    let z = Cx::new(n as f64, 0.0) + pp as f64 * tt;
    ComplexValue::from_cx(sector_numerator_cx(w, Sector::Minus, false, tt, z, p)?)
}

// ---- denominators ----------------------------------------------------------------

/// The three denominator kinds shared by the four sectors (both twisted
/// sectors divide by the same product).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenominatorKind {
    Plus,
    Minus,
    Twisted,
}

impl FromStr for DenominatorKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" => Ok(DenominatorKind::Plus),
            "minus" => Ok(DenominatorKind::Minus),
            "twisted" => Ok(DenominatorKind::Twisted),
            _ => Err(format!(
                "unknown denominator kind '{s}' (expected plus, minus, or twisted)"
            )),
        }
    }
}

/// The N=3 denominators:
///
///   plus:    eta(tau/2) eta(2tau) vartheta_11(tau,z) / vartheta_00(tau,z)
///   minus:   (eta(tau)^3/eta(tau/2)) vartheta_11(tau,z) / vartheta_01(tau,z)
///   twisted: (1/sqrt2) (eta(tau)^3/eta(2tau)) vartheta_11(tau,z) / vartheta_10(tau,z)
///
/// Errors with a pole when z sits within pole_eps of a zero of the dividing
/// vartheta. Zeros of the vartheta_11 factor are fine here (the value is 0);
/// they surface as poles of the characters instead.
pub fn n3_denominator(
    kind: DenominatorKind,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(n3_denominator_cx(kind, tau.value(), z.cx(), p)?)
}

fn n3_denominator_cx(kind: DenominatorKind, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let t11 = mumford_theta_cx(1, 1, tau, z, p, 0)?;
    let (quot_ab, factor) = match kind {
        DenominatorKind::Plus => {
            let f = eta_cx(tau / 2.0, p, 0)? * eta_cx(2.0 * tau, p, 0)?;
            ((0u8, 0u8), f)
        }
        DenominatorKind::Minus => {
            let e1 = eta_cx(tau, p, 0)?;
            ((0u8, 1u8), e1 * e1 * e1 / eta_cx(tau / 2.0, p, 0)?)
        }
        DenominatorKind::Twisted => {
            let e1 = eta_cx(tau, p, 0)?;
            let f = e1 * e1 * e1 / eta_cx(2.0 * tau, p, 0)? / 2.0f64.sqrt();
            ((1u8, 0u8), f)
        }
    };
    let tden = mumford_theta_cx(quot_ab.0, quot_ab.1, tau, z, p, 0)?;
    if tden.norm() < p.pole_eps {
        return Err(EvalError::Pole {
            j: 0,
            magnitude: tden.norm(),
        });
    }
    Ok(factor * t11 / tden)
}

// ---- A-blocks ----------------------------------------------------------------

/// Atilde_i^{[m]}(tau, z) = Phi-tilde^{[m,0]}(tau, z/2+delta_i, z/2-delta_i, 0)
/// with delta_1..6 = tau/4+1/4, tau/4-1/4, tau/4+1/2, tau/4, 1/4, tau/2-1/4.
pub fn a_tilde(
    i: u8,
    m: i64,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(a_tilde_cx(i, m, tau.value(), z.cx(), p)?)
}

fn a_block_level(m: i64) -> EvalResult<HalfInt> {
    if m < 1 {
        return Err(EvalError::InvalidParameter(format!(
            "A-block level m must be positive, got m = {m}"
        )));
    }
    Ok(HalfInt::from_int(m))
}

fn a_tilde_cx(i: u8, m: i64, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let level = a_block_level(m)?;
    let delta = match i {
        1 => tau / 4.0 + 0.25,
        2 => tau / 4.0 - 0.25,
        3 => tau / 4.0 + 0.5,
        4 => tau / 4.0,
        5 => Cx::new(0.25, 0.0),
        6 => tau / 2.0 - 0.25,
        _ => {
            return Err(EvalError::InvalidParameter(format!(
                "A-block index must be 1..=6, got {i}"
            )))
        }
    };
    phi_tilde_cx(
        level,
        HalfInt::ZERO,
        tau,
        z / 2.0 + delta,
        z / 2.0 - delta,
        Cx::new(0.0, 0.0),
        p,
    )
}

/// Aring_i^{[m]} = prefactor_i * Atilde_i^{[m]} with prefactors
/// e^{-pi i m tau/8} (i = 1..4), 1 (i = 5), e^{-pi i m tau/2} (i = 6).
pub fn a_ring(
    i: u8,
    m: i64,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(a_ring_cx(i, m, tau.value(), z.cx(), p)?)
}

fn a_ring_cx(i: u8, m: i64, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let pref = match i {
        1..=4 => cx_exp(-PI * I * m as f64 * tau / 8.0)?,
        5 => Cx::new(1.0, 0.0),
        6 => cx_exp(-PI * I * m as f64 * tau / 2.0)?,
        _ => {
            return Err(EvalError::InvalidParameter(format!(
                "A-block index must be 1..=6, got {i}"
            )))
        }
    };
    Ok(pref * a_tilde_cx(i, m, tau, z, p)?)
}

// ---- g-functions ----------------------------------------------------------------

/// The six eta/theta quotients closing the m=2 A-blocks:
///
///   g1^{(+)} = (eta(2tau)^2/eta(tau)) th11 th10 / th01     g1^{(-)}: / th00
///   g2^{(+)} = (eta(tau/2)^2/eta(tau)) th11 th01 / th10    g2^{(-)}: / th00
///   g3^{(+)} = (eta(tau)^5/(eta(tau/2)^2 eta(2tau)^2)) th11 th00 / th10
///   g3^{(-)}: same bracket / th01
///
/// `sign` is +1 or -1.
pub fn g_function(
    i: u8,
    sign: i8,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(g_function_cx(i, sign, tau.value(), z.cx(), p)?)
}

fn g_function_cx(i: u8, sign: i8, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    if sign != 1 && sign != -1 {
        return Err(EvalError::InvalidParameter(format!(
            "g-function sign must be +1 or -1, got {sign}"
        )));
    }
    let plus = sign == 1;
    let t11 = mumford_theta_cx(1, 1, tau, z, p, 0)?;
    let e1 = eta_cx(tau, p, 0)?;
    let (num_theta, den_ab, factor) = match i {
        1 => {
            let e2 = eta_cx(2.0 * tau, p, 0)?;
            let th10 = mumford_theta_cx(1, 0, tau, z, p, 0)?;
            (th10, if plus { (0, 1) } else { (0, 0) }, e2 * e2 / e1)
        }
        2 => {
            let eh = eta_cx(tau / 2.0, p, 0)?;
            let th01 = mumford_theta_cx(0, 1, tau, z, p, 0)?;
            (th01, if plus { (1, 0) } else { (0, 0) }, eh * eh / e1)
        }
        3 => {
            let eh = eta_cx(tau / 2.0, p, 0)?;
            let e2 = eta_cx(2.0 * tau, p, 0)?;
            let th00 = mumford_theta_cx(0, 0, tau, z, p, 0)?;
            let f = e1.powu(5) / (eh * eh * e2 * e2);
            (th00, if plus { (1, 0) } else { (0, 1) }, f)
        }
        _ => {
            return Err(EvalError::InvalidParameter(format!(
                "g-function index must be 1..=3, got {i}"
            )))
        }
    };
    let tden = mumford_theta_cx(den_ab.0, den_ab.1, tau, z, p, 0)?;
    if tden.norm() < p.pole_eps {
        return Err(EvalError::Pole {
            j: 0,
            magnitude: tden.norm(),
        });
    }
    Ok(factor * t11 * num_theta / tden)
}

// ---- characters ----------------------------------------------------------------

/// The character named by `id`, evaluated as numerator / denominator with no
/// simplification. Modified twisted characters killed by the parity rule
/// return exactly 0 without evaluating anything.
pub fn character(
    id: CharacterId,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    if id.is_identically_zero() {
        return Ok(ComplexValue::ZERO);
    }
    let tt = tau.value();
    let zz = z.cx();
    let den = n3_denominator_cx(id.sector.denominator_kind(), tt, zz, p)?;
    if den.norm() < p.pole_eps {
        return Err(EvalError::Pole {
            j: 0,
            magnitude: den.norm(),
        });
    }
    let num = sector_numerator_cx(id.weight, id.sector, id.modified, tt, zz, p)?;
    ComplexValue::from_cx(num / den)
}

/// The eta/theta closed form of `id`, available at m = 2 (all six modified
/// characters plus the honest plus/minus pairs) and at m = 4 (plus and minus
/// sectors: modified at odd m2, honest at m2 in {1,3}). Other ids error.
pub fn character_closed_form(
    id: CharacterId,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    if id.is_identically_zero() {
        return Ok(ComplexValue::ZERO);
    }
    let v = match id.weight.m {
        2 => closed_form_m2_cx(id, tau.value(), z.cx(), p)?,
        4 => closed_form_m4_cx(id, tau.value(), z.cx(), p)?,
        _ => {
            return Err(EvalError::InvalidParameter(format!(
                "no tabulated closed form for {id}"
            )))
        }
    };
    ComplexValue::from_cx(v)
}

fn closed_form_m2_cx(id: CharacterId, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let no_form = || {
        EvalError::InvalidParameter(format!(
            "no tabulated closed form for {id}"
        ))
    };
    let e1 = eta_cx(tau, p, 0)?;
    let e2 = eta_cx(2.0 * tau, p, 0)?;
    let eh = eta_cx(tau / 2.0, p, 0)?;
    let m2 = id.weight.m2;
    let odd = m2 % 2 == 1;
    let th = |a: u8, b: u8| mumford_theta_cx(a, b, tau, z, p, 0);
    match id.sector {
        Sector::Plus => {
            if odd {
                // honest = modified at the odd label
                Ok(I * e2 / (eh * e1) * th(1, 0)?)
            } else if id.modified {
                Ok(-0.5 * eh / (e2 * e1) * th(0, 1)?)
            } else {
                let sg = if m2 == 0 { 1.0 } else { -1.0 };
                Ok(-0.5 * (eh / (e2 * e1) * th(0, 1)? + sg / (eh * e2) * th(0, 0)?))
            }
        }
        Sector::Minus => {
            if odd {
                Ok(-I * eh * e2 * e2 / e1.powu(4) * th(1, 0)?)
            } else if id.modified {
                Ok(-I / 2.0 * e1 * e1 / (eh * e2 * e2) * th(0, 0)?)
            } else {
                let sg = if m2 == 0 { 1.0 } else { -1.0 };
                Ok(-I / 2.0
                    * (e1 * e1 / (eh * e2 * e2) * th(0, 0)? + sg * eh / e1.powu(3) * th(0, 1)?))
            }
        }
        Sector::TwistMinus if id.modified && odd => Ok(I / 2.0f64.sqrt()
            * (e1 * e1 / (eh * eh * e2) * th(0, 0)? + eh * eh * e2 / e1.powu(4) * th(0, 1)?)),
        Sector::TwistPlus if id.modified && odd => Ok(I / 2.0f64.sqrt()
            * (e1 * e1 / (eh * eh * e2) * th(0, 0)? - eh * eh * e2 / e1.powu(4) * th(0, 1)?)),
        _ => Err(no_form()),
    }
}

fn closed_form_m4_cx(id: CharacterId, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let m2 = id.weight.m2;
    let supported = matches!(id.sector, Sector::Plus | Sector::Minus)
        && m2 % 2 == 1
        && (id.modified || m2 == 1 || m2 == 3);
    if !supported {
        return Err(EvalError::InvalidParameter(format!(
            "no tabulated closed form for {id}"
        )));
    }
    let e1 = eta_cx(tau, p, 0)?;
    let e2 = eta_cx(2.0 * tau, p, 0)?;
    let eh = eta_cx(tau / 2.0, p, 0)?;
    let e4 = eta_cx(4.0 * tau, p, 0)?;
    let b00 = mumford_theta_cx(0, 0, 2.0 * tau, 2.0 * z, p, 0)?;
    let b10 = mumford_theta_cx(1, 0, 2.0 * tau, 2.0 * z, p, 0)?;
    let b01 = mumford_theta_cx(0, 1, 2.0 * tau, 2.0 * z, p, 0)?;
    let t10 = mumford_theta_cx(1, 0, tau, z, p, 0)?;
    let big = e2.powu(5) / (e1 * e1 * e4 * e4) * b00;
    let small = 2.0 * e4 * e4 / e2 * b10;
    let sg = if m2 == 1 { 1.0 } else { -1.0 };
    match id.sector {
        Sector::Plus => {
            let t01 = mumford_theta_cx(0, 1, tau, z, p, 0)?;
            if t01.norm() < p.pole_eps {
                return Err(EvalError::Pole {
                    j: 0,
                    magnitude: t01.norm(),
                });
            }
            let pref = I / 2.0 / (eh * e2) * t10 / t01;
            if id.modified {
                Ok(pref * (big - small))
            } else {
                Ok(pref * (big - small + sg * b01))
            }
        }
        Sector::Minus => {
            let t00 = mumford_theta_cx(0, 0, tau, z, p, 0)?;
            if t00.norm() < p.pole_eps {
                return Err(EvalError::Pole {
                    j: 0,
                    magnitude: t00.norm(),
                });
            }
            let pref = -I / 2.0 * eh / e1.powu(3) * t10 / t00;
            if id.modified {
                Ok(pref * (big + small))
            } else {
                Ok(pref * (big + small + sg * b01))
            }
        }
        _ => unreachable!("filtered above"),
    }
}

// ---- P and Q helpers -------------------------------------------------------------

/// P^{[m,s]}(tau, z) = Phi^{[m/2,s]}(2tau, z+tau/2, z-tau/2, 0).
pub fn p_function(
    m: i64,
    s: HalfInt,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    let level = pq_level(m)?;
    let tt = tau.value();
    let zz = z.cx();
    let v = phi_cx(
        level,
        s,
        2.0 * tt,
        zz + tt / 2.0,
        zz - tt / 2.0,
        Cx::new(0.0, 0.0),
        p,
    )?;
    ComplexValue::from_cx(v)
}

/// Q^{[m,s]}(tau, z) = Phi^{[m/2,s]}(2tau, z+tau/2-1/2, z-tau/2+1/2, 0).
pub fn q_function(
    m: i64,
    s: HalfInt,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<ComplexValue> {
    let level = pq_level(m)?;
    let tt = tau.value();
    let zz = z.cx();
    let v = phi_cx(
        level,
        s,
        2.0 * tt,
        zz + tt / 2.0 - 0.5,
        zz - tt / 2.0 + 0.5,
        Cx::new(0.0, 0.0),
        p,
    )?;
    ComplexValue::from_cx(v)
}

fn pq_level(m: i64) -> EvalResult<HalfInt> {
    if m < 1 {
        return Err(EvalError::InvalidParameter(format!(
            "P/Q level m must be positive, got m = {m}"
        )));
    }
    Ok(HalfInt::new(m))
}

// ---- doubling relations ----------------------------------------------------------

/// Both sides of the rel-th level-doubling relation between the Aring
/// blocks at level m and level 2m:
///
///   1:  2 Aring3^{[m]}(2tau, 2z)              = Aring1^{[2m]} + Aring2^{[2m]}
///   2:  Aring6^{[m]}(tau/2, z)                = Aring2^{[2m]} + e^{-pi i m} Aring1^{[2m]}
///   3:  2 Aring4^{[m]}(2tau, 2z)              = Aring3^{[2m]} + Aring4^{[2m]}
///   4:  e^{pi i m/4} Aring6^{[m]}((tau+1)/2, z) = Aring4^{[2m]} + e^{-pi i m} Aring3^{[2m]}
///   5:  Aring5^{[m]}(tau/2, z)                = Aring5^{[2m]} + e^{pi i m} Aring6^{[2m]}
///   6:  Aring6^{[m]}(-1/(2tau)+1/2, z/tau)    = tau e^{-pi i m/4} e^{pi i m z^2/tau}
///                                                 (Aring5^{[2m]} + Aring6^{[2m]})
///
/// with all right-hand blocks at (tau, z).
pub fn doubling_relation(
    rel: u8,
    m: i64,
    tau: TauPoint,
    z: ComplexValue,
    p: EvalParams,
) -> EvalResult<(ComplexValue, ComplexValue)> {
    let tt = tau.value();
    let zz = z.cx();
    let mf = m as f64;
    let em = if m % 2 == 0 { 1.0 } else { -1.0 };
    let (lhs, rhs) = match rel {
        1 => (
            2.0 * a_ring_cx(3, m, 2.0 * tt, 2.0 * zz, p)?,
            a_ring_cx(1, 2 * m, tt, zz, p)? + a_ring_cx(2, 2 * m, tt, zz, p)?,
        ),
        2 => (
            a_ring_cx(6, m, tt / 2.0, zz, p)?,
            a_ring_cx(2, 2 * m, tt, zz, p)? + em * a_ring_cx(1, 2 * m, tt, zz, p)?,
        ),
        3 => (
            2.0 * a_ring_cx(4, m, 2.0 * tt, 2.0 * zz, p)?,
            a_ring_cx(3, 2 * m, tt, zz, p)? + a_ring_cx(4, 2 * m, tt, zz, p)?,
        ),
        4 => (
            cx_exp(PI * I * mf / 4.0)? * a_ring_cx(6, m, (tt + 1.0) / 2.0, zz, p)?,
            a_ring_cx(4, 2 * m, tt, zz, p)? + em * a_ring_cx(3, 2 * m, tt, zz, p)?,
        ),
        5 => (
            a_ring_cx(5, m, tt / 2.0, zz, p)?,
            a_ring_cx(5, 2 * m, tt, zz, p)? + em * a_ring_cx(6, 2 * m, tt, zz, p)?,
        ),
        6 => (
            a_ring_cx(6, m, -1.0 / (2.0 * tt) + 0.5, zz / tt, p)?,
            tt * cx_exp(-PI * I * mf / 4.0)?
                * cx_exp(PI * I * mf * zz * zz / tt)?
                * (a_ring_cx(5, 2 * m, tt, zz, p)? + a_ring_cx(6, 2 * m, tt, zz, p)?),
        ),
        _ => {
            return Err(EvalError::InvalidParameter(format!(
                "doubling relation index must be 1..=6, got {rel}"
            )))
        }
    };
    Ok((ComplexValue::from_cx(lhs)?, ComplexValue::from_cx(rhs)?))
}

// ---- asymptotics ----------------------------------------------------------------

/// The leading term of one tabulated small-tau asymptotic row:
///
///   ch(i T, a tau) ~ coefficient * [cos(pi a)] * (-i tau)^power * e^{rate * pi i / tau}
///
/// as T -> 0+ along tau = iT, z = a tau. `predicted_value` additionally
/// multiplies the exact elliptic factor e^{-pi i a^2 tau}, which tends to 1
/// and makes the remaining corrections exponentially small.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticPrediction {
    pub coefficient: ComplexValue,
    /// r in e^{r * pi i / tau}.
    pub exponent_rate: Ratio,
    /// p in (-i tau)^p.
    pub power: Ratio,
    /// cos(pi a) when the row carries the cosine factor.
    pub cos_factor: Option<f64>,
    /// The insertion a of z = a tau the prediction was built for.
    pub insertion: f64,
}

impl AsymptoticPrediction {
    /// The prediction evaluated at tau (meant for tau = iT on the ladder
    /// T in {0.2, 0.1, 0.05}).
    pub fn predicted_value(&self, tau: TauPoint) -> EvalResult<ComplexValue> {
        let tt = tau.value();
        let mut v = self.coefficient.cx()
            * cx_exp(self.exponent_rate.as_f64() * PI * I / tt)?
            * cx_exp(-PI * I * self.insertion * self.insertion * tt)?;
        if let Some(c) = self.cos_factor {
            v *= c;
        }
        if self.power != Ratio::ZERO {
            v *= (-I * tt).powf(self.power.as_f64());
        }
        ComplexValue::from_cx(v)
    }
}

/// The tabulated leading asymptotic of `id` along tau = iT, z = a tau.
/// Only the m = 2 plus/minus rows are tabulated; anything else is
/// `UnknownAsymptotic`.
pub fn asymptotic_prediction(id: CharacterId, a: f64) -> EvalResult<AsymptoticPrediction> {
    let unknown = || EvalError::UnknownAsymptotic(id.to_string());
    if id.weight.m != 2 {
        return Err(unknown());
    }
    let odd = id.weight.m2 % 2 == 1;
    let (coefficient, cos_factor, rate, power) = match id.sector {
        Sector::Plus => {
            if odd {
                (Cx::new(0.0, 0.5), None, Ratio::new(5, 24), Ratio::ZERO)
            } else if id.modified {
                (Cx::new(-2.0, 0.0), Some((PI * a).cos()), Ratio::new(-7, 24), Ratio::ZERO)
            } else if id.weight.m2 == 0 {
                (Cx::new(-0.5, 0.0), None, Ratio::new(5, 24), Ratio::new(1, 2))
            } else {
                (Cx::new(0.5, 0.0), None, Ratio::new(5, 24), Ratio::new(1, 2))
            }
        }
        Sector::Minus => {
            let c = Cx::new(0.0, -1.0 / 2.0f64.sqrt());
            (c, None, Ratio::new(1, 12), Ratio::ZERO)
        }
        _ => return Err(unknown()),
    };
    Ok(AsymptoticPrediction {
        coefficient: ComplexValue::new(coefficient.re, coefficient.im),
        exponent_rate: rate,
        power,
        cos_factor,
        insertion: a,
    })
}

/// |actual/predicted - 1| for each ladder temperature, with the character
/// evaluated through its closed form at tau = iT, z = a tau. Temperatures
/// below 0.05 are rejected.
pub fn asymptotic_ladder(
    id: CharacterId,
    a: f64,
    temps: &[f64],
    p: EvalParams,
) -> EvalResult<Vec<f64>> {
    let prediction = asymptotic_prediction(id, a)?;
    let mut deviations = Vec::with_capacity(temps.len());
    for &temp in temps {
        if !(temp >= 0.05) {
            return Err(EvalError::InvalidParameter(format!(
                "ladder temperature must be at least 0.05, got {temp}"
            )));
        }
        let tau = TauPoint::from_parts(0.0, temp)?;
        let z = ComplexValue::new(0.0, a * temp);
        let scaled = EvalParams {
            max_terms: (p.max_terms as f64 / temp.min(1.0)) as usize,
            ..p
        };
        let actual = character_closed_form(id, tau, z, scaled)?;
        let predicted = prediction.predicted_value(tau)?;
        deviations.push((actual.cx() / predicted.cx() - 1.0).norm());
    }
    Ok(deviations)
}
