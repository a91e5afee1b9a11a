//! Seeded numerical verification of the identity corpus.
//!
//! An identity case pairs two side evaluators over a sampling box.  Running
//! a case draws a deterministic low-discrepancy stream of points from the
//! case seed, evaluates both sides at every point, and folds the per-point
//! residuals
//!
//!   residual = |lhs - rhs| / (|lhs| + |rhs| + 1)
//!
//! into a report carrying the maximum and mean residual, the counts of
//! evaluated and pole-skipped samples, and the worst sampled point.  A case
//! passes when the maximum residual stays below its tolerance and at least
//! 80% of the requested samples evaluated cleanly.
//!
//! Reports are bitwise reproducible: the point stream depends only on the
//! seed, samples are evaluated independently (possibly across threads), and
//! the fold always runs in stream order.  Ids beginning with "conjecture-"
//! mark exploratory probes; their reports are emitted like any other but
//! never affect suite status.
//!
//! Identities whose honest value is zero are registered with both sides
//! shifted by one, so that a relative perturbation of either side still
//! registers as a residual.

use std::f64::consts::PI;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::appell::phi_cx;
use crate::characters::{
    a_ring, a_tilde, asymptotic_ladder, character, character_closed_form, doubling_relation,
    g_function, n3_denominator, numerator_vanishing_check, p_function, q_function, CharacterId,
    DenominatorKind, Sector, WeightParams,
};
use crate::error::{EvalError, EvalResult};
use crate::halfint::HalfInt;
use crate::params::{ComplexValue, Cx, EvalParams, TauPoint};
use crate::qseries::{eta_cx, jacobi_theta_cx, mumford_theta_cx, I};
use crate::zwegers::{phi_add_cx, phi_tilde_cx, r_function_cx};

/// Default per-case relative tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Default number of samples per case.
pub const DEFAULT_SAMPLES: usize = 100;

/// Temperature ladder used by the asymptotic cases, hottest first.
pub const LADDER_TEMPS: [f64; 3] = [0.2, 0.1, 0.05];

// ---- evaluation points ----------------------------------------------------

/// One sampled argument tuple.  `aux` carries the case-specific extra
/// coordinate: a second elliptic variable, a row selector for multi-row
/// families, torsion labels, or a spectral-flow insertion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint {
    pub tau: ComplexValue,
    pub z: ComplexValue,
    pub aux: ComplexValue,
}

impl EvalPoint {
    fn origin() -> Self {
        EvalPoint {
            tau: ComplexValue::ZERO,
            z: ComplexValue::ZERO,
            aux: ComplexValue::ZERO,
        }
    }
}

// ---- sampling boxes ---------------------------------------------------------

/// Rectangular sampling region.  Each pair is an inclusive (low, high) range;
/// a collapsed pair pins that coordinate.  The imaginary part of tau must
/// stay at or above 0.3 so every sampled point lies safely inside the upper
/// half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleBox {
    pub re_tau: (f64, f64),
    pub im_tau: (f64, f64),
    pub re_z: (f64, f64),
    pub im_z: (f64, f64),
    pub re_aux: (f64, f64),
    pub im_aux: (f64, f64),
}

impl Default for SampleBox {
    fn default() -> Self {
        SampleBox {
            re_tau: (-0.45, 0.45),
            im_tau: (0.5, 1.8),
            re_z: (-0.4, 0.4),
            im_z: (-0.3, 0.3),
            re_aux: (0.0, 0.0),
            im_aux: (0.0, 0.0),
        }
    }
}

impl SampleBox {
    fn ranges(&self) -> [(f64, f64); 6] {
        [
            self.re_tau,
            self.im_tau,
            self.re_z,
            self.im_z,
            self.re_aux,
            self.im_aux,
        ]
    }

    fn checked(self) -> EvalResult<Self> {
        for (lo, hi) in self.ranges() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(EvalError::InvalidParameter(format!(
                    "sample range ({lo}, {hi}) must be finite with low <= high"
                )));
            }
        }
        if self.im_tau.0 < 0.3 {
            return Err(EvalError::InvalidParameter(format!(
                "Im tau must stay at or above 0.3, box starts at {}",
                self.im_tau.0
            )));
        }
        Ok(self)
    }
}

// ---- identity cases ---------------------------------------------------------

/// One side of an identity: a closure from a sampled point to a value.
pub type SideEval = Arc<dyn Fn(EvalPoint, EvalParams) -> EvalResult<Cx> + Send + Sync>;

/// A single verifiable identity.
///
/// The two evaluators are compared over `n_samples` points drawn from
/// `sample_box` with the case `seed`.  Construction validates the
/// invariants: positive finite tolerance, at least 10 samples, and a box
/// that keeps Im tau at or above 0.3.
#[derive(Clone)]
pub struct IdentityCase {
    pub id: String,
    lhs: SideEval,
    rhs: SideEval,
    pub sample_box: SampleBox,
    pub n_samples: usize,
    pub tolerance: f64,
    pub seed: u64,
    lhs_factor: f64,
    rhs_factor: f64,
}

impl IdentityCase {
    pub fn new(
        id: impl Into<String>,
        lhs: SideEval,
        rhs: SideEval,
        sample_box: SampleBox,
        n_samples: usize,
        tolerance: f64,
        seed: u64,
    ) -> EvalResult<Self> {
        let id = id.into();
        if id.is_empty() {
            return Err(EvalError::InvalidParameter("case id must not be empty".into()));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(EvalError::InvalidParameter(format!(
                "case {id}: tolerance must be positive and finite, got {tolerance}"
            )));
        }
        if n_samples < 10 {
            return Err(EvalError::InvalidParameter(format!(
                "case {id}: need at least 10 samples, got {n_samples}"
            )));
        }
        let sample_box = sample_box.checked()?;
        Ok(IdentityCase {
            id,
            lhs,
            rhs,
            sample_box,
            n_samples,
            tolerance,
            seed,
            lhs_factor: 1.0,
            rhs_factor: 1.0,
        })
    }

    /// Exploratory probes report their residuals but never affect suite
    /// status.
    pub fn is_exploratory(&self) -> bool {
        self.id.starts_with("conjecture-")
    }

    /// Returns the case with its left side scaled by `1 + rel`.
    pub fn with_lhs_perturbed(mut self, rel: f64) -> Self {
        self.lhs_factor *= 1.0 + rel;
        self
    }

    /// Returns the case with its right side scaled by `1 + rel`.
    pub fn with_rhs_perturbed(mut self, rel: f64) -> Self {
        self.rhs_factor *= 1.0 + rel;
        self
    }
}

impl std::fmt::Debug for IdentityCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IdentityCase")
            .field("id", &self.id)
            .field("n_samples", &self.n_samples)
            .field("tolerance", &self.tolerance)
            .field("seed", &self.seed)
            .finish_non_exhaustive()
    }
}

// ---- reports ----------------------------------------------------------------

/// Outcome of running one case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub pass: bool,
    pub max_rel_residual: f64,
    pub mean_rel_residual: f64,
    pub n_evaluated: usize,
    pub n_skipped_pole: usize,
    pub worst_point: EvalPoint,
}

/// Run-wide defaults echoed into every suite report header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub seed: u64,
    pub default_tolerance: f64,
    pub default_samples: usize,
    pub term_tol: f64,
    pub max_terms: usize,
    pub pole_eps: f64,
}

impl SuiteParams {
    pub fn new(seed: u64, p: EvalParams) -> Self {
        SuiteParams {
            seed,
            default_tolerance: DEFAULT_TOLERANCE,
            default_samples: DEFAULT_SAMPLES,
            term_tol: p.term_tol,
            max_terms: p.max_terms,
            pole_eps: p.pole_eps,
        }
    }
}

/// Full result of a suite run, serialized as the stable JSON schema
/// `{suite, params, cases}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub params: SuiteParams,
    pub cases: Vec<IdentityReport>,
}

// ---- low-discrepancy sampling -------------------------------------------------

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut x = *state;
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn unit_from_bits(bits: u64) -> f64 {
    (bits >> 11) as f64 / (1u64 << 53) as f64
}

// Kronecker increments frac(sqrt(p)) for the first six primes; pairwise
// independent over the rationals, so the six coordinates fill their box
// jointly.
const KRONECKER_STEPS: [f64; 6] = [
    std::f64::consts::SQRT_2,
    1.732_050_807_568_877_2,
    2.236_067_977_499_79,
    2.645_751_311_064_590_7,
    3.316_624_790_355_399_7,
    3.605_551_275_463_989,
];

fn torus_distance(tau: Cx, a: f64, b: f64) -> f64 {
    let da = a - a.round();
    let db = b - b.round();
    (db + da * tau).norm()
}

/// Distance from `z` to the nearest zero of the four Jacobi theta factors,
/// measured on the torus spanned by 1 and tau.
fn lattice_clearance(tau: Cx, z: Cx) -> f64 {
    let a = z.im / tau.im;
    let b = z.re - a * tau.re;
    let mut best = f64::MAX;
    for (sa, sb) in [(0.0, 0.0), (0.0, 0.5), (0.5, 0.0), (0.5, 0.5)] {
        best = best.min(torus_distance(tau, a - sa, b - sb));
    }
    best
}

fn nondegenerate(range: (f64, f64)) -> bool {
    range.1 > range.0
}

/// Draws the deterministic sample stream for a case: a seeded Kronecker
/// sequence mapped into the box, skipping z-samples closer than
/// pole_eps^(1/4) to a theta zero.
fn sample_points(case: &IdentityCase, p: EvalParams) -> Vec<EvalPoint> {
    let mut state = case.seed ^ 0xA076_1D64_78BD_642F;
    let mut offsets = [0.0f64; 6];
    for slot in offsets.iter_mut() {
        *slot = unit_from_bits(splitmix64(&mut state));
    }
    let ranges = case.sample_box.ranges();
    let guard_z =
        nondegenerate(case.sample_box.re_z) || nondegenerate(case.sample_box.im_z);
    let radius = p.pole_eps.powf(0.25);
    let mut points = Vec::with_capacity(case.n_samples);
    let cap = 64 * case.n_samples as u64;
    let mut k = 0u64;
    while points.len() < case.n_samples && k < cap {
        k += 1;
        let mut coords = [0.0f64; 6];
        for d in 0..6 {
            let u = (offsets[d] + k as f64 * KRONECKER_STEPS[d]).fract();
            coords[d] = ranges[d].0 + u * (ranges[d].1 - ranges[d].0);
        }
        let tau = Cx::new(coords[0], coords[1]);
        let z = Cx::new(coords[2], coords[3]);
        if guard_z && lattice_clearance(tau, z) < radius {
            continue;
        }
        points.push(EvalPoint {
            tau: ComplexValue::new(coords[0], coords[1]),
            z: ComplexValue::new(coords[2], coords[3]),
            aux: ComplexValue::new(coords[4], coords[5]),
        });
    }
    points
}

// ---- running cases and suites ---------------------------------------------------

enum Outcome {
    Residual(f64),
    Pole,
    Failed,
}

fn evaluate_sample(case: &IdentityCase, p: EvalParams, pt: EvalPoint) -> Outcome {
    let lhs = match (case.lhs)(pt, p) {
        Ok(v) => v * case.lhs_factor,
        Err(EvalError::Pole { .. }) => return Outcome::Pole,
        Err(_) => return Outcome::Failed,
    };
    let rhs = match (case.rhs)(pt, p) {
        Ok(v) => v * case.rhs_factor,
        Err(EvalError::Pole { .. }) => return Outcome::Pole,
        Err(_) => return Outcome::Failed,
    };
    if !(lhs.re.is_finite() && lhs.im.is_finite() && rhs.re.is_finite() && rhs.im.is_finite()) {
        return Outcome::Failed;
    }
    Outcome::Residual((lhs - rhs).norm() / (lhs.norm() + rhs.norm() + 1.0))
}

/// Runs one case and reports the folded residual statistics.
///
/// Pole-adjacent samples are skipped and counted; any other evaluation
/// failure on more than 20% of the stream aborts the case.
pub fn run_case(case: &IdentityCase, p: EvalParams) -> EvalResult<IdentityReport> {
    let points = sample_points(case, p);
    let outcomes: Vec<Outcome> = points
        .par_iter()
        .map(|pt| evaluate_sample(case, p, *pt))
        .collect();
    let mut n_evaluated = 0usize;
    let mut n_skipped_pole = 0usize;
    let mut n_failed = 0usize;
    let mut sum = 0.0f64;
    let mut max = 0.0f64;
    let mut worst = EvalPoint::origin();
    let mut saw_value = false;
    for (pt, outcome) in points.iter().zip(&outcomes) {
        match outcome {
            Outcome::Residual(r) => {
                n_evaluated += 1;
                sum += r;
                if !saw_value || *r > max {
                    max = *r;
                    worst = *pt;
                    saw_value = true;
                }
            }
            Outcome::Pole => n_skipped_pole += 1,
            Outcome::Failed => n_failed += 1,
        }
    }
    if 5 * n_failed > points.len() {
        return Err(EvalError::CaseAborted {
            failed: n_failed,
            total: points.len(),
        });
    }
    let mean = if n_evaluated == 0 { 0.0 } else { sum / n_evaluated as f64 };
    let pass =
        max < case.tolerance && (n_evaluated as f64) >= 0.8 * case.n_samples as f64;
    Ok(IdentityReport {
        id: case.id.clone(),
        pass,
        max_rel_residual: max,
        mean_rel_residual: mean,
        n_evaluated,
        n_skipped_pole,
        worst_point: worst,
    })
}

// The residual measure is bounded by 1, so an aborted case reports a
// sentinel just past the attainable range.
fn aborted_report(id: &str) -> IdentityReport {
    IdentityReport {
        id: id.to_string(),
        pass: false,
        max_rel_residual: 1.0,
        mean_rel_residual: 1.0,
        n_evaluated: 0,
        n_skipped_pole: 0,
        worst_point: EvalPoint::origin(),
    }
}

/// Matches `*` against any run of characters; all other characters match
/// themselves.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == text;
    }
    let first = parts[0];
    let last = parts[parts.len() - 1];
    if !text.starts_with(first) || !text.ends_with(last) {
        return false;
    }
    if first.len() + last.len() > text.len() {
        return false;
    }
    let mut pos = first.len();
    let limit = text.len() - last.len();
    for part in &parts[1..parts.len() - 1] {
        if part.is_empty() {
            continue;
        }
        match text[pos..limit].find(part) {
            Some(found) => pos += found + part.len(),
            None => return false,
        }
    }
    true
}

fn suite_pool() -> rayon::ThreadPool {
    let requested = std::env::var("MOCKCHAR_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(requested)
        .build()
        .expect("thread pool construction must succeed")
}

/// Runs every case whose id matches the filter glob.
///
/// Returns the reports in corpus order together with the suite verdict:
/// true when every selected non-exploratory case passed.  An empty match is
/// a success.  `MOCKCHAR_THREADS` caps worker threads, 0 or unset means one
/// per core.
pub fn run_suite(
    cases: &[IdentityCase],
    filter: &str,
    p: EvalParams,
) -> (Vec<IdentityReport>, bool) {
    let selected: Vec<&IdentityCase> = cases
        .iter()
        .filter(|case| glob_match(filter, &case.id))
        .collect();
    let reports: Vec<IdentityReport> = suite_pool().install(|| {
        selected
            .par_iter()
            .map(|case| run_case(case, p).unwrap_or_else(|_| aborted_report(&case.id)))
            .collect()
    });
    let ok = selected
        .iter()
        .zip(&reports)
        .all(|(case, report)| report.pass || case.is_exploratory());
    (reports, ok)
}

/// Replaces the per-case sample counts and tolerances, keeping the
/// construction invariants (at least 10 samples, positive tolerance).
pub fn apply_overrides(
    cases: &mut [IdentityCase],
    samples: Option<usize>,
    tolerance: Option<f64>,
) {
    for case in cases.iter_mut() {
        if let Some(n) = samples {
            case.n_samples = n.max(10);
        }
        if let Some(tol) = tolerance {
            if tol > 0.0 && tol.is_finite() {
                case.tolerance = tol;
            }
        }
    }
}

// ---- corpus building blocks ------------------------------------------------------

fn tpv(tau: Cx) -> EvalResult<TauPoint> {
    TauPoint::new(tau)
}

fn cvv(z: Cx) -> EvalResult<ComplexValue> {
    ComplexValue::from_cx(z)
}

fn cid(m: i64, m2: i64, sector: Sector, modified: bool) -> CharacterId {
    let weight = WeightParams::new(m, m2).expect("corpus weight labels are valid");
    CharacterId::allowing_zero(weight, sector, modified)
}

fn ch(id: CharacterId, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(character(id, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn ch_closed(id: CharacterId, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(character_closed_form(id, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn aring(i: u8, m: i64, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(a_ring(i, m, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn atil(i: u8, m: i64, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(a_tilde(i, m, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn gfun(i: u8, sign: i8, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(g_function(i, sign, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn dfun(kind: DenominatorKind, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(n3_denominator(kind, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn pfun(m: i64, s: HalfInt, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(p_function(m, s, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn qfun(m: i64, s: HalfInt, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    Ok(q_function(m, s, tpv(tau)?, cvv(z)?, p)?.cx())
}

fn eta(tau: Cx, p: EvalParams) -> EvalResult<Cx> {
    eta_cx(tau, p, 0)
}

fn theta(a: u8, b: u8, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    mumford_theta_cx(a, b, tau, z, p, 0)
}

/// Maps the row-selector coordinate of `aux` into `0..n`.
fn pick_row(pt: EvalPoint, n: usize) -> usize {
    let u = pt.aux.re.clamp(0.0, 1.0);
    ((u * n as f64) as usize).min(n - 1)
}

fn doubling_sides(rel: u8, m: i64, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<(Cx, Cx)> {
    let (lhs, rhs) = doubling_relation(rel, m, tpv(tau)?, cvv(z)?, p)?;
    Ok((lhs.cx(), rhs.cx()))
}

// (i/4) q^{-1/16} theta_00 / (eta(tau/2) eta(2tau) theta_11), the prefactor
// shared by the even-label step identities and the decomposition probes.
fn step_prefactor(tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let num = theta(0, 0, tau, z, p)?;
    let den = eta(tau / 2.0, p)? * eta(2.0 * tau, p)? * theta(1, 1, tau, z, p)?;
    Ok(I / 4.0 * (-PI * I * tau / 8.0).exp() * num / den)
}

// theta_{k,2} - theta_{-k,2} at (2 tau, 2z) for k = half/2 in half-integers.
fn step_bracket(k: HalfInt, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let level = HalfInt::from_int(2);
    Ok(jacobi_theta_cx(k, level, 2.0 * tau, 2.0 * z, p)?
        - jacobi_theta_cx(-k, level, 2.0 * tau, 2.0 * z, p)?)
}

// Solves ch = (C1 theta_01^2 + C2 theta_10^2) / (eta(tau/2) eta(2tau)) for
// (C1, C2) from two z samples of the label-0 modified plus character at
// level 4.
fn theta_square_coefficients(
    tau: Cx,
    za: Cx,
    zb: Cx,
    p: EvalParams,
) -> EvalResult<(Cx, Cx)> {
    let scale = eta(tau / 2.0, p)? * eta(2.0 * tau, p)?;
    let id = cid(4, 0, Sector::Plus, true);
    let a1 = theta(0, 1, tau, za, p)?.powi(2);
    let b1 = theta(1, 0, tau, za, p)?.powi(2);
    let a2 = theta(0, 1, tau, zb, p)?.powi(2);
    let b2 = theta(1, 0, tau, zb, p)?.powi(2);
    let r1 = scale * ch(id, tau, za, p)?;
    let r2 = scale * ch(id, tau, zb, p)?;
    let det = a1 * b2 - a2 * b1;
    if det.norm() < p.pole_eps {
        return Err(EvalError::InvalidParameter(
            "theta-square solve hit a degenerate sample pair".into(),
        ));
    }
    Ok(((r1 * b2 - r2 * b1) / det, (a1 * r2 - a2 * r1) / det))
}

// ---- corpus boxes -----------------------------------------------------------

fn wide_box() -> SampleBox {
    SampleBox::default()
}

// Keeps Im(-1/tau) above 0.38 so S-transformed evaluations stay clear of
// the low-imaginary regime of the correction quadrature.
fn transform_box() -> SampleBox {
    SampleBox {
        re_tau: (-0.25, 0.25),
        im_tau: (0.95, 1.55),
        re_z: (-0.3, 0.3),
        im_z: (-0.22, 0.22),
        ..SampleBox::default()
    }
}

fn rows_box(base: SampleBox) -> SampleBox {
    SampleBox {
        re_aux: (0.0, 1.0),
        ..base
    }
}

// Shifting tau by one keeps Im tau fixed, so T-law cases can sample low in
// the strip where the twisted characters are large enough for a relative
// corruption to register.
fn low_tau_box() -> SampleBox {
    SampleBox {
        re_tau: (-0.3, 0.3),
        im_tau: (0.5, 0.9),
        re_z: (-0.3, 0.3),
        im_z: (-0.22, 0.22),
        ..SampleBox::default()
    }
}

fn two_z_box() -> SampleBox {
    SampleBox {
        re_aux: (0.07, 0.43),
        im_aux: (-0.22, 0.2),
        ..SampleBox::default()
    }
}

fn torsion_box() -> SampleBox {
    SampleBox {
        re_z: (0.0, 0.0),
        im_z: (0.0, 0.0),
        re_aux: (-2.49, 2.49),
        im_aux: (-2.49, 2.49),
        ..SampleBox::default()
    }
}

fn ladder_box() -> SampleBox {
    SampleBox {
        re_tau: (0.0, 0.0),
        im_tau: (1.0, 1.0),
        re_z: (0.0, 0.0),
        im_z: (0.0, 0.0),
        re_aux: (0.0, 0.3),
        im_aux: (0.0, 0.0),
    }
}

// ---- corpus assembly ----------------------------------------------------------

fn fnv1a(text: &str) -> u64 {
    let mut hash = 0xCBF2_9CE4_8422_2325u64;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x0000_0100_0000_01B3);
    }
    hash
}

fn case_seed(suite_seed: u64, id: &str) -> u64 {
    let mut state = suite_seed ^ fnv1a(id);
    splitmix64(&mut state)
}

fn case(
    id: &str,
    suite_seed: u64,
    sample_box: SampleBox,
    n_samples: usize,
    tolerance: f64,
    lhs: impl Fn(EvalPoint, EvalParams) -> EvalResult<Cx> + Send + Sync + 'static,
    rhs: impl Fn(EvalPoint, EvalParams) -> EvalResult<Cx> + Send + Sync + 'static,
) -> IdentityCase {
    IdentityCase::new(
        id,
        Arc::new(lhs),
        Arc::new(rhs),
        sample_box,
        n_samples,
        tolerance,
        case_seed(suite_seed, id),
    )
    .expect("builtin corpus case must validate")
}

// -i e^{-2 pi i t} eta^3 theta_11(z1+z2) / (theta_11(z1) theta_11(z2)), the
// closed form of Phi^{[1,s]}(tau,z1,z2,t) for every integer label s.
fn appell_eta_quotient(tau: Cx, z1: Cx, z2: Cx, t: Cx, p: EvalParams) -> EvalResult<Cx> {
    let e3 = eta(tau, p)?.powi(3);
    let num = theta(1, 1, tau, z1 + z2, p)?;
    let d1 = theta(1, 1, tau, z1, p)?;
    let d2 = theta(1, 1, tau, z2, p)?;
    Ok(-I * (-2.0 * PI * I * t).exp() * e3 * num / (d1 * d2))
}

fn push_appell_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "lemma-2.7-denominator",
        seed,
        two_z_box(),
        100,
        1e-9,
        |pt, p| {
            phi_cx(
                HalfInt::ONE,
                HalfInt::ZERO,
                pt.tau.cx(),
                pt.z.cx(),
                pt.aux.cx(),
                Cx::new(0.0, 0.0),
                p,
            )
        },
        |pt, p| appell_eta_quotient(pt.tau.cx(), pt.z.cx(), pt.aux.cx(), Cx::new(0.0, 0.0), p),
    ));
    out.push(case(
        "lemma-2.7-denominator-s1",
        seed,
        two_z_box(),
        100,
        1e-9,
        |pt, p| {
            let t = Cx::new(0.07, -0.04);
            phi_cx(HalfInt::ONE, HalfInt::ONE, pt.tau.cx(), pt.z.cx(), pt.aux.cx(), t, p)
        },
        |pt, p| {
            appell_eta_quotient(pt.tau.cx(), pt.z.cx(), pt.aux.cx(), Cx::new(0.07, -0.04), p)
        },
    ));
}

fn push_theta_quotient_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "prop-9.1-sum",
        seed,
        wide_box(),
        100,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let b00 = theta(0, 0, 2.0 * tau, z, p)?;
            let b10 = theta(1, 0, 2.0 * tau, z, p)?;
            Ok(b00 / b10 + b10 / b00)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let e1 = eta(tau, p)?;
            let eh = eta(tau / 2.0, p)?;
            let e2 = eta(2.0 * tau, p)?;
            Ok(e1.powi(6) / (eh.powi(2) * e2.powi(4)) * theta(0, 0, tau, z, p)?
                / theta(1, 0, tau, z, p)?)
        },
    ));
    out.push(case(
        "prop-9.1-diff",
        seed,
        wide_box(),
        100,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let b00 = theta(0, 0, 2.0 * tau, z, p)?;
            let b10 = theta(1, 0, 2.0 * tau, z, p)?;
            Ok(b00 / b10 - b10 / b00)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let eh = eta(tau / 2.0, p)?;
            let e2 = eta(2.0 * tau, p)?;
            Ok(eh.powi(2) / e2.powi(2) * theta(0, 1, tau, z, p)? / theta(1, 0, tau, z, p)?)
        },
    ));
}

fn push_m2_closed_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    let mut push = |id: String, char_id: CharacterId| {
        out.push(case(
            &id,
            seed,
            wide_box(),
            40,
            1e-8,
            move |pt, p| ch(char_id, pt.tau.cx(), pt.z.cx(), p),
            move |pt, p| ch_closed(char_id, pt.tau.cx(), pt.z.cx(), p),
        ));
    };
    for sector in [Sector::Plus, Sector::Minus] {
        for modified in [true, false] {
            for m2 in 0..=2 {
                let kind = if modified { "modified" } else { "honest" };
                push(
                    format!("m2-closed-{sector}-{kind}-{m2}"),
                    cid(2, m2, sector, modified),
                );
            }
        }
    }
    push(
        "m2-closed-twist_minus-modified-1".to_string(),
        cid(2, 1, Sector::TwistMinus, true),
    );
    push(
        "m2-closed-twist_plus-modified-1".to_string(),
        cid(2, 1, Sector::TwistPlus, true),
    );
}

fn push_average_and_sum_rules(seed: u64, out: &mut Vec<IdentityCase>) {
    for sector in [Sector::Plus, Sector::Minus] {
        out.push(case(
            &format!("m2-average-rule-{sector}"),
            seed,
            wide_box(),
            30,
            1e-9,
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                Ok(ch(cid(2, 0, sector, false), tau, z, p)?
                    + ch(cid(2, 2, sector, false), tau, z, p)?)
            },
            move |pt, p| Ok(2.0 * ch(cid(2, 0, sector, true), pt.tau.cx(), pt.z.cx(), p)?),
        ));
        out.push(case(
            &format!("m4-sum-rule-{sector}"),
            seed,
            wide_box(),
            24,
            1e-9,
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                Ok(ch(cid(4, 1, sector, false), tau, z, p)?
                    + ch(cid(4, 3, sector, false), tau, z, p)?)
            },
            move |pt, p| Ok(2.0 * ch(cid(4, 1, sector, true), pt.tau.cx(), pt.z.cx(), p)?),
        ));
    }
}

// The six modified characters of one level close among themselves under S
// and T.  Rows carry (sector, label) for the transformed side.
fn closure_row(m: i64, row: usize) -> CharacterId {
    let p0 = if m % 2 == 0 { 1 } else { 0 };
    match row {
        0 => cid(m, 0, Sector::Plus, true),
        1 => cid(m, 1, Sector::Plus, true),
        2 => cid(m, 0, Sector::Minus, true),
        3 => cid(m, 1, Sector::Minus, true),
        4 => cid(m, p0, Sector::TwistPlus, true),
        _ => cid(m, 1, Sector::TwistMinus, true),
    }
}

fn closure_s_combination(m: i64, row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let mf = m as f64;
    let ph = (PI * I * mf * z * z / (2.0 * tau)).exp();
    let pm = (PI * I * mf / 2.0).exp();
    let e4 = (-PI * I * mf / 4.0).exp();
    match row {
        0 => {
            let chp0 = ch(closure_row(m, 0), tau, z, p)?;
            let chp1 = ch(closure_row(m, 1), tau, z, p)?;
            Ok(-0.5 * e4 * ph * ((1.0 - pm) * chp1 - (pm + 1.0) * chp0))
        }
        1 => {
            let chp0 = ch(closure_row(m, 0), tau, z, p)?;
            let chp1 = ch(closure_row(m, 1), tau, z, p)?;
            Ok(-0.5 * e4 * ph * ((1.0 + pm) * chp1 + (pm - 1.0) * chp0))
        }
        2 => {
            let chtp = ch(closure_row(m, 4), tau, z, p)?;
            let chtm = ch(closure_row(m, 5), tau, z, p)?;
            Ok(-0.5 * ph * (chtm - pm * chtp))
        }
        3 => {
            let chtp = ch(closure_row(m, 4), tau, z, p)?;
            let chtm = ch(closure_row(m, 5), tau, z, p)?;
            Ok(-0.5 * ph * (chtm + pm * chtp))
        }
        4 => {
            let chm0 = ch(closure_row(m, 2), tau, z, p)?;
            let chm1 = ch(closure_row(m, 3), tau, z, p)?;
            Ok((-PI * I * mf / 2.0).exp() * ph * (chm0 - chm1))
        }
        _ => {
            let chm0 = ch(closure_row(m, 2), tau, z, p)?;
            let chm1 = ch(closure_row(m, 3), tau, z, p)?;
            Ok(-ph * (chm0 + chm1))
        }
    }
}

fn closure_t_combination(m: i64, row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let mf = m as f64;
    let tph = (-(mf / 8.0 + 11.0 / 24.0) * PI * I).exp();
    match row {
        0 => Ok(tph * ch(closure_row(m, 2), tau, z, p)?),
        1 => Ok(tph * ch(closure_row(m, 3), tau, z, p)?),
        2 => Ok(-tph * ch(closure_row(m, 0), tau, z, p)?),
        3 => Ok(tph * ch(closure_row(m, 1), tau, z, p)?),
        4 => Ok(((mf / 2.0 - 1.0 / 12.0) * PI * I).exp() * ch(closure_row(m, 4), tau, z, p)?),
        _ => Ok((-PI * I / 12.0).exp() * ch(closure_row(m, 5), tau, z, p)?),
    }
}

fn push_closure_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    const ROW_NAMES: [&str; 6] = [
        "plus0",
        "plus1",
        "minus0",
        "minus1",
        "twist_plus",
        "twist_minus",
    ];
    for m in [2i64, 3] {
        for (row, name) in ROW_NAMES.iter().enumerate() {
            out.push(case(
                &format!("m{m}-s-closure-{name}"),
                seed,
                transform_box(),
                18,
                1e-8,
                move |pt, p| {
                    let (tau, z) = (pt.tau.cx(), pt.z.cx());
                    ch(closure_row(m, row), -1.0 / tau, z / tau, p)
                },
                move |pt, p| closure_s_combination(m, row, pt.tau.cx(), pt.z.cx(), p),
            ));
            out.push(case(
                &format!("m{m}-t-closure-{name}"),
                seed,
                low_tau_box(),
                18,
                1e-8,
                move |pt, p| {
                    let (tau, z) = (pt.tau.cx(), pt.z.cx());
                    ch(closure_row(m, row), tau + 1.0, z, p)
                },
                move |pt, p| closure_t_combination(m, row, pt.tau.cx(), pt.z.cx(), p),
            ));
        }
    }
}

// At level 2 the honest odd-label characters join the closure: S exchanges
// them with the modified even-label ones, and the twisted pair closes onto
// the minus pair.
fn mixed_row(row: usize) -> CharacterId {
    match row {
        0 => cid(2, 0, Sector::Plus, true),
        1 => cid(2, 1, Sector::Plus, false),
        2 => cid(2, 0, Sector::Minus, true),
        3 => cid(2, 1, Sector::Minus, false),
        4 => cid(2, 1, Sector::TwistMinus, false),
        _ => cid(2, 1, Sector::TwistPlus, true),
    }
}

fn mixed_s_combination(row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let ph = (PI * I * z * z / tau).exp();
    match row {
        0 => Ok(I * ph * ch(mixed_row(1), tau, z, p)?),
        1 => Ok(-I * ph * ch(mixed_row(0), tau, z, p)?),
        2 => Ok(-0.5 * ph * (ch(mixed_row(4), tau, z, p)? + ch(mixed_row(5), tau, z, p)?)),
        3 => Ok(-0.5 * ph * (ch(mixed_row(4), tau, z, p)? - ch(mixed_row(5), tau, z, p)?)),
        4 => Ok(-ph * (ch(mixed_row(2), tau, z, p)? + ch(mixed_row(3), tau, z, p)?)),
        _ => Ok(-ph * (ch(mixed_row(2), tau, z, p)? - ch(mixed_row(3), tau, z, p)?)),
    }
}

fn mixed_t_combination(row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let e724 = (7.0 * PI * I / 24.0).exp();
    let e12 = (-PI * I / 12.0).exp();
    match row {
        0 => Ok(-e724 * ch(mixed_row(2), tau, z, p)?),
        1 => Ok(-e724 * ch(mixed_row(3), tau, z, p)?),
        2 => Ok(e724 * ch(mixed_row(0), tau, z, p)?),
        3 => Ok(-e724 * ch(mixed_row(1), tau, z, p)?),
        4 => Ok(e12 * ch(mixed_row(4), tau, z, p)?),
        _ => Ok(-e12 * ch(mixed_row(5), tau, z, p)?),
    }
}

fn push_mixed_closure_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    const ROW_NAMES: [&str; 6] = [
        "plus0-modified",
        "plus1-honest",
        "minus0-modified",
        "minus1-honest",
        "twist_minus-honest",
        "twist_plus-modified",
    ];
    for (row, name) in ROW_NAMES.iter().enumerate() {
        out.push(case(
            &format!("m2-mixed-s-{name}"),
            seed,
            transform_box(),
            18,
            1e-8,
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                ch(mixed_row(row), -1.0 / tau, z / tau, p)
            },
            move |pt, p| mixed_s_combination(row, pt.tau.cx(), pt.z.cx(), p),
        ));
        out.push(case(
            &format!("m2-mixed-t-{name}"),
            seed,
            transform_box(),
            18,
            1e-8,
            move |pt, p| ch(mixed_row(row), pt.tau.cx() + 1.0, pt.z.cx(), p),
            move |pt, p| mixed_t_combination(row, pt.tau.cx(), pt.z.cx(), p),
        ));
    }
}

fn push_denominator_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "denominator-modular-s",
        seed,
        transform_box(),
        40,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            dfun(DenominatorKind::Plus, -1.0 / tau, z / tau, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(-tau * dfun(DenominatorKind::Plus, tau, z, p)?)
        },
    ));
    out.push(case(
        "denominator-modular-t",
        seed,
        transform_box(),
        40,
        1e-9,
        |pt, p| dfun(DenominatorKind::Plus, pt.tau.cx() + 1.0, pt.z.cx(), p),
        |pt, p| {
            Ok((11.0 * PI * I / 24.0).exp()
                * dfun(DenominatorKind::Minus, pt.tau.cx(), pt.z.cx(), p)?)
        },
    ));
}

fn push_block_transform_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    const S_ROWS: [(u8, f64, u8); 6] = [
        (1, 0.25, 2),
        (2, -0.25, 1),
        (3, 0.5, 6),
        (4, 0.0, 5),
        (5, 0.0, 4),
        (6, -0.5, 3),
    ];
    const T_ROWS: [(u8, u8); 6] = [(1, 3), (2, 4), (3, 2), (4, 1), (5, 5), (6, 6)];
    for m in [1i64, 2, 3] {
        out.push(case(
            &format!("aring-s-law-m{m}"),
            seed,
            rows_box(transform_box()),
            36,
            1e-9,
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                let (i, _, _) = S_ROWS[pick_row(pt, 6)];
                aring(i, m, -1.0 / tau, z / tau, p)
            },
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                let (_, quarter_turns, j) = S_ROWS[pick_row(pt, 6)];
                let mu = (PI * I * m as f64 * quarter_turns).exp();
                let ph = (PI * I * m as f64 * z * z / (2.0 * tau)).exp();
                Ok(mu * tau * ph * aring(j, m, tau, z, p)?)
            },
        ));
        out.push(case(
            &format!("aring-t-law-m{m}"),
            seed,
            rows_box(transform_box()),
            36,
            1e-9,
            move |pt, p| {
                let (i, _) = T_ROWS[pick_row(pt, 6)];
                aring(i, m, pt.tau.cx() + 1.0, pt.z.cx(), p)
            },
            move |pt, p| {
                let mf = m as f64;
                let (i, j) = T_ROWS[pick_row(pt, 6)];
                let factor = match i {
                    5 => Cx::new(1.0, 0.0),
                    6 => (PI * I * mf / 2.0).exp(),
                    _ => (-PI * I * mf / 8.0).exp(),
                };
                Ok(factor * aring(j, m, pt.tau.cx(), pt.z.cx(), p)?)
            },
        ));
    }
    out.push(case(
        "atilde-s-exact-i1",
        seed,
        transform_box(),
        24,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            atil(1, 2, -1.0 / tau, z / tau, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let pref = tau
                * (4.0 * PI * I / tau * (z / 2.0 - 0.25 + tau / 4.0) * (z / 2.0 + 0.25 - tau / 4.0))
                    .exp();
            Ok(pref * atil(2, 2, tau, z, p)?)
        },
    ));
    out.push(case(
        "atilde-s-exact-i4",
        seed,
        transform_box(),
        24,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            atil(4, 2, -1.0 / tau, z / tau, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let pref = tau * (4.0 * PI * I / tau * (z / 2.0 - 0.25) * (z / 2.0 + 0.25)).exp();
            Ok(pref * atil(5, 2, tau, z, p)?)
        },
    ));
    out.push(case(
        "atilde-alternate-a6",
        seed,
        rows_box(low_tau_box()),
        30,
        1e-9,
        |pt, p| {
            let m = 1 + pick_row(pt, 3) as i64;
            atil(6, m, pt.tau.cx(), pt.z.cx(), p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let m = 1 + pick_row(pt, 3) as i64;
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            Ok(sign
                * phi_tilde_cx(
                    HalfInt::from_int(m),
                    HalfInt::ZERO,
                    tau,
                    z / 2.0 + tau / 2.0 + 0.25,
                    z / 2.0 - tau / 2.0 - 0.25,
                    Cx::new(0.0, 0.0),
                    p,
                )?)
        },
    ));
    out.push(case(
        "g-modular-s",
        seed,
        rows_box(transform_box()),
        32,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let row = pick_row(pt, 6);
            let (i, sign) = [(1i8, 1i8), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)][row];
            gfun(i as u8, sign, -1.0 / tau, z / tau, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let ell = (PI * I * z * z / tau).exp();
            match pick_row(pt, 6) {
                0 => Ok(-0.5 * tau * ell * gfun(2, 1, tau, z, p)?),
                1 => Ok(-0.5 * tau * ell * gfun(2, -1, tau, z, p)?),
                2 => Ok(-2.0 * tau * ell * gfun(1, 1, tau, z, p)?),
                3 => Ok(-2.0 * tau * ell * gfun(1, -1, tau, z, p)?),
                4 => Ok(-tau * ell * gfun(3, -1, tau, z, p)?),
                _ => Ok(-tau * ell * gfun(3, 1, tau, z, p)?),
            }
        },
    ));
    out.push(case(
        "g-modular-t",
        seed,
        rows_box(transform_box()),
        32,
        1e-9,
        |pt, p| {
            let row = pick_row(pt, 6);
            let (i, sign) = [(1i8, 1i8), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1)][row];
            gfun(i as u8, sign, pt.tau.cx() + 1.0, pt.z.cx(), p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let e34 = (3.0 * PI * I / 4.0).exp();
            let e14 = (PI * I / 4.0).exp();
            match pick_row(pt, 6) {
                0 => Ok(e34 * gfun(1, -1, tau, z, p)?),
                1 => Ok(e34 * gfun(1, 1, tau, z, p)?),
                2 => Ok(gfun(3, 1, tau, z, p)?),
                3 => Ok(e14 * gfun(3, -1, tau, z, p)?),
                4 => Ok(gfun(2, 1, tau, z, p)?),
                _ => Ok(e14 * gfun(2, -1, tau, z, p)?),
            }
        },
    ));
    out.push(case(
        "aring-g-reduction",
        seed,
        rows_box(wide_box()),
        36,
        1e-10,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let a = |i: u8| aring(i, 2, tau, z, p);
            match pick_row(pt, 6) {
                0 => Ok(a(1)? + a(2)?),
                1 => Ok(a(3)? + a(4)?),
                2 => Ok(a(1)? - a(2)?),
                3 => Ok(a(5)? - a(6)?),
                4 => Ok(a(3)? - a(4)?),
                _ => Ok(a(5)? + a(6)?),
            }
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            match pick_row(pt, 6) {
                0 => Ok(2.0 * I * gfun(1, -1, tau, z, p)?),
                1 => Ok(-2.0 * I * gfun(1, 1, tau, z, p)?),
                2 => Ok(gfun(2, -1, tau, z, p)?),
                3 => Ok(I * gfun(2, 1, tau, z, p)?),
                4 => Ok(I * gfun(3, -1, tau, z, p)?),
                _ => Ok(I * gfun(3, 1, tau, z, p)?),
            }
        },
    ));
}

// Completed sector numerators against the half-sum of building blocks; the
// twisted rows vanish or survive with the parity of the level.
fn bridge_lhs(m: i64, row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let level = HalfInt::new(m);
    let zero = Cx::new(0.0, 0.0);
    let s = if row % 2 == 0 { HalfInt::ZERO } else { HalfInt::HALF };
    match row / 2 {
        0 => phi_tilde_cx(level, s, 2.0 * tau, z + tau / 2.0 - 0.5, z - tau / 2.0 + 0.5, tau / 8.0, p),
        1 => phi_tilde_cx(level, s, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, tau / 8.0, p),
        2 => phi_tilde_cx(level, s, 2.0 * tau, z - 0.5, z + 0.5, zero, p),
        _ => phi_tilde_cx(level, s, 2.0 * tau, z + tau - 0.5, z - tau + 0.5, tau / 2.0, p),
    }
}

fn bridge_rhs(m: i64, row: usize, tau: Cx, z: Cx, p: EvalParams) -> EvalResult<Cx> {
    let a = |i: u8| aring(i, m, tau, z, p);
    let zero = Cx::new(0.0, 0.0);
    let even = m % 2 == 0;
    match row {
        0 => Ok(0.5 * (a(2)? + a(1)?)),
        1 => Ok(0.5 * (a(2)? - a(1)?)),
        2 => Ok(0.5 * (a(4)? + a(3)?)),
        3 => Ok(0.5 * (a(4)? - a(3)?)),
        4 => a(5),
        5 => Ok(zero),
        6 => {
            if even {
                a(6)
            } else {
                Ok(zero)
            }
        }
        _ => {
            if even {
                Ok(zero)
            } else {
                a(6)
            }
        }
    }
}

fn push_bridge_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    for m in [1i64, 2, 3, 4] {
        out.push(case(
            &format!("bridge-m{m}"),
            seed,
            rows_box(wide_box()),
            32,
            1e-9,
            move |pt, p| bridge_lhs(m, pick_row(pt, 8), pt.tau.cx(), pt.z.cx(), p),
            move |pt, p| bridge_rhs(m, pick_row(pt, 8), pt.tau.cx(), pt.z.cx(), p),
        ));
    }
}

fn push_doubling_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    for rel in 1u8..=6 {
        out.push(case(
            &format!("doubling-rel{rel}"),
            seed,
            rows_box(transform_box()),
            20,
            1e-9,
            move |pt, p| {
                let m = 1 + pick_row(pt, 2) as i64;
                Ok(doubling_sides(rel, m, pt.tau.cx(), pt.z.cx(), p)?.0)
            },
            move |pt, p| {
                let m = 1 + pick_row(pt, 2) as i64;
                Ok(doubling_sides(rel, m, pt.tau.cx(), pt.z.cx(), p)?.1)
            },
        ));
    }
    out.push(case(
        "doubling-quarter-instance",
        seed,
        transform_box(),
        20,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(2.0 * aring(3, 2, 2.0 * tau, 2.0 * z, p)?)
        },
        |pt, p| aring(6, 2, pt.tau.cx() / 2.0, pt.z.cx(), p),
    ));
}

fn push_pq_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "pq-shift-m2",
        seed,
        wide_box(),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(pfun(2, HalfInt::new(3), tau, z, p)? - pfun(2, HalfInt::HALF, tau, z, p)?)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let q8 = (PI * I * tau / 4.0).exp();
            let level = HalfInt::ONE;
            Ok(-q8
                * (jacobi_theta_cx(HalfInt::HALF, level, 2.0 * tau, 2.0 * z, p)?
                    - jacobi_theta_cx(-HalfInt::HALF, level, 2.0 * tau, 2.0 * z, p)?))
        },
    ));
    out.push(case(
        "pq-shift-m4-p",
        seed,
        wide_box(),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(pfun(4, HalfInt::from_int(2), tau, z, p)? - pfun(4, HalfInt::ONE, tau, z, p)?)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let q4 = (PI * I * tau / 2.0).exp();
            Ok(-q4 * step_bracket(HalfInt::ONE, tau, z, p)?)
        },
    ));
    out.push(case(
        "pq-shift-m4-q",
        seed,
        wide_box(),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(qfun(4, HalfInt::from_int(2), tau, z, p)? - qfun(4, HalfInt::ONE, tau, z, p)?)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let q4 = (PI * I * tau / 2.0).exp();
            Ok(-(-PI * I).exp() * q4 * step_bracket(HalfInt::ONE, tau, z, p)?)
        },
    ));
    for (name, s) in [("s-half", HalfInt::HALF), ("s-one", HalfInt::ONE)] {
        out.push(case(
            &format!("pq-doubling-{name}"),
            seed,
            wide_box(),
            24,
            1e-9,
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                Ok(2.0 * pfun(2, s, 2.0 * tau, 2.0 * z, p)?)
            },
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                let phase = (-2.0 * PI * I * s.as_f64()).exp();
                Ok(pfun(4, s + s, tau, z, p)? + phase * qfun(4, s + s, tau, z, p)?)
            },
        ));
    }
    out.push(case(
        "pq-split-p",
        seed,
        wide_box(),
        24,
        1e-9,
        |pt, p| pfun(4, HalfInt::from_int(2), pt.tau.cx(), pt.z.cx(), p),
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(pfun(2, HalfInt::ONE, 2.0 * tau, 2.0 * z, p)?
                + pfun(2, HalfInt::new(3), 2.0 * tau, 2.0 * z, p)?)
        },
    ));
    out.push(case(
        "pq-split-q",
        seed,
        wide_box(),
        24,
        1e-9,
        |pt, p| qfun(4, HalfInt::from_int(2), pt.tau.cx(), pt.z.cx(), p),
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(pfun(2, HalfInt::ONE, 2.0 * tau, 2.0 * z, p)?
                - pfun(2, HalfInt::new(3), 2.0 * tau, 2.0 * z, p)?)
        },
    ));
    out.push(case(
        "pq-closed-m2",
        seed,
        rows_box(wide_box()),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let s = [HalfInt::HALF, HalfInt::ONE, HalfInt::new(3)][pick_row(pt, 3)];
            pfun(2, s, tau, z, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let q8 = (PI * I * tau / 4.0).exp();
            match pick_row(pt, 3) {
                0 => Ok(-I / 2.0 * q8 * (gfun(3, -1, tau, z, p)? + theta(1, 1, tau, z, p)?)),
                1 => Ok(-I * q8 * gfun(1, 1, tau, z, p)?),
                _ => Ok(-I / 2.0 * q8 * (gfun(3, -1, tau, z, p)? - theta(1, 1, tau, z, p)?)),
            }
        },
    ));
    out.push(case(
        "pq-closed-m4",
        seed,
        rows_box(wide_box()),
        24,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            match pick_row(pt, 4) {
                0 => pfun(4, HalfInt::ONE, tau, z, p),
                1 => pfun(4, HalfInt::from_int(2), tau, z, p),
                2 => qfun(4, HalfInt::ONE, tau, z, p),
                _ => qfun(4, HalfInt::from_int(2), tau, z, p),
            }
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let q4 = (PI * I * tau / 2.0).exp();
            let g3m = gfun(3, -1, 2.0 * tau, 2.0 * z, p)?;
            let g1p = gfun(1, 1, 2.0 * tau, 2.0 * z, p)?;
            let t11 = theta(1, 1, 2.0 * tau, 2.0 * z, p)?;
            match pick_row(pt, 4) {
                0 => Ok(-I / 2.0 * q4 * (g3m + 2.0 * g1p + t11)),
                1 => Ok(-I / 2.0 * q4 * (g3m + 2.0 * g1p - t11)),
                2 => Ok(I / 2.0 * q4 * (g3m - 2.0 * g1p + t11)),
                _ => Ok(I / 2.0 * q4 * (g3m - 2.0 * g1p - t11)),
            }
        },
    ));
}

fn push_numerator_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "level-one-numerator-minus-args",
        seed,
        rows_box(wide_box()),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let s = [HalfInt::HALF, HalfInt::new(3)][pick_row(pt, 2)];
            phi_cx(HalfInt::ONE, s, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, tau / 8.0, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let g3m = gfun(3, -1, tau, z, p)?;
            let t11 = theta(1, 1, tau, z, p)?;
            match pick_row(pt, 2) {
                0 => Ok(-I / 2.0 * (g3m + t11)),
                _ => Ok(-I / 2.0 * (g3m - t11)),
            }
        },
    ));
    out.push(case(
        "level-one-numerator-plus-args",
        seed,
        rows_box(wide_box()),
        30,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let s = [HalfInt::HALF, HalfInt::new(3)][pick_row(pt, 2)];
            phi_cx(
                HalfInt::ONE,
                s,
                2.0 * tau,
                z + tau / 2.0 - 0.5,
                z - tau / 2.0 + 0.5,
                tau / 8.0,
                p,
            )
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let g2m = gfun(2, -1, tau, z, p)?;
            let t11 = theta(1, 1, tau, z, p)?;
            match pick_row(pt, 2) {
                0 => Ok(-0.5 * (g2m + t11)),
                _ => Ok(-0.5 * (g2m - t11)),
            }
        },
    ));
    out.push(case(
        "r-special-values",
        seed,
        rows_box(wide_box()),
        40,
        1e-10,
        |pt, p| {
            let tau = pt.tau.cx();
            let one = Cx::new(1.0, 0.0);
            match pick_row(pt, 4) {
                0 => r_function_cx(HalfInt::HALF, HalfInt::ONE, tau, tau / 4.0, p),
                1 => Ok(one + r_function_cx(HalfInt::new(3), HalfInt::ONE, tau, tau / 4.0, p)?),
                2 => r_function_cx(HalfInt::HALF, HalfInt::ONE, tau, tau / 4.0 - 0.5, p),
                _ => {
                    Ok(one
                        + r_function_cx(HalfInt::new(3), HalfInt::ONE, tau, tau / 4.0 - 0.5, p)?)
                }
            }
        },
        |pt, _| {
            let tau = pt.tau.cx();
            let q16 = (PI * I * tau / 8.0).exp();
            match pick_row(pt, 4) {
                0 => Ok(q16),
                2 => Ok(-I * q16),
                _ => Ok(Cx::new(1.0, 0.0)),
            }
        },
    ));
    out.push(case(
        "phi-add-minus-args",
        seed,
        rows_box(wide_box()),
        50,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let t = if pick_row(pt, 2) == 0 { Cx::new(0.0, 0.0) } else { tau / 8.0 };
            phi_add_cx(HalfInt::ONE, HalfInt::HALF, 2.0 * tau, z + tau / 2.0, z - tau / 2.0, t, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let t11 = theta(1, 1, tau, z, p)?;
            if pick_row(pt, 2) == 0 {
                Ok(I / 2.0 * (PI * I * tau / 4.0).exp() * t11)
            } else {
                Ok(I / 2.0 * t11)
            }
        },
    ));
    out.push(case(
        "phi-add-plus-args",
        seed,
        rows_box(wide_box()),
        50,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let t = if pick_row(pt, 2) == 0 { Cx::new(0.0, 0.0) } else { tau / 8.0 };
            phi_add_cx(
                HalfInt::ONE,
                HalfInt::HALF,
                2.0 * tau,
                z + tau / 2.0 - 0.5,
                z - tau / 2.0 + 0.5,
                t,
                p,
            )
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let t11 = theta(1, 1, tau, z, p)?;
            if pick_row(pt, 2) == 0 {
                Ok(0.5 * (PI * I * tau / 4.0).exp() * t11)
            } else {
                Ok(0.5 * t11)
            }
        },
    ));
}

fn push_vanishing_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    for m in [1i64, 2, 4] {
        out.push(case(
            &format!("vanishing-torsion-m{m}"),
            seed,
            torsion_box(),
            50,
            1e-9,
            move |pt, p| {
                let tau = pt.tau.cx();
                let n = pt.aux.re.round() as i64;
                let pp = pt.aux.im.round() as i64;
                let weight = WeightParams::new(m, 1)?;
                let value = numerator_vanishing_check(weight, n, pp, tpv(tau)?, p)?.cx();
                let zt = Cx::new(n as f64 + 0.25, 0.0) + pp as f64 * tau;
                let scale = phi_cx(
                    HalfInt::new(m),
                    HalfInt::ONE,
                    2.0 * tau,
                    zt + tau / 2.0,
                    zt - tau / 2.0,
                    tau / 8.0,
                    p,
                )?
                .norm();
                Ok(Cx::new(1.0, 0.0) + value / scale)
            },
            |_, _| Ok(Cx::new(1.0, 0.0)),
        ));
    }
}

fn push_asymptotic_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    let rows: [(Sector, bool, i64); 4] = [
        (Sector::Plus, true, 0),
        (Sector::Plus, false, 0),
        (Sector::Plus, false, 2),
        (Sector::Plus, true, 1),
    ];
    let all: Vec<(Sector, bool, i64)> = rows
        .iter()
        .copied()
        .chain(rows.iter().map(|&(_, modified, m2)| (Sector::Minus, modified, m2)))
        .collect();
    for (sector, modified, m2) in all {
        let kind = if modified { "modified" } else { "honest" };
        let id = cid(2, m2, sector, modified);
        out.push(case(
            &format!("asym-m2-{sector}-{kind}-{m2}"),
            seed,
            ladder_box(),
            10,
            1e-4,
            move |pt, p| {
                let a = pt.aux.re;
                let ladder = asymptotic_ladder(id, a, &LADDER_TEMPS, p)?;
                let mut violation: f64 = 0.0;
                for pair in ladder.windows(2) {
                    // rungs must decrease; tolerate f64 noise near the floor
                    if pair[1] >= pair[0] + 1e-9 + 1e-6 * pair[0] {
                        violation = 1.0;
                    }
                }
                let coldest = ladder[ladder.len() - 1];
                Ok(Cx::new(1.0 + violation.max(coldest), 0.0))
            },
            |_, _| Ok(Cx::new(1.0, 0.0)),
        ));
    }
}

fn push_m4_cases(seed: u64, out: &mut Vec<IdentityCase>) {
    for sector in [Sector::Plus, Sector::Minus] {
        for modified in [true, false] {
            for m2 in [1i64, 3] {
                let kind = if modified { "modified" } else { "honest" };
                let id = cid(4, m2, sector, modified);
                out.push(case(
                    &format!("m4-closed-{sector}-{kind}-{m2}"),
                    seed,
                    wide_box(),
                    30,
                    1e-8,
                    move |pt, p| ch(id, pt.tau.cx(), pt.z.cx(), p),
                    move |pt, p| ch_closed(id, pt.tau.cx(), pt.z.cx(), p),
                ));
            }
        }
    }
    out.push(case(
        "m4-parity-dependence",
        seed,
        rows_box(wide_box()),
        24,
        1e-9,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let (sector, m2) = [
                (Sector::Plus, 0),
                (Sector::Plus, 1),
                (Sector::Minus, 0),
                (Sector::Minus, 1),
            ][pick_row(pt, 4)];
            ch(cid(4, m2, sector, true), tau, z, p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let (sector, m2) = [
                (Sector::Plus, 2),
                (Sector::Plus, 3),
                (Sector::Minus, 2),
                (Sector::Minus, 3),
            ][pick_row(pt, 4)];
            ch(cid(4, m2, sector, true), tau, z, p)
        },
    ));
    out.push(case(
        "m4-even-step-0-2",
        seed,
        wide_box(),
        24,
        1e-8,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(ch(cid(4, 0, Sector::Plus, false), tau, z, p)?
                - ch(cid(4, 2, Sector::Plus, false), tau, z, p)?)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(step_prefactor(tau, z, p)? * -4.0 * step_bracket(HalfInt::HALF, tau, z, p)?)
        },
    ));
    out.push(case(
        "m4-even-step-2-4",
        seed,
        wide_box(),
        24,
        1e-8,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(ch(cid(4, 2, Sector::Plus, false), tau, z, p)?
                - ch(cid(4, 4, Sector::Plus, false), tau, z, p)?)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(step_prefactor(tau, z, p)? * 4.0 * step_bracket(HalfInt::new(3), tau, z, p)?)
        },
    ));
}

fn push_conjecture_probes(seed: u64, out: &mut Vec<IdentityCase>) {
    out.push(case(
        "conjecture-even-weight-combination",
        seed,
        wide_box(),
        12,
        1e-6,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            Ok(ch(cid(4, 0, Sector::Plus, false), tau, z, p)?
                + 2.0 * ch(cid(4, 2, Sector::Plus, false), tau, z, p)?
                + ch(cid(4, 4, Sector::Plus, false), tau, z, p)?)
        },
        |pt, p| Ok(4.0 * ch(cid(4, 0, Sector::Plus, true), pt.tau.cx(), pt.z.cx(), p)?),
    ));
    for (m2, c1, c2) in [(0i64, -3.0, 1.0), (2, 1.0, 1.0), (4, 1.0, -3.0)] {
        out.push(case(
            &format!("conjecture-even-decomposition-{m2}"),
            seed,
            wide_box(),
            12,
            1e-6,
            move |pt, p| ch(cid(4, m2, Sector::Plus, false), pt.tau.cx(), pt.z.cx(), p),
            move |pt, p| {
                let (tau, z) = (pt.tau.cx(), pt.z.cx());
                let pref = step_prefactor(tau, z, p)?;
                let b1 = step_bracket(HalfInt::HALF, tau, z, p)?;
                let b2 = step_bracket(HalfInt::new(3), tau, z, p)?;
                Ok(ch(cid(4, 0, Sector::Plus, true), tau, z, p)? + pref * (c1 * b1 + c2 * b2))
            },
        ));
    }
    out.push(case(
        "conjecture-theta-square-form",
        seed,
        wide_box(),
        12,
        1e-5,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            ch(cid(4, 0, Sector::Plus, true), tau, z + Cx::new(0.17, -0.11), p)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let (c1, c2) = theta_square_coefficients(tau, z, z + Cx::new(0.31, 0.0), p)?;
            let probe = z + Cx::new(0.17, -0.11);
            let scale = eta(tau / 2.0, p)? * eta(2.0 * tau, p)?;
            Ok((c1 * theta(0, 1, tau, probe, p)?.powi(2)
                + c2 * theta(1, 0, tau, probe, p)?.powi(2))
                / scale)
        },
    ));
    out.push(case(
        "conjecture-theta-square-s-pair",
        seed,
        transform_box(),
        12,
        1e-5,
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let (c1_s, _) = theta_square_coefficients(-1.0 / tau, z, z + Cx::new(0.31, 0.0), p)?;
            Ok(c1_s)
        },
        |pt, p| {
            let (tau, z) = (pt.tau.cx(), pt.z.cx());
            let (_, c2) = theta_square_coefficients(tau, z, z + Cx::new(0.31, 0.0), p)?;
            Ok(-c2)
        },
    ));
}

/// The built-in identity corpus.  Per-case seeds derive from the suite seed
/// and the case id, so one suite seed pins every sample in the run.
pub fn builtin_corpus(seed: u64) -> Vec<IdentityCase> {
    let mut cases = Vec::new();
    push_appell_cases(seed, &mut cases);
    push_theta_quotient_cases(seed, &mut cases);
    push_m2_closed_cases(seed, &mut cases);
    push_average_and_sum_rules(seed, &mut cases);
    push_closure_cases(seed, &mut cases);
    push_mixed_closure_cases(seed, &mut cases);
    push_denominator_cases(seed, &mut cases);
    push_block_transform_cases(seed, &mut cases);
    push_bridge_cases(seed, &mut cases);
    push_doubling_cases(seed, &mut cases);
    push_pq_cases(seed, &mut cases);
    push_numerator_cases(seed, &mut cases);
    push_vanishing_cases(seed, &mut cases);
    push_asymptotic_cases(seed, &mut cases);
    push_m4_cases(seed, &mut cases);
    push_conjecture_probes(seed, &mut cases);
    cases
}

// ---- tests ------------------------------------------------------------------
