//! Shared assertions for the integration tests.

#![allow(dead_code)]

use mockchar::{ComplexValue, Cx, EvalParams, TauPoint};

/// Reference point used by the frozen mpmath values.
pub const TAU_RE: f64 = 0.31;
pub const TAU_IM: f64 = 0.87;
pub const Z_REF: Cx = Cx::new(0.21, 0.15);
pub const Z1_REF: Cx = Cx::new(0.13, 0.21);
pub const Z2_REF: Cx = Cx::new(-0.04, 0.09);
pub const T_REF: Cx = Cx::new(0.07, 0.0);
pub const W_REF: Cx = Cx::new(0.11, 0.06);

pub fn tau_ref() -> TauPoint {
    TauPoint::from_parts(TAU_RE, TAU_IM).unwrap()
}

pub fn params() -> EvalParams {
    EvalParams::default()
}

pub fn cv(v: Cx) -> ComplexValue {
    ComplexValue::new(v.re, v.im)
}

/// Relative closeness with the additive guard |a| + |b| + 1 in the scale.
pub fn assert_cx_close(label: &str, got: ComplexValue, want: Cx, tol: f64) {
    let g = got.cx();
    let diff = (g - want).norm();
    let scale = g.norm() + want.norm() + 1.0;
    assert!(
        diff / scale < tol,
        "{label}: got {g}, want {want}, rel diff {:.3e} (tol {tol:.1e})",
        diff / scale
    );
}

pub fn assert_abs_close(label: &str, got: ComplexValue, want: Cx, tol: f64) {
    let diff = (got.cx() - want).norm();
    assert!(
        diff < tol,
        "{label}: got {}, want {want}, abs diff {diff:.3e} (tol {tol:.1e})",
        got.cx()
    );
}
