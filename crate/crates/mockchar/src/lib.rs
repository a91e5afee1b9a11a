//! Numerical building blocks for mock Jacobi forms and N=3 superconformal
//! characters.
//!
//! The crate evaluates, in double precision over the upper half-plane:
//!
//! * the q-series foundation: nome, Dedekind eta, Jacobi theta_{k,m},
//!   Mumford vartheta_ab ([`qseries`]);
//! * Appell-Lerch sums Phi^{[m,s]} and their shift and doubling rules
//!   ([`appell`]);
//! * the real-analytic correction R_{j;m}, the correction term Phi_add,
//!   and the completed sum Phi-tilde ([`zwegers`]);
//! * honest and modified characters of the N=3 superconformal algebra,
//!   their eta/theta closed forms, and their small-tau asymptotics
//!   ([`characters`]);
//! * a seeded verification harness that replays every identity these
//!   functions satisfy over sampled (tau, z) boxes ([`harness`]).

pub mod error;
pub mod halfint;
pub mod params;
mod series;

pub mod appell;
pub mod characters;
pub mod harness;
pub mod qseries;
pub mod zwegers;

pub use error::{EvalError, EvalResult};
pub use halfint::HalfInt;
pub use params::{ComplexValue, Cx, EvalParams, TauPoint};
