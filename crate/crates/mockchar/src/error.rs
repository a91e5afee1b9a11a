//! Error taxonomy shared by every series evaluator and the harness.

use thiserror::Error;

/// Everything that can go wrong while evaluating a series or running a case.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// The adaptive window hit the term cap before both tails converged.
    #[error("series not converged after {max_terms} terms")]
    TruncationExceeded { max_terms: usize },

    /// A denominator factor came within `pole_eps` of zero; `j` is the
    /// lattice index of the offending term (0 for plain quotients).
    #[error("pole at lattice index j = {j} (|denominator| = {magnitude:.3e})")]
    Pole { j: i64, magnitude: f64 },

    /// An intermediate value left the range of `f64`.
    #[error("overflow: intermediate value exceeds double precision range")]
    Overflow,

    /// A precondition on the arguments failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested character has no tabulated small-tau asymptotic.
    #[error("no tabulated asymptotic for {0}")]
    UnknownAsymptotic(String),

    /// Too many sample points of a harness case failed for non-pole reasons.
    #[error("case aborted: {failed} of {total} sample evaluations failed")]
    CaseAborted { failed: usize, total: usize },
}

pub type EvalResult<T> = Result<T, EvalError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_carry_the_useful_numbers() {
        let e = EvalError::TruncationExceeded { max_terms: 4096 };
        assert_eq!(e.to_string(), "series not converged after 4096 terms");
        let p = EvalError::Pole { j: -3, magnitude: 2.5e-12 };
        assert!(p.to_string().contains("j = -3"), "message was: {p}");
        assert!(p.to_string().contains("2.500e-12"), "message was: {p}");
    }
}
