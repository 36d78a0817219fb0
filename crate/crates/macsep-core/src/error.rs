//! Error type shared by every module in the crate.

use thiserror::Error;

/// Failure modes of the numeric routines and parsers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An input fell outside its documented domain.
    #[error("{what} = {value} outside valid range {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A conditioning moment matrix is singular within tolerance, so the
    /// conditional quantity is undefined.
    #[error("degenerate conditioning: {0}")]
    DegenerateConditioning(&'static str),

    /// A feasibility search exhausted its domain without finding a
    /// satisfying point.
    #[error("not satisfiable: {0}")]
    NotSatisfiable(&'static str),

    /// A distortion target lies below the minimum achievable distortion.
    #[error("infeasible target: {what} = {value} below minimum {minimum}")]
    Infeasible {
        what: &'static str,
        value: f64,
        minimum: f64,
    },

    /// An iterative solver hit its iteration cap before meeting the
    /// convergence criterion.
    #[error("solver did not converge within {iterations} iterations (last change {last_change})")]
    NonConverged { iterations: usize, last_change: f64 },

    /// A probability vector or channel row failed validation.
    #[error("non-stochastic input: {0}")]
    NonStochastic(String),

    /// A required Markov chain constraint does not hold for the input.
    #[error("Markov constraint violated: {what} = {value} bits exceeds tolerance {tol}")]
    MarkovViolated { what: &'static str, value: f64, tol: f64 },

    /// A joint alphabet would exceed the supported table size.
    #[error("alphabet too large: {cells} cells exceeds cap {cap}")]
    AlphabetTooLarge { cells: usize, cap: usize },

    /// Table dimensions that do not line up (pmf vs distortion vs channel).
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A structured input file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    /// Stable variant name, used by callers that report errors in
    /// machine-readable form.
    pub fn name(&self) -> &'static str {
        match self {
            Error::OutOfRange { .. } => "OutOfRange",
            Error::DegenerateConditioning(_) => "DegenerateConditioning",
            Error::NotSatisfiable(_) => "NotSatisfiable",
            Error::Infeasible { .. } => "Infeasible",
            Error::NonConverged { .. } => "NonConverged",
            Error::NonStochastic(_) => "NonStochastic",
            Error::MarkovViolated { .. } => "MarkovViolated",
            Error::AlphabetTooLarge { .. } => "AlphabetTooLarge",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::Parse { .. } => "Parse",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_track_variants() {
        let e = Error::MarkovViolated { what: "I(S1;S2|Z)", value: 0.1, tol: 1e-9 };
        assert_eq!(e.name(), "MarkovViolated");
        assert!(e.to_string().contains("0.1"));
        let e = Error::Parse { line: 3, message: "bad row".into() };
        assert_eq!(e.name(), "Parse");
    }
}
