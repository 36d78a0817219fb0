//! Rate-distortion and multiple-access-channel bounds for correlated sources.
//!
//! The crate has two halves. The Gaussian half ([`gaussian`], [`bounds`])
//! evaluates closed-form rate-distortion functions for a symmetric bivariate
//! Gaussian pair with a hidden common part, tests rate pairs against the
//! two-sender Gaussian MAC region, and compares three necessary conditions
//! for lossy transmission. The discrete half ([`discrete`], [`jscc`])
//! provides Blahut-Arimoto style solvers for finite-alphabet sources and
//! checkers that evaluate sufficient/necessary coding conditions on
//! user-supplied certificates.
//!
//! All rates and entropies are in bits (base-2 logarithms) throughout.

pub mod bounds;
pub mod discrete;
pub mod error;
pub mod gaussian;
pub mod jscc;
pub mod parallel;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
