//! Closed-form results for the symmetric bivariate Gaussian source pair.
//!
//! The model: unit-variance jointly Gaussian `S1, S2` with correlation
//! `ρ ∈ [0, 1)`, decomposable as `S_j = √ρ·Z + √(1−ρ)·N_j` with `Z, N1, N2`
//! independent standard Gaussians. `Z` is the common part; conditioned on
//! it the sources are independent. Squared-error distortion throughout.

pub mod mac;
pub mod rd;
pub mod source;

pub use mac::{r1, r2, region_membership, trace_boundary, RatePoint, RegionVerdict};
pub use rd::{
    classify_analysis_region, cond_rd, joint_rd, sum_cond_rd, AnalysisRegion, DistortionPair,
    JointRdRegion,
};
pub use source::{
    canonical_decomposition, wyner_ci, CommonPartDecomposition, GaussianScenario, GaussianTriple,
};
