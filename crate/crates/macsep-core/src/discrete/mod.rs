//! Finite-alphabet counterpart of the Gaussian machinery: probability
//! tables, information measures, rate-distortion solvers, and the
//! Gács-Körner common part.
//!
//! The solvers share one backbone: alternating minimization of a jointly
//! convex Lagrangian at a fixed slope, wrapped in a bisection on the slope
//! to hit a distortion target. The Wyner-Ziv solver is the one exception
//! (its objective is non-convex) and is documented as an upper estimate.

pub mod gk;
pub mod info;
pub mod pmf;
pub mod solvers;

pub use gk::{gacs_korner, GacsKornerResult};
pub use info::{conditional_mi, entropy, min_expected_distortion, mutual_information};
pub use pmf::{ConditionalChannel, DistortionMeasure, JointSourcePmf, PairPmf, MAX_TABLE_CELLS};
pub use solvers::{
    cond_rd_solver, joint_rd_solver, rc_rd_solver, rd_at_target, wz_rd_solver, SolverOptions,
};
