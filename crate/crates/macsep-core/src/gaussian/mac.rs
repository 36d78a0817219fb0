//! The two-sender Gaussian multiple-access rate region with common part.
//!
//! Each sender splits its power `P` between a private stream (fraction `β`)
//! and a cooperative stream carrying the common part; unit channel noise.
//! The region over splits `(β1, β2) ∈ [0,1]²` constrains a rate pair
//! `(r_sum_uncond, r_sum_cond)` componentwise against `(r1, r2)`.

use crate::{Error, Result};

/// A sum-rate pair tested against the region: the first coordinate against
/// the cooperative sum rate `r1`, the second against the private sum `r2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePoint {
    pub r_sum_uncond: f64,
    pub r_sum_cond: f64,
}

/// Result of a membership test at the optimizing power split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionVerdict {
    pub member: bool,
    /// Signed slack in bits: `min(r2(1,1,P) − r_sum_cond, r1(β*,β*,P) −
    /// r_sum_uncond)`. Nonnegative iff the point is a member.
    pub margin: f64,
    /// The equal split `β* = min(1, (2^{2·r_sum_cond} − 1)/(2P))`, the
    /// smallest split satisfying the private-sum constraint.
    pub beta_star: f64,
}

fn check_power(power: f64) -> Result<f64> {
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::OutOfRange { what: "power", value: power, range: "(0, inf)" });
    }
    Ok(power)
}

fn check_beta(what: &'static str, beta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::OutOfRange { what, value: beta, range: "[0, 1]" });
    }
    Ok(beta)
}

/// Cooperative sum-rate cap at split `(β1, β2)`:
/// `½·log2(1 + 2P + 2P·√((1−β1)(1−β2)))` bits.
pub fn r1(beta1: f64, beta2: f64, power: f64) -> Result<f64> {
    check_beta("beta1", beta1)?;
    check_beta("beta2", beta2)?;
    check_power(power)?;
    let boost = ((1.0 - beta1) * (1.0 - beta2)).sqrt();
    Ok(0.5 * (1.0 + 2.0 * power + 2.0 * power * boost).log2())
}

/// Private sum-rate cap at split `(β1, β2)`: `½·log2(1 + β1·P + β2·P)` bits.
pub fn r2(beta1: f64, beta2: f64, power: f64) -> Result<f64> {
    check_beta("beta1", beta1)?;
    check_beta("beta2", beta2)?;
    check_power(power)?;
    Ok(0.5 * (1.0 + beta1 * power + beta2 * power).log2())
}

/// Tests whether a rate pair lies in the region for some split.
///
/// For a fixed split sum `β1 + β2`, `r2` is constant while `r1` is maximized
/// at `β1 = β2` (AM-GM), so the search reduces to equal splits. The smallest
/// equal split meeting the private constraint is `β*`; membership holds iff
/// the private sum fits at full power and the cooperative sum fits at `β*`.
/// Comparisons are non-strict.
pub fn region_membership(point: RatePoint, power: f64) -> Result<RegionVerdict> {
    check_power(power)?;
    let (ru, rc) = (point.r_sum_uncond, point.r_sum_cond);
    for (what, v) in [("r_sum_uncond", ru), ("r_sum_cond", rc)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::OutOfRange { what, value: v, range: "[0, inf)" });
        }
    }
    let cap = r2(1.0, 1.0, power)?;
    let beta_star = ((2f64.powf(2.0 * rc) - 1.0) / (2.0 * power)).min(1.0);
    let margin = (cap - rc).min(r1(beta_star, beta_star, power)? - ru);
    Ok(RegionVerdict { member: margin >= 0.0, margin, beta_star })
}

/// Samples the region's upper boundary at `steps ≥ 2` equal splits
/// `β ∈ [0, 1]`, returning `(r1, r2)` pairs from the cooperative corner
/// (`β = 0`) to the full-private corner (`β = 1`).
pub fn trace_boundary(power: f64, steps: usize) -> Result<Vec<(f64, f64)>> {
    check_power(power)?;
    if steps < 2 {
        return Err(Error::OutOfRange {
            what: "steps",
            value: steps as f64,
            range: "[2, inf)",
        });
    }
    (0..steps)
        .map(|i| {
            let beta = i as f64 / (steps - 1) as f64;
            Ok((r1(beta, beta, power)?, r2(beta, beta, power)?))
        })
        .collect()
}
