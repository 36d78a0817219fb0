//! Three necessary conditions for transmitting the pair over the MAC, and
//! the analysis of when each is tightest.
//!
//! Each bound maps a distortion pair to a rate requirement and tests it
//! against the channel: `cor6` requires `(joint_rd, sum_cond_rd)` inside
//! the region; `lt` caps `joint_rd` by the full-cooperation sum rate; `lw`
//! requires `(joint_rd, joint_rd − C_W)` inside the region, where `C_W` is
//! the common-part information `½·log2((1+ρ)/(1−ρ))`.

use crate::gaussian::mac::{region_membership, RatePoint};
use crate::gaussian::rd::{
    classify_analysis_region, curve_f, joint_rd, sum_cond_rd, AnalysisRegion, DistortionPair,
};
use crate::gaussian::source::{wyner_ci, GaussianScenario};
use crate::{Error, Result};

/// Identifier of one of the three necessary conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundId {
    Cor6,
    Lt,
    Lw,
}

impl std::fmt::Display for BoundId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundId::Cor6 => "cor6",
            BoundId::Lt => "lt",
            BoundId::Lw => "lw",
        })
    }
}

impl std::str::FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cor6" => Ok(BoundId::Cor6),
            "lt" => Ok(BoundId::Lt),
            "lw" => Ok(BoundId::Lw),
            other => Err(Error::NonStochastic(format!("unknown bound id '{other}'"))),
        }
    }
}

/// Outcome of evaluating one bound at a distortion pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundVerdict {
    pub bound_id: BoundId,
    /// Whether the necessary condition holds (non-strict comparisons).
    pub passes: bool,
    /// The rate requirement: for `cor6` and `lw` the tested rate pair; for
    /// `lt` the scalar joint rate with NaN in the second slot.
    pub lhs_point: (f64, f64),
    /// Signed slack in bits; nonnegative iff `passes`.
    pub margin: f64,
}

/// How the first bound compares to the common-part bound on a region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DominanceRelation {
    /// The two rate requirements coincide on the whole region.
    Equal,
    /// The first bound's requirement is at least as demanding everywhere.
    Cor6TighterOrEqual,
    /// Depends on ρ; see the accompanying interval.
    Conditional,
}

impl std::fmt::Display for DominanceRelation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DominanceRelation::Equal => "EQUAL",
            DominanceRelation::Cor6TighterOrEqual => "COR6_TIGHTER_OR_EQUAL",
            DominanceRelation::Conditional => "CONDITIONAL",
        })
    }
}

/// Comparison of the `cor6` and `lw` rate requirements at one distortion
/// pair. Both share the first coordinate, so "at least as tight" means the
/// second coordinate is no smaller.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceResult {
    pub region: AnalysisRegion,
    pub relation: DominanceRelation,
    /// For `Conditional` regions: the closed ρ-interval (clipped to `[0,1)`)
    /// on which the first bound is at least as tight; `None` when the
    /// interval is empty.
    pub condition_interval: Option<(f64, f64)>,
}

/// Evaluates the pair-rate condition: `(joint_rd, sum_cond_rd)` must lie in
/// the MAC region.
pub fn cor6_verdict(dp: DistortionPair, sc: GaussianScenario) -> Result<BoundVerdict> {
    let (joint, _) = joint_rd(dp, sc.rho)?;
    let cond_sum = sum_cond_rd(dp, sc.rho)?;
    let v = region_membership(
        RatePoint { r_sum_uncond: joint, r_sum_cond: cond_sum },
        sc.power,
    )?;
    Ok(BoundVerdict {
        bound_id: BoundId::Cor6,
        passes: v.member,
        lhs_point: (joint, cond_sum),
        margin: v.margin,
    })
}

/// Evaluates the full-cooperation cap: `joint_rd ≤ ½·log2(1 + 2P(1+ρ))`.
pub fn lt_verdict(dp: DistortionPair, sc: GaussianScenario) -> Result<BoundVerdict> {
    let (joint, _) = joint_rd(dp, sc.rho)?;
    let threshold = 0.5 * (1.0 + 2.0 * sc.power * (1.0 + sc.rho)).log2();
    let margin = threshold - joint;
    Ok(BoundVerdict {
        bound_id: BoundId::Lt,
        passes: margin >= 0.0,
        lhs_point: (joint, f64::NAN),
        margin,
    })
}

/// Evaluates the common-part condition: `(joint_rd, max(0, joint_rd − C_W))`
/// must lie in the MAC region, `C_W = ½·log2((1+ρ)/(1−ρ))`.
///
/// The second coordinate is floored at zero: rate requirements are
/// nonnegative, and the subtraction can go negative at loose targets.
pub fn lw_verdict(dp: DistortionPair, sc: GaussianScenario) -> Result<BoundVerdict> {
    let (joint, _) = joint_rd(dp, sc.rho)?;
    let second = (joint - wyner_ci(sc.rho)?).max(0.0);
    let v = region_membership(
        RatePoint { r_sum_uncond: joint, r_sum_cond: second },
        sc.power,
    )?;
    Ok(BoundVerdict {
        bound_id: BoundId::Lw,
        passes: v.member,
        lhs_point: (joint, second),
        margin: v.margin,
    })
}

/// Evaluates one bound by id.
pub fn verdict(bound: BoundId, dp: DistortionPair, sc: GaussianScenario) -> Result<BoundVerdict> {
    match bound {
        BoundId::Cor6 => cor6_verdict(dp, sc),
        BoundId::Lt => lt_verdict(dp, sc),
        BoundId::Lw => lw_verdict(dp, sc),
    }
}

const FRONTIER_D1_MIN: f64 = 1e-6;
const FRONTIER_PRESCAN: usize = 64;

/// Smallest `d1 ∈ [1e-6, 1]` at which the bound passes for the given `d2`,
/// to within `tol`.
///
/// All three rate requirements are nonincreasing in `d1`, so the pass set
/// is an up-interval: bisection applies. A 64-point pre-scan guards against
/// an accidental violation of that monotonicity (e.g. from future formula
/// edits); if detected, the first passing bracket from the scan is used.
/// Errors with [`Error::NotSatisfiable`] when even `d1 = 1` fails.
pub fn frontier(bound: BoundId, d2: f64, sc: GaussianScenario, tol: f64) -> Result<f64> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::OutOfRange { what: "tol", value: tol, range: "(0, inf)" });
    }
    let passes = |d1: f64| -> Result<bool> {
        Ok(verdict(bound, DistortionPair::new(d1, d2)?, sc)?.passes)
    };
    if !passes(1.0)? {
        return Err(Error::NotSatisfiable("bound fails even at d1 = 1"));
    }
    if passes(FRONTIER_D1_MIN)? {
        return Ok(FRONTIER_D1_MIN);
    }
    // Pre-scan: find the first passing grid point and check the pass set
    // looks like an up-interval on the grid.
    let grid_point = |i: usize| {
        FRONTIER_D1_MIN
            + (1.0 - FRONTIER_D1_MIN) * i as f64 / (FRONTIER_PRESCAN - 1) as f64
    };
    let mut first_pass = FRONTIER_PRESCAN - 1;
    let mut monotone = true;
    let mut seen_pass = false;
    for i in 0..FRONTIER_PRESCAN {
        let p = passes(grid_point(i))?;
        if p && !seen_pass {
            seen_pass = true;
            first_pass = i;
        }
        if !p && seen_pass {
            monotone = false;
        }
    }
    let (mut lo, mut hi) = if monotone || first_pass == 0 {
        // first_pass ≥ 1 here unless the scan grid disagrees with the exact
        // endpoint checks above; bracket defensively in that case.
        let lo_idx = first_pass.saturating_sub(1);
        (grid_point(lo_idx), grid_point(first_pass))
    } else {
        (grid_point(first_pass - 1), grid_point(first_pass))
    };
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Residual of the algebraic identity tying the joint-rate denominator's
/// discriminant to the region geometry:
/// `(2−d1−d2)² − 4ρ²(1−d1)(1−d2)  =  (1−ρ²)(2−d1−d2)² + ρ²(d1−d2)²`.
///
/// Returns left minus right; exactly zero in real arithmetic for all
/// `(d1, d2, ρ)`.
pub fn discriminant_identity_residual(dp: DistortionPair, rho: f64) -> f64 {
    let (d1, d2) = (dp.d1(), dp.d2());
    let sum_term = (2.0 - d1 - d2) * (2.0 - d1 - d2);
    let lhs = sum_term - 4.0 * rho * rho * (1.0 - d1) * (1.0 - d2);
    let rhs = (1.0 - rho * rho) * sum_term + rho * rho * (d1 - d2) * (d1 - d2);
    lhs - rhs
}

/// Interval of ρ where `ρ² − 2·center·ρ + offset ≤ 0`, clipped to `[0, 1)`;
/// `None` when empty.
fn quadratic_interval(center: f64, offset: f64) -> Option<(f64, f64)> {
    let disc = center * center - offset;
    if disc < 0.0 {
        return None;
    }
    let root = disc.sqrt();
    let lo = (center - root).max(0.0);
    let hi = (center + root).min(1.0);
    if lo > hi {
        None
    } else {
        Some((lo, hi))
    }
}

/// Compares the `cor6` and `lw` rate requirements on the analysis region
/// containing `dp`.
///
/// Both requirements share the first coordinate, so the comparison reduces
/// to the second: `sum_cond_rd` versus `max(0, joint_rd − C_W)`. Per region:
/// - `A`: the two coincide identically (`Equal`).
/// - `B, C, G, I`: the first is at least as demanding for every ρ.
/// - `H, J`: both second coordinates are zero (`Equal`).
/// - `D, F, E`: depends on ρ through a quadratic; the interval where the
///   first is at least as tight is returned (on `E` tightness and equality
///   coincide, both seconds being zero there when the condition holds).
pub fn dominance(dp: DistortionPair, rho: f64) -> Result<DominanceResult> {
    let region = classify_analysis_region(dp, rho)?;
    let (d1, d2) = (dp.d1(), dp.d2());
    let cross = ((1.0 - d1) * (1.0 - d2)).sqrt();
    let result = match region {
        AnalysisRegion::A | AnalysisRegion::H | AnalysisRegion::J => DominanceResult {
            region,
            relation: DominanceRelation::Equal,
            condition_interval: None,
        },
        AnalysisRegion::B
        | AnalysisRegion::C
        | AnalysisRegion::G
        | AnalysisRegion::I => DominanceResult {
            region,
            relation: DominanceRelation::Cor6TighterOrEqual,
            condition_interval: None,
        },
        AnalysisRegion::D => DominanceResult {
            region,
            relation: DominanceRelation::Conditional,
            condition_interval: quadratic_interval(0.5 * d1 + cross, 1.0 - d2),
        },
        AnalysisRegion::F => DominanceResult {
            region,
            relation: DominanceRelation::Conditional,
            condition_interval: quadratic_interval(0.5 * d2 + cross, 1.0 - d1),
        },
        AnalysisRegion::E => DominanceResult {
            region,
            relation: DominanceRelation::Conditional,
            condition_interval: quadratic_interval(
                0.5 * (1.0 + cross),
                1.0 - 0.5 * (d1 + d2),
            ),
        },
    };
    Ok(result)
}

/// Second coordinates of the two requirements at one point: `(sum_cond_rd,
/// max(0, joint_rd − C_W))`. The first bound is at least as tight iff the
/// first component is ≥ the second.
pub fn second_coordinates(dp: DistortionPair, rho: f64) -> Result<(f64, f64)> {
    let cond_sum = sum_cond_rd(dp, rho)?;
    let (joint, _) = joint_rd(dp, rho)?;
    Ok((cond_sum, (joint - wyner_ci(rho)?).max(0.0)))
}

/// Samples `n` pairs uniformly across the open analysis cell B at fixed
/// `d1 < 1−ρ`: `d2` strictly between `1−ρ` and `f(d1)`.
pub fn region_b_samples(d1: f64, rho: f64, n: usize) -> Result<Vec<DistortionPair>> {
    let a = 1.0 - rho;
    if !(d1 > 0.0 && d1 < a) {
        return Err(Error::OutOfRange { what: "d1", value: d1, range: "(0, 1-rho)" });
    }
    let hi = curve_f(d1, rho);
    (1..=n)
        .map(|i| {
            let t = i as f64 / (n + 1) as f64;
            DistortionPair::new(d1, a + t * (hi - a))
        })
        .collect()
}
