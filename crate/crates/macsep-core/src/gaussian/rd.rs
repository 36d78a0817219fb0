//! Conditional and joint rate-distortion functions of the source pair.
//!
//! Squared-error distortion, unit source variances, rates in bits. The
//! conditional function is taken given the common part `Z`; the joint
//! function is the classic two-distortion characterization for a bivariate
//! Gaussian pair, with a three-way case split by distortion region.

use crate::{Error, Result};

const D_MIN: f64 = 1e-12;

/// A pair of mean-squared-error targets, each in `[1e-12, 1]`.
///
/// Targets above the source variance 1 are never binding and are rejected;
/// targets below `1e-12` would demand rates beyond any plotted range and
/// are rejected to protect the logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionPair {
    d1: f64,
    d2: f64,
}

impl DistortionPair {
    pub fn new(d1: f64, d2: f64) -> Result<Self> {
        for (what, v) in [("d1", d1), ("d2", d2)] {
            if !(D_MIN..=1.0).contains(&v) {
                return Err(Error::OutOfRange { what, value: v, range: "[1e-12, 1]" });
            }
        }
        Ok(Self { d1, d2 })
    }

    pub fn d1(&self) -> f64 {
        self.d1
    }

    pub fn d2(&self) -> f64 {
        self.d2
    }

    /// The coordinate-swapped pair.
    pub fn swapped(&self) -> Self {
        Self { d1: self.d2, d2: self.d1 }
    }
}

/// Which branch of the joint rate-distortion formula applied.
///
/// `R1`: only the tighter target binds (the looser one comes for free).
/// `R2`: both targets bind and the optimum reconstruction noises are
/// uncorrelated. `R3`: both bind with correlated reconstruction noise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointRdRegion {
    R1,
    R2,
    R3,
}

/// Cells of the distortion plane used by the bound-dominance analysis.
///
/// Boundaries at `a = 1−ρ` (where each conditional rate hits zero) and at
/// the curves `f`, `g` separating the joint-rate branches. `B/D/G` have
/// `d1 < a ≤ d2`; `C/F/I` are their mirrors; `A` has both below `a`;
/// `H/J/E` both at or above `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnalysisRegion {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
}

impl std::fmt::Display for AnalysisRegion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AnalysisRegion::A => "A",
            AnalysisRegion::B => "B",
            AnalysisRegion::C => "C",
            AnalysisRegion::D => "D",
            AnalysisRegion::E => "E",
            AnalysisRegion::F => "F",
            AnalysisRegion::G => "G",
            AnalysisRegion::H => "H",
            AnalysisRegion::I => "I",
            AnalysisRegion::J => "J",
        };
        f.write_str(s)
    }
}

fn check_rho(rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::OutOfRange { what: "rho", value: rho, range: "[0, 1)" });
    }
    Ok(rho)
}

/// Rate-distortion function of one source given the common part `Z`:
/// `½·log2((1−ρ)/d)` bits for `d < 1−ρ`, else 0.
///
/// Conditioned on `Z`, the source is Gaussian with variance `1−ρ`.
pub fn cond_rd(d: f64, rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if !(D_MIN..=1.0).contains(&d) {
        return Err(Error::OutOfRange { what: "d", value: d, range: "[1e-12, 1]" });
    }
    let a = 1.0 - rho;
    Ok(if d < a { 0.5 * (a / d).log2() } else { 0.0 })
}

/// Sum of the two conditional rate-distortion values at the pair's targets.
pub fn sum_cond_rd(dp: DistortionPair, rho: f64) -> Result<f64> {
    Ok(cond_rd(dp.d1, rho)? + cond_rd(dp.d2, rho)?)
}

/// Boundary curve between the `R2` and `R3` branches:
/// `f(x) = (1−ρ²−x)/(1−x)` for `x < 1`.
///
/// For `ρ = 0` the curve is identically 1 and we define `f(1) = 1` by
/// continuity; for `ρ > 0` it diverges to `−∞` as `x → 1`, so `f(1) = −∞`
/// (the comparison `d2 < f(1)` is then never satisfied, matching the limit).
pub fn curve_f(x: f64, rho: f64) -> f64 {
    if x >= 1.0 {
        return if rho == 0.0 { 1.0 } else { f64::NEG_INFINITY };
    }
    (1.0 - rho * rho - x) / (1.0 - x)
}

/// Boundary curve between the `R3` and `R1` branches:
/// `g(x) = 1−ρ² + ρ²·x`.
pub fn curve_g(x: f64, rho: f64) -> f64 {
    1.0 - rho * rho + rho * rho * x
}

/// Joint rate-distortion function of the pair at targets `(d1, d2)`,
/// together with the branch that applied.
///
/// Branches over the partition of `(0,1]²` (using `a² = 1−ρ²`):
/// - `R1` when `d2 ≥ g(d1)`, or `d1 > 1−ρ²` with `d1 ≥ g(d2)`:
///   rate `½·log2(1/min(d1,d2))`.
/// - `R2` when `d1 ≤ 1−ρ²` and `d2 < f(d1)`: rate `½·log2⁺((1−ρ²)/(d1·d2))`.
/// - `R3` otherwise: rate `½·log2⁺((1−ρ²)/(d1·d2 − (ρ − √((1−d1)(1−d2)))²))`;
///   the denominator is strictly positive on this branch.
pub fn joint_rd(dp: DistortionPair, rho: f64) -> Result<(f64, JointRdRegion)> {
    check_rho(rho)?;
    let (d1, d2) = (dp.d1, dp.d2);
    let one_minus_rho2 = 1.0 - rho * rho;
    let log_plus = |x: f64| (0.5 * x.log2()).max(0.0);

    if d2 >= curve_g(d1, rho) || (d1 > one_minus_rho2 && d1 >= curve_g(d2, rho)) {
        return Ok((log_plus(1.0 / d1.min(d2)), JointRdRegion::R1));
    }
    if d1 <= one_minus_rho2 && d2 < curve_f(d1, rho) {
        return Ok((log_plus(one_minus_rho2 / (d1 * d2)), JointRdRegion::R2));
    }
    let s = ((1.0 - d1) * (1.0 - d2)).sqrt();
    let denom = d1 * d2 - (rho - s) * (rho - s);
    // Positive throughout the R3 branch: the denominator equals d1·d2 on the
    // R2 boundary and d·(1−ρ²) on the R1 boundary, and is concave between.
    assert!(denom > 0.0, "joint rd denominator {denom} at ({d1}, {d2}), rho {rho}");
    Ok((log_plus(one_minus_rho2 / denom), JointRdRegion::R3))
}

/// Classifies a distortion pair into the cells used by the dominance
/// analysis, with `a = 1−ρ`.
///
/// Decision order (first match wins; the only overlapping closures are H
/// and J at `(1,1)`, resolved to H):
/// - `A`: `d1 < a` and `d2 < a`.
/// - `d1 < a ≤ d2`: `B` if `d2 ≤ f(d1)`, `D` if `d2 < g(d1)`, else `G`.
/// - `d2 < a ≤ d1`: mirrors `C`, `F`, `I`.
/// - both `≥ a`: `H` if `d2 ≥ g(d1)`, `J` if `d1 ≥ g(d2)`, else `E`.
pub fn classify_analysis_region(dp: DistortionPair, rho: f64) -> Result<AnalysisRegion> {
    check_rho(rho)?;
    let (d1, d2) = (dp.d1, dp.d2);
    let a = 1.0 - rho;
    Ok(if d1 < a && d2 < a {
        AnalysisRegion::A
    } else if d1 < a {
        if d2 <= curve_f(d1, rho) {
            AnalysisRegion::B
        } else if d2 < curve_g(d1, rho) {
            AnalysisRegion::D
        } else {
            AnalysisRegion::G
        }
    } else if d2 < a {
        if d1 <= curve_f(d2, rho) {
            AnalysisRegion::C
        } else if d1 < curve_g(d2, rho) {
            AnalysisRegion::F
        } else {
            AnalysisRegion::I
        }
    } else if d2 >= curve_g(d1, rho) {
        AnalysisRegion::H
    } else if d1 >= curve_g(d2, rho) {
        AnalysisRegion::J
    } else {
        AnalysisRegion::E
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn dp(d1: f64, d2: f64) -> DistortionPair {
        DistortionPair::new(d1, d2).unwrap()
    }

    #[test]
    fn cond_rd_matches_frozen_example() {
        // ½·log2(0.5/0.14) at ρ = 0.5.
        assert_abs_diff_eq!(cond_rd(0.14, 0.5).unwrap(), 0.9182506338585602, epsilon = 1e-12);
        // Above the conditional variance the rate is zero.
        assert_eq!(cond_rd(0.6, 0.5).unwrap(), 0.0);
        assert_eq!(cond_rd(0.5, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn sum_cond_rd_adds_the_active_terms() {
        assert_abs_diff_eq!(
            sum_cond_rd(dp(0.14, 0.6), 0.5).unwrap(),
            0.9182506338585602,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            sum_cond_rd(dp(0.14, 0.14), 0.5).unwrap(),
            2.0 * 0.9182506338585602,
            epsilon = 1e-12
        );
    }

    #[test]
    fn joint_rd_matches_frozen_example() {
        // (0.14, 0.6) at ρ = 0.5 sits in R2: ½·log2(0.75/0.084).
        let (rate, region) = joint_rd(dp(0.14, 0.6), 0.5).unwrap();
        assert_eq!(region, JointRdRegion::R2);
        assert_abs_diff_eq!(rate, 1.5792146813022414, epsilon = 1e-12);
    }

    #[test]
    fn joint_rd_r1_branch_tracks_the_binding_target() {
        // d2 = 1 always lies in R1; rate is the scalar RD of the tighter one.
        let (rate, region) = joint_rd(dp(0.25, 1.0), 0.5).unwrap();
        assert_eq!(region, JointRdRegion::R1);
        assert_abs_diff_eq!(rate, 1.0, epsilon = 1e-12);
        // Mirror orientation.
        let (rate, region) = joint_rd(dp(1.0, 0.25), 0.5).unwrap();
        assert_eq!(region, JointRdRegion::R1);
        assert_abs_diff_eq!(rate, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn joint_rd_zero_at_unit_distortions() {
        let (rate, region) = joint_rd(dp(1.0, 1.0), 0.7).unwrap();
        assert_eq!(region, JointRdRegion::R1);
        assert_eq!(rate, 0.0);
    }

    #[test]
    fn joint_rd_independent_sources_decouple() {
        // ρ = 0: rate is the sum of scalar rates for any targets below 1.
        let (rate, region) = joint_rd(dp(0.5, 0.25), 0.0).unwrap();
        assert_eq!(region, JointRdRegion::R2);
        assert_abs_diff_eq!(rate, 0.5 + 1.0, epsilon = 1e-12);
    }

    #[test]
    fn joint_rd_continuous_across_branch_boundaries() {
        let rho = 0.5f64;
        // R2/R3 boundary: d2 = f(d1).
        let d1 = 0.3;
        let f = curve_f(d1, rho);
        let below = joint_rd(dp(d1, f - 1e-9), rho).unwrap();
        let above = joint_rd(dp(d1, f + 1e-9), rho).unwrap();
        assert_eq!(below.1, JointRdRegion::R2);
        assert_eq!(above.1, JointRdRegion::R3);
        assert_abs_diff_eq!(below.0, above.0, epsilon = 1e-7);
        // R3/R1 boundary: d2 = g(d1).
        let g = curve_g(d1, rho);
        let inside = joint_rd(dp(d1, g - 1e-9), rho).unwrap();
        let outside = joint_rd(dp(d1, g + 1e-9), rho).unwrap();
        assert_eq!(inside.1, JointRdRegion::R3);
        assert_eq!(outside.1, JointRdRegion::R1);
        assert_abs_diff_eq!(inside.0, outside.0, epsilon = 1e-7);
    }

    #[test]
    fn branch_tiling_by_d2_for_small_d1() {
        // For d1 ≤ 1−ρ²: [0, f) → R2, [f, g) → R3, [g, 1] → R1.
        let rho = 0.6f64;
        let d1 = 0.2;
        let (f, g) = (curve_f(d1, rho), curve_g(d1, rho));
        assert_eq!(joint_rd(dp(d1, 0.5 * f), rho).unwrap().1, JointRdRegion::R2);
        assert_eq!(joint_rd(dp(d1, 0.5 * (f + g)), rho).unwrap().1, JointRdRegion::R3);
        assert_eq!(joint_rd(dp(d1, 0.5 * (g + 1.0)), rho).unwrap().1, JointRdRegion::R1);
    }

    #[test]
    fn branch_tiling_by_d2_for_large_d1() {
        // For d1 > 1−ρ²: [0, h] → R1, (h, g) → R3, [g, 1] → R1, where
        // h is the inverse of g (mirror of the R1 condition).
        let rho = 0.6f64;
        let d1 = 0.8; // 1−ρ² = 0.64 < 0.8
        let h = (d1 - (1.0 - rho * rho)) / (rho * rho);
        let g = curve_g(d1, rho);
        assert_eq!(joint_rd(dp(d1, 0.5 * h), rho).unwrap().1, JointRdRegion::R1);
        assert_eq!(joint_rd(dp(d1, 0.5 * (h + g)), rho).unwrap().1, JointRdRegion::R3);
        assert_eq!(joint_rd(dp(d1, 0.5 * (g + 1.0)), rho).unwrap().1, JointRdRegion::R1);
    }

    #[test]
    fn analysis_region_examples() {
        let rho = 0.5;
        assert_eq!(classify_analysis_region(dp(0.2, 0.3), rho).unwrap(), AnalysisRegion::A);
        assert_eq!(classify_analysis_region(dp(0.14, 0.6), rho).unwrap(), AnalysisRegion::B);
        assert_eq!(classify_analysis_region(dp(0.14, 0.75), rho).unwrap(), AnalysisRegion::D);
        assert_eq!(classify_analysis_region(dp(0.14, 0.95), rho).unwrap(), AnalysisRegion::G);
        assert_eq!(classify_analysis_region(dp(0.6, 0.14), rho).unwrap(), AnalysisRegion::C);
        assert_eq!(classify_analysis_region(dp(0.75, 0.14), rho).unwrap(), AnalysisRegion::F);
        assert_eq!(classify_analysis_region(dp(0.95, 0.14), rho).unwrap(), AnalysisRegion::I);
        assert_eq!(classify_analysis_region(dp(0.6, 0.96), rho).unwrap(), AnalysisRegion::H);
        assert_eq!(classify_analysis_region(dp(0.96, 0.6), rho).unwrap(), AnalysisRegion::J);
        assert_eq!(classify_analysis_region(dp(0.8, 0.8), rho).unwrap(), AnalysisRegion::E);
        // H∩J closure overlap resolves to H.
        assert_eq!(classify_analysis_region(dp(1.0, 1.0), rho).unwrap(), AnalysisRegion::H);
    }

    #[test]
    fn distortion_pair_rejects_out_of_range() {
        assert!(DistortionPair::new(0.0, 0.5).is_err());
        assert!(DistortionPair::new(0.5, 1.0 + 1e-9).is_err());
        assert!(DistortionPair::new(1e-13, 0.5).is_err());
        assert!(DistortionPair::new(0.5, f64::NAN).is_err());
    }

    proptest! {
        /// The joint rate never exceeds the unconditional sum rate
        /// ½·log2(1/d1) + ½·log2(1/d2) and is never below the single-source
        /// rate at min(d1,d2) minus slack for the helped coordinate.
        #[test]
        fn joint_rate_between_trivial_bounds(
            d1 in 1e-3..1.0f64,
            d2 in 1e-3..1.0f64,
            rho in 0.0..0.99f64,
        ) {
            let (rate, _) = joint_rd(dp(d1, d2), rho).unwrap();
            let scalar_sum = 0.5 * (1.0 / d1).log2() + 0.5 * (1.0 / d2).log2();
            prop_assert!(rate <= scalar_sum + 1e-9);
            let single = 0.5 * (1.0 / d1.min(d2)).log2();
            prop_assert!(rate >= single - 1e-9);
        }

        /// Joint rate and branch are symmetric under coordinate swap.
        #[test]
        fn joint_rd_symmetric(
            d1 in 1e-3..1.0f64,
            d2 in 1e-3..1.0f64,
            rho in 0.0..0.99f64,
        ) {
            let p = dp(d1, d2);
            let (r, _) = joint_rd(p, rho).unwrap();
            let (rs, _) = joint_rd(p.swapped(), rho).unwrap();
            prop_assert!((r - rs).abs() < 1e-12);
        }

        /// Monotone nonincreasing in each distortion target.
        #[test]
        fn joint_rd_monotone(
            d1 in 1e-3..0.9f64,
            d2 in 1e-3..0.9f64,
            rho in 0.0..0.99f64,
            bump in 1e-4..0.1f64,
        ) {
            let (r, _) = joint_rd(dp(d1, d2), rho).unwrap();
            let (r_up, _) = joint_rd(dp(d1 + bump, d2), rho).unwrap();
            prop_assert!(r_up <= r + 1e-12);
        }

        /// The sum of conditional rates dominates the joint rate minus the
        /// common-part information: both are lower bounds with the joint
        /// one offset by what Z carries. (Checked indirectly: both
        /// quantities are nonnegative and finite on the domain.)
        #[test]
        fn rates_nonnegative_and_finite(
            d1 in 1e-3..1.0f64,
            d2 in 1e-3..1.0f64,
            rho in 0.0..0.99f64,
        ) {
            let p = dp(d1, d2);
            let s = sum_cond_rd(p, rho).unwrap();
            let (j, _) = joint_rd(p, rho).unwrap();
            prop_assert!(s >= 0.0 && s.is_finite());
            prop_assert!(j >= 0.0 && j.is_finite());
        }

        /// The analysis cells refine the joint-rate branches: A and B lie in
        /// R2 or on its boundary, G/H/I/J in R1, E in R3.
        #[test]
        fn analysis_regions_align_with_branches(
            d1 in 1e-3..1.0f64,
            d2 in 1e-3..1.0f64,
            rho in 0.01..0.99f64,
        ) {
            let p = dp(d1, d2);
            let cell = classify_analysis_region(p, rho).unwrap();
            let (_, branch) = joint_rd(p, rho).unwrap();
            match cell {
                AnalysisRegion::A => prop_assert_eq!(branch, JointRdRegion::R2),
                AnalysisRegion::G | AnalysisRegion::I =>
                    prop_assert_eq!(branch, JointRdRegion::R1),
                AnalysisRegion::H | AnalysisRegion::J =>
                    prop_assert_eq!(branch, JointRdRegion::R1),
                AnalysisRegion::E => prop_assert_eq!(branch, JointRdRegion::R3),
                _ => {}
            }
        }
    }
}
