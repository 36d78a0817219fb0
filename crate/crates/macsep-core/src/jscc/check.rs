//! Checkers for the five condition systems.
//!
//! Each checker evaluates the left and right sides of its system exactly
//! (table arithmetic) or through the rate-distortion solvers, and returns
//! every value alongside a three-valued verdict: PASS when all conditions
//! hold decisively, FAIL when any is decisively violated, and BOUNDARY
//! when the data cannot separate a gap from zero. Forward (achievability)
//! systems demand strict inequalities; converse systems accept equality.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::discrete::{
    cond_rd_solver, conditional_mi, entropy, joint_rd_solver, rc_rd_solver, ConditionalChannel,
    DistortionMeasure, JointSourcePmf, PairPmf, SolverOptions,
};
use crate::error::Error;
use crate::Result;
use crate::jscc::cert::{ChannelInputCertificate, MacChannel, Theorem1Certificate};
use crate::jscc::table::NdTable;

/// Direction a condition system is checked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Forward direction: every condition must hold strictly.
    Achievability,
    /// Converse direction: conditions are non-strict.
    Converse,
}

/// Outcome of a checker run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Boundary,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Boundary => "BOUNDARY",
        })
    }
}

/// Tolerances and solver controls shared by the checkers.
#[derive(Debug, Clone)]
pub struct CheckOptions {
    /// Cap on I(S1;S2|Z) in bits for inputs that must satisfy the
    /// long Markov chain.
    pub markov_tol: f64,
    /// Half-width of the dead zone around a zero gap. Larger gaps pass,
    /// more negative gaps fail, anything inside is BOUNDARY under
    /// achievability. The default matches the solver tolerance; rates
    /// from iterative solvers cannot be resolved more finely.
    pub boundary_tol: f64,
    /// Controls for the rate-distortion solvers behind the rate sides.
    pub solver: SolverOptions,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            markov_tol: 1e-9,
            boundary_tol: 1e-9,
            solver: SolverOptions::default(),
        }
    }
}

/// One inequality condition; `lhs` must stay below `rhs`.
#[derive(Debug, Clone)]
pub struct ConditionReport {
    /// Human-readable form of the condition.
    pub label: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl ConditionReport {
    /// rhs - lhs; positive when the condition holds with margin.
    pub fn gap(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// One expected-distortion constraint of a hybrid certificate.
#[derive(Debug, Clone)]
pub struct DistortionReport {
    pub label: String,
    pub achieved: f64,
    pub target: f64,
}

/// Full outcome of one checker run.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub conditions: Vec<ConditionReport>,
    pub distortions: Vec<DistortionReport>,
    pub verdict: Verdict,
}

fn cond(label: String, lhs: f64, rhs: f64) -> ConditionReport {
    ConditionReport { label, lhs, rhs }
}

fn comparator(mode: CheckMode) -> &'static str {
    match mode {
        CheckMode::Achievability => "<",
        CheckMode::Converse => "<=",
    }
}

/// Folds gaps and distortion slacks into a verdict. Distortion
/// constraints are non-strict in both modes.
fn verdict_from(
    conditions: &[ConditionReport],
    distortions: &[DistortionReport],
    mode: CheckMode,
    boundary_tol: f64,
) -> Verdict {
    let mut boundary = false;
    for c in conditions {
        let g = c.gap();
        if g < -boundary_tol {
            return Verdict::Fail;
        }
        if mode == CheckMode::Achievability && g <= boundary_tol {
            boundary = true;
        }
    }
    for d in distortions {
        if d.achieved > d.target + boundary_tol {
            return Verdict::Fail;
        }
    }
    if boundary {
        Verdict::Boundary
    } else {
        Verdict::Pass
    }
}

fn check_targets(targets: (f64, f64)) -> Result<()> {
    for (what, t) in [
        ("first distortion target", targets.0),
        ("second distortion target", targets.1),
    ] {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::OutOfRange {
                what,
                value: t,
                range: "[0, inf)",
            });
        }
    }
    Ok(())
}

/// Rejects source triples that break the long Markov chain S1 - Z - S2.
fn markov_guard(pmf: &JointSourcePmf, tol: f64) -> Result<()> {
    let v = conditional_mi(pmf.table(), pmf.n1(), pmf.n2(), pmf.nz())?;
    if v > tol {
        return Err(Error::MarkovViolated {
            what: "I(S1;S2|Z)",
            value: v,
            tol,
        });
    }
    Ok(())
}

/// Checks a hybrid-coding certificate: three conditional-information
/// conditions plus the two expected distortions, judged strictly.
pub fn check_theorem1(
    pmf: &JointSourcePmf,
    cert: &Theorem1Certificate,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    targets: (f64, f64),
    opts: &CheckOptions,
) -> Result<CheckReport> {
    cert.validate(pmf, d1, d2)?;
    check_targets(targets)?;
    let (n1, n2, nz) = (pmf.n1(), pmf.n2(), pmf.nz());
    let (nu1, nu2) = (cert.u1_given_s1.n_out(), cert.u2_given_s2.n_out());
    let ny = cert.mac.ny();
    // Joint law over (s1, s2, z, u1, u2, y): the auxiliaries see only
    // their own source, the channel sees only the two inputs.
    let t = NdTable::from_fn(vec![n1, n2, nz, nu1, nu2, ny], |idx| {
        let (s1, s2, z, u1, u2, y) = (idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]);
        let x1 = cert.x1_map.get(&[u1, s1]);
        let x2 = cert.x2_map.get(&[u2, s2]);
        pmf.get(s1, s2, z)
            * cert.u1_given_s1.get(s1, u1)
            * cert.u2_given_s2.get(s2, u2)
            * cert.mac.get(x1, x2, y)
    })?;
    let conditions = vec![
        cond(
            "I(U1;S1|U2,Z) < I(U1;Y|U2,Z)".into(),
            t.conditional_mi(&[3], &[0], &[4, 2]),
            t.conditional_mi(&[3], &[5], &[4, 2]),
        ),
        cond(
            "I(U2;S2|U1,Z) < I(U2;Y|U1,Z)".into(),
            t.conditional_mi(&[4], &[1], &[3, 2]),
            t.conditional_mi(&[4], &[5], &[3, 2]),
        ),
        cond(
            "I(U1,U2;S1,S2|Z) < I(U1,U2;Y|Z)".into(),
            t.conditional_mi(&[3, 4], &[0, 1], &[2]),
            t.conditional_mi(&[3, 4], &[5], &[2]),
        ),
    ];
    let (mut e1, mut e2) = (0.0, 0.0);
    t.for_each_nonzero(|idx, pv| {
        let g_in = [idx[3], idx[4], idx[5], idx[2]];
        e1 += pv * d1.get(idx[0], cert.g1.get(&g_in));
        e2 += pv * d2.get(idx[1], cert.g2.get(&g_in));
    });
    let distortions = vec![
        DistortionReport {
            label: "E[d1(S1, g1(U1,U2,Y,Z))] <= D1".into(),
            achieved: e1,
            target: targets.0,
        },
        DistortionReport {
            label: "E[d2(S2, g2(U1,U2,Y,Z))] <= D2".into(),
            achieved: e2,
            target: targets.1,
        },
    ];
    let verdict = verdict_from(
        &conditions,
        &distortions,
        CheckMode::Achievability,
        opts.boundary_tol,
    );
    Ok(CheckReport {
        conditions,
        distortions,
        verdict,
    })
}

/// Shared body of the separation checkers: two per-source rates against
/// the conditional channel informations, plus their sum.
fn rate_conditions(
    label1: &str,
    label2: &str,
    cond_var: &str,
    r1: f64,
    r2: f64,
    cert: &ChannelInputCertificate,
    mode: CheckMode,
) -> Result<Vec<ConditionReport>> {
    let mi = cert.mutual_informations()?;
    let cmp = comparator(mode);
    Ok(vec![
        cond(
            format!("{label1} {cmp} I(X1;Y|X2,{cond_var})"),
            r1,
            mi.x1_to_y_given_x2q,
        ),
        cond(
            format!("{label2} {cmp} I(X2;Y|X1,{cond_var})"),
            r2,
            mi.x2_to_y_given_x1q,
        ),
        cond(
            format!("{label1}+{label2} {cmp} I(X1,X2;Y|{cond_var})"),
            r1 + r2,
            mi.both_to_y_given_q,
        ),
    ])
}

/// Checks the separation system with conditional rate-distortion sides
/// against a Q-factored input law.
pub fn check_theorem2(
    pmf: &JointSourcePmf,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    targets: (f64, f64),
    cert: &ChannelInputCertificate,
    mode: CheckMode,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    markov_guard(pmf, opts.markov_tol)?;
    let r1 = cond_rd_solver(&pmf.s1z(), d1, targets.0, &opts.solver)?;
    let r2 = cond_rd_solver(&pmf.s2z(), d2, targets.1, &opts.solver)?;
    let conditions = rate_conditions("R(S1|Z)", "R(S2|Z)", "Q", r1, r2, cert, mode)?;
    let verdict = verdict_from(&conditions, &[], mode, opts.boundary_tol);
    Ok(CheckReport {
        conditions,
        distortions: vec![],
        verdict,
    })
}

/// Checks the separation system with reconstruction-constrained
/// rate-distortion sides against a Q-factored input law.
pub fn check_theorem3(
    pmf: &JointSourcePmf,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    targets: (f64, f64),
    cert: &ChannelInputCertificate,
    mode: CheckMode,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    markov_guard(pmf, opts.markov_tol)?;
    let r1 = rc_rd_solver(&pmf.s1z(), d1, targets.0, &opts.solver)?;
    let r2 = rc_rd_solver(&pmf.s2z(), d2, targets.1, &opts.solver)?;
    let conditions = rate_conditions("Rrc(S1|Z)", "Rrc(S2|Z)", "Q", r1, r2, cert, mode)?;
    let verdict = verdict_from(&conditions, &[], mode, opts.boundary_tol);
    Ok(CheckReport {
        conditions,
        distortions: vec![],
        verdict,
    })
}

/// Checks the common-observation system: the three rate conditions with
/// a W-factored law, plus the total-rate condition carrying H(Z).
pub fn check_theorem4(
    pmf: &JointSourcePmf,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    targets: (f64, f64),
    cert: &ChannelInputCertificate,
    mode: CheckMode,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    markov_guard(pmf, opts.markov_tol)?;
    let r1 = cond_rd_solver(&pmf.s1z(), d1, targets.0, &opts.solver)?;
    let r2 = cond_rd_solver(&pmf.s2z(), d2, targets.1, &opts.solver)?;
    let hz = entropy(&pmf.marginal_z())?;
    let mut conditions = rate_conditions("R(S1|Z)", "R(S2|Z)", "W", r1, r2, cert, mode)?;
    let mi = cert.mutual_informations()?;
    conditions.push(cond(
        format!(
            "H(Z)+R(S1|Z)+R(S2|Z) {} I(X1,X2;Y)",
            comparator(mode)
        ),
        hz + r1 + r2,
        mi.both_to_y,
    ));
    let verdict = verdict_from(&conditions, &[], mode, opts.boundary_tol);
    Ok(CheckReport {
        conditions,
        distortions: vec![],
        verdict,
    })
}

/// Checks the necessity system for one Z-extension of a source pair:
/// three conditional-rate conditions plus the joint-rate cut, all
/// non-strict.
pub fn check_theorem5(
    pair: &PairPmf,
    z_ext: &ConditionalChannel,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    targets: (f64, f64),
    cert: &ChannelInputCertificate,
    opts: &CheckOptions,
) -> Result<CheckReport> {
    let (n1, n2) = (pair.nx(), pair.ny());
    if z_ext.n_in() != n1 * n2 {
        return Err(Error::ShapeMismatch(format!(
            "Z extension conditions on {} pair symbols, sources have {}x{}",
            z_ext.n_in(),
            n1,
            n2
        )));
    }
    let nz = z_ext.n_out();
    let mut p = vec![0.0; n1 * n2 * nz];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            for z in 0..nz {
                p[(s1 * n2 + s2) * nz + z] = pair.get(s1, s2) * z_ext.get(s1 * n2 + s2, z);
            }
        }
    }
    let triple = JointSourcePmf::new(n1, n2, nz, p)?;
    markov_guard(&triple, opts.markov_tol)?;
    let r1 = cond_rd_solver(&triple.s1z(), d1, targets.0, &opts.solver)?;
    let r2 = cond_rd_solver(&triple.s2z(), d2, targets.1, &opts.solver)?;
    let rj = joint_rd_solver(pair, d1, d2, targets.0, targets.1, &opts.solver)?;
    let mode = CheckMode::Converse;
    let mut conditions = rate_conditions("R(S1|Z)", "R(S2|Z)", "Q", r1, r2, cert, mode)?;
    let mi = cert.mutual_informations()?;
    conditions.push(cond(
        "R(S1,S2)(D1,D2) <= I(X1,X2;Y)".into(),
        rj,
        mi.both_to_y,
    ));
    let verdict = verdict_from(&conditions, &[], mode, opts.boundary_tol);
    Ok(CheckReport {
        conditions,
        distortions: vec![],
        verdict,
    })
}

/// Rate requirements a searched input law must clear.
#[derive(Debug, Clone, Copy)]
pub struct RateNeeds {
    /// Need against I(X1;Y|X2,Q).
    pub first: f64,
    /// Need against I(X2;Y|X1,Q).
    pub second: f64,
    /// Need against I(X1,X2;Y|Q).
    pub sum: f64,
    /// Optional need against the unconditional I(X1,X2;Y).
    pub total: Option<f64>,
}

/// Random-restart search for an input law with a large smallest margin
/// over the rate needs.
///
/// Restart 0 is the uniform law; later restarts draw flat Dirichlet
/// samples from a seeded generator, so results are reproducible. The
/// search only compares the laws it sampled: the returned margin is a
/// lower estimate of what the channel supports, never a certificate
/// that no better law exists.
pub fn search_input_law(
    mac: &MacChannel,
    nq: usize,
    needs: &RateNeeds,
    restarts: usize,
    seed: u64,
) -> Result<(ChannelInputCertificate, f64)> {
    if nq == 0 {
        return Err(Error::OutOfRange {
            what: "time-sharing alphabet size",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    if restarts == 0 {
        return Err(Error::OutOfRange {
            what: "restart count",
            value: 0.0,
            range: "[1, inf)",
        });
    }
    let mut best: Option<(ChannelInputCertificate, f64)> = None;
    for r in 0..restarts {
        let cert = if r == 0 {
            ChannelInputCertificate::uniform(mac.clone(), nq)?
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(seed ^ r as u64);
            let q = dirichlet(&mut rng, nq);
            let x1 = random_channel(&mut rng, nq, mac.nx1())?;
            let x2 = random_channel(&mut rng, nq, mac.nx2())?;
            ChannelInputCertificate::new(q, x1, x2, mac.clone())?
        };
        let mi = cert.mutual_informations()?;
        let mut margin = (mi.x1_to_y_given_x2q - needs.first)
            .min(mi.x2_to_y_given_x1q - needs.second)
            .min(mi.both_to_y_given_q - needs.sum);
        if let Some(t) = needs.total {
            margin = margin.min(mi.both_to_y - t);
        }
        if best.as_ref().map_or(true, |(_, m)| margin > *m) {
            best = Some((cert, margin));
        }
    }
    Ok(best.expect("at least one restart ran"))
}

/// Flat Dirichlet draw via normalized exponentials.
fn dirichlet(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = v.iter().sum();
    if s <= 0.0 {
        return vec![1.0 / n as f64; n];
    }
    for x in &mut v {
        *x /= s;
    }
    v
}

fn random_channel(
    rng: &mut ChaCha20Rng,
    n_in: usize,
    n_out: usize,
) -> Result<ConditionalChannel> {
    let mut rows = Vec::with_capacity(n_in * n_out);
    for _ in 0..n_in {
        rows.extend(dirichlet(rng, n_out));
    }
    ConditionalChannel::new(n_in, n_out, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{gacs_korner, min_expected_distortion, rd_at_target};
    use crate::jscc::cert::DetMap;
    use approx::assert_abs_diff_eq;

    fn h2(p: f64) -> f64 {
        let xlx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
        -xlx(p) - xlx(1.0 - p)
    }

    /// Symmetric binary pair with crossover `flip` and a constant Z.
    fn dsbs(flip: f64) -> JointSourcePmf {
        let a = (1.0 - flip) / 2.0;
        let b = flip / 2.0;
        JointSourcePmf::new(2, 2, 1, vec![a, b, b, a]).unwrap()
    }

    /// Z uniform binary, S1 = Z through BSC(p1), S2 = Z through BSC(p2);
    /// the chain S1 - Z - S2 holds exactly.
    fn planted_pmf(p1: f64, p2: f64) -> JointSourcePmf {
        let mut p = vec![0.0; 8];
        for s1 in 0..2 {
            for s2 in 0..2 {
                for z in 0..2 {
                    let a = if s1 == z { 1.0 - p1 } else { p1 };
                    let b = if s2 == z { 1.0 - p2 } else { p2 };
                    p[(s1 * 2 + s2) * 2 + z] = 0.5 * a * b;
                }
            }
        }
        JointSourcePmf::new(2, 2, 2, p).unwrap()
    }

    fn uniform_pair_law() -> ChannelInputCertificate {
        ChannelInputCertificate::uniform(MacChannel::noiseless_pair(2, 2).unwrap(), 1).unwrap()
    }

    /// Decoder table on (u1, u2, y, z) from a per-(u1, u2) choice.
    fn decoder_ignoring_y(nu1: usize, nu2: usize, ny: usize, nz: usize, pick: &[usize]) -> DetMap {
        let mut table = Vec::with_capacity(nu1 * nu2 * ny * nz);
        for u1 in 0..nu1 {
            for u2 in 0..nu2 {
                for _y in 0..ny {
                    for _z in 0..nz {
                        table.push(pick[u1 * nu2 + u2]);
                    }
                }
            }
        }
        let n_out = pick.iter().max().unwrap() + 1;
        DetMap::new(vec![nu1, nu2, ny, nz], n_out, table).unwrap()
    }

    #[test]
    fn constant_auxiliaries_sit_on_the_boundary() {
        let pmf = dsbs(0.11);
        let cert = Theorem1Certificate {
            u1_given_s1: ConditionalChannel::new(2, 1, vec![1.0, 1.0]).unwrap(),
            u2_given_s2: ConditionalChannel::new(2, 1, vec![1.0, 1.0]).unwrap(),
            x1_map: DetMap::new(vec![1, 2], 1, vec![0, 0]).unwrap(),
            x2_map: DetMap::new(vec![1, 2], 1, vec![0, 0]).unwrap(),
            g1: DetMap::new(vec![1, 1, 1, 1], 1, vec![0]).unwrap(),
            g2: DetMap::new(vec![1, 1, 1, 1], 1, vec![0]).unwrap(),
            mac: MacChannel::new(1, 1, 1, vec![1.0]).unwrap(),
        };
        let d = DistortionMeasure::hamming(2);
        let report =
            check_theorem1(&pmf, &cert, &d, &d, (1.0, 1.0), &CheckOptions::default()).unwrap();
        for c in &report.conditions {
            assert_abs_diff_eq!(c.lhs, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(c.rhs, 0.0, epsilon = 1e-12);
        }
        // Strict conditions cannot hold at zero gaps; the verdict reports
        // the tie rather than a decisive failure.
        assert_eq!(report.verdict, Verdict::Boundary);
        assert_abs_diff_eq!(report.distortions[0].achieved, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn noisy_identity_system_matches_entropy_oracle() {
        // U_j = S_j through BSC(0.2), X_j = U_j, MAC reveals the pair,
        // decoders read their input back off Y. Every information side
        // has a closed form.
        let pmf = dsbs(0.11);
        let bsc = ConditionalChannel::new(2, 2, vec![0.8, 0.2, 0.2, 0.8]).unwrap();
        let id_map = DetMap::new(vec![2, 2], 2, vec![0, 0, 1, 1]).unwrap();
        let mut g1_table = Vec::new();
        let mut g2_table = Vec::new();
        for _u1 in 0..2 {
            for _u2 in 0..2 {
                for y in 0..4 {
                    g1_table.push(y >> 1);
                    g2_table.push(y & 1);
                }
            }
        }
        let cert = Theorem1Certificate {
            u1_given_s1: bsc.clone(),
            u2_given_s2: bsc,
            x1_map: id_map.clone(),
            x2_map: id_map,
            g1: DetMap::new(vec![2, 2, 4, 1], 2, g1_table).unwrap(),
            g2: DetMap::new(vec![2, 2, 4, 1], 2, g2_table).unwrap(),
            mac: MacChannel::noiseless_pair(2, 2).unwrap(),
        };
        let d = DistortionMeasure::hamming(2);
        let report =
            check_theorem1(&pmf, &cert, &d, &d, (0.2, 0.2), &CheckOptions::default()).unwrap();
        // (U1, U2) is a symmetric binary pair with crossover q.
        let q = 0.11 * 0.68 + 0.89 * 0.32;
        assert_abs_diff_eq!(report.conditions[0].rhs, h2(q), epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[0].gap(), h2(0.2), epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[1].gap(), h2(0.2), epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[2].rhs, 1.0 + h2(q), epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[2].gap(), 2.0 * h2(0.2), epsilon = 1e-12);
        for dr in &report.distortions {
            assert_abs_diff_eq!(dr.achieved, 0.2, epsilon = 1e-12);
        }
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn optimal_ignoring_decoder_meets_flat_minimum() {
        // Decoders that ignore Y and pick the best reconstruction per
        // (u1, u2) achieve exactly the one-shot minimum over (U1, U2).
        let pmf = dsbs(0.11);
        let bsc = ConditionalChannel::new(2, 2, vec![0.7, 0.3, 0.3, 0.7]).unwrap();
        let id_map = DetMap::new(vec![2, 2], 2, vec![0, 0, 1, 1]).unwrap();
        // Joint weights p(s_j, (u1, u2)).
        let mut w1 = vec![0.0; 2 * 4];
        let mut w2 = vec![0.0; 2 * 4];
        for s1 in 0..2 {
            for s2 in 0..2 {
                for u1 in 0..2 {
                    for u2 in 0..2 {
                        let pv = pmf.get(s1, s2, 0) * bsc.get(s1, u1) * bsc.get(s2, u2);
                        w1[s1 * 4 + u1 * 2 + u2] += pv;
                        w2[s2 * 4 + u1 * 2 + u2] += pv;
                    }
                }
            }
        }
        let d = DistortionMeasure::hamming(2);
        let pick = |w: &[f64]| -> Vec<usize> {
            (0..4)
                .map(|uu| {
                    (0..2)
                        .min_by(|&a, &b| {
                            let ca = w[uu] * d.get(0, a) + w[4 + uu] * d.get(1, a);
                            let cb = w[uu] * d.get(0, b) + w[4 + uu] * d.get(1, b);
                            ca.partial_cmp(&cb).unwrap()
                        })
                        .unwrap()
                })
                .collect()
        };
        let cert = Theorem1Certificate {
            u1_given_s1: bsc.clone(),
            u2_given_s2: bsc,
            x1_map: id_map.clone(),
            x2_map: id_map,
            g1: decoder_ignoring_y(2, 2, 4, 1, &pick(&w1)),
            g2: decoder_ignoring_y(2, 2, 4, 1, &pick(&w2)),
            mac: MacChannel::noiseless_pair(2, 2).unwrap(),
        };
        let pair1 = PairPmf::new(2, 4, w1).unwrap();
        let pair2 = PairPmf::new(2, 4, w2).unwrap();
        let min1 = min_expected_distortion(&pair1, &d).unwrap();
        let min2 = min_expected_distortion(&pair2, &d).unwrap();
        let report =
            check_theorem1(&pmf, &cert, &d, &d, (min1, min2), &CheckOptions::default()).unwrap();
        assert_abs_diff_eq!(report.distortions[0].achieved, min1, epsilon = 1e-12);
        assert_abs_diff_eq!(report.distortions[1].achieved, min2, epsilon = 1e-12);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn theorem1_rejects_shape_slips_and_bad_targets() {
        let pmf = dsbs(0.11);
        let cert = Theorem1Certificate {
            u1_given_s1: ConditionalChannel::new(3, 1, vec![1.0; 3]).unwrap(),
            u2_given_s2: ConditionalChannel::new(2, 1, vec![1.0, 1.0]).unwrap(),
            x1_map: DetMap::new(vec![1, 3], 1, vec![0; 3]).unwrap(),
            x2_map: DetMap::new(vec![1, 2], 1, vec![0, 0]).unwrap(),
            g1: DetMap::new(vec![1, 1, 1, 1], 1, vec![0]).unwrap(),
            g2: DetMap::new(vec![1, 1, 1, 1], 1, vec![0]).unwrap(),
            mac: MacChannel::new(1, 1, 1, vec![1.0]).unwrap(),
        };
        let d = DistortionMeasure::hamming(2);
        let res = check_theorem1(&pmf, &cert, &d, &d, (0.5, 0.5), &CheckOptions::default());
        assert!(matches!(res, Err(Error::ShapeMismatch(_))));

        let ok_cert = Theorem1Certificate {
            u1_given_s1: ConditionalChannel::new(2, 1, vec![1.0, 1.0]).unwrap(),
            x1_map: DetMap::new(vec![1, 2], 1, vec![0, 0]).unwrap(),
            ..cert
        };
        let res = check_theorem1(&pmf, &ok_cert, &d, &d, (-0.1, 0.5), &CheckOptions::default());
        assert!(matches!(res, Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn markov_guard_trips_on_dependent_sources() {
        let pmf = dsbs(0.11);
        let d = DistortionMeasure::hamming(2);
        let res = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.1, 0.1),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        );
        match res {
            Err(Error::MarkovViolated { value, .. }) => {
                assert_abs_diff_eq!(value, 1.0 - h2(0.11), epsilon = 1e-9);
            }
            other => panic!("expected MarkovViolated, got {other:?}"),
        }
    }

    #[test]
    fn per_link_reduction_matches_scalar_solver() {
        // Independent uniform binary sources, noiseless per-link MAC:
        // each condition reduces to R(D) against 1 bit per link.
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let report = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.11, 0.11),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        let r = rd_at_target(&[0.5, 0.5], &d, 0.11, &SolverOptions::default()).unwrap();
        assert_abs_diff_eq!(report.conditions[0].lhs, r, epsilon = 1e-9);
        assert_abs_diff_eq!(report.conditions[0].rhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[2].lhs, 2.0 * r, epsilon = 1e-9);
        assert_abs_diff_eq!(report.conditions[2].rhs, 2.0, epsilon = 1e-12);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn overloaded_links_fail_decisively() {
        // 4-ary uniform sources at zero distortion need 2 bits per link
        // against binary links carrying 1.
        let pmf = JointSourcePmf::new(4, 4, 1, vec![1.0 / 16.0; 16]).unwrap();
        let d = DistortionMeasure::hamming(4);
        let report = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(report.conditions[0].lhs, 2.0, epsilon = 1e-6);
        assert!(report.conditions[0].gap() < -0.5);
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn saturated_links_are_boundary_or_pass_by_mode() {
        // Binary uniform sources at zero distortion exactly fill 1-bit
        // links: achievability cannot be strict, the converse holds.
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let opts = CheckOptions {
            boundary_tol: 1e-6,
            ..CheckOptions::default()
        };
        let fwd = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        assert_eq!(fwd.verdict, Verdict::Boundary);
        let bwd = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Converse,
            &opts,
        )
        .unwrap();
        assert_eq!(bwd.verdict, Verdict::Pass);
    }

    #[test]
    fn zero_rate_floors_pass_exactly() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let report = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.5, 0.5),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(report.conditions[0].lhs, 0.0);
        assert_eq!(report.conditions[1].lhs, 0.0);
        assert_eq!(report.conditions[2].lhs, 0.0);
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn reconstruction_rates_dominate_conditional_rates() {
        let pmf = planted_pmf(0.15, 0.25);
        let d = DistortionMeasure::hamming(2);
        let opts = CheckOptions::default();
        let t2 = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.1, 0.1),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        let t3 = check_theorem3(
            &pmf,
            &d,
            &d,
            (0.1, 0.1),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        for (c2, c3) in t2.conditions.iter().zip(&t3.conditions) {
            assert!(c3.lhs >= c2.lhs - 1e-9);
            assert_abs_diff_eq!(c2.rhs, c3.rhs, epsilon = 1e-12);
        }
        assert_eq!(t2.verdict, Verdict::Pass);
        assert_eq!(t3.verdict, Verdict::Pass);
    }

    #[test]
    fn reconstruction_rates_collapse_without_side_information() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let opts = CheckOptions::default();
        let t2 = check_theorem2(
            &pmf,
            &d,
            &d,
            (0.11, 0.11),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        let t3 = check_theorem3(
            &pmf,
            &d,
            &d,
            (0.11, 0.11),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        assert_abs_diff_eq!(t2.conditions[0].lhs, t3.conditions[0].lhs, epsilon = 1e-6);
        assert_abs_diff_eq!(t2.conditions[1].lhs, t3.conditions[1].lhs, epsilon = 1e-6);
    }

    #[test]
    fn lossless_side_rate_rides_on_total_capacity() {
        // Constant sources, a uniform binary Z, a MAC carrying 2 bits:
        // only H(Z) + 0 + 0 < 2 is at stake.
        let pmf = JointSourcePmf::new(1, 1, 2, vec![0.5, 0.5]).unwrap();
        let d = DistortionMeasure::hamming(1);
        let report = check_theorem4(
            &pmf,
            &d,
            &d,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(report.conditions[3].lhs, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(report.conditions[3].rhs, 2.0, epsilon = 1e-12);
        assert_eq!(report.verdict, Verdict::Pass);

        // A 2-bit Z saturates the same channel exactly.
        let pmf = JointSourcePmf::new(1, 1, 4, vec![0.25; 4]).unwrap();
        let report = check_theorem4(
            &pmf,
            &d,
            &d,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(report.conditions[3].gap(), 0.0, epsilon = 1e-12);
        assert_eq!(report.verdict, Verdict::Boundary);
    }

    #[test]
    fn constant_z_total_condition_collapses_to_sum_condition() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let report = check_theorem4(
            &pmf,
            &d,
            &d,
            (0.11, 0.11),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        // H(Z) = 0 and the degenerate W makes both right sides the
        // unconditional information.
        assert_eq!(report.conditions[2].lhs, report.conditions[3].lhs);
        assert_abs_diff_eq!(
            report.conditions[2].rhs,
            report.conditions[3].rhs,
            epsilon = 1e-12
        );
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn constant_second_source_reduces_to_single_link() {
        // S2 is constant; S1 = Z through BSC(0.1) at zero distortion
        // needs H(S1|Z) = h2(0.1) next to the lossless H(Z) = 1.
        let pmf = JointSourcePmf::new(2, 1, 2, vec![0.45, 0.05, 0.05, 0.45]).unwrap();
        let d1 = DistortionMeasure::hamming(2);
        let d2 = DistortionMeasure::hamming(1);
        let report = check_theorem4(
            &pmf,
            &d1,
            &d2,
            (0.0, 0.0),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(report.conditions[1].lhs, 0.0);
        assert_abs_diff_eq!(report.conditions[0].lhs, h2(0.1), epsilon = 1e-6);
        assert_abs_diff_eq!(
            report.conditions[3].lhs,
            1.0 + report.conditions[0].lhs,
            epsilon = 1e-12
        );
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn full_observation_extension_leaves_only_the_cut() {
        // Z = (S1, S2) zeroes every conditional rate; the joint-rate cut
        // decides against the channel alone.
        let a = 0.445;
        let b = 0.055;
        let pair = PairPmf::new(2, 2, vec![a, b, b, a]).unwrap();
        let mut ext_rows = vec![0.0; 16];
        for k in 0..4 {
            ext_rows[k * 4 + k] = 1.0;
        }
        let z_ext = ConditionalChannel::new(4, 4, ext_rows).unwrap();
        let d = DistortionMeasure::hamming(2);
        let report = check_theorem5(
            &pair,
            &z_ext,
            &d,
            &d,
            (0.01, 0.01),
            &uniform_pair_law(),
            &CheckOptions::default(),
        )
        .unwrap();
        assert_eq!(report.conditions[0].lhs, 0.0);
        assert_eq!(report.conditions[1].lhs, 0.0);
        assert_eq!(report.conditions[2].lhs, 0.0);
        // The joint rate sits between H - 2 h2(D) and H.
        let h_pair = 1.0 + h2(0.11);
        assert!(report.conditions[3].lhs > h_pair - 2.0 * h2(0.01) - 1e-3);
        assert!(report.conditions[3].lhs < h_pair + 1e-6);
        assert_eq!(report.verdict, Verdict::Pass);

        // A pure XOR output carries 1 bit: the cut fails.
        let xor_rows = vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0];
        let xor_mac = MacChannel::new(2, 2, 2, xor_rows).unwrap();
        let xor_law = ChannelInputCertificate::uniform(xor_mac, 1).unwrap();
        let report = check_theorem5(
            &pair,
            &z_ext,
            &d,
            &d,
            (0.01, 0.01),
            &xor_law,
            &CheckOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(report.conditions[3].rhs, 1.0, epsilon = 1e-12);
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn constant_extension_of_independent_sources_is_additive() {
        let pair = PairPmf::new(2, 2, vec![0.25; 4]).unwrap();
        let z_ext = ConditionalChannel::new(4, 1, vec![1.0; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let report = check_theorem5(
            &pair,
            &z_ext,
            &d,
            &d,
            (0.11, 0.11),
            &uniform_pair_law(),
            &CheckOptions::default(),
        )
        .unwrap();
        let r = rd_at_target(&[0.5, 0.5], &d, 0.11, &SolverOptions::default()).unwrap();
        assert_abs_diff_eq!(report.conditions[0].lhs, r, epsilon = 1e-9);
        // Independent sources make the joint rate the sum of marginals.
        assert_abs_diff_eq!(
            report.conditions[3].lhs,
            report.conditions[2].lhs,
            epsilon = 2e-3
        );
        assert_eq!(report.verdict, Verdict::Pass);
    }

    #[test]
    fn theorem5_guards_the_markov_chain_of_the_extension() {
        let a = 0.445;
        let b = 0.055;
        let pair = PairPmf::new(2, 2, vec![a, b, b, a]).unwrap();
        let z_ext = ConditionalChannel::new(4, 1, vec![1.0; 4]).unwrap();
        let d = DistortionMeasure::hamming(2);
        let res = check_theorem5(
            &pair,
            &z_ext,
            &d,
            &d,
            (0.1, 0.1),
            &uniform_pair_law(),
            &CheckOptions::default(),
        );
        assert!(matches!(res, Err(Error::MarkovViolated { .. })));
    }

    #[test]
    fn common_part_labeling_matches_explicit_common_variable() {
        // A pair with a planted common variable U0: running the checker
        // with Z = U0 and with Z = the extracted common-part labeling
        // must agree in every value and verdict.
        let pu = [0.3, 0.7];
        let ps1_u = [[0.5, 0.5, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0]];
        let ps2_u = [[1.0, 0.0, 0.0], [0.0, 0.4, 0.6]];
        let mut pa = vec![0.0; 4 * 3 * 2];
        for u in 0..2 {
            for s1 in 0..4 {
                for s2 in 0..3 {
                    pa[(s1 * 3 + s2) * 2 + u] = pu[u] * ps1_u[u][s1] * ps2_u[u][s2];
                }
            }
        }
        let pmf_a = JointSourcePmf::new(4, 3, 2, pa).unwrap();
        let pair = pmf_a.s1s2();
        let gk = gacs_korner(&pair);
        assert_abs_diff_eq!(gk.c_gk, h2(0.3), epsilon = 1e-12);
        let mut pb = vec![0.0; 4 * 3 * 2];
        for s1 in 0..4 {
            for s2 in 0..3 {
                pb[(s1 * 3 + s2) * 2 + gk.f1[s1]] = pair.get(s1, s2);
            }
        }
        let pmf_b = JointSourcePmf::new(4, 3, 2, pb).unwrap();
        let d1 = DistortionMeasure::hamming(4);
        let d2 = DistortionMeasure::hamming(3);
        let opts = CheckOptions::default();
        let ra = check_theorem2(
            &pmf_a,
            &d1,
            &d2,
            (0.1, 0.1),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        let rb = check_theorem2(
            &pmf_b,
            &d1,
            &d2,
            (0.1, 0.1),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        for (ca, cb) in ra.conditions.iter().zip(&rb.conditions) {
            assert_abs_diff_eq!(ca.lhs, cb.lhs, epsilon = 1e-12);
            assert_abs_diff_eq!(ca.rhs, cb.rhs, epsilon = 1e-12);
        }
        assert_eq!(ra.verdict, rb.verdict);
    }

    #[test]
    fn relabeling_a_source_alphabet_changes_nothing() {
        let pmf = planted_pmf(0.15, 0.25);
        // Swap the S1 symbols, carrying the distortion rows along.
        let mut swapped = vec![0.0; 8];
        for s1 in 0..2 {
            for s2 in 0..2 {
                for z in 0..2 {
                    swapped[((1 - s1) * 2 + s2) * 2 + z] = pmf.get(s1, s2, z);
                }
            }
        }
        let pmf_swapped = JointSourcePmf::new(2, 2, 2, swapped).unwrap();
        let d1 = DistortionMeasure::new(2, 2, vec![0.0, 1.0, 2.0, 0.0]).unwrap();
        let d1_swapped = DistortionMeasure::new(2, 2, vec![2.0, 0.0, 0.0, 1.0]).unwrap();
        let d2 = DistortionMeasure::hamming(2);
        let opts = CheckOptions::default();
        let base = check_theorem2(
            &pmf,
            &d1,
            &d2,
            (0.1, 0.12),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        let moved = check_theorem2(
            &pmf_swapped,
            &d1_swapped,
            &d2,
            (0.1, 0.12),
            &uniform_pair_law(),
            CheckMode::Achievability,
            &opts,
        )
        .unwrap();
        for (ca, cb) in base.conditions.iter().zip(&moved.conditions) {
            assert_abs_diff_eq!(ca.lhs, cb.lhs, epsilon = 1e-9);
            assert_abs_diff_eq!(ca.rhs, cb.rhs, epsilon = 1e-12);
        }
        assert_eq!(base.verdict, moved.verdict);
    }

    #[test]
    fn input_law_search_finds_the_uniform_optimum() {
        // On the pair-revealing MAC the first-link information is capped
        // at 1 bit, reached by the uniform law of restart 0.
        let mac = MacChannel::noiseless_pair(2, 2).unwrap();
        let needs = RateNeeds {
            first: 0.5,
            second: 0.5,
            sum: 1.2,
            total: Some(1.5),
        };
        let (cert, margin) = search_input_law(&mac, 2, &needs, 6, 7).unwrap();
        assert_abs_diff_eq!(margin, 0.5, epsilon = 1e-9);
        let mi = cert.mutual_informations().unwrap();
        assert!(mi.x1_to_y_given_x2q > 1.0 - 1e-9);

        let res = search_input_law(&mac, 2, &needs, 0, 7);
        assert!(matches!(res, Err(Error::OutOfRange { .. })));
    }
}
