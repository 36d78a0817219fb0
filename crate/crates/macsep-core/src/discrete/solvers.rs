//! Rate-distortion solvers for finite alphabets.
//!
//! Every convex solver here follows the same recipe: minimize the
//! Lagrangian I + λ·E[d] at a fixed slope λ by alternating closed-form
//! updates (the functional is jointly convex in the channel and the
//! induced output law, so the alternation reaches the global minimum),
//! then bisect on λ until the distortion target is bracketed and
//! interpolate a chord between the bracketing curve points. The
//! Wyner-Ziv solver reuses the recipe inside a non-convex outer search
//! and is therefore documented as an upper estimate.
//!
//! All rates are in bits.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::discrete::info::validate_pmf;
use crate::discrete::pmf::{DistortionMeasure, PairPmf, MAX_TABLE_CELLS};
use crate::{Error, Result};

/// Slack below the distortion floor that is still attributed to rounding
/// rather than reported as infeasible.
const FLOOR_SLACK: f64 = 1e-12;

/// Convergence controls shared by the solvers.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Relative objective-change threshold that ends a fixed-slope solve.
    pub rel_tol: f64,
    /// Iteration cap for a single fixed-slope solve.
    pub max_iters: usize,
    /// Restarts for the non-convex Wyner-Ziv search; restart 0 is the
    /// deterministic ramp initialization, later ones are seeded draws.
    pub restarts: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            max_iters: 100_000,
            restarts: 8,
        }
    }
}

/// Smallest achievable expected distortion: every source symbol maps to
/// its cheapest reconstruction.
fn floor_distortion(p_s: &[f64], d: &DistortionMeasure) -> f64 {
    let mut total = 0.0;
    for (s, &ps) in p_s.iter().enumerate() {
        if ps > 0.0 {
            let row_min = (0..d.n_hat())
                .map(|k| d.get(s, k))
                .fold(f64::INFINITY, f64::min);
            total += ps * row_min;
        }
    }
    total
}

/// Expected distortion of the best constant reconstruction: the zero-rate
/// end of the curve.
fn zero_rate_distortion(p_s: &[f64], d: &DistortionMeasure) -> f64 {
    (0..d.n_hat())
        .map(|k| {
            p_s.iter()
                .enumerate()
                .map(|(s, &ps)| ps * d.get(s, k))
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Uniform rows with a tiny deterministic ramp so every run breaks ties
/// the same way.
fn ramp_rows(n_rows: usize, n_cols: usize) -> Vec<f64> {
    let mut w = vec![0.0; n_rows * n_cols];
    for r in 0..n_rows {
        let mut sum = 0.0;
        for k in 0..n_cols {
            let v = 1.0 + 1e-6 * (k + 1) as f64;
            w[r * n_cols + k] = v;
            sum += v;
        }
        for k in 0..n_cols {
            w[r * n_cols + k] /= sum;
        }
    }
    w
}


/// One point of a rate-distortion curve at a fixed slope.
struct SlopePoint {
    rate: f64,
    distortion: f64,
}

/// Minimizes I(S;Ŝ) + λ·E[d(S,Ŝ)] over channels p(ŝ|s) by the standard
/// alternation between the output law and the per-row channel update.
fn ba_fixed_slope(
    p_s: &[f64],
    d: &DistortionMeasure,
    lambda: f64,
    opts: &SolverOptions,
) -> Result<SlopePoint> {
    let n_s = p_s.len();
    let n_hat = d.n_hat();
    let row_min: Vec<f64> = (0..n_s)
        .map(|s| {
            (0..n_hat)
                .map(|k| d.get(s, k))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mut w = ramp_rows(n_s, n_hat);
    let mut q = vec![0.0; n_hat];
    let mut f_prev = f64::INFINITY;
    let mut last_change = f64::INFINITY;
    for _ in 0..opts.max_iters {
        // Output law induced by the current channel.
        for qk in q.iter_mut() {
            *qk = 0.0;
        }
        for (s, &ps) in p_s.iter().enumerate() {
            for k in 0..n_hat {
                q[k] += ps * w[s * n_hat + k];
            }
        }
        // Channel update; the per-row exponent shift keeps 2^(-λd) from
        // underflowing all entries at once.
        for s in 0..n_s {
            let row = &mut w[s * n_hat..(s + 1) * n_hat];
            let mut sum = 0.0;
            for (k, rv) in row.iter_mut().enumerate() {
                let t = q[k] * (-lambda * (d.get(s, k) - row_min[s])).exp2();
                *rv = t;
                sum += t;
            }
            if sum > 0.0 {
                for rv in row.iter_mut() {
                    *rv /= sum;
                }
            }
        }
        // Objective at the updated pair.
        for qk in q.iter_mut() {
            *qk = 0.0;
        }
        for (s, &ps) in p_s.iter().enumerate() {
            for k in 0..n_hat {
                q[k] += ps * w[s * n_hat + k];
            }
        }
        let mut dist = 0.0;
        let mut rate = 0.0;
        for (s, &ps) in p_s.iter().enumerate() {
            if ps == 0.0 {
                continue;
            }
            for k in 0..n_hat {
                let wv = w[s * n_hat + k];
                if wv > 0.0 {
                    dist += ps * wv * d.get(s, k);
                    rate += ps * wv * (wv / q[k]).log2();
                }
            }
        }
        let f = rate + lambda * dist;
        last_change = (f_prev - f).abs();
        if last_change <= opts.rel_tol * f.abs().max(1.0) {
            return Ok(SlopePoint {
                rate: rate.max(0.0),
                distortion: dist,
            });
        }
        f_prev = f;
    }
    Err(Error::NonConverged {
        iterations: opts.max_iters,
        last_change,
    })
}

/// Drives a fixed-slope evaluator to a distortion target: doubles λ until
/// the target is bracketed, bisects, then interpolates a chord between the
/// bracketing curve points. The evaluator's distortion must be
/// nonincreasing in λ.
fn target_by_slope(
    target: f64,
    eval: &mut dyn FnMut(f64) -> Result<(f64, f64)>,
) -> Result<f64> {
    let (r0, d0) = eval(0.0)?;
    if d0 <= target {
        return Ok(r0.max(0.0));
    }
    let mut lam_lo = 0.0;
    let mut pt_lo = (r0, d0);
    let mut lam_hi = 1.0;
    let pt_hi = loop {
        let (r, dd) = eval(lam_hi)?;
        if dd <= target {
            break (r, dd);
        }
        lam_lo = lam_hi;
        pt_lo = (r, dd);
        lam_hi *= 2.0;
        if lam_hi > 1e45 {
            return Err(Error::Infeasible {
                what: "distortion target (slope search exhausted)",
                value: target,
                minimum: dd,
            });
        }
    };
    let mut pt_hi = pt_hi;
    for _ in 0..100 {
        if pt_lo.1 - pt_hi.1 <= 1e-13 {
            break;
        }
        let mid = 0.5 * (lam_lo + lam_hi);
        let (r, dd) = eval(mid)?;
        if dd <= target {
            lam_hi = mid;
            pt_hi = (r, dd);
        } else {
            lam_lo = mid;
            pt_lo = (r, dd);
        }
    }
    let (r_hi, d_hi) = pt_hi;
    let (r_lo, d_lo) = pt_lo;
    let rate = if d_lo - d_hi > 1e-300 {
        r_hi + (r_lo - r_hi) * (target - d_hi) / (d_lo - d_hi)
    } else {
        r_hi
    };
    Ok(rate.max(0.0))
}

fn check_target(target: f64) -> Result<()> {
    if !target.is_finite() {
        return Err(Error::OutOfRange {
            what: "distortion target",
            value: target,
            range: "finite",
        });
    }
    Ok(())
}

/// Rate-distortion value R(D) of a single source under `d`.
pub fn rd_at_target(
    p_s: &[f64],
    d: &DistortionMeasure,
    target: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    validate_pmf(p_s, "source pmf")?;
    if d.n_s() != p_s.len() {
        return Err(Error::ShapeMismatch(format!(
            "distortion table covers {} source symbols, pmf has {}",
            d.n_s(),
            p_s.len()
        )));
    }
    check_target(target)?;
    let dmin = floor_distortion(p_s, d);
    if target < dmin - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "distortion target",
            value: target,
            minimum: dmin,
        });
    }
    let t = target.max(dmin);
    if t >= zero_rate_distortion(p_s, d) {
        return Ok(0.0);
    }
    target_by_slope(t, &mut |lambda| {
        let pt = ba_fixed_slope(p_s, d, lambda, opts)?;
        Ok((pt.rate, pt.distortion))
    })
}

/// Conditional rate-distortion R_{S|Z}(D): encoder and decoder both see Z.
///
/// The problem separates across z into per-slice curves; the optimal
/// distortion allocation equalizes slopes, so one multiplier drives every
/// slice and the slice points are mass-weighted sums.
pub fn cond_rd_solver(
    pair: &PairPmf,
    d: &DistortionMeasure,
    target: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    if d.n_s() != pair.nx() {
        return Err(Error::ShapeMismatch(format!(
            "distortion table covers {} source symbols, pmf has {}",
            d.n_s(),
            pair.nx()
        )));
    }
    check_target(target)?;
    let slices: Vec<(f64, Vec<f64>)> = (0..pair.ny())
        .map(|z| pair.x_given_y(z))
        .filter(|(w, _)| *w > 0.0)
        .collect();
    let dmin: f64 = slices
        .iter()
        .map(|(w, cond)| w * floor_distortion(cond, d))
        .sum();
    if target < dmin - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "distortion target",
            value: target,
            minimum: dmin,
        });
    }
    let t = target.max(dmin);
    let dmax: f64 = slices
        .iter()
        .map(|(w, cond)| w * zero_rate_distortion(cond, d))
        .sum();
    if t >= dmax {
        return Ok(0.0);
    }
    target_by_slope(t, &mut |lambda| {
        let mut rate = 0.0;
        let mut dist = 0.0;
        for (w, cond) in &slices {
            let pt = ba_fixed_slope(cond, d, lambda, opts)?;
            rate += w * pt.rate;
            dist += w * pt.distortion;
        }
        Ok((rate, dist))
    })
}

/// One fixed-slope point of the two-target joint problem: minimizes
/// I + λ1·E[d1] + λ2·E[d2] over channels from source pairs to
/// reconstruction pairs. Returns (rate, E[d1], E[d2]).
struct JointWorkspace {
    n_src: usize,
    n_rec: usize,
    p_src: Vec<f64>,
    d1v: Vec<f64>,
    d2v: Vec<f64>,
}

impl JointWorkspace {
    fn fixed_slopes(
        &self,
        lam1: f64,
        lam2: f64,
        opts: &SolverOptions,
    ) -> Result<(f64, f64, f64)> {
        let (n_src, n_rec) = (self.n_src, self.n_rec);
        let cost = |m: usize, k: usize| {
            lam1 * self.d1v[m * n_rec + k] + lam2 * self.d2v[m * n_rec + k]
        };
        let row_min: Vec<f64> = (0..n_src)
            .map(|m| (0..n_rec).map(|k| cost(m, k)).fold(f64::INFINITY, f64::min))
            .collect();
        let mut w = ramp_rows(n_src, n_rec);
        let mut q = vec![0.0; n_rec];
        let mut f_prev = f64::INFINITY;
        let mut last_change = f64::INFINITY;
        for _ in 0..opts.max_iters {
            for qk in q.iter_mut() {
                *qk = 0.0;
            }
            for (m, &pm) in self.p_src.iter().enumerate() {
                for k in 0..n_rec {
                    q[k] += pm * w[m * n_rec + k];
                }
            }
            for m in 0..n_src {
                let row = &mut w[m * n_rec..(m + 1) * n_rec];
                let mut sum = 0.0;
                for (k, rv) in row.iter_mut().enumerate() {
                    let t = q[k] * (-(cost(m, k) - row_min[m])).exp2();
                    *rv = t;
                    sum += t;
                }
                if sum > 0.0 {
                    for rv in row.iter_mut() {
                        *rv /= sum;
                    }
                }
            }
            for qk in q.iter_mut() {
                *qk = 0.0;
            }
            for (m, &pm) in self.p_src.iter().enumerate() {
                for k in 0..n_rec {
                    q[k] += pm * w[m * n_rec + k];
                }
            }
            let mut rate = 0.0;
            let mut dd1 = 0.0;
            let mut dd2 = 0.0;
            for (m, &pm) in self.p_src.iter().enumerate() {
                if pm == 0.0 {
                    continue;
                }
                for k in 0..n_rec {
                    let wv = w[m * n_rec + k];
                    if wv > 0.0 {
                        rate += pm * wv * (wv / q[k]).log2();
                        dd1 += pm * wv * self.d1v[m * n_rec + k];
                        dd2 += pm * wv * self.d2v[m * n_rec + k];
                    }
                }
            }
            let f = rate + lam1 * dd1 + lam2 * dd2;
            last_change = (f_prev - f).abs();
            if last_change <= opts.rel_tol * f.abs().max(1.0) {
                return Ok((rate.max(0.0), dd1, dd2));
            }
            f_prev = f;
        }
        Err(Error::NonConverged {
            iterations: opts.max_iters,
            last_change,
        })
    }

    /// Bisects λ1 at fixed λ2 until E[d1] meets t1, returning the point on
    /// the feasible side together with the λ1 that produced it.
    fn solve_first_coordinate(
        &self,
        lam2: f64,
        t1: f64,
        opts: &SolverOptions,
    ) -> Result<(f64, f64, f64, f64)> {
        let at = |lam1: f64| self.fixed_slopes(lam1, lam2, opts);
        let (r, dd1, dd2) = at(0.0)?;
        if dd1 <= t1 {
            return Ok((r, dd1, dd2, 0.0));
        }
        let mut lam_lo = 0.0;
        let mut lam_hi = 1.0;
        let mut hi_pt = loop {
            let (r, dd1, dd2) = at(lam_hi)?;
            if dd1 <= t1 {
                break (r, dd1, dd2, lam_hi);
            }
            lam_lo = lam_hi;
            lam_hi *= 2.0;
            if lam_hi > 1e45 {
                return Err(Error::Infeasible {
                    what: "first distortion target (slope search exhausted)",
                    value: t1,
                    minimum: dd1,
                });
            }
        };
        for _ in 0..70 {
            if lam_hi - lam_lo <= 1e-12 * lam_hi {
                break;
            }
            let mid = 0.5 * (lam_lo + lam_hi);
            let (r, dd1, dd2) = at(mid)?;
            if dd1 <= t1 {
                lam_hi = mid;
                hi_pt = (r, dd1, dd2, mid);
            } else {
                lam_lo = mid;
            }
            if (hi_pt.1 - t1).abs() <= 1e-12 {
                break;
            }
        }
        Ok(hi_pt)
    }
}

/// Joint rate-distortion R_{S1,S2}(D1, D2): one description of the pair,
/// per-source distortion targets.
///
/// Reconstructions live on the product alphabet of the two tables. The two
/// multipliers are driven by nested bisection (inner on λ1 for the first
/// target, outer on λ2 for the second); the returned rate carries the
/// Lagrangian correction for the residual target gaps, clamped at 0.
pub fn joint_rd_solver(
    pair: &PairPmf,
    d1: &DistortionMeasure,
    d2: &DistortionMeasure,
    target1: f64,
    target2: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    if d1.n_s() != pair.nx() || d2.n_s() != pair.ny() {
        return Err(Error::ShapeMismatch(format!(
            "distortion tables cover {}x{} source symbols, pmf has {}x{}",
            d1.n_s(),
            d2.n_s(),
            pair.nx(),
            pair.ny()
        )));
    }
    check_target(target1)?;
    check_target(target2)?;
    let n_src = pair.nx() * pair.ny();
    let n_rec = d1.n_hat() * d2.n_hat();
    let cells = n_src.checked_mul(n_rec).unwrap_or(usize::MAX);
    if cells > MAX_TABLE_CELLS {
        return Err(Error::AlphabetTooLarge {
            cells,
            cap: MAX_TABLE_CELLS,
        });
    }
    let p1 = pair.marginal_x();
    let p2 = pair.marginal_y();
    let dmin1 = floor_distortion(&p1, d1);
    let dmin2 = floor_distortion(&p2, d2);
    if target1 < dmin1 - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "first distortion target",
            value: target1,
            minimum: dmin1,
        });
    }
    if target2 < dmin2 - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "second distortion target",
            value: target2,
            minimum: dmin2,
        });
    }
    let t1 = target1.max(dmin1);
    let t2 = target2.max(dmin2);
    if t1 >= zero_rate_distortion(&p1, d1) && t2 >= zero_rate_distortion(&p2, d2) {
        return Ok(0.0);
    }
    let (ny, m2) = (pair.ny(), d2.n_hat());
    let mut d1v = vec![0.0; n_src * n_rec];
    let mut d2v = vec![0.0; n_src * n_rec];
    for s1 in 0..pair.nx() {
        for s2 in 0..ny {
            let m = s1 * ny + s2;
            for k1 in 0..d1.n_hat() {
                for k2 in 0..m2 {
                    let k = k1 * m2 + k2;
                    d1v[m * n_rec + k] = d1.get(s1, k1);
                    d2v[m * n_rec + k] = d2.get(s2, k2);
                }
            }
        }
    }
    let ws = JointWorkspace {
        n_src,
        n_rec,
        p_src: pair.table().to_vec(),
        d1v,
        d2v,
    };

    let finish = |r: f64, dd1: f64, dd2: f64, lam1: f64, lam2: f64| {
        (r + lam1 * (dd1 - t1) + lam2 * (dd2 - t2)).max(0.0)
    };
    let (r, dd1, dd2, lam1) = ws.solve_first_coordinate(0.0, t1, opts)?;
    if dd2 <= t2 {
        return Ok(finish(r, dd1, dd2, lam1, 0.0));
    }
    let mut lam_lo = 0.0;
    let mut lam_hi = 1.0;
    let mut hi_pt = loop {
        let (r, dd1, dd2, lam1) = ws.solve_first_coordinate(lam_hi, t1, opts)?;
        if dd2 <= t2 {
            break (r, dd1, dd2, lam1, lam_hi);
        }
        lam_lo = lam_hi;
        lam_hi *= 2.0;
        if lam_hi > 1e45 {
            return Err(Error::Infeasible {
                what: "second distortion target (slope search exhausted)",
                value: t2,
                minimum: dd2,
            });
        }
    };
    for _ in 0..70 {
        if lam_hi - lam_lo <= 1e-12 * lam_hi {
            break;
        }
        let mid = 0.5 * (lam_lo + lam_hi);
        let (r, dd1, dd2, lam1) = ws.solve_first_coordinate(mid, t1, opts)?;
        if dd2 <= t2 {
            lam_hi = mid;
            hi_pt = (r, dd1, dd2, lam1, mid);
        } else {
            lam_lo = mid;
        }
        if (hi_pt.2 - t2).abs() <= 1e-12 {
            break;
        }
    }
    let (r, dd1, dd2, lam1, lam2) = hi_pt;
    Ok(finish(r, dd1, dd2, lam1, lam2))
}

/// Conditional rate-distortion with the reconstruction forced to depend on
/// the source alone (Ŝ − S − Z holds), while rate is still measured
/// conditionally on Z.
///
/// I(Ŝ;S|Z) in the variational form over an auxiliary law r(ŝ|z) is
/// jointly convex with the channel, so the alternation reaches the global
/// minimum at each slope.
pub fn rc_rd_solver(
    pair: &PairPmf,
    d: &DistortionMeasure,
    target: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    if d.n_s() != pair.nx() {
        return Err(Error::ShapeMismatch(format!(
            "distortion table covers {} source symbols, pmf has {}",
            d.n_s(),
            pair.nx()
        )));
    }
    check_target(target)?;
    let (n_s, nz, n_hat) = (pair.nx(), pair.ny(), d.n_hat());
    let p_s = pair.marginal_x();
    let p_z = pair.marginal_y();
    let dmin = floor_distortion(&p_s, d);
    if target < dmin - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "distortion target",
            value: target,
            minimum: dmin,
        });
    }
    let t = target.max(dmin);
    if t >= zero_rate_distortion(&p_s, d) {
        return Ok(0.0);
    }
    // p(z|s) rows for the cost update.
    let mut pz_given_s = vec![0.0; n_s * nz];
    for s in 0..n_s {
        if p_s[s] > 0.0 {
            for z in 0..nz {
                pz_given_s[s * nz + z] = pair.get(s, z) / p_s[s];
            }
        }
    }
    let mut eval = |lambda: f64| -> Result<(f64, f64)> {
        let mut w = ramp_rows(n_s, n_hat);
        let mut r = vec![0.0; nz * n_hat];
        let induce = |w: &[f64], r: &mut [f64]| {
            for rv in r.iter_mut() {
                *rv = 0.0;
            }
            for z in 0..nz {
                if p_z[z] == 0.0 {
                    continue;
                }
                for s in 0..n_s {
                    let psz = pair.get(s, z);
                    if psz > 0.0 {
                        for k in 0..n_hat {
                            r[z * n_hat + k] += psz / p_z[z] * w[s * n_hat + k];
                        }
                    }
                }
            }
        };
        let mut f_prev = f64::INFINITY;
        let mut last_change = f64::INFINITY;
        for _ in 0..opts.max_iters {
            induce(&w, &mut r);
            for s in 0..n_s {
                if p_s[s] == 0.0 {
                    continue;
                }
                let mut cost = vec![0.0; n_hat];
                let mut cmin = f64::INFINITY;
                for (k, ck) in cost.iter_mut().enumerate() {
                    let mut c = lambda * d.get(s, k);
                    for z in 0..nz {
                        let pzs = pz_given_s[s * nz + z];
                        if pzs > 0.0 {
                            let rv = r[z * n_hat + k];
                            if rv > 0.0 {
                                c -= pzs * rv.log2();
                            } else {
                                c = f64::INFINITY;
                                break;
                            }
                        }
                    }
                    *ck = c;
                    cmin = cmin.min(c);
                }
                if !cmin.is_finite() {
                    // Support collapse starves every reconstruction for
                    // this symbol; keep the previous row.
                    continue;
                }
                let row = &mut w[s * n_hat..(s + 1) * n_hat];
                let mut sum = 0.0;
                for (k, rv) in row.iter_mut().enumerate() {
                    let tv = if cost[k].is_finite() {
                        (-(cost[k] - cmin)).exp2()
                    } else {
                        0.0
                    };
                    *rv = tv;
                    sum += tv;
                }
                for rv in row.iter_mut() {
                    *rv /= sum;
                }
            }
            induce(&w, &mut r);
            let mut rate = 0.0;
            let mut dist = 0.0;
            for s in 0..n_s {
                if p_s[s] == 0.0 {
                    continue;
                }
                for k in 0..n_hat {
                    let wv = w[s * n_hat + k];
                    if wv > 0.0 {
                        dist += p_s[s] * wv * d.get(s, k);
                        for z in 0..nz {
                            let psz = pair.get(s, z);
                            if psz > 0.0 {
                                rate += psz * wv * (wv / r[z * n_hat + k]).log2();
                            }
                        }
                    }
                }
            }
            let f = rate + lambda * dist;
            last_change = (f_prev - f).abs();
            if last_change <= opts.rel_tol * f.abs().max(1.0) {
                return Ok((rate.max(0.0), dist));
            }
            f_prev = f;
        }
        Err(Error::NonConverged {
            iterations: opts.max_iters,
            last_change,
        })
    };
    target_by_slope(t, &mut eval)
}

/// Wyner-Ziv rate estimate: side information Z at the decoder only, an
/// auxiliary U of cardinality `aux_card` described to the decoder, and the
/// optimal deterministic reconstruction g(u, z).
///
/// The decoder re-derivation makes the objective non-convex, so the search
/// runs `opts.restarts` deterministic restarts and returns the best value
/// found: an upper estimate of the true function, never a certificate.
pub fn wz_rd_solver(
    pair: &PairPmf,
    d: &DistortionMeasure,
    target: f64,
    aux_card: usize,
    opts: &SolverOptions,
) -> Result<f64> {
    if aux_card < 2 {
        return Err(Error::OutOfRange {
            what: "auxiliary cardinality",
            value: aux_card as f64,
            range: "[2, inf)",
        });
    }
    if d.n_s() != pair.nx() {
        return Err(Error::ShapeMismatch(format!(
            "distortion table covers {} source symbols, pmf has {}",
            d.n_s(),
            pair.nx()
        )));
    }
    check_target(target)?;
    let (n_s, nz, n_hat) = (pair.nx(), pair.ny(), d.n_hat());
    let p_s = pair.marginal_x();
    let p_z = pair.marginal_y();
    let dmin = floor_distortion(&p_s, d);
    if target < dmin - FLOOR_SLACK {
        return Err(Error::Infeasible {
            what: "distortion target",
            value: target,
            minimum: dmin,
        });
    }
    let t = target.max(dmin);
    // Zero-rate floor: U carries nothing, the decoder reconstructs from z
    // alone.
    let dmax: f64 = (0..nz)
        .map(|z| {
            (0..n_hat)
                .map(|k| (0..n_s).map(|s| pair.get(s, z) * d.get(s, k)).sum::<f64>())
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    if t >= dmax {
        return Ok(0.0);
    }
    let mut pz_given_s = vec![0.0; n_s * nz];
    for s in 0..n_s {
        if p_s[s] > 0.0 {
            for z in 0..nz {
                pz_given_s[s * nz + z] = pair.get(s, z) / p_s[s];
            }
        }
    }

    let run_restart = |w_init: &[f64]| -> Result<f64> {
        let mut eval = |lambda: f64| -> Result<(f64, f64)> {
            let mut w = w_init.to_vec();
            let mut r = vec![0.0; nz * aux_card];
            let mut d_eff = vec![0.0; n_s * aux_card];
            let mut f_prev = f64::INFINITY;
            let mut last_change = f64::INFINITY;
            for _ in 0..opts.max_iters {
                // Decoder update: best reconstruction per (u, z), ties to
                // the smallest index.
                for u in 0..aux_card {
                    for de in d_eff.iter_mut().skip(u).step_by(aux_card) {
                        *de = 0.0;
                    }
                    for z in 0..nz {
                        let mut best = (f64::INFINITY, 0usize);
                        for k in 0..n_hat {
                            let c: f64 = (0..n_s)
                                .map(|s| pair.get(s, z) * w[s * aux_card + u] * d.get(s, k))
                                .sum();
                            if c < best.0 {
                                best = (c, k);
                            }
                        }
                        let g = best.1;
                        for s in 0..n_s {
                            let pzs = pz_given_s[s * nz + z];
                            if pzs > 0.0 {
                                d_eff[s * aux_card + u] += pzs * d.get(s, g);
                            }
                        }
                    }
                }
                // Auxiliary law at the decoder.
                for rv in r.iter_mut() {
                    *rv = 0.0;
                }
                for z in 0..nz {
                    if p_z[z] == 0.0 {
                        continue;
                    }
                    for s in 0..n_s {
                        let psz = pair.get(s, z);
                        if psz > 0.0 {
                            for u in 0..aux_card {
                                r[z * aux_card + u] += psz / p_z[z] * w[s * aux_card + u];
                            }
                        }
                    }
                }
                // Channel update.
                for s in 0..n_s {
                    if p_s[s] == 0.0 {
                        continue;
                    }
                    let mut cost = vec![0.0; aux_card];
                    let mut cmin = f64::INFINITY;
                    for (u, cu) in cost.iter_mut().enumerate() {
                        let mut c = lambda * d_eff[s * aux_card + u];
                        for z in 0..nz {
                            let pzs = pz_given_s[s * nz + z];
                            if pzs > 0.0 {
                                let rv = r[z * aux_card + u];
                                if rv > 0.0 {
                                    c -= pzs * rv.log2();
                                } else {
                                    c = f64::INFINITY;
                                    break;
                                }
                            }
                        }
                        *cu = c;
                        cmin = cmin.min(c);
                    }
                    if !cmin.is_finite() {
                        continue;
                    }
                    let row = &mut w[s * aux_card..(s + 1) * aux_card];
                    let mut sum = 0.0;
                    for (u, rv) in row.iter_mut().enumerate() {
                        let tv = if cost[u].is_finite() {
                            (-(cost[u] - cmin)).exp2()
                        } else {
                            0.0
                        };
                        *rv = tv;
                        sum += tv;
                    }
                    for rv in row.iter_mut() {
                        *rv /= sum;
                    }
                }
                // Objective with the law induced by the updated channel.
                for rv in r.iter_mut() {
                    *rv = 0.0;
                }
                for z in 0..nz {
                    if p_z[z] == 0.0 {
                        continue;
                    }
                    for s in 0..n_s {
                        let psz = pair.get(s, z);
                        if psz > 0.0 {
                            for u in 0..aux_card {
                                r[z * aux_card + u] += psz / p_z[z] * w[s * aux_card + u];
                            }
                        }
                    }
                }
                let mut rate = 0.0;
                let mut dist = 0.0;
                for s in 0..n_s {
                    if p_s[s] == 0.0 {
                        continue;
                    }
                    for u in 0..aux_card {
                        let wv = w[s * aux_card + u];
                        if wv > 0.0 {
                            dist += p_s[s] * wv * d_eff[s * aux_card + u];
                            for z in 0..nz {
                                let psz = pair.get(s, z);
                                if psz > 0.0 {
                                    rate += psz * wv * (wv / r[z * aux_card + u]).log2();
                                }
                            }
                        }
                    }
                }
                let f = rate + lambda * dist;
                last_change = (f_prev - f).abs();
                if last_change <= opts.rel_tol * f.abs().max(1.0) {
                    return Ok((rate.max(0.0), dist));
                }
                f_prev = f;
            }
            Err(Error::NonConverged {
                iterations: opts.max_iters,
                last_change,
            })
        };
        target_by_slope(t, &mut eval)
    };

    let mut best: Option<f64> = None;
    let mut first_err: Option<Error> = None;
    for restart in 0..opts.restarts.max(1) {
        let w_init = if restart == 0 {
            ramp_rows(n_s, aux_card)
        } else {
            let mut rng = ChaCha20Rng::seed_from_u64(0x575a_5eed ^ restart as u64);
            let mut w = vec![0.0; n_s * aux_card];
            for s in 0..n_s {
                let row = &mut w[s * aux_card..(s + 1) * aux_card];
                let mut sum = 0.0;
                for rv in row.iter_mut() {
                    let v = 0.05 + rng.gen::<f64>();
                    *rv = v;
                    sum += v;
                }
                for rv in row.iter_mut() {
                    *rv /= sum;
                }
            }
            w
        };
        match run_restart(&w_init) {
            Ok(rate) => {
                best = Some(best.map_or(rate, |b: f64| b.min(rate)));
            }
            Err(e) => {
                if first_err.is_none() {
                    first_err = Some(e);
                }
            }
        }
    }
    match best {
        Some(rate) => Ok(rate),
        None => Err(first_err.expect("at least one restart ran")),
    }
}
