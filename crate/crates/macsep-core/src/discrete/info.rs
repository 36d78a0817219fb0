//! Entropy and mutual-information primitives over flat probability tables.
//!
//! All values are in bits. The 0·log 0 = 0 convention applies throughout,
//! and results are clamped at 0 to absorb rounding in near-degenerate
//! tables.

use crate::discrete::pmf::{DistortionMeasure, PairPmf};
use crate::{Error, Result};

/// Checks that a slice is a pmf (finite, nonnegative, mass 1 within 1e-9)
/// and returns its exact sum.
pub(crate) fn validate_pmf(p: &[f64], what: &str) -> Result<f64> {
    let mut sum = 0.0;
    for &v in p {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::NonStochastic(format!(
                "{what}: entry {v} is not a finite nonnegative probability"
            )));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::NonStochastic(format!(
            "{what}: total mass {sum} differs from 1 by more than 1e-9"
        )));
    }
    Ok(sum)
}

fn xlog2x(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy H(p) in bits.
pub fn entropy(p: &[f64]) -> Result<f64> {
    validate_pmf(p, "entropy input")?;
    Ok(p.iter().map(|&v| -xlog2x(v)).sum::<f64>().max(0.0))
}

/// Mutual information I(X; Y) in bits of a joint pmf flattened row-major
/// with X as the row axis.
pub fn mutual_information(joint: &[f64], nx: usize, ny: usize) -> Result<f64> {
    if joint.len() != nx * ny {
        return Err(Error::ShapeMismatch(format!(
            "joint table has {} entries, sizes {}x{} require {}",
            joint.len(),
            nx,
            ny,
            nx * ny
        )));
    }
    validate_pmf(joint, "mutual information input")?;
    let mut px = vec![0.0; nx];
    let mut py = vec![0.0; ny];
    for x in 0..nx {
        for y in 0..ny {
            px[x] += joint[x * ny + y];
            py[y] += joint[x * ny + y];
        }
    }
    let mut mi = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            let p = joint[x * ny + y];
            if p > 0.0 {
                mi += p * (p / (px[x] * py[y])).log2();
            }
        }
    }
    Ok(mi.max(0.0))
}

/// Conditional mutual information I(X; Y | Z) in bits of a joint pmf
/// flattened row-major as (x, y, z).
pub fn conditional_mi(joint: &[f64], nx: usize, ny: usize, nz: usize) -> Result<f64> {
    if joint.len() != nx * ny * nz {
        return Err(Error::ShapeMismatch(format!(
            "joint table has {} entries, sizes {}x{}x{} require {}",
            joint.len(),
            nx,
            ny,
            nz,
            nx * ny * nz
        )));
    }
    validate_pmf(joint, "conditional mutual information input")?;
    let at = |x: usize, y: usize, z: usize| joint[(x * ny + y) * nz + z];
    let mut pz = vec![0.0; nz];
    let mut pxz = vec![0.0; nx * nz];
    let mut pyz = vec![0.0; ny * nz];
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                let p = at(x, y, z);
                pz[z] += p;
                pxz[x * nz + z] += p;
                pyz[y * nz + z] += p;
            }
        }
    }
    let mut mi = 0.0;
    for x in 0..nx {
        for y in 0..ny {
            for z in 0..nz {
                let p = at(x, y, z);
                if p > 0.0 {
                    mi += p * (p * pz[z] / (pxz[x * nz + z] * pyz[y * nz + z])).log2();
                }
            }
        }
    }
    Ok(mi.max(0.0))
}

/// Least expected distortion when reconstructing S from an observation Q:
/// for each q the decoder picks the reconstruction minimizing the
/// conditional expected distortion, and the per-q minima are averaged.
///
/// `pair` is read as (x, y) = (S, Q); `d` must cover the S alphabet.
pub fn min_expected_distortion(pair: &PairPmf, d: &DistortionMeasure) -> Result<f64> {
    if d.n_s() != pair.nx() {
        return Err(Error::ShapeMismatch(format!(
            "distortion table covers {} source symbols, pmf has {}",
            d.n_s(),
            pair.nx()
        )));
    }
    let mut total = 0.0;
    for q in 0..pair.ny() {
        let mut best = f64::INFINITY;
        for shat in 0..d.n_hat() {
            let mut cost = 0.0;
            for s in 0..pair.nx() {
                cost += pair.get(s, q) * d.get(s, shat);
            }
            best = best.min(cost);
        }
        total += best;
    }
    Ok(total)
}
