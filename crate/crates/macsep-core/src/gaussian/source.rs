//! Second-moment description of the source pair and its common part.

use crate::{Error, Result};

/// Second moments of a zero-mean triple `(S1, S2, Z)`.
///
/// The six entries determine the symmetric 3×3 moment matrix, which must be
/// positive semidefinite (validated with eigenvalue floor `-1e-12` relative
/// to the largest diagonal entry).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTriple {
    pub m_s1s1: f64,
    pub m_s2s2: f64,
    pub m_zz: f64,
    pub m_s1s2: f64,
    pub m_s1z: f64,
    pub m_s2z: f64,
}

/// Source correlation and per-sender channel power for one experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianScenario {
    /// Source correlation, in `[0, 1)`.
    pub rho: f64,
    /// Per-sender transmit power `P > 0` (unit channel noise variance).
    pub power: f64,
}

impl GaussianScenario {
    pub fn new(rho: f64, power: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&rho) {
            return Err(Error::OutOfRange { what: "rho", value: rho, range: "[0, 1)" });
        }
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::OutOfRange { what: "power", value: power, range: "(0, inf)" });
        }
        Ok(Self { rho, power })
    }
}

/// Coefficients of the decomposition `S_j = z_coeff·Z + noise_coeff·N_j`
/// with `Z, N1, N2` independent standard Gaussians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CommonPartDecomposition {
    pub z_coeff: f64,
    pub noise_coeff: f64,
}

impl CommonPartDecomposition {
    /// Moment matrix of `(S1, S2, Z)` induced by the decomposition.
    pub fn triple(&self) -> GaussianTriple {
        let rho = self.z_coeff * self.z_coeff;
        GaussianTriple {
            m_s1s1: rho + self.noise_coeff * self.noise_coeff,
            m_s2s2: rho + self.noise_coeff * self.noise_coeff,
            m_zz: 1.0,
            m_s1s2: rho,
            m_s1z: self.z_coeff,
            m_s2z: self.z_coeff,
        }
    }
}

/// Decomposition of the unit-variance symmetric pair with correlation `ρ`
/// into a shared part `√ρ·Z` plus independent noises `√(1−ρ)·N_j`.
pub fn canonical_decomposition(rho: f64) -> Result<CommonPartDecomposition> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::OutOfRange { what: "rho", value: rho, range: "[0, 1)" });
    }
    Ok(CommonPartDecomposition { z_coeff: rho.sqrt(), noise_coeff: (1.0 - rho).sqrt() })
}

/// Wyner common information of the symmetric pair: `½·log2((1+ρ)/(1−ρ))` bits.
///
/// Equals `I(S1,S2; Z)` under the canonical decomposition, which is the
/// minimizer over variables making the pair conditionally independent.
pub fn wyner_ci(rho: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&rho) {
        return Err(Error::OutOfRange { what: "rho", value: rho, range: "[0, 1)" });
    }
    Ok(0.5 * ((1.0 + rho) / (1.0 - rho)).log2())
}

impl GaussianTriple {
    /// Validates symmetry constraints of the moment matrix: finite entries,
    /// nonnegative diagonal, and minimum eigenvalue `≥ -1e-12·max_diag`.
    pub fn new(
        m_s1s1: f64,
        m_s2s2: f64,
        m_zz: f64,
        m_s1s2: f64,
        m_s1z: f64,
        m_s2z: f64,
    ) -> Result<Self> {
        let t = Self { m_s1s1, m_s2s2, m_zz, m_s1s2, m_s1z, m_s2z };
        let entries = [m_s1s1, m_s2s2, m_zz, m_s1s2, m_s1z, m_s2z];
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(Error::OutOfRange {
                what: "moment entry",
                value: f64::NAN,
                range: "finite",
            });
        }
        let scale = m_s1s1.max(m_s2s2).max(m_zz).max(1e-300);
        let floor = -1e-12 * scale;
        let min_eig = t.min_eigenvalue();
        if min_eig < floor {
            return Err(Error::OutOfRange {
                what: "min eigenvalue of moment matrix",
                value: min_eig,
                range: ">= -1e-12 (relative)",
            });
        }
        Ok(t)
    }

    /// Smallest eigenvalue of the symmetric moment matrix, via the
    /// trigonometric closed form for symmetric 3×3 matrices.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a11, a22, a33) = (self.m_s1s1, self.m_s2s2, self.m_zz);
        let (a12, a13, a23) = (self.m_s1s2, self.m_s1z, self.m_s2z);
        let p1 = a12 * a12 + a13 * a13 + a23 * a23;
        if p1 == 0.0 {
            return a11.min(a22).min(a33);
        }
        let q = (a11 + a22 + a33) / 3.0;
        let p2 = (a11 - q).powi(2) + (a22 - q).powi(2) + (a33 - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        // B = (A - q·I)/p has eigenvalues in [-2, 2]; det(B)/2 ∈ [-1, 1].
        let (b11, b22, b33) = ((a11 - q) / p, (a22 - q) / p, (a33 - q) / p);
        let (b12, b13, b23) = (a12 / p, a13 / p, a23 / p);
        let det_b = b11 * (b22 * b33 - b23 * b23) - b12 * (b12 * b33 - b23 * b13)
            + b13 * (b12 * b23 - b22 * b13);
        let r = (det_b / 2.0).clamp(-1.0, 1.0);
        // φ ∈ [0, π/3], so cos(φ + 2π/3) ∈ [-1, -1/2] picks the smallest of
        // the three eigenvalues q + 2p·cos(φ + 2πk/3).
        let phi = r.acos() / 3.0;
        q + 2.0 * p * (phi + 2.0 * std::f64::consts::FRAC_PI_3).cos()
    }

    /// Determinant of the full 3×3 moment matrix.
    pub fn det(&self) -> f64 {
        let (a11, a22, a33) = (self.m_s1s1, self.m_s2s2, self.m_zz);
        let (a12, a13, a23) = (self.m_s1s2, self.m_s1z, self.m_s2z);
        a11 * (a22 * a33 - a23 * a23) - a12 * (a12 * a33 - a23 * a13)
            + a13 * (a12 * a23 - a22 * a13)
    }

    /// Tests the Markov chain `S1 − Z − S2` through three moment conditions.
    ///
    /// Returns the verdict (all residuals within `tol`) together with the
    /// raw residuals, in order:
    /// 1. partial cross-correlation of `S1` and `S2` given `Z`,
    /// 2. difference between the direct and the two-step regression
    ///    coefficient of `S1` on `Z`,
    /// 3. difference between the explained variances of the two regressions.
    ///
    /// Errors with [`Error::DegenerateConditioning`] when `E[Z²] ≤ 0` or the
    /// `(S2, Z)` moment matrix is singular (relative determinant `≤ 1e-12`).
    pub fn markov_check(&self, tol: f64) -> Result<(bool, [f64; 3])> {
        let (m22, mzz) = (self.m_s2s2, self.m_zz);
        let (m12, m1z, m2z) = (self.m_s1s2, self.m_s1z, self.m_s2z);
        if mzz <= 0.0 {
            return Err(Error::DegenerateConditioning("E[Z^2] is not positive"));
        }
        let det = m22 * mzz - m2z * m2z;
        if det <= 1e-12 * m22 * mzz {
            return Err(Error::DegenerateConditioning(
                "(S2, Z) moment matrix singular within tolerance",
            ));
        }
        let r1 = (m12 * mzz - m1z * m2z) / det;
        let r2 = m1z / mzz - (m1z * m22 - m12 * m2z) / det;
        let r3 = m1z * m1z / mzz
            - (m12 * m12 * mzz + m1z * m1z * m22 - 2.0 * m12 * m1z * m2z) / det;
        let ok = r1.abs() <= tol && r2.abs() <= tol && r3.abs() <= tol;
        Ok((ok, [r1, r2, r3]))
    }
}
