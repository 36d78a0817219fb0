//! File loading shared by the discrete and check subcommands.

use std::path::Path;

use macsep_core::discrete::{ConditionalChannel, DistortionMeasure, JointSourcePmf};

use crate::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })
}

/// Loads a source triple from rows of "s1 s2 z p".
pub fn load_triple(path: &Path) -> Result<JointSourcePmf, CliError> {
    Ok(JointSourcePmf::parse(&read_file(path)?)?)
}

/// Loads a distortion table from rows of "s shat d".
pub fn load_distortion(path: &Path) -> Result<DistortionMeasure, CliError> {
    Ok(DistortionMeasure::parse(&read_file(path)?)?)
}

/// Extracts p(z | s1, s2) from a triple, input index s1·n2 + s2.
/// Zero-mass source pairs get a uniform row; they never contribute to
/// any downstream expectation.
pub fn z_extension(pmf: &JointSourcePmf) -> Result<ConditionalChannel, CliError> {
    let (n1, n2, nz) = (pmf.n1(), pmf.n2(), pmf.nz());
    let mut rows = vec![0.0; n1 * n2 * nz];
    for s1 in 0..n1 {
        for s2 in 0..n2 {
            let mass: f64 = (0..nz).map(|z| pmf.get(s1, s2, z)).sum();
            let row = &mut rows[(s1 * n2 + s2) * nz..(s1 * n2 + s2 + 1) * nz];
            if mass > 0.0 {
                for (z, slot) in row.iter_mut().enumerate() {
                    *slot = pmf.get(s1, s2, z) / mass;
                }
            } else {
                row.fill(1.0 / nz as f64);
            }
        }
    }
    Ok(ConditionalChannel::new(n1 * n2, nz, rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z_extension_recovers_conditionals_and_fills_gaps() {
        // p(0,0,0)=0.5, p(1,1,0)=0.25, p(1,1,1)=0.25; pair (0,1) and
        // (1,0) have zero mass.
        let pmf = JointSourcePmf::new(
            2,
            2,
            2,
            vec![0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.25, 0.25],
        )
        .unwrap();
        let ch = z_extension(&pmf).unwrap();
        assert_eq!(ch.n_in(), 4);
        assert_eq!(ch.get(0, 0), 1.0);
        assert_eq!(ch.get(3, 0), 0.5);
        assert_eq!(ch.get(1, 0), 0.5);
        assert_eq!(ch.get(2, 1), 0.5);
    }
}
