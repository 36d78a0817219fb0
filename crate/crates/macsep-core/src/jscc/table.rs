//! Dense n-dimensional probability tables.
//!
//! Joint laws over several finite alphabets are stored flat in row-major
//! order (last axis fastest). All information quantities reduce to sums
//! over cells of a table and its marginals, so the only operations needed
//! are cell access, marginalization onto an ordered axis subset, entropy,
//! and conditional mutual information between axis groups.

use crate::discrete::MAX_TABLE_CELLS;
use crate::error::Error;
use crate::Result;

/// A joint pmf over the product of finitely many alphabets.
#[derive(Debug, Clone)]
pub struct NdTable {
    dims: Vec<usize>,
    p: Vec<f64>,
}

fn xlog2x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.log2()
    } else {
        0.0
    }
}

/// Checked product of axis sizes, capped at `MAX_TABLE_CELLS`.
pub(crate) fn checked_cells(dims: &[usize]) -> Result<usize> {
    let mut cells: usize = 1;
    for &d in dims {
        if d == 0 {
            return Err(Error::ShapeMismatch("axis of size zero".into()));
        }
        cells = cells
            .checked_mul(d)
            .filter(|&c| c <= MAX_TABLE_CELLS)
            .ok_or(Error::AlphabetTooLarge {
                cells: usize::MAX,
                cap: MAX_TABLE_CELLS,
            })?;
    }
    Ok(cells)
}

impl NdTable {
    /// Wraps a flat table. Cell count is capped, entries must be finite
    /// and nonnegative, and total mass must be 1 within 1e-9; the table
    /// is then renormalized exactly.
    pub fn new(dims: Vec<usize>, mut p: Vec<f64>) -> Result<Self> {
        let cells = checked_cells(&dims)?;
        if p.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "table has {} entries, dimensions require {}",
                p.len(),
                cells
            )));
        }
        let mut mass = 0.0;
        for &v in &p {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OutOfRange {
                    what: "probability entry",
                    value: v,
                    range: "[0, 1]",
                });
            }
            mass += v;
        }
        if (mass - 1.0).abs() > 1e-9 {
            return Err(Error::NonStochastic(format!(
                "joint table mass {mass} is not 1"
            )));
        }
        for v in &mut p {
            *v /= mass;
        }
        Ok(NdTable { dims, p })
    }

    /// Builds a table by evaluating `f` on every multi-index.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let cells = checked_cells(&dims)?;
        let mut p = vec![0.0; cells];
        let mut idx = vec![0usize; dims.len()];
        for (flat, slot) in p.iter_mut().enumerate() {
            decompose(&dims, flat, &mut idx);
            *slot = f(&idx);
        }
        NdTable::new(dims, p)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn table(&self) -> &[f64] {
        &self.p
    }

    /// Cell probability at a full multi-index.
    pub fn at(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for (&i, &d) in idx.iter().zip(&self.dims) {
            debug_assert!(i < d);
            off = off * d + i;
        }
        self.p[off]
    }

    /// Marginal onto the listed axes, in the listed order. An empty list
    /// yields the zero-axis table holding the total mass.
    pub fn marginal(&self, keep: &[usize]) -> NdTable {
        let out_dims: Vec<usize> = keep.iter().map(|&a| self.dims[a]).collect();
        let mut out = vec![0.0; out_dims.iter().product()];
        let mut idx = vec![0usize; self.dims.len()];
        for (flat, &pv) in self.p.iter().enumerate() {
            if pv != 0.0 {
                decompose(&self.dims, flat, &mut idx);
                out[project(&idx, keep, &self.dims)] += pv;
            }
        }
        NdTable {
            dims: out_dims,
            p: out,
        }
    }

    /// Entropy in bits of the marginal on the listed axes.
    pub fn entropy_of(&self, axes: &[usize]) -> f64 {
        let m = self.marginal(axes);
        let h: f64 = -m.p.iter().copied().map(xlog2x).sum::<f64>();
        h.max(0.0)
    }

    /// Visits every cell with nonzero probability.
    pub fn for_each_nonzero(&self, mut f: impl FnMut(&[usize], f64)) {
        let mut idx = vec![0usize; self.dims.len()];
        for (flat, &pv) in self.p.iter().enumerate() {
            if pv > 0.0 {
                decompose(&self.dims, flat, &mut idx);
                f(&idx, pv);
            }
        }
    }

    /// I(A; B | C) in bits, where A, B, C are disjoint axis groups.
    /// An empty `c` gives the unconditional mutual information.
    pub fn conditional_mi(&self, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
        let mut seen = vec![false; self.dims.len()];
        for &axis in a.iter().chain(b).chain(c) {
            assert!(axis < self.dims.len(), "axis {axis} out of range");
            assert!(!seen[axis], "axis {axis} appears in two groups");
            seen[axis] = true;
        }
        let abc: Vec<usize> = a.iter().chain(b).chain(c).copied().collect();
        let m = self.marginal(&abc);
        let (la, lb, lc) = (a.len(), b.len(), c.len());
        let pos_ac: Vec<usize> = (0..la).chain(la + lb..la + lb + lc).collect();
        let pos_bc: Vec<usize> = (la..la + lb + lc).collect();
        let pos_c: Vec<usize> = (la + lb..la + lb + lc).collect();
        let m_ac = m.marginal(&pos_ac);
        let m_bc = m.marginal(&pos_bc);
        let m_c = m.marginal(&pos_c);
        let mut idx = vec![0usize; m.dims.len()];
        let mut mi = 0.0;
        for (flat, &pv) in m.p.iter().enumerate() {
            if pv > 0.0 {
                decompose(&m.dims, flat, &mut idx);
                let pac = m_ac.p[project(&idx, &pos_ac, &m.dims)];
                let pbc = m_bc.p[project(&idx, &pos_bc, &m.dims)];
                let pc = m_c.p[project(&idx, &pos_c, &m.dims)];
                mi += pv * (pv * pc / (pac * pbc)).log2();
            }
        }
        mi.max(0.0)
    }
}

/// Row-major multi-index of a flat offset.
fn decompose(dims: &[usize], mut flat: usize, idx: &mut [usize]) {
    for (slot, &d) in idx.iter_mut().zip(dims).rev() {
        *slot = flat % d;
        flat /= d;
    }
}

/// Flat offset of `idx` projected onto the axes in `pos`, in order.
fn project(idx: &[usize], pos: &[usize], src_dims: &[usize]) -> usize {
    let mut off = 0;
    for &p in pos {
        off = off * src_dims[p] + idx[p];
    }
    off
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::{conditional_mi, mutual_information};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn h2(p: f64) -> f64 {
        -xlog2x(p) - xlog2x(1.0 - p)
    }

    #[test]
    fn marginals_match_hand_sums() {
        // 2 x 3 x 2 table with distinct entries.
        let raw: Vec<f64> = (1..=12).map(|k| k as f64 / 78.0).collect();
        let t = NdTable::new(vec![2, 3, 2], raw.clone()).unwrap();
        let m0 = t.marginal(&[0]);
        assert_abs_diff_eq!(m0.at(&[0]), raw[..6].iter().sum(), epsilon = 1e-15);
        assert_abs_diff_eq!(m0.at(&[1]), raw[6..].iter().sum(), epsilon = 1e-15);
        let m12 = t.marginal(&[1, 2]);
        assert_abs_diff_eq!(m12.at(&[2, 1]), raw[5] + raw[11], epsilon = 1e-15);
        // Permuted keep order transposes the marginal.
        let m21 = t.marginal(&[2, 1]);
        assert_abs_diff_eq!(m21.at(&[1, 2]), m12.at(&[2, 1]), epsilon = 0.0);
        // Empty keep leaves the total mass.
        assert_abs_diff_eq!(t.marginal(&[]).table()[0], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn entropy_and_mi_match_flat_routines() {
        // S1 and S2 conditionally independent given a planted Z.
        let pz = [0.3, 0.7];
        let ps1_z = [[0.9, 0.1], [0.2, 0.8]];
        let ps2_z = [[0.6, 0.4], [0.1, 0.9]];
        let t = NdTable::from_fn(vec![2, 2, 2], |idx| {
            pz[idx[2]] * ps1_z[idx[2]][idx[0]] * ps2_z[idx[2]][idx[1]]
        })
        .unwrap();
        // Entropy of the Z marginal.
        assert_abs_diff_eq!(t.entropy_of(&[2]), h2(0.3), epsilon = 1e-12);
        // Unconditional MI against the pairwise routine.
        let m01 = t.marginal(&[0, 1]);
        assert_abs_diff_eq!(
            t.conditional_mi(&[0], &[1], &[]),
            mutual_information(m01.table(), 2, 2).unwrap(),
            epsilon = 1e-12
        );
        // Conditional MI against the three-axis routine (same layout).
        assert_abs_diff_eq!(
            t.conditional_mi(&[0], &[1], &[2]),
            conditional_mi(t.table(), 2, 2, 2).unwrap(),
            epsilon = 1e-12
        );
        // Conditioning on the common cause removes all dependence.
        assert_abs_diff_eq!(t.conditional_mi(&[0], &[1], &[2]), 0.0, epsilon = 1e-12);
        assert!(t.conditional_mi(&[0], &[1], &[]) > 0.05);
    }

    #[test]
    fn grouped_axes_match_flattened_pair() {
        // I((A,B); C) computed with a grouped axis pair must match the
        // pairwise routine on the flattened (A,B) alphabet.
        let raw: Vec<f64> = vec![
            0.10, 0.02, 0.03, 0.15, 0.05, 0.05, 0.20, 0.01, 0.04, 0.06, 0.09, 0.20,
        ];
        let t = NdTable::new(vec![2, 3, 2], raw.clone()).unwrap();
        let flat_pair = NdTable::new(vec![6, 2], raw).unwrap();
        assert_abs_diff_eq!(
            t.conditional_mi(&[0, 1], &[2], &[]),
            mutual_information(flat_pair.table(), 6, 2).unwrap(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn oversized_tables_are_rejected() {
        let err = NdTable::from_fn(vec![101, 101, 101], |_| 0.0).unwrap_err();
        assert!(matches!(err, Error::AlphabetTooLarge { .. }));
    }

    #[test]
    fn bad_mass_and_shape_are_rejected() {
        assert!(matches!(
            NdTable::new(vec![2, 2], vec![0.25; 3]).unwrap_err(),
            Error::ShapeMismatch(_)
        ));
        assert!(matches!(
            NdTable::new(vec![2], vec![0.6, 0.5]).unwrap_err(),
            Error::NonStochastic(_)
        ));
        assert!(matches!(
            NdTable::new(vec![2], vec![-0.1, 1.1]).unwrap_err(),
            Error::OutOfRange { .. }
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// Chain rule: I(A; B, C) = I(A; C) + I(A; B | C).
        #[test]
        fn chain_rule_holds(weights in proptest::collection::vec(0.01f64..1.0, 8)) {
            let total: f64 = weights.iter().sum();
            let p: Vec<f64> = weights.iter().map(|w| w / total).collect();
            let t = NdTable::new(vec![2, 2, 2], p).unwrap();
            let joint = t.conditional_mi(&[0], &[1, 2], &[]);
            let split = t.conditional_mi(&[0], &[2], &[]) + t.conditional_mi(&[0], &[1], &[2]);
            prop_assert!((joint - split).abs() < 1e-12);
        }
    }
}
