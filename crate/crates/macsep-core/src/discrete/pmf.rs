//! Probability tables, distortion measures, and channels over finite
//! alphabets, with plain-text parsers for the file formats the CLI accepts.
//!
//! All constructors validate and then renormalize exactly, so downstream
//! code can rely on masses summing to 1 up to a few ulps.

use crate::{Error, Result};

/// Cap on the number of cells in any probability or distortion table.
pub const MAX_TABLE_CELLS: usize = 1_000_000;

/// Tolerance on the total mass of a user-supplied probability table.
pub const MASS_TOL: f64 = 1e-9;

fn check_cells(cells: usize) -> Result<()> {
    if cells > MAX_TABLE_CELLS {
        return Err(Error::AlphabetTooLarge {
            cells,
            cap: MAX_TABLE_CELLS,
        });
    }
    Ok(())
}

/// Validates entries and total mass, then rescales so the sum is exactly
/// the floating-point normalization of the input.
fn normalize_mass(p: &mut [f64], what: &str) -> Result<()> {
    let mut sum = 0.0;
    for (i, &v) in p.iter().enumerate() {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::NonStochastic(format!(
                "{what}: entry {i} is {v}, expected a finite nonnegative probability"
            )));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > MASS_TOL {
        return Err(Error::NonStochastic(format!(
            "{what}: total mass {sum} differs from 1 by more than {MASS_TOL}"
        )));
    }
    for v in p.iter_mut() {
        *v /= sum;
    }
    Ok(())
}

/// Joint probability table p(s1, s2, z) over three finite alphabets.
///
/// Storage is a flat row-major table indexed by (s1, s2, z). Alphabet
/// sizes are fixed at construction; every marginal is derivable.
#[derive(Debug, Clone, PartialEq)]
pub struct JointSourcePmf {
    n1: usize,
    n2: usize,
    nz: usize,
    p: Vec<f64>,
}

impl JointSourcePmf {
    /// Builds a validated pmf from a flat (s1, s2, z) row-major table.
    ///
    /// Entries must be finite and nonnegative and sum to 1 within 1e-9;
    /// the table is renormalized exactly on construction.
    pub fn new(n1: usize, n2: usize, nz: usize, mut p: Vec<f64>) -> Result<Self> {
        if n1 == 0 || n2 == 0 || nz == 0 {
            return Err(Error::NonStochastic(
                "pmf: every alphabet must have at least one symbol".into(),
            ));
        }
        let cells = n1
            .checked_mul(n2)
            .and_then(|c| c.checked_mul(nz))
            .ok_or(Error::AlphabetTooLarge {
                cells: usize::MAX,
                cap: MAX_TABLE_CELLS,
            })?;
        check_cells(cells)?;
        if p.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "pmf table has {} entries, alphabet sizes {}x{}x{} require {}",
                p.len(),
                n1,
                n2,
                nz,
                cells
            )));
        }
        normalize_mass(&mut p, "pmf")?;
        Ok(Self { n1, n2, nz, p })
    }

    /// Parses the plain-text format: one line per cell, "s1 s2 z p",
    /// where the first three fields are zero-based symbol indices.
    /// Lines starting with '#' and blank lines are skipped. Alphabet
    /// sizes are one past the largest index seen; omitted cells are 0.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, usize, usize, f64)> = Vec::new();
        let (mut n1, mut n2, mut nz) = (0usize, 0usize, 0usize);
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected 4 fields \"s1 s2 z p\", found {}", fields.len()),
                });
            }
            let parse_idx = |f: &str, name: &str| -> Result<usize> {
                f.parse::<usize>().map_err(|_| Error::Parse {
                    line: lineno,
                    message: format!("{name} index {f:?} is not a nonnegative integer"),
                })
            };
            let s1 = parse_idx(fields[0], "s1")?;
            let s2 = parse_idx(fields[1], "s2")?;
            let z = parse_idx(fields[2], "z")?;
            let pv: f64 = fields[3].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("probability {:?} is not a number", fields[3]),
            })?;
            if entries.iter().any(|&(a, b, c, _)| (a, b, c) == (s1, s2, z)) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("duplicate entry for (s1={s1}, s2={s2}, z={z})"),
                });
            }
            n1 = n1.max(s1 + 1);
            n2 = n2.max(s2 + 1);
            nz = nz.max(z + 1);
            entries.push((s1, s2, z, pv));
        }
        if entries.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no pmf entries found".into(),
            });
        }
        let cells = n1
            .checked_mul(n2)
            .and_then(|c| c.checked_mul(nz))
            .ok_or(Error::AlphabetTooLarge {
                cells: usize::MAX,
                cap: MAX_TABLE_CELLS,
            })?;
        check_cells(cells)?;
        let mut p = vec![0.0; cells];
        for (s1, s2, z, pv) in entries {
            p[(s1 * n2 + s2) * nz + z] = pv;
        }
        Self::new(n1, n2, nz, p)
    }

    /// Size of the S1 alphabet.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Size of the S2 alphabet.
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Size of the Z alphabet.
    pub fn nz(&self) -> usize {
        self.nz
    }

    /// p(s1, s2, z).
    pub fn get(&self, s1: usize, s2: usize, z: usize) -> f64 {
        self.p[(s1 * self.n2 + s2) * self.nz + z]
    }

    /// The flat (s1, s2, z) row-major table.
    pub fn table(&self) -> &[f64] {
        &self.p
    }

    /// Marginal p(s1).
    pub fn marginal_s1(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n1];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    m[s1] += self.get(s1, s2, z);
                }
            }
        }
        m
    }

    /// Marginal p(s2).
    pub fn marginal_s2(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.n2];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    m[s2] += self.get(s1, s2, z);
                }
            }
        }
        m
    }

    /// Marginal p(z).
    pub fn marginal_z(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.nz];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    m[z] += self.get(s1, s2, z);
                }
            }
        }
        m
    }

    /// Pair marginal p(s1, s2).
    pub fn s1s2(&self) -> PairPmf {
        let mut p = vec![0.0; self.n1 * self.n2];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    p[s1 * self.n2 + s2] += self.get(s1, s2, z);
                }
            }
        }
        PairPmf::already_normalized(self.n1, self.n2, p)
    }

    /// Pair marginal p(s1, z).
    pub fn s1z(&self) -> PairPmf {
        let mut p = vec![0.0; self.n1 * self.nz];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    p[s1 * self.nz + z] += self.get(s1, s2, z);
                }
            }
        }
        PairPmf::already_normalized(self.n1, self.nz, p)
    }

    /// Pair marginal p(s2, z).
    pub fn s2z(&self) -> PairPmf {
        let mut p = vec![0.0; self.n2 * self.nz];
        for s1 in 0..self.n1 {
            for s2 in 0..self.n2 {
                for z in 0..self.nz {
                    p[s2 * self.nz + z] += self.get(s1, s2, z);
                }
            }
        }
        PairPmf::already_normalized(self.n2, self.nz, p)
    }
}

/// Joint probability table p(x, y) over two finite alphabets.
///
/// The axis meaning is the caller's: rate-distortion solvers read it as
/// (source, side information), the common-part extractor as (S1, S2).
#[derive(Debug, Clone, PartialEq)]
pub struct PairPmf {
    nx: usize,
    ny: usize,
    p: Vec<f64>,
}

impl PairPmf {
    /// Builds a validated pmf from a flat (x, y) row-major table, with the
    /// same mass rules as [`JointSourcePmf::new`].
    pub fn new(nx: usize, ny: usize, mut p: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::NonStochastic(
                "pmf: every alphabet must have at least one symbol".into(),
            ));
        }
        let cells = nx.checked_mul(ny).ok_or(Error::AlphabetTooLarge {
            cells: usize::MAX,
            cap: MAX_TABLE_CELLS,
        })?;
        check_cells(cells)?;
        if p.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "pmf table has {} entries, alphabet sizes {}x{} require {}",
                p.len(),
                nx,
                ny,
                cells
            )));
        }
        normalize_mass(&mut p, "pmf")?;
        Ok(Self { nx, ny, p })
    }

    /// Internal constructor for marginals of already-validated tables.
    fn already_normalized(nx: usize, ny: usize, p: Vec<f64>) -> Self {
        Self { nx, ny, p }
    }

    /// Size of the X alphabet.
    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Size of the Y alphabet.
    pub fn ny(&self) -> usize {
        self.ny
    }

    /// p(x, y).
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.ny + y]
    }

    /// The flat (x, y) row-major table.
    pub fn table(&self) -> &[f64] {
        &self.p
    }

    /// Marginal p(x).
    pub fn marginal_x(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.nx];
        for x in 0..self.nx {
            for y in 0..self.ny {
                m[x] += self.get(x, y);
            }
        }
        m
    }

    /// Marginal p(y).
    pub fn marginal_y(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.ny];
        for x in 0..self.nx {
            for y in 0..self.ny {
                m[y] += self.get(x, y);
            }
        }
        m
    }

    /// The weight p(y) and conditional slice p(x | y) for one y.
    /// The slice is all zeros when p(y) = 0.
    pub fn x_given_y(&self, y: usize) -> (f64, Vec<f64>) {
        let mut w = 0.0;
        for x in 0..self.nx {
            w += self.get(x, y);
        }
        let mut cond = vec![0.0; self.nx];
        if w > 0.0 {
            for x in 0..self.nx {
                cond[x] = self.get(x, y) / w;
            }
        }
        (w, cond)
    }
}

/// Per-letter distortion table d(s, ŝ) ≥ 0 over source × reconstruction
/// alphabets.
#[derive(Debug, Clone, PartialEq)]
pub struct DistortionMeasure {
    n_s: usize,
    n_hat: usize,
    d: Vec<f64>,
}

impl DistortionMeasure {
    /// Builds a validated measure from a flat (s, ŝ) row-major table of
    /// finite nonnegative entries.
    pub fn new(n_s: usize, n_hat: usize, d: Vec<f64>) -> Result<Self> {
        if n_s == 0 || n_hat == 0 {
            return Err(Error::ShapeMismatch(
                "distortion table needs at least one row and one column".into(),
            ));
        }
        let cells = n_s.checked_mul(n_hat).ok_or(Error::AlphabetTooLarge {
            cells: usize::MAX,
            cap: MAX_TABLE_CELLS,
        })?;
        check_cells(cells)?;
        if d.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "distortion table has {} entries, sizes {}x{} require {}",
                d.len(),
                n_s,
                n_hat,
                cells
            )));
        }
        for &v in &d {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::OutOfRange {
                    what: "distortion entry",
                    value: v,
                    range: "[0, inf)",
                });
            }
        }
        Ok(Self { n_s, n_hat, d })
    }

    /// Hamming distortion on an alphabet of size n: 0 on the diagonal,
    /// 1 elsewhere.
    pub fn hamming(n: usize) -> Self {
        let mut d = vec![1.0; n * n];
        for s in 0..n {
            d[s * n + s] = 0.0;
        }
        Self { n_s: n, n_hat: n, d }
    }

    /// Parses the plain-text format: one line per cell, "s shat d".
    /// Lines starting with '#' and blank lines are skipped. The table must
    /// be complete: every (s, ŝ) cell up to the largest index seen.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, usize, f64)> = Vec::new();
        let (mut n_s, mut n_hat) = (0usize, 0usize);
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected 3 fields \"s shat d\", found {}", fields.len()),
                });
            }
            let s: usize = fields[0].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("s index {:?} is not a nonnegative integer", fields[0]),
            })?;
            let shat: usize = fields[1].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("shat index {:?} is not a nonnegative integer", fields[1]),
            })?;
            let dv: f64 = fields[2].parse().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("distortion {:?} is not a number", fields[2]),
            })?;
            if entries.iter().any(|&(a, b, _)| (a, b) == (s, shat)) {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("duplicate entry for (s={s}, shat={shat})"),
                });
            }
            n_s = n_s.max(s + 1);
            n_hat = n_hat.max(shat + 1);
            entries.push((s, shat, dv));
        }
        if entries.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no distortion entries found".into(),
            });
        }
        if entries.len() != n_s * n_hat {
            let mut seen = vec![false; n_s * n_hat];
            for &(s, shat, _) in &entries {
                seen[s * n_hat + shat] = true;
            }
            let missing = seen.iter().position(|&b| !b).unwrap();
            return Err(Error::Parse {
                line: 0,
                message: format!(
                    "incomplete distortion table: missing (s={}, shat={})",
                    missing / n_hat,
                    missing % n_hat
                ),
            });
        }
        let mut d = vec![0.0; n_s * n_hat];
        for (s, shat, dv) in entries {
            d[s * n_hat + shat] = dv;
        }
        Self::new(n_s, n_hat, d)
    }

    /// Size of the source alphabet.
    pub fn n_s(&self) -> usize {
        self.n_s
    }

    /// Size of the reconstruction alphabet.
    pub fn n_hat(&self) -> usize {
        self.n_hat
    }

    /// d(s, ŝ).
    pub fn get(&self, s: usize, shat: usize) -> f64 {
        self.d[s * self.n_hat + shat]
    }

    /// Source symbols with no zero-distortion reconstruction. A nonempty
    /// result usually signals a modelling slip, so callers may warn on it;
    /// the solvers accept such tables (the floor is simply positive).
    pub fn rows_without_zero(&self) -> Vec<usize> {
        (0..self.n_s)
            .filter(|&s| (0..self.n_hat).all(|k| self.get(s, k) > 0.0))
            .collect()
    }
}

/// Row-stochastic table p(out | in). Composite conditioning (for example
/// p(u | s, z)) flattens the conditioning alphabets into the row index.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalChannel {
    n_in: usize,
    n_out: usize,
    rows: Vec<f64>,
}

impl ConditionalChannel {
    /// Builds a validated channel from a flat (in, out) row-major table.
    ///
    /// Every row must sum to 1 within 1e-9; rows are renormalized exactly
    /// on construction.
    pub fn new(n_in: usize, n_out: usize, rows: Vec<f64>) -> Result<Self> {
        if n_in == 0 || n_out == 0 {
            return Err(Error::NonStochastic(
                "channel: every alphabet must have at least one symbol".into(),
            ));
        }
        let cells = n_in.checked_mul(n_out).ok_or(Error::AlphabetTooLarge {
            cells: usize::MAX,
            cap: MAX_TABLE_CELLS,
        })?;
        check_cells(cells)?;
        if rows.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "channel table has {} entries, sizes {}x{} require {}",
                rows.len(),
                n_in,
                n_out,
                cells
            )));
        }
        let mut rows = rows;
        for i in 0..n_in {
            let row = &mut rows[i * n_out..(i + 1) * n_out];
            let mut sum = 0.0;
            for &v in row.iter() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::NonStochastic(format!(
                        "channel row {i}: entry {v} is not a finite nonnegative probability"
                    )));
                }
                sum += v;
            }
            if (sum - 1.0).abs() > MASS_TOL {
                return Err(Error::NonStochastic(format!(
                    "channel row {i}: mass {sum} differs from 1 by more than {MASS_TOL}"
                )));
            }
            for v in row.iter_mut() {
                *v /= sum;
            }
        }
        Ok(Self { n_in, n_out, rows })
    }

    /// The uniform channel.
    pub fn uniform(n_in: usize, n_out: usize) -> Result<Self> {
        Self::new(n_in, n_out, vec![1.0 / n_out as f64; n_in * n_out])
    }

    /// Number of input symbols (rows).
    pub fn n_in(&self) -> usize {
        self.n_in
    }

    /// Number of output symbols (columns).
    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// p(out | in).
    pub fn get(&self, input: usize, out: usize) -> f64 {
        self.rows[input * self.n_out + out]
    }

    /// One conditional row p(· | in).
    pub fn row(&self, input: usize) -> &[f64] {
        &self.rows[input * self.n_out..(input + 1) * self.n_out]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn parse_pmf_with_comments_and_gaps() {
        let text = "# a 2x2x1 pair, one cell omitted\n1 1 0 0.5\n0 0 0 0.25\n\n0 1 0 0.25\n";
        let pmf = JointSourcePmf::parse(text).unwrap();
        assert_eq!((pmf.n1(), pmf.n2(), pmf.nz()), (2, 2, 1));
        assert_abs_diff_eq!(pmf.get(0, 0, 0), 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(pmf.get(1, 0, 0), 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(pmf.get(1, 1, 0), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn parse_pmf_rejects_bad_lines() {
        let bad_field = JointSourcePmf::parse("0 0 0 0.5\n0 x 0 0.5\n");
        assert!(matches!(bad_field, Err(Error::Parse { line: 2, .. })));

        let bad_arity = JointSourcePmf::parse("0 0 0.5\n");
        assert!(matches!(bad_arity, Err(Error::Parse { line: 1, .. })));

        let duplicate = JointSourcePmf::parse("0 0 0 0.5\n0 0 0 0.5\n");
        assert!(matches!(duplicate, Err(Error::Parse { line: 2, .. })));

        let empty = JointSourcePmf::parse("# nothing\n");
        assert!(matches!(empty, Err(Error::Parse { line: 0, .. })));

        let bad_mass = JointSourcePmf::parse("0 0 0 0.5\n1 0 0 0.4\n");
        assert!(matches!(bad_mass, Err(Error::NonStochastic(_))));
    }

    #[test]
    fn parse_pmf_enforces_cell_cap() {
        let res = JointSourcePmf::parse("0 0 0 0.5\n100 100 100 0.5\n");
        assert!(matches!(res, Err(Error::AlphabetTooLarge { .. })));
    }

    #[test]
    fn pmf_mass_tolerance_is_enforced_then_normalized() {
        let p = vec![0.5 + 4e-10, 0.5];
        let pmf = PairPmf::new(2, 1, p).unwrap();
        let total: f64 = pmf.table().iter().sum();
        assert_abs_diff_eq!(total, 1.0, epsilon = 1e-15);

        let off = PairPmf::new(2, 1, vec![0.5 + 2e-9, 0.5]);
        assert!(matches!(off, Err(Error::NonStochastic(_))));
    }

    #[test]
    fn marginals_are_consistent() {
        let pmf = JointSourcePmf::new(
            2,
            2,
            2,
            vec![0.10, 0.05, 0.20, 0.05, 0.15, 0.10, 0.05, 0.30],
        )
        .unwrap();
        let m1 = pmf.marginal_s1();
        assert_abs_diff_eq!(m1[0], 0.40, epsilon = 1e-12);
        assert_abs_diff_eq!(m1[1], 0.60, epsilon = 1e-12);
        let pair = pmf.s1s2();
        assert_abs_diff_eq!(pair.get(0, 1), 0.25, epsilon = 1e-12);
        let mz = pmf.marginal_z();
        assert_abs_diff_eq!(mz[0] + mz[1], 1.0, epsilon = 1e-12);
        let s2z = pmf.s2z();
        assert_abs_diff_eq!(s2z.get(1, 1), 0.05 + 0.30, epsilon = 1e-12);
    }

    #[test]
    fn pair_conditional_slice() {
        let pair = PairPmf::new(2, 2, vec![0.4, 0.1, 0.15, 0.35]).unwrap();
        let (w, cond) = pair.x_given_y(0);
        assert_abs_diff_eq!(w, 0.55, epsilon = 1e-12);
        assert_abs_diff_eq!(cond[0], 0.4 / 0.55, epsilon = 1e-12);
        assert_abs_diff_eq!(cond[1], 0.15 / 0.55, epsilon = 1e-12);
    }

    #[test]
    fn parse_distortion_requires_complete_table() {
        let ok = DistortionMeasure::parse("0 0 0\n0 1 1\n1 0 1\n1 1 0\n").unwrap();
        assert_eq!(ok, DistortionMeasure::hamming(2));

        let missing = DistortionMeasure::parse("0 0 0\n1 1 0\n0 1 1\n");
        assert!(matches!(missing, Err(Error::Parse { line: 0, .. })));

        let negative = DistortionMeasure::parse("0 0 -1\n");
        assert!(matches!(negative, Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn rows_without_zero_flags_positive_rows() {
        let d = DistortionMeasure::new(2, 2, vec![0.0, 1.0, 0.5, 0.2]).unwrap();
        assert_eq!(d.rows_without_zero(), vec![1]);
        assert!(DistortionMeasure::hamming(3).rows_without_zero().is_empty());
    }

    #[test]
    fn channel_rows_renormalize_exactly() {
        let ch = ConditionalChannel::new(2, 2, vec![0.3 + 1e-10, 0.7, 0.5, 0.5]).unwrap();
        for i in 0..2 {
            let sum: f64 = ch.row(i).iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-15);
        }

        let off = ConditionalChannel::new(1, 2, vec![0.6, 0.5]);
        assert!(matches!(off, Err(Error::NonStochastic(_))));
    }

    proptest! {
        #[test]
        fn normalized_tables_pass_validation(
            raw in prop::collection::vec(0.0f64..1.0, 12),
        ) {
            let sum: f64 = raw.iter().sum();
            prop_assume!(sum > 1e-3);
            let p: Vec<f64> = raw.iter().map(|v| v / sum).collect();
            let pmf = JointSourcePmf::new(2, 3, 2, p).unwrap();
            let mx: f64 = pmf.marginal_s1().iter().sum();
            prop_assert!((mx - 1.0).abs() < 1e-12);
            let pair_mass: f64 = pmf.s1s2().table().iter().sum();
            prop_assert!((pair_mass - 1.0).abs() < 1e-12);
        }
    }
}
