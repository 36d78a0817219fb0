//! Certificate types and the plain-text certificate file format.
//!
//! A certificate file is a sequence of `[SECTION]` blocks. Hybrid-coding
//! certificates use [U1], [U2], [X1MAP], [X2MAP], [G1], [G2], [MAC];
//! channel-input certificates use [MAC] and [Q]. Channel and map sections
//! hold indexed rows ("in out p" or "inputs... out"); [Q] holds dense
//! probability rows: p(q) first, then the p(x1|q) rows, then the p(x2|q)
//! rows. Blank lines and '#' comments are skipped anywhere.

use std::collections::HashSet;

use crate::discrete::info::validate_pmf;
use crate::discrete::{ConditionalChannel, DistortionMeasure, JointSourcePmf};
use crate::error::Error;
use crate::Result;
use crate::jscc::table::{checked_cells, NdTable};

const SECTION_NAMES: [&str; 8] = ["U1", "U2", "X1MAP", "X2MAP", "G1", "G2", "MAC", "Q"];

/// Deterministic map from a product of finite alphabets into one alphabet,
/// stored flat in row-major order over the inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct DetMap {
    in_dims: Vec<usize>,
    n_out: usize,
    table: Vec<usize>,
}

impl DetMap {
    /// Wraps a flat table; every entry must be below `n_out`.
    pub fn new(in_dims: Vec<usize>, n_out: usize, table: Vec<usize>) -> Result<Self> {
        if in_dims.is_empty() || n_out == 0 {
            return Err(Error::ShapeMismatch(
                "map needs at least one input axis and one output symbol".into(),
            ));
        }
        let cells = checked_cells(&in_dims)?;
        if table.len() != cells {
            return Err(Error::ShapeMismatch(format!(
                "map table has {} entries, input sizes require {}",
                table.len(),
                cells
            )));
        }
        for &v in &table {
            if v >= n_out {
                return Err(Error::ShapeMismatch(format!(
                    "map entry {v} exceeds output alphabet size {n_out}"
                )));
            }
        }
        Ok(Self {
            in_dims,
            n_out,
            table,
        })
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    /// Output symbol at a full input multi-index.
    pub fn get(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.in_dims.len());
        let mut off = 0;
        for (&i, &d) in idx.iter().zip(&self.in_dims) {
            debug_assert!(i < d);
            off = off * d + i;
        }
        self.table[off]
    }
}

/// Two-sender channel p(y | x1, x2).
#[derive(Debug, Clone, PartialEq)]
pub struct MacChannel {
    nx1: usize,
    nx2: usize,
    rows: ConditionalChannel,
}

impl MacChannel {
    /// Builds from a flat ((x1, x2), y) row-major table; every (x1, x2)
    /// row must be a probability vector.
    pub fn new(nx1: usize, nx2: usize, ny: usize, rows: Vec<f64>) -> Result<Self> {
        let n_in = nx1.checked_mul(nx2).ok_or(Error::ShapeMismatch(
            "MAC input pair alphabet overflows".into(),
        ))?;
        let rows = ConditionalChannel::new(n_in, ny, rows)?;
        Ok(Self { nx1, nx2, rows })
    }

    /// MAC whose output reveals both inputs: y = x1 * nx2 + x2.
    pub fn noiseless_pair(nx1: usize, nx2: usize) -> Result<Self> {
        let n_in = nx1.checked_mul(nx2).ok_or(Error::ShapeMismatch(
            "MAC input pair alphabet overflows".into(),
        ))?;
        let mut rows = vec![0.0; n_in * n_in];
        for i in 0..n_in {
            rows[i * n_in + i] = 1.0;
        }
        Self::new(nx1, nx2, n_in, rows)
    }

    pub fn nx1(&self) -> usize {
        self.nx1
    }

    pub fn nx2(&self) -> usize {
        self.nx2
    }

    pub fn ny(&self) -> usize {
        self.rows.n_out()
    }

    /// p(y | x1, x2).
    pub fn get(&self, x1: usize, x2: usize, y: usize) -> f64 {
        self.rows.get(x1 * self.nx2 + x2, y)
    }
}

/// Hybrid-coding certificate: source-conditioned auxiliaries, deterministic
/// channel inputs, and full decoders, to be judged against a source triple.
#[derive(Debug, Clone)]
pub struct Theorem1Certificate {
    /// Test channel p(u1 | s1).
    pub u1_given_s1: ConditionalChannel,
    /// Test channel p(u2 | s2).
    pub u2_given_s2: ConditionalChannel,
    /// Channel input map x1(u1, s1).
    pub x1_map: DetMap,
    /// Channel input map x2(u2, s2).
    pub x2_map: DetMap,
    /// Decoder ŝ1(u1, u2, y, z).
    pub g1: DetMap,
    /// Decoder ŝ2(u1, u2, y, z).
    pub g2: DetMap,
    /// The channel p(y | x1, x2).
    pub mac: MacChannel,
}

impl Theorem1Certificate {
    /// Checks that every table in the certificate lines up with the source
    /// alphabets and the distortion tables.
    pub fn validate(
        &self,
        pmf: &JointSourcePmf,
        d1: &DistortionMeasure,
        d2: &DistortionMeasure,
    ) -> Result<()> {
        let fail = |m: String| Err(Error::ShapeMismatch(m));
        if self.u1_given_s1.n_in() != pmf.n1() {
            return fail(format!(
                "[U1] conditions on {} symbols, S1 alphabet has {}",
                self.u1_given_s1.n_in(),
                pmf.n1()
            ));
        }
        if self.u2_given_s2.n_in() != pmf.n2() {
            return fail(format!(
                "[U2] conditions on {} symbols, S2 alphabet has {}",
                self.u2_given_s2.n_in(),
                pmf.n2()
            ));
        }
        if d1.n_s() != pmf.n1() || d2.n_s() != pmf.n2() {
            return fail(format!(
                "distortion tables cover {}x{} source symbols, alphabets are {}x{}",
                d1.n_s(),
                d2.n_s(),
                pmf.n1(),
                pmf.n2()
            ));
        }
        let (nu1, nu2) = (self.u1_given_s1.n_out(), self.u2_given_s2.n_out());
        if self.x1_map.in_dims() != &[nu1, pmf.n1()][..] {
            return fail(format!(
                "[X1MAP] input sizes {:?} do not match (|U1|, |S1|) = ({nu1}, {})",
                self.x1_map.in_dims(),
                pmf.n1()
            ));
        }
        if self.x2_map.in_dims() != &[nu2, pmf.n2()][..] {
            return fail(format!(
                "[X2MAP] input sizes {:?} do not match (|U2|, |S2|) = ({nu2}, {})",
                self.x2_map.in_dims(),
                pmf.n2()
            ));
        }
        if self.x1_map.n_out() > self.mac.nx1() || self.x2_map.n_out() > self.mac.nx2() {
            return fail(format!(
                "input maps produce {}x{} channel symbols, MAC accepts {}x{}",
                self.x1_map.n_out(),
                self.x2_map.n_out(),
                self.mac.nx1(),
                self.mac.nx2()
            ));
        }
        let g_dims = [nu1, nu2, self.mac.ny(), pmf.nz()];
        if self.g1.in_dims() != &g_dims[..] || self.g2.in_dims() != &g_dims[..] {
            return fail(format!(
                "decoder input sizes {:?} / {:?} do not match (|U1|, |U2|, |Y|, |Z|) = {:?}",
                self.g1.in_dims(),
                self.g2.in_dims(),
                g_dims
            ));
        }
        if self.g1.n_out() > d1.n_hat() {
            return fail(format!(
                "g1 outputs {} reconstruction symbols, first distortion table has {}",
                self.g1.n_out(),
                d1.n_hat()
            ));
        }
        if self.g2.n_out() > d2.n_hat() {
            return fail(format!(
                "g2 outputs {} reconstruction symbols, second distortion table has {}",
                self.g2.n_out(),
                d2.n_hat()
            ));
        }
        Ok(())
    }
}

/// The four channel informations a factored input law induces on a MAC.
#[derive(Debug, Clone, Copy)]
pub struct MacInformations {
    /// I(X1; Y | X2, Q) in bits.
    pub x1_to_y_given_x2q: f64,
    /// I(X2; Y | X1, Q) in bits.
    pub x2_to_y_given_x1q: f64,
    /// I(X1, X2; Y | Q) in bits.
    pub both_to_y_given_q: f64,
    /// I(X1, X2; Y) in bits.
    pub both_to_y: f64,
}

/// A MAC together with a factored input law p(q) p(x1|q) p(x2|q).
///
/// The time-sharing alphabet doubles as the common observation when the
/// conditioning variable is W instead of Q; the arithmetic is identical.
#[derive(Debug, Clone)]
pub struct ChannelInputCertificate {
    q_pmf: Vec<f64>,
    x1_given_q: ConditionalChannel,
    x2_given_q: ConditionalChannel,
    mac: MacChannel,
}

impl ChannelInputCertificate {
    pub fn new(
        q_pmf: Vec<f64>,
        x1_given_q: ConditionalChannel,
        x2_given_q: ConditionalChannel,
        mac: MacChannel,
    ) -> Result<Self> {
        let mut q_pmf = q_pmf;
        let sum = validate_pmf(&q_pmf, "p(q)")?;
        for v in &mut q_pmf {
            *v /= sum;
        }
        if x1_given_q.n_in() != q_pmf.len() || x2_given_q.n_in() != q_pmf.len() {
            return Err(Error::ShapeMismatch(format!(
                "input channels condition on {}x{} symbols, p(q) has {}",
                x1_given_q.n_in(),
                x2_given_q.n_in(),
                q_pmf.len()
            )));
        }
        if x1_given_q.n_out() != mac.nx1() || x2_given_q.n_out() != mac.nx2() {
            return Err(Error::ShapeMismatch(format!(
                "input law produces {}x{} channel symbols, MAC accepts {}x{}",
                x1_given_q.n_out(),
                x2_given_q.n_out(),
                mac.nx1(),
                mac.nx2()
            )));
        }
        Ok(Self {
            q_pmf,
            x1_given_q,
            x2_given_q,
            mac,
        })
    }

    /// The uniform law on a given time-sharing alphabet size.
    pub fn uniform(mac: MacChannel, nq: usize) -> Result<Self> {
        let x1 = ConditionalChannel::uniform(nq, mac.nx1())?;
        let x2 = ConditionalChannel::uniform(nq, mac.nx2())?;
        Self::new(vec![1.0 / nq as f64; nq], x1, x2, mac)
    }

    pub fn mac(&self) -> &MacChannel {
        &self.mac
    }

    /// Evaluates the four informations under the joint law
    /// p(q) p(x1|q) p(x2|q) p(y|x1,x2).
    pub fn mutual_informations(&self) -> Result<MacInformations> {
        let nq = self.q_pmf.len();
        let (nx1, nx2, ny) = (self.mac.nx1(), self.mac.nx2(), self.mac.ny());
        let t = NdTable::from_fn(vec![nq, nx1, nx2, ny], |idx| {
            self.q_pmf[idx[0]]
                * self.x1_given_q.get(idx[0], idx[1])
                * self.x2_given_q.get(idx[0], idx[2])
                * self.mac.get(idx[1], idx[2], idx[3])
        })?;
        Ok(MacInformations {
            x1_to_y_given_x2q: t.conditional_mi(&[1], &[3], &[2, 0]),
            x2_to_y_given_x1q: t.conditional_mi(&[2], &[3], &[1, 0]),
            both_to_y_given_q: t.conditional_mi(&[1, 2], &[3], &[0]),
            both_to_y: t.conditional_mi(&[1, 2], &[3], &[]),
        })
    }
}

/// A parsed certificate file, ready to assemble into typed certificates.
#[derive(Debug, Clone)]
pub struct CertificateFile {
    sections: Vec<(String, Vec<(usize, String)>)>,
}

impl CertificateFile {
    /// Splits the text into known `[SECTION]` blocks.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sections: Vec<(String, Vec<(usize, String)>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(body) = line.strip_prefix('[') {
                let name = body.strip_suffix(']').ok_or_else(|| Error::Parse {
                    line: lineno,
                    message: format!("malformed section header {line:?}"),
                })?;
                if !SECTION_NAMES.contains(&name) {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("unknown section [{name}]"),
                    });
                }
                if sections.iter().any(|(n, _)| n == name) {
                    return Err(Error::Parse {
                        line: lineno,
                        message: format!("duplicate section [{name}]"),
                    });
                }
                sections.push((name.to_string(), Vec::new()));
            } else {
                match sections.last_mut() {
                    Some((_, lines)) => lines.push((lineno, line.to_string())),
                    None => {
                        return Err(Error::Parse {
                            line: lineno,
                            message: "data before any [SECTION] header".into(),
                        })
                    }
                }
            }
        }
        if sections.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no certificate sections found".into(),
            });
        }
        Ok(Self { sections })
    }

    pub fn has_section(&self, name: &str) -> bool {
        self.sections.iter().any(|(n, _)| n == name)
    }

    fn section(&self, name: &str) -> Result<&[(usize, String)]> {
        self.sections
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l.as_slice())
            .ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing section [{name}]"),
            })
    }

    /// Assembles the hybrid-coding certificate; the source pmf fixes the
    /// conditioning alphabet sizes.
    pub fn theorem1(&self, pmf: &JointSourcePmf) -> Result<Theorem1Certificate> {
        let mac = mac_from(self.section("MAC")?)?;
        let u1_given_s1 = indexed_channel(self.section("U1")?, pmf.n1(), "U1")?;
        let u2_given_s2 = indexed_channel(self.section("U2")?, pmf.n2(), "U2")?;
        let (nu1, nu2) = (u1_given_s1.n_out(), u2_given_s2.n_out());
        let x1_map = indexed_map(
            self.section("X1MAP")?,
            &[nu1, pmf.n1()],
            Some(mac.nx1()),
            "X1MAP",
        )?;
        let x2_map = indexed_map(
            self.section("X2MAP")?,
            &[nu2, pmf.n2()],
            Some(mac.nx2()),
            "X2MAP",
        )?;
        let g_dims = [nu1, nu2, mac.ny(), pmf.nz()];
        let g1 = indexed_map(self.section("G1")?, &g_dims, None, "G1")?;
        let g2 = indexed_map(self.section("G2")?, &g_dims, None, "G2")?;
        Ok(Theorem1Certificate {
            u1_given_s1,
            u2_given_s2,
            x1_map,
            x2_map,
            g1,
            g2,
            mac,
        })
    }

    /// Assembles the factored input law from [MAC] and [Q].
    pub fn input_law(&self) -> Result<ChannelInputCertificate> {
        let mac = mac_from(self.section("MAC")?)?;
        let lines = self.section("Q")?;
        if lines.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "empty section [Q]".into(),
            });
        }
        let (first_line, first) = &lines[0];
        let q_pmf = dense_row(first, *first_line)?;
        let nq = q_pmf.len();
        if lines.len() != 1 + 2 * nq {
            return Err(Error::Parse {
                line: *first_line,
                message: format!(
                    "[Q] needs 1 + 2*{nq} rows (p(q), then the p(x1|q) rows, \
                     then the p(x2|q) rows), found {}",
                    lines.len()
                ),
            });
        }
        let read_rows = |offset: usize, width: usize, what: &str| -> Result<Vec<f64>> {
            let mut out = Vec::with_capacity(nq * width);
            for (lineno, line) in &lines[offset..offset + nq] {
                let row = dense_row(line, *lineno)?;
                if row.len() != width {
                    return Err(Error::Parse {
                        line: *lineno,
                        message: format!(
                            "{what} row has {} entries, MAC input alphabet has {width}",
                            row.len()
                        ),
                    });
                }
                out.extend(row);
            }
            Ok(out)
        };
        let x1_rows = read_rows(1, mac.nx1(), "p(x1|q)")?;
        let x2_rows = read_rows(1 + nq, mac.nx2(), "p(x2|q)")?;
        let x1_given_q = ConditionalChannel::new(nq, mac.nx1(), x1_rows)?;
        let x2_given_q = ConditionalChannel::new(nq, mac.nx2(), x2_rows)?;
        ChannelInputCertificate::new(q_pmf, x1_given_q, x2_given_q, mac)
    }
}

fn parse_index(tok: &str, lineno: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("{what} index {tok:?} is not a nonnegative integer"),
    })
}

fn parse_number(tok: &str, lineno: usize, what: &str) -> Result<f64> {
    tok.parse::<f64>().map_err(|_| Error::Parse {
        line: lineno,
        message: format!("{what} {tok:?} is not a number"),
    })
}

fn dense_row(line: &str, lineno: usize) -> Result<Vec<f64>> {
    line.split_whitespace()
        .map(|t| parse_number(t, lineno, "probability"))
        .collect()
}

/// Channel section of indexed rows "in out p"; omitted cells are 0 and the
/// output alphabet is one past the largest index seen.
fn indexed_channel(
    lines: &[(usize, String)],
    n_in: usize,
    what: &str,
) -> Result<ConditionalChannel> {
    let mut entries: Vec<(usize, usize, f64)> = Vec::new();
    let mut seen = HashSet::new();
    let mut n_out = 0usize;
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: *lineno,
                message: format!(
                    "expected 3 fields \"in out p\" in [{what}], found {}",
                    fields.len()
                ),
            });
        }
        let i = parse_index(fields[0], *lineno, "input")?;
        let o = parse_index(fields[1], *lineno, "output")?;
        let p = parse_number(fields[2], *lineno, "probability")?;
        if i >= n_in {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("input index {i} exceeds alphabet size {n_in} in [{what}]"),
            });
        }
        if !seen.insert((i, o)) {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("duplicate entry for (in={i}, out={o}) in [{what}]"),
            });
        }
        n_out = n_out.max(o + 1);
        entries.push((i, o, p));
    }
    if entries.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: format!("empty section [{what}]"),
        });
    }
    let mut rows = vec![0.0; n_in * n_out];
    for (i, o, p) in entries {
        rows[i * n_out + o] = p;
    }
    ConditionalChannel::new(n_in, n_out, rows)
}

/// Map section of indexed rows "inputs... out"; the table must be complete.
/// `expect_out` fixes the output alphabet; `None` infers it from the data.
fn indexed_map(
    lines: &[(usize, String)],
    in_dims: &[usize],
    expect_out: Option<usize>,
    what: &str,
) -> Result<DetMap> {
    let arity = in_dims.len() + 1;
    let cells = checked_cells(in_dims)?;
    let mut table = vec![0usize; cells];
    let mut seen = vec![false; cells];
    let mut max_out = 0usize;
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != arity {
            return Err(Error::Parse {
                line: *lineno,
                message: format!(
                    "expected {arity} fields in [{what}], found {}",
                    fields.len()
                ),
            });
        }
        let mut flat = 0usize;
        for (k, (&tok, &dim)) in fields[..arity - 1].iter().zip(in_dims).enumerate() {
            let v = parse_index(tok, *lineno, "input")?;
            if v >= dim {
                return Err(Error::Parse {
                    line: *lineno,
                    message: format!(
                        "index {v} exceeds alphabet size {dim} in field {} of [{what}]",
                        k + 1
                    ),
                });
            }
            flat = flat * dim + v;
        }
        let out = parse_index(fields[arity - 1], *lineno, "output")?;
        if let Some(n) = expect_out {
            if out >= n {
                return Err(Error::Parse {
                    line: *lineno,
                    message: format!("output index {out} exceeds alphabet size {n} in [{what}]"),
                });
            }
        }
        if seen[flat] {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("duplicate entry in [{what}]"),
            });
        }
        seen[flat] = true;
        max_out = max_out.max(out + 1);
        table[flat] = out;
    }
    if let Some(missing) = seen.iter().position(|&b| !b) {
        let mut rest = missing;
        let mut idx = vec![0usize; in_dims.len()];
        for (slot, &d) in idx.iter_mut().zip(in_dims).rev() {
            *slot = rest % d;
            rest /= d;
        }
        return Err(Error::Parse {
            line: 0,
            message: format!("incomplete map [{what}]: missing entry for {idx:?}"),
        });
    }
    DetMap::new(in_dims.to_vec(), expect_out.unwrap_or(max_out), table)
}

/// MAC section of indexed rows "x1 x2 y p"; alphabet sizes are one past
/// the largest indices seen.
fn mac_from(lines: &[(usize, String)]) -> Result<MacChannel> {
    let mut entries: Vec<(usize, usize, usize, f64)> = Vec::new();
    let mut seen = HashSet::new();
    let (mut nx1, mut nx2, mut ny) = (0usize, 0usize, 0usize);
    for (lineno, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: *lineno,
                message: format!(
                    "expected 4 fields \"x1 x2 y p\" in [MAC], found {}",
                    fields.len()
                ),
            });
        }
        let x1 = parse_index(fields[0], *lineno, "x1")?;
        let x2 = parse_index(fields[1], *lineno, "x2")?;
        let y = parse_index(fields[2], *lineno, "y")?;
        let p = parse_number(fields[3], *lineno, "probability")?;
        if !seen.insert((x1, x2, y)) {
            return Err(Error::Parse {
                line: *lineno,
                message: format!("duplicate entry for (x1={x1}, x2={x2}, y={y}) in [MAC]"),
            });
        }
        nx1 = nx1.max(x1 + 1);
        nx2 = nx2.max(x2 + 1);
        ny = ny.max(y + 1);
        entries.push((x1, x2, y, p));
    }
    if entries.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "empty section [MAC]".into(),
        });
    }
    let mut rows = vec![0.0; nx1 * nx2 * ny];
    for (x1, x2, y, p) in entries {
        rows[(x1 * nx2 + x2) * ny + y] = p;
    }
    MacChannel::new(nx1, nx2, ny, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn h2(p: f64) -> f64 {
        let xlx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
        -xlx(p) - xlx(1.0 - p)
    }

    const THEOREM1_FILE: &str = "\
# binary hybrid certificate over a noiseless pair-revealing MAC
[U1]
0 0 0.8
0 1 0.2
1 0 0.2
1 1 0.8
[U2]
0 0 1
1 1 1
[X1MAP]
0 0 0
0 1 0
1 0 1
1 1 1
[X2MAP]
0 0 0
0 1 0
1 0 1
1 1 1
[G1]
0 0 0 0 0
0 0 1 0 0
0 0 2 0 1
0 0 3 0 1
0 1 0 0 0
0 1 1 0 0
0 1 2 0 1
0 1 3 0 1
1 0 0 0 0
1 0 1 0 0
1 0 2 0 1
1 0 3 0 1
1 1 0 0 0
1 1 1 0 0
1 1 2 0 1
1 1 3 0 1
[G2]
0 0 0 0 0
0 0 1 0 1
0 0 2 0 0
0 0 3 0 1
0 1 0 0 0
0 1 1 0 1
0 1 2 0 0
0 1 3 0 1
1 0 0 0 0
1 0 1 0 1
1 0 2 0 0
1 0 3 0 1
1 1 0 0 0
1 1 1 0 1
1 1 2 0 0
1 1 3 0 1
[MAC]
0 0 0 1
0 1 1 1
1 0 2 1
1 1 3 1
";

    #[test]
    fn theorem1_file_round_trips() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.445, 0.055, 0.055, 0.445]).unwrap();
        let file = CertificateFile::parse(THEOREM1_FILE).unwrap();
        let cert = file.theorem1(&pmf).unwrap();
        assert_abs_diff_eq!(cert.u1_given_s1.get(0, 1), 0.2, epsilon = 1e-15);
        assert_eq!(cert.u2_given_s2.n_out(), 2);
        assert_eq!(cert.x1_map.get(&[1, 0]), 1);
        assert_eq!(cert.g1.get(&[0, 0, 3, 0]), 1);
        assert_eq!(cert.g2.get(&[1, 1, 1, 0]), 1);
        assert_eq!((cert.mac.nx1(), cert.mac.nx2(), cert.mac.ny()), (2, 2, 4));
        assert_abs_diff_eq!(cert.mac.get(1, 0, 2), 1.0, epsilon = 0.0);
        cert.validate(
            &pmf,
            &DistortionMeasure::hamming(2),
            &DistortionMeasure::hamming(2),
        )
        .unwrap();
    }

    #[test]
    fn input_law_file_round_trips() {
        let text = "\
[MAC]
0 0 0 1
0 1 1 1
1 0 2 1
1 1 3 1
[Q]
0.5 0.5
0.5 0.5
0.9 0.1
0.5 0.5
0.2 0.8
";
        let cert = CertificateFile::parse(text).unwrap().input_law().unwrap();
        let mi = cert.mutual_informations().unwrap();
        // The output reveals both inputs, so every information is the
        // matching conditional input entropy.
        let h_x1 = 0.5 * 1.0 + 0.5 * h2(0.9);
        let h_x2 = 0.5 * 1.0 + 0.5 * h2(0.2);
        assert_abs_diff_eq!(mi.x1_to_y_given_x2q, h_x1, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.x2_to_y_given_x1q, h_x2, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.both_to_y_given_q, h_x1 + h_x2, epsilon = 1e-12);
        // I(X1,X2;Y) = I(Q;Y) + I(X1,X2;Y|Q), and this law leaks Q
        // through the inputs.
        assert!(mi.both_to_y > mi.both_to_y_given_q + 1e-6);
    }

    #[test]
    fn uniform_law_on_noiseless_pair_mac() {
        let cert =
            ChannelInputCertificate::uniform(MacChannel::noiseless_pair(2, 2).unwrap(), 1).unwrap();
        let mi = cert.mutual_informations().unwrap();
        assert_abs_diff_eq!(mi.x1_to_y_given_x2q, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.x2_to_y_given_x1q, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.both_to_y_given_q, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.both_to_y, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn bsc_mac_matches_closed_form() {
        // Single-input channel: X2 is a dummy of size 1, Y = X1 through a
        // BSC(0.1). Uniform input gives I(X1;Y|X2,Q) = 1 - h2(0.1).
        let mac = MacChannel::new(2, 1, 2, vec![0.9, 0.1, 0.1, 0.9]).unwrap();
        let cert = ChannelInputCertificate::uniform(mac, 1).unwrap();
        let mi = cert.mutual_informations().unwrap();
        assert_abs_diff_eq!(mi.x1_to_y_given_x2q, 1.0 - h2(0.1), epsilon = 1e-12);
        assert_abs_diff_eq!(mi.x2_to_y_given_x1q, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(mi.both_to_y, 1.0 - h2(0.1), epsilon = 1e-12);
    }

    #[test]
    fn parser_rejects_malformed_files() {
        let unknown = CertificateFile::parse("[BOGUS]\n0 0 1\n");
        assert!(matches!(unknown, Err(Error::Parse { line: 1, .. })));

        let duplicate = CertificateFile::parse("[MAC]\n0 0 0 1\n[MAC]\n0 0 0 1\n");
        assert!(matches!(duplicate, Err(Error::Parse { line: 3, .. })));

        let headerless = CertificateFile::parse("0 0 0 1\n");
        assert!(matches!(headerless, Err(Error::Parse { line: 1, .. })));

        let empty = CertificateFile::parse("# nothing\n");
        assert!(matches!(empty, Err(Error::Parse { line: 0, .. })));

        let malformed = CertificateFile::parse("[MAC\n");
        assert!(matches!(malformed, Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn assembly_reports_missing_and_bad_sections() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let missing = CertificateFile::parse("[MAC]\n0 0 0 1\n")
            .unwrap()
            .theorem1(&pmf);
        assert!(matches!(missing, Err(Error::Parse { line: 0, .. })));

        // A non-stochastic [U1] row.
        let text = "[U1]\n0 0 0.5\n1 0 1\n[MAC]\n0 0 0 1\n";
        let bad_row = CertificateFile::parse(text).unwrap().theorem1(&pmf);
        assert!(matches!(bad_row, Err(Error::NonStochastic(_))));
    }

    #[test]
    fn q_section_shape_errors() {
        let short = "[MAC]\n0 0 0 1\n0 1 1 1\n1 0 1 1\n1 1 0 1\n[Q]\n0.5 0.5\n0.5 0.5\n";
        let res = CertificateFile::parse(short).unwrap().input_law();
        assert!(matches!(res, Err(Error::Parse { .. })));

        let wide = "[MAC]\n0 0 0 1\n0 1 1 1\n1 0 1 1\n1 1 0 1\n[Q]\n1.0\n0.5 0.5 0.5\n0.5 0.5\n";
        let res = CertificateFile::parse(wide).unwrap().input_law();
        assert!(matches!(res, Err(Error::Parse { .. })));
    }

    #[test]
    fn incomplete_map_is_rejected() {
        let mut text = String::from("[U1]\n0 0 1\n1 1 1\n[U2]\n0 0 1\n1 1 1\n[X1MAP]\n");
        // X1MAP misses the (1, 1) cell.
        text.push_str("0 0 0\n0 1 0\n1 0 1\n");
        text.push_str("[X2MAP]\n0 0 0\n0 1 0\n1 0 1\n1 1 1\n");
        text.push_str("[G1]\n[G2]\n[MAC]\n0 0 0 1\n0 1 1 1\n1 0 2 1\n1 1 3 1\n");
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let res = CertificateFile::parse(&text).unwrap().theorem1(&pmf);
        assert!(matches!(res, Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn det_map_rejects_out_of_range_entries() {
        let res = DetMap::new(vec![2, 2], 2, vec![0, 1, 2, 0]);
        assert!(matches!(res, Err(Error::ShapeMismatch(_))));
        let res = DetMap::new(vec![2], 2, vec![0, 1, 0]);
        assert!(matches!(res, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn validate_catches_cross_shape_slips() {
        let pmf = JointSourcePmf::new(2, 2, 1, vec![0.25; 4]).unwrap();
        let file = CertificateFile::parse(THEOREM1_FILE).unwrap();
        let cert = file.theorem1(&pmf).unwrap();
        let d2 = DistortionMeasure::hamming(2);
        // Distortion table over the wrong source alphabet.
        let d3 = DistortionMeasure::hamming(3);
        assert!(matches!(
            cert.validate(&pmf, &d3, &d2),
            Err(Error::ShapeMismatch(_))
        ));
        // Decoder output beyond the reconstruction alphabet.
        let narrow = DistortionMeasure::new(2, 1, vec![0.0, 1.0]).unwrap();
        assert!(matches!(
            cert.validate(&pmf, &narrow, &d2),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
