//! Command implementations behind the `macsep` binary.
//!
//! Every command validates flags, runs the corresponding library routine,
//! and emits deterministic text or CSV: numbers are printed with six
//! decimals (NaN spelled "NA"), and grid sweeps assemble output in input
//! order regardless of scheduling.

pub mod args;
pub mod checks;
pub mod discrete;
pub mod figures;
pub mod files;
pub mod svg;

use std::path::Path;

use clap::Parser;

use args::{Cli, Command, OutputFormat};
use macsep_core::bounds::{self, BoundVerdict, DominanceRelation};
use macsep_core::gaussian::rd::{classify_analysis_region, DistortionPair};
use macsep_core::gaussian::source::GaussianScenario;

/// Command failure carrying the process exit code and a stable name.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination or parameter value (exit 2).
    Usage(String),
    /// Filesystem failure (exit 3).
    Io { context: String, source: std::io::Error },
    /// Library error (exit 2 for parameter domain, 3 for file parsing,
    /// 4 for solver and model failures).
    Core(macsep_core::Error),
}

impl From<macsep_core::Error> for CliError {
    fn from(e: macsep_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Core(e) => match e {
                macsep_core::Error::OutOfRange { .. } => 2,
                macsep_core::Error::Parse { .. } => 3,
                _ => 4,
            },
        }
    }

    /// Stable name printed as the final line of error output.
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io { .. } => "Io",
            CliError::Core(e) => e.name(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Io { context, source } => format!("{context}: {source}"),
            CliError::Core(e) => e.to_string(),
        }
    }
}

/// Six-decimal fixed formatting with NaN spelled "NA".
pub fn fmt6(v: f64) -> String {
    if v.is_nan() {
        "NA".to_string()
    } else {
        format!("{v:.6}")
    }
}

/// Writes to the path, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|source| CliError::Io {
            context: format!("writing {}", p.display()),
            source,
        }),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Applies MACSEP_THREADS to the global thread pool. Without the
/// `parallel` feature the value is validated and ignored (all sweeps run
/// sequentially). The core library never reads the environment.
fn configure_threads() -> Result<(), CliError> {
    let raw = match std::env::var("MACSEP_THREADS") {
        Ok(v) => v,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(std::env::VarError::NotUnicode(_)) => {
            return Err(CliError::Usage(
                "MACSEP_THREADS must be a positive integer".into(),
            ))
        }
    };
    let threads: usize = raw.parse().map_err(|_| {
        CliError::Usage(format!("MACSEP_THREADS must be a positive integer, got '{raw}'"))
    })?;
    if threads == 0 {
        return Err(CliError::Usage(
            "MACSEP_THREADS must be a positive integer, got '0'".into(),
        ));
    }
    #[cfg(feature = "parallel")]
    {
        // Ignore "already initialized": only the first call can win, and
        // any later call would be configuring the same pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

/// Parses flags and dispatches; the binary turns the error into an exit
/// code and prints its name as the final line.
pub fn run() -> Result<(), CliError> {
    configure_threads()?;
    match Cli::parse().command {
        Command::Verdict { rho, power, d1, d2 } => cmd_verdict(rho, power, d1, d2),
        Command::Frontier { rho, power, sweep, min, max, steps, bounds, tol, out } => {
            figures::cmd_frontier(rho, power, &sweep, min, max, steps, &bounds, tol, out.as_deref())
        }
        Command::Figure { name, out } => figures::cmd_figure(&name, &out),
        Command::Regions { rho, d1, d2 } => cmd_regions(rho, d1, d2),
        Command::Dominance { rho, grid, format, out } => {
            cmd_dominance(rho, grid, format, out.as_deref())
        }
        Command::Discrete(cmd) => discrete::cmd_discrete(cmd),
        Command::Check(cmd) => checks::cmd_check(cmd),
    }
}

fn pass_str(passes: bool) -> &'static str {
    if passes {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_verdict(rho: f64, power: f64, d1: f64, d2: f64) -> Result<(), CliError> {
    let sc = GaussianScenario::new(rho, power)?;
    let dp = DistortionPair::new(d1, d2)?;
    let verdicts: Vec<BoundVerdict> = [bounds::BoundId::Cor6, bounds::BoundId::Lt, bounds::BoundId::Lw]
        .iter()
        .map(|&b| bounds::verdict(b, dp, sc))
        .collect::<Result<_, _>>()?;
    for v in &verdicts {
        println!("{}: {} margin={}", v.bound_id, pass_str(v.passes), fmt6(v.margin));
    }
    println!("rho,power,d1,d2,cor6,cor6_margin,lt,lt_margin,lw,lw_margin");
    println!(
        "{},{},{},{},{},{},{},{},{},{}",
        fmt6(rho),
        fmt6(power),
        fmt6(d1),
        fmt6(d2),
        pass_str(verdicts[0].passes),
        fmt6(verdicts[0].margin),
        pass_str(verdicts[1].passes),
        fmt6(verdicts[1].margin),
        pass_str(verdicts[2].passes),
        fmt6(verdicts[2].margin),
    );
    Ok(())
}

fn cmd_regions(rho: f64, d1: f64, d2: f64) -> Result<(), CliError> {
    let dp = DistortionPair::new(d1, d2)?;
    let region = classify_analysis_region(dp, rho)?;
    let a = 1.0 - rho;
    let side = if d1 < a && d2 >= a {
        "D2-region"
    } else if d2 < a && d1 >= a {
        "D1-region"
    } else if d1 < a && d2 < a {
        "interior"
    } else {
        "zero-rate"
    };
    println!("{region}, {side}");
    Ok(())
}

/// One dominance-grid cell: the analytic relation and the two numeric
/// second coordinates it constrains.
pub struct DominanceCell {
    pub d1: f64,
    pub d2: f64,
    pub result: bounds::DominanceResult,
    pub cond_sum: f64,
    pub lw_second: f64,
}

impl DominanceCell {
    /// Whether the numeric coordinates obey the analytic relation
    /// within `tol` bits.
    pub fn consistent(&self, rho: f64, tol: f64) -> bool {
        let diff = self.cond_sum - self.lw_second;
        match self.result.relation {
            DominanceRelation::Equal => diff.abs() <= tol,
            DominanceRelation::Cor6TighterOrEqual => diff >= -tol,
            DominanceRelation::Conditional => {
                let inside = self
                    .result
                    .condition_interval
                    .is_some_and(|(lo, hi)| rho >= lo && rho <= hi);
                if inside {
                    diff >= -tol
                } else {
                    diff <= tol
                }
            }
        }
    }
}

/// Evaluates the dominance comparison on the open grid
/// `d = (k+1)/(grid+1)`, k = 0..grid, per axis.
pub fn dominance_grid(rho: f64, grid: usize) -> Result<Vec<DominanceCell>, CliError> {
    if grid == 0 {
        return Err(CliError::Usage("--grid must be at least 1".into()));
    }
    let mut pairs = Vec::with_capacity(grid * grid);
    for i in 0..grid {
        for j in 0..grid {
            pairs.push((
                (i + 1) as f64 / (grid + 1) as f64,
                (j + 1) as f64 / (grid + 1) as f64,
            ));
        }
    }
    let cells = macsep_core::parallel::par_map(&pairs, |&(d1, d2)| -> Result<DominanceCell, macsep_core::Error> {
        let dp = DistortionPair::new(d1, d2)?;
        let result = bounds::dominance(dp, rho)?;
        let (cond_sum, lw_second) = bounds::second_coordinates(dp, rho)?;
        Ok(DominanceCell { d1, d2, result, cond_sum, lw_second })
    });
    let cells: Result<Vec<_>, _> = cells.into_iter().collect();
    Ok(cells?)
}

fn cmd_dominance(
    rho: f64,
    grid: usize,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    GaussianScenario::new(rho, 1.0)?;
    let cells = dominance_grid(rho, grid)?;
    let tol = 1e-9;
    let content = match format {
        OutputFormat::Csv => {
            let mut s = String::from("d1,d2,region,relation,cond_sum,lw_second,consistent\n");
            for c in &cells {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    fmt6(c.d1),
                    fmt6(c.d2),
                    c.result.region,
                    c.result.relation,
                    fmt6(c.cond_sum),
                    fmt6(c.lw_second),
                    c.consistent(rho, tol)
                ));
            }
            s
        }
        OutputFormat::Text => {
            let mut counts: std::collections::BTreeMap<(String, String), usize> =
                std::collections::BTreeMap::new();
            let mut mismatches = 0usize;
            for c in &cells {
                *counts
                    .entry((c.result.region.to_string(), c.result.relation.to_string()))
                    .or_default() += 1;
                if !c.consistent(rho, tol) {
                    mismatches += 1;
                }
            }
            let mut s = String::new();
            for ((region, relation), n) in counts {
                s.push_str(&format!("region={region} relation={relation} cells={n}\n"));
            }
            s.push_str(&format!("mismatches={mismatches} (tol {tol:e})\n"));
            s
        }
    };
    write_output(out, &content)
}
