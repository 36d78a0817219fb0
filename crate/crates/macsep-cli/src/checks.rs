//! The `check` subcommands: run one condition system against a pmf and
//! a certificate file, print every condition with its gap, and finish
//! with the verdict line.

use macsep_core::jscc::{
    check_theorem1, check_theorem2, check_theorem3, check_theorem4, check_theorem5,
    CertificateFile, CheckMode, CheckOptions, CheckReport,
};

use crate::args::{CheckArgs, CheckCmd, ModeArg};
use crate::files::{load_distortion, load_triple, read_file, z_extension};
use crate::{fmt6, CliError};

impl From<ModeArg> for CheckMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Achievability => CheckMode::Achievability,
            ModeArg::Converse => CheckMode::Converse,
        }
    }
}

fn options_from(args: &CheckArgs) -> CheckOptions {
    let mut opts = CheckOptions::default();
    if let Some(t) = args.markov_tol {
        opts.markov_tol = t;
    }
    if let Some(t) = args.boundary_tol {
        opts.boundary_tol = t;
    }
    opts
}

fn print_report(report: &CheckReport) {
    for c in &report.conditions {
        println!(
            "{}: lhs={} rhs={} gap={}",
            c.label,
            fmt6(c.lhs),
            fmt6(c.rhs),
            fmt6(c.gap())
        );
    }
    for d in &report.distortions {
        println!("{}: achieved={} target={}", d.label, fmt6(d.achieved), fmt6(d.target));
    }
    println!("verdict: {}", report.verdict);
}

pub fn cmd_check(cmd: CheckCmd) -> Result<(), CliError> {
    let (args, mode) = match &cmd {
        CheckCmd::Theorem1 { args } | CheckCmd::Theorem5 { args } => (args, None),
        CheckCmd::Theorem2 { args, mode }
        | CheckCmd::Theorem3 { args, mode }
        | CheckCmd::Theorem4 { args, mode } => (args, Some(CheckMode::from(*mode))),
    };
    let pmf = load_triple(&args.pmf)?;
    let d1 = load_distortion(&args.d1_file)?;
    let d2 = load_distortion(&args.d2_file)?;
    let cert = CertificateFile::parse(&read_file(&args.cert)?)?;
    let targets = (args.target1, args.target2);
    let opts = options_from(args);
    let report = match (&cmd, mode) {
        (CheckCmd::Theorem1 { .. }, _) => {
            let t1 = cert.theorem1(&pmf)?;
            check_theorem1(&pmf, &t1, &d1, &d2, targets, &opts)?
        }
        (CheckCmd::Theorem2 { .. }, Some(mode)) => {
            check_theorem2(&pmf, &d1, &d2, targets, &cert.input_law()?, mode, &opts)?
        }
        (CheckCmd::Theorem3 { .. }, Some(mode)) => {
            check_theorem3(&pmf, &d1, &d2, targets, &cert.input_law()?, mode, &opts)?
        }
        (CheckCmd::Theorem4 { .. }, Some(mode)) => {
            check_theorem4(&pmf, &d1, &d2, targets, &cert.input_law()?, mode, &opts)?
        }
        (CheckCmd::Theorem5 { .. }, _) => {
            let pair = pmf.s1s2();
            let z_ext = z_extension(&pmf)?;
            check_theorem5(&pair, &z_ext, &d1, &d2, targets, &cert.input_law()?, &opts)?
        }
        _ => unreachable!("mode is always present for theorems 2-4"),
    };
    print_report(&report);
    Ok(())
}
