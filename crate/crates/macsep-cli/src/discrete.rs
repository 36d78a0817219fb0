//! The `discrete` subcommands: finite-alphabet solvers over pmf files.

use std::path::Path;

use macsep_core::discrete::{
    cond_rd_solver, gacs_korner, rc_rd_solver, wz_rd_solver, PairPmf, SolverOptions,
};

use crate::args::DiscreteCmd;
use crate::files::{load_distortion, load_triple};
use crate::{fmt6, CliError};

/// Loads a (S, Z) pair for the per-source solvers. The triple format is
/// reused with the second source collapsed to the single symbol 0.
fn load_side_pair(path: &Path) -> Result<PairPmf, CliError> {
    let triple = load_triple(path)?;
    if triple.n2() != 1 {
        return Err(CliError::Core(macsep_core::Error::ShapeMismatch(format!(
            "per-source solvers expect rows 's 0 z p' with a collapsed middle column, \
             found {} symbols there",
            triple.n2()
        ))));
    }
    Ok(triple.s1z())
}

fn join_indices(ix: &[usize]) -> String {
    ix.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn cmd_discrete(cmd: DiscreteCmd) -> Result<(), CliError> {
    let opts = SolverOptions::default();
    match cmd {
        DiscreteCmd::Rd { pmf, distortion, target } => {
            let pair = load_side_pair(&pmf)?;
            let d = load_distortion(&distortion)?;
            let rate = cond_rd_solver(&pair, &d, target, &opts)?;
            println!("rate={}", fmt6(rate));
        }
        DiscreteCmd::Wz { pmf, distortion, target, aux_card } => {
            let pair = load_side_pair(&pmf)?;
            let d = load_distortion(&distortion)?;
            let aux = aux_card.unwrap_or(pair.nx() + 1);
            let rate = wz_rd_solver(&pair, &d, target, aux, &opts)?;
            println!("rate={}", fmt6(rate));
        }
        DiscreteCmd::Rc { pmf, distortion, target } => {
            let pair = load_side_pair(&pmf)?;
            let d = load_distortion(&distortion)?;
            let rate = rc_rd_solver(&pair, &d, target, &opts)?;
            println!("rate={}", fmt6(rate));
        }
        DiscreteCmd::Gk { pmf } => {
            let triple = load_triple(&pmf)?;
            if triple.nz() != 1 {
                return Err(CliError::Core(macsep_core::Error::ShapeMismatch(format!(
                    "gk expects rows 's1 s2 0 p' with a collapsed last column, \
                     found {} symbols there",
                    triple.nz()
                ))));
            }
            let result = gacs_korner(&triple.s1s2());
            println!("f1={}", join_indices(&result.f1));
            println!("f2={}", join_indices(&result.f2));
            println!("C_GK={}", fmt6(result.c_gk));
        }
    }
    Ok(())
}
