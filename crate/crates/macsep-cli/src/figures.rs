//! Figure presets, sweep grids, and the CSV/SVG emitters behind
//! `macsep frontier` and `macsep figure`.
//!
//! CSV is the authoritative artifact: six-decimal fixed formatting, "NA"
//! for unattainable frontier columns, rows in grid order. The SVG is a
//! convenience rendering of the same rows.

use std::path::Path;

use macsep_core::bounds::{self, BoundId};
use macsep_core::gaussian::mac;
use macsep_core::gaussian::rd::{classify_analysis_region, AnalysisRegion, DistortionPair};
use macsep_core::gaussian::source::GaussianScenario;
use macsep_core::parallel::par_map;

use crate::svg::{Canvas, Frame};
use crate::{fmt6, write_output, CliError};

/// A named parameter set: either a frontier sweep over d2 or a fixed-d1
/// scatter of bound evaluations over d2.
#[derive(Debug, Clone, Copy)]
pub enum Preset {
    Frontier { rho: f64, power: f64 },
    Scatter { rho: f64, power: f64, d1: f64 },
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Option<Preset> {
    match name {
        "fig4" => Some(Preset::Frontier { rho: 0.2, power: 10.0 }),
        "fig5" => Some(Preset::Frontier { rho: 0.5, power: 10.0 }),
        "fig8" => Some(Preset::Scatter { rho: 0.5, power: 2.0, d1: 0.14 }),
        "fig9" => Some(Preset::Scatter { rho: 0.5, power: 2.0, d1: 0.145 }),
        "fig10" => Some(Preset::Scatter { rho: 0.5, power: 2.0, d1: 0.15 }),
        "fig11" => Some(Preset::Scatter { rho: 0.5, power: 2.0, d1: 0.16 }),
        _ => None,
    }
}

/// Evenly spaced grid from `min` to `max` inclusive; the last point is
/// exactly `max` so endpoint validation never trips on rounding.
pub fn lin_grid(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    (0..steps)
        .map(|k| {
            if k == steps - 1 {
                max
            } else {
                min + (max - min) * k as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

/// The d2 grid used by the frontier presets: 96 columns over [0.05, 1].
pub fn frontier_grid() -> Vec<f64> {
    lin_grid(0.05, 1.0, 96)
}

/// The d2 grid used by the scatter presets: 201 points over [0.5, 1].
pub fn scatter_grid() -> Vec<f64> {
    lin_grid(0.5, 1.0, 201)
}

pub const FRONTIER_TOL: f64 = 1e-10;

/// One frontier sweep column: minimal passing d1 per requested bound,
/// `None` when the bound fails even at d1 = 1.
pub struct FrontierRow {
    pub d2: f64,
    pub mins: Vec<Option<f64>>,
}

/// Traces the requested frontiers over the d2 grid. Columns are
/// independent; assembly order is fixed by the grid.
pub fn frontier_rows(
    sc: GaussianScenario,
    grid: &[f64],
    bounds_list: &[BoundId],
    tol: f64,
) -> Result<Vec<FrontierRow>, macsep_core::Error> {
    let rows = par_map(grid, |&d2| -> Result<FrontierRow, macsep_core::Error> {
        let mut mins = Vec::with_capacity(bounds_list.len());
        for &b in bounds_list {
            match bounds::frontier(b, d2, sc, tol) {
                Ok(d1) => mins.push(Some(d1)),
                Err(macsep_core::Error::NotSatisfiable(_)) => mins.push(None),
                Err(e) => return Err(e),
            }
        }
        Ok(FrontierRow { d2, mins })
    });
    rows.into_iter().collect()
}

pub fn frontier_csv(rows: &[FrontierRow], bounds_list: &[BoundId]) -> String {
    let mut s = String::from("d2");
    for b in bounds_list {
        s.push_str(&format!(",{b}_min_d1"));
    }
    s.push('\n');
    for row in rows {
        s.push_str(&fmt6(row.d2));
        for m in &row.mins {
            s.push(',');
            s.push_str(&m.map_or_else(|| "NA".to_string(), fmt6));
        }
        s.push('\n');
    }
    s
}

/// One scatter point: the bound inputs and verdicts at (d1, d2).
pub struct ScatterRow {
    pub d2: f64,
    pub region: AnalysisRegion,
    pub joint: f64,
    pub cond_sum: f64,
    pub lw_second: f64,
    pub cor6_margin: f64,
    pub lt_margin: f64,
    pub lw_margin: f64,
    pub cor6_pass: bool,
    pub lt_pass: bool,
    pub lw_pass: bool,
}

/// Evaluates all three bounds at fixed d1 across the d2 grid.
pub fn scatter_rows(
    sc: GaussianScenario,
    d1: f64,
    grid: &[f64],
) -> Result<Vec<ScatterRow>, macsep_core::Error> {
    let rows = par_map(grid, |&d2| -> Result<ScatterRow, macsep_core::Error> {
        let dp = DistortionPair::new(d1, d2)?;
        let region = classify_analysis_region(dp, sc.rho)?;
        let cor6 = bounds::cor6_verdict(dp, sc)?;
        let lt = bounds::lt_verdict(dp, sc)?;
        let lw = bounds::lw_verdict(dp, sc)?;
        Ok(ScatterRow {
            d2,
            region,
            joint: cor6.lhs_point.0,
            cond_sum: cor6.lhs_point.1,
            lw_second: lw.lhs_point.1,
            cor6_margin: cor6.margin,
            lt_margin: lt.margin,
            lw_margin: lw.margin,
            cor6_pass: cor6.passes,
            lt_pass: lt.passes,
            lw_pass: lw.passes,
        })
    });
    rows.into_iter().collect()
}

pub fn scatter_csv(rows: &[ScatterRow]) -> String {
    let mut s =
        String::from("d2,region,joint_rd,sum_cond_rd,lw_second,cor6_margin,lt_margin,lw_margin\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            fmt6(r.d2),
            r.region,
            fmt6(r.joint),
            fmt6(r.cond_sum),
            fmt6(r.lw_second),
            fmt6(r.cor6_margin),
            fmt6(r.lt_margin),
            fmt6(r.lw_margin),
        ));
    }
    s
}

const COLOR_COR6: &str = "#d62728";
const COLOR_LT: &str = "#2ca02c";
const COLOR_LW: &str = "#1f77b4";

fn bound_color(b: BoundId) -> &'static str {
    match b {
        BoundId::Cor6 => COLOR_COR6,
        BoundId::Lt => COLOR_LT,
        BoundId::Lw => COLOR_LW,
    }
}

/// Renders frontier curves: one polyline per bound over (d2, min d1),
/// split wherever a column is unattainable.
pub fn frontier_svg(rows: &[FrontierRow], bounds_list: &[BoundId], title: &str) -> String {
    let mut canvas = Canvas::new(640.0, 480.0);
    let (x0, x1) = (rows.first().map_or(0.0, |r| r.d2), rows.last().map_or(1.0, |r| r.d2));
    let frame = Frame {
        x0,
        x1,
        y0: 0.0,
        y1: 1.0,
        left: 60.0,
        right: 620.0,
        top: 40.0,
        bottom: 430.0,
    };
    frame.draw_axes(&mut canvas, "d2", "min d1");
    canvas.text(320.0, 22.0, 14.0, "#000000", title);
    for (bi, &b) in bounds_list.iter().enumerate() {
        let color = bound_color(b);
        let mut segment: Vec<(f64, f64)> = Vec::new();
        for row in rows {
            match row.mins[bi] {
                Some(d1) => segment.push((frame.px(row.d2), frame.py(d1))),
                None => {
                    canvas.polyline(&segment, color, 1.5);
                    segment.clear();
                }
            }
        }
        canvas.polyline(&segment, color, 1.5);
        let ly = 40.0 + 16.0 * bi as f64;
        canvas.line(500.0, ly, 530.0, ly, color, 1.5);
        canvas.text(536.0, ly + 4.0, 12.0, "#000000", &format!("{b}"));
    }
    canvas.finish()
}

/// Renders a scatter preset: the rate-region boundary, the LT cap as a
/// dashed vertical, circles for the pair-rate points (green pass, red
/// fail), and plus marks for the common-part points (green pass, blue
/// fail).
pub fn scatter_svg(
    rows: &[ScatterRow],
    sc: GaussianScenario,
    title: &str,
) -> Result<String, macsep_core::Error> {
    let boundary = mac::trace_boundary(sc.power, 257)?;
    let lt_cap = 0.5 * (1.0 + 2.0 * sc.power * (1.0 + sc.rho)).log2();
    let x_max = boundary
        .iter()
        .map(|p| p.0)
        .chain(rows.iter().map(|r| r.joint))
        .chain(std::iter::once(lt_cap))
        .fold(0.0_f64, f64::max)
        * 1.05;
    let y_max = boundary
        .iter()
        .map(|p| p.1)
        .chain(rows.iter().map(|r| r.cond_sum))
        .fold(0.0_f64, f64::max)
        * 1.10;
    let mut canvas = Canvas::new(640.0, 480.0);
    let frame = Frame {
        x0: 0.0,
        x1: x_max,
        y0: 0.0,
        y1: y_max,
        left: 60.0,
        right: 620.0,
        top: 40.0,
        bottom: 430.0,
    };
    frame.draw_axes(&mut canvas, "sum rate (both senders)", "sum rate (conditional)");
    canvas.text(320.0, 22.0, 14.0, "#000000", title);
    let boundary_px: Vec<(f64, f64)> =
        boundary.iter().map(|&(x, y)| (frame.px(x), frame.py(y))).collect();
    canvas.polyline(&boundary_px, "#555555", 1.5);
    canvas.dashed_line(
        frame.px(lt_cap),
        frame.py(0.0),
        frame.px(lt_cap),
        frame.py(y_max),
        COLOR_LT,
        1.2,
    );
    for r in rows {
        let fill = if r.cor6_pass { COLOR_LT } else { COLOR_COR6 };
        canvas.circle(frame.px(r.joint), frame.py(r.cond_sum), 2.2, fill);
        let stroke = if r.lw_pass { COLOR_LT } else { COLOR_LW };
        canvas.plus(frame.px(r.joint), frame.py(r.lw_second), 3.2, stroke);
    }
    let legend = [
        ("#555555", "rate-region boundary"),
        (COLOR_LT, "LT cap"),
        (COLOR_COR6, "pair-rate point (fail)"),
        (COLOR_LW, "common-part point (fail)"),
    ];
    for (i, (color, label)) in legend.iter().enumerate() {
        let ly = 40.0 + 16.0 * i as f64;
        canvas.line(420.0, ly, 450.0, ly, color, 1.5);
        canvas.text(456.0, ly + 4.0, 12.0, "#000000", label);
    }
    Ok(canvas.finish())
}

fn parse_bounds(list: &str) -> Result<Vec<BoundId>, CliError> {
    let mut out = Vec::new();
    for token in list.split(',') {
        let token = token.trim();
        let b = match token {
            "cor6" => BoundId::Cor6,
            "lt" => BoundId::Lt,
            "lw" => BoundId::Lw,
            _ => {
                return Err(CliError::Usage(format!(
                    "--bounds entries must be cor6, lt, or lw, got '{token}'"
                )))
            }
        };
        if !out.contains(&b) {
            out.push(b);
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("--bounds must name at least one bound".into()));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_frontier(
    rho: f64,
    power: f64,
    sweep: &str,
    min: f64,
    max: f64,
    steps: usize,
    bounds_str: &str,
    tol: f64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    if sweep != "d2" {
        return Err(CliError::Usage(format!("--sweep supports only 'd2', got '{sweep}'")));
    }
    if steps == 0 {
        return Err(CliError::Usage("--steps must be at least 1".into()));
    }
    if !(min > 0.0 && min <= max && max <= 1.0) {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy 0 < min <= max <= 1, got [{min}, {max}]"
        )));
    }
    let bounds_list = parse_bounds(bounds_str)?;
    let sc = GaussianScenario::new(rho, power)?;
    let grid = lin_grid(min, max, steps);
    let rows = frontier_rows(sc, &grid, &bounds_list, tol)?;
    write_output(out, &frontier_csv(&rows, &bounds_list))
}

pub fn cmd_figure(name: &str, out_dir: &Path) -> Result<(), CliError> {
    let preset = preset(name).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown preset '{name}' (expected fig4, fig5, fig8, fig9, fig10, fig11)"
        ))
    })?;
    let all_bounds = [BoundId::Cor6, BoundId::Lt, BoundId::Lw];
    let (csv, svg) = match preset {
        Preset::Frontier { rho, power } => {
            let sc = GaussianScenario::new(rho, power)?;
            let rows = frontier_rows(sc, &frontier_grid(), &all_bounds, FRONTIER_TOL)?;
            let title = format!("{name}: frontier min d1 (rho={rho}, P={power})");
            (frontier_csv(&rows, &all_bounds), frontier_svg(&rows, &all_bounds, &title))
        }
        Preset::Scatter { rho, power, d1 } => {
            let sc = GaussianScenario::new(rho, power)?;
            let rows = scatter_rows(sc, d1, &scatter_grid())?;
            let title = format!("{name}: bound points (rho={rho}, P={power}, d1={d1})");
            (scatter_csv(&rows), scatter_svg(&rows, sc, &title)?)
        }
    };
    let write = |ext: &str, content: &str| -> Result<(), CliError> {
        let path = out_dir.join(format!("{name}.{ext}"));
        std::fs::write(&path, content).map_err(|source| CliError::Io {
            context: format!("writing {}", path.display()),
            source,
        })
    };
    write("csv", &csv)?;
    write("svg", &svg)
}
