//! CSV and text outputs of a run.
//!
//! Floats are written as `{:.16e}` (17 significant digits, round-trippable),
//! with negative zero folded to zero so the files are byte-stable.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::dynamics::TimeStep;
use crate::error::Result;
use crate::run::RunResult;
use crate::spectral::DealiasRule;

pub const DIAGNOSTICS_HEADER: &str =
    "t,mass,l2,max_u,min_u,min_slope,bkm_integral,h3,tail_fraction";

pub(crate) fn float(v: f64) -> String {
    format!("{:.16e}", v + 0.0)
}

/// Compact decimal label for file names: `0`, `0.1`, `1.25`.
pub fn time_label(t: f64) -> String {
    let s = format!("{:.12}", t + 0.0);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn diagnostics_csv(result: &RunResult) -> String {
    let mut out = String::with_capacity(200 * result.records.len());
    out.push_str(DIAGNOSTICS_HEADER);
    out.push('\n');
    for r in &result.records {
        let row = [
            r.t,
            r.mass,
            r.l2,
            r.max_u,
            r.min_u,
            r.min_slope,
            r.bkm_integral,
            r.h3,
            r.tail_fraction,
        ]
        .map(float)
        .join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn snapshot_csv(result: &RunResult, index: usize) -> String {
    let snap = &result.snapshots[index];
    let mut out = String::from("x,u\n");
    for (x, u) in result.grid.nodes().iter().zip(&snap.values) {
        let _ = writeln!(out, "{},{}", float(*x), float(*u));
    }
    out
}

fn optional(v: Option<f64>) -> String {
    v.map(float).unwrap_or_else(|| "none".into())
}

pub fn report_text(result: &RunResult, cfg: &RunConfig) -> String {
    let p = &cfg.params;
    let rep = &result.report;
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", cfg.n);
    let _ = writeln!(s, "gamma = {}", p.gamma);
    let _ = writeln!(s, "alpha = {}", p.alpha);
    let _ = writeln!(
        s,
        "dt = {}",
        match p.dt {
            TimeStep::Auto => "auto".to_string(),
            TimeStep::Fixed(dt) => dt.to_string(),
        }
    );
    let _ = writeln!(s, "t_final = {}", p.t_final);
    let _ = writeln!(s, "ic = {}", cfg.ic.describe());
    if let crate::oracles::InitialCondition::RandomBand(band) = &cfg.ic {
        let _ = writeln!(s, "random_generator = splitmix64");
        let _ = writeln!(s, "random_seed = {}", band.seed);
    }
    let _ = writeln!(
        s,
        "dealias = {}",
        match p.dealias {
            DealiasRule::Off => "off",
            DealiasRule::TwoThirds => "two-thirds",
        }
    );
    let _ = writeln!(s, "linear_only = {}", p.linear_only);
    let _ = writeln!(s, "detect_blowup = {}", cfg.detect_blowup);
    let _ = writeln!(s, "slope_limit = {}", cfg.thresholds.slope_limit);
    let _ = writeln!(s, "tail_limit = {}", cfg.thresholds.tail_limit);
    let _ = writeln!(s);
    let _ = writeln!(s, "status = {}", result.status.as_str());
    let _ = writeln!(s, "steps = {}", result.steps());
    let _ = writeln!(s, "final_t = {}", float(result.final_record().t));
    let label = if p.gamma == 0.0 || p.nonlinear_only {
        "predicted_t_star"
    } else {
        "predicted_t_star (inviscid prediction)"
    };
    let _ = writeln!(s, "{label} = {}", optional(rep.predicted_t_star));
    let _ = writeln!(s, "detected = {}", rep.detected);
    let _ = writeln!(s, "detected_t = {}", optional(rep.detected_t));
    let _ = writeln!(s, "detection_cause = {}", rep.detection_cause.as_str());
    if let (Some(pred), Some(det)) = (rep.predicted_t_star, rep.detected_t) {
        let _ = writeln!(s, "detected_minus_predicted = {}", float(det - pred));
    }
    for w in &result.warnings {
        let _ = writeln!(s, "warning: {w}");
    }
    s
}

/// Writes `diagnostics.csv`, one `snapshot_<t>.csv` per snapshot and
/// `report.txt` into `cfg.output_dir`; returns the written paths.
pub fn write_outputs(result: &RunResult, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let dir: &Path = &cfg.output_dir;
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();

    let path = dir.join("diagnostics.csv");
    fs::write(&path, diagnostics_csv(result))?;
    written.push(path);

    for (i, snap) in result.snapshots.iter().enumerate() {
        let path = dir.join(format!("snapshot_{}.csv", time_label(snap.time)));
        fs::write(&path, snapshot_csv(result, i))?;
        written.push(path);
    }

    let path = dir.join("report.txt");
    fs::write(&path, report_text(result, cfg))?;
    written.push(path);
    Ok(written)
}
