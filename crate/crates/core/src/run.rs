//! The simulation loop: step, diagnose, snapshot, maybe halt.

use crate::config::RunConfig;
use crate::diagnostics::{
    check_blowup, predicted_blowup_time, BlowupReport, DetectionCause, DiagnosticsRecord,
};
use crate::dynamics::{rk4_step, stable_dt, TimeStep};
use crate::error::{Error, Result};
use crate::grid::{make_grid, GridSpec, NodalField};

/// A step that would end within this fraction of `dt` of a target time is
/// stretched to land on it instead of leaving a sliver step.
const LANDING_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunStatus {
    Completed,
    BlowupDetected,
    ResolutionLost,
    NumericFailure,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Completed => "completed",
            RunStatus::BlowupDetected => "blowup_detected",
            RunStatus::ResolutionLost => "resolution_lost",
            RunStatus::NumericFailure => "numeric_failure",
        }
    }

    /// Process exit code for the command-line tool.
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Completed => 0,
            RunStatus::BlowupDetected => 2,
            RunStatus::ResolutionLost => 3,
            RunStatus::NumericFailure => 4,
        }
    }

    fn from_cause(cause: DetectionCause) -> Self {
        match cause {
            DetectionCause::None => RunStatus::Completed,
            DetectionCause::SlopeThreshold => RunStatus::BlowupDetected,
            DetectionCause::ResolutionLoss => RunStatus::ResolutionLost,
            DetectionCause::NonFinite => RunStatus::NumericFailure,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub grid: GridSpec,
    /// One record per accepted step, starting at `t = 0`.
    pub records: Vec<DiagnosticsRecord>,
    /// States at integer multiples of `snapshot_every`.
    pub snapshots: Vec<NodalField>,
    pub report: BlowupReport,
    pub status: RunStatus,
    pub warnings: Vec<String>,
}

impl RunResult {
    pub fn steps(&self) -> usize {
        self.records.len() - 1
    }

    pub fn final_record(&self) -> &DiagnosticsRecord {
        self.records.last().expect("records always contain t = 0")
    }

    /// Record whose time equals `t` to within `1e-12`.
    pub fn record_at(&self, t: f64) -> Option<&DiagnosticsRecord> {
        self.records.iter().find(|r| (r.t - t).abs() <= 1e-12)
    }

    pub fn snapshot_at(&self, t: f64) -> Option<&NodalField> {
        self.snapshots.iter().find(|s| (s.time - t).abs() <= 1e-12)
    }
}

fn halting_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::NonFiniteStage { .. } | Error::InvalidState { .. } | Error::SymmetryViolation { .. }
    )
}

pub fn run_simulation(cfg: &RunConfig) -> Result<RunResult> {
    cfg.validate()?;
    let grid = make_grid(cfg.n)?;
    let p = &cfg.params;
    let t_final = p.t_final;

    let mut u = grid.sample(0.0, |x| cfg.ic.eval(x));
    let mut warnings = Vec::new();
    let (max0, min0) = crate::diagnostics::extrema(&u);
    if !(max0 >= 0.0 && min0 <= 0.0) {
        warnings.push(format!(
            "initial data has max {max0} and min {min0}; the L-infinity principle assumes max >= 0 >= min"
        ));
    }

    let mut report = BlowupReport::undetected(predicted_blowup_time(&u, &grid)?);
    let first = DiagnosticsRecord::observe(&u, &grid, None)?;
    let mut records = vec![first];
    let mut snapshots = vec![u.clone()];
    let mut status = RunStatus::Completed;

    let initial_cause = if first.is_finite() {
        if cfg.detect_blowup {
            check_blowup(&first, &cfg.thresholds)
        } else {
            DetectionCause::None
        }
    } else {
        DetectionCause::NonFinite
    };
    if initial_cause != DetectionCause::None {
        report.mark(0.0, initial_cause);
        status = RunStatus::from_cause(initial_cause);
        return Ok(RunResult {
            grid,
            records,
            snapshots,
            report,
            status,
            warnings,
        });
    }

    let mut next_snapshot = 1usize;
    loop {
        let snap_t = next_snapshot as f64 * cfg.snapshot_every;
        let (target, is_snapshot) = if snap_t <= t_final * (1.0 + 1e-12) {
            (snap_t, true)
        } else {
            (t_final, false)
        };

        let mut dt = match p.dt {
            TimeStep::Fixed(dt) => dt,
            TimeStep::Auto => stable_dt(&u, &grid, p),
        };
        let landing = u.time + dt >= target - LANDING_SLACK * dt;
        if landing {
            dt = target - u.time;
        }

        let mut next = match rk4_step(&u, &grid, p, dt) {
            Ok(next) => next,
            Err(e) if halting_failure(&e) => {
                report.mark(u.time + dt, DetectionCause::NonFinite);
                status = RunStatus::NumericFailure;
                break;
            }
            Err(e) => return Err(e),
        };
        if landing {
            next.time = target;
        }

        let rec = DiagnosticsRecord::observe(&next, &grid, records.last())?;
        records.push(rec);
        if landing && is_snapshot {
            snapshots.push(next.clone());
            next_snapshot += 1;
        }
        u = next;

        let cause = if !rec.is_finite() {
            DetectionCause::NonFinite
        } else if cfg.detect_blowup {
            check_blowup(&rec, &cfg.thresholds)
        } else {
            DetectionCause::None
        };
        if cause != DetectionCause::None {
            report.mark(rec.t, cause);
            status = RunStatus::from_cause(cause);
            break;
        }

        if landing && target >= t_final * (1.0 - 1e-12) {
            break;
        }
    }

    Ok(RunResult {
        grid,
        records,
        snapshots,
        report,
        status,
        warnings,
    })
}
