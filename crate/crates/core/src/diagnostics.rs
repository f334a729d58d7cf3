//! Runtime observables: mass, norms, extrema, slope statistics, the
//! time-integrated slope monitor and spectral resolution.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, NodalField, SpectralField};
use crate::spectral::{forward_dft, inverse_dft, spectral_derivative};

const TAIL_EPS: f64 = 1e-300;

/// Scalar observables at one time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub mass: f64,
    pub l2: f64,
    pub max_u: f64,
    pub min_u: f64,
    pub min_slope: f64,
    /// Trapezoid-accumulated `int_0^t max_x |u_x| ds`.
    pub bkm_integral: f64,
    pub h3: f64,
    pub tail_fraction: f64,
    /// `max_x |u_x|` at this time; the integrand of `bkm_integral`.
    pub max_abs_slope: f64,
}

impl DiagnosticsRecord {
    /// Observables of `u`, with the BKM integral carried forward from
    /// `previous` (or started at zero).
    pub fn observe(
        u: &NodalField,
        grid: &GridSpec,
        previous: Option<&DiagnosticsRecord>,
    ) -> Result<Self> {
        let s = forward_dft(u, grid)?;
        let slope = inverse_dft(&spectral_derivative(&s), grid)?;
        let (max_u, min_u) = extrema(u);
        let (min_slope, max_abs_slope) = slope
            .values
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, sup), &v| {
                (lo.min(v), sup.max(v.abs()))
            });
        let bkm_integral = match previous {
            None => 0.0,
            Some(prev) => bkm_accumulate(
                prev.bkm_integral,
                prev.max_abs_slope,
                max_abs_slope,
                u.time - prev.t,
            ),
        };
        Ok(Self {
            t: u.time,
            mass: mass_of(&s),
            l2: weighted_norm(&s, 0.0),
            max_u,
            min_u,
            min_slope,
            bkm_integral,
            h3: weighted_norm(&s, 3.0),
            tail_fraction: tail_fraction(&s),
            max_abs_slope,
        })
    }

    pub fn is_finite(&self) -> bool {
        [
            self.t,
            self.mass,
            self.l2,
            self.max_u,
            self.min_u,
            self.min_slope,
            self.bkm_integral,
            self.h3,
            self.tail_fraction,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

fn mass_of(s: &SpectralField) -> f64 {
    2.0 * PI * s.get(0).re
}

fn weighted_norm(s: &SpectralField, order: f64) -> f64 {
    let sum: f64 = s
        .modes()
        .map(|(k, c)| {
            let w = if order == 0.0 {
                1.0
            } else {
                (1.0 + (k * k) as f64).powf(order)
            };
            w * c.norm_sqr()
        })
        .sum();
    (2.0 * PI * sum).sqrt()
}

/// `int u dx = 2 pi u~_0`.
pub fn mass(u: &NodalField, grid: &GridSpec) -> Result<f64> {
    Ok(mass_of(&forward_dft(u, grid)?))
}

/// Discrete Parseval `sqrt(2 pi sum_k |u~_k|^2)`.
pub fn l2_norm(u: &NodalField, grid: &GridSpec) -> Result<f64> {
    sobolev_norm(u, grid, 0.0)
}

/// `sqrt(2 pi sum_k (1 + k^2)^s |u~_k|^2)`.
pub fn sobolev_norm(u: &NodalField, grid: &GridSpec, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "Sobolev order {s} is negative"
        )));
    }
    Ok(weighted_norm(&forward_dft(u, grid)?, s))
}

/// Nodal `(max, min)`.
pub fn extrema(u: &NodalField) -> (f64, f64) {
    u.values
        .iter()
        .fold((f64::NEG_INFINITY, f64::INFINITY), |(hi, lo), &v| {
            (hi.max(v), lo.min(v))
        })
}

/// Minimum over nodes of `D_N u`.
pub fn min_slope(u: &NodalField, grid: &GridSpec) -> Result<f64> {
    let s = forward_dft(u, grid)?;
    let slope = inverse_dft(&spectral_derivative(&s), grid)?;
    Ok(slope.values.iter().copied().fold(f64::INFINITY, f64::min))
}

/// Inviscid shock time `-1/m0` with `m0 = min_slope(f)`, or `None` if the
/// initial slope is nowhere negative.
pub fn predicted_blowup_time(f: &NodalField, grid: &GridSpec) -> Result<Option<f64>> {
    let m0 = min_slope(f, grid)?;
    Ok(if m0 < 0.0 { Some(-1.0 / m0) } else { None })
}

/// Solution `m0 / (1 + t m0)` of `m' = -m^2`.
pub fn slope_closed_form(m0: f64, t: f64) -> Result<f64> {
    let denom = 1.0 + t * m0;
    if denom == 0.0 {
        return Err(Error::SingularTime { m0, t });
    }
    Ok(m0 / denom)
}

/// Trapezoid update of the BKM integral.
pub fn bkm_accumulate(prev_integral: f64, prev_norm: f64, new_norm: f64, dt: f64) -> f64 {
    prev_integral + dt * (prev_norm + new_norm) / 2.0
}

/// Share of non-mean spectral energy carried by `|k| >= N/3`.
pub fn tail_fraction(s: &SpectralField) -> f64 {
    let n = s.n() as u64;
    let (tail, total) =
        s.modes()
            .filter(|(k, _)| *k != 0)
            .fold((0.0, 0.0), |(tail, total), (k, c)| {
                let e = c.norm_sqr();
                if 3 * k.unsigned_abs() >= n {
                    (tail + e, total + e)
                } else {
                    (tail, total + e)
                }
            });
    if total == 0.0 {
        0.0
    } else {
        tail / (total + TAIL_EPS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// Trigger when `|min_slope|` exceeds this.
    pub slope_limit: f64,
    /// Trigger when `tail_fraction` exceeds this.
    pub tail_limit: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            slope_limit: 100.0,
            tail_limit: 0.1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionCause {
    None,
    SlopeThreshold,
    NonFinite,
    ResolutionLoss,
}

impl DetectionCause {
    pub fn as_str(self) -> &'static str {
        match self {
            DetectionCause::None => "none",
            DetectionCause::SlopeThreshold => "slope_threshold",
            DetectionCause::NonFinite => "non_finite",
            DetectionCause::ResolutionLoss => "resolution_loss",
        }
    }
}

/// Predicted and detected singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlowupReport {
    pub predicted_t_star: Option<f64>,
    pub detected: bool,
    pub detected_t: Option<f64>,
    pub detection_cause: DetectionCause,
}

impl BlowupReport {
    pub fn undetected(predicted_t_star: Option<f64>) -> Self {
        Self {
            predicted_t_star,
            detected: false,
            detected_t: None,
            detection_cause: DetectionCause::None,
        }
    }

    pub fn mark(&mut self, t: f64, cause: DetectionCause) {
        debug_assert!(cause != DetectionCause::None);
        self.detected = true;
        self.detected_t = Some(t);
        self.detection_cause = cause;
    }
}

/// Applies the detection policy to one record.
/// Priority: non-finite, then slope, then resolution.
pub fn check_blowup(rec: &DiagnosticsRecord, thresholds: &Thresholds) -> DetectionCause {
    if !rec.is_finite() {
        DetectionCause::NonFinite
    } else if rec.min_slope.abs() > thresholds.slope_limit {
        DetectionCause::SlopeThreshold
    } else if rec.tail_fraction > thresholds.tail_limit {
        DetectionCause::ResolutionLoss
    } else {
        DetectionCause::None
    }
}
