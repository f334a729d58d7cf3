//! Semi-discrete right-hand side `F = -u u_x - gamma Lambda^alpha u` and the
//! classical four-stage Runge-Kutta step that advances it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, NodalField};
use crate::spectral::{
    check_alpha, dealias, forward_dft, inverse_dft, spectral_derivative, symbol, DealiasRule,
};

/// Courant constant for the advective bound in [`stable_dt`].
pub const C_ADV: f64 = 0.5;
/// Constant for the dissipative bound in [`stable_dt`].
pub const C_DIFF: f64 = 0.5;
const DT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    Fixed(f64),
    /// Recompute [`stable_dt`] before every step.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    pub gamma: f64,
    pub alpha: f64,
    pub dt: TimeStep,
    pub t_final: f64,
    pub dealias: DealiasRule,
    /// Drop the advective term (pure fractional heat equation).
    pub linear_only: bool,
    /// Drop the dissipative term regardless of `gamma`.
    pub nonlinear_only: bool,
}

impl Default for SimParams {
    fn default() -> Self {
        Self {
            gamma: 0.0,
            alpha: 1.0,
            dt: TimeStep::Auto,
            t_final: 1.0,
            dealias: DealiasRule::Off,
            linear_only: false,
            nonlinear_only: false,
        }
    }
}

impl SimParams {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: String| Err(Error::InvalidInput(what));
        if !(self.gamma >= 0.0 && self.gamma.is_finite()) {
            return bad(format!("gamma = {} must be finite and >= 0", self.gamma));
        }
        check_alpha(self.alpha)?;
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final = {} must be positive", self.t_final));
        }
        if let TimeStep::Fixed(dt) = self.dt {
            if !(dt > 0.0 && dt.is_finite()) {
                return bad(format!("dt = {dt} must be positive"));
            }
        }
        if self.linear_only && self.nonlinear_only {
            return bad("linear_only and nonlinear_only are mutually exclusive".into());
        }
        Ok(())
    }

    /// Dissipation coefficient actually applied.
    pub fn effective_gamma(&self) -> f64 {
        if self.nonlinear_only {
            0.0
        } else {
            self.gamma
        }
    }
}

/// Pseudo-spectral evaluation of `F(u)`.
///
/// The advective product is formed nodally as `-u * (D_N u)`. The mean
/// coefficient of the tendency is set to zero before the single inverse
/// transform, since analytically it integrates a perfect derivative.
pub fn rhs(u: &NodalField, grid: &GridSpec, p: &SimParams) -> Result<NodalField> {
    u.check_len(grid)?;
    if !u.is_finite() {
        return Err(Error::InvalidState { time: u.time });
    }
    let u_hat = forward_dft(u, grid)?;

    let mut tendency = if p.linear_only {
        crate::grid::SpectralField::zeros(grid.n())
    } else {
        let (factor, slope) = match p.dealias {
            DealiasRule::Off => (u.clone(), inverse_dft(&spectral_derivative(&u_hat), grid)?),
            DealiasRule::TwoThirds => {
                let truncated = dealias(&u_hat, p.dealias);
                (
                    inverse_dft(&truncated, grid)?,
                    inverse_dft(&spectral_derivative(&truncated), grid)?,
                )
            }
        };
        let product = NodalField::new(
            factor
                .values
                .iter()
                .zip(&slope.values)
                .map(|(a, b)| -a * b)
                .collect(),
            u.time,
        );
        dealias(&forward_dft(&product, grid)?, p.dealias)
    };

    let gamma = p.effective_gamma();
    if gamma != 0.0 {
        let alpha = p.alpha;
        for ((k, u_k), t_k) in u_hat.modes().zip(tendency.coeffs_mut()) {
            *t_k -= u_k * (gamma * symbol(k, alpha));
        }
    }
    tendency.set(0, Complex64::new(0.0, 0.0));

    let mut out = inverse_dft(&tendency, grid)?;
    out.time = u.time;
    Ok(out)
}

fn axpy(base: &[f64], scale: f64, dir: &[f64]) -> Vec<f64> {
    base.iter().zip(dir).map(|(b, d)| b + scale * d).collect()
}

/// One classical RK4 step:
///
/// ```text
/// K1 = F(U)
/// K2 = F(U + dt/2 K1)
/// K3 = F(U + dt/2 K2)
/// K4 = F(U + dt K3)
/// U' = U + dt/6 (K1 + 2 K2 + 2 K3 + K4)
/// ```
///
/// The right-hand side is autonomous, so the stage times are not needed.
pub fn rk4_step(u: &NodalField, grid: &GridSpec, p: &SimParams, dt: f64) -> Result<NodalField> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "time step {dt} must be positive"
        )));
    }
    if !u.is_finite() {
        return Err(Error::InvalidState { time: u.time });
    }
    let stage = |values: Vec<f64>, index: u8| -> Result<NodalField> {
        let state = NodalField::new(values, u.time);
        if !state.is_finite() {
            return Err(Error::NonFiniteStage { stage: index });
        }
        let k = rhs(&state, grid, p).map_err(|e| match e {
            Error::InvalidState { .. } => Error::NonFiniteStage { stage: index },
            other => other,
        })?;
        if !k.is_finite() {
            return Err(Error::NonFiniteStage { stage: index });
        }
        Ok(k)
    };

    let k1 = stage(u.values.clone(), 1)?;
    let k2 = stage(axpy(&u.values, 0.5 * dt, &k1.values), 2)?;
    let k3 = stage(axpy(&u.values, 0.5 * dt, &k2.values), 3)?;
    let k4 = stage(axpy(&u.values, dt, &k3.values), 4)?;

    let sixth = dt / 6.0;
    let values: Vec<f64> = u
        .values
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            v + sixth * (k1.values[j] + 2.0 * k2.values[j] + 2.0 * k3.values[j] + k4.values[j])
        })
        .collect();
    let out = NodalField::new(values, u.time + dt);
    if !out.is_finite() {
        return Err(Error::NonFiniteStage { stage: 5 });
    }
    Ok(out)
}

/// CFL-style step bound
/// `min(C_ADV / (max|u| k_max + eps), C_DIFF / (gamma k_max^alpha + eps))`
/// with `k_max = N/2`.
pub fn stable_dt(u: &NodalField, grid: &GridSpec, p: &SimParams) -> f64 {
    let k_max = grid.k_max() as f64;
    let advective = if p.linear_only {
        f64::INFINITY
    } else {
        C_ADV / (u.max_abs() * k_max + DT_EPS)
    };
    let dissipative = C_DIFF / (p.effective_gamma() * k_max.powf(p.alpha) + DT_EPS);
    advective.min(dissipative)
}
