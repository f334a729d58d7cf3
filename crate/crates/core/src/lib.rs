//! Pseudo-spectral simulation of the fractional dissipative Burgers equation
//!
//! ```text
//! u_t + u u_x = -gamma Lambda^alpha u,   x in [-pi, pi) periodic,
//! ```
//!
//! where `Lambda^alpha` is the Fourier multiplier `|k|^alpha`, `0 < alpha <= 2`.
//! Space is discretised by trigonometric interpolation on `N` uniform nodes,
//! time by classical RK4. Every step is accompanied by diagnostics for mass,
//! `L2`/`L-infinity` behaviour, slope steepening and spectral resolution, and
//! the crate ships analytic reference solutions to check them against.

pub mod config;
pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod oracles;
pub mod output;
pub mod run;
pub mod spectral;

pub use config::{parse_config, RunConfig};
pub use diagnostics::{BlowupReport, DetectionCause, DiagnosticsRecord, Thresholds};
pub use dynamics::{rhs, rk4_step, stable_dt, SimParams, TimeStep};
pub use error::{Error, Result};
pub use grid::{make_grid, GridSpec, NodalField, SpectralField};
pub use oracles::{
    characteristics_solution, linear_decay_solution, Characteristics, InitialCondition,
};
pub use output::write_outputs;
pub use run::{run_simulation, RunResult, RunStatus};
pub use spectral::{
    dealias, forward_dft, fractional_laplacian, inverse_dft, spectral_derivative, DealiasRule,
};
