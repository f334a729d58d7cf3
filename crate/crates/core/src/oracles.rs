//! Analytic reference solutions, independent of the spectral solver.
//!
//! * Inviscid Burgers before the shock: the implicit characteristic relation
//!   `u = f(x - u t)`.
//! * Pure fractional dissipation: every Fourier mode decays as
//!   `exp(-gamma |k|^alpha t)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::grid::SpectralField;
use crate::spectral::{check_alpha, symbol};

/// Smooth 2pi-periodic initial data.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    /// `-sin x`
    NegSine,
    /// `-a sin x`
    ScaledNegSine(f64),
    /// Periodised Gaussian `sum_m exp(-(x - 2 pi m)^2 / (2 w^2))`.
    GaussianBump {
        width: f64,
    },
    RandomBand(RandomBand),
}

/// `sum_{k=1}^{K} a_k cos(kx) + b_k sin(kx)` with coefficients drawn from
/// SplitMix64.
///
/// For each `k = 1..=K` in order, two 64-bit outputs `r` are mapped to
/// `U = (r >> 11) * 2^-53` in `[0, 1)` and then to `a_k = (2U - 1) / k`
/// followed by `b_k = (2U - 1) / k`. `K = 0` gives the zero function.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomBand {
    pub max_mode: usize,
    pub seed: u64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl RandomBand {
    pub fn new(max_mode: usize, seed: u64) -> Self {
        let mut rng = SplitMix64::seed_from_u64(seed);
        let mut unit = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let mut cos = Vec::with_capacity(max_mode);
        let mut sin = Vec::with_capacity(max_mode);
        for k in 1..=max_mode {
            cos.push((2.0 * unit() - 1.0) / k as f64);
            sin.push((2.0 * unit() - 1.0) / k as f64);
        }
        Self {
            max_mode,
            seed,
            cos,
            sin,
        }
    }

    pub fn coefficients(&self) -> (&[f64], &[f64]) {
        (&self.cos, &self.sin)
    }
}

impl InitialCondition {
    pub fn random_band(max_mode: usize, seed: u64) -> Self {
        InitialCondition::RandomBand(RandomBand::new(max_mode, seed))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            InitialCondition::ScaledNegSine(a) if !a.is_finite() => Err(Error::InvalidInput(
                format!("sine amplitude {a} is not finite"),
            )),
            InitialCondition::GaussianBump { width } if !(*width > 0.0 && width.is_finite()) => {
                Err(Error::InvalidInput(format!(
                    "Gaussian width {width} must be positive"
                )))
            }
            _ => Ok(()),
        }
    }

    fn gaussian_images(width: f64) -> i64 {
        (12.0 * width / (2.0 * PI)).ceil() as i64 + 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialCondition::NegSine => -x.sin(),
            InitialCondition::ScaledNegSine(a) => -a * x.sin(),
            InitialCondition::GaussianBump { width } => {
                let m = Self::gaussian_images(*width);
                let y = x.rem_euclid(2.0 * PI);
                (-m..=m)
                    .map(|i| {
                        let d = y - 2.0 * PI * i as f64;
                        (-d * d / (2.0 * width * width)).exp()
                    })
                    .sum()
            }
            InitialCondition::RandomBand(band) => band
                .cos
                .iter()
                .zip(&band.sin)
                .enumerate()
                .map(|(i, (a, b))| {
                    let (s, c) = ((i + 1) as f64 * x).sin_cos();
                    a * c + b * s
                })
                .sum(),
        }
    }

    pub fn derivative(&self, x: f64) -> f64 {
        match self {
            InitialCondition::NegSine => -x.cos(),
            InitialCondition::ScaledNegSine(a) => -a * x.cos(),
            InitialCondition::GaussianBump { width } => {
                let m = Self::gaussian_images(*width);
                let y = x.rem_euclid(2.0 * PI);
                let w2 = width * width;
                (-m..=m)
                    .map(|i| {
                        let d = y - 2.0 * PI * i as f64;
                        -d / w2 * (-d * d / (2.0 * w2)).exp()
                    })
                    .sum()
            }
            InitialCondition::RandomBand(band) => band
                .cos
                .iter()
                .zip(&band.sin)
                .enumerate()
                .map(|(i, (a, b))| {
                    let k = (i + 1) as f64;
                    let (s, c) = (k * x).sin_cos();
                    k * (b * c - a * s)
                })
                .sum(),
        }
    }

    /// Short label used in reports.
    pub fn describe(&self) -> String {
        match self {
            InitialCondition::NegSine => "neg-sine".into(),
            InitialCondition::ScaledNegSine(a) => format!("scaled-neg-sine:{a}"),
            InitialCondition::GaussianBump { width } => format!("gaussian:{width}"),
            InitialCondition::RandomBand(b) => format!("random:{}:{}", b.max_mode, b.seed),
        }
    }
}

const SCAN_POINTS: usize = 4096;

/// Minimum of `g` over one period: dense scan, then golden-section refinement.
fn periodic_min(g: impl Fn(f64) -> f64) -> f64 {
    let h = 2.0 * PI / SCAN_POINTS as f64;
    let (best_x, _) = (0..SCAN_POINTS)
        .map(|i| -PI + i as f64 * h)
        .map(|x| (x, g(x)))
        .fold(
            (0.0, f64::INFINITY),
            |acc, (x, v)| if v < acc.1 { (x, v) } else { acc },
        );

    let ratio = (5.0_f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (best_x - h, best_x + h);
    for _ in 0..80 {
        let c = b - ratio * (b - a);
        let d = a + ratio * (b - a);
        if g(c) < g(d) {
            b = d;
        } else {
            a = c;
        }
    }
    g(0.5 * (a + b)).min(g(best_x))
}

/// Characteristic solver for one initial condition, with its range and
/// slope bounds computed once.
#[derive(Debug, Clone)]
pub struct Characteristics {
    f: InitialCondition,
    min_f: f64,
    max_f: f64,
    min_slope: f64,
    max_slope: f64,
}

/// Residual bound met by every value returned from [`Characteristics::solve`].
pub const CHARACTERISTIC_RESIDUAL: f64 = 1e-12;
const FIXED_POINT_ITERATIONS: usize = 500;

impl Characteristics {
    pub fn new(f: InitialCondition) -> Self {
        let (min_f, max_f, min_slope, max_slope) = match &f {
            InitialCondition::NegSine => (-1.0, 1.0, -1.0, 1.0),
            InitialCondition::ScaledNegSine(a) => (-a.abs(), a.abs(), -a.abs(), a.abs()),
            other => (
                periodic_min(|x| other.eval(x)),
                -periodic_min(|x| -other.eval(x)),
                periodic_min(|x| other.derivative(x)),
                -periodic_min(|x| -other.derivative(x)),
            ),
        };
        Self {
            f,
            min_f,
            max_f,
            min_slope,
            max_slope,
        }
    }

    pub fn initial_condition(&self) -> &InitialCondition {
        &self.f
    }

    /// Minimum of `f'` over the period.
    pub fn min_initial_slope(&self) -> f64 {
        self.min_slope
    }

    /// `-1 / min f'`, or infinity when `f` has no descending part.
    pub fn shock_time(&self) -> f64 {
        if self.min_slope < 0.0 {
            -1.0 / self.min_slope
        } else {
            f64::INFINITY
        }
    }

    fn residual(&self, x: f64, t: f64, u: f64) -> f64 {
        u - self.f.eval(x - u * t)
    }

    /// Solves `u = f(x - u t)` for `0 <= t < shock_time()`.
    ///
    /// A damped fixed-point iteration seeded at `f(x)` runs first; if it has
    /// not converged, bisection on `[min f, max f]` takes over. The residual
    /// is strictly increasing in `u` before the shock, so the root is unique.
    pub fn solve(&self, x: f64, t: f64) -> Result<f64> {
        if !(t >= 0.0) {
            return Err(Error::InvalidInput(format!("time {t} is negative")));
        }
        if t == 0.0 {
            return Ok(self.f.eval(x));
        }
        let shock_time = self.shock_time();
        if t >= shock_time {
            return Err(Error::ShockDomain { t, shock_time });
        }

        // d(residual)/du = 1 + t f'(.) lies in [lo, hi]; the damping is
        // chosen to contract for every slope in that band.
        let lo = 1.0 + t * self.min_slope;
        let hi = 1.0 + t * self.max_slope.max(0.0);
        let damping = 2.0 / (lo + hi);
        let target = 0.1 * CHARACTERISTIC_RESIDUAL;

        let mut u = self.f.eval(x);
        for _ in 0..FIXED_POINT_ITERATIONS {
            let r = self.residual(x, t, u);
            if r.abs() <= target {
                return Ok(u);
            }
            u -= damping * r;
        }

        let pad = 1e-6 * (1.0 + self.max_f - self.min_f);
        let (mut a, mut b) = (self.min_f - pad, self.max_f + pad);
        let mut best = (u, self.residual(x, t, u).abs());
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            let r = self.residual(x, t, mid);
            if r.abs() < best.1 {
                best = (mid, r.abs());
            }
            if r.abs() <= target || b - a <= f64::EPSILON * (1.0 + mid.abs()) {
                break;
            }
            if r < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
        }
        if best.1 <= CHARACTERISTIC_RESIDUAL {
            Ok(best.0)
        } else {
            Err(Error::Convergence {
                x,
                t,
                residual: best.1,
            })
        }
    }
}

/// One-off characteristic solve; see [`Characteristics::solve`].
pub fn characteristics_solution(f: &InitialCondition, x: f64, t: f64) -> Result<f64> {
    Characteristics::new(f.clone()).solve(x, t)
}

/// Exact solution of `u_t = -gamma Lambda^alpha u` in Fourier space.
pub fn linear_decay_solution(
    s0: &SpectralField,
    t: f64,
    gamma: f64,
    alpha: f64,
) -> Result<SpectralField> {
    check_alpha(alpha)?;
    if !(t >= 0.0) || !(gamma >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "need t >= 0 and gamma >= 0, got t = {t}, gamma = {gamma}"
        )));
    }
    Ok(s0.map_modes(|k, c: Complex64| c * (-gamma * symbol(k, alpha) * t).exp()))
}
