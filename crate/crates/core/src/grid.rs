//! The discrete torus and the two field representations living on it.
//!
//! Nodes are `x_j = pi (2j - N) / N`, i.e. `N` equispaced points covering
//! `[-pi, pi)`. Spectral coefficients are stored in natural wavenumber order
//! `k = -N/2, ..., N/2 - 1`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform periodic grid with `n` nodes and cached FFT plans.
#[derive(Clone)]
pub struct GridSpec {
    n: usize,
    nodes: Vec<f64>,
    pub(crate) fft_forward: Arc<dyn Fft<f64>>,
    pub(crate) fft_inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridSpec").field("n", &self.n).finish()
    }
}

impl PartialEq for GridSpec {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

/// Builds the grid for an even node count `n >= 4`.
pub fn make_grid(n: usize) -> Result<GridSpec> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("grid size {n} is below 4")));
    }
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("grid size {n} is odd")));
    }
    let nodes = (0..n)
        .map(|j| PI * (2.0 * j as f64 - n as f64) / n as f64)
        .collect();
    let mut planner = FftPlanner::new();
    Ok(GridSpec {
        n,
        nodes,
        fft_forward: planner.plan_fft_forward(n),
        fft_inverse: planner.plan_fft_inverse(n),
    })
}

impl GridSpec {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Largest resolved wavenumber magnitude, `N/2`.
    pub fn k_max(&self) -> usize {
        self.n / 2
    }

    /// Wavenumbers `-N/2 ..= N/2 - 1` in storage order.
    pub fn wavenumbers(&self) -> impl Iterator<Item = i64> {
        let half = (self.n / 2) as i64;
        -half..half
    }

    /// Samples `f` at every node.
    pub fn sample(&self, time: f64, f: impl Fn(f64) -> f64) -> NodalField {
        NodalField {
            values: self.nodes.iter().map(|&x| f(x)).collect(),
            time,
        }
    }
}

/// Nodal values `u(x_j)` at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalField {
    pub values: Vec<f64>,
    pub time: f64,
}

impl NodalField {
    pub fn new(values: Vec<f64>, time: f64) -> Self {
        Self { values, time }
    }

    pub fn zeros(n: usize, time: f64) -> Self {
        Self {
            values: vec![0.0; n],
            time,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub(crate) fn check_len(&self, grid: &GridSpec) -> Result<()> {
        if self.values.len() != grid.n() {
            return Err(Error::InvalidInput(format!(
                "field has {} values but the grid has {} nodes",
                self.values.len(),
                grid.n()
            )));
        }
        Ok(())
    }
}

/// Discrete Fourier coefficients `u~_k`, `k = -N/2 .. N/2 - 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(n: usize) -> Self {
        assert!(
            n.is_multiple_of(2),
            "spectral fields need an even mode count"
        );
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    /// Wraps coefficients already laid out as `k = -N/2 .. N/2 - 1`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(
            coeffs.len().is_multiple_of(2),
            "spectral fields need an even mode count"
        );
        Self { coeffs }
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    fn index(&self, k: i64) -> usize {
        let half = (self.n() / 2) as i64;
        assert!(
            (-half..half).contains(&k),
            "wavenumber {k} outside [-{half}, {half})"
        );
        (k + half) as usize
    }

    pub fn get(&self, k: i64) -> Complex64 {
        self.coeffs[self.index(k)]
    }

    pub fn set(&mut self, k: i64, value: Complex64) {
        let i = self.index(k);
        self.coeffs[i] = value;
    }

    /// `(k, u~_k)` pairs in storage order.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let half = (self.n() / 2) as i64;
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &c)| (i as i64 - half, c))
    }

    /// Applies a real multiplier `m(k)` mode by mode.
    pub fn map_modes(&self, mut m: impl FnMut(i64, Complex64) -> Complex64) -> Self {
        Self {
            coeffs: self.modes().map(|(k, c)| m(k, c)).collect(),
        }
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest deviation from `u~_{-k} = conj(u~_k)`, including `Im u~_0`
    /// and `Im u~_{-N/2}`.
    pub fn symmetry_defect(&self) -> f64 {
        let half = (self.n() / 2) as i64;
        let mut worst = self.get(0).im.abs().max(self.get(-half).im.abs());
        for k in 1..half {
            worst = worst.max((self.get(-k) - self.get(k).conj()).norm());
        }
        worst
    }
}
