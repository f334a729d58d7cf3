//! Discrete Fourier transforms on the grid and the spectral operators built on them.
//!
//! Convention: `u~_k = (1/N) sum_j u(x_j) e^{-i k x_j}` and
//! `u(x_l) = sum_k u~_k e^{i k x_l}`. Because the first node sits at `-pi`,
//! both directions reduce to a plain FFT up to the phase `(-1)^k`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{GridSpec, NodalField, SpectralField};

/// Relative bound on the imaginary residue accepted by [`inverse_dft`].
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Optional truncation of the quadratic product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DealiasRule {
    #[default]
    Off,
    /// Zero every mode with `|k| > N/3`.
    TwoThirds,
}

fn alternating(k: i64) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn fft_slot(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

pub fn forward_dft(u: &NodalField, grid: &GridSpec) -> Result<SpectralField> {
    u.check_len(grid)?;
    let n = grid.n();
    let mut buf: Vec<Complex64> = u.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    grid.fft_forward.process(&mut buf);
    // Real input has an exactly conjugate-symmetric transform; project onto
    // it so that later multipliers cannot amplify round-off asymmetry.
    let scale = 1.0 / n as f64;
    let half = (n / 2) as i64;
    let mut out = SpectralField::zeros(n);
    out.set(0, Complex64::new(buf[0].re * scale, 0.0));
    out.set(
        -half,
        Complex64::new(buf[fft_slot(-half, n)].re * alternating(half) * scale, 0.0),
    );
    for k in 1..half {
        let c =
            (buf[fft_slot(k, n)] + buf[fft_slot(-k, n)].conj()) * (0.5 * alternating(k) * scale);
        out.set(k, c);
        out.set(-k, c.conj());
    }
    Ok(out)
}

/// Evaluates the trigonometric interpolant at the nodes.
///
/// Fails if the imaginary part of the result exceeds
/// `SYMMETRY_TOLERANCE * sum_k |u~_k|`, which bounds `max_l |u(x_l)|`.
pub fn inverse_dft(s: &SpectralField, grid: &GridSpec) -> Result<NodalField> {
    let n = grid.n();
    if s.n() != n {
        return Err(Error::InvalidInput(format!(
            "spectral field has {} modes but the grid has {} nodes",
            s.n(),
            n
        )));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (k, c) in s.modes() {
        buf[fft_slot(k, n)] = c * alternating(k);
    }
    grid.fft_inverse.process(&mut buf);

    let residue = buf.iter().fold(0.0_f64, |m, z| m.max(z.im.abs()));
    let tolerance = SYMMETRY_TOLERANCE * s.coeffs().iter().map(|c| c.norm()).sum::<f64>();
    if residue > tolerance {
        return Err(Error::SymmetryViolation { residue, tolerance });
    }
    Ok(NodalField::new(
        buf.into_iter().map(|z| z.re).collect(),
        0.0,
    ))
}

/// `D_N`: multiply by `ik`; the Nyquist mode `k = -N/2` is sent to zero.
pub fn spectral_derivative(s: &SpectralField) -> SpectralField {
    let nyquist = -((s.n() / 2) as i64);
    s.map_modes(|k, c| {
        if k == nyquist {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::new(0.0, k as f64) * c
        }
    })
}

/// `E_N^alpha`: multiply by `|k|^alpha`, `0 < alpha <= 2`.
pub fn fractional_laplacian(s: &SpectralField, alpha: f64) -> Result<SpectralField> {
    check_alpha(alpha)?;
    Ok(s.map_modes(|k, c| c * symbol(k, alpha)))
}

/// The multiplier `|k|^alpha`, exactly zero at `k = 0`.
pub(crate) fn symbol(k: i64, alpha: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        (k.unsigned_abs() as f64).powf(alpha)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 2.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "fractional order alpha = {alpha} is outside (0, 2]"
        )))
    }
}

pub fn dealias(s: &SpectralField, rule: DealiasRule) -> SpectralField {
    match rule {
        DealiasRule::Off => s.clone(),
        DealiasRule::TwoThirds => {
            let n = s.n() as u64;
            s.map_modes(|k, c| {
                if 3 * k.unsigned_abs() > n {
                    Complex64::new(0.0, 0.0)
                } else {
                    c
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_only(s: &SpectralField, expected: &[(i64, Complex64)], tol: f64) {
        for (k, v) in s.modes() {
            let want = expected
                .iter()
                .find(|(kk, _)| *kk == k)
                .map(|(_, w)| *w)
                .unwrap_or_default();
            assert!((v - want).norm() <= tol, "mode {k}: got {v}, want {want}");
        }
    }

    #[test]
    fn forward_of_constant() {
        let g = make_grid(8).unwrap();
        let s = forward_dft(&g.sample(0.0, |_| 2.5), &g).unwrap();
        assert_only(&s, &[(0, c(2.5, 0.0))], 1e-15);
    }

    #[test]
    fn forward_of_negative_sine() {
        for n in [4, 6, 16, 64] {
            let g = make_grid(n).unwrap();
            let s = forward_dft(&g.sample(0.0, |x| -x.sin()), &g).unwrap();
            assert_only(&s, &[(1, c(0.0, 0.5)), (-1, c(0.0, -0.5))], 1e-15);
        }
    }

    #[test]
    fn forward_of_cos2() {
        let g = make_grid(16).unwrap();
        let s = forward_dft(&g.sample(0.0, |x| (2.0 * x).cos()), &g).unwrap();
        assert_only(&s, &[(2, c(0.5, 0.0)), (-2, c(0.5, 0.0))], 1e-15);
    }

    #[test]
    fn forward_rejects_length_mismatch() {
        let g = make_grid(8).unwrap();
        let u = NodalField::zeros(6, 0.0);
        assert!(matches!(forward_dft(&u, &g), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn inverse_of_mean_mode() {
        let g = make_grid(8).unwrap();
        let mut s = SpectralField::zeros(8);
        s.set(0, c(5.0, 0.0));
        let u = inverse_dft(&s, &g).unwrap();
        for v in u.values {
            assert_abs_diff_eq!(v, 5.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn inverse_of_sine_pair() {
        let g = make_grid(32).unwrap();
        let mut s = SpectralField::zeros(32);
        s.set(1, c(0.0, 0.5));
        s.set(-1, c(0.0, -0.5));
        let u = inverse_dft(&s, &g).unwrap();
        for (v, x) in u.values.iter().zip(g.nodes()) {
            assert_abs_diff_eq!(*v, -x.sin(), epsilon = 1e-15);
        }
    }

    #[test]
    fn inverse_rejects_broken_symmetry() {
        let g = make_grid(8).unwrap();
        let mut s = SpectralField::zeros(8);
        s.set(1, c(1.0, 0.0));
        assert!(matches!(
            inverse_dft(&s, &g),
            Err(Error::SymmetryViolation { .. })
        ));
    }

    #[test]
    fn derivative_of_sine_is_cosine() {
        let g = make_grid(16).unwrap();
        let s = forward_dft(&g.sample(0.0, f64::sin), &g).unwrap();
        let want = forward_dft(&g.sample(0.0, f64::cos), &g).unwrap();
        let d = spectral_derivative(&s);
        for (a, b) in d.coeffs().iter().zip(want.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn derivative_kills_constant_and_nyquist() {
        let mut s = SpectralField::zeros(8);
        s.set(0, c(3.0, 0.0));
        s.set(-4, c(1.0, 0.0));
        let d = spectral_derivative(&s);
        assert!(d.coeffs().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn fractional_laplacian_multipliers() {
        let g = make_grid(16).unwrap();
        let cos2 = forward_dft(&g.sample(0.0, |x| (2.0 * x).cos()), &g).unwrap();
        let out = fractional_laplacian(&cos2, 1.0).unwrap();
        assert_only(&out, &[(2, c(1.0, 0.0)), (-2, c(1.0, 0.0))], 1e-15);

        let konst = forward_dft(&g.sample(0.0, |_| 7.0), &g).unwrap();
        for alpha in [0.3, 1.0, 2.0] {
            let out = fractional_laplacian(&konst, alpha).unwrap();
            assert!(out.coeffs().iter().all(|z| z.norm() == 0.0));
        }

        let cos1 = forward_dft(&g.sample(0.0, f64::cos), &g).unwrap();
        let out = fractional_laplacian(&cos1, 0.5).unwrap();
        assert_only(&out, &[(1, c(0.5, 0.0)), (-1, c(0.5, 0.0))], 1e-15);
    }

    #[test]
    fn fractional_laplacian_rejects_bad_alpha() {
        let s = SpectralField::zeros(8);
        for alpha in [0.0, -1.0, 2.5, f64::NAN] {
            assert!(fractional_laplacian(&s, alpha).is_err());
        }
        assert!(fractional_laplacian(&s, 2.0).is_ok());
    }

    #[test]
    fn dealias_rules() {
        let mut s = SpectralField::zeros(12);
        s.set(5, c(1.0, 0.0));
        s.set(-5, c(1.0, 0.0));
        assert_eq!(dealias(&s, DealiasRule::Off), s);
        assert!(dealias(&s, DealiasRule::TwoThirds)
            .coeffs()
            .iter()
            .all(|z| z.norm() == 0.0));

        let mut s = SpectralField::zeros(12);
        s.set(3, c(0.0, 1.0));
        s.set(-3, c(0.0, -1.0));
        assert_eq!(dealias(&s, DealiasRule::TwoThirds), s);
    }
}
