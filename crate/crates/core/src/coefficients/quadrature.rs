//! Trapezoid-rule quadrature on the unit circle.
//!
//! Coefficients are recovered with the normalized measure `dθ / 2π`:
//! `a_n = mean(f(e^{iθ}) e^{-inθ})`, `a_0 = mean(f)`. The discrete sums are
//! computed with an FFT.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::series::FaberSeries;
use crate::condenser::zhukovskii;
use crate::error::{Error, Result};

/// Equispaced nodes `θ_j = 2πj / M` with `M` a power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureGrid {
    nodes: usize,
}

impl QuadratureGrid {
    pub fn new(nodes: usize) -> Result<Self> {
        if nodes < 4 || !nodes.is_power_of_two() {
            return Err(Error::Domain(format!(
                "quadrature node count {nodes} must be a power of two >= 4"
            )));
        }
        Ok(Self { nodes })
    }

    /// `max(256, 8 n_max)` rounded up to a power of two.
    pub fn for_order(n_max: usize) -> Self {
        Self {
            nodes: (8 * n_max).max(256).next_power_of_two(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn doubled(&self) -> Self {
        Self {
            nodes: 2 * self.nodes,
        }
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.nodes as f64
    }

    fn check_resolves(&self, n_max: usize) -> Result<()> {
        let required = 4 * n_max;
        if self.nodes < required {
            return Err(Error::Aliasing {
                nodes: self.nodes,
                n_max,
                required,
            });
        }
        Ok(())
    }
}

/// Recovers `a_0..a_{n_max}` from boundary values of `f` on `|w| = 1`.
///
/// `f` receives the point `w = e^{iθ}`; it should be holomorphic on a
/// neighbourhood of the closed ellipse.
pub fn extract_coefficients(
    f: impl Fn(Complex64) -> Complex64,
    n_max: usize,
    level: f64,
    grid: QuadratureGrid,
) -> Result<FaberSeries> {
    grid.check_resolves(n_max)?;
    let m = grid.nodes();
    let mut buf: Vec<Complex64> = (0..m)
        .map(|j| f(Complex64::from_polar(1.0, grid.theta(j))))
        .collect();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    FaberSeries::new(level, buf[..=n_max].iter().map(|&y| y * scale).collect())
}

/// Like [`extract_coefficients`] for a function of the physical variable `z`;
/// the boundary is parametrized through `z = zhukovskii(w / R)`.
pub fn extract_physical(
    g: impl Fn(Complex64) -> Complex64,
    n_max: usize,
    level: f64,
    grid: QuadratureGrid,
) -> Result<FaberSeries> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Range(format!("level R = {level} must lie in (0, 1)")));
    }
    extract_coefficients(
        |w| g(zhukovskii(w / level).expect("w on the unit circle")),
        n_max,
        level,
        grid,
    )
}

/// Values `f(e^{2πij/M})`, `j = 0..M`, of a finite Faber series.
///
/// Requires `M > 2N` so that the frequencies `n` and `-n` do not fold.
pub fn boundary_values(series: &FaberSeries, nodes: usize) -> Result<Vec<Complex64>> {
    let order = series.order();
    if nodes <= 2 * order {
        return Err(Error::Aliasing {
            nodes,
            n_max: order,
            required: 2 * order + 1,
        });
    }
    let mut spectrum = vec![Complex64::default(); nodes];
    spectrum[0] = series.coeff(0);
    let r2 = series.level() * series.level();
    let mut r2n = 1.0;
    for n in 1..=order {
        r2n *= r2;
        let a = series.coeff(n);
        spectrum[n] += a;
        spectrum[nodes - n] += a * r2n;
    }
    FftPlanner::new().plan_fft_inverse(nodes).process(&mut spectrum);
    Ok(spectrum)
}

/// Minimum of `re f` over `nodes` equispaced points of the ellipse boundary.
pub fn boundary_min_real_part(series: &FaberSeries, nodes: usize) -> Result<f64> {
    Ok(boundary_values(series, nodes)?
        .iter()
        .map(|v| v.re)
        .fold(f64::INFINITY, f64::min))
}

/// Maximum of `|f|` over `nodes` equispaced points of the ellipse boundary.
pub fn boundary_max_modulus(series: &FaberSeries, nodes: usize) -> Result<f64> {
    Ok(boundary_values(series, nodes)?
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max))
}
