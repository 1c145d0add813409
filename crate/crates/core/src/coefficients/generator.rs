//! Random Faber series with positive real part on the closed ellipse.
//!
//! `re f` is harmonic, so its minimum over the ellipse is attained on the
//! boundary. Every candidate is shifted by a constant so that the sampled
//! boundary minimum equals a margin `δ = 0.01 (1 + |m|)`, then resampled on a
//! grid twice as fine and accepted when the minimum there is at least `δ / 2`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::quadrature::boundary_min_real_part;
use super::series::FaberSeries;
use crate::error::{Error, Result};

const BASE_NODES: usize = 8192;
const MAX_RETRIES: usize = 5;

/// Shape of the random candidate before the positivity shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorMode {
    /// Geometrically decaying random coefficients.
    Decaying,
    /// `re f = |p|^2` on the circle for a polynomial `p` with roots near `|w| = 1`.
    FejerRiesz,
    /// `re f` a mixture of shifted Fejér kernels; close to the extremal point masses.
    FejerMixture,
    /// Only the indices `n0`, `2 n0`, `4 n0` are populated.
    SparseChain,
}

impl GeneratorMode {
    pub const ALL: [GeneratorMode; 4] = [
        GeneratorMode::Decaying,
        GeneratorMode::FejerRiesz,
        GeneratorMode::FejerMixture,
        GeneratorMode::SparseChain,
    ];
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GeneratorOptions {
    /// Produce real coefficients (`a_0` included).
    pub real_coefficients: bool,
    /// Fix the candidate shape; drawn from the seed when `None`.
    pub mode: Option<GeneratorMode>,
}

/// [`generate_with`] using default options.
pub fn generate_positive_real_part(seed: u64, level: f64, n_max: usize) -> Result<FaberSeries> {
    generate_with(seed, level, n_max, GeneratorOptions::default())
}

/// Deterministic in `(seed, level, n_max, options)`.
///
/// `level = 0` is accepted and samples the disc case.
pub fn generate_with(
    seed: u64,
    level: f64,
    n_max: usize,
    options: GeneratorOptions,
) -> Result<FaberSeries> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::Range(format!("level R = {level} must lie in [0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mode = options
        .mode
        .unwrap_or_else(|| GeneratorMode::ALL[rng.random_range(0..GeneratorMode::ALL.len())]);
    let real = options.real_coefficients;
    let mut coeffs = if n_max == 0 {
        vec![Complex64::new(1.0, 0.0)]
    } else {
        match mode {
            GeneratorMode::Decaying => decaying(&mut rng, n_max, real),
            GeneratorMode::FejerRiesz => {
                let c = fejer_riesz(&mut rng, n_max, real);
                from_real_part_fourier(&c, level)
            }
            GeneratorMode::FejerMixture => {
                let c = fejer_mixture(&mut rng, n_max, real);
                from_real_part_fourier(&c, level)
            }
            GeneratorMode::SparseChain => sparse_chain(&mut rng, n_max, real),
        }
    };
    if !real {
        coeffs[0].im = rng.random_range(-1.0..1.0);
    }
    certify_shift(FaberSeries::new(level, coeffs)?)
}

/// Shifts `a_0` until the boundary minimum of `re f` is the margin, halving the
/// non-constant part when the doubled grid disagrees.
fn certify_shift(mut series: FaberSeries) -> Result<FaberSeries> {
    let nodes = BASE_NODES.max((8 * series.order()).next_power_of_two());
    let mut last_gap = 0.0;
    for attempt in 0..=MAX_RETRIES {
        let m = boundary_min_real_part(&series, nodes)?;
        let delta = 0.01 * (1.0 + m.abs());
        let mut coeffs = series.coeffs().to_vec();
        coeffs[0].re += delta - m;
        let shifted = FaberSeries::new(series.level(), coeffs)?;
        let fine = boundary_min_real_part(&shifted, 2 * nodes)?;
        if fine >= delta / 2.0 {
            return Ok(shifted);
        }
        last_gap = fine - delta / 2.0;
        if attempt < MAX_RETRIES {
            let mut coeffs = series.coeffs().to_vec();
            for a in &mut coeffs[1..] {
                *a *= 0.5;
            }
            series = FaberSeries::new(series.level(), coeffs)?;
        }
    }
    Err(Error::Generator {
        attempts: MAX_RETRIES + 1,
        reason: format!("doubled-grid minimum stayed {last_gap:e} below half the margin"),
    })
}

fn unit(rng: &mut ChaCha8Rng, real: bool) -> Complex64 {
    let re = rng.random_range(-1.0..1.0);
    let im = if real { 0.0 } else { rng.random_range(-1.0..1.0) };
    Complex64::new(re, im)
}

fn decaying(rng: &mut ChaCha8Rng, n_max: usize, real: bool) -> Vec<Complex64> {
    let q: f64 = rng.random_range(0.5..1.0);
    let mut coeffs = vec![Complex64::default(); n_max + 1];
    let mut qn = 1.0;
    for a in &mut coeffs[1..] {
        qn *= q;
        *a = unit(rng, real) * qn;
    }
    coeffs
}

fn sparse_chain(rng: &mut ChaCha8Rng, n_max: usize, real: bool) -> Vec<Complex64> {
    let n0 = rng.random_range(1..=(n_max / 4).max(1));
    let mut coeffs = vec![Complex64::default(); n_max + 1];
    for n in [n0, 2 * n0, 4 * n0] {
        if n <= n_max {
            coeffs[n] = unit(rng, real);
        }
    }
    coeffs
}

/// Fourier coefficients `c_0..c_d` (non-negative frequencies) of `|p(e^{iθ})|^2`.
fn fejer_riesz(rng: &mut ChaCha8Rng, n_max: usize, real: bool) -> Vec<Complex64> {
    let degree = rng.random_range(1..=n_max);
    let mut roots = Vec::with_capacity(degree);
    while roots.len() < degree {
        let rho = rng.random_range(0.85..1.0);
        if real {
            if degree - roots.len() == 1 {
                roots.push(Complex64::new(if rng.random_bool(0.5) { rho } else { -rho }, 0.0));
            } else {
                let z = Complex64::from_polar(rho, rng.random_range(0.0..std::f64::consts::PI));
                roots.push(z);
                roots.push(z.conj());
            }
        } else {
            roots.push(Complex64::from_polar(rho, rng.random_range(0.0..std::f64::consts::TAU)));
        }
    }
    // p(w) = prod (w - root), coefficients in increasing degree
    let mut p = vec![Complex64::new(1.0, 0.0)];
    for root in roots {
        let mut next = vec![Complex64::default(); p.len() + 1];
        for (j, &c) in p.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * root;
        }
        p = next;
    }
    let mut c: Vec<Complex64> = (0..=degree)
        .map(|k| (0..=degree - k).map(|j| p[j + k] * p[j].conj()).sum())
        .collect();
    if real {
        for ck in &mut c {
            ck.im = 0.0;
        }
    }
    let c0 = c[0].re;
    c.iter().map(|&ck| ck / c0).collect()
}

fn fejer_mixture(rng: &mut ChaCha8Rng, n_max: usize, real: bool) -> Vec<Complex64> {
    let degree = rng.random_range(1..=n_max);
    let atoms = rng.random_range(1..=4usize);
    let mut c = vec![Complex64::default(); degree + 1];
    let mut total = 0.0;
    for _ in 0..atoms {
        let weight: f64 = rng.random_range(0.1..1.0);
        let psi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        total += weight;
        for (k, ck) in c.iter_mut().enumerate() {
            let taper = 1.0 - k as f64 / (degree + 1) as f64;
            let phase = if real {
                // atoms at ±psi
                Complex64::new((k as f64 * psi).cos(), 0.0)
            } else {
                Complex64::from_polar(1.0, -(k as f64) * psi)
            };
            *ck += phase * (weight * taper);
        }
    }
    c.iter().map(|&ck| ck / total).collect()
}

/// Faber coefficients whose boundary real part has Fourier coefficients `c`.
///
/// On `|w| = 1` the `e^{inθ}` coefficient of `re f` is `(a_n + R^2n conj a_n) / 2`.
fn from_real_part_fourier(c: &[Complex64], level: f64) -> Vec<Complex64> {
    let r2 = level * level;
    let mut r2n = 1.0;
    let mut coeffs = Vec::with_capacity(c.len());
    coeffs.push(Complex64::new(c[0].re, 0.0));
    for &cn in &c[1..] {
        r2n *= r2;
        coeffs.push(Complex64::new(2.0 * cn.re / (1.0 + r2n), 2.0 * cn.im / (1.0 - r2n)));
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::quadrature::boundary_values;

    #[test]
    fn deterministic() {
        let a = generate_positive_real_part(11, 0.2, 32).unwrap();
        let b = generate_positive_real_part(11, 0.2, 32).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_positive_real_part(12, 0.2, 32).unwrap());
    }

    #[test]
    fn every_mode_is_positive() {
        for mode in GeneratorMode::ALL {
            for real in [false, true] {
                for seed in 0..20 {
                    let opts = GeneratorOptions { real_coefficients: real, mode: Some(mode) };
                    let s = generate_with(seed, 0.15, 24, opts).unwrap();
                    assert!(s.coeff(0).re > 0.0);
                    assert!(s.order() <= 24);
                    if real {
                        assert!(s.is_real());
                    }
                    let min = boundary_values(&s, 1 << 15)
                        .unwrap()
                        .iter()
                        .map(|v| v.re)
                        .fold(f64::INFINITY, f64::min);
                    assert!(min > 0.0, "{mode:?} seed {seed}: min {min}");
                }
            }
        }
    }

    #[test]
    fn fourier_inversion_of_real_part() {
        // c_1 = 0.3 gives re f = 1 + 0.6 cos θ on the circle
        let level = 0.2;
        let coeffs = from_real_part_fourier(&[Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)], level);
        let s = FaberSeries::new(level, coeffs).unwrap();
        for k in 0..16 {
            let theta = 0.4 * k as f64;
            let v = s.eval(Complex64::from_polar(1.0, theta)).unwrap();
            assert!((v.re - (1.0 + 0.6 * theta.cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn forced_first_coefficient() {
        // boundary real part 1 + t(1+R^2) cos θ, minimum 1 - 0.3 * 1.04
        let s = FaberSeries::from_real(0.2, &[1.0, 0.3]).unwrap();
        let m = boundary_min_real_part(&s, BASE_NODES).unwrap();
        assert!((m - 0.688).abs() < 1e-12);
    }

    #[test]
    fn disc_limit() {
        let s = generate_positive_real_part(3, 0.0, 10).unwrap();
        assert_eq!(s.level(), 0.0);
        assert!(s.coeff(0).re > 0.0);
    }
}
