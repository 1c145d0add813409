//! The extremal families `phi1`, `phi2` and the optimality of the radii.
//!
//! For `R < r < 1` and `|z| = 1`,
//!
//! ```text
//! phi1(r, z) = -r + (1 + r) / γ(r) * sum c_n (z^n + R^2n z^-n),
//!              c_n = (r^n + R^2n r^-n) / (1 + R^2n)^2,
//! γ(r)       = sum (r^n + R^2n r^-n) / (1 + R^2n),
//! ```
//!
//! and `phi2`, `θ(r)` are the parity-split analogues (odd `n` use
//! `(r^n - R^2n r^-n) / (1 - R^2n)^2`, and the terms carry `i^n` with a minus
//! sign on odd `n`).
//!
//! Each sum is split into a geometric leading part, `rz / (1 - rz)` for `phi1`
//! and `b / (1 - b)` with `b = -irz` for `phi2`, plus a remainder whose terms
//! decay like `q^n`, `q = R^2 / r`. The leading part is summed in closed form,
//! which keeps evaluation cheap and accurate as `r -> 1`.

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::coefficients::FaberSeries;
use crate::error::{Error, Result};
use crate::par::{map_range, Execution};
use crate::radius::RadiusKind;
use crate::summation::{sum_series, NeumaierSum, Truncation, MAX_TERMS};

/// Default accuracy of normalizer and function evaluations.
pub const DEFAULT_TOL: f64 = 1e-15;
/// Coarse grid of the circle scan.
pub const ARGMAX_GRID: usize = 4096;
/// Angular resolution of the refined maximizer.
pub const ARGMAX_ANGLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalFamily {
    Phi1,
    Phi2,
}

impl ExtremalFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExtremalFamily::Phi1 => "phi1",
            ExtremalFamily::Phi2 => "phi2",
        }
    }

    /// The coefficient class whose radius the family certifies.
    pub fn kind(self) -> RadiusKind {
        match self {
            ExtremalFamily::Phi1 => RadiusKind::RealCoefficients,
            ExtremalFamily::Phi2 => RadiusKind::General,
        }
    }
}

fn check_radius(r: f64, level: f64) -> Result<()> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::Range(format!("level R = {level} must lie in [0, 1)")));
    }
    if !(r > level && r < 1.0) {
        return Err(Error::Range(format!("r = {r} must lie in (R, 1) = ({level}, 1)")));
    }
    Ok(())
}

/// Number of remainder terms after which the `q`-geometric tail
/// `6 q^(N+1) / ((1 - q)(1 - R^2)^2)` is below `tol / 2`.
fn remainder_order(q: f64, level: f64, tol: f64) -> Result<usize> {
    let c = 6.0 / ((1.0 - q) * (1.0 - level * level).powi(2));
    let mut n = 0;
    let mut qn1 = q;
    while c * qn1 >= 0.5 * tol {
        if n == MAX_TERMS {
            return Err(Error::TruncationCap { cap: MAX_TERMS, tol });
        }
        n += 1;
        qn1 *= q;
    }
    Ok(n)
}

/// `γ(r) - r / (1 - r) = sum (R^2n r^-n - r^n R^2n) / (1 + R^2n)`.
pub fn gamma_remainder(r: f64, level: f64, tol: f64) -> Result<f64> {
    normalizer_remainder(ExtremalFamily::Phi1, r, level, tol)
}

/// `θ(r) - r / (1 - r)`.
pub fn theta_remainder(r: f64, level: f64, tol: f64) -> Result<f64> {
    normalizer_remainder(ExtremalFamily::Phi2, r, level, tol)
}

fn normalizer_remainder(family: ExtremalFamily, r: f64, level: f64, tol: f64) -> Result<f64> {
    check_radius(r, level)?;
    let r2 = level * level;
    let q = r2 / r;
    let s = sum_series(
        |n| {
            let r2n = r2.powi(n as i32);
            let d = q.powi(n as i32) - r.powi(n as i32) * r2n;
            match (family, n % 2) {
                (ExtremalFamily::Phi2, 1) => -d / (1.0 - r2n),
                _ => d / (1.0 + r2n),
            }
        },
        |n| 2.0 * q.powi(n as i32 + 1) / ((1.0 - q) * (1.0 - r2)),
        tol,
        Truncation::Adaptive,
    )?;
    Ok(s.value)
}

/// `γ(r)`, the normalizer of `phi1`.
pub fn gamma_factor(r: f64, level: f64, tol: f64) -> Result<f64> {
    Ok(r / (1.0 - r) + gamma_remainder(r, level, tol)?)
}

/// `θ(r)`, the normalizer of `phi2`.
pub fn theta_factor(r: f64, level: f64, tol: f64) -> Result<f64> {
    Ok(r / (1.0 - r) + theta_remainder(r, level, tol)?)
}

/// Value of an extremal function split as `-r + factor * (leading + remainder)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiParts {
    pub value: Complex64,
    pub leading: Complex64,
    pub remainder: Complex64,
}

/// `phi1(r, ·)` or `phi2(r, ·)` with the normalizer and the remainder
/// coefficients precomputed.
#[derive(Debug, Clone)]
pub struct ExtremalFunction {
    family: ExtremalFamily,
    r: f64,
    level: f64,
    normalizer: f64,
    /// `(1 + r) / normalizer`.
    factor: f64,
    /// Remainder coefficients of `z^n` and `z^-n`, `n = 1..`.
    plus: Vec<Complex64>,
    minus: Vec<Complex64>,
}

fn i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl ExtremalFunction {
    pub fn new(family: ExtremalFamily, r: f64, level: f64, tol: f64) -> Result<Self> {
        check_radius(r, level)?;
        let normalizer = match family {
            ExtremalFamily::Phi1 => gamma_factor(r, level, tol)?,
            ExtremalFamily::Phi2 => theta_factor(r, level, tol)?,
        };
        let r2 = level * level;
        let q = r2 / r;
        let order = remainder_order(q, level, tol)?;
        let mut plus = Vec::with_capacity(order);
        let mut minus = Vec::with_capacity(order);
        for n in 1..=order {
            let (rn, qn, r2n) = (r.powi(n as i32), q.powi(n as i32), r2.powi(n as i32));
            let (coef, excess, sign) = if family == ExtremalFamily::Phi1 || n % 2 == 0 {
                let d = (1.0 + r2n).powi(2);
                ((rn + qn) / d, (qn - rn * r2n * (2.0 + r2n)) / d, 1.0)
            } else {
                let d = (1.0 - r2n).powi(2);
                ((rn - qn) / d, (rn * r2n * (2.0 - r2n) - qn) / d, -1.0)
            };
            let phase = match family {
                ExtremalFamily::Phi1 => Complex64::new(1.0, 0.0),
                ExtremalFamily::Phi2 => i_pow(n) * sign,
            };
            plus.push(phase * excess);
            minus.push(phase * coef * r2n);
        }
        Ok(Self {
            family,
            r,
            level,
            normalizer,
            factor: (1.0 + r) / normalizer,
            plus,
            minus,
        })
    }

    pub fn family(&self) -> ExtremalFamily {
        self.family
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    /// `γ(r)` or `θ(r)`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// Value at `z = e^{iψ}`.
    pub fn at_angle(&self, psi: f64) -> PhiParts {
        let r = self.r;
        // b / (1 - b) with b = r e^{iφ}, and 1 - b = (1 - r) + 2r sin^2(φ/2) - i r sin φ
        let phi = match self.family {
            ExtremalFamily::Phi1 => psi,
            ExtremalFamily::Phi2 => psi - FRAC_PI_2,
        };
        let half = (0.5 * phi).sin();
        let denom = Complex64::new((1.0 - r) + 2.0 * r * half * half, -r * phi.sin());
        let leading = Complex64::from_polar(r, phi) / denom;
        let mut re = NeumaierSum::new();
        let mut im = NeumaierSum::new();
        for (k, (p, m)) in self.plus.iter().zip(&self.minus).enumerate() {
            let e = Complex64::from_polar(1.0, (k + 1) as f64 * psi);
            let t = p * e + m * e.conj();
            re.add(t.re);
            im.add(t.im);
        }
        let remainder = Complex64::new(re.value(), im.value());
        PhiParts {
            value: Complex64::new(-r, 0.0) + self.factor * (leading + remainder),
            leading,
            remainder,
        }
    }

    /// Value at `z` on the unit circle.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("extremal functions are evaluated on |z| = 1, got |z| = {}", z.norm())));
        }
        Ok(self.at_angle(z.arg()).value)
    }

    /// Faber coefficients `a_0 = -r` and `a_n` for `n <= n_max`, divided by `scale`.
    pub fn series(&self, n_max: usize, scale: Complex64) -> Result<FaberSeries> {
        let (r, r2) = (self.r, self.level * self.level);
        let mut coeffs = Vec::with_capacity(n_max + 1);
        coeffs.push(Complex64::new(-r, 0.0) / scale);
        for n in 1..=n_max {
            let (rn, r2n) = (r.powi(n as i32), r2.powi(n as i32));
            let qn = (r2 / r).powi(n as i32);
            let a = if self.family == ExtremalFamily::Phi1 {
                Complex64::new((rn + qn) / (1.0 + r2n).powi(2), 0.0)
            } else if n % 2 == 0 {
                i_pow(n) * ((rn + qn) / (1.0 + r2n).powi(2))
            } else {
                -i_pow(n) * ((rn - qn) / (1.0 - r2n).powi(2))
            };
            coeffs.push(a * self.factor / scale);
        }
        FaberSeries::new(self.level, coeffs)
    }

    /// `r + factor * sum |coefficient_n| 2 R^n`, the Bohr sum on the segment
    /// before normalization.
    pub fn segment_bohr_sum(&self, tol: f64) -> Result<f64> {
        let (r, level) = (self.r, self.level);
        let r2 = level * level;
        let q = r2 / r;
        let family = self.family;
        let s = sum_series(
            |n| {
                let (rn, qn, r2n) = (r.powi(n as i32), q.powi(n as i32), r2.powi(n as i32));
                let c = if family == ExtremalFamily::Phi1 || n % 2 == 0 {
                    (rn + qn) / (1.0 + r2n).powi(2)
                } else {
                    (rn - qn) / (1.0 - r2n).powi(2)
                };
                2.0 * level.powi(n as i32) * c
            },
            |n| 4.0 * level.powi(n as i32 + 1) / ((1.0 - level) * (1.0 - r2).powi(2)),
            tol,
            Truncation::Adaptive,
        )?;
        Ok(r + self.factor * s.value)
    }
}

/// `phi1(r, z)` for `|z| = 1`.
pub fn phi1_eval(r: f64, z: Complex64, level: f64, tol: f64) -> Result<Complex64> {
    ExtremalFunction::new(ExtremalFamily::Phi1, r, level, tol)?.eval(z)
}

/// `phi2(r, z)` for `|z| = 1`.
pub fn phi2_eval(r: f64, z: Complex64, level: f64, tol: f64) -> Result<Complex64> {
    ExtremalFunction::new(ExtremalFamily::Phi2, r, level, tol)?.eval(z)
}

/// A maximizer of `|phi(r, ·)|` on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleMax {
    /// In `[0, 2π)`.
    pub angle: f64,
    pub z: Complex64,
    pub modulus: f64,
}

/// Grid scan of [`ARGMAX_GRID`] angles, then golden-section refinement
/// between the neighbours of the best node. Ties go to the smallest angle.
pub fn argmax_on_circle(f: &ExtremalFunction, exec: Execution) -> CircleMax {
    let step = TAU / ARGMAX_GRID as f64;
    let values = map_range(exec, ARGMAX_GRID, |j| f.at_angle(j as f64 * step).value.norm());
    let mut best = 0;
    for (j, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = j;
        }
    }
    let modulus = |psi: f64| f.at_angle(psi).value.norm();
    let (mut a, mut b) = ((best as f64 - 1.0) * step, (best as f64 + 1.0) * step);
    let inv_phi = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (modulus(c), modulus(d));
    while b - a > ARGMAX_ANGLE_TOL {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = modulus(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = modulus(d);
        }
    }
    let mut angle = 0.5 * (a + b);
    let mut value = modulus(angle);
    if values[best] > value {
        angle = best as f64 * step;
        value = values[best];
    }
    let angle = angle.rem_euclid(TAU);
    CircleMax {
        angle,
        z: Complex64::from_polar(1.0, angle),
        modulus: value,
    }
}

/// One row of an [`ExtremalTrace`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceStep {
    pub k: u32,
    pub r_k: f64,
    pub re_zk: f64,
    pub im_zk: f64,
    /// `|phi(r_k, z_k)|`.
    pub sup_value: f64,
    /// `(|phi(r_k, z_k)|^2 - 1) / (1 - r_k)`.
    pub metric: f64,
    /// Real part of the remainder of the coefficient sum at `z_k`.
    pub alpha_or_beta: f64,
    /// Bohr sum on the segment of `phi(r_k, ·) / |phi(r_k, z_k)|`.
    pub bohr_sum_normalized: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalTrace {
    pub family: ExtremalFamily,
    #[serde(rename = "R")]
    pub level: f64,
    pub steps: Vec<TraceStep>,
}

/// `r_k = 1 - 2^-k`.
pub fn trace_radius(k: u32) -> f64 {
    1.0 - 0.5f64.powi(k as i32)
}

/// Circle maxima of the family along `r_k = 1 - 2^-k`, `k_min <= k <= k_max`.
pub fn sup_trace(family: ExtremalFamily, level: f64, k_min: u32, k_max: u32, exec: Execution) -> Result<ExtremalTrace> {
    if k_min > k_max || k_max > 40 {
        return Err(Error::Range(format!("need k_min <= k_max <= 40, got {k_min}..{k_max}")));
    }
    if !(level < trace_radius(k_min)) {
        return Err(Error::Range(format!("R = {level} must lie below r_k_min = {}", trace_radius(k_min))));
    }
    let steps = (k_min..=k_max)
        .map(|k| trace_step(family, level, k, exec))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtremalTrace { family, level, steps })
}

fn trace_step(family: ExtremalFamily, level: f64, k: u32, exec: Execution) -> Result<TraceStep> {
    let r = trace_radius(k);
    let f = ExtremalFunction::new(family, r, level, DEFAULT_TOL)?;
    let max = argmax_on_circle(&f, exec);
    let parts = f.at_angle(max.angle);
    let sup = max.modulus;
    let metric = (sup - 1.0) * (sup + 1.0) / (1.0 - r);
    Ok(TraceStep {
        k,
        r_k: r,
        re_zk: max.z.re,
        im_zk: max.z.im,
        sup_value: sup,
        metric,
        alpha_or_beta: parts.remainder.re,
        bohr_sum_normalized: f.segment_bohr_sum(DEFAULT_TOL)? / sup,
    })
}

/// `phi(r, ·) / phi(r, z*)` truncated at `n_max`, with `z*` the circle
/// maximizer; bounded by 1 on the ellipse up to the truncation.
pub fn normalized_extremal_series(family: ExtremalFamily, r: f64, level: f64, n_max: usize) -> Result<FaberSeries> {
    let f = ExtremalFunction::new(family, r, level, DEFAULT_TOL)?;
    let max = argmax_on_circle(&f, Execution::default());
    f.series(n_max, f.at_angle(max.angle).value)
}

/// Normalizer and remainder sequences along the trace radii.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticsStep {
    pub k: u32,
    pub r_k: f64,
    /// `γ(r_k) - r_k / (1 - r_k)`.
    pub eps1: f64,
    /// `θ(r_k) - r_k / (1 - r_k)`.
    pub eps2: f64,
    /// Real remainder of the `phi1` coefficient sum at its circle maximizer.
    pub alpha: f64,
    /// Real remainder of the `phi2` coefficient sum at its circle maximizer.
    pub beta: f64,
    /// `|A_k + i B_k|`: modulus of the `phi1` coefficient sum.
    pub phi1_sum_modulus: f64,
    /// `|C_k + i D_k|`: modulus of the `phi2` coefficient sum.
    pub phi2_sum_modulus: f64,
    pub phi1_angle: f64,
    pub phi2_angle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticsReport {
    #[serde(rename = "R")]
    pub level: f64,
    pub steps: Vec<AsymptoticsStep>,
    pub eps1_decreasing: bool,
    pub eps2_decreasing: bool,
    pub alpha_decreasing: bool,
    pub beta_decreasing: bool,
    /// Whether `|A_k + i B_k|` stays below ten times its maximum over the
    /// first four steps; `None` when the maximizers approach `z = 1`.
    pub phi1_sum_bounded: Option<bool>,
    /// Same for `|C_k + i D_k|`; `None` when the maximizers approach `z = i`.
    pub phi2_sum_bounded: Option<bool>,
    pub all_hold: bool,
}

fn non_increasing(xs: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = xs.map(f64::abs).collect();
    v.windows(2).all(|w| w[1] <= w[0] + 1e-15)
}

fn bounded(xs: &[f64]) -> bool {
    let head = xs.iter().take(4).fold(0.0, |m: f64, &x| m.max(x));
    xs.iter().all(|&x| x <= 10.0 * head)
}

/// Evaluates the normalizer remainders and coefficient-sum remainders along
/// `r_k = 1 - 2^-k` and checks that they shrink.
pub fn asymptotics_check(level: f64, k_min: u32, k_max: u32, exec: Execution) -> Result<AsymptoticsReport> {
    if k_min > k_max || k_max > 40 {
        return Err(Error::Range(format!("need k_min <= k_max <= 40, got {k_min}..{k_max}")));
    }
    let steps = (k_min..=k_max)
        .map(|k| {
            let r = trace_radius(k);
            let f1 = ExtremalFunction::new(ExtremalFamily::Phi1, r, level, DEFAULT_TOL)?;
            let f2 = ExtremalFunction::new(ExtremalFamily::Phi2, r, level, DEFAULT_TOL)?;
            let m1 = argmax_on_circle(&f1, exec);
            let m2 = argmax_on_circle(&f2, exec);
            let p1 = f1.at_angle(m1.angle);
            let p2 = f2.at_angle(m2.angle);
            Ok(AsymptoticsStep {
                k,
                r_k: r,
                eps1: f1.normalizer() - r / (1.0 - r),
                eps2: f2.normalizer() - r / (1.0 - r),
                alpha: p1.remainder.re,
                beta: p2.remainder.re,
                phi1_sum_modulus: (p1.leading + p1.remainder).norm(),
                phi2_sum_modulus: (p2.leading + p2.remainder).norm(),
                phi1_angle: m1.angle,
                phi2_angle: m2.angle,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let last = steps.last().expect("k_min <= k_max");
    let z1 = Complex64::from_polar(1.0, last.phi1_angle);
    let z2 = Complex64::from_polar(1.0, last.phi2_angle);
    let ab: Vec<f64> = steps.iter().map(|s| s.phi1_sum_modulus).collect();
    let cd: Vec<f64> = steps.iter().map(|s| s.phi2_sum_modulus).collect();
    let phi1_sum_bounded = ((z1 - 1.0).norm() > 0.5).then(|| bounded(&ab));
    let phi2_sum_bounded = ((z2 - Complex64::i()).norm() > 0.5).then(|| bounded(&cd));
    let eps1_decreasing = non_increasing(steps.iter().map(|s| s.eps1));
    let eps2_decreasing = non_increasing(steps.iter().map(|s| s.eps2));
    let alpha_decreasing = non_increasing(steps.iter().map(|s| s.alpha));
    let beta_decreasing = non_increasing(steps.iter().map(|s| s.beta));
    let all_hold = eps1_decreasing
        && eps2_decreasing
        && alpha_decreasing
        && beta_decreasing
        && phi1_sum_bounded != Some(false)
        && phi2_sum_bounded != Some(false);
    Ok(AsymptoticsReport {
        level,
        steps,
        eps1_decreasing,
        eps2_decreasing,
        alpha_decreasing,
        beta_decreasing,
        phi1_sum_bounded,
        phi2_sum_bounded,
        all_hold,
    })
}

/// Limit of the normalized extremal Bohr sums as `r_k -> 1`, minimized over
/// the level circle `r_1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimalityWitness {
    pub kind: RadiusKind,
    #[serde(rename = "R")]
    pub level: f64,
    pub infimum: f64,
    pub r1_at_infimum: f64,
    pub series_value: f64,
    /// `|infimum - series_value| <= 2 tol`.
    pub consistent: bool,
    /// `infimum > 1 + tol`: no Bohr phenomenon at this level.
    pub witnessed_failure: bool,
}

/// Number of points of the descending `r_1` grid.
pub const WITNESS_GRID: u32 = 48;

/// `sum 2 (r1^n + R^2n r1^-n) / (1 ± R^2n)` with `+` throughout for real
/// coefficients and `-` on odd `n` for the general kind.
pub fn limiting_bohr_sum(kind: RadiusKind, level: f64, r1: f64, tol: f64) -> Result<f64> {
    if !(level <= r1 && r1 <= 1.0 && level < 1.0) || (level == 0.0 && r1 == 0.0) {
        return Err(Error::Range(format!("r1 = {r1} outside (R, 1] for R = {level}")));
    }
    if r1 >= 1.0 {
        return Err(Error::Divergence("limiting sum diverges at r1 = 1".into()));
    }
    let r2 = level * level;
    let s = sum_series(
        |n| {
            let rn = r1.powi(n as i32);
            let r2n = r2.powi(n as i32);
            let num = 2.0 * (rn + r2n / rn);
            if kind == RadiusKind::General && n % 2 == 1 {
                num / (1.0 - r2n)
            } else {
                num / (1.0 + r2n)
            }
        },
        |n| 4.0 * r1.powi(n as i32 + 1) / ((1.0 - r1) * (1.0 - r2)),
        tol,
        Truncation::Adaptive,
    )?;
    Ok(s.value)
}

/// Minimizes [`limiting_bohr_sum`] over `r_1 = R + (1 - R) 2^-j`,
/// `j = 1..=48`, and compares with the defining series at `R`.
pub fn optimality_witness(kind: RadiusKind, level: f64, tol: f64) -> Result<OptimalityWitness> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::Range(format!("R = {level} must lie in [0, 1)")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tolerance {tol:e} must be positive")));
    }
    let inner = (0.1 * tol).max(1e-16);
    let mut infimum = f64::INFINITY;
    let mut r1_at_infimum = 1.0;
    for j in 1..=WITNESS_GRID {
        let r1 = level + (1.0 - level) * 0.5f64.powi(j as i32);
        let v = limiting_bohr_sum(kind, level, r1, inner)?;
        if v < infimum {
            infimum = v;
            r1_at_infimum = r1;
        }
    }
    let series_value = kind.series(level, inner, Truncation::Adaptive)?.value;
    Ok(OptimalityWitness {
        kind,
        level,
        infimum,
        r1_at_infimum,
        series_value,
        consistent: (infimum - series_value).abs() <= 2.0 * tol,
        witnessed_failure: infimum > 1.0 + tol,
    })
}
