//! The two defining series of the Bohr radius, their roots, and Bohr sums.
//!
//! * real coefficients: `S_1(R) = sum_{n>=1} 4 R^n / (1 + R^2n)`,
//! * general: even `n` as above, odd `n` with `1 - R^2n` in the denominator.
//!
//! Both are strictly increasing on `[0, 1)` with `S(0) = 0`, so `S(R) = 1`
//! has a unique root, found by bisection.

use serde::Serialize;

use crate::coefficients::quadrature::boundary_max_modulus;
use crate::coefficients::FaberSeries;
use crate::condenser::faber_sup_norm;
use crate::error::{Error, Result};
use crate::summation::{sum_series, TruncatedSum, Truncation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusKind {
    RealCoefficients,
    General,
}

impl RadiusKind {
    pub fn name(self) -> &'static str {
        match self {
            RadiusKind::RealCoefficients => "real_coefficients",
            RadiusKind::General => "general",
        }
    }

    pub fn series(self, level: f64, tol: f64, truncation: Truncation) -> Result<TruncatedSum> {
        match self {
            RadiusKind::RealCoefficients => series_real(level, tol, truncation),
            RadiusKind::General => series_general(level, tol, truncation),
        }
    }
}

fn check_level(level: f64) -> Result<()> {
    if level >= 1.0 {
        return Err(Error::Divergence(format!("defining series diverge at R = {level} >= 1")));
    }
    if !(level >= 0.0) {
        return Err(Error::Range(format!("R = {level} must be nonnegative")));
    }
    Ok(())
}

/// `sum 4 R^n / (1 + R^2n)`; the tail after `N` terms is at most `4 R^(N+1) / (1 - R)`.
pub fn series_real(level: f64, tol: f64, truncation: Truncation) -> Result<TruncatedSum> {
    check_level(level)?;
    sum_series(
        |n| {
            let rn = level.powi(n as i32);
            4.0 * rn / (1.0 + rn * rn)
        },
        |n| 4.0 * level.powi(n as i32 + 1) / (1.0 - level),
        tol,
        truncation,
    )
}

/// Even terms `4 R^n / (1 + R^2n)`, odd terms `4 R^n / (1 - R^2n)`; the tail
/// after `N` terms is at most `4 R^(N+1) / ((1 - R)(1 - R^2))`.
pub fn series_general(level: f64, tol: f64, truncation: Truncation) -> Result<TruncatedSum> {
    check_level(level)?;
    sum_series(
        |n| {
            let rn = level.powi(n as i32);
            let r2n = rn * rn;
            if n % 2 == 0 {
                4.0 * rn / (1.0 + r2n)
            } else {
                4.0 * rn / (1.0 - r2n)
            }
        },
        |n| 4.0 * level.powi(n as i32 + 1) / ((1.0 - level) * (1.0 - level * level)),
        tol,
        truncation,
    )
}

/// Series tolerance used inside the solver; far below any solver tolerance.
const SERIES_TOL: f64 = 1e-16;
const MAX_ITERATIONS: usize = 200;
pub const DEFAULT_BRACKET: (f64, f64) = (1e-6, 0.5);

/// A root of `S(R) = 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusSolution {
    pub kind: RadiusKind,
    pub value: f64,
    pub bracket: [f64; 2],
    pub truncation_order: usize,
    pub tail_bound: f64,
    /// `S(value) - 1`.
    pub residual: f64,
    #[serde(skip)]
    pub iterations: usize,
}

/// [`solve_radius_with`] from the default bracket with adaptive truncation.
pub fn solve_radius(kind: RadiusKind, tol: f64) -> Result<RadiusSolution> {
    solve_radius_with(kind, tol, DEFAULT_BRACKET, Truncation::Adaptive)
}

/// Bisection for `S(R) = 1` on `bracket`.
///
/// The left end always satisfies `partial + tail < 1` and the right end
/// `partial > 1`. Stops once the bracket is narrower than `tol` and the
/// midpoint residual is below `tol`.
pub fn solve_radius_with(
    kind: RadiusKind,
    tol: f64,
    bracket: (f64, f64),
    truncation: Truncation,
) -> Result<RadiusSolution> {
    if !(tol >= 1e-14) {
        return Err(Error::Domain(format!("solver tolerance {tol:e} must be at least 1e-14")));
    }
    let (mut lo, mut hi) = bracket;
    if !(0.0 <= lo && lo < hi && hi < 1.0) {
        return Err(Error::Range(format!("bracket [{lo}, {hi}] must satisfy 0 <= lo < hi < 1")));
    }
    let eval = |r: f64| kind.series(r, SERIES_TOL, truncation);
    let s_lo = eval(lo)?;
    let s_hi = eval(hi)?;
    if !(s_lo.value + s_lo.tail_bound < 1.0 && s_hi.value > 1.0) {
        return Err(Error::Range(format!("bracket [{lo}, {hi}] does not enclose the root")));
    }
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        let s = eval(mid)?;
        let residual = s.value - 1.0;
        if (hi - lo < tol && residual.abs() < tol) || iterations == MAX_ITERATIONS || mid <= lo || mid >= hi {
            if residual.abs() > tol {
                return Err(Error::Range(format!(
                    "bisection stalled with residual {residual:e} after {iterations} iterations"
                )));
            }
            return Ok(RadiusSolution {
                kind,
                value: mid,
                bracket: [lo, hi],
                truncation_order: s.order,
                tail_bound: s.tail_bound,
                residual,
                iterations,
            });
        }
        iterations += 1;
        if s.value + s.tail_bound < 1.0 {
            lo = mid;
        } else if s.value > 1.0 {
            hi = mid;
        } else {
            // the root is within the tail allowance of mid
            return Ok(RadiusSolution {
                kind,
                value: mid,
                bracket: [lo, hi],
                truncation_order: s.order,
                tail_bound: s.tail_bound,
                residual,
                iterations,
            });
        }
    }
}

/// `rho = 1 / R` for `0 < R < 1`.
pub fn rho_from_level(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Range(format!("R = {level} must lie in (0, 1)")));
    }
    Ok(1.0 / level)
}

/// `R = 1 / rho` for `rho > 1`.
pub fn level_from_rho(rho: f64) -> Result<f64> {
    if !(rho > 1.0 && rho.is_finite()) {
        return Err(Error::Range(format!("rho = {rho} must exceed 1")));
    }
    Ok(1.0 / rho)
}

/// `|a_0| + sum |a_n| (r^n + R^2n r^-n)` for `R <= r <= 1`.
pub fn bohr_sum(s: &FaberSeries, r: f64) -> Result<f64> {
    let level = s.level();
    if !(level <= r && r <= 1.0) {
        return Err(Error::Range(format!("r = {r} outside [R, 1] = [{level}, 1]")));
    }
    let mut total = s.coeff(0).norm();
    for n in 1..=s.order() {
        let norm = if level == 0.0 {
            r.powi(n as i32)
        } else {
            faber_sup_norm(n as u32, r, level)?
        };
        total += s.coeff(n).norm() * norm;
    }
    Ok(total)
}

/// Bohr sum on the segment and whether it stays at most 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BohrVerdict {
    pub sum: f64,
    pub bohr: bool,
}

/// Evaluates the Bohr sum at `r = R`, where it is smallest.
///
/// The input is assumed bounded by 1 on the ellipse; see
/// [`certify_unit_bounded`].
pub fn bohr_decision(s: &FaberSeries) -> Result<BohrVerdict> {
    let sum = bohr_sum(s, s.level())?;
    Ok(BohrVerdict { sum, bohr: sum <= 1.0 })
}

/// Samples `|f|` on 8192 boundary points and again on twice as many; fails
/// unless both maxima are below 1. Returns the finer maximum.
pub fn certify_unit_bounded(s: &FaberSeries) -> Result<f64> {
    let nodes = 8192usize.max((8 * s.order()).next_power_of_two());
    let coarse = boundary_max_modulus(s, nodes)?;
    let fine = boundary_max_modulus(s, 2 * nodes)?;
    if coarse < 1.0 && fine < 1.0 {
        Ok(fine)
    } else {
        Err(Error::Hypothesis(format!("|f| reaches {} on the ellipse", coarse.max(fine))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    const R1: f64 = 0.205328678165046;

    #[test]
    fn series_values() {
        let a = Truncation::Adaptive;
        assert_eq!(series_real(0.0, 1e-12, a).unwrap().value, 0.0);
        assert_eq!(series_general(0.0, 1e-12, a).unwrap().value, 0.0);
        assert_abs_diff_eq!(series_real(0.1, 1e-14, a).unwrap().value, 0.44048, epsilon = 1e-5);
        assert_abs_diff_eq!(series_general(0.2, 1e-14, a).unwrap().value, 1.033, epsilon = 1e-3);
        assert_abs_diff_eq!(series_real(R1, 1e-14, a).unwrap().value, 1.0, epsilon = 1e-13);
        assert!(matches!(series_real(1.0, 1e-12, a), Err(Error::Divergence(_))));
        assert!(matches!(series_general(1.5, 1e-12, a), Err(Error::Divergence(_))));
    }

    #[test]
    fn solves_both_kinds() {
        let real = solve_radius(RadiusKind::RealCoefficients, 1e-12).unwrap();
        assert_abs_diff_eq!(real.value, R1, epsilon = 1e-9);
        assert!(real.bracket[0] < real.value && real.value < real.bracket[1]);
        assert!(real.residual.abs() <= 1e-12);
        let general = solve_radius(RadiusKind::General, 1e-12).unwrap();
        assert!(general.value > 0.19 && general.value < 0.20);
        assert!(general.value < real.value);
    }

    #[test]
    fn coarse_tolerance() {
        let s = solve_radius(RadiusKind::RealCoefficients, 1e-3).unwrap();
        assert!(s.residual.abs() <= 1e-3);
        assert!((s.value - R1).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_bracket() {
        assert!(solve_radius_with(RadiusKind::General, 1e-12, (0.25, 0.5), Truncation::Adaptive).is_err());
        assert!(solve_radius(RadiusKind::General, 1e-16).is_err());
    }

    #[test]
    fn conversions() {
        assert_eq!(rho_from_level(0.5).unwrap(), 2.0);
        assert_abs_diff_eq!(rho_from_level(R1).unwrap(), 4.87025, epsilon = 1e-5);
        assert!(rho_from_level(1.0).is_err());
        assert!(level_from_rho(0.5).is_err());
    }

    #[test]
    fn bohr_sums() {
        let s = FaberSeries::from_real(0.2, &[0.5]).unwrap();
        assert_eq!(bohr_sum(&s, 0.7).unwrap(), 0.5);
        let s = FaberSeries::from_real(0.2, &[0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(bohr_sum(&s, 0.2).unwrap(), 0.4, epsilon = 1e-15);
        assert!(bohr_sum(&s, 0.1).is_err());
        let one = FaberSeries::new(0.3, vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert_eq!(bohr_decision(&one).unwrap(), BohrVerdict { sum: 1.0, bohr: true });
    }

    #[test]
    fn bounded_certification() {
        let s = FaberSeries::from_real(0.2, &[0.3, 0.2, 0.1]).unwrap();
        assert!(certify_unit_bounded(&s).is_ok());
        let s = FaberSeries::from_real(0.2, &[0.9, 0.2]).unwrap();
        assert!(certify_unit_bounded(&s).is_err());
    }
}
