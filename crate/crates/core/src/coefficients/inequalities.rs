//! Carathéodory-type coefficient inequalities for series with `re f >= 0`.
//!
//! Every check first replaces `a_0` by `re a_0` (see
//! [`FaberSeries::with_real_mean`]) and writes `a_0` for that positive number.

use super::report::{Family, InequalityReport, Tolerance};
use super::series::FaberSeries;
use crate::error::{Error, Result};
use crate::radius::series_general;
use crate::summation::Truncation;

/// Largest level at which the pair and majorant-sum bounds are proved: the
/// root of `sum 4 R^n / (1 + R^2n) = 1`.
pub const PAIR_BOUND_MAX_LEVEL: f64 = 0.205_328_678_165_046;

/// Imaginary parts below this count as zero for the real-coefficient bound.
const REAL_NOISE: f64 = 1e-12;

fn prepare(s: &FaberSeries) -> Result<(FaberSeries, f64)> {
    let t = s.with_real_mean()?;
    let a0 = t.coeff(0).re;
    Ok((t, a0))
}

fn require_pair_regime(level: f64) -> Result<()> {
    if level > PAIR_BOUND_MAX_LEVEL {
        return Err(Error::Regime(format!(
            "R = {level} exceeds R <= {PAIR_BOUND_MAX_LEVEL}"
        )));
    }
    Ok(())
}

/// The modulus-squared form `|R^2n a_n + conj a_n|^2 <= 4 a_0^2` and the real
/// part form `|re a_n| <= 2 a_0 / (1 + R^2n)`, for `1 <= n <= N`.
pub fn check_caratheodory_basic(s: &FaberSeries) -> Result<[InequalityReport; 2]> {
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let mut modulus = InequalityReport::builder(Family::CaratheodoryModulus, level, Tolerance::COEFFICIENT);
    let mut real_part = InequalityReport::builder(Family::CaratheodoryRealPart, level, Tolerance::COEFFICIENT);
    let mut r2n = 1.0;
    for n in 1..=s.order() {
        r2n *= level * level;
        let a = s.coeff(n);
        let lhs = ((1.0 + r2n) * a.re).powi(2) + ((1.0 - r2n) * a.im).powi(2);
        modulus.push(n, lhs, 4.0 * a0 * a0);
        real_part.push(n, a.re.abs(), 2.0 * a0 / (1.0 + r2n));
    }
    Ok([modulus.finish(), real_part.finish()])
}

/// `|a_n| <= 2 a_0 / (1 + R^2n)` for a series with real coefficients.
pub fn check_real_coefficients(s: &FaberSeries) -> Result<InequalityReport> {
    let (s, a0) = prepare(s)?;
    let scale = s.coeffs().iter().map(|a| a.norm()).fold(1.0, f64::max);
    if let Some(n) = s.coeffs().iter().position(|a| a.im.abs() > REAL_NOISE * scale) {
        return Err(Error::Hypothesis(format!("coefficient a_{n} is not real")));
    }
    let level = s.level();
    let mut report = InequalityReport::builder(Family::RealCoefficient, level, Tolerance::COEFFICIENT);
    let mut r2n = 1.0;
    for n in 1..=s.order() {
        r2n *= level * level;
        report.push(n, s.coeff(n).norm(), 2.0 * a0 / (1.0 + r2n));
    }
    Ok(report.finish())
}

/// `|a_n| <= 2 sqrt(1+R^4n) / (1-R^4n) * sqrt(a_0 - R^2n re a_2n) * sqrt(a_0)`
/// for `1 <= n <= N/2`.
pub fn check_mixed_index(s: &FaberSeries) -> Result<InequalityReport> {
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let mut report = InequalityReport::builder(Family::MixedIndex, level, Tolerance::COEFFICIENT);
    for n in 1..=s.order() / 2 {
        let r2n = level.powi(2 * n as i32);
        let r4n = r2n * r2n;
        let lhs = s.coeff(n).norm();
        let radicand = a0 - r2n * s.coeff(2 * n).re;
        let factor = 2.0 * (1.0 + r4n).sqrt() / (1.0 - r4n) * a0.sqrt();
        if radicand < -1e-12 * a0 {
            report.push_violated(n, lhs, 0.0, "a_0 - R^2n re a_2n < 0");
        } else {
            report.push(n, lhs, factor * radicand.max(0.0).sqrt());
        }
    }
    Ok(report.finish())
}

/// `|a_2n| <= 2 / (1 - R^4n) * sqrt(a_0^2 - R^4n re^2 a_2n)` for `1 <= n <= N/2`.
pub fn check_doubled_index(s: &FaberSeries) -> Result<InequalityReport> {
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let mut report = InequalityReport::builder(Family::DoubledIndex, level, Tolerance::COEFFICIENT);
    for n in 1..=s.order() / 2 {
        let r4n = level.powi(4 * n as i32);
        let a2n = s.coeff(2 * n);
        let radicand = a0 * a0 - r4n * a2n.re * a2n.re;
        if radicand < -1e-12 * a0 * a0 {
            report.push_violated(n, a2n.norm(), 0.0, "a_0^2 - R^4n re^2 a_2n < 0");
        } else {
            report.push(n, a2n.norm(), 2.0 / (1.0 - r4n) * radicand.max(0.0).sqrt());
        }
    }
    Ok(report.finish())
}

/// Right side of the pair bound, `2 a_0 R^n / (1 - R^2n) + 2 a_0 R^2n / (1 + R^4n)`.
pub fn pair_majorant(a0: f64, level: f64, n: usize) -> f64 {
    let rn = level.powi(n as i32);
    let r2n = rn * rn;
    2.0 * a0 * rn / (1.0 - r2n) + 2.0 * a0 * r2n / (1.0 + r2n * r2n)
}

/// Sum of the two individual real-part style bounds,
/// `2 a_0 R^n / (1 - R^2n) + 2 a_0 R^2n / (1 - R^4n)`.
pub fn pair_majorant_naive(a0: f64, level: f64, n: usize) -> f64 {
    let rn = level.powi(n as i32);
    let r2n = rn * rn;
    2.0 * a0 * rn / (1.0 - r2n) + 2.0 * a0 * r2n / (1.0 - r2n * r2n)
}

/// `|a_n| R^n + |a_2n| R^2n <= pair_majorant` for `1 <= n <= N/2`, when
/// `R <= PAIR_BOUND_MAX_LEVEL`.
pub fn check_pair_majorant(s: &FaberSeries) -> Result<InequalityReport> {
    require_pair_regime(s.level())?;
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let mut report = InequalityReport::builder(Family::PairMajorant, level, Tolerance::COEFFICIENT);
    for n in 1..=s.order() / 2 {
        let rn = level.powi(n as i32);
        let lhs = s.coeff(n).norm() * rn + s.coeff(2 * n).norm() * rn * rn;
        report.push(n, lhs, pair_majorant(a0, level, n));
    }
    Ok(report.finish())
}

/// `re^2 a_2n <= 4 a_0 (1+R^8n) / (1+R^4n)^4 * (a_0 + R^4n re a_4n)` for
/// `1 <= n <= N/4`.
pub fn check_second_order(s: &FaberSeries) -> Result<InequalityReport> {
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let mut report = InequalityReport::builder(Family::SecondOrder, level, Tolerance::COEFFICIENT);
    for n in 1..=s.order() / 4 {
        let r4n = level.powi(4 * n as i32);
        let lhs = s.coeff(2 * n).re.powi(2);
        let rhs = 4.0 * a0 * (1.0 + r4n * r4n) / (1.0 + r4n).powi(4) * (a0 + r4n * s.coeff(4 * n).re);
        report.push(n, lhs, rhs);
    }
    Ok(report.finish())
}

/// `sum_{n=1..N} R^n |a_n| <= (a_0 / 2) * series_general(R)` as a single
/// entry indexed by `N`, when `R <= PAIR_BOUND_MAX_LEVEL`.
///
/// The right side uses a partial sum of the general series, which is a lower
/// estimate of the full bound.
pub fn check_majorant_sum(s: &FaberSeries) -> Result<InequalityReport> {
    require_pair_regime(s.level())?;
    let (s, a0) = prepare(s)?;
    let level = s.level();
    let lhs: f64 = (1..=s.order())
        .map(|n| level.powi(n as i32) * s.coeff(n).norm())
        .sum();
    let rhs = 0.5 * a0 * series_general(level, 1e-15, Truncation::Adaptive)?.value;
    let mut report = InequalityReport::builder(Family::MajorantSum, level, Tolerance::COEFFICIENT);
    report.push(s.order(), lhs, rhs);
    Ok(report.finish())
}

/// Every coefficient family applicable to `s` at its level.
///
/// The pair and majorant-sum families are skipped above their regime and the
/// real-coefficient family is added only for real series.
pub fn check_all(s: &FaberSeries) -> Result<Vec<InequalityReport>> {
    let mut reports: Vec<InequalityReport> = check_caratheodory_basic(s)?.into();
    reports.push(check_mixed_index(s)?);
    reports.push(check_doubled_index(s)?);
    reports.push(check_second_order(s)?);
    if s.level() <= PAIR_BOUND_MAX_LEVEL {
        reports.push(check_pair_majorant(s)?);
        reports.push(check_majorant_sum(s)?);
    }
    if s.coeffs()[1..].iter().all(|a| a.im == 0.0) {
        reports.push(check_real_coefficients(s)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn unit(level: f64, order: usize) -> FaberSeries {
        let mut c = vec![Complex64::default(); order + 1];
        c[0] = Complex64::new(1.0, 0.0);
        FaberSeries::new(level, c).unwrap()
    }

    #[test]
    fn constant_slack_values() {
        let level = 0.2;
        let [m, r] = check_caratheodory_basic(&unit(level, 6)).unwrap();
        for (n, e) in m.entries.iter().enumerate() {
            assert_eq!(e.slack, 4.0);
            assert_eq!(r.entries[n].slack, 2.0 / (1.0 + level.powi(2 * (n as i32 + 1))));
        }
        let mixed = check_mixed_index(&unit(level, 6)).unwrap();
        for e in &mixed.entries {
            let r4n = level.powi(4 * e.n as i32);
            assert!((e.slack - 2.0 * (1.0 + r4n).sqrt() / (1.0 - r4n)).abs() < 1e-15);
        }
        assert!(check_pair_majorant(&unit(level, 6)).unwrap().all_hold);
        assert!(check_second_order(&unit(level, 8)).unwrap().all_hold);
        assert!(check_majorant_sum(&unit(level, 8)).unwrap().all_hold);
    }

    #[test]
    fn first_coefficient_example() {
        let s = FaberSeries::from_real(0.2, &[1.0, 0.3]).unwrap();
        let [m, _] = check_caratheodory_basic(&s).unwrap();
        assert!((m.entries[0].lhs - 0.097344).abs() < 1e-15);
        assert!(m.all_hold);
    }

    #[test]
    fn disc_limit() {
        let s = FaberSeries::from_real(0.0, &[1.0, 1.9, -1.5, 0.5]).unwrap();
        let mixed = check_mixed_index(&s).unwrap();
        assert!((mixed.entries[0].rhs - 2.0).abs() < 1e-15);
        let doubled = check_doubled_index(&s).unwrap();
        assert!((doubled.entries[0].rhs - 2.0).abs() < 1e-15);
    }

    #[test]
    fn regime_and_hypothesis_errors() {
        assert!(matches!(check_pair_majorant(&unit(0.3, 4)), Err(Error::Regime(_))));
        assert!(matches!(check_majorant_sum(&unit(0.21, 4)), Err(Error::Regime(_))));
        let bad = FaberSeries::from_real(0.1, &[-1.0, 0.0]).unwrap();
        assert!(matches!(check_mixed_index(&bad), Err(Error::Hypothesis(_))));
        let complex = FaberSeries::new(0.1, vec![Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.2)]).unwrap();
        assert!(matches!(check_real_coefficients(&complex), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn flags_negative_radicand() {
        // not positive on the boundary, and a_0 - R^2 a_2 < 0
        let s = FaberSeries::from_real(0.5, &[1.0, 0.0, 10.0]).unwrap();
        let r = check_mixed_index(&s).unwrap();
        assert!(!r.all_hold);
        assert!(r.entries[0].note.is_some());
    }

    #[test]
    fn majorant_near_extremal_first_coefficient() {
        let level = 0.2;
        let a1 = 2.0 / (1.0 + level * level) * (1.0 - 1e-6);
        let s = FaberSeries::from_real(level, &[1.0, a1]).unwrap();
        let r = check_majorant_sum(&s).unwrap();
        assert!(r.all_hold);
        assert!(r.entries[0].lhs < r.entries[0].rhs);
    }

    #[test]
    fn pair_majorant_beats_naive_sum() {
        for n in 1..20 {
            for k in 1..=20 {
                let level = PAIR_BOUND_MAX_LEVEL * k as f64 / 20.0;
                assert!(pair_majorant(1.0, level, n) <= pair_majorant_naive(1.0, level, n));
            }
        }
    }
}
