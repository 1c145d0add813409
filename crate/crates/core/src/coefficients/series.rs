use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite Faber expansion `f(w) = a_0 + sum_{n=1..N} a_n (w^n + R^(2n) w^(-n))`.
///
/// `level` is the condenser parameter `R`. The value `R = 0` is accepted and
/// gives the Taylor basis of the disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaberSeries {
    level: f64,
    coeffs: Vec<Complex64>,
}

impl FaberSeries {
    pub fn new(level: f64, coeffs: Vec<Complex64>) -> Result<Self> {
        if !(0.0..1.0).contains(&level) {
            return Err(Error::Range(format!("level R = {level} must lie in [0, 1)")));
        }
        if coeffs.is_empty() {
            return Err(Error::Domain("a Faber series needs at least a_0".into()));
        }
        if let Some(n) = coeffs.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
            return Err(Error::Domain(format!("coefficient a_{n} is not finite")));
        }
        Ok(Self { level, coeffs })
    }

    pub fn constant(level: f64, a0: Complex64) -> Result<Self> {
        Self::new(level, vec![a0])
    }

    /// Builds a series from real coefficients.
    pub fn from_real(level: f64, coeffs: &[f64]) -> Result<Self> {
        Self::new(level, coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_n`, zero past the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|a| a.im == 0.0)
    }

    /// Value at `w != 0` (two Horner passes, in `w` and in `R^2 / w`).
    pub fn eval(&self, w: Complex64) -> Result<Complex64> {
        let a0 = self.coeffs[0];
        if self.order() == 0 {
            return Ok(a0);
        }
        if w == Complex64::default() {
            return Err(Error::Domain("Faber series of positive order is singular at w = 0".into()));
        }
        let inner = self.level * self.level / w;
        let horner = |x: Complex64| {
            self.coeffs[1..]
                .iter()
                .rev()
                .fold(Complex64::default(), |acc, &a| (acc + a) * x)
        };
        Ok(a0 + horner(w) + horner(inner))
    }

    /// `e^{i alpha} f`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let u = Complex64::from_polar(1.0, alpha);
        Self {
            level: self.level,
            coeffs: self.coeffs.iter().map(|&a| a * u).collect(),
        }
    }

    /// Linear combination `alpha f + beta g` of two series at the same level.
    pub fn combine(&self, alpha: Complex64, other: &Self, beta: Complex64) -> Result<Self> {
        if self.level != other.level {
            return Err(Error::Domain("series live on different condensers".into()));
        }
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|n| alpha * self.coeff(n) + beta * other.coeff(n))
            .collect();
        Self::new(self.level, coeffs)
    }

    /// Replaces `a_0` by `re(a_0)`.
    ///
    /// Subtracting the constant `i im(a_0)` leaves `re f` unchanged, so a
    /// series with positive real part keeps it; every coefficient inequality
    /// is stated for this normalization. Fails when `re(a_0) <= 0`.
    pub fn with_real_mean(&self) -> Result<Self> {
        let a0 = self.coeffs[0];
        if !(a0.re > 0.0) {
            return Err(Error::Hypothesis(format!(
                "re(a_0) = {} must be positive (re(a_0) = 0 is degenerate)",
                a0.re
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs[0] = Complex64::new(a0.re, 0.0);
        Ok(Self {
            level: self.level,
            coeffs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::condenser::faber_eval;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_series() {
        let c = Complex64::new(0.3, -1.2);
        let s = FaberSeries::constant(0.4, c).unwrap();
        assert_eq!(s.eval(Complex64::new(0.0, 0.0)).unwrap(), c);
        assert_eq!(s.eval(Complex64::new(2.0, 5.0)).unwrap(), c);
    }

    #[test]
    fn basis_element() {
        let s = FaberSeries::from_real(0.3, &[0.0, 0.0, 1.0]).unwrap();
        for k in 0..10 {
            let w = Complex64::from_polar(0.5 + 0.1 * k as f64, 0.7 * k as f64);
            let expect = faber_eval(2, w, 0.3).unwrap();
            assert_abs_diff_eq!((s.eval(w).unwrap() - expect).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn real_part_on_unit_circle() {
        // expanding w + R^2/w on |w| = 1
        let (t, level) = (0.7, 0.25);
        let s = FaberSeries::from_real(level, &[1.0, t]).unwrap();
        for k in 0..32 {
            let theta = 0.2 * k as f64;
            let v = s.eval(Complex64::from_polar(1.0, theta)).unwrap();
            assert_abs_diff_eq!(v.re, 1.0 + t * (1.0 + level * level) * theta.cos(), epsilon = 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(FaberSeries::new(1.0, vec![Complex64::default()]).is_err());
        assert!(FaberSeries::new(0.2, vec![]).is_err());
        assert!(FaberSeries::from_real(0.2, &[1.0, f64::NAN]).is_err());
        let s = FaberSeries::from_real(0.2, &[1.0, 1.0]).unwrap();
        assert!(s.eval(Complex64::default()).is_err());
    }

    #[test]
    fn real_mean_normalization() {
        let s = FaberSeries::new(0.2, vec![Complex64::new(2.0, 3.0), Complex64::new(0.1, 0.4)]).unwrap();
        let t = s.with_real_mean().unwrap();
        assert_eq!(t.coeff(0), Complex64::new(2.0, 0.0));
        assert_eq!(t.coeff(1), s.coeff(1));
        let bad = FaberSeries::new(0.2, vec![Complex64::new(0.0, 1.0)]).unwrap();
        assert!(matches!(bad.with_real_mean(), Err(Error::Hypothesis(_))));
    }
}
