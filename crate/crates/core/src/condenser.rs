//! Geometry of the elliptic condenser `([-1, 1], E)`.
//!
//! Points are handled in the normalized exterior coordinate `w`, in which the
//! segment `[-1, 1]` is the circle `|w| = R` and the ellipse boundary is the
//! unit circle. The physical coordinate is `z = zhukovskii(w / R)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The condenser fixed by its level `R` (equivalently `rho = 1 / R`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticCondenser {
    level: f64,
}

impl EllipticCondenser {
    /// Builds the condenser whose segment sits at level `R` in the normalized
    /// exterior coordinate. Requires `0 < R < 1`.
    pub fn new(level: f64) -> Result<Self> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::Range(format!("condenser level R = {level} must lie in (0, 1)")));
        }
        Ok(Self { level })
    }

    /// Builds the condenser from the exterior-map level `rho > 1` of the ellipse.
    pub fn from_rho(rho: f64) -> Result<Self> {
        if !(rho > 1.0 && rho.is_finite()) {
            return Err(Error::Range(format!("rho = {rho} must exceed 1")));
        }
        Self::new(1.0 / rho)
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn rho(&self) -> f64 {
        1.0 / self.level
    }

    /// Eccentricity of the ellipse `∂E`.
    pub fn eccentricity(&self) -> f64 {
        eccentricity(self.rho()).expect("rho > 1 by construction")
    }
}

/// The Zhukovskii function `(w + 1/w) / 2`.
pub fn zhukovskii(w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("zhukovskii is singular at w = 0".into()));
    }
    Ok(0.5 * (w + w.inv()))
}

/// Exterior conformal map of `[-1, 1]`: the root of `w^2 - 2 z w + 1 = 0`
/// with `|w| >= 1`.
///
/// On the slit `[-1, 1]` both roots lie on the unit circle and the one with
/// nonnegative imaginary part is returned.
pub fn exterior_map(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Complex64::new(z.re, (1.0 - z.re * z.re).sqrt());
    }
    let s = (z - 1.0).sqrt() * (z + 1.0).sqrt();
    let plus = z + s;
    let minus = z - s;
    if plus.norm_sqr() >= minus.norm_sqr() {
        plus
    } else {
        minus
    }
}

/// Faber polynomial `F_n` of the ellipse in normalized coordinates:
/// `1` for `n = 0`, otherwise `w^n + R^(2n) w^(-n)`.
pub fn faber_eval(n: u32, w: Complex64, level: f64) -> Result<Complex64> {
    if !(0.0..1.0).contains(&level) {
        return Err(Error::Range(format!("level R = {level} must lie in [0, 1)")));
    }
    if n == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!("F_{n} is singular at w = 0")));
    }
    let wn = w.powi(n as i32);
    Ok(wn + level.powi(2 * n as i32) / wn)
}

/// Supremum of `|F_n|` over the level circle `|w| = r`, i.e. `r^n + R^(2n) r^(-n)`.
///
/// Valid for `R <= r <= 1`; at `r = R` this is the norm on the segment, `2 R^n`.
pub fn faber_sup_norm(n: u32, r: f64, level: f64) -> Result<f64> {
    if !(level..=1.0).contains(&r) {
        return Err(Error::Range(format!("level circle r = {r} outside [R, 1] = [{level}, 1]")));
    }
    let rn = r.powi(n as i32);
    Ok(rn + level.powi(2 * n as i32) / rn)
}

/// Point of the level curve `|w| = r` at angle `theta`, mapped to the
/// physical plane.
pub fn boundary_point(theta: f64, r: f64, cond: &EllipticCondenser) -> Result<Complex64> {
    let level = cond.level();
    if r < level {
        return Err(Error::Range(format!("level r = {r} is inside the segment level R = {level}")));
    }
    zhukovskii(Complex64::from_polar(r / level, theta))
}

/// Eccentricity `2 rho / (1 + rho^2)` of the confocal ellipse at level `rho`.
pub fn eccentricity(rho: f64) -> Result<f64> {
    if !(rho >= 1.0) {
        return Err(Error::Range(format!("rho = {rho} must be at least 1")));
    }
    Ok(2.0 * rho / (1.0 + rho * rho))
}
