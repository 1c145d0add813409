//! The pair envelope `G` and the derivative estimates for the composed bounds.
//!
//! Notation: `a_0 > 0`, `x_0(m) = 2 a_0 / (1 + R^4m)`, and
//!
//! * `g_m(u) = 2 / (1 - R^8m) * sqrt(a_0^2 - R^8m u^2)`,
//! * `h_m(v) = (v^2 (1+R^4m)^4 / (4 a_0 (1+R^8m)) - a_0) / R^4m`,
//!
//! so that `h_m(x_0(m)) = x_0(2m)`. A chain of depth `k` starting at `n0` is
//! `phi(t) = g_M(h_{m_k}( ... h_{m_0}(t)))` with `m_j = 2^j n0` and `M = m_k`,
//! extended by the constant `g_M(0)` to the left of the point `x_1` where the
//! chain reaches zero.
//!
//! Both `phi - g_M(0)` and its derivative are of size `R^8M`, far below the
//! resolution of `t`. The scans therefore work in offset coordinates: a point
//! `v = x_0(m)(1 - σ)` is stored through `σ`, for which `h_m` becomes
//! `σ -> σ(2 - σ)(1 + R^4m)^2 / (2 R^4m)`, and the interval `[x_1, x_0(n0)]`
//! is mapped linearly onto `s ∈ [0, 1]` (`s = 1` at `x_1`).

use super::report::{Family, InequalityReport, Tolerance};
use crate::error::{Error, Result};

/// Points of each derivative scan.
pub const SCAN_POINTS: usize = 512;
/// Finite-difference step as a fraction of the scanned interval.
pub const FD_STEP: f64 = 1e-6;
/// Agreement required of the one-sided derivatives at `x_1`.
pub const JUNCTION_TOLERANCE: f64 = 1e-5;

/// `G(x) = sqrt(a_0 (1+R^4n)(a_0 + R^2n x)) + R^n sqrt(a_0^2 - R^4n x^2)`.
pub fn pair_envelope(a0: f64, level: f64, n: usize, x: f64) -> f64 {
    let rn = level.powi(n as i32);
    let e = rn * rn;
    (a0 * (1.0 + e * e) * (a0 + e * x)).sqrt() + rn * ((a0 - e * x) * (a0 + e * x)).sqrt()
}

/// `G(x)` given also `gap = a_0 / R^2n - x`, which keeps `a_0 - R^2n x`
/// accurate near the right edge of the domain.
pub fn pair_envelope_with_gap(a0: f64, level: f64, n: usize, x: f64, gap: f64) -> f64 {
    let rn = level.powi(n as i32);
    let e = rn * rn;
    (a0 * (1.0 + e * e) * (a0 + e * x)).sqrt() + rn * (e * gap * (a0 + e * x)).sqrt()
}

/// `a_0 / R^2n - x_2` for the positive critical point `x_2`.
pub fn upper_root_gap(a0: f64, level: f64, n: usize) -> f64 {
    let e = level.powi(2 * n as i32);
    let s = (1.0 + e * e).sqrt();
    let big = (1.0 + e * e + 16.0 * e).sqrt();
    16.0 * a0 / (big + s).powi(2)
}

/// `G'(x)`.
pub fn pair_envelope_derivative(a0: f64, level: f64, n: usize, x: f64) -> f64 {
    let rn = level.powi(n as i32);
    let e = rn * rn;
    e * (a0 * (1.0 + e * e)).sqrt() / (2.0 * (a0 + e * x).sqrt())
        - rn * e * e * x / ((a0 - e * x) * (a0 + e * x)).sqrt()
}

/// Maximum of `G` over `[0, 2 a_0 / (1 + R^4n)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeMaximum {
    pub x_star: f64,
    pub value: f64,
    /// Negative root of `G'`'s quadratic.
    pub lower_root: f64,
    /// Positive root of `G'`'s quadratic, the only critical point of `G`.
    pub upper_root: f64,
    pub right_endpoint: f64,
}

/// Largest level for which the critical point lies past the right endpoint.
pub const ENVELOPE_MAX_LEVEL: f64 = 0.447_213_595_499_957_9;

/// Roots of `4 R^6n x^2 + a_0 R^2n (1+R^4n) x - a_0^2 (1+R^4n) = 0`.
///
/// The positive root is written without cancellation.
pub fn envelope_roots(a0: f64, level: f64, n: usize) -> (f64, f64) {
    let e = level.powi(2 * n as i32);
    let s = (1.0 + e * e).sqrt();
    let big = (1.0 + e * e + 16.0 * e).sqrt();
    let lower = -a0 * s / (8.0 * e * e) * (big + s);
    let upper = 2.0 * a0 * s / (e * (big + s));
    (lower, upper)
}

pub fn maximize_pair_envelope(a0: f64, level: f64, n: usize) -> Result<EnvelopeMaximum> {
    if !(a0 > 0.0) || n == 0 {
        return Err(Error::Domain(format!("need a_0 > 0 and n >= 1, got a_0 = {a0}, n = {n}")));
    }
    if !(level > 0.0 && level <= ENVELOPE_MAX_LEVEL) {
        return Err(Error::Range(format!("R = {level} must lie in (0, 1/sqrt 5]")));
    }
    let (lower_root, upper_root) = envelope_roots(a0, level, n);
    let right_endpoint = 2.0 * a0 / (1.0 + level.powi(4 * n as i32));
    // G increases up to its critical point
    let x_star = upper_root.min(right_endpoint);
    Ok(EnvelopeMaximum {
        x_star,
        value: pair_envelope(a0, level, n, x_star),
        lower_root,
        upper_root,
        right_endpoint,
    })
}

/// Offset description of one composed chain.
#[derive(Debug, Clone)]
pub struct ComposedChain {
    level: f64,
    a0: f64,
    n0: usize,
    depth: u32,
    /// `(1 + R^4m_j)^2 / (2 R^4m_j)` per step.
    gains: Vec<f64>,
    sigma_junction: f64,
    last: usize,
    /// `R^4M / (σ_junction x_0(n0))`: converts `dΨ/ds` to `R^4M phi' / R^8M`.
    scale: f64,
}

impl ComposedChain {
    pub fn new(level: f64, a0: f64, n0: usize, depth: u32) -> Result<Self> {
        if !(a0 > 0.0) || n0 == 0 {
            return Err(Error::Domain(format!("need a_0 > 0 and n0 >= 1, got a_0 = {a0}, n0 = {n0}")));
        }
        if !(level > 0.0) {
            return Err(Error::Range(format!("R = {level} must be positive")));
        }
        if level > 0.5 {
            return Err(Error::Regime(format!("R = {level} exceeds R <= 1/2")));
        }
        let steps: Vec<usize> = (0..=depth).map(|j| n0 << j).collect();
        let gains: Vec<f64> = steps
            .iter()
            .map(|&m| {
                let r4m = level.powi(4 * m as i32);
                (1.0 + r4m).powi(2) / (2.0 * r4m)
            })
            .collect();
        if gains.iter().any(|g| !g.is_finite()) {
            return Err(Error::Range(format!("chain of depth {depth} from n0 = {n0} underflows at R = {level}")));
        }
        let sigma_junction = gains.iter().rev().fold(1.0, |y, &c| {
            let q = y / c;
            q / (1.0 + (1.0 - q).sqrt())
        });
        if sigma_junction < 1e-290 {
            return Err(Error::Range(format!("chain of depth {depth} from n0 = {n0} underflows at R = {level}")));
        }
        let last = *steps.last().unwrap();
        let x0 = 2.0 * a0 / (1.0 + level.powi(4 * n0 as i32));
        let scale = (4.0 * last as f64 * level.ln() - sigma_junction.ln() - x0.ln()).exp();
        Ok(Self {
            level,
            a0,
            n0,
            depth,
            gains,
            sigma_junction,
            last,
            scale,
        })
    }

    /// `(g_M(0) - phi) / R^8M` at scan coordinate `s`.
    pub fn decrement(&self, s: f64) -> f64 {
        if s >= 1.0 {
            return 0.0;
        }
        let sigma = self
            .gains
            .iter()
            .fold(s * self.sigma_junction, |sg, &c| sg * (2.0 - sg) * c);
        let r8m = self.level.powi(8 * self.last as i32);
        let u = 2.0 * self.a0 / (1.0 + r8m) * (1.0 - sigma);
        2.0 * u * u / ((1.0 - r8m) * (self.a0 + (self.a0 * self.a0 - r8m * u * u).max(0.0).sqrt()))
    }

    /// `R^4M phi'(t) / R^8M` by central differences in `s`.
    pub fn scaled_derivative(&self, s: f64) -> f64 {
        let h = FD_STEP;
        self.scale * (self.decrement(s + h) - self.decrement(s - h)) / (2.0 * h)
    }

    /// Second-order one-sided derivatives at the junction, `(left, right)`,
    /// in the units of [`Self::scaled_derivative`].
    pub fn junction_derivatives(&self) -> (f64, f64) {
        let h = FD_STEP;
        let d = |a: f64, b: f64, c: f64| (-3.0 * a + 4.0 * b - c) / (2.0 * h);
        let left = d(self.decrement(1.0), self.decrement(1.0 + h), self.decrement(1.0 + 2.0 * h));
        let right = -d(self.decrement(1.0), self.decrement(1.0 - h), self.decrement(1.0 - 2.0 * h));
        (self.scale * left, self.scale * right)
    }

    /// Minimum of [`Self::scaled_derivative`] over the scan grid.
    pub fn min_scaled_derivative(&self) -> f64 {
        (0..SCAN_POINTS)
            .map(|i| self.scaled_derivative(i as f64 / (SCAN_POINTS - 1) as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// The stated lower bound `-2^(k+3)` in scaled units.
    pub fn stated_bound(&self) -> f64 {
        -(2f64.powi(self.depth as i32 + 3))
    }

    /// `-2^(k+3) R^(4 n0 - 4M)`, which keeps the factors `h'_m(x_0(m)) <= 2 / R^4m`.
    pub fn corrected_bound(&self) -> f64 {
        let exponent = 4.0 * (self.n0 as f64 - self.last as f64);
        -(2f64.powi(self.depth as i32 + 3)) * (exponent * self.level.ln()).exp()
    }

    /// `-4 (1+R^4n) / ((1-R^4n)^2 (1+R^8n))`, the exact minimum for depth 0.
    pub fn sharp_bound(&self) -> f64 {
        let r4n = self.level.powi(4 * self.n0 as i32);
        -4.0 * (1.0 + r4n) / ((1.0 - r4n).powi(2) * (1.0 + r4n * r4n))
    }
}

/// `(f_n(x) - f_n(0)) / R^3n` for
/// `f_n(x) = 2 R^n / (1 - R^4n) * G(x)`, written without cancellation.
pub fn pair_envelope_increment(a0: f64, level: f64, n: usize, x: f64) -> f64 {
    let rn = level.powi(n as i32);
    let e = rn * rn;
    let first = (a0 * (1.0 + e * e)).sqrt() * x / ((a0 + e * x).sqrt() + a0.sqrt());
    let second = rn * e * x * x / (((a0 - e * x) * (a0 + e * x)).sqrt() + a0);
    2.0 / (1.0 - e * e) * (first - second)
}

/// Minimum of `f_n' / R^3n` over `[0, 2 a_0 / (1 + R^4n)]`.
pub fn min_scaled_envelope_slope(a0: f64, level: f64, n: usize) -> f64 {
    let x0 = 2.0 * a0 / (1.0 + level.powi(4 * n as i32));
    let h = FD_STEP * x0;
    (0..SCAN_POINTS)
        .map(|i| {
            let x = x0 * i as f64 / (SCAN_POINTS - 1) as f64;
            (pair_envelope_increment(a0, level, n, x + h) - pair_envelope_increment(a0, level, n, x - h))
                / (2.0 * h)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Scaled chain allowances `sum_k 2^(k+3) R^(8 n0 (2^k - 1))`, i.e. the
/// allowance series divided by `R^8n0`.
pub fn chain_tail_scaled(level: f64, n0: usize) -> f64 {
    let mut sum = 0.0;
    for k in 0..64 {
        let exponent = 8.0 * n0 as f64 * (2f64.powi(k) - 1.0);
        let term = 2f64.powi(k + 3) * (exponent * level.ln()).exp();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// Runs every derivative estimate for the chains starting at `n0` up to depth
/// `k_max`.
///
/// Reports, in order: composed derivative against `-8`, the same against the
/// sharp constant, junction agreement, chains against `-2^(k+3)` (entry `n = k`),
/// chains against the corrected bound, chain tail (entry 0 against 16, entry 1
/// against `8 / (1 - 2 R^(8 n0 / 3))`), and the envelope slope against `1/4`.
/// The derivative families are in units of `R^8M`.
pub fn check_envelope_derivatives(n0: usize, k_max: u32, level: f64, a0: f64) -> Result<Vec<InequalityReport>> {
    let base = ComposedChain::new(level, a0, n0, 0)?;
    let abs = Tolerance::DERIVATIVE;
    let rel = Tolerance::Relative(1e-7);

    let min0 = base.min_scaled_derivative();
    let mut composed = InequalityReport::builder(Family::ComposedDerivative, level, abs);
    composed.push(n0, -min0, 8.0);
    let mut sharp = InequalityReport::builder(Family::ComposedDerivativeSharp, level, abs);
    sharp.push(n0, -min0, -base.sharp_bound());

    let (left, right) = base.junction_derivatives();
    let mut junction = InequalityReport::builder(Family::ComposedJunction, level, abs);
    junction.push(n0, (left - right).abs(), JUNCTION_TOLERANCE);

    let mut chain = InequalityReport::builder(Family::ChainDerivative, level, rel);
    let mut corrected = InequalityReport::builder(Family::ChainDerivativeCorrected, level, rel);
    for k in 0..=k_max {
        let c = if k == 0 { base.clone() } else { ComposedChain::new(level, a0, n0, k)? };
        let min = c.min_scaled_derivative();
        chain.push(k as usize, -min, -c.stated_bound());
        corrected.push(k as usize, -min, -c.corrected_bound());
    }

    let tail_sum = chain_tail_scaled(level, n0);
    let mut tail = InequalityReport::builder(Family::ChainTail, level, Tolerance::COEFFICIENT);
    tail.push(0, tail_sum, 16.0);
    tail.push(1, tail_sum, 8.0 / (1.0 - 2.0 * level.powf(8.0 * n0 as f64 / 3.0)));

    let mut slope = InequalityReport::builder(Family::PairEnvelopeSlope, level, abs);
    slope.push(n0, 0.25, min_scaled_envelope_slope(a0, level, n0));

    Ok(vec![
        composed.finish(),
        sharp.finish(),
        junction.finish(),
        chain.finish(),
        corrected.finish(),
        tail.finish(),
        slope.finish(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::inequalities::pair_majorant;
    use approx::assert_relative_eq;

    fn g(a0: f64, level: f64, m: usize, u: f64) -> f64 {
        let r8m = level.powi(8 * m as i32);
        2.0 / (1.0 - r8m) * (a0 * a0 - r8m * u * u).sqrt()
    }

    fn h(a0: f64, level: f64, m: usize, v: f64) -> f64 {
        let r4m = level.powi(4 * m as i32);
        (v * v * (1.0 + r4m).powi(4) / (4.0 * a0 * (1.0 + r4m * r4m)) - a0) / r4m
    }

    #[test]
    fn roots_solve_quadratic() {
        for &(level, n) in &[(0.1, 1), (0.2, 2), (0.4, 1), (0.3, 5)] {
            let (lo, hi) = envelope_roots(1.5, level, n);
            let e = level.powi(2 * n as i32);
            let q = |x: f64| 4.0 * e * e * e * x * x + 1.5 * e * (1.0 + e * e) * x - 2.25 * (1.0 + e * e);
            assert!(lo < 0.0 && hi > 0.0);
            assert!(q(hi).abs() < 1e-10 * 2.25);
            assert!(q(lo).abs() < 1e-9 * (4.0 * e * e * e * lo * lo));
            assert!(pair_envelope_derivative(1.5, level, n, hi).abs() < 1e-12);
            assert_relative_eq!(upper_root_gap(1.5, level, n), 1.5 / e - hi, max_relative = 1e-9);
        }
    }

    #[test]
    fn endpoint_value_is_pair_majorant() {
        for n in 1..6 {
            let level = 0.2;
            let m = maximize_pair_envelope(1.0, level, n).unwrap();
            assert_eq!(m.x_star, m.right_endpoint);
            let r4n = level.powi(4 * n as i32);
            let scaled = 2.0 * level.powi(n as i32) / (1.0 - r4n) * m.value;
            assert_relative_eq!(scaled, pair_majorant(1.0, level, n), max_relative = 1e-14);
        }
        assert!(maximize_pair_envelope(1.0, 0.5, 1).is_err());
    }

    #[test]
    fn offset_map_matches_h() {
        let (a0, level, m) = (1.0, 0.3f64, 1);
        let r4m = level.powi(4 * m as i32);
        let x0 = 2.0 * a0 / (1.0 + r4m);
        let x0_next = 2.0 * a0 / (1.0 + r4m * r4m);
        for sigma in [0.0, 1e-4, 3e-3, 0.005] {
            let direct = h(a0, level, m, x0 * (1.0 - sigma));
            let offset = sigma * (2.0 - sigma) * (1.0 + r4m).powi(2) / (2.0 * r4m);
            assert_relative_eq!(direct, x0_next * (1.0 - offset), max_relative = 1e-12, epsilon = 1e-12);
        }
    }

    #[test]
    fn decrement_matches_direct_composition() {
        // at a moderate level the direct formulas keep enough digits
        let (a0, level, n0) = (1.0, 0.45, 1);
        let c = ComposedChain::new(level, a0, n0, 0).unwrap();
        let x0 = 2.0 * a0 / (1.0 + level.powi(4));
        let r8 = level.powi(8);
        for s in [0.0, 0.25, 0.5, 0.9] {
            let t = x0 * (1.0 - s * c.sigma_junction);
            let phi = g(a0, level, 1, h(a0, level, 1, t));
            let expect = (g(a0, level, 1, 0.0) - phi) / r8;
            assert_relative_eq!(c.decrement(s), expect, max_relative = 1e-7);
        }
        // the junction is where the chain reaches zero
        let x1 = x0 * (1.0 - c.sigma_junction);
        assert!(h(a0, level, 1, x1).abs() < 1e-12);
    }

    #[test]
    fn depth_zero_minimum_is_sharp_constant() {
        for &level in &[0.1, 0.2, 0.5] {
            let c = ComposedChain::new(level, 1.0, 1, 0).unwrap();
            assert_relative_eq!(c.scaled_derivative(0.0), c.sharp_bound(), max_relative = 1e-7);
            assert!(c.min_scaled_derivative() >= c.sharp_bound() - 1e-7);
        }
    }

    #[test]
    fn slope_example() {
        // f_1' >= R^3 / 4 at R = 0.2
        let m = min_scaled_envelope_slope(1.0, 0.2, 1);
        assert!(m >= 0.25, "{m}");
    }

    #[test]
    fn tail_example() {
        let level: f64 = 0.2;
        let scaled = chain_tail_scaled(level, 1);
        assert!(scaled > 8.0 && scaled < 8.0 + 1e-4);
        assert_relative_eq!(8.0 * level.powi(8), 2.048e-5, max_relative = 1e-12);
    }

    #[test]
    fn regime_errors() {
        assert!(matches!(ComposedChain::new(0.6, 1.0, 1, 0), Err(Error::Regime(_))));
        assert!(matches!(ComposedChain::new(0.0, 1.0, 1, 0), Err(Error::Range(_))));
    }
}
