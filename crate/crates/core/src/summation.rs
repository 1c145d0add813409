//! Compensated summation and tail-bounded series truncation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the number of terms any adaptive truncation may use.
pub const MAX_TERMS: usize = 10_000;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

/// Componentwise compensated sum of complex terms.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexNeumaierSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexNeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// A series truncated at `order` terms together with a rigorous bound on the
/// omitted tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedSum {
    pub value: f64,
    pub order: usize,
    pub tail_bound: f64,
}

/// How many terms of a series to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Add terms until the analytic tail bound drops below `tol / 2`.
    #[default]
    Adaptive,
    /// Always keep exactly this many terms; the tail bound is still reported.
    Fixed(usize),
}

/// Sums `term(1) + term(2) + ...` with compensated arithmetic.
///
/// `tail(n)` must bound the absolute value of everything after the `n`-th
/// term. Under [`Truncation::Adaptive`] summation stops at the first `n` with
/// `tail(n) < tol / 2`.
pub fn sum_series(
    term: impl Fn(usize) -> f64,
    tail: impl Fn(usize) -> f64,
    tol: f64,
    truncation: Truncation,
) -> Result<TruncatedSum> {
    let mut acc = NeumaierSum::new();
    match truncation {
        Truncation::Fixed(order) => {
            for n in 1..=order {
                acc.add(term(n));
            }
            Ok(TruncatedSum {
                value: acc.value(),
                order,
                tail_bound: tail(order),
            })
        }
        Truncation::Adaptive => {
            let target = 0.5 * tol;
            let mut n = 0;
            loop {
                let bound = tail(n);
                if bound < target {
                    return Ok(TruncatedSum {
                        value: acc.value(),
                        order: n,
                        tail_bound: bound,
                    });
                }
                if n == MAX_TERMS {
                    return Err(Error::TruncationCap { cap: MAX_TERMS, tol });
                }
                n += 1;
                acc.add(term(n));
            }
        }
    }
}

/// Complex counterpart of [`sum_series`], always adaptive.
pub fn sum_complex_series(
    term: impl Fn(usize) -> Complex64,
    tail: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<(Complex64, usize)> {
    let target = 0.5 * tol;
    let mut acc = ComplexNeumaierSum::new();
    let mut n = 0;
    loop {
        if tail(n) < target {
            return Ok((acc.value(), n));
        }
        if n == MAX_TERMS {
            return Err(Error::TruncationCap { cap: MAX_TERMS, tol });
        }
        n += 1;
        acc.add(term(n));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neumaier_recovers_cancelled_mass() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        let s: NeumaierSum = xs.iter().copied().collect();
        assert_eq!(s.value(), 2.0);
        assert_eq!(xs.iter().sum::<f64>(), 0.0);
    }

    #[test]
    fn adaptive_geometric_series() {
        let q: f64 = 0.5;
        let s = sum_series(
            |n| q.powi(n as i32),
            |n| q.powi(n as i32 + 1) / (1.0 - q),
            1e-12,
            Truncation::Adaptive,
        )
        .unwrap();
        assert!((s.value - 1.0).abs() < 1e-12);
        assert!(s.tail_bound < 5e-13);
    }

    #[test]
    fn cap_is_reported() {
        let err = sum_series(|_| 1.0, |_| 1.0, 1e-3, Truncation::Adaptive).unwrap_err();
        assert!(matches!(err, Error::TruncationCap { .. }));
    }
}
