use serde::Serialize;

/// Names of the checked inequality families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `(1+R^2n)^2 re^2 a_n + (1-R^2n)^2 im^2 a_n <= 4 re^2 a_0`.
    CaratheodoryModulus,
    /// `|re a_n| <= 2 re a_0 / (1 + R^2n)`.
    CaratheodoryRealPart,
    /// `|a_n| <= 2 re a_0 / (1 + R^2n)` for real coefficients.
    RealCoefficient,
    /// `|a_n|` bounded through `re a_0 - R^2n re a_2n`.
    MixedIndex,
    /// `|a_2n|` bounded through `re^2 a_0 - R^4n re^2 a_2n`.
    DoubledIndex,
    /// `|a_n| R^n + |a_2n| R^2n` against its closed-form majorant.
    PairMajorant,
    /// `re^2 a_2n` bounded through `a_0 + R^4n re a_4n`.
    SecondOrder,
    /// `sum R^n |a_n|` against `a_0 / 2` times the general defining series.
    MajorantSum,
    /// Scaled derivative of the one-step composed bound, against `-8`.
    ComposedDerivative,
    /// Same scan against the sharper constant `-4(1+R^4n)/((1-R^4n)^2 (1+R^8n))`.
    ComposedDerivativeSharp,
    /// One-sided derivatives agree at the junction point.
    ComposedJunction,
    /// Doubling chains of depth `k`, against `-2^(k+3)`.
    ChainDerivative,
    /// Doubling chains against `-2^(k+3) R^(4 n0 - 4 m)` in the same units.
    ChainDerivativeCorrected,
    /// Summed chain allowances against `16` and `8 / (1 - 2 R^(8 n0 / 3))`.
    ChainTail,
    /// Scaled slope of the pair envelope, against `1/4`.
    PairEnvelopeSlope,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::CaratheodoryModulus => "caratheodory_modulus",
            Family::CaratheodoryRealPart => "caratheodory_real_part",
            Family::RealCoefficient => "real_coefficient",
            Family::MixedIndex => "mixed_index",
            Family::DoubledIndex => "doubled_index",
            Family::PairMajorant => "pair_majorant",
            Family::SecondOrder => "second_order",
            Family::MajorantSum => "majorant_sum",
            Family::ComposedDerivative => "composed_derivative",
            Family::ComposedDerivativeSharp => "composed_derivative_sharp",
            Family::ComposedJunction => "composed_junction",
            Family::ChainDerivative => "chain_derivative",
            Family::ChainDerivativeCorrected => "chain_derivative_corrected",
            Family::ChainTail => "chain_tail",
            Family::PairEnvelopeSlope => "pair_envelope_slope",
        }
    }
}

/// How much negative slack still counts as holding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    /// `slack >= -eps * max(1, |rhs|)`.
    Relative(f64),
    /// `slack >= -eps`.
    Absolute(f64),
}

impl Tolerance {
    /// Quadrature noise allowance for coefficient inequalities.
    pub const COEFFICIENT: Tolerance = Tolerance::Relative(1e-10);
    /// Finite-difference allowance for derivative scans.
    pub const DERIVATIVE: Tolerance = Tolerance::Absolute(1e-7);

    fn scale(self, rhs: f64) -> f64 {
        match self {
            Tolerance::Relative(_) => rhs.abs().max(1.0),
            Tolerance::Absolute(_) => 1.0,
        }
    }

    fn eps(self) -> f64 {
        match self {
            Tolerance::Relative(e) | Tolerance::Absolute(e) => e,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Entry {
    pub n: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Slack of one inequality family, entry by entry.
///
/// `min_slack` is the smallest slack divided by the tolerance scale of its
/// entry, so `all_hold` is exactly `min_slack >= -eps`. It is `None` for an
/// empty report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub family: Family,
    #[serde(rename = "R")]
    pub level: f64,
    pub entries: Vec<Entry>,
    pub all_hold: bool,
    pub min_slack: Option<f64>,
}

impl InequalityReport {
    pub fn builder(family: Family, level: f64, tolerance: Tolerance) -> ReportBuilder {
        ReportBuilder {
            family,
            level,
            tolerance,
            entries: Vec::new(),
            min_scaled: None,
        }
    }
}

pub struct ReportBuilder {
    family: Family,
    level: f64,
    tolerance: Tolerance,
    entries: Vec<Entry>,
    min_scaled: Option<f64>,
}

impl ReportBuilder {
    /// Records `lhs <= rhs` at index `n`.
    pub fn push(&mut self, n: usize, lhs: f64, rhs: f64) {
        self.push_inner(n, lhs, rhs, None);
    }

    /// Records an entry whose hypothesis failed; it never holds.
    pub fn push_violated(&mut self, n: usize, lhs: f64, rhs: f64, note: impl Into<String>) {
        self.push_inner(n, lhs, rhs, Some(note.into()));
    }

    fn push_inner(&mut self, n: usize, lhs: f64, rhs: f64, note: Option<String>) {
        let slack = rhs - lhs;
        let mut scaled = slack / self.tolerance.scale(rhs);
        if note.is_some() || scaled.is_nan() {
            scaled = f64::NEG_INFINITY;
        }
        let holds = scaled >= -self.tolerance.eps();
        self.min_scaled = Some(self.min_scaled.map_or(scaled, |m: f64| m.min(scaled)));
        self.entries.push(Entry {
            n,
            lhs,
            rhs,
            slack,
            holds,
            note,
        });
    }

    pub fn finish(self) -> InequalityReport {
        let all_hold = self.entries.iter().all(|e| e.holds);
        InequalityReport {
            family: self.family,
            level: self.level,
            entries: self.entries,
            all_hold,
            // keep the JSON finite
            min_slack: self.min_scaled.map(|m| m.max(-f64::MAX)),
        }
    }
}
