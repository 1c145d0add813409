//! Batches of generated series run through the coefficient checks.

use std::collections::BTreeMap;

use serde::Serialize;

use super::generator::{generate_with, GeneratorOptions};
use super::inequalities::{
    check_caratheodory_basic, check_doubled_index, check_majorant_sum, check_mixed_index,
    check_pair_majorant, check_real_coefficients, check_second_order, PAIR_BOUND_MAX_LEVEL,
};
use super::report::{Family, InequalityReport};
use super::series::FaberSeries;
use crate::error::{Error, Result};
use crate::par::{map_range, Execution};

/// Families a campaign can run on generated series.
pub const COEFFICIENT_FAMILIES: [Family; 8] = [
    Family::CaratheodoryModulus,
    Family::CaratheodoryRealPart,
    Family::RealCoefficient,
    Family::MixedIndex,
    Family::DoubledIndex,
    Family::PairMajorant,
    Family::SecondOrder,
    Family::MajorantSum,
];

impl Family {
    /// Whether the family is only proved for `R <= PAIR_BOUND_MAX_LEVEL`.
    pub fn needs_pair_regime(self) -> bool {
        matches!(self, Family::PairMajorant | Family::MajorantSum)
    }

    pub fn from_name(name: &str) -> Option<Family> {
        COEFFICIENT_FAMILIES.into_iter().find(|f| f.name() == name)
    }
}

/// Runs one coefficient family on `s`.
pub fn check_family(s: &FaberSeries, family: Family) -> Result<InequalityReport> {
    match family {
        Family::CaratheodoryModulus => Ok(check_caratheodory_basic(s)?[0].clone()),
        Family::CaratheodoryRealPart => Ok(check_caratheodory_basic(s)?[1].clone()),
        Family::RealCoefficient => check_real_coefficients(s),
        Family::MixedIndex => check_mixed_index(s),
        Family::DoubledIndex => check_doubled_index(s),
        Family::PairMajorant => check_pair_majorant(s),
        Family::SecondOrder => check_second_order(s),
        Family::MajorantSum => check_majorant_sum(s),
        other => Err(Error::Domain(format!("{} is not a coefficient family", other.name()))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CampaignConfig {
    pub level: f64,
    pub count: usize,
    /// Series `i` uses seed `seed + i`.
    pub seed: u64,
    pub n_max: usize,
    pub real_coefficients: bool,
    /// Families to run; `None` picks every family valid at `level`.
    pub families: Option<Vec<Family>>,
}

impl CampaignConfig {
    pub fn new(level: f64, count: usize) -> Self {
        Self {
            level,
            count,
            seed: 0,
            n_max: 64,
            real_coefficients: false,
            families: None,
        }
    }

    fn resolved_families(&self) -> Result<Vec<Family>> {
        match &self.families {
            Some(list) => {
                if let Some(f) = list.iter().find(|f| f.needs_pair_regime() && self.level > PAIR_BOUND_MAX_LEVEL) {
                    return Err(Error::Regime(format!(
                        "{} requires R <= {PAIR_BOUND_MAX_LEVEL}, got R = {}",
                        f.name(),
                        self.level
                    )));
                }
                if list.contains(&Family::RealCoefficient) && !self.real_coefficients {
                    return Err(Error::Hypothesis("real_coefficient needs a real-coefficient campaign".into()));
                }
                Ok(list.clone())
            }
            None => Ok(COEFFICIENT_FAMILIES
                .into_iter()
                .filter(|f| !(f.needs_pair_regime() && self.level > PAIR_BOUND_MAX_LEVEL))
                .filter(|f| *f != Family::RealCoefficient || self.real_coefficients)
                .collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySummary {
    pub reports: usize,
    pub all_hold: bool,
    pub min_slack: Option<f64>,
    /// Largest `lhs / rhs` over entries with `rhs > 0`; how close the
    /// campaign came to equality.
    pub max_ratio: f64,
    /// Seeds whose report did not hold.
    pub failing_seeds: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignSummary {
    #[serde(rename = "R")]
    pub level: f64,
    pub count: usize,
    pub seed: u64,
    pub n_max: usize,
    pub real_coefficients: bool,
    pub families: BTreeMap<&'static str, FamilySummary>,
    pub all_hold: bool,
}

/// Generates `count` series and checks them. Results are combined in seed
/// order, so the summary does not depend on the execution mode.
pub fn run_campaign(config: &CampaignConfig, exec: Execution) -> Result<CampaignSummary> {
    let families = config.resolved_families()?;
    let options = GeneratorOptions {
        real_coefficients: config.real_coefficients,
        mode: None,
    };
    let per_seed: Vec<Result<Vec<InequalityReport>>> = map_range(exec, config.count, |i| {
        let s = generate_with(config.seed + i as u64, config.level, config.n_max, options)?;
        families.iter().map(|&f| check_family(&s, f)).collect()
    });

    let mut summaries: BTreeMap<&'static str, FamilySummary> = families
        .iter()
        .map(|f| {
            (
                f.name(),
                FamilySummary {
                    reports: 0,
                    all_hold: true,
                    min_slack: None,
                    max_ratio: 0.0,
                    failing_seeds: Vec::new(),
                },
            )
        })
        .collect();
    for (i, reports) in per_seed.into_iter().enumerate() {
        for report in reports? {
            let entry = summaries.get_mut(report.family.name()).expect("family was requested");
            entry.reports += 1;
            if !report.all_hold {
                entry.all_hold = false;
                entry.failing_seeds.push(config.seed + i as u64);
            }
            for e in report.entries.iter().filter(|e| e.rhs > 0.0) {
                entry.max_ratio = entry.max_ratio.max(e.lhs / e.rhs);
            }
            if let Some(m) = report.min_slack {
                entry.min_slack = Some(entry.min_slack.map_or(m, |x: f64| x.min(m)));
            }
        }
    }
    let all_hold = summaries.values().all(|s| s.all_hold);
    Ok(CampaignSummary {
        level: config.level,
        count: config.count,
        seed: config.seed,
        n_max: config.n_max,
        real_coefficients: config.real_coefficients,
        families: summaries,
        all_hold,
    })
}
