//! Faber coefficients: extraction, generation of positive-real-part series,
//! and the coefficient inequalities they satisfy.

pub mod campaign;
pub mod envelope;
pub mod generator;
pub mod inequalities;
pub mod quadrature;
pub mod report;
pub mod series;

pub use campaign::{check_family, run_campaign, CampaignConfig, CampaignSummary, FamilySummary};
pub use envelope::{check_envelope_derivatives, maximize_pair_envelope, ComposedChain, EnvelopeMaximum};
pub use generator::{generate_positive_real_part, generate_with, GeneratorMode, GeneratorOptions};
pub use inequalities::*;
pub use quadrature::{extract_coefficients, extract_physical, QuadratureGrid};
pub use report::{Entry, Family, InequalityReport, Tolerance};
pub use series::FaberSeries;
