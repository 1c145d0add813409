//! Bohr radius of the elliptic condenser `([-1, 1], E)` in its Faber basis.
//!
//! * [`condenser`]: conformal maps, Faber polynomials and their norms.
//! * [`coefficients`]: Faber series, coefficient extraction, a generator of
//!   positive-real-part series and the coefficient inequalities they obey.
//! * [`radius`]: the defining series, their roots and Bohr sums.
//! * [`extremal`]: the extremal families showing the radii are optimal.

// `!(x > 0.0)` guards are meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coefficients;
pub mod condenser;
pub mod error;
pub mod extremal;
pub mod par;
pub mod radius;
pub mod summation;

pub use coefficients::{FaberSeries, InequalityReport, QuadratureGrid};
pub use condenser::EllipticCondenser;
pub use error::{Error, Result};
pub use extremal::{ExtremalFamily, ExtremalTrace};
pub use par::Execution;
pub use radius::{RadiusKind, RadiusSolution};
