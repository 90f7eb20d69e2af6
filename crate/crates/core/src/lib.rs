//! Levin-type sequence transformations with polynomial weights, their
//! Richardson-type counterparts, and the rational approximants they produce
//! when applied to power series.
//!
//! Every computation is generic over [`Scalar`], realized by `f64` and by
//! exact big rationals ([`Rational`]).

pub mod approximant;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod estimate;
pub mod poly;
pub mod richardson;
pub mod scalar;
pub mod schedule;
pub mod sequence;

pub use approximant::{EpsilonTable, RationalApproximant};
pub use corpus::{ModelSequenceSpec, ReferenceProblem};
pub use engine::{Family, TableEntry, TransformTable};
pub use error::{Error, Result};
pub use estimate::{EstimateKind, RemainderEstimator};
pub use poly::{Polynomial, PowerSeriesCoefficients};
pub use richardson::{InterpolationPoints, RichardsonFamily, RichardsonSchedule};
pub use scalar::{Rational, Scalar, ZeroPolicy};
pub use schedule::QSchedule;
pub use sequence::Sequence;
