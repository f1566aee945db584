//! The value function of a G-valuation ring: `Ω`, `Ḡ`, `Γ`, the map
//! `v : Q → Γ ∪ {∞}` and the checks built on it.

mod axioms;
mod conjugate;
mod dubrovin;
mod gamma;
mod omega;
mod valuation;

pub use axioms::{AxiomCheck, AxiomReport, EquivalenceReport, PositivesReport, ASSOCIATIVE, CANONICAL, MULTIPLICATIVE, ULTRAMETRIC, ZERO};
pub use conjugate::TransportedRing;
pub use dubrovin::{DubrovinReport, DubrovinWitness};
pub use gamma::{GammaValue, GbarPartition};
pub use omega::{Omega, OmegaClass};
pub use valuation::ValuationMachinery;

use crate::groupoid::GroupoidError;
use crate::pattern::PatternError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ValueError {
    #[error("not a G-valuation ring: {0}")]
    NotGValuationRing(String),
    #[error("valuations live over different rings")]
    ParentMismatch,
    #[error("no least value among the components of class {0}")]
    NoMinimum(String),
    #[error("unknown class {0:?}")]
    UnknownClass(String),
    #[error("not a partial order: {0}")]
    InvalidOrder(String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("element {0} lies in the ring")]
    InsideRing(String),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
