//! Barotropic conservative two-phase model in one space dimension.
//!
//! Equations of state, state conversions and eigenstructure, elementary wave
//! connectors with admissibility checks, exact self-similar solutions built
//! outward from the contact, and the algebra linking the model to the
//! Baer-Nunziato and Kapila systems.

// Tolerance checks are written negated so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod casebook;
pub mod eos;
pub mod exact;
pub mod models;
pub mod roots;
pub mod state;
pub mod waves;

pub use eos::{BarotropicEos, EosError, EosPair, Phase, Regime};
pub use state::{ConservedState, Direction, Family, MixtureProps, PrimitiveState, StateError};
