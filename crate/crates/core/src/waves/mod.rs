//! Elementary waves: rarefaction fans, coupled two-phase shocks, the contact,
//! and the admissibility tests that decide which of them may appear.

mod admissibility;
mod contact;
mod rarefaction;
mod shock;

pub use admissibility::{
    classify_discontinuity, entropy_production, interior_shock_case, lax_check, phase_energy_production,
    CharacteristicCensus, InteriorShockCase, InteriorShockReport, LaxClass, Side,
};
pub use contact::{contact_connect, contact_invariants, contact_residuals};
pub use rarefaction::{fan_invariant, rarefaction_connect, rarefaction_sample, Fan};
pub use shock::{
    jump_residuals, mass_flux_speed, shock_connect, shock_connect_with, shock_mass_flux_system, Branch,
    MassFluxSolution, ShockData, ShockRequest,
};

use thiserror::Error;

use crate::state::{Family, StateError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("family {0} is not acoustic")]
    NotAcoustic(Family),
    #[error("inadmissible {family} wave: {reason}")]
    Inadmissible { family: Family, reason: String },
    #[error("similarity coordinate {xi} outside fan [{lo}, {hi}]")]
    OutsideFan { xi: f64, lo: f64, hi: f64 },
    #[error("shock speed equals the mixture velocity; that discontinuity is a contact")]
    ShockAtContactSpeed,
    #[error("zero-strength {0} shock")]
    DegenerateShock(Family),
    #[error("mass-flux matrix is singular (det = {0:e})")]
    DegenerateJump(f64),
    #[error("{what} did not converge (residual {residual:e})")]
    NoConvergence { what: &'static str, residual: f64 },
    #[error("{0}")]
    NoRoot(String),
    #[error("states are not connected by a discontinuity (scaled residual {0:e})")]
    NotADiscontinuity(f64),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Solver tolerance on scaled residuals.
pub const NEWTON_TOL: f64 = 1e-12;
/// Scaled jump residual above which two states are not a discontinuity.
pub const JUMP_ACCEPT_TOL: f64 = 1e-6;
/// States closer than this (scaled) make a wave absent.
pub const ZERO_STRENGTH_TOL: f64 = 1e-10;
