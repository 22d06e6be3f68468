//! One-dimensional finite-volume solvers for the conservative two-phase
//! model and for the Baer-Nunziato system with the matching interface
//! closure, with stiff pressure and velocity relaxation by operator
//! splitting.

// Tolerance checks are written negated so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bn;
pub mod config;
pub mod flux;
pub mod grid;
pub mod limiter;
pub mod output;
pub mod relax;
pub mod shtc;
pub mod sim;

pub use config::{Limiter, Positivity, Scheme, SolverConfig, Splitting};
pub use grid::Grid;
pub use sim::{run_simulation, ConservationLedger, LedgerEntry, RiemannData, Simulation};

use thiserror::Error;
use tpr_core::StateError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FvError {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("invalid solver configuration: {0}")]
    Config(String),
    #[error("cell {cell} lost positivity at t = {time:e}: {source}")]
    Positivity { cell: usize, time: f64, source: StateError },
    #[error("relaxation failed in cell {cell}: {reason}")]
    Relaxation { cell: usize, reason: String },
    #[error("time step collapsed at t = {time:e} (max speed {speed:e})")]
    TimeStep { time: f64, speed: f64 },
    #[error("Courant number {courant} exceeded 1 after the step at t = {time:e}")]
    Cfl { time: f64, courant: f64 },
}
