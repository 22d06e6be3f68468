//! Time loop: CFL-limited steps, relaxation splitting, positivity policy and
//! conservation bookkeeping.

use serde::Serialize;
use tpr_core::{ConservedState, EosPair, PrimitiveState, StateError};

use crate::bn::{path_conservative_step, BnState};
use crate::config::{Positivity, Scheme, SolverConfig, Splitting};
use crate::flux::max_speed;
use crate::grid::Grid;
use crate::relax::{relax_bn, relax_conserved};
use crate::shtc::{conservative_step, StepOutput};
use crate::FvError;

/// Two constant states separated at `x_split`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiemannData {
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub x_split: f64,
}

impl RiemannData {
    #[must_use]
    pub fn cells(&self, grid: &Grid) -> Vec<PrimitiveState> {
        grid.centers().into_iter().map(|x| if x < self.x_split { self.left } else { self.right }).collect()
    }
}

/// Totals of the conservative-model variables, in the ordering
/// `(α₁ρ, α₁ρ₁, ρ, ρu, w)`, and the time-integrated boundary fluxes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerEntry {
    pub time: f64,
    pub totals: [f64; 5],
    pub boundary_flux_integrals: [f64; 5],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConservationLedger {
    pub entries: Vec<LedgerEntry>,
    /// Components whose balance is closed by the boundary fluxes alone.
    pub conserved: [bool; 5],
    /// Largest `Σ|v|dx` of each component over the run.
    pub scale: [f64; 5],
    /// Largest per-step imbalance `|Δtotal + dt(F_right − F_left)|`,
    /// relative to the component scale, over conserved components.
    pub max_step_closure: f64,
    /// Largest change of a relaxation-invariant total across a relaxation sub-step, relative.
    pub max_relaxation_drift: f64,
}

impl ConservationLedger {
    /// Closure over the whole run, from the first and last entries.
    #[must_use]
    pub fn total_closure(&self) -> f64 {
        let (Some(a), Some(b)) = (self.entries.first(), self.entries.last()) else { return 0.0 };
        (0..5)
            .filter(|&k| self.conserved[k])
            .map(|k| {
                let scale = self.scale[k].max(b.boundary_flux_integrals[k].abs()).max(f64::MIN_POSITIVE);
                (b.totals[k] - a.totals[k] + b.boundary_flux_integrals[k]).abs() / scale
            })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Simulation {
    pub time: f64,
    pub steps: usize,
    pub grid: Grid,
    pub cells: Vec<PrimitiveState>,
    pub ledger: ConservationLedger,
    /// Cells clamped in floored mode, summed over steps.
    pub floored_cells: usize,
    /// Reconstructions that fell back to first order, summed over steps.
    pub first_order_cells: usize,
}

enum Cells {
    Conservative(Vec<ConservedState>),
    Bn(Vec<BnState>),
}

impl Cells {
    fn primitives(&self) -> Vec<PrimitiveState> {
        match self {
            Cells::Conservative(c) => c.iter().map(ConservedState::decode_unchecked).collect(),
            Cells::Bn(c) => c.iter().map(BnState::decode_unchecked).collect(),
        }
    }

    /// Per-cell values in the conservative ordering `(α₁ρ, α₁ρ₁, ρ, ρu, w)`.
    fn rows(&self) -> Vec<[f64; 5]> {
        match self {
            Cells::Conservative(c) => c.iter().map(|u| u.0).collect(),
            Cells::Bn(c) => c
                .iter()
                .map(|q| {
                    let [a, m1, m2, q1, q2] = q.0;
                    [a * (m1 + m2), m1, m1 + m2, q1 + q2, q1 / m1 - q2 / m2]
                })
                .collect(),
        }
    }

    /// Totals and absolute totals `Σ|v|dx` of each component.
    fn totals(&self, dx: f64) -> ([f64; 5], [f64; 5]) {
        let (mut t, mut m) = ([0.0; 5], [0.0; 5]);
        for r in self.rows() {
            for k in 0..5 {
                t[k] += r[k] * dx;
                m[k] += r[k].abs() * dx;
            }
        }
        (t, m)
    }
}

/// Boundary fluxes of the Baer-Nunziato step mapped onto the conservative ordering.
fn bn_flux_as_conservative(f: &[f64; 5]) -> [f64; 5] {
    [f64::NAN, f[1], f[1] + f[2], f[3] + f[4], f64::NAN]
}

fn max_courant_speed(cells: &[PrimitiveState], eos: &EosPair) -> f64 {
    cells.iter().map(|w| max_speed(w, eos)).fold(0.0, f64::max)
}

fn floor_state(w: &PrimitiveState) -> PrimitiveState {
    const FLOOR: f64 = 1e-12;
    let fix = |v: f64, lo: f64, hi: f64| if v.is_finite() { v.clamp(lo, hi) } else { lo };
    PrimitiveState::new(
        fix(w.alpha1, FLOOR, 1.0 - FLOOR),
        fix(w.rho1, FLOOR, f64::MAX),
        fix(w.rho2, FLOOR, f64::MAX),
        if w.u1.is_finite() { w.u1 } else { 0.0 },
        if w.u2.is_finite() { w.u2 } else { 0.0 },
    )
}

struct Checker {
    policy: Positivity,
    floored: usize,
}

impl Checker {
    fn conservative(&mut self, cells: &mut [ConservedState], time: f64) -> Result<(), FvError> {
        for (cell, u) in cells.iter_mut().enumerate() {
            if let Err(source) = u.to_primitive() {
                self.handle(cell, time, source)?;
                *u = floor_state(&u.decode_unchecked()).to_conserved();
            }
        }
        Ok(())
    }

    fn bn(&mut self, cells: &mut [BnState], time: f64) -> Result<(), FvError> {
        for (cell, q) in cells.iter_mut().enumerate() {
            if let Err(source) = q.to_primitive() {
                self.handle(cell, time, source)?;
                *q = BnState::from_primitive(&floor_state(&q.decode_unchecked()));
            }
        }
        Ok(())
    }

    fn handle(&mut self, cell: usize, time: f64, source: StateError) -> Result<(), FvError> {
        match self.policy {
            Positivity::Strict => Err(FvError::Positivity { cell, time, source }),
            Positivity::Floored => {
                log::warn!("flooring cell {cell} at t = {time:e}: {source}");
                self.floored += 1;
                Ok(())
            }
        }
    }
}

fn relax_all(cells: &mut Cells, dt: f64, cfg: &SolverConfig, eos: &EosPair, dx: f64) -> Result<f64, FvError> {
    let (before, mag) = cells.totals(dx);
    match cells {
        Cells::Conservative(c) => {
            for (cell, u) in c.iter_mut().enumerate() {
                relax_conserved(u, dt, cfg.theta1, cfg.theta2, eos).map_err(|reason| FvError::Relaxation { cell, reason })?;
            }
        }
        Cells::Bn(c) => {
            for (cell, q) in c.iter_mut().enumerate() {
                relax_bn(q, dt, cfg.theta1, cfg.theta2, eos).map_err(|reason| FvError::Relaxation { cell, reason })?;
            }
        }
    }
    let (after, _) = cells.totals(dx);
    Ok((1..4)
        .map(|k| (after[k] - before[k]).abs() / mag[k].max(f64::MIN_POSITIVE))
        .fold(0.0, f64::max))
}

/// Advance Riemann data to `config.t_end` with transmissive boundaries.
pub fn run_simulation(data: &RiemannData, grid: &Grid, config: &SolverConfig, eos: &EosPair) -> Result<Simulation, FvError> {
    config.validate()?;
    for w in [&data.left, &data.right] {
        w.validate().map_err(|source| FvError::Positivity { cell: 0, time: 0.0, source })?;
    }
    let dx = grid.dx();
    let init = data.cells(grid);
    let mut cells = match config.scheme {
        Scheme::MusclPathConsBn => Cells::Bn(init.iter().map(BnState::from_primitive).collect()),
        _ => Cells::Conservative(init.iter().map(PrimitiveState::to_conserved).collect()),
    };
    let bn = config.scheme == Scheme::MusclPathConsBn;
    let relaxing = config.relaxing();
    let conserved = if bn || relaxing { [false, true, true, true, false] } else { [true; 5] };
    let (initial, initial_mag) = cells.totals(dx);
    let mut ledger = ConservationLedger {
        entries: vec![LedgerEntry { time: 0.0, totals: initial, boundary_flux_integrals: [0.0; 5] }],
        scale: initial_mag,
        conserved,
        max_step_closure: 0.0,
        max_relaxation_drift: 0.0,
    };
    let mut checker = Checker { policy: config.positivity, floored: 0 };
    let mut time = 0.0;
    let mut steps = 0;
    let mut first_order = 0;
    while time < config.t_end {
        let speed = max_courant_speed(&cells.primitives(), eos);
        let mut dt = config.cfl * dx / speed;
        if !(dt.is_finite() && dt > 0.0) || dt < 1e-14 * config.t_end.max(f64::MIN_POSITIVE) {
            return Err(FvError::TimeStep { time, speed });
        }
        if time + dt > config.t_end {
            dt = config.t_end - time;
        }
        let (relax_before, relax_after) = match (relaxing, config.splitting) {
            (false, _) => (0.0, 0.0),
            (true, Splitting::Strang) => (0.5 * dt, 0.5 * dt),
            (true, Splitting::Godunov) => (0.0, dt),
        };
        if relax_before > 0.0 {
            let d = relax_all(&mut cells, relax_before, config, eos, dx)?;
            ledger.max_relaxation_drift = ledger.max_relaxation_drift.max(d);
        }
        let (before, _) = cells.totals(dx);
        let (left_flux, right_flux) = match &mut cells {
            Cells::Conservative(c) => {
                let StepOutput { cells: next, left_flux, right_flux, first_order_cells } =
                    conservative_step(c, dx, dt, config.scheme, config.limiter, eos);
                *c = next;
                first_order += first_order_cells;
                checker.conservative(c, time + dt)?;
                (left_flux, right_flux)
            }
            Cells::Bn(c) => {
                let StepOutput { cells: next, left_flux, right_flux, first_order_cells } =
                    path_conservative_step(c, dx, dt, config.limiter, eos);
                *c = next;
                first_order += first_order_cells;
                checker.bn(c, time + dt)?;
                (bn_flux_as_conservative(&left_flux), bn_flux_as_conservative(&right_flux))
            }
        };
        let (after, mag) = cells.totals(dx);
        for k in (0..5).filter(|&k| conserved[k]) {
            let scale = mag[k].max(dt * (right_flux[k].abs() + left_flux[k].abs())).max(f64::MIN_POSITIVE);
            let imbalance = (after[k] - before[k] + dt * (right_flux[k] - left_flux[k])).abs() / scale;
            ledger.max_step_closure = ledger.max_step_closure.max(imbalance);
        }
        if relax_after > 0.0 {
            let d = relax_all(&mut cells, relax_after, config, eos, dx)?;
            ledger.max_relaxation_drift = ledger.max_relaxation_drift.max(d);
        }
        time = if dt == config.t_end - time { config.t_end } else { time + dt };
        steps += 1;
        let courant = max_courant_speed(&cells.primitives(), eos) * dt / dx;
        if courant > 1.0 {
            return Err(FvError::Cfl { time, courant });
        }
        let prev = ledger.entries.last().map_or([0.0; 5], |e| e.boundary_flux_integrals);
        let integrals = std::array::from_fn(|k| prev[k] + dt * (right_flux[k] - left_flux[k]));
        let (totals, mag) = cells.totals(dx);
        ledger.scale = std::array::from_fn(|k| ledger.scale[k].max(mag[k]));
        ledger.entries.push(LedgerEntry { time, totals, boundary_flux_integrals: integrals });
    }
    Ok(Simulation {
        time,
        steps,
        grid: *grid,
        cells: cells.primitives(),
        ledger,
        floored_cells: checker.floored,
        first_order_cells: first_order,
    })
}
