//! Update of the conservative model.

use tpr_core::{ConservedState, EosPair};

use crate::config::{Limiter, Scheme};
use crate::flux::{force_flux, rusanov_flux};
use crate::limiter::limited_slopes;

/// Result of one hyperbolic step: updated cells and the numerical fluxes
/// through the two domain boundaries.
#[derive(Debug, Clone)]
pub struct StepOutput<T> {
    pub cells: Vec<T>,
    pub left_flux: [f64; 5],
    pub right_flux: [f64; 5],
    /// Cells whose reconstruction fell back to first order.
    pub first_order_cells: usize,
}

/// Two transmissive ghost cells on each side.
pub(crate) fn with_ghosts<T: Copy>(cells: &[T]) -> Vec<T> {
    let n = cells.len();
    let mut ext = Vec::with_capacity(n + 4);
    ext.extend_from_slice(&[cells[0], cells[0]]);
    ext.extend_from_slice(cells);
    ext.extend_from_slice(&[cells[n - 1], cells[n - 1]]);
    ext
}

fn flux_difference(a: &[f64; 5], b: &[f64; 5]) -> [f64; 5] {
    std::array::from_fn(|k| a[k] - b[k])
}

/// Boundary-extrapolated values after the Hancock half step.
fn evolved_faces(
    prev: &ConservedState,
    cell: &ConservedState,
    next: &ConservedState,
    limiter: Limiter,
    half: f64,
    eos: &EosPair,
) -> Option<(ConservedState, ConservedState)> {
    let d = limited_slopes(limiter, &prev.0, &cell.0, &next.0);
    let lo = ConservedState(std::array::from_fn(|k| cell.0[k] - 0.5 * d[k]));
    let hi = ConservedState(std::array::from_fn(|k| cell.0[k] + 0.5 * d[k]));
    lo.to_primitive().ok()?;
    hi.to_primitive().ok()?;
    let df = flux_difference(&lo.physical_flux(eos), &hi.physical_flux(eos));
    let lo = ConservedState(std::array::from_fn(|k| lo.0[k] + half * df[k]));
    let hi = ConservedState(std::array::from_fn(|k| hi.0[k] + half * df[k]));
    lo.to_primitive().ok()?;
    hi.to_primitive().ok()?;
    Some((lo, hi))
}

/// One step of the configured conservative scheme. `dt` must satisfy the
/// CFL condition; cells are not validated here.
#[must_use]
pub fn conservative_step(
    cells: &[ConservedState],
    dx: f64,
    dt: f64,
    scheme: Scheme,
    limiter: Limiter,
    eos: &EosPair,
) -> StepOutput<ConservedState> {
    let n = cells.len();
    let ext = with_ghosts(cells);
    let mut faces = vec![(ext[0], ext[0]); n + 4];
    let mut first_order = 0;
    let second_order = scheme == Scheme::MusclRusanov;
    for k in 1..n + 3 {
        faces[k] = if second_order {
            match evolved_faces(&ext[k - 1], &ext[k], &ext[k + 1], limiter, 0.5 * dt / dx, eos) {
                Some(f) => f,
                None => {
                    first_order += 1;
                    (ext[k], ext[k])
                }
            }
        } else {
            (ext[k], ext[k])
        };
    }
    // Interface k sits between extended cells k and k + 1, k = 1..=n+1.
    let flux = |k: usize| -> [f64; 5] {
        let (l, r) = (faces[k].1, faces[k + 1].0);
        match scheme {
            Scheme::ForceGodunov => force_flux(&l, &r, dx, dt, eos),
            _ => rusanov_flux(&l, &r, eos),
        }
    };
    let fluxes: Vec<[f64; 5]> = (1..=n + 1).map(flux).collect();
    let r = dt / dx;
    let out = (0..n)
        .map(|i| ConservedState(std::array::from_fn(|k| cells[i].0[k] - r * (fluxes[i + 1][k] - fluxes[i][k]))))
        .collect();
    StepOutput { cells: out, left_flux: fluxes[0], right_flux: fluxes[n], first_order_cells: first_order }
}
