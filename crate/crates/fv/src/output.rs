//! Snapshot output and grid-function norms.

use std::io::Write;

use tpr_core::{EosPair, PrimitiveState};

use crate::grid::Grid;

pub const SNAPSHOT_HEADER: &str = "x,alpha1,rho1,rho2,u1,u2,rho,u,w,p";

/// Write one row per cell at 17 significant digits.
pub fn write_snapshot_csv<W: Write>(out: &mut W, grid: &Grid, cells: &[PrimitiveState], eos: &EosPair) -> std::io::Result<()> {
    writeln!(out, "{SNAPSHOT_HEADER}")?;
    for (x, w) in grid.centers().into_iter().zip(cells) {
        let m = w.mixture(eos);
        let row = [x, w.alpha1, w.rho1, w.rho2, w.u1, w.u2, m.rho, m.u, m.w, m.p];
        let line: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        writeln!(out, "{}", line.join(","))?;
    }
    Ok(())
}

/// Named scalar fields used in comparisons.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Alpha1,
    Rho1,
    Rho2,
    U1,
    U2,
    Rho,
    U,
    Slip,
    Pressure,
}

impl Field {
    pub const ALL: [Field; 9] =
        [Field::Alpha1, Field::Rho1, Field::Rho2, Field::U1, Field::U2, Field::Rho, Field::U, Field::Slip, Field::Pressure];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Field::Alpha1 => "alpha1",
            Field::Rho1 => "rho1",
            Field::Rho2 => "rho2",
            Field::U1 => "u1",
            Field::U2 => "u2",
            Field::Rho => "rho",
            Field::U => "u",
            Field::Slip => "w",
            Field::Pressure => "p",
        }
    }

    #[must_use]
    pub fn eval(self, w: &PrimitiveState, eos: &EosPair) -> f64 {
        match self {
            Field::Alpha1 => w.alpha1,
            Field::Rho1 => w.rho1,
            Field::Rho2 => w.rho2,
            Field::U1 => w.u1,
            Field::U2 => w.u2,
            Field::Rho => w.rho_mix(),
            Field::U => w.u_mix(),
            Field::Slip => w.slip(),
            Field::Pressure => w.mixture(eos).p,
        }
    }
}

/// `Σ |a − b| Δx` over the cells selected by `keep`.
pub fn l1_distance(
    a: &[PrimitiveState],
    b: &[PrimitiveState],
    grid: &Grid,
    field: Field,
    eos: &EosPair,
    keep: impl Fn(f64) -> bool,
) -> f64 {
    let dx = grid.dx();
    a.iter()
        .zip(b)
        .zip(grid.centers())
        .filter(|(_, x)| keep(*x))
        .map(|((p, q), _)| (field.eval(p, eos) - field.eval(q, eos)).abs() * dx)
        .sum()
}

/// `max |a − b|` over all cells.
#[must_use]
pub fn linf_distance(a: &[PrimitiveState], b: &[PrimitiveState], field: Field, eos: &EosPair) -> f64 {
    a.iter().zip(b).map(|(p, q)| (field.eval(p, eos) - field.eval(q, eos)).abs()).fold(0.0, f64::max)
}
