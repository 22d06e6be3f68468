//! Baer-Nunziato form with interface velocity `u` and interface pressure
//! `(α₂ρ₂p₁ + α₁ρ₁p₂)/ρ`, discretised by a path-conservative MUSCL-Hancock
//! scheme with a straight-segment path and Rusanov dissipation.

use serde::{Deserialize, Serialize};
use tpr_core::models::interface_closure;
use tpr_core::{EosPair, PrimitiveState, StateError};

use crate::config::Limiter;
use crate::flux::max_speed;
use crate::limiter::limited_slopes;
use crate::shtc::{with_ghosts, StepOutput};

/// `(α₁, α₁ρ₁, α₂ρ₂, α₁ρ₁u₁, α₂ρ₂u₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BnState(pub [f64; 5]);

impl BnState {
    #[must_use]
    pub fn from_primitive(w: &PrimitiveState) -> Self {
        let m1 = w.alpha1 * w.rho1;
        let m2 = (1.0 - w.alpha1) * w.rho2;
        Self([w.alpha1, m1, m2, m1 * w.u1, m2 * w.u2])
    }

    pub fn to_primitive(&self) -> Result<PrimitiveState, StateError> {
        let w = self.decode_unchecked();
        w.validate()?;
        Ok(w)
    }

    #[must_use]
    pub fn decode_unchecked(&self) -> PrimitiveState {
        let [a, m1, m2, q1, q2] = self.0;
        PrimitiveState::new(a, m1 / a, m2 / (1.0 - a), q1 / m1, q2 / m2)
    }

    #[must_use]
    pub fn flux(&self, eos: &EosPair) -> [f64; 5] {
        let w = self.decode_unchecked();
        let [a, _, _, q1, q2] = self.0;
        let p1 = eos.phase1().pressure(w.rho1);
        let p2 = eos.phase2().pressure(w.rho2);
        [0.0, q1, q2, q1 * w.u1 + a * p1, q2 * w.u2 + (1.0 - a) * p2]
    }
}

/// Coefficients `(u_I, −p_I, p_I)` of `∂ₓα₁` in the α and momentum rows.
fn nonconservative_row(q: &BnState, eos: &EosPair) -> [f64; 5] {
    let c = interface_closure(&q.decode_unchecked(), eos);
    [c.velocity, 0.0, 0.0, -c.pressure, c.pressure]
}

const GAUSS: [(f64, f64); 3] = [
    (0.5 - 0.387_298_334_620_741_7, 5.0 / 18.0),
    (0.5, 8.0 / 18.0),
    (0.5 + 0.387_298_334_620_741_7, 5.0 / 18.0),
];

/// `∫₀¹ B(Φ(s)) ds · (qr − ql)` along the segment `Φ(s) = ql + s(qr − ql)`.
fn path_term(ql: &BnState, qr: &BnState, eos: &EosPair) -> [f64; 5] {
    let da = qr.0[0] - ql.0[0];
    if da == 0.0 {
        return [0.0; 5];
    }
    let mut acc = [0.0; 5];
    for (s, wt) in GAUSS {
        let q = BnState(std::array::from_fn(|k| ql.0[k] + s * (qr.0[k] - ql.0[k])));
        let row = nonconservative_row(&q, eos);
        for k in 0..5 {
            acc[k] += wt * row[k] * da;
        }
    }
    acc
}

fn bn_speed(q: &BnState, eos: &EosPair) -> f64 {
    max_speed(&q.decode_unchecked(), eos)
}

/// Rusanov-type fluctuations `(D⁻, D⁺)` at an interface.
fn fluctuations(ql: &BnState, qr: &BnState, eos: &EosPair) -> ([f64; 5], [f64; 5]) {
    let s = bn_speed(ql, eos).max(bn_speed(qr, eos));
    let fl = ql.flux(eos);
    let fr = qr.flux(eos);
    let b = path_term(ql, qr, eos);
    let mut dm = [0.0; 5];
    let mut dp = [0.0; 5];
    for k in 0..5 {
        let centred = 0.5 * (fr[k] - fl[k] + b[k]);
        let diss = 0.5 * s * (qr.0[k] - ql.0[k]);
        dm[k] = centred - diss;
        dp[k] = centred + diss;
    }
    (dm, dp)
}

fn valid(q: &BnState) -> bool {
    q.to_primitive().is_ok()
}

/// Cell-interior terms `F(q⁺) − F(q⁻) + B̃ (q⁺ − q⁻)`.
fn interior(lo: &BnState, hi: &BnState, eos: &EosPair) -> [f64; 5] {
    let fl = lo.flux(eos);
    let fh = hi.flux(eos);
    let b = path_term(lo, hi, eos);
    std::array::from_fn(|k| fh[k] - fl[k] + b[k])
}

fn evolved_faces(prev: &BnState, cell: &BnState, next: &BnState, limiter: Limiter, half: f64, eos: &EosPair) -> Option<(BnState, BnState)> {
    let d = limited_slopes(limiter, &prev.0, &cell.0, &next.0);
    let lo = BnState(std::array::from_fn(|k| cell.0[k] - 0.5 * d[k]));
    let hi = BnState(std::array::from_fn(|k| cell.0[k] + 0.5 * d[k]));
    if !(valid(&lo) && valid(&hi)) {
        return None;
    }
    let t = interior(&lo, &hi, eos);
    let lo = BnState(std::array::from_fn(|k| lo.0[k] - half * t[k]));
    let hi = BnState(std::array::from_fn(|k| hi.0[k] - half * t[k]));
    (valid(&lo) && valid(&hi)).then_some((lo, hi))
}

/// One path-conservative MUSCL-Hancock step. The reported boundary fluxes
/// are `F(q⁻) + D⁻`, which for the partial masses and the summed momentum
/// is the conservative numerical flux; α₁ has none.
#[must_use]
pub fn path_conservative_step(cells: &[BnState], dx: f64, dt: f64, limiter: Limiter, eos: &EosPair) -> StepOutput<BnState> {
    let n = cells.len();
    let ext = with_ghosts(cells);
    let mut faces = vec![(ext[0], ext[0]); n + 4];
    let mut first_order = 0;
    for k in 1..n + 3 {
        faces[k] = evolved_faces(&ext[k - 1], &ext[k], &ext[k + 1], limiter, 0.5 * dt / dx, eos).unwrap_or_else(|| {
            first_order += 1;
            (ext[k], ext[k])
        });
    }
    let fl: Vec<([f64; 5], [f64; 5])> = (1..=n + 1).map(|k| fluctuations(&faces[k].1, &faces[k + 1].0, eos)).collect();
    let r = dt / dx;
    let out = (0..n)
        .map(|i| {
            let (lo, hi) = faces[i + 2];
            let inner = interior(&lo, &hi, eos);
            let from_left = fl[i].1;
            let from_right = fl[i + 1].0;
            BnState(std::array::from_fn(|k| cells[i].0[k] - r * (from_left[k] + from_right[k] + inner[k])))
        })
        .collect();
    let boundary = |j: usize, q: &BnState| -> [f64; 5] {
        let f = q.flux(eos);
        std::array::from_fn(|k| f[k] + fl[j].0[k])
    };
    StepOutput {
        left_flux: boundary(0, &faces[1].1),
        right_flux: boundary(n, &faces[n + 1].1),
        cells: out,
        first_order_cells: first_order,
    }
}
