//! Stiff relaxation sub-steps. Partial masses and mixture momentum are held
//! fixed; velocity relaxation changes only the slip, pressure relaxation
//! only the volume fraction, so the two commute.

use tpr_core::roots;
use tpr_core::{ConservedState, EosPair, PrimitiveState};

use crate::bn::BnState;

/// Relaxation time below this fraction of the step is replaced by the equilibrium projection.
pub const STIFF_FRACTION: f64 = 1e-6;

/// Slip after `dt` of `dw/dt = −c₁c₂w/θ₂` at frozen mass fractions.
#[must_use]
pub fn relaxed_slip(w: &PrimitiveState, dt: f64, theta2: f64) -> f64 {
    if theta2.is_infinite() {
        return w.slip();
    }
    if theta2 < STIFF_FRACTION * dt {
        return 0.0;
    }
    let c1 = w.c1();
    w.slip() * (-c1 * (1.0 - c1) * dt / theta2).exp()
}

/// Volume fraction after an implicit step of `dα₁/dt = (p₁ − p₂)/θ₁` with
/// `α₁ρ₁` and `α₂ρ₂` fixed, or the equal-pressure fraction for stiff `θ₁`.
pub fn relaxed_volume_fraction(w: &PrimitiveState, dt: f64, theta1: f64, eos: &EosPair) -> Result<f64, String> {
    if theta1.is_infinite() {
        return Ok(w.alpha1);
    }
    let m1 = w.alpha1 * w.rho1;
    let m2 = (1.0 - w.alpha1) * w.rho2;
    let a0 = w.alpha1;
    let dp = |a: f64| eos.phase1().pressure(m1 / a) - eos.phase2().pressure(m2 / (1.0 - a));
    let project = theta1 < STIFF_FRACTION * dt;
    let k = dt / theta1;
    // Increasing in α in both forms.
    let f = |a: f64| if project { -dp(a) } else { a - a0 - k * dp(a) };
    let (mut lo, mut hi) = (a0, a0);
    let mut ok = false;
    for _ in 0..200 {
        if f(lo) < 0.0 {
            ok = true;
            break;
        }
        lo *= 0.5;
    }
    if !ok {
        return Err(format!("no lower bracket below α₁ = {a0}"));
    }
    ok = false;
    for _ in 0..200 {
        if f(hi) > 0.0 {
            ok = true;
            break;
        }
        hi = 1.0 - 0.5 * (1.0 - hi);
    }
    if !ok {
        return Err(format!("no upper bracket above α₁ = {a0}"));
    }
    if lo == hi {
        return Ok(lo);
    }
    roots::brent(f, lo, hi, 1e-16, 300).ok_or_else(|| "volume fraction solve did not converge".into())
}

/// Relax one conserved cell in place: `α₁ρ₁`, `ρ` and `ρu` are untouched bit for bit.
pub fn relax_conserved(u: &mut ConservedState, dt: f64, theta1: f64, theta2: f64, eos: &EosPair) -> Result<(), String> {
    let w = u.to_primitive().map_err(|e| e.to_string())?;
    let a = relaxed_volume_fraction(&w, dt, theta1, eos)?;
    u.0[0] = a * u.0[2];
    u.0[4] = relaxed_slip(&w, dt, theta2);
    Ok(())
}

/// Relax one Baer-Nunziato cell in place: partial masses are untouched,
/// the summed momentum changes by round-off only.
pub fn relax_bn(q: &mut BnState, dt: f64, theta1: f64, theta2: f64, eos: &EosPair) -> Result<(), String> {
    let w = q.to_primitive().map_err(|e| e.to_string())?;
    let a = relaxed_volume_fraction(&w, dt, theta1, eos)?;
    let slip = relaxed_slip(&w, dt, theta2);
    let [_, m1, m2, q1, q2] = q.0;
    let rho = m1 + m2;
    let u = (q1 + q2) / rho;
    let (c1, c2) = (m1 / rho, m2 / rho);
    q.0 = [a, m1, m2, m1 * (u + c2 * slip), m2 * (u - c1 * slip)];
    Ok(())
}

/// Relax every conserved cell over `dt`.
pub fn relaxation_step(cells: &mut [ConservedState], dt: f64, theta1: f64, theta2: f64, eos: &EosPair) -> Result<(), crate::FvError> {
    for (cell, u) in cells.iter_mut().enumerate() {
        relax_conserved(u, dt, theta1, theta2, eos).map_err(|reason| crate::FvError::Relaxation { cell, reason })?;
    }
    Ok(())
}
