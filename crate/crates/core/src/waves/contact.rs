//! The contact: the only wave across which the volume fraction jumps.
//!
//! Across it `u` is continuous and so are the relative mass flux `ρc₁c₂w`,
//! the generalized pressure `p̄ = ρc₁c₂w² + p` and `½(c₂−c₁)w² + Ψ₁ − Ψ₂`.

use nalgebra::{Matrix3, Vector3};

use super::{WaveError, NEWTON_TOL};
use crate::eos::EosPair;
use crate::state::PrimitiveState;

/// Volume-fraction jumps larger than this are approached in steps.
const CONTINUATION_JUMP: f64 = 0.1;
const CONTINUATION_STEPS: usize = 10;
const MAX_ITER: usize = 100;

/// `[u, ρc₁c₂w, p̄, ½(c₂−c₁)w² + Ψ₁ − Ψ₂]`, the quantities continuous across a contact.
#[must_use]
pub fn contact_invariants(w: &PrimitiveState, eos: &EosPair) -> [f64; 4] {
    let m = w.mixture(eos);
    let flux = m.rho * m.c1 * m.c2 * m.w;
    [m.u, flux, m.p_bar, 0.5 * (m.c2 - m.c1) * m.w * m.w + eos.phase1().psi(w.rho1) - eos.phase2().psi(w.rho2)]
}

fn scales(w: &PrimitiveState, eos: &EosPair) -> [f64; 4] {
    let a = w.sound_speed(eos, crate::eos::Phase::One).max(w.sound_speed(eos, crate::eos::Phase::Two));
    let v = a.max(w.u1.abs()).max(w.u2.abs());
    let rho = w.rho_mix();
    [v, rho * v, rho * v * v, v * v]
}

/// Scaled jumps of [`contact_invariants`] between two states.
#[must_use]
pub fn contact_residuals(left: &PrimitiveState, right: &PrimitiveState, eos: &EosPair) -> [f64; 4] {
    let l = contact_invariants(left, eos);
    let r = contact_invariants(right, eos);
    let sl = scales(left, eos);
    let sr = scales(right, eos);
    std::array::from_fn(|i| (r[i] - l[i]) / sl[i].max(sr[i]))
}

struct Target {
    u: f64,
    flux: f64,
    p_bar: f64,
    energy: f64,
    scale: [f64; 4],
}

fn residual(t: &Target, alpha1: f64, x: &Vector3<f64>, eos: &EosPair) -> Vector3<f64> {
    let (r1, r2, w) = (x[0], x[1], x[2]);
    let a2 = 1.0 - alpha1;
    let rho = alpha1 * r1 + a2 * r2;
    let (c1, c2) = (alpha1 * r1 / rho, a2 * r2 / rho);
    let m = rho * c1 * c2;
    let (e1, e2) = (eos.phase1(), eos.phase2());
    Vector3::new(
        (m * w - t.flux) / t.scale[1],
        (m * w * w + alpha1 * e1.pressure(r1) + a2 * e2.pressure(r2) - t.p_bar) / t.scale[2],
        (0.5 * (c2 - c1) * w * w + e1.psi(r1) - e2.psi(r2) - t.energy) / t.scale[3],
    )
}

fn jacobian(t: &Target, alpha1: f64, x: &Vector3<f64>, eos: &EosPair) -> Matrix3<f64> {
    let (r1, r2, w) = (x[0], x[1], x[2]);
    let a2 = 1.0 - alpha1;
    let rho = alpha1 * r1 + a2 * r2;
    let (c1, c2) = (alpha1 * r1 / rho, a2 * r2 / rho);
    let m = rho * c1 * c2;
    let s1 = eos.phase1().sound_speed_sq(r1);
    let s2 = eos.phase2().sound_speed_sq(r2);
    // ∂m/∂ρ₁ = α₁c₂², ∂m/∂ρ₂ = α₂c₁²
    let (m1, m2) = (alpha1 * c2 * c2, a2 * c1 * c1);
    let w2 = w * w;
    let rho2 = rho * rho;
    let mut j = Matrix3::new(
        m1 * w,
        m2 * w,
        m,
        m1 * w2 + alpha1 * s1,
        m2 * w2 + a2 * s2,
        2.0 * m * w,
        -w2 * alpha1 * a2 * r2 / rho2 + s1 / r1,
        w2 * alpha1 * a2 * r1 / rho2 - s2 / r2,
        (c2 - c1) * w,
    );
    for (row, s) in [t.scale[1], t.scale[2], t.scale[3]].into_iter().enumerate() {
        j.row_mut(row).scale_mut(1.0 / s);
    }
    j
}

fn newton(t: &Target, alpha1: f64, mut x: Vector3<f64>, eos: &EosPair) -> Result<Vector3<f64>, WaveError> {
    let mut f = residual(t, alpha1, &x, eos);
    let mut norm = f.amax();
    for _ in 0..MAX_ITER {
        if norm < NEWTON_TOL {
            return Ok(x);
        }
        let step = jacobian(t, alpha1, &x, eos)
            .lu()
            .solve(&f)
            .ok_or(WaveError::NoConvergence { what: "contact Newton (singular Jacobian)", residual: norm })?;
        let mut lambda = 1.0;
        loop {
            let trial = x - step * lambda;
            if trial[0] > 0.0 && trial[1] > 0.0 {
                let ft = residual(t, alpha1, &trial, eos);
                let nt = ft.amax();
                if nt < norm || lambda < 1e-3 {
                    x = trial;
                    f = ft;
                    norm = nt;
                    break;
                }
            }
            lambda *= 0.5;
            if lambda < 1e-10 {
                return Err(WaveError::NoConvergence { what: "contact Newton (line search)", residual: norm });
            }
        }
    }
    if norm < NEWTON_TOL * 10.0 {
        Ok(x)
    } else {
        Err(WaveError::NoConvergence { what: "contact Newton", residual: norm })
    }
}

/// State on the right of a contact with left state `left` and right volume fraction `alpha1_right`.
pub fn contact_connect(left: &PrimitiveState, alpha1_right: f64, eos: &EosPair) -> Result<PrimitiveState, WaveError> {
    left.validate()?;
    let mut probe = *left;
    probe.alpha1 = alpha1_right;
    probe.validate()?;
    let inv = contact_invariants(left, eos);
    let t = Target { u: inv[0], flux: inv[1], p_bar: inv[2], energy: inv[3], scale: scales(left, eos) };
    let w0 = left.slip();
    if alpha1_right == left.alpha1 && w0 == 0.0 {
        return Ok(*left);
    }
    let jump = alpha1_right - left.alpha1;
    let steps = if jump.abs() > CONTINUATION_JUMP { CONTINUATION_STEPS } else { 1 };
    let mut x = Vector3::new(left.rho1, left.rho2, w0);
    for k in 1..=steps {
        let alpha = left.alpha1 + jump * k as f64 / steps as f64;
        x = newton(&t, alpha, x, eos)?;
    }
    let (r1, r2, w) = (x[0], x[1], x[2]);
    let rho = alpha1_right * r1 + (1.0 - alpha1_right) * r2;
    let c1 = alpha1_right * r1 / rho;
    let out = PrimitiveState::new(alpha1_right, r1, r2, t.u + (1.0 - c1) * w, t.u - c1 * w);
    out.validate()?;
    Ok(out)
}
