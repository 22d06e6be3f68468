//! Coupled two-phase shocks at prescribed speed.
//!
//! With `α₁` continuous and the phase mass fluxes `Q_k = −ρ_k(u_k − S)`
//! fixed by the known side, the jump conditions reduce to two equations in
//! the unknown densities `(x, y)` of the shock phase μ and the other phase ν:
//!
//! ```text
//! α_μ G_μ(x) + α_ν G_ν(y) = 0        G_k(r) = Q_k²(1/r − 1/ρ_k) + p_k(r) − p_k(ρ_k)
//! H_μ(x) − H_ν(y) = 0                H_k(r) = Q_k²/2 (1/r² − 1/ρ_k²) + Ψ_k(r) − Ψ_k(ρ_k)
//! ```
//!
//! Each `G_k` is convex-like with its minimum at the sonic density where
//! `r a_k(r) = |Q_k|`, so `y(x)` from the first equation has two branches
//! (relative subsonic above the sonic density, supersonic below). A branch is
//! fixed per phase, `y(x)` is eliminated, and the remaining scalar equation is
//! bracketed on a scan and polished.

use serde::Serialize;

use super::{WaveError, NEWTON_TOL, ZERO_STRENGTH_TOL};
use crate::eos::{BarotropicEos, EosPair, Phase};
use crate::roots;
use crate::state::{Direction, Family, PrimitiveState};

/// Which root of `G_k(r) = const` a phase takes on the unknown side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `r a(r) ≥ |Q|`.
    Subsonic,
    /// `r a(r) < |Q|`.
    Supersonic,
}

/// Summary of a shock returned by the connector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockData {
    pub speed: f64,
    /// Mixture mass flux `−ρ(u − S)`.
    pub q: f64,
    pub q1: f64,
    pub q2: f64,
    /// `−Q ⟦Ψ₁ + ½(u₁ − S)²⟧`, minus side to plus side.
    pub entropy_production: f64,
}

/// Fully specified shock problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockRequest {
    pub family: Family,
    pub speed: f64,
    /// Side of the shock the known state sits on.
    pub known_on_plus_side: bool,
    pub shock_phase_branch: Branch,
    pub other_phase_branch: Branch,
}

struct PhaseJump<'a> {
    eos: &'a BarotropicEos,
    alpha: f64,
    rho: f64,
    q2: f64,
    p0: f64,
    psi0: f64,
}

impl<'a> PhaseJump<'a> {
    fn new(w: &PrimitiveState, p: Phase, s: f64, eos: &'a EosPair) -> Self {
        let e = eos.get(p);
        let rho = w.rho(p);
        let q = -rho * (w.u(p) - s);
        Self { eos: e, alpha: w.alpha(p), rho, q2: q * q, p0: e.pressure(rho), psi0: e.psi(rho) }
    }
    fn g(&self, r: f64) -> f64 {
        self.q2 * (1.0 / r - 1.0 / self.rho) + self.eos.pressure(r) - self.p0
    }
    fn dg(&self, r: f64) -> f64 {
        self.eos.sound_speed_sq(r) - self.q2 / (r * r)
    }
    fn h(&self, r: f64) -> f64 {
        0.5 * self.q2 * (1.0 / (r * r) - 1.0 / (self.rho * self.rho)) + self.eos.psi(r) - self.psi0
    }
    fn sonic(&self) -> f64 {
        self.eos.sonic_density(self.q2.sqrt())
    }
    fn branch_of_known(&self) -> Branch {
        // Ties count as subsonic: a sonic known state stays on the
        // subsonic side, which is the coincidence an interior shock needs.
        if self.rho >= self.sonic() * (1.0 - 1e-12) {
            Branch::Subsonic
        } else {
            Branch::Supersonic
        }
    }
    fn pressure_scale(&self, r: f64) -> f64 {
        self.alpha * (self.q2 / r + self.eos.bulk_modulus(r))
    }
    fn energy_scale(&self, r: f64) -> f64 {
        self.q2 / (r * r) + self.eos.sound_speed_sq(r)
    }
}

/// Root of `G(r) = target` on the requested branch, or the sonic density
/// when the target lies below the minimum.
fn invert_g(ph: &PhaseJump, target: f64, branch: Branch, sonic: f64) -> Option<f64> {
    let f = |r: f64| ph.g(r) - target;
    let fs = f(sonic);
    if fs >= 0.0 {
        return Some(sonic);
    }
    let upward = branch == Branch::Subsonic;
    let (a, b) = roots::expand_positive(f, sonic, upward, 400)?;
    roots::brent(f, a, b, 1e-15 * sonic, 300)
}

/// Speed implied by continuity of one phase's mass flux across two states.
#[must_use]
pub fn mass_flux_speed(minus: &PrimitiveState, plus: &PrimitiveState, phase: Phase) -> f64 {
    let (r0, r1) = (minus.rho(phase), plus.rho(phase));
    (r0 * minus.u(phase) - r1 * plus.u(phase)) / (r0 - r1)
}

/// Connect `known` across an acoustic shock of speed `s` in the inverse
/// construction: the known state is on the contact side, so it is the plus
/// side for a minus family and the minus side for a plus family. The shock
/// phase crosses its sonic point, the other phase stays on its side.
pub fn shock_connect(
    known: &PrimitiveState,
    family: Family,
    s: f64,
    eos: &EosPair,
) -> Result<(PrimitiveState, ShockData), WaveError> {
    let (mu, dir) = match (family.phase(), family.direction()) {
        (Some(p), Some(d)) => (p, d),
        _ => return Err(WaveError::NotAcoustic(family)),
    };
    let jm = PhaseJump::new(known, mu, s, eos);
    let jn = PhaseJump::new(known, mu.other(), s, eos);
    let flip = |b: Branch| match b {
        Branch::Subsonic => Branch::Supersonic,
        Branch::Supersonic => Branch::Subsonic,
    };
    let req = ShockRequest {
        family,
        speed: s,
        known_on_plus_side: dir == Direction::Minus,
        shock_phase_branch: flip(jm.branch_of_known()),
        other_phase_branch: jn.branch_of_known(),
    };
    shock_connect_with(known, &req, eos)
}

/// General connector with explicit branch choices for both phases.
pub fn shock_connect_with(
    known: &PrimitiveState,
    req: &ShockRequest,
    eos: &EosPair,
) -> Result<(PrimitiveState, ShockData), WaveError> {
    known.validate()?;
    let family = req.family;
    let mu = family.phase().ok_or(WaveError::NotAcoustic(family))?;
    let nu = mu.other();
    let s = req.speed;
    let u = known.u_mix();
    if (u - s).abs() <= 1e-12 * 1f64.max(u.abs()).max(s.abs()) {
        return Err(WaveError::ShockAtContactSpeed);
    }
    let jm = PhaseJump::new(known, mu, s, eos);
    let jn = PhaseJump::new(known, nu, s, eos);
    let xs = jm.sonic();
    let ys = jn.sonic();
    if jm.q2 == 0.0 || jn.q2 == 0.0 {
        return Err(WaveError::DegenerateShock(family));
    }
    // Largest G_μ for which y(x) exists.
    let g_max = -jn.alpha * jn.g(ys) / jm.alpha;
    let below = req.shock_phase_branch == Branch::Supersonic;
    let fb = |x: f64| jm.g(x) - g_max;
    if fb(xs) > 0.0 {
        return Err(WaveError::NoRoot(format!("{family} shock at S = {s}: empty admissible set")));
    }
    let (ea, eb) = roots::expand_positive(fb, xs, !below, 400)
        .ok_or_else(|| WaveError::NoRoot(format!("{family} shock at S = {s}: no domain boundary")))?;
    let xb = roots::brent(fb, ea, eb, 1e-15 * xs, 300)
        .ok_or_else(|| WaveError::NoRoot(format!("{family} shock at S = {s}: boundary solve failed")))?;

    let y_of = |x: f64| -> Option<f64> {
        let target = -jm.alpha * jm.g(x) / jn.alpha;
        invert_g(&jn, target, req.other_phase_branch, ys)
    };
    let reduced = |x: f64| -> f64 {
        match y_of(x) {
            Some(y) => jm.h(x) - jn.h(y),
            None => f64::NAN,
        }
    };

    // Roots cluster near the domain boundary, where y(x) has a square-root
    // singularity; sample quadratically toward it.
    const SAMPLES: usize = 800;
    let xs_inner = if below { xs * (1.0 - 1e-13) } else { xs * (1.0 + 1e-13) };
    let at = |i: usize| {
        let t = i as f64 / SAMPLES as f64;
        xb + (xs_inner - xb) * t * t
    };
    let mut root = None;
    let mut prev_x = at(0);
    let mut prev_v = reduced(prev_x);
    for i in 1..=SAMPLES {
        let x = at(i);
        let v = reduced(x);
        if prev_v == 0.0 {
            root = Some(prev_x);
            break;
        }
        if v.is_finite() && prev_v.is_finite() && v.signum() != prev_v.signum() {
            root = roots::brent(reduced, prev_x, x, 1e-15 * xs, 300);
            if root.is_some() {
                break;
            }
        }
        prev_x = x;
        prev_v = v;
    }
    let x = root.ok_or_else(|| WaveError::NoRoot(format!("{family} shock at S = {s}: no root on branch")))?;
    let y = y_of(x).ok_or_else(|| WaveError::NoRoot("branch inversion failed".into()))?;
    let (x, y) = polish(&jm, &jn, x, y);

    let scale_m = jm.pressure_scale(x) + jn.pressure_scale(y);
    let scale_e = jm.energy_scale(x) + jn.energy_scale(y);
    let res = ((jm.alpha * jm.g(x) + jn.alpha * jn.g(y)) / scale_m)
        .abs()
        .max(((jm.h(x) - jn.h(y)) / scale_e).abs());
    if !(res < 1e-9) {
        return Err(WaveError::NoConvergence { what: "shock jump system", residual: res });
    }
    if (x - jm.rho).abs() <= ZERO_STRENGTH_TOL * jm.rho {
        return Err(WaveError::DegenerateShock(family));
    }

    let mut out = *known;
    out.set_rho(mu, x);
    out.set_rho(nu, y);
    for p in [mu, nu] {
        let q = -known.rho(p) * (known.u(p) - s);
        out.set_u(p, s - q / out.rho(p));
    }
    out.validate()?;
    let (minus, plus) = if req.known_on_plus_side { (out, *known) } else { (*known, out) };
    let data = shock_data(&minus, &plus, s, eos);
    Ok((out, data))
}

/// Damped Newton on the 2×2 system; keeps the bracketed root if Newton cannot improve it.
fn polish(jm: &PhaseJump, jn: &PhaseJump, x0: f64, y0: f64) -> (f64, f64) {
    let resid = |x: f64, y: f64| {
        let f1 = (jm.alpha * jm.g(x) + jn.alpha * jn.g(y)) / (jm.pressure_scale(x) + jn.pressure_scale(y));
        let f2 = (jm.h(x) - jn.h(y)) / (jm.energy_scale(x) + jn.energy_scale(y));
        (f1, f2, f1.abs().max(f2.abs()))
    };
    let (mut x, mut y) = (x0, y0);
    let mut r = resid(x, y).2;
    for _ in 0..100 {
        if r < NEWTON_TOL * 1e-3 {
            break;
        }
        let f1 = jm.alpha * jm.g(x) + jn.alpha * jn.g(y);
        let f2 = jm.h(x) - jn.h(y);
        let (gx, gy) = (jm.dg(x), jn.dg(y));
        let (a, b, c, d) = (jm.alpha * gx, jn.alpha * gy, gx / x, -gy / y);
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dx = (f1 * d - b * f2) / det;
        let dy = (a * f2 - c * f1) / det;
        let mut t = 1.0;
        let mut improved = false;
        for _ in 0..30 {
            let (nx, ny) = (x - t * dx, y - t * dy);
            if nx > 0.0 && ny > 0.0 {
                let nr = resid(nx, ny).2;
                if nr < r {
                    x = nx;
                    y = ny;
                    r = nr;
                    improved = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !improved {
            break;
        }
    }
    (x, y)
}

fn shock_data(minus: &PrimitiveState, plus: &PrimitiveState, s: f64, eos: &EosPair) -> ShockData {
    let q = -minus.rho_mix() * (minus.u_mix() - s);
    let q1 = -minus.rho1 * (minus.u1 - s);
    let q2 = -minus.rho2 * (minus.u2 - s);
    let e = eos.phase1();
    let bracket = (e.psi(plus.rho1) + 0.5 * (plus.u1 - s).powi(2)) - (e.psi(minus.rho1) + 0.5 * (minus.u1 - s).powi(2));
    ShockData { speed: s, q, q1, q2, entropy_production: -q * bracket }
}

/// Scaled residuals of the five jump conditions `⟦F⟧ = S⟦U⟧`.
///
/// Component scales use bulk moduli instead of absolute pressures so that
/// large pressure offsets do not mask errors.
#[must_use]
pub fn jump_residuals(minus: &PrimitiveState, plus: &PrimitiveState, s: f64, eos: &EosPair) -> [f64; 5] {
    let fm = minus.to_conserved().physical_flux(eos);
    let fp = plus.to_conserved().physical_flux(eos);
    let um = minus.to_conserved().0;
    let up = plus.to_conserved().0;
    let mut scale = [0.0; 5];
    for w in [minus, plus] {
        let c = w.to_conserved().0;
        let m = w.mixture(eos);
        scale[0] += (c[0] * m.u).abs() + (s * c[0]).abs();
        scale[1] += (c[1] * w.u1).abs() + (s * c[1]).abs();
        scale[2] += c[3].abs() + (s * c[2]).abs();
        scale[3] += Phase::BOTH
            .iter()
            .map(|&p| w.alpha(p) * (w.rho(p) * w.u(p) * w.u(p) + eos.get(p).bulk_modulus(w.rho(p))))
            .sum::<f64>()
            + (s * c[3]).abs();
        scale[4] += 0.5 * (w.u1 * w.u1 + w.u2 * w.u2)
            + eos.phase1().sound_speed_sq(w.rho1)
            + eos.phase2().sound_speed_sq(w.rho2)
            + (s * c[4]).abs();
    }
    std::array::from_fn(|i| ((fp[i] - fm[i]) - s * (up[i] - um[i])) / scale[i].max(f64::MIN_POSITIVE))
}

/// Solution of the linear system for the squared phase mass fluxes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassFluxSolution {
    pub q1_sq: f64,
    pub q2_sq: f64,
    pub det: f64,
}

/// Closed-form solve of
/// `[α₁⟦1/ρ₁⟧, α₂⟦1/ρ₂⟧; ½⟦1/ρ₁²⟧, −½⟦1/ρ₂²⟧] (Q₁², Q₂²) = −(α₁⟦p₁⟧ + α₂⟦p₂⟧, ⟦Ψ₁ − Ψ₂⟧)`.
pub fn shock_mass_flux_system(
    minus: &PrimitiveState,
    plus: &PrimitiveState,
    alpha1: f64,
    eos: &EosPair,
) -> Result<MassFluxSolution, WaveError> {
    let a2 = 1.0 - alpha1;
    let jump = |f: &dyn Fn(&PrimitiveState) -> f64| f(plus) - f(minus);
    let inv1 = jump(&|w| 1.0 / w.rho1);
    let inv2 = jump(&|w| 1.0 / w.rho2);
    let inv1_sq = jump(&|w| 1.0 / (w.rho1 * w.rho1));
    let inv2_sq = jump(&|w| 1.0 / (w.rho2 * w.rho2));
    let dp1 = eos.phase1().pressure(plus.rho1) - eos.phase1().pressure(minus.rho1);
    let dp2 = eos.phase2().pressure(plus.rho2) - eos.phase2().pressure(minus.rho2);
    let dpsi = jump(&|w| eos.phase1().psi(w.rho1) - eos.phase2().psi(w.rho2));
    let det = -0.5 * (alpha1 * inv1 * inv2_sq + a2 * inv1_sq * inv2);
    let s = [minus.rho1, minus.rho2, plus.rho1, plus.rho2].iter().map(|r| 1.0 / r).fold(0.0, f64::max);
    if det.abs() < 1e-12 * s * s * s {
        return Err(WaveError::DegenerateJump(det));
    }
    let mom = alpha1 * dp1 + a2 * dp2;
    Ok(MassFluxSolution {
        q1_sq: (0.5 * inv2_sq * mom + a2 * inv2 * dpsi) / det,
        q2_sq: (0.5 * inv1_sq * mom - alpha1 * inv1 * dpsi) / det,
        det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::BarotropicEos;
    use approx::assert_relative_eq;

    fn ideal() -> EosPair {
        EosPair::new(BarotropicEos::unit_power_law(1.4), BarotropicEos::unit_power_law(2.0))
    }

    #[test]
    fn contact_speed_is_refused() {
        let eos = ideal();
        let w = PrimitiveState::new(0.5, 1.0, 1.0, 0.3, 0.3);
        assert_eq!(
            shock_connect(&w, Family::Minus(Phase::One), 0.3, &eos).unwrap_err(),
            WaveError::ShockAtContactSpeed
        );
    }

    #[test]
    fn left_shock_from_rest_satisfies_jump_conditions() {
        let eos = ideal();
        let inner = PrimitiveState::new(0.5, 2.0, 1.0, 0.0, 0.0);
        let s = -1.2;
        let (outer, data) = shock_connect(&inner, Family::Minus(Phase::One), s, &eos).unwrap();
        let r = jump_residuals(&outer, &inner, s, &eos);
        assert!(r.iter().all(|v| v.abs() < 1e-10), "{r:?}");
        assert!(data.q1 < 0.0);
        assert!(data.entropy_production <= 0.0);
        // Lax chain for the shock phase.
        let a_in = inner.rho1 * eos.phase1().sound_speed(inner.rho1);
        let a_out = outer.rho1 * eos.phase1().sound_speed(outer.rho1);
        assert!(-a_in < data.q1 && data.q1 < -a_out, "{} {} {}", -a_in, data.q1, -a_out);
    }

    #[test]
    fn zero_jump_in_other_phase_is_singular() {
        let eos = ideal();
        let a = PrimitiveState::new(0.5, 2.0, 1.0, 0.0, 0.0);
        let b = PrimitiveState::new(0.5, 1.5, 1.0, 0.2, 0.0);
        assert!(matches!(shock_mass_flux_system(&a, &b, 0.5, &eos), Err(WaveError::DegenerateJump(_))));
    }

    #[test]
    fn mass_flux_speed_of_pure_translation() {
        let a = PrimitiveState::new(0.5, 2.0, 1.0, 1.0, 0.0);
        let b = PrimitiveState::new(0.5, 1.0, 1.0, 0.0, 0.0);
        // 2(1 − S) = 1(0 − S) → S = 2
        assert_relative_eq!(mass_flux_speed(&a, &b, Phase::One), 2.0);
    }
}
