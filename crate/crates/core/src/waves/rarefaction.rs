//! Rarefaction curves and fans of one acoustic family.
//!
//! Across a fan of phase μ only `ρ_μ` and `u_μ` change. The minus family
//! keeps `u_μ + Φ(ρ_μ)` constant, the plus family `u_μ − Φ(ρ_μ)`, where
//! `Φ = ∫ a/ρ dρ`.

use serde::Serialize;

use super::WaveError;
use crate::eos::{BarotropicEos, EosPair, Phase};
use crate::roots;
use crate::state::{speeds_coincide, Direction, Family, PrimitiveState};

fn acoustic(family: Family) -> Result<(Phase, Direction), WaveError> {
    match (family.phase(), family.direction()) {
        (Some(p), Some(d)) => Ok((p, d)),
        _ => Err(WaveError::NotAcoustic(family)),
    }
}

/// Riemann invariant of `family` carried through its own fan.
#[must_use]
pub fn fan_invariant(w: &PrimitiveState, family: Family, eos: &EosPair) -> f64 {
    let (p, d) = acoustic(family).expect("acoustic family");
    let e = eos.get(p);
    // Φ(ρ) measured from ρ = 1 keeps the invariant finite for γ = 1.
    w.u(p) + d.sign() * -e.riemann_integral(1.0, w.rho(p))
}

/// Density along the family's curve through `invariant` where the family speed equals `target`.
fn density_at_speed(e: &BarotropicEos, dir: Direction, invariant: f64, target: f64, rho_start: f64) -> Option<f64> {
    // Minus family: λ(ρ) = J − Φ(ρ) − a(ρ), decreasing. Plus: J + Φ + a, increasing.
    let s = dir.sign();
    let f = |r: f64| {
        let a = e.sound_speed(r);
        let lam = invariant + s * (e.riemann_integral(1.0, r) + a);
        let slope = s * a / r * e.fundamental_derivative(r);
        (lam - target, slope)
    };
    let f0 = f(rho_start).0;
    if f0 == 0.0 {
        return Some(rho_start);
    }
    // λ − target increases with ρ for plus, decreases for minus.
    let upward = (f0 < 0.0) == (s > 0.0);
    let (a, b) = roots::expand_positive(|r| f(r).0, rho_start, upward, 400)?;
    roots::newton_bracketed(f, a, b, 1e-15, 200)
}

fn state_on_curve(base: &PrimitiveState, p: Phase, dir: Direction, inv: f64, e: &BarotropicEos, rho: f64) -> PrimitiveState {
    let mut out = *base;
    out.set_rho(p, rho);
    out.set_u(p, inv - dir.sign() * -e.riemann_integral(1.0, rho));
    out
}

/// State reached from the contact-side state `inner` along `family`'s fan
/// once the family speed reaches `target`.
///
/// Fans left of the contact (minus) slow down moving outward, fans on the
/// right (plus) speed up; a target on the wrong side would mean compression.
pub fn rarefaction_connect(
    inner: &PrimitiveState,
    family: Family,
    target: f64,
    eos: &EosPair,
) -> Result<PrimitiveState, WaveError> {
    let (p, d) = acoustic(family)?;
    let head = inner.speed(eos, family);
    let expanding = match d {
        Direction::Minus => target <= head,
        Direction::Plus => target >= head,
    };
    if !expanding {
        return Err(WaveError::Inadmissible {
            family,
            reason: format!("tail speed {target} would compress against head speed {head}"),
        });
    }
    if target == head {
        return Ok(*inner);
    }
    let e = eos.get(p);
    let inv = fan_invariant(inner, family, eos);
    let rho = density_at_speed(e, d, inv, target, inner.rho(p))
        .ok_or_else(|| WaveError::NoRoot(format!("{family} fan: no density reaches speed {target}")))?;
    Ok(state_on_curve(inner, p, d, inv, e, rho))
}

/// State inside the fan bounded by `edge` at similarity coordinate `xi`,
/// without range checks. `u_μ = xi ∓ a_μ`.
pub fn rarefaction_sample(edge: &PrimitiveState, family: Family, xi: f64, eos: &EosPair) -> Result<PrimitiveState, WaveError> {
    let (p, d) = acoustic(family)?;
    let e = eos.get(p);
    let inv = fan_invariant(edge, family, eos);
    let rho = density_at_speed(e, d, inv, xi, edge.rho(p))
        .ok_or_else(|| WaveError::NoRoot(format!("{family} fan: no density at xi = {xi}")))?;
    let mut out = *edge;
    out.set_rho(p, rho);
    out.set_u(p, xi - d.sign() * e.sound_speed(rho));
    Ok(out)
}

/// A centred fan between two states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fan {
    pub family: Family,
    /// Contact-side edge.
    pub inner: PrimitiveState,
    pub outer: PrimitiveState,
    pub inner_speed: f64,
    pub outer_speed: f64,
}

impl Fan {
    pub fn new(family: Family, inner: PrimitiveState, outer: PrimitiveState, eos: &EosPair) -> Self {
        Self { family, inner, outer, inner_speed: inner.speed(eos, family), outer_speed: outer.speed(eos, family) }
    }

    /// Speed interval `(lo, hi)` covered by the fan.
    #[must_use]
    pub fn span(&self) -> (f64, f64) {
        (self.inner_speed.min(self.outer_speed), self.inner_speed.max(self.outer_speed))
    }

    pub fn sample(&self, xi: f64, eos: &EosPair) -> Result<PrimitiveState, WaveError> {
        let (lo, hi) = self.span();
        if speeds_coincide(xi, self.inner_speed) {
            return Ok(self.inner);
        }
        if speeds_coincide(xi, self.outer_speed) {
            return Ok(self.outer);
        }
        if xi < lo || xi > hi {
            return Err(WaveError::OutsideFan { xi, lo, hi });
        }
        rarefaction_sample(&self.inner, self.family, xi, eos)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ideal() -> EosPair {
        EosPair::new(BarotropicEos::unit_power_law(1.4), BarotropicEos::unit_power_law(2.0))
    }

    #[test]
    fn zero_strength_fan_is_identity() {
        let eos = ideal();
        let w = PrimitiveState::new(0.3, 0.8, 1.1, 0.2, -0.1);
        let f = Family::Plus(Phase::One);
        assert_eq!(rarefaction_connect(&w, f, w.speed(&eos, f), &eos).unwrap(), w);
    }

    #[test]
    fn compression_is_rejected() {
        let eos = ideal();
        let w = PrimitiveState::new(0.3, 0.8, 1.1, 0.2, -0.1);
        let f = Family::Minus(Phase::Two);
        let head = w.speed(&eos, f);
        assert!(matches!(rarefaction_connect(&w, f, head + 0.1, &eos), Err(WaveError::Inadmissible { .. })));
    }

    #[test]
    fn fan_freezes_other_phase_and_hits_target() {
        let eos = ideal();
        let w = PrimitiveState::new(0.3, 0.8, 1.1, 0.2, -0.1);
        for f in [Family::Minus(Phase::One), Family::Plus(Phase::Two)] {
            let target = w.speed(&eos, f) + f.direction().unwrap().sign() * 0.4;
            let out = rarefaction_connect(&w, f, target, &eos).unwrap();
            let nu = f.phase().unwrap().other();
            assert_eq!(out.rho(nu), w.rho(nu));
            assert_eq!(out.u(nu), w.u(nu));
            assert_eq!(out.alpha1, w.alpha1);
            assert_relative_eq!(out.speed(&eos, f), target, epsilon = 1e-12);
            assert_relative_eq!(fan_invariant(&out, f, &eos), fan_invariant(&w, f, &eos), epsilon = 1e-12);
        }
    }

    #[test]
    fn sample_lies_on_characteristic() {
        let eos = ideal();
        let w = PrimitiveState::new(0.6, 1.5, 0.9, -0.3, 0.1);
        let f = Family::Minus(Phase::One);
        let outer = rarefaction_connect(&w, f, w.speed(&eos, f) - 0.5, &eos).unwrap();
        let fan = Fan::new(f, w, outer, &eos);
        let xi = 0.5 * (fan.inner_speed + fan.outer_speed);
        let s = fan.sample(xi, &eos).unwrap();
        assert_relative_eq!(s.speed(&eos, f), xi, epsilon = 1e-12);
        assert!(fan.sample(fan.inner_speed + 1.0, &eos).is_err());
        assert_eq!(fan.sample(fan.inner_speed, &eos).unwrap(), w);
    }
}
