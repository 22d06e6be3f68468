//! Admissibility of discontinuities: Lax classification, the characteristic
//! census behind the evolutionarity count, energy production, and the
//! shock-inside-a-fan case analysis.

use serde::Serialize;

use super::shock::jump_residuals;
use super::{WaveError, JUMP_ACCEPT_TOL};
use crate::eos::{EosPair, Phase};
use crate::state::{speeds_coincide, Family, PrimitiveState};

/// Five jump conditions.
pub const RELATIONS: usize = 5;
/// Five speeds per side plus the discontinuity speed.
pub const UNKNOWNS: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Minus,
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LaxClass {
    Compressive,
    Overcompressive,
    Undercompressive,
    Fails,
}

/// Incoming, outgoing and coinciding characteristics of a discontinuity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacteristicCensus {
    pub incoming: Vec<(Family, Side)>,
    pub outgoing: Vec<(Family, Side)>,
    pub coinciding: Vec<(Family, Side)>,
    pub unknowns: usize,
    pub relations: usize,
}

impl CharacteristicCensus {
    #[must_use]
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.incoming.len(), self.outgoing.len(), self.coinciding.len())
    }

    /// `N = i + c + m` holds.
    #[must_use]
    pub fn count_balanced(&self) -> bool {
        self.incoming.len() + self.coinciding.len() + self.relations == self.unknowns
    }

    fn has(&self, list: &[(Family, Side)], f: Family, s: Side) -> bool {
        list.contains(&(f, s))
    }

    /// True when the contact characteristic is tangent on both sides.
    #[must_use]
    pub fn contact_tangent(&self) -> bool {
        self.has(&self.coinciding, Family::Contact, Side::Minus) && self.has(&self.coinciding, Family::Contact, Side::Plus)
    }

    /// Acoustic families whose characteristics leave the discontinuity on both sides.
    #[must_use]
    pub fn emitting_families(&self) -> Vec<Family> {
        Family::ALL
            .into_iter()
            .filter(|&f| f != Family::Contact)
            .filter(|&f| self.has(&self.outgoing, f, Side::Minus) && self.has(&self.outgoing, f, Side::Plus))
            .collect()
    }

    /// Count balance, and for a discontinuity moving with the mixture no
    /// acoustic family may emit on both sides: such a wave can only be the
    /// contact, with every acoustic family passing through it.
    #[must_use]
    pub fn is_evolutionary(&self) -> bool {
        if !self.count_balanced() {
            return false;
        }
        !(self.contact_tangent() && !self.emitting_families().is_empty())
    }
}

fn side_speeds(w: &PrimitiveState, eos: &EosPair) -> [(Family, f64); 5] {
    Family::ALL.map(|f| (f, w.speed(eos, f)))
}

/// Sort the ten characteristics of a discontinuity moving at `s`.
#[must_use]
pub fn classify_discontinuity(
    minus: &PrimitiveState,
    plus: &PrimitiveState,
    s: f64,
    eos: &EosPair,
) -> CharacteristicCensus {
    let mut c = CharacteristicCensus {
        incoming: Vec::new(),
        outgoing: Vec::new(),
        coinciding: Vec::new(),
        unknowns: UNKNOWNS,
        relations: RELATIONS,
    };
    for (w, side) in [(minus, Side::Minus), (plus, Side::Plus)] {
        for (f, lam) in side_speeds(w, eos) {
            let entry = (f, side);
            if speeds_coincide(lam, s) {
                c.coinciding.push(entry);
            } else if (lam > s) == (side == Side::Minus) {
                c.incoming.push(entry);
            } else {
                c.outgoing.push(entry);
            }
        }
    }
    c
}

/// Generalized Lax classification with sorted speeds on each side.
///
/// `i − 1` speeds of the minus state and `j` of the plus state lie below
/// `s`; a coincidence or a failure of `λ_f(W⁻) > s > λ_f(W⁺)` for the
/// family itself is `Fails`.
#[must_use]
pub fn lax_check(minus: &PrimitiveState, plus: &PrimitiveState, s: f64, family: Family, eos: &EosPair) -> LaxClass {
    let lm = side_speeds(minus, eos);
    let lp = side_speeds(plus, eos);
    if lm.iter().chain(lp.iter()).any(|&(_, l)| speeds_coincide(l, s)) {
        return LaxClass::Fails;
    }
    let own_m = minus.speed(eos, family);
    let own_p = plus.speed(eos, family);
    if !(own_m > s && s > own_p) {
        return LaxClass::Fails;
    }
    let i = 1 + lm.iter().filter(|&&(_, l)| l < s).count();
    let j = lp.iter().filter(|&&(_, l)| l < s).count();
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => LaxClass::Compressive,
        std::cmp::Ordering::Less => LaxClass::Overcompressive,
        std::cmp::Ordering::Greater => LaxClass::Undercompressive,
    }
}

/// `−Q ⟦Ψ_k + ½(u_k − S)²⟧` for one phase, with `Q = −ρ⁻(u⁻ − S)`. No
/// check that the states are connected.
#[must_use]
pub fn phase_energy_production(
    minus: &PrimitiveState,
    plus: &PrimitiveState,
    s: f64,
    phase: Phase,
    eos: &EosPair,
) -> f64 {
    let q = -minus.rho_mix() * (minus.u_mix() - s);
    let e = eos.get(phase);
    let g = |w: &PrimitiveState| e.psi(w.rho(phase)) + 0.5 * (w.u(phase) - s).powi(2);
    -q * (g(plus) - g(minus))
}

/// Energy production of a discontinuity; `≤ 0` is admissible.
pub fn entropy_production(
    minus: &PrimitiveState,
    plus: &PrimitiveState,
    s: f64,
    eos: &EosPair,
) -> Result<f64, WaveError> {
    let r = jump_residuals(minus, plus, s, eos).iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(r < JUMP_ACCEPT_TOL) {
        return Err(WaveError::NotADiscontinuity(r));
    }
    Ok(phase_energy_production(minus, plus, s, Phase::One, eos))
}

/// Position of a shock relative to the fan of the other phase that hosts it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InteriorShockCase {
    /// The host speed equals `S` on both sides.
    BothTangent,
    /// The host speed crosses `S` the way the fan opens, tangent on neither side.
    Straddling,
    /// Tangent on the side the flow leaves the shock through.
    TangentDownstream,
    /// Tangent on the side the flow enters the shock from.
    TangentUpstream,
    /// The host characteristics converge into the shock: the host phase is shocked too.
    HostCompressed,
    /// The host speed is on the same side of `S` on both sides of the shock.
    Separate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InteriorShockReport {
    pub case: InteriorShockCase,
    pub census: CharacteristicCensus,
    /// Host-phase energy production `−Q⟦Ψ_ν + ½(u_ν − S)²⟧`.
    pub host_energy: f64,
    pub admissible: bool,
}

/// Classify a shock of speed `s` lying inside the fan of `host`.
///
/// Which side is downstream follows from the sign of the mixture mass
/// flux: for `Q < 0` the flow leaves through the plus side.
#[must_use]
pub fn interior_shock_case(
    minus: &PrimitiveState,
    plus: &PrimitiveState,
    s: f64,
    host: Family,
    eos: &EosPair,
) -> InteriorShockReport {
    let lm = minus.speed(eos, host);
    let lp = plus.speed(eos, host);
    let q = -minus.rho_mix() * (minus.u_mix() - s);
    let (tm, tp) = (speeds_coincide(lm, s), speeds_coincide(lp, s));
    let downstream_plus = q < 0.0;
    let case = match (tm, tp) {
        (true, true) => InteriorShockCase::BothTangent,
        (false, true) if downstream_plus => InteriorShockCase::TangentDownstream,
        (true, false) if !downstream_plus => InteriorShockCase::TangentDownstream,
        (true, false) | (false, true) => InteriorShockCase::TangentUpstream,
        (false, false) if lm < s && s < lp => InteriorShockCase::Straddling,
        (false, false) if lm > s && s > lp => InteriorShockCase::HostCompressed,
        (false, false) => InteriorShockCase::Separate,
    };
    let census = classify_discontinuity(minus, plus, s, eos);
    let host_energy = host.phase().map_or(f64::NAN, |p| phase_energy_production(minus, plus, s, p, eos));
    let admissible = case == InteriorShockCase::TangentDownstream && census.is_evolutionary() && host_energy <= 0.0;
    InteriorShockReport { case, census, host_energy, admissible }
}
