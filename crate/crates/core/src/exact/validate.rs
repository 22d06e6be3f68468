use serde::Serialize;

use super::{Element, ExactSolution};
use crate::state::{speeds_coincide, Direction, Family};
use crate::waves::{
    classify_discontinuity, contact_residuals, interior_shock_case, jump_residuals, lax_check,
    phase_energy_production, InteriorShockReport, LaxClass,
};

/// Scaled residual above which a discontinuity is flagged.
pub const RESIDUAL_TOL: f64 = 1e-8;
const FAN_PROBES: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShockCheck {
    pub side: Direction,
    pub index: usize,
    pub family: Family,
    pub speed: f64,
    pub jump_residual: f64,
    pub energy_production: f64,
    pub evolutionary: bool,
    pub lax: LaxClass,
    pub interior: Option<InteriorShockReport>,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FanCheck {
    pub side: Direction,
    pub index: usize,
    pub family: Family,
    pub span: (f64, f64),
    /// Largest `|λ(state(ξ)) − ξ|` over probe points.
    pub speed_residual: f64,
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub contact_residual: f64,
    pub shocks: Vec<ShockCheck>,
    pub fans: Vec<FanCheck>,
    pub alpha_single_jump: bool,
    /// Fans of different phases sharing part of their speed range.
    pub overlaps: Vec<(Family, Family, f64, f64)>,
    /// Problems not tied to one element.
    pub structure: Vec<String>,
}

impl ValidationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    /// First failing check with the family it concerns.
    #[must_use]
    pub fn first_failure(&self) -> Option<(Family, String)> {
        if !(self.contact_residual < RESIDUAL_TOL) {
            return Some((Family::Contact, format!("contact residual {:e}", self.contact_residual)));
        }
        if !self.alpha_single_jump {
            return Some((Family::Contact, "volume fraction jumps away from the contact".into()));
        }
        for s in &self.shocks {
            if let Some(p) = s.problems.first() {
                return Some((s.family, p.clone()));
            }
        }
        for f in &self.fans {
            if let Some(p) = f.problems.first() {
                return Some((f.family, p.clone()));
            }
        }
        self.structure.first().map(|p| (Family::Contact, p.clone()))
    }

    /// Largest scaled jump residual over the contact and all shocks.
    #[must_use]
    pub fn max_jump_residual(&self) -> f64 {
        self.shocks.iter().map(|s| s.jump_residual).fold(self.contact_residual, f64::max)
    }
}

fn energy_tolerance(s: &super::ShockElement, eos: &crate::eos::EosPair) -> f64 {
    let w = &s.inner;
    let scale = eos.phase1().sound_speed_sq(w.rho1) + eos.phase2().sound_speed_sq(w.rho2) + (w.u_mix() - s.speed).powi(2);
    1e-10 * s.data.q.abs() * scale
}

fn check_shock(sol: &ExactSolution, side: Direction, index: usize, s: &super::ShockElement) -> ShockCheck {
    let eos = &sol.eos;
    let (minus, plus) = s.ordered(side);
    let jump_residual = jump_residuals(&minus, &plus, s.speed, eos).iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let energy = phase_energy_production(&minus, &plus, s.speed, crate::eos::Phase::One, eos);
    let census = classify_discontinuity(&minus, &plus, s.speed, eos);
    let lax = lax_check(&minus, &plus, s.speed, s.family, eos);
    let interior = s.host.map(|h| interior_shock_case(&minus, &plus, s.speed, h, eos));
    let mut problems = Vec::new();
    if !(jump_residual < RESIDUAL_TOL) {
        problems.push(format!("jump residual {jump_residual:e}"));
    }
    if energy > energy_tolerance(s, eos) {
        problems.push(format!("energy production {energy:e} is positive"));
    }
    if !census.is_evolutionary() {
        let (i, o, c) = census.counts();
        problems.push(format!("not evolutionary (i = {i}, o = {o}, c = {c})"));
    }
    match &interior {
        Some(rep) if !rep.admissible => problems.push(format!("interior shock configuration {:?} rejected", rep.case)),
        None if lax == LaxClass::Fails => problems.push("Lax inequalities fail".into()),
        _ => {}
    }
    ShockCheck {
        side,
        index,
        family: s.family,
        speed: s.speed,
        jump_residual,
        energy_production: energy,
        evolutionary: census.is_evolutionary(),
        lax,
        interior,
        problems,
    }
}

fn check_fan(sol: &ExactSolution, side: Direction, index: usize, f: &crate::waves::Fan) -> FanCheck {
    let mut problems = Vec::new();
    let opens = match side {
        Direction::Minus => f.outer_speed <= f.inner_speed,
        Direction::Plus => f.outer_speed >= f.inner_speed,
    };
    if !opens {
        problems.push("fan closes instead of opening".into());
    }
    let mut speed_residual = 0.0f64;
    let (lo, hi) = f.span();
    for k in 0..=FAN_PROBES {
        let xi = if k == FAN_PROBES { hi } else { lo + (hi - lo) * k as f64 / FAN_PROBES as f64 };
        match f.sample(xi, &sol.eos) {
            Ok(s) => speed_residual = speed_residual.max((s.speed(&sol.eos, f.family) - xi).abs() / 1f64.max(xi.abs())),
            Err(e) => problems.push(format!("sampling failed: {e}")),
        }
    }
    if speed_residual > RESIDUAL_TOL {
        problems.push(format!("fan speed residual {speed_residual:e}"));
    }
    FanCheck { side, index, family: f.family, span: (lo, hi), speed_residual, problems }
}

/// Check every wave and the arrangement of the whole solution.
#[must_use]
pub fn validate_solution(sol: &ExactSolution) -> ValidationReport {
    let eos = &sol.eos;
    let contact_residual = contact_residuals(&sol.contact_left, &sol.contact_right, eos)
        .iter()
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let uc = sol.contact_speed();
    let contact_trivial = sol.contact_left.max_rel_diff(&sol.contact_right, 1.0) < 1e-12;
    let mut shocks = Vec::new();
    let mut fans = Vec::new();
    let mut structure = Vec::new();
    let mut overlaps = Vec::new();
    let mut alpha_single_jump = true;

    for side in [Direction::Minus, Direction::Plus] {
        let elements = sol.elements(side);
        let alpha = match side {
            Direction::Minus => sol.contact_left.alpha1,
            Direction::Plus => sol.contact_right.alpha1,
        };
        for (index, e) in elements.iter().enumerate() {
            if e.inner().alpha1 != alpha || e.outer().alpha1 != alpha {
                alpha_single_jump = false;
            }
            match e {
                Element::Shock(s) => shocks.push(check_shock(sol, side, index, s)),
                Element::Fan(f) => fans.push(check_fan(sol, side, index, f)),
            }
            // Waves stay on their side of the contact.
            let (lo, hi) = e.span();
            let nearest = if side == Direction::Minus { hi } else { lo };
            let wrong = match side {
                Direction::Minus => nearest > uc,
                Direction::Plus => nearest < uc,
            };
            if wrong || (!contact_trivial && speeds_coincide(nearest, uc)) {
                structure.push(format!("{} wave at speed {nearest} reaches the contact at {uc}", e.family()));
            }
        }
        // Per-phase ordering moving outward.
        for phase in crate::eos::Phase::BOTH {
            let mut last: Option<f64> = None;
            for e in elements.iter().filter(|e| e.touches(phase)) {
                let (lo, hi) = e.span();
                let (near, far) = if side == Direction::Minus { (hi, lo) } else { (lo, hi) };
                if let Some(prev) = last {
                    let bad = match side {
                        Direction::Minus => near > prev && !speeds_coincide(near, prev),
                        Direction::Plus => near < prev && !speeds_coincide(near, prev),
                    };
                    if bad {
                        structure.push(format!("{} wave at {near} crosses the previous phase-{} wave at {prev}", e.family(), phase.number()));
                    }
                }
                last = Some(far);
            }
        }
        // Shocks against fans of the other phase, and shocks against each other.
        for (i, e) in elements.iter().enumerate() {
            let Element::Shock(s) = e else { continue };
            for (j, g) in elements.iter().enumerate() {
                match g {
                    Element::Fan(f) if f.family.phase() != s.family.phase() => {
                        let (lo, hi) = f.span();
                        let at_end = speeds_coincide(lo, s.speed) || speeds_coincide(hi, s.speed);
                        if at_end && s.host != Some(f.family) && hi > lo {
                            structure.push(format!("{} shock touches the {} fan without being hosted by it", s.family, f.family));
                        } else if !at_end && lo < s.speed && s.speed < hi {
                            structure.push(format!("{} shock lies strictly inside the {} fan", s.family, f.family));
                        }
                    }
                    Element::Shock(t) if j > i && speeds_coincide(t.speed, s.speed) => {
                        structure.push(format!("{} and {} shocks move together at {} (shock resonance)", s.family, t.family, s.speed));
                    }
                    _ => {}
                }
            }
        }
        for (i, a) in elements.iter().enumerate() {
            for b in &elements[i + 1..] {
                if let (Element::Fan(fa), Element::Fan(fb)) = (a, b) {
                    if fa.family.phase() == fb.family.phase() {
                        continue;
                    }
                    let (lo, hi) = (fa.span().0.max(fb.span().0), fa.span().1.min(fb.span().1));
                    if hi > lo {
                        overlaps.push((fa.family, fb.family, lo, hi));
                    }
                }
            }
        }
    }
    ValidationReport { contact_residual, shocks, fans, alpha_single_jump, overlaps, structure }
}
