//! Exact self-similar solutions built outward from the contact.
//!
//! The state just left of the contact and the volume fraction on its right
//! are prescribed. The contact fixes the right centre state, then each side
//! is built wave by wave moving away from the contact, every wave solving
//! for its outer state from its inner one.

mod forward;
mod validate;

pub use forward::{first_admissible, solve_fixed_pattern, PatternWave};
pub use validate::{validate_solution, FanCheck, ShockCheck, ValidationReport, RESIDUAL_TOL};

use std::io::Write;

use serde::Serialize;
use thiserror::Error;

use crate::eos::{EosPair, Phase};
use crate::state::{Direction, Family, PrimitiveState};
use crate::waves::{contact_connect, rarefaction_connect, shock_connect, Fan, ShockData, WaveError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("contact: {0}")]
    Contact(WaveError),
    #[error("{side:?} wave {index} ({family}): {source}")]
    Wave { side: Direction, index: usize, family: Family, source: WaveError },
    #[error("family {family} cannot sit on the {side:?} side of the contact")]
    WrongSide { family: Family, side: Direction },
    #[error("inadmissible {family} wave: {reason}")]
    Inadmissible { family: Family, reason: String },
    #[error("no wave pattern fits the data: {0}")]
    Pattern(String),
}

/// One requested wave, listed outward from the contact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WaveSpec {
    /// Fan ending where the family speed reaches `tail`.
    Fan { family: Family, tail: f64 },
    Shock { family: Family, speed: f64 },
    /// `host` fan interrupted at `speed` by a shock of `shock`, then resumed up to `tail`.
    ShockInFan { host: Family, shock: Family, speed: f64, tail: f64 },
}

impl WaveSpec {
    #[must_use]
    pub fn mirrored(&self) -> Self {
        match *self {
            WaveSpec::Fan { family, tail } => WaveSpec::Fan { family: family.mirrored(), tail: -tail },
            WaveSpec::Shock { family, speed } => WaveSpec::Shock { family: family.mirrored(), speed: -speed },
            WaveSpec::ShockInFan { host, shock, speed, tail } => WaveSpec::ShockInFan {
                host: host.mirrored(),
                shock: shock.mirrored(),
                speed: -speed,
                tail: -tail,
            },
        }
    }

    fn families(&self) -> Vec<Family> {
        match *self {
            WaveSpec::Fan { family, .. } | WaveSpec::Shock { family, .. } => vec![family],
            WaveSpec::ShockInFan { host, shock, .. } => vec![host, shock],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockElement {
    pub family: Family,
    pub speed: f64,
    /// Contact-side state.
    pub inner: PrimitiveState,
    pub outer: PrimitiveState,
    pub data: ShockData,
    /// Fan of the other phase the shock interrupts, if any.
    pub host: Option<Family>,
}

impl ShockElement {
    /// `(minus, plus)` states for a shock on the given side of the contact.
    #[must_use]
    pub fn ordered(&self, side: Direction) -> (PrimitiveState, PrimitiveState) {
        match side {
            Direction::Minus => (self.outer, self.inner),
            Direction::Plus => (self.inner, self.outer),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Element {
    Fan(Fan),
    Shock(ShockElement),
}

impl Element {
    #[must_use]
    pub fn family(&self) -> Family {
        match self {
            Element::Fan(f) => f.family,
            Element::Shock(s) => s.family,
        }
    }

    #[must_use]
    pub fn inner(&self) -> PrimitiveState {
        match self {
            Element::Fan(f) => f.inner,
            Element::Shock(s) => s.inner,
        }
    }

    #[must_use]
    pub fn outer(&self) -> PrimitiveState {
        match self {
            Element::Fan(f) => f.outer,
            Element::Shock(s) => s.outer,
        }
    }

    /// `(lo, hi)`; equal for a shock.
    #[must_use]
    pub fn span(&self) -> (f64, f64) {
        match self {
            Element::Fan(f) => f.span(),
            Element::Shock(s) => (s.speed, s.speed),
        }
    }

    /// Whether this element changes the state of `phase`.
    #[must_use]
    pub fn touches(&self, phase: Phase) -> bool {
        match self {
            Element::Fan(f) => f.family.phase() == Some(phase),
            Element::Shock(_) => true,
        }
    }

    #[must_use]
    pub fn kind(&self) -> &'static str {
        match self {
            Element::Fan(_) => "rarefaction",
            Element::Shock(s) if s.host.is_some() => "interior-shock",
            Element::Shock(_) => "shock",
        }
    }
}

/// Piecewise self-similar solution of a Riemann problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactSolution {
    #[serde(skip)]
    pub eos: EosPair,
    pub contact_left: PrimitiveState,
    pub contact_right: PrimitiveState,
    /// Elements left of the contact, innermost first.
    pub left: Vec<Element>,
    /// Elements right of the contact, innermost first.
    pub right: Vec<Element>,
}

fn build_side(
    start: &PrimitiveState,
    specs: &[WaveSpec],
    side: Direction,
    eos: &EosPair,
) -> Result<Vec<Element>, ExactError> {
    let mut out = Vec::new();
    let mut cur = *start;
    for (index, spec) in specs.iter().enumerate() {
        for f in spec.families() {
            if f.direction() != Some(side) {
                return Err(ExactError::WrongSide { family: f, side });
            }
        }
        let wrap = |family: Family| move |source: WaveError| ExactError::Wave { side, index, family, source };
        match *spec {
            WaveSpec::Fan { family, tail } => {
                let outer = rarefaction_connect(&cur, family, tail, eos).map_err(wrap(family))?;
                out.push(Element::Fan(Fan::new(family, cur, outer, eos)));
                cur = outer;
            }
            WaveSpec::Shock { family, speed } => {
                let (outer, data) = shock_connect(&cur, family, speed, eos).map_err(wrap(family))?;
                out.push(Element::Shock(ShockElement { family, speed, inner: cur, outer, data, host: None }));
                cur = outer;
            }
            WaveSpec::ShockInFan { host, shock, speed, tail } => {
                if host.phase() == shock.phase() {
                    return Err(ExactError::Inadmissible {
                        family: shock,
                        reason: "interior shock must belong to the other phase".into(),
                    });
                }
                let pre = rarefaction_connect(&cur, host, speed, eos).map_err(wrap(host))?;
                out.push(Element::Fan(Fan::new(host, cur, pre, eos)));
                let (post, data) = shock_connect(&pre, shock, speed, eos).map_err(wrap(shock))?;
                out.push(Element::Shock(ShockElement {
                    family: shock,
                    speed,
                    inner: pre,
                    outer: post,
                    data,
                    host: Some(host),
                }));
                let outer = rarefaction_connect(&post, host, tail, eos).map_err(wrap(host))?;
                out.push(Element::Fan(Fan::new(host, post, outer, eos)));
                cur = outer;
            }
        }
    }
    Ok(out)
}

/// Build the solution and reject it if any element is inadmissible.
pub fn build_solution(
    contact_left: &PrimitiveState,
    alpha1_right: f64,
    left: &[WaveSpec],
    right: &[WaveSpec],
    eos: &EosPair,
) -> Result<ExactSolution, ExactError> {
    let sol = assemble(contact_left, alpha1_right, left, right, eos)?;
    let report = validate_solution(&sol);
    if let Some((family, reason)) = report.first_failure() {
        return Err(ExactError::Inadmissible { family, reason });
    }
    Ok(sol)
}

/// Build without the admissibility verdict; connectors still reject what they cannot solve.
pub fn assemble(
    contact_left: &PrimitiveState,
    alpha1_right: f64,
    left: &[WaveSpec],
    right: &[WaveSpec],
    eos: &EosPair,
) -> Result<ExactSolution, ExactError> {
    let contact_right = contact_connect(contact_left, alpha1_right, eos).map_err(ExactError::Contact)?;
    let l = build_side(contact_left, left, Direction::Minus, eos)?;
    let r = build_side(&contact_right, right, Direction::Plus, eos)?;
    Ok(ExactSolution { eos: *eos, contact_left: *contact_left, contact_right, left: l, right: r })
}

impl ExactSolution {
    #[must_use]
    pub fn contact_speed(&self) -> f64 {
        self.contact_left.u_mix()
    }

    #[must_use]
    pub fn elements(&self, side: Direction) -> &[Element] {
        match side {
            Direction::Minus => &self.left,
            Direction::Plus => &self.right,
        }
    }

    /// `(U_L, U_R)`, the outermost constant states.
    #[must_use]
    pub fn initial_data(&self) -> (PrimitiveState, PrimitiveState) {
        let l = self.left.last().map_or(self.contact_left, Element::outer);
        let r = self.right.last().map_or(self.contact_right, Element::outer);
        (l, r)
    }

    /// Constant states from left to right, including plateaus between waves.
    #[must_use]
    pub fn states(&self) -> Vec<PrimitiveState> {
        let mut v: Vec<_> = self.left.iter().rev().map(Element::outer).collect();
        v.push(self.contact_left);
        v.push(self.contact_right);
        v.extend(self.right.iter().map(Element::outer));
        v
    }

    fn sample_phase(&self, xi: f64, phase: Phase, side: Direction) -> Result<(f64, f64), WaveError> {
        let (start, elements) = match side {
            Direction::Minus => (self.contact_left, &self.left),
            Direction::Plus => (self.contact_right, &self.right),
        };
        // Moving outward, `beyond` says whether xi lies past a given speed.
        let beyond = |speed: f64| match side {
            Direction::Minus => xi < speed,
            Direction::Plus => xi > speed,
        };
        let mut cur = start;
        for e in elements.iter().filter(|e| e.touches(phase)) {
            match e {
                Element::Fan(f) => {
                    if !beyond(f.inner_speed) {
                        break;
                    }
                    if !beyond(f.outer_speed) {
                        let s = f.sample(xi, &self.eos)?;
                        return Ok((s.rho(phase), s.u(phase)));
                    }
                }
                Element::Shock(s) => {
                    if !beyond(s.speed) {
                        break;
                    }
                }
            }
            cur = e.outer();
        }
        Ok((cur.rho(phase), cur.u(phase)))
    }

    /// State at `xi = x/t`. Each phase follows its own waves; the volume
    /// fraction follows the side of the contact.
    pub fn sample(&self, xi: f64) -> Result<PrimitiveState, WaveError> {
        let uc = self.contact_speed();
        let side = if xi <= uc { Direction::Minus } else { Direction::Plus };
        let alpha1 = match side {
            Direction::Minus => self.contact_left.alpha1,
            Direction::Plus => self.contact_right.alpha1,
        };
        let (rho1, u1) = self.sample_phase(xi, Phase::One, side)?;
        let (rho2, u2) = self.sample_phase(xi, Phase::Two, side)?;
        Ok(PrimitiveState::new(alpha1, rho1, rho2, u1, u2))
    }

    pub fn sample_xt(&self, x: f64, t: f64) -> Result<PrimitiveState, WaveError> {
        if t <= 0.0 {
            let (l, r) = self.initial_data();
            return Ok(if x <= 0.0 { l } else { r });
        }
        self.sample(x / t)
    }

    /// Reflection `x → −x`.
    #[must_use]
    pub fn mirrored(&self) -> Self {
        let flip = |e: &Element| match e {
            Element::Fan(f) => Element::Fan(Fan {
                family: f.family.mirrored(),
                inner: f.inner.mirrored(),
                outer: f.outer.mirrored(),
                inner_speed: -f.inner_speed,
                outer_speed: -f.outer_speed,
            }),
            Element::Shock(s) => Element::Shock(ShockElement {
                family: s.family.mirrored(),
                speed: -s.speed,
                inner: s.inner.mirrored(),
                outer: s.outer.mirrored(),
                data: ShockData {
                    speed: -s.data.speed,
                    q: -s.data.q,
                    q1: -s.data.q1,
                    q2: -s.data.q2,
                    entropy_production: s.data.entropy_production,
                },
                host: s.host.map(Family::mirrored),
            }),
        };
        ExactSolution {
            eos: self.eos,
            contact_left: self.contact_right.mirrored(),
            contact_right: self.contact_left.mirrored(),
            left: self.right.iter().map(flip).collect(),
            right: self.left.iter().map(flip).collect(),
        }
    }

    /// Write `xi,alpha1,rho1,rho2,u1,u2,rho,u,w,p,p_bar` rows at 17 significant digits.
    pub fn write_csv<W: Write>(&self, out: &mut W, xis: &[f64]) -> std::io::Result<()> {
        writeln!(out, "xi,alpha1,rho1,rho2,u1,u2,rho,u,w,p,p_bar")?;
        for &xi in xis {
            let s = self.sample(xi).map_err(|e| std::io::Error::other(e.to_string()))?;
            let m = s.mixture(&self.eos);
            let row = [xi, s.alpha1, s.rho1, s.rho2, s.u1, s.u2, m.rho, m.u, m.w, m.p, m.p_bar];
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    /// Speed range `(lo, hi)` covered by all waves, contact included.
    #[must_use]
    pub fn speed_range(&self) -> (f64, f64) {
        let uc = self.contact_speed();
        self.left.iter().chain(self.right.iter()).fold((uc, uc), |(lo, hi), e| {
            let (a, b) = e.span();
            (lo.min(a), hi.max(b))
        })
    }
}
