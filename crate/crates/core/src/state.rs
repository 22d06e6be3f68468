//! State vectors, the conservative flux, and the eigenstructure of the
//! primitive system.
//!
//! Primitive ordering is `(α₁, ρ₁, ρ₂, u₁, u₂)`; conserved ordering is
//! `(α₁ρ, α₁ρ₁, ρ, ρu, w)` with `w = u₁ − u₂`.

use nalgebra::{Matrix5, SMatrix, Vector5};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::eos::{EosPair, Phase};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("volume fraction {0} outside (0, 1)")]
    VolumeFraction(f64),
    #[error("phase {phase} density {value} is not positive")]
    Density { phase: u8, value: f64 },
    #[error("non-finite component in state")]
    NonFinite,
    #[error("cannot decode conserved vector {0:?}: {1}")]
    Decode([f64; 5], &'static str),
}

/// Relative tolerance deciding that two wave speeds coincide.
pub const COINCIDENCE_TOL: f64 = 1e-9;

/// `|a − b| < 1e-9 · max(1, |a|, |b|)`.
#[must_use]
pub fn speeds_coincide(a: f64, b: f64) -> bool {
    (a - b).abs() < COINCIDENCE_TOL * 1f64.max(a.abs()).max(b.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimitiveState {
    pub alpha1: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub u1: f64,
    pub u2: f64,
}

impl PrimitiveState {
    pub const fn new(alpha1: f64, rho1: f64, rho2: f64, u1: f64, u2: f64) -> Self {
        Self { alpha1, rho1, rho2, u1, u2 }
    }

    pub fn from_array(v: [f64; 5]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4])
    }

    #[must_use]
    pub fn to_array(&self) -> [f64; 5] {
        [self.alpha1, self.rho1, self.rho2, self.u1, self.u2]
    }

    pub fn validate(&self) -> Result<(), StateError> {
        if self.to_array().iter().any(|v| !v.is_finite()) {
            return Err(StateError::NonFinite);
        }
        if !(self.alpha1 > 0.0 && self.alpha1 < 1.0) {
            return Err(StateError::VolumeFraction(self.alpha1));
        }
        for p in Phase::BOTH {
            if self.rho(p) <= 0.0 {
                return Err(StateError::Density { phase: p.number(), value: self.rho(p) });
            }
        }
        Ok(())
    }

    #[must_use]
    pub fn alpha(&self, p: Phase) -> f64 {
        match p {
            Phase::One => self.alpha1,
            Phase::Two => 1.0 - self.alpha1,
        }
    }

    #[must_use]
    pub fn rho(&self, p: Phase) -> f64 {
        match p {
            Phase::One => self.rho1,
            Phase::Two => self.rho2,
        }
    }

    #[must_use]
    pub fn u(&self, p: Phase) -> f64 {
        match p {
            Phase::One => self.u1,
            Phase::Two => self.u2,
        }
    }

    pub fn set_rho(&mut self, p: Phase, v: f64) {
        match p {
            Phase::One => self.rho1 = v,
            Phase::Two => self.rho2 = v,
        }
    }

    pub fn set_u(&mut self, p: Phase, v: f64) {
        match p {
            Phase::One => self.u1 = v,
            Phase::Two => self.u2 = v,
        }
    }

    #[must_use]
    pub fn rho_mix(&self) -> f64 {
        self.alpha1 * self.rho1 + (1.0 - self.alpha1) * self.rho2
    }

    /// Mass fraction of phase 1.
    #[must_use]
    pub fn c1(&self) -> f64 {
        self.alpha1 * self.rho1 / self.rho_mix()
    }

    #[must_use]
    pub fn u_mix(&self) -> f64 {
        let c1 = self.c1();
        c1 * self.u1 + (1.0 - c1) * self.u2
    }

    #[must_use]
    pub fn slip(&self) -> f64 {
        self.u1 - self.u2
    }

    #[must_use]
    pub fn mixture(&self, eos: &EosPair) -> MixtureProps {
        let rho = self.rho_mix();
        let c1 = self.alpha1 * self.rho1 / rho;
        let c2 = 1.0 - c1;
        let w = self.slip();
        let p = self.alpha1 * eos.phase1().pressure(self.rho1) + (1.0 - self.alpha1) * eos.phase2().pressure(self.rho2);
        MixtureProps { rho, c1, c2, u: c1 * self.u1 + c2 * self.u2, w, p, p_bar: rho * c1 * c2 * w * w + p }
    }

    #[must_use]
    pub fn pressure(&self, eos: &EosPair, p: Phase) -> f64 {
        eos.get(p).pressure(self.rho(p))
    }

    #[must_use]
    pub fn sound_speed(&self, eos: &EosPair, p: Phase) -> f64 {
        eos.get(p).sound_speed(self.rho(p))
    }

    /// Speed of an acoustic or contact family at this state.
    #[must_use]
    pub fn speed(&self, eos: &EosPair, family: Family) -> f64 {
        match family {
            Family::Contact => self.u_mix(),
            Family::Minus(p) => self.u(p) - self.sound_speed(eos, p),
            Family::Plus(p) => self.u(p) + self.sound_speed(eos, p),
        }
    }

    #[must_use]
    pub fn to_conserved(&self) -> ConservedState {
        let rho = self.rho_mix();
        ConservedState([
            self.alpha1 * rho,
            self.alpha1 * self.rho1,
            rho,
            self.alpha1 * self.rho1 * self.u1 + (1.0 - self.alpha1) * self.rho2 * self.u2,
            self.slip(),
        ])
    }

    /// Reflection `x → −x`: velocities change sign.
    #[must_use]
    pub fn mirrored(&self) -> Self {
        Self { u1: -self.u1, u2: -self.u2, ..*self }
    }

    /// Largest relative component difference, with `floor` guarding tiny references.
    #[must_use]
    pub fn max_rel_diff(&self, reference: &PrimitiveState, floor: f64) -> f64 {
        self.to_array()
            .iter()
            .zip(reference.to_array())
            .map(|(a, b)| (a - b).abs() / b.abs().max(floor))
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureProps {
    pub rho: f64,
    pub c1: f64,
    pub c2: f64,
    pub u: f64,
    pub w: f64,
    pub p: f64,
    /// `ρ c₁ c₂ w² + p`.
    pub p_bar: f64,
}

/// `(α₁ρ, α₁ρ₁, ρ, ρu, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ConservedState(pub [f64; 5]);

impl ConservedState {
    pub fn to_primitive(&self) -> Result<PrimitiveState, StateError> {
        let [w1, w2, w3, _, _] = self.0;
        if self.0.iter().any(|v| !v.is_finite()) {
            return Err(StateError::NonFinite);
        }
        if w3 <= 0.0 {
            return Err(StateError::Decode(self.0, "mixture density not positive"));
        }
        if !(w1 > 0.0 && w1 < w3) {
            return Err(StateError::Decode(self.0, "volume fraction outside (0, 1)"));
        }
        if !(w2 > 0.0 && w2 < w3) {
            return Err(StateError::Decode(self.0, "mass fraction outside (0, 1)"));
        }
        Ok(self.decode_unchecked())
    }

    /// Decode without validation. Used on hot paths already guarded elsewhere.
    #[must_use]
    pub fn decode_unchecked(&self) -> PrimitiveState {
        let [w1, w2, w3, w4, w5] = self.0;
        let alpha1 = w1 / w3;
        let c1 = w2 / w3;
        let u = w4 / w3;
        PrimitiveState {
            alpha1,
            rho1: w2 / alpha1,
            rho2: (w3 - w2) / (1.0 - alpha1),
            u1: u + (1.0 - c1) * w5,
            u2: u - c1 * w5,
        }
    }

    #[must_use]
    pub fn physical_flux(&self, eos: &EosPair) -> [f64; 5] {
        let [w1, w2, w3, w4, w5] = self.0;
        let alpha1 = w1 / w3;
        let rho1 = w2 / alpha1;
        let rho2 = (w3 - w2) / (1.0 - alpha1);
        let (e1, e2) = (eos.phase1(), eos.phase2());
        let u1 = ((w3 - w2) * w5 + w4) / w3;
        let u2 = (w4 - w2 * w5) / w3;
        [
            w1 * w4 / w3,
            w2 * u1,
            w4,
            w2 * u1 * u1 + (w3 - w2) * u2 * u2 + alpha1 * e1.pressure(rho1) + (w3 - w1) / w3 * e2.pressure(rho2),
            0.5 * w5 * (2.0 * u1 - w5) + e1.psi(rho1) - e2.psi(rho2),
        ]
    }
}

impl std::ops::Index<usize> for ConservedState {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Flux assembled from primitive quantities, independent of the conserved-variable form.
#[must_use]
pub fn flux_from_primitive(w: &PrimitiveState, eos: &EosPair) -> [f64; 5] {
    let rho = w.rho_mix();
    let u = w.u_mix();
    let (a1, a2) = (w.alpha1, 1.0 - w.alpha1);
    let p1 = eos.phase1().pressure(w.rho1);
    let p2 = eos.phase2().pressure(w.rho2);
    [
        a1 * rho * u,
        a1 * w.rho1 * w.u1,
        rho * u,
        a1 * w.rho1 * w.u1 * w.u1 + a2 * w.rho2 * w.u2 * w.u2 + a1 * p1 + a2 * p2,
        0.5 * (w.u1 * w.u1 - w.u2 * w.u2) + eos.phase1().psi(w.rho1) - eos.phase2().psi(w.rho2),
    ]
}

/// Quasi-linear matrix `A(W)` of `∂ₜW + A ∂ₓW = 0` in primitive variables.
#[must_use]
pub fn jacobian_primitive(w: &PrimitiveState, eos: &EosPair) -> Matrix5<f64> {
    let m = w.mixture(eos);
    let (a1, a2) = (w.alpha1, 1.0 - w.alpha1);
    let dp = w.pressure(eos, Phase::One) - w.pressure(eos, Phase::Two);
    let s1 = eos.phase1().sound_speed_sq(w.rho1);
    let s2 = eos.phase2().sound_speed_sq(w.rho2);
    let u = m.u;
    Matrix5::from_row_slice(&[
        u, 0.0, 0.0, 0.0, 0.0,
        w.rho1 * (w.u1 - u) / a1, w.u1, 0.0, w.rho1, 0.0,
        w.rho2 * (u - w.u2) / a2, 0.0, w.u2, 0.0, w.rho2,
        dp / m.rho, s1 / w.rho1, 0.0, w.u1, 0.0,
        dp / m.rho, 0.0, s2 / w.rho2, 0.0, w.u2,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Direction {
    Minus,
    Plus,
}

impl Direction {
    #[must_use]
    pub fn sign(self) -> f64 {
        match self {
            Direction::Minus => -1.0,
            Direction::Plus => 1.0,
        }
    }
    #[must_use]
    pub fn flipped(self) -> Self {
        match self {
            Direction::Minus => Direction::Plus,
            Direction::Plus => Direction::Minus,
        }
    }
}

/// Characteristic family: an acoustic family `(phase, ±)` or the contact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    Minus(Phase),
    Contact,
    Plus(Phase),
}

impl Family {
    /// Construction order `1−, 2−, C, 1+, 2+`.
    pub const ALL: [Family; 5] = [
        Family::Minus(Phase::One),
        Family::Minus(Phase::Two),
        Family::Contact,
        Family::Plus(Phase::One),
        Family::Plus(Phase::Two),
    ];

    #[must_use]
    pub fn index(self) -> usize {
        match self {
            Family::Minus(Phase::One) => 0,
            Family::Minus(Phase::Two) => 1,
            Family::Contact => 2,
            Family::Plus(Phase::One) => 3,
            Family::Plus(Phase::Two) => 4,
        }
    }

    #[must_use]
    pub fn acoustic(phase: Phase, dir: Direction) -> Self {
        match dir {
            Direction::Minus => Family::Minus(phase),
            Direction::Plus => Family::Plus(phase),
        }
    }

    #[must_use]
    pub fn phase(self) -> Option<Phase> {
        match self {
            Family::Minus(p) | Family::Plus(p) => Some(p),
            Family::Contact => None,
        }
    }

    #[must_use]
    pub fn direction(self) -> Option<Direction> {
        match self {
            Family::Minus(_) => Some(Direction::Minus),
            Family::Plus(_) => Some(Direction::Plus),
            Family::Contact => None,
        }
    }

    /// Image under `x → −x`.
    #[must_use]
    pub fn mirrored(self) -> Self {
        match self {
            Family::Minus(p) => Family::Plus(p),
            Family::Plus(p) => Family::Minus(p),
            Family::Contact => Family::Contact,
        }
    }

    #[must_use]
    pub fn label(self) -> String {
        match self {
            Family::Minus(p) => format!("{}-", p.number()),
            Family::Plus(p) => format!("{}+", p.number()),
            Family::Contact => "C".into(),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldKind {
    GenuinelyNonlinear,
    LinearlyDegenerate,
}

/// Eigenvalues and right eigenvectors, indexed by [`Family::index`].
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenstructure {
    pub speeds: [f64; 5],
    pub vectors: [Vector5<f64>; 5],
    pub kinds: [FieldKind; 5],
    /// Families ordered by increasing speed.
    pub sorted: [Family; 5],
    /// The contact eigenvalue coincides with an acoustic one, so its vector is
    /// no longer independent.
    pub contact_degenerate: bool,
}

impl Eigenstructure {
    #[must_use]
    pub fn speed(&self, f: Family) -> f64 {
        self.speeds[f.index()]
    }
    #[must_use]
    pub fn vector(&self, f: Family) -> &Vector5<f64> {
        &self.vectors[f.index()]
    }
}

struct ContactTerms {
    eps: [f64; 2],
    raw: Vector5<f64>,
}

fn contact_terms(w: &PrimitiveState, eos: &EosPair) -> ContactTerms {
    let m = w.mixture(eos);
    let (a1, a2) = (w.alpha1, 1.0 - w.alpha1);
    let dp = w.pressure(eos, Phase::One) - w.pressure(eos, Phase::Two);
    let s1 = eos.phase1().sound_speed_sq(w.rho1);
    let s2 = eos.phase2().sound_speed_sq(w.rho2);
    // u − u₁ = −c₂w and u − u₂ = c₁w, exact zeros without slip.
    let d1 = -m.c2 * m.w;
    let d2 = m.c1 * m.w;
    let delta1 = dp / m.rho - d1 * d1 / a1;
    let delta2 = dp / m.rho + d2 * d2 / a2;
    let eps1 = (d1 * d1 - s1) / w.rho1;
    let eps2 = (d2 * d2 - s2) / w.rho2;
    let g1 = (a1 * dp - m.rho * s1) / (a1 * w.rho1 * m.rho);
    let g2 = -(a2 * dp + m.rho * s2) / (a2 * w.rho2 * m.rho);
    ContactTerms {
        eps: [eps1, eps2],
        raw: Vector5::new(eps1 * eps2, delta1 * eps2, delta2 * eps1, d1 * eps2 * g1, -d2 * eps1 * g2),
    }
}

/// Unnormalised contact eigenvector exactly as the closed form gives it.
#[must_use]
pub fn contact_vector_raw(w: &PrimitiveState, eos: &EosPair) -> Vector5<f64> {
    contact_terms(w, eos).raw
}

fn acoustic_vector(w: &PrimitiveState, eos: &EosPair, phase: Phase, dir: Direction) -> Vector5<f64> {
    let r = w.rho(phase);
    let slope = dir.sign() * eos.get(phase).sound_speed(r) / r;
    match phase {
        Phase::One => Vector5::new(0.0, 1.0, 0.0, slope, 0.0),
        Phase::Two => Vector5::new(0.0, 0.0, 1.0, 0.0, slope),
    }
}

#[must_use]
pub fn eigenstructure(w: &PrimitiveState, eos: &EosPair) -> Eigenstructure {
    let speeds = Family::ALL.map(|f| w.speed(eos, f));
    let ct = contact_terms(w, eos);
    let n = ct.raw.norm();
    let rc = if n > 0.0 { ct.raw / n } else { ct.raw };
    let vectors = Family::ALL.map(|f| match f {
        Family::Contact => rc,
        Family::Minus(p) => acoustic_vector(w, eos, p, Direction::Minus),
        Family::Plus(p) => acoustic_vector(w, eos, p, Direction::Plus),
    });
    let kinds = Family::ALL.map(|f| match f {
        Family::Contact => FieldKind::LinearlyDegenerate,
        _ => FieldKind::GenuinelyNonlinear,
    });
    let mut sorted = Family::ALL;
    sorted.sort_by(|a, b| speeds[a.index()].total_cmp(&speeds[b.index()]));
    let lc = speeds[Family::Contact.index()];
    let contact_degenerate = Family::ALL
        .iter()
        .filter(|f| **f != Family::Contact)
        .any(|f| speeds_coincide(speeds[f.index()], lc));
    Eigenstructure { speeds, vectors, kinds, sorted, contact_degenerate }
}

/// Gradient of each eigenvalue with respect to the primitive variables.
#[must_use]
pub fn speed_gradient(w: &PrimitiveState, eos: &EosPair, family: Family) -> Vector5<f64> {
    match family {
        Family::Contact => {
            let m = w.mixture(eos);
            let (a1, a2) = (w.alpha1, 1.0 - w.alpha1);
            Vector5::new(
                w.rho1 * w.rho2 * m.w / (m.rho * m.rho),
                a1 * m.c2 * m.w / m.rho,
                -a2 * m.c1 * m.w / m.rho,
                m.c1,
                m.c2,
            )
        }
        Family::Minus(p) | Family::Plus(p) => {
            let s = family.direction().map_or(0.0, Direction::sign);
            let da = s * eos.get(p).sound_speed_slope(w.rho(p));
            match p {
                Phase::One => Vector5::new(0.0, da, 0.0, 1.0, 0.0),
                Phase::Two => Vector5::new(0.0, 0.0, da, 0.0, 1.0),
            }
        }
    }
}

/// `∇λ·R` per family, acoustic vectors in their unit-density scaling and the
/// contact vector unnormalised.
#[must_use]
pub fn field_characterization(w: &PrimitiveState, eos: &EosPair) -> [f64; 5] {
    Family::ALL.map(|f| {
        let r = match f {
            Family::Contact => contact_vector_raw(w, eos),
            Family::Minus(p) => acoustic_vector(w, eos, p, Direction::Minus),
            Family::Plus(p) => acoustic_vector(w, eos, p, Direction::Plus),
        };
        speed_gradient(w, eos, f).dot(&r)
    })
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ResonanceReport {
    /// Acoustic families whose speed equals the contact speed.
    pub coincident: Vec<Family>,
    /// Phases whose acoustic vectors span the contact vector.
    pub collapsed: Vec<Phase>,
    /// Both phases coincide at once; the contact vector vanishes.
    pub contact_vector_null: bool,
}

impl ResonanceReport {
    #[must_use]
    pub fn is_empty(&self) -> bool {
        self.coincident.is_empty() && self.collapsed.is_empty() && !self.contact_vector_null
    }
}

/// Smallest over largest singular value of the column set.
fn conditioning(cols: [Vector5<f64>; 3]) -> f64 {
    let m = SMatrix::<f64, 5, 3>::from_columns(&cols);
    let sv = m.svd(false, false).singular_values;
    let max = sv.max();
    if max == 0.0 {
        0.0
    } else {
        sv.min() / max
    }
}

#[must_use]
pub fn check_resonance(w: &PrimitiveState, eos: &EosPair) -> ResonanceReport {
    let es = eigenstructure(w, eos);
    let lc = es.speed(Family::Contact);
    let mut rep = ResonanceReport::default();
    for f in Family::ALL {
        if f != Family::Contact && speeds_coincide(es.speed(f), lc) {
            rep.coincident.push(f);
        }
    }
    let ct = contact_terms(w, eos);
    // Scale each ε by its own magnitude so the test is dimensionless.
    let phase_hit: [bool; 2] = Phase::BOTH.map(|p| {
        let i = p.index();
        let r = w.rho(p);
        let d = w.u_mix() - w.u(p);
        let a2 = eos.get(p).sound_speed_sq(r);
        ct.eps[i].abs() * r < COINCIDENCE_TOL * (d * d).max(a2)
    });
    rep.contact_vector_null = phase_hit[0] && phase_hit[1];
    let rc = ct.raw;
    let n = rc.norm();
    for p in Phase::BOTH {
        if rep.contact_vector_null {
            rep.collapsed.push(p);
            continue;
        }
        if n == 0.0 {
            continue;
        }
        let rm = acoustic_vector(w, eos, p, Direction::Minus).normalize();
        let rp = acoustic_vector(w, eos, p, Direction::Plus).normalize();
        if conditioning([rc / n, rm, rp]) < COINCIDENCE_TOL {
            rep.collapsed.push(p);
        }
    }
    rep
}
