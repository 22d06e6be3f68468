//! Relations between the conservative model, the barotropic Baer-Nunziato
//! system and their common single-velocity single-pressure limit.
//!
//! The two source bases are
//! - conservative: `(ξ₁..ξ₅)` for `(α₁ρ, α₁ρ₁, ρ, ρu, w)`;
//! - Baer-Nunziato: `(ζ₁..ζ₅)` for `(α₁, α₁ρ₁, α₂ρ₂, α₁ρ₁u₁, α₂ρ₂u₂)`.
//!
//! With the interface closure of [`interface_closure`] the two systems are
//! equivalent for smooth flow and `ξ = B ζ`, `ζ = C ξ`.

use nalgebra::{Matrix5, Vector5};
use serde::Serialize;
use thiserror::Error;

use crate::eos::{EosPair, Phase};
use crate::state::PrimitiveState;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum ModelError {
    #[error("source vector is in the {found:?} basis, expected {expected:?}")]
    WrongBasis { expected: SourceBasis, found: SourceBasis },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SourceBasis {
    Conservative,
    BaerNunziato,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SourceVector {
    pub values: [f64; 5],
    pub basis: SourceBasis,
}

impl SourceVector {
    #[must_use]
    pub fn conservative(values: [f64; 5]) -> Self {
        Self { values, basis: SourceBasis::Conservative }
    }

    #[must_use]
    pub fn baer_nunziato(values: [f64; 5]) -> Self {
        Self { values, basis: SourceBasis::BaerNunziato }
    }

    /// Mass exchange and mixture momentum sources vanish, as in every
    /// relaxation source of the conservative model.
    #[must_use]
    pub fn conserves_mass_and_momentum(&self, tol: f64) -> bool {
        match self.basis {
            SourceBasis::Conservative => self.values[1..4].iter().all(|v| v.abs() <= tol),
            SourceBasis::BaerNunziato => {
                let v = &self.values;
                v[1].abs() <= tol && v[2].abs() <= tol && (v[3] + v[4]).abs() <= tol
            }
        }
    }

    fn expect(&self, basis: SourceBasis) -> Result<Vector5<f64>, ModelError> {
        if self.basis != basis {
            return Err(ModelError::WrongBasis { expected: basis, found: self.basis });
        }
        Ok(Vector5::from(self.values))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterfaceClosure {
    pub velocity: f64,
    pub pressure: f64,
}

/// Interface velocity `c₁u₁ + c₂u₂` and pressure `(α₂ρ₂p₁ + α₁ρ₁p₂)/ρ`.
#[must_use]
pub fn interface_closure(w: &PrimitiveState, eos: &EosPair) -> InterfaceClosure {
    let rho = w.rho_mix();
    let (m1, m2) = (w.alpha1 * w.rho1, (1.0 - w.alpha1) * w.rho2);
    let p1 = w.pressure(eos, Phase::One);
    let p2 = w.pressure(eos, Phase::Two);
    InterfaceClosure { velocity: w.u_mix(), pressure: (m2 * p1 + m1 * p2) / rho }
}

/// `B(W)`, taking Baer-Nunziato sources to conservative ones.
#[must_use]
pub fn bn_to_conservative_matrix(w: &PrimitiveState) -> Matrix5<f64> {
    let rho = w.rho_mix();
    let a1 = w.alpha1;
    let (m1, m2) = (a1 * w.rho1, (1.0 - a1) * w.rho2);
    #[rustfmt::skip]
    let b = Matrix5::new(
        rho, a1,           a1,          0.0,      0.0,
        0.0, 1.0,          0.0,         0.0,      0.0,
        0.0, 1.0,          1.0,         0.0,      0.0,
        0.0, 0.0,          0.0,         1.0,      1.0,
        0.0, -w.u1 / m1,   w.u2 / m2,   1.0 / m1, -1.0 / m2,
    );
    b
}

/// `C(W)`, the inverse of [`bn_to_conservative_matrix`].
#[must_use]
pub fn conservative_to_bn_matrix(w: &PrimitiveState) -> Matrix5<f64> {
    let rho = w.rho_mix();
    let a1 = w.alpha1;
    let c1 = w.c1();
    let c2 = 1.0 - c1;
    let k = c2 * w.u1 + c1 * w.u2;
    let m = c1 * c2 * rho;
    #[rustfmt::skip]
    let c = Matrix5::new(
        1.0 / rho, 0.0, -a1 / rho,     0.0, 0.0,
        0.0,       1.0, 0.0,           0.0, 0.0,
        0.0,       -1.0, 1.0,          0.0, 0.0,
        0.0,       k,   -c1 * w.u2,    c1,  m,
        0.0,       -k,  c1 * w.u2,     c2,  -m,
    );
    c
}

pub fn bn_to_conservative_sources(zeta: &SourceVector, w: &PrimitiveState) -> Result<SourceVector, ModelError> {
    let z = zeta.expect(SourceBasis::BaerNunziato)?;
    Ok(SourceVector::conservative((bn_to_conservative_matrix(w) * z).into()))
}

pub fn conservative_to_bn_sources(xi: &SourceVector, w: &PrimitiveState) -> Result<SourceVector, ModelError> {
    let x = xi.expect(SourceBasis::Conservative)?;
    Ok(SourceVector::baer_nunziato((conservative_to_bn_matrix(w) * x).into()))
}

/// Relaxation sources of the conservative model: pressure relaxation drives
/// `α₁` at rate `(p₁ − p₂)/θ₁`, friction decays `w` at rate `c₁c₂w/θ₂`.
/// An infinite relaxation time switches that source off.
#[must_use]
pub fn relaxation_sources(w: &PrimitiveState, eos: &EosPair, theta1: f64, theta2: f64) -> SourceVector {
    let rho = w.rho_mix();
    let c1 = w.c1();
    let dp = w.pressure(eos, Phase::One) - w.pressure(eos, Phase::Two);
    SourceVector::conservative([rho * dp / theta1, 0.0, 0.0, 0.0, -c1 * (1.0 - c1) * w.slip() / theta2])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KapilaCoefficients {
    /// Phase bulk moduli `ρₖaₖ²`.
    pub bulk_moduli: [f64; 2],
    /// Factor of `∂ₓu` in the volume fraction equation of the limit system.
    pub compaction: f64,
}

#[must_use]
pub fn kapila_coefficients(w: &PrimitiveState, eos: &EosPair) -> KapilaCoefficients {
    let k = Phase::BOTH.map(|p| w.rho(p) * eos.get(p).sound_speed_sq(w.rho(p)));
    let (a1, a2) = (w.alpha1, 1.0 - w.alpha1);
    let den = a1 * k[1] + a2 * k[0];
    debug_assert!(den > 0.0);
    KapilaCoefficients { bulk_moduli: k, compaction: a1 * a2 * (k[0] - k[1]) / den }
}

/// Distance of a snapshot from pressure and velocity equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KapilaDiagnostics {
    /// Largest `|p₁ − p₂| / max(|p₁|, |p₂|)`.
    pub pressure_max: f64,
    /// Cell average of the same quantity.
    pub pressure_mean: f64,
    /// Largest `|w| / max(1, |u|)`.
    pub slip_max: f64,
    pub slip_mean: f64,
}

impl KapilaDiagnostics {
    /// Both equilibria hold to `tol` everywhere.
    #[must_use]
    pub fn in_limit(&self, pressure_tol: f64, slip_tol: f64) -> bool {
        self.pressure_max <= pressure_tol && self.slip_max <= slip_tol
    }
}

#[must_use]
pub fn kapila_limit_diagnostics(cells: &[PrimitiveState], eos: &EosPair) -> KapilaDiagnostics {
    let mut d = KapilaDiagnostics { pressure_max: 0.0, pressure_mean: 0.0, slip_max: 0.0, slip_mean: 0.0 };
    if cells.is_empty() {
        return d;
    }
    for w in cells {
        let (p1, p2) = (w.pressure(eos, Phase::One), w.pressure(eos, Phase::Two));
        let scale = p1.abs().max(p2.abs());
        let dp = if scale > 0.0 { (p1 - p2).abs() / scale } else { 0.0 };
        let slip = w.slip().abs() / w.u_mix().abs().max(1.0);
        d.pressure_max = d.pressure_max.max(dp);
        d.slip_max = d.slip_max.max(slip);
        d.pressure_mean += dp;
        d.slip_mean += slip;
    }
    let n = cells.len() as f64;
    d.pressure_mean /= n;
    d.slip_mean /= n;
    d
}
