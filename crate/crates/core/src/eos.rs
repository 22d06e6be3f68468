//! Power-law barotropic equations of state, `p(ρ) = A (ρ/ρ_ref)^γ + B`.
//!
//! Both thermodynamic regimes share the same numeric paths: the potential
//! `Ψ` satisfies `dΨ/dρ = a²/ρ` whether it is read as an enthalpy or as a
//! Gibbs energy. Its additive constant is zero.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EosError {
    #[error("density must be positive, got {0}")]
    NonPositiveDensity(f64),
    #[error("invalid equation of state: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    #[default]
    Isentropic,
    Isothermal,
}

impl std::str::FromStr for Regime {
    type Err = EosError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "isentropic" => Ok(Regime::Isentropic),
            "isothermal" => Ok(Regime::Isothermal),
            other => Err(EosError::Invalid(format!("unknown regime `{other}`"))),
        }
    }
}

/// Phase pressure law. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarotropicEos {
    scale: f64,
    exponent: f64,
    rho_ref: f64,
    offset: f64,
    regime: Regime,
    // a² = k ρ^(γ-1)
    k: f64,
}

impl BarotropicEos {
    pub fn new(scale: f64, exponent: f64, rho_ref: f64, offset: f64) -> Result<Self, EosError> {
        Self::with_regime(scale, exponent, rho_ref, offset, Regime::Isentropic)
    }

    pub fn with_regime(
        scale: f64,
        exponent: f64,
        rho_ref: f64,
        offset: f64,
        regime: Regime,
    ) -> Result<Self, EosError> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(EosError::Invalid(format!("pressure scale must be positive, got {scale}")));
        }
        if !(exponent.is_finite() && exponent >= 1.0) {
            return Err(EosError::Invalid(format!("exponent must be >= 1, got {exponent}")));
        }
        if !(rho_ref.is_finite() && rho_ref > 0.0) {
            return Err(EosError::Invalid(format!("reference density must be positive, got {rho_ref}")));
        }
        if !offset.is_finite() {
            return Err(EosError::Invalid("pressure offset must be finite".into()));
        }
        let k = scale * exponent / rho_ref.powf(exponent);
        Ok(Self { scale, exponent, rho_ref, offset, regime, k })
    }

    /// Ideal-gas-like law `p = ρ^γ`.
    pub fn unit_power_law(exponent: f64) -> Self {
        Self::new(1.0, exponent, 1.0, 0.0).expect("valid exponent")
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }
    pub fn exponent(&self) -> f64 {
        self.exponent
    }
    pub fn rho_ref(&self) -> f64 {
        self.rho_ref
    }
    pub fn offset(&self) -> f64 {
        self.offset
    }
    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Same law with a different pressure offset.
    pub fn with_offset(&self, offset: f64) -> Self {
        Self { offset, ..*self }
    }

    fn is_log(&self) -> bool {
        self.exponent == 1.0
    }

    pub fn check_density(rho: f64) -> Result<(), EosError> {
        if rho > 0.0 && rho.is_finite() {
            Ok(())
        } else {
            Err(EosError::NonPositiveDensity(rho))
        }
    }

    #[must_use]
    pub fn pressure(&self, rho: f64) -> f64 {
        self.scale * (rho / self.rho_ref).powf(self.exponent) + self.offset
    }

    pub fn try_pressure(&self, rho: f64) -> Result<f64, EosError> {
        Self::check_density(rho)?;
        Ok(self.pressure(rho))
    }

    #[must_use]
    pub fn sound_speed_sq(&self, rho: f64) -> f64 {
        if self.is_log() {
            self.k
        } else {
            self.k * rho.powf(self.exponent - 1.0)
        }
    }

    #[must_use]
    pub fn sound_speed(&self, rho: f64) -> f64 {
        self.sound_speed_sq(rho).sqrt()
    }

    pub fn try_sound_speed(&self, rho: f64) -> Result<f64, EosError> {
        Self::check_density(rho)?;
        let a2 = self.sound_speed_sq(rho);
        if a2 > 0.0 && a2.is_finite() {
            Ok(a2.sqrt())
        } else {
            Err(EosError::Invalid(format!("dp/drho = {a2} at rho = {rho}")))
        }
    }

    /// `da/dρ`.
    #[must_use]
    pub fn sound_speed_slope(&self, rho: f64) -> f64 {
        0.5 * (self.exponent - 1.0) * self.sound_speed(rho) / rho
    }

    /// Specific potential with `dΨ/dρ = a²/ρ` and zero additive constant.
    #[must_use]
    pub fn psi(&self, rho: f64) -> f64 {
        if self.is_log() {
            self.k * rho.ln()
        } else {
            self.k / (self.exponent - 1.0) * rho.powf(self.exponent - 1.0)
        }
    }

    pub fn try_psi(&self, rho: f64) -> Result<f64, EosError> {
        Self::check_density(rho)?;
        Ok(self.psi(rho))
    }

    /// `1 + (ρ/a) da/dρ`, constant for a power law.
    #[must_use]
    pub fn fundamental_derivative(&self, _rho: f64) -> f64 {
        0.5 * (self.exponent + 1.0)
    }

    /// `∫ a(ρ)/ρ dρ` from `rho_from` to `rho_to`.
    #[must_use]
    pub fn riemann_integral(&self, rho_from: f64, rho_to: f64) -> f64 {
        if self.is_log() {
            self.k.sqrt() * (rho_to / rho_from).ln()
        } else {
            2.0 * (self.sound_speed(rho_to) - self.sound_speed(rho_from)) / (self.exponent - 1.0)
        }
    }

    pub fn try_riemann_integral(&self, rho_from: f64, rho_to: f64) -> Result<f64, EosError> {
        Self::check_density(rho_from)?;
        Self::check_density(rho_to)?;
        Ok(self.riemann_integral(rho_from, rho_to))
    }

    /// Density at which the Lagrangian wave speed `ρ a(ρ)` equals `flux`.
    ///
    /// `ρ a` is strictly increasing for a power law, so the root is unique.
    #[must_use]
    pub fn sonic_density(&self, flux: f64) -> f64 {
        let q = flux.abs();
        (q / self.k.sqrt()).powf(2.0 / (self.exponent + 1.0))
    }

    /// Bulk modulus `ρ a²`.
    #[must_use]
    pub fn bulk_modulus(&self, rho: f64) -> f64 {
        rho * self.sound_speed_sq(rho)
    }

    /// Density with pressure `p`, if any.
    pub fn density_at_pressure(&self, p: f64) -> Option<f64> {
        let r = (p - self.offset) / self.scale;
        (r > 0.0).then(|| self.rho_ref * r.powf(1.0 / self.exponent))
    }
}

/// Which phase a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Phase {
    One,
    Two,
}

impl Phase {
    pub const BOTH: [Phase; 2] = [Phase::One, Phase::Two];

    #[must_use]
    pub fn other(self) -> Phase {
        match self {
            Phase::One => Phase::Two,
            Phase::Two => Phase::One,
        }
    }

    #[must_use]
    pub fn index(self) -> usize {
        match self {
            Phase::One => 0,
            Phase::Two => 1,
        }
    }

    #[must_use]
    pub fn number(self) -> u8 {
        self.index() as u8 + 1
    }
}

/// The two phase laws of a mixture.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EosPair(pub [BarotropicEos; 2]);

impl EosPair {
    pub fn new(phase1: BarotropicEos, phase2: BarotropicEos) -> Self {
        Self([phase1, phase2])
    }

    #[must_use]
    pub fn get(&self, phase: Phase) -> &BarotropicEos {
        &self.0[phase.index()]
    }

    pub fn phase1(&self) -> &BarotropicEos {
        &self.0[0]
    }

    pub fn phase2(&self) -> &BarotropicEos {
        &self.0[1]
    }

    /// Same laws with the two phases exchanged.
    pub fn swapped(&self) -> Self {
        Self([self.0[1], self.0[0]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_laws_at_unit_density() {
        assert_eq!(BarotropicEos::unit_power_law(1.4).pressure(1.0), 1.0);
        assert_eq!(BarotropicEos::unit_power_law(2.0).pressure(1.0), 1.0);
        assert_relative_eq!(BarotropicEos::unit_power_law(2.0).sound_speed(1.0), 2f64.sqrt());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(BarotropicEos::new(-1.0, 1.4, 1.0, 0.0).is_err());
        assert!(BarotropicEos::new(1.0, 0.5, 1.0, 0.0).is_err());
        assert!(BarotropicEos::new(1.0, 1.4, 0.0, 0.0).is_err());
        let e = BarotropicEos::unit_power_law(1.4);
        assert_eq!(e.try_pressure(0.0), Err(EosError::NonPositiveDensity(0.0)));
        assert!(e.try_sound_speed(-1.0).is_err());
    }

    #[test]
    fn gamma_one_is_isothermal_gas() {
        let e = BarotropicEos::with_regime(2.0, 1.0, 1.0, 0.0, Regime::Isothermal).unwrap();
        assert_relative_eq!(e.psi(3.0) - e.psi(1.0), 2.0 * 3f64.ln());
        assert_relative_eq!(e.fundamental_derivative(1.0), 1.0);
        assert_relative_eq!(e.riemann_integral(1.0, 3.0), 2f64.sqrt() * 3f64.ln());
    }

    #[test]
    fn sonic_density_inverts_lagrangian_speed() {
        let e = BarotropicEos::new(8.5e8, 2.8, 1e3, 8.4999e8).unwrap();
        let rho = 1234.5;
        let q = rho * e.sound_speed(rho);
        assert_relative_eq!(e.sonic_density(-q), rho, max_relative = 1e-13);
    }

    #[test]
    fn pressure_inverse() {
        let e = BarotropicEos::new(1e5, 1.4, 1.0, 0.0).unwrap();
        assert_relative_eq!(e.density_at_pressure(e.pressure(160.0)).unwrap(), 160.0, max_relative = 1e-13);
        assert!(e.density_at_pressure(-1.0).is_none());
    }
}
