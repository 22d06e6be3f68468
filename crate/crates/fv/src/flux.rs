//! Numerical fluxes for the conservative model.

use tpr_core::{ConservedState, EosPair, Phase, PrimitiveState};

/// Spectral radius `max(|u| , |u₁| + a₁, |u₂| + a₂)`; the contact speed lies
/// between the phase velocities, so it never wins but is kept for clarity.
#[must_use]
pub fn max_speed(w: &PrimitiveState, eos: &EosPair) -> f64 {
    let a1 = w.sound_speed(eos, Phase::One);
    let a2 = w.sound_speed(eos, Phase::Two);
    (w.u1.abs() + a1).max(w.u2.abs() + a2).max(w.u_mix().abs())
}

fn combine(a: [f64; 5], b: [f64; 5], f: impl Fn(f64, f64) -> f64) -> [f64; 5] {
    std::array::from_fn(|k| f(a[k], b[k]))
}

/// Local Lax-Friedrichs flux.
#[must_use]
pub fn rusanov_flux(left: &ConservedState, right: &ConservedState, eos: &EosPair) -> [f64; 5] {
    let s = max_speed(&left.decode_unchecked(), eos).max(max_speed(&right.decode_unchecked(), eos));
    let fl = left.physical_flux(eos);
    let fr = right.physical_flux(eos);
    std::array::from_fn(|k| 0.5 * (fl[k] + fr[k]) - 0.5 * s * (right.0[k] - left.0[k]))
}

/// FORCE flux: mean of the Lax-Friedrichs and Richtmyer fluxes. The
/// Richtmyer predictor may leave the admissible set for very strong jumps;
/// the flux is then NaN and the caller's positivity check reports it.
#[must_use]
pub fn force_flux(left: &ConservedState, right: &ConservedState, dx: f64, dt: f64, eos: &EosPair) -> [f64; 5] {
    let fl = left.physical_flux(eos);
    let fr = right.physical_flux(eos);
    let r = dx / dt;
    let lf = std::array::from_fn(|k| 0.5 * (fl[k] + fr[k]) - 0.5 * r * (right.0[k] - left.0[k]));
    let mid = ConservedState(std::array::from_fn(|k| 0.5 * (left.0[k] + right.0[k]) - 0.5 / r * (fr[k] - fl[k])));
    let lw = match mid.to_primitive() {
        Ok(_) => mid.physical_flux(eos),
        Err(_) => [f64::NAN; 5],
    };
    combine(lf, lw, |a, b| 0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tpr_core::BarotropicEos;

    fn ideal() -> EosPair {
        EosPair::new(BarotropicEos::unit_power_law(1.4), BarotropicEos::unit_power_law(2.0))
    }

    #[test]
    fn equal_states_give_the_physical_flux() {
        let eos = ideal();
        let u = PrimitiveState::new(0.3, 1.2, 0.8, 0.4, -0.1).to_conserved();
        let f = u.physical_flux(&eos);
        for g in [rusanov_flux(&u, &u, &eos), force_flux(&u, &u, 0.01, 0.001, &eos)] {
            for k in 0..5 {
                assert!((g[k] - f[k]).abs() <= 1e-14 * f[k].abs().max(1.0));
            }
        }
    }
}
