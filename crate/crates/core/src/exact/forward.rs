//! Riemann data to solution for a prescribed wave pattern.
//!
//! The unknowns are the four phase quantities left of the contact plus one
//! parameter per wave (tail speed of a fan, speed of a shock); the equations
//! say that building outward reproduces the given outer states. Newton with
//! a finite-difference Jacobian, since every residual evaluation is itself a
//! chain of nonlinear solves.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{assemble, validate_solution, Element, ExactError, ExactSolution, WaveSpec};
use crate::eos::{EosPair, Phase};
use crate::roots;
use crate::state::{Direction, Family, PrimitiveState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PatternWave {
    Fan(Family),
    Shock(Family),
    ShockInFan { host: Family, shock: Family },
}

impl PatternWave {
    fn params(self) -> usize {
        match self {
            PatternWave::ShockInFan { .. } => 2,
            _ => 1,
        }
    }

    fn spec(self, p: &[f64]) -> WaveSpec {
        match self {
            PatternWave::Fan(family) => WaveSpec::Fan { family, tail: p[0] },
            PatternWave::Shock(family) => WaveSpec::Shock { family, speed: p[0] },
            PatternWave::ShockInFan { host, shock } => WaveSpec::ShockInFan { host, shock, speed: p[0], tail: p[1] },
        }
    }
}

const MAX_ITER: usize = 100;
const TOL: f64 = 1e-12;

struct Problem<'a> {
    left: PrimitiveState,
    right: PrimitiveState,
    lp: &'a [PatternWave],
    rp: &'a [PatternWave],
    eos: &'a EosPair,
    rho_scale: [f64; 2],
    u_scale: f64,
}

impl Problem<'_> {
    fn specs(&self, x: &DVector<f64>) -> (PrimitiveState, Vec<WaveSpec>, Vec<WaveSpec>) {
        let c = PrimitiveState::new(self.left.alpha1, x[0], x[1], x[2], x[3]);
        let mut k = 4;
        let mut take = |pat: &[PatternWave]| {
            pat.iter()
                .map(|w| {
                    let s = w.spec(&x.as_slice()[k..k + w.params()]);
                    k += w.params();
                    s
                })
                .collect::<Vec<_>>()
        };
        let l = take(self.lp);
        let r = take(self.rp);
        (c, l, r)
    }

    fn build(&self, x: &DVector<f64>) -> Result<ExactSolution, ExactError> {
        if x[0] <= 0.0 || x[1] <= 0.0 {
            return Err(ExactError::Pattern("non-positive centre density".into()));
        }
        let (c, l, r) = self.specs(x);
        assemble(&c, self.right.alpha1, &l, &r, self.eos)
    }

    fn residual(&self, x: &DVector<f64>) -> Option<DVector<f64>> {
        let sol = self.build(x).ok()?;
        let (l, r) = sol.initial_data();
        let mut v = DVector::zeros(8);
        for (off, (got, want)) in [(0, (l, self.left)), (4, (r, self.right))] {
            for p in Phase::BOTH {
                let i = p.index();
                v[off + i] = (got.rho(p) - want.rho(p)) / self.rho_scale[i];
                v[off + 2 + i] = (got.u(p) - want.u(p)) / self.u_scale;
            }
        }
        Some(v)
    }
}

/// Two-fan estimate of the phase densities at the contact, ignoring the
/// coupling, with both phases at the resulting mixture velocity: a large
/// slip guess tends to leave the contact solve without a root.
fn centre_guess(l: &PrimitiveState, r: &PrimitiveState, eos: &EosPair) -> [f64; 4] {
    let mut out = [0.0; 4];
    for p in Phase::BOTH {
        let e = eos.get(p);
        let jl = l.u(p) + e.riemann_integral(1.0, l.rho(p));
        let jr = r.u(p) - e.riemann_integral(1.0, r.rho(p));
        let target = 0.5 * (jl - jr);
        let rho_hint = (l.rho(p) * r.rho(p)).sqrt();
        let f = |x: f64| e.riemann_integral(1.0, x) - target;
        let rho = roots::expand_positive(f, rho_hint, f(rho_hint) < 0.0, 200)
            .and_then(|(a, b)| roots::brent(f, a, b, 1e-14 * rho_hint, 200))
            .unwrap_or(rho_hint * 0.5);
        out[p.index()] = rho;
        out[2 + p.index()] = 0.5 * (jl + jr);
    }
    let u = PrimitiveState::new(l.alpha1, out[0], out[1], out[2], out[3]).u_mix();
    out[2] = u;
    out[3] = u;
    out
}

fn param_guess(w: PatternWave, inner: &PrimitiveState, outer: &PrimitiveState, eos: &EosPair) -> Vec<f64> {
    match w {
        PatternWave::Fan(f) => vec![outer.speed(eos, f)],
        PatternWave::Shock(f) => vec![0.5 * (outer.speed(eos, f) + inner.speed(eos, f))],
        // The shock has to sit inside the host fan.
        PatternWave::ShockInFan { host, .. } => {
            let (head, tail) = (inner.speed(eos, host), outer.speed(eos, host));
            vec![0.5 * (head + tail), tail]
        }
    }
}

/// Solve the Riemann problem `(left, right)` assuming the given wave lists
/// (outward from the contact on each side). The result is not checked for
/// admissibility; see [`first_admissible`].
pub fn solve_fixed_pattern(
    left: &PrimitiveState,
    right: &PrimitiveState,
    left_pattern: &[PatternWave],
    right_pattern: &[PatternWave],
    eos: &EosPair,
) -> Result<ExactSolution, ExactError> {
    for (pat, side) in [(left_pattern, Direction::Minus), (right_pattern, Direction::Plus)] {
        for w in pat {
            let fams = match *w {
                PatternWave::Fan(f) | PatternWave::Shock(f) => vec![f],
                PatternWave::ShockInFan { host, shock } => vec![host, shock],
            };
            if let Some(&f) = fams.iter().find(|f| f.direction() != Some(side)) {
                return Err(ExactError::WrongSide { family: f, side });
            }
        }
    }
    let nparams: usize = left_pattern.iter().chain(right_pattern).map(|w| w.params()).sum();
    if nparams != 4 {
        return Err(ExactError::Pattern(format!("pattern has {nparams} wave parameters, four are needed")));
    }
    let a = |w: &PrimitiveState, p: Phase| eos.get(p).sound_speed(w.rho(p));
    let u_scale = [left, right]
        .iter()
        .flat_map(|w| Phase::BOTH.map(|p| a(w, p) + w.u(p).abs()))
        .fold(0.0, f64::max);
    let prob = Problem {
        left: *left,
        right: *right,
        lp: left_pattern,
        rp: right_pattern,
        eos,
        rho_scale: Phase::BOTH.map(|p| left.rho(p).max(right.rho(p))),
        u_scale,
    };
    let x0 = match warm_start(left, right, left_pattern, right_pattern, eos) {
        Some(x) => x,
        None => cold_start(left, right, left_pattern, right_pattern, eos),
    };
    let x = newton(&prob, x0)?;
    prob.build(&x)
}

fn cold_start(
    left: &PrimitiveState,
    right: &PrimitiveState,
    left_pattern: &[PatternWave],
    right_pattern: &[PatternWave],
    eos: &EosPair,
) -> DVector<f64> {
    let c = centre_guess(left, right, eos);
    let centre = PrimitiveState::new(left.alpha1, c[0], c[1], c[2], c[3]);
    let mut x0 = c.to_vec();
    for w in left_pattern {
        x0.extend(param_guess(*w, &centre, left, eos));
    }
    for w in right_pattern {
        x0.extend(param_guess(*w, &centre, right, eos));
    }
    DVector::from_vec(x0)
}

/// A shock inside a fan is started from the solution in which the shock
/// sits just outside the fan instead; the two share their unknowns.
fn warm_start(
    left: &PrimitiveState,
    right: &PrimitiveState,
    left_pattern: &[PatternWave],
    right_pattern: &[PatternWave],
    eos: &EosPair,
) -> Option<DVector<f64>> {
    let nested = |w: &PatternWave| matches!(w, PatternWave::ShockInFan { .. });
    if !left_pattern.iter().chain(right_pattern).any(nested) {
        return None;
    }
    let split = |pat: &[PatternWave]| -> Vec<PatternWave> {
        pat.iter()
            .flat_map(|w| match *w {
                PatternWave::ShockInFan { host, shock } => vec![PatternWave::Fan(host), PatternWave::Shock(shock)],
                other => vec![other],
            })
            .collect()
    };
    let (ls, rs) = (split(left_pattern), split(right_pattern));
    let sol = solve_fixed_pattern(left, right, &ls, &rs, eos).ok()?;
    let mut x = vec![sol.contact_left.rho1, sol.contact_left.rho2, sol.contact_left.u1, sol.contact_left.u2];
    for (pat, elements) in [(left_pattern, &sol.left), (right_pattern, &sol.right)] {
        let mut it = elements.iter();
        for w in pat {
            match w {
                PatternWave::ShockInFan { .. } => {
                    let (Some(Element::Fan(f)), Some(Element::Shock(s))) = (it.next(), it.next()) else { return None };
                    x.push(s.speed);
                    x.push(f.outer_speed);
                }
                PatternWave::Fan(_) => {
                    let Some(Element::Fan(f)) = it.next() else { return None };
                    x.push(f.outer_speed);
                }
                PatternWave::Shock(_) => {
                    let Some(Element::Shock(s)) = it.next() else { return None };
                    x.push(s.speed);
                }
            }
        }
    }
    Some(DVector::from_vec(x))
}

fn newton(prob: &Problem<'_>, mut x: DVector<f64>) -> Result<DVector<f64>, ExactError> {
    let mut f = match prob.residual(&x) {
        Some(f) => f,
        None => {
            let why = prob.build(&x).err().map(|e| e.to_string()).unwrap_or_default();
            return Err(ExactError::Pattern(format!("initial guess cannot be built: {why}")));
        }
    };
    let mut norm = f.amax();
    for _ in 0..MAX_ITER {
        if norm < TOL {
            break;
        }
        let mut jac = DMatrix::zeros(8, 8);
        for j in 0..8 {
            let h = 1e-7 * x[j].abs().max(if j < 2 { prob.rho_scale[j] } else { prob.u_scale });
            let mut xp = x.clone();
            xp[j] += h;
            let mut xm = x.clone();
            xm[j] -= h;
            let col = match (prob.residual(&xp), prob.residual(&xm)) {
                (Some(fp), Some(fm)) => (fp - fm) / (2.0 * h),
                (Some(fp), None) => (fp - &f) / h,
                (None, Some(fm)) => (&f - fm) / h,
                (None, None) => return Err(ExactError::Pattern("Jacobian column cannot be evaluated".into())),
            };
            jac.set_column(j, &col);
        }
        let step = jac.lu().solve(&f).ok_or_else(|| ExactError::Pattern("singular Jacobian".into()))?;
        let mut t = 1.0;
        loop {
            let trial = &x - &step * t;
            if let Some(ft) = prob.residual(&trial) {
                let nt = ft.amax();
                if nt < norm {
                    x = trial;
                    f = ft;
                    norm = nt;
                    break;
                }
            }
            t *= 0.5;
            if t < 1e-8 {
                return Err(ExactError::Pattern(format!("line search stalled at residual {norm:e}")));
            }
        }
    }
    if norm >= 1e-10 {
        return Err(ExactError::Pattern(format!("no convergence (residual {norm:e})")));
    }
    Ok(x)
}

/// First pattern whose solution converges and passes validation.
pub fn first_admissible(
    left: &PrimitiveState,
    right: &PrimitiveState,
    candidates: &[(Vec<PatternWave>, Vec<PatternWave>)],
    eos: &EosPair,
) -> Result<ExactSolution, ExactError> {
    let mut reasons = Vec::new();
    for (lp, rp) in candidates {
        match solve_fixed_pattern(left, right, lp, rp, eos) {
            Ok(sol) => match validate_solution(&sol).first_failure() {
                None => return Ok(sol),
                Some((fam, why)) => reasons.push(format!("{lp:?} | {rp:?}: {fam}: {why}")),
            },
            Err(e) => reasons.push(format!("{lp:?} | {rp:?}: {e}")),
        }
    }
    Err(ExactError::Pattern(reasons.join("; ")))
}
