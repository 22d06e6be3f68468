use serde::Serialize;

use crate::FvError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Conservative model, MUSCL-Hancock with the Rusanov flux.
    MusclRusanov,
    /// Conservative model, first-order Godunov update with the FORCE flux.
    ForceGodunov,
    /// Baer-Nunziato form, path-conservative MUSCL-Hancock.
    MusclPathConsBn,
}

impl Scheme {
    #[must_use]
    pub fn label(self) -> &'static str {
        match self {
            Scheme::MusclRusanov => "muscl-rusanov",
            Scheme::ForceGodunov => "force-godunov",
            Scheme::MusclPathConsBn => "muscl-pathcons-bn",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = FvError;
    fn from_str(s: &str) -> Result<Self, FvError> {
        match s {
            "muscl-rusanov" | "shtc" => Ok(Scheme::MusclRusanov),
            "force-godunov" | "force" => Ok(Scheme::ForceGodunov),
            "muscl-pathcons-bn" | "bn" => Ok(Scheme::MusclPathConsBn),
            _ => Err(FvError::Config(format!("unknown scheme {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Limiter {
    Minmod,
    VanLeer,
    Barth,
    Superbee,
}

impl std::str::FromStr for Limiter {
    type Err = FvError;
    fn from_str(s: &str) -> Result<Self, FvError> {
        match s {
            "minmod" => Ok(Limiter::Minmod),
            "vanleer" | "van-leer" => Ok(Limiter::VanLeer),
            "barth" => Ok(Limiter::Barth),
            "superbee" => Ok(Limiter::Superbee),
            _ => Err(FvError::Config(format!("unknown limiter {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Splitting {
    /// Half relaxation, full hyperbolic step, half relaxation.
    Strang,
    /// Hyperbolic step, then a full relaxation step.
    Godunov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Positivity {
    /// Any invalid cell aborts the run.
    Strict,
    /// Invalid cells are clamped back into the admissible set and counted.
    Floored,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    pub cfl: f64,
    pub t_end: f64,
    pub scheme: Scheme,
    pub limiter: Limiter,
    /// Pressure relaxation time; infinite switches it off.
    pub theta1: f64,
    /// Velocity relaxation time; infinite switches it off.
    pub theta2: f64,
    pub splitting: Splitting,
    pub positivity: Positivity,
}

impl SolverConfig {
    /// Homogeneous run with the default limiter and strict positivity.
    #[must_use]
    pub fn new(scheme: Scheme, cfl: f64, t_end: f64) -> Self {
        Self {
            cfl,
            t_end,
            scheme,
            limiter: Limiter::Minmod,
            theta1: f64::INFINITY,
            theta2: f64::INFINITY,
            splitting: Splitting::Strang,
            positivity: Positivity::Strict,
        }
    }

    #[must_use]
    pub fn with_relaxation(mut self, theta1: f64, theta2: f64) -> Self {
        self.theta1 = theta1;
        self.theta2 = theta2;
        self
    }

    #[must_use]
    pub fn relaxing(&self) -> bool {
        self.theta1.is_finite() || self.theta2.is_finite()
    }

    pub fn validate(&self) -> Result<(), FvError> {
        if !(self.cfl > 0.0 && self.cfl <= 0.5) {
            return Err(FvError::Config(format!("cfl {} outside (0, 0.5]", self.cfl)));
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(FvError::Config(format!("t_end {} must be finite and non-negative", self.t_end)));
        }
        for (name, t) in [("theta1", self.theta1), ("theta2", self.theta2)] {
            if !(t > 0.0) {
                return Err(FvError::Config(format!("{name} = {t} must be positive (infinite = off)")));
            }
        }
        Ok(())
    }
}
