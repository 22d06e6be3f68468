//! Problem files: flat `key = value` text with `phase1.*`, `phase2.*`,
//! `grid.*`, `left`/`right`, `table.*`, `waves.*` and `pattern.*` keys.
//! A phase takes `scale`, `exponent`, `rho_ref`, `offset` and an optional
//! `mode` (isentropic or isothermal).

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use tpr_core::exact::{build_solution, first_admissible, ExactError, ExactSolution, PatternWave, WaveSpec};
use tpr_core::{BarotropicEos, EosPair, Family, Phase, PrimitiveState, Regime};
use tpr_fv::{Grid, RiemannData};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableState {
    pub label: String,
    pub state: PrimitiveState,
}

/// How an exact solution is obtained.
#[derive(Debug, Clone, PartialEq)]
pub enum Construction {
    /// Outward from a given contact state with prescribed waves.
    Inverse { contact_left: PrimitiveState, alpha1_right: f64, left: Vec<WaveSpec>, right: Vec<WaveSpec> },
    /// From Riemann data, trying wave patterns in order.
    Forward { candidates: Vec<(Vec<PatternWave>, Vec<PatternWave>)> },
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    pub name: String,
    pub eos: EosPair,
    /// Printed in run headers when the equation of state is an assumption.
    pub eos_note: Option<String>,
    /// Initial states; for an inverse construction, the ones it produces.
    pub left: PrimitiveState,
    pub right: PrimitiveState,
    pub x_min: f64,
    pub x_max: f64,
    pub x_split: f64,
    pub full_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub table: Vec<TableState>,
    pub construction: Construction,
}

/// Cell count used unless the caller asks for the published resolution.
pub const DESK_CELLS: usize = 2000;

fn bad(key: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Problem(format!("{key}: {why}"))
}

fn parse_lines(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| CliError::Problem(format!("line {}: expected key = value", n + 1)))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Problem(format!("line {}: duplicate key {}", n + 1, k.trim())));
        }
    }
    Ok(map)
}

struct Keys(BTreeMap<String, String>);

impl Keys {
    fn str(&self, key: &str) -> Result<&str, CliError> {
        self.0.get(key).map(String::as_str).ok_or_else(|| bad(key, "missing"))
    }
    fn num(&self, key: &str) -> Result<f64, CliError> {
        let v = self.str(key)?;
        v.parse().map_err(|_| bad(key, format!("not a number: {v:?}")))
    }
    fn count(&self, key: &str) -> Result<usize, CliError> {
        let v = self.str(key)?;
        v.parse().map_err(|_| bad(key, format!("not a cell count: {v:?}")))
    }
}

fn parse_state(key: &str, text: &str) -> Result<PrimitiveState, CliError> {
    let v: Vec<f64> = text
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad(key, format!("bad state {text:?}")))?;
    let arr: [f64; 5] = v.try_into().map_err(|_| bad(key, "a state has five components: alpha1 rho1 rho2 u1 u2"))?;
    let w = PrimitiveState::from_array(arr);
    w.validate().map_err(|e| bad(key, e))?;
    Ok(w)
}

pub fn parse_family(tok: &str) -> Result<Family, CliError> {
    let (phase, dir) = tok.split_at(tok.len().saturating_sub(1));
    let phase = match phase {
        "1" => Phase::One,
        "2" => Phase::Two,
        _ => return Err(CliError::Problem(format!("bad family {tok:?}"))),
    };
    match dir {
        "-" => Ok(Family::Minus(phase)),
        "+" => Ok(Family::Plus(phase)),
        _ => Err(CliError::Problem(format!("bad family {tok:?}"))),
    }
}

fn table_state<'a>(table: &'a [TableState], reference: &str) -> Option<&'a PrimitiveState> {
    let r = reference.strip_prefix("table:")?;
    match r.parse::<usize>() {
        Ok(i) => table.get(i).map(|t| &t.state),
        Err(_) => table.iter().find(|t| t.label == r).map(|t| &t.state),
    }
}

/// A number, or `table:<i>` meaning the family speed at that tabulated state.
fn speed_token(key: &str, tok: &str, family: Family, table: &[TableState], eos: &EosPair) -> Result<f64, CliError> {
    if let Some(w) = table_state(table, tok) {
        return Ok(w.speed(eos, family));
    }
    tok.parse().map_err(|_| bad(key, format!("bad speed {tok:?}")))
}

fn parse_waves(key: &str, text: &str, table: &[TableState], eos: &EosPair) -> Result<Vec<WaveSpec>, CliError> {
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let t: Vec<&str> = item.split_whitespace().collect();
        let spec = match t.as_slice() {
            ["fan", f, tail] => {
                let family = parse_family(f)?;
                WaveSpec::Fan { family, tail: speed_token(key, tail, family, table, eos)? }
            }
            ["shock", f, speed] => {
                let family = parse_family(f)?;
                WaveSpec::Shock { family, speed: speed.parse().map_err(|_| bad(key, format!("bad speed {speed:?}")))? }
            }
            ["shock-in-fan", h, s, speed, tail] => {
                let host = parse_family(h)?;
                WaveSpec::ShockInFan {
                    host,
                    shock: parse_family(s)?,
                    speed: speed.parse().map_err(|_| bad(key, format!("bad speed {speed:?}")))?,
                    tail: speed_token(key, tail, host, table, eos)?,
                }
            }
            _ => return Err(bad(key, format!("cannot read wave {item:?}"))),
        };
        out.push(spec);
    }
    Ok(out)
}

fn parse_pattern(key: &str, text: &str) -> Result<Vec<PatternWave>, CliError> {
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let t: Vec<&str> = item.split_whitespace().collect();
        out.push(match t.as_slice() {
            ["fan", f] => PatternWave::Fan(parse_family(f)?),
            ["shock", f] => PatternWave::Shock(parse_family(f)?),
            ["shock-in-fan", h, s] => PatternWave::ShockInFan { host: parse_family(h)?, shock: parse_family(s)? },
            _ => return Err(bad(key, format!("cannot read pattern wave {item:?}"))),
        });
    }
    Ok(out)
}

fn parse_eos(k: &Keys, prefix: &str) -> Result<BarotropicEos, CliError> {
    let g = |n: &str| k.num(&format!("{prefix}.{n}"));
    let mode_key = format!("{prefix}.mode");
    let regime = match k.0.get(&mode_key) {
        Some(m) => m.parse().map_err(|e| bad(&mode_key, e))?,
        None => Regime::Isentropic,
    };
    BarotropicEos::with_regime(g("scale")?, g("exponent")?, g("rho_ref")?, g("offset")?, regime).map_err(|e| bad(prefix, e))
}

impl Problem {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let k = Keys(parse_lines(text)?);
        let eos = EosPair::new(parse_eos(&k, "phase1")?, parse_eos(&k, "phase2")?);
        let mut table = Vec::new();
        for i in 0.. {
            let key = format!("table.{i}");
            let Some(v) = k.0.get(&key) else { break };
            let (label, state) = v.split_once(':').ok_or_else(|| bad(&key, "expected label: state"))?;
            table.push(TableState { label: label.trim().to_string(), state: parse_state(&key, state)? });
        }
        let (left, right) = match (k.0.get("left"), k.0.get("right")) {
            (Some(l), Some(r)) => (parse_state("left", l)?, parse_state("right", r)?),
            _ => match (table.first(), table.last()) {
                (Some(l), Some(r)) => (l.state, r.state),
                _ => return Err(CliError::Problem("need left/right states or a table".into())),
            },
        };
        let construction = if let Some(cl) = k.0.get("waves.contact_left") {
            let contact_left = match table_state(&table, cl) {
                Some(w) => *w,
                None => parse_state("waves.contact_left", cl)?,
            };
            Construction::Inverse {
                contact_left,
                alpha1_right: k.num("waves.alpha1_right")?,
                left: parse_waves("waves.left", k.0.get("waves.left").map_or("", String::as_str), &table, &eos)?,
                right: parse_waves("waves.right", k.0.get("waves.right").map_or("", String::as_str), &table, &eos)?,
            }
        } else {
            let mut candidates = Vec::new();
            for i in 0.. {
                let (lk, rk) = (format!("pattern.{i}.left"), format!("pattern.{i}.right"));
                match (k.0.get(&lk), k.0.get(&rk)) {
                    (Some(l), Some(r)) => candidates.push((parse_pattern(&lk, l)?, parse_pattern(&rk, r)?)),
                    _ => break,
                }
            }
            if candidates.is_empty() { Construction::None } else { Construction::Forward { candidates } }
        };
        let p = Problem {
            name: k.str("name")?.to_string(),
            eos,
            eos_note: k.0.get("eos_note").cloned(),
            left,
            right,
            x_min: k.num("grid.x_min")?,
            x_max: k.num("grid.x_max")?,
            x_split: k.num("grid.x_split")?,
            full_cells: k.count("grid.full_cells")?,
            cfl: k.num("grid.cfl")?,
            t_end: k.num("grid.t_end")?,
            table,
            construction,
        };
        if !(p.x_min < p.x_split && p.x_split < p.x_max) {
            return Err(CliError::Problem(format!("split {} outside ({}, {})", p.x_split, p.x_min, p.x_max)));
        }
        let mut p = p;
        // An inverse construction fixes the outer states; tabulated ones carry rounding.
        if matches!(p.construction, Construction::Inverse { .. }) {
            let sol = p.exact_solution().map_err(|e| CliError::Problem(format!("wave construction: {e}")))?;
            (p.left, p.right) = sol.initial_data();
        }
        Ok(p)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// A preset name (case-insensitive) or a path to a problem file.
    pub fn resolve(name_or_path: &str) -> Result<Self, CliError> {
        match crate::presets::text(name_or_path) {
            Some(t) => Self::parse(t),
            None => Self::load(Path::new(name_or_path)),
        }
    }

    pub fn exact_solution(&self) -> Result<ExactSolution, ExactError> {
        match &self.construction {
            Construction::Inverse { contact_left, alpha1_right, left, right } => {
                build_solution(contact_left, *alpha1_right, left, right, &self.eos)
            }
            Construction::Forward { candidates } => first_admissible(&self.left, &self.right, candidates, &self.eos),
            Construction::None => Err(ExactError::Pattern("the problem defines no construction".into())),
        }
    }

    pub fn grid(&self, cells: usize) -> Result<Grid, tpr_fv::FvError> {
        Grid::new(self.x_min, self.x_max, cells)
    }

    #[must_use]
    pub fn riemann_data(&self) -> RiemannData {
        RiemannData { left: self.left, right: self.right, x_split: self.x_split }
    }
}
