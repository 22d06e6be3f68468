//! Command implementations. Each writes its files into the given directory
//! and returns a summary the binary prints.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use tpr_core::exact::{validate_solution, ExactSolution, ValidationReport};
use tpr_core::models::{kapila_limit_diagnostics, KapilaDiagnostics};
use tpr_core::{Direction, Family, PrimitiveState};
use tpr_fv::output::{l1_distance, linf_distance, write_snapshot_csv, Field};
use tpr_fv::{run_simulation, Scheme, Simulation, SolverConfig};

use crate::{CliError, Problem, DESK_CELLS};

/// Output directory: explicit flag, else `TPR_OUTPUT_DIR`, else `tpr-out`.
#[must_use]
pub fn output_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("TPR_OUTPUT_DIR").map(PathBuf::from)).unwrap_or_else(|| PathBuf::from("tpr-out"))
}

fn create(dir: &Path, name: &str) -> Result<(BufWriter<File>, PathBuf), CliError> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    Ok((BufWriter::new(File::create(&path)?), path))
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<PathBuf, CliError> {
    let (mut w, path) = create(dir, name)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(w)?;
    Ok(path)
}

/// Header lines describing the run, including any assumed equation of state.
#[must_use]
pub fn run_header(p: &Problem) -> Vec<String> {
    let mut h = vec![format!("problem {}: domain [{}, {}], split at {}, t_end {}", p.name, p.x_min, p.x_max, p.x_split, p.t_end)];
    if let Some(note) = &p.eos_note {
        h.push(format!("equation of state: {note}"));
    }
    h
}

#[derive(Debug, Clone, Serialize)]
pub struct WaveSummary {
    pub side: Direction,
    pub family: String,
    pub kind: &'static str,
    pub head: f64,
    pub tail: f64,
    pub host: Option<String>,
}

#[must_use]
pub fn wave_summary(sol: &ExactSolution) -> Vec<WaveSummary> {
    let mut out = Vec::new();
    for side in [Direction::Minus, Direction::Plus] {
        for e in sol.elements(side) {
            let (lo, hi) = e.span();
            let (head, tail) = if side == Direction::Minus { (hi, lo) } else { (lo, hi) };
            let host = match e {
                tpr_core::exact::Element::Shock(s) => s.host.map(|h| h.label()),
                tpr_core::exact::Element::Fan(_) => None,
            };
            out.push(WaveSummary { side, family: e.family().label(), kind: e.kind(), head, tail, host });
        }
    }
    out.push(WaveSummary {
        side: Direction::Plus,
        family: Family::Contact.label(),
        kind: "contact",
        head: sol.contact_speed(),
        tail: sol.contact_speed(),
        host: None,
    });
    out
}

/// Similarity coordinates spanning all waves with a margin; two samples give the outer states.
#[must_use]
pub fn xi_grid(sol: &ExactSolution, samples: usize) -> Vec<f64> {
    let (lo, hi) = sol.speed_range();
    let pad = 0.1 * (hi - lo).max(1e-12 * lo.abs().max(hi.abs()).max(1.0));
    let (a, b) = (lo - pad, hi + pad);
    match samples {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        n => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactReport {
    pub files: Vec<PathBuf>,
    pub waves: Vec<WaveSummary>,
    pub validation: ValidationReport,
}

fn plot_script(dir: &Path, name: &str, csv: &Path, x: &str) -> Result<PathBuf, CliError> {
    let (mut w, path) = create(dir, name)?;
    let file = csv.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned());
    writeln!(w, "# gnuplot script; run from this directory")?;
    writeln!(w, "set datafile separator ','")?;
    writeln!(w, "set multiplot layout 2,3")?;
    for (col, label) in [(2, "alpha1"), (3, "rho1"), (4, "rho2"), (5, "u1"), (6, "u2"), (10, "p")] {
        writeln!(w, "set title '{label}'; plot '{file}' every ::1 using 1:{col} with lines notitle")?;
    }
    writeln!(w, "unset multiplot")?;
    writeln!(w, "# x axis: {x}")?;
    Ok(path)
}

pub fn cmd_exact(p: &Problem, samples: usize, dir: &Path) -> Result<ExactReport, CliError> {
    let sol = p.exact_solution()?;
    let validation = validate_solution(&sol);
    let (mut w, csv) = create(dir, &format!("{}_exact.csv", p.name))?;
    sol.write_csv(&mut w, &xi_grid(&sol, samples))?;
    w.flush()?;
    let waves = wave_summary(&sol);
    let files = vec![
        csv.clone(),
        write_json(dir, &format!("{}_waves.json", p.name), &waves)?,
        write_json(dir, &format!("{}_validation.json", p.name), &validation)?,
        plot_script(dir, &format!("{}_exact.gp", p.name), &csv, "xi = x/t")?,
    ];
    if let Some((family, reason)) = validation.first_failure() {
        return Err(CliError::Validation(format!("{family}: {reason}")));
    }
    Ok(ExactReport { files, waves, validation })
}

pub fn cmd_validate(p: &Problem) -> Result<ValidationReport, CliError> {
    let sol = p.exact_solution()?;
    let report = validate_solution(&sol);
    if let Some((family, reason)) = report.first_failure() {
        return Err(CliError::Validation(format!("{family}: {reason}")));
    }
    Ok(report)
}

/// Five eigenvalues along the similarity coordinate of the exact solution.
pub fn cmd_eigen(p: &Problem, samples: usize, dir: &Path) -> Result<PathBuf, CliError> {
    let sol = p.exact_solution()?;
    let (mut w, path) = create(dir, &format!("{}_eigen.csv", p.name))?;
    writeln!(w, "xi,lambda_1m,lambda_2m,lambda_c,lambda_1p,lambda_2p")?;
    for xi in xi_grid(&sol, samples) {
        let s = sol.sample(xi).map_err(|e| CliError::Validation(e.to_string()))?;
        let row: Vec<String> =
            std::iter::once(xi).chain(Family::ALL.map(|f| s.speed(&p.eos, f))).map(|v| format!("{v:.16e}")).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    w.flush()?;
    Ok(path)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulateOptions {
    pub scheme: Scheme,
    pub cells: Option<usize>,
    pub full_scale: bool,
    pub theta1: f64,
    pub theta2: f64,
    pub floored: bool,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
}

impl SimulateOptions {
    #[must_use]
    pub fn new(scheme: Scheme) -> Self {
        Self { scheme, cells: None, full_scale: false, theta1: f64::INFINITY, theta2: f64::INFINITY, floored: false, cfl: None, t_end: None }
    }

    #[must_use]
    pub fn cells_for(&self, p: &Problem) -> usize {
        self.cells.unwrap_or(if self.full_scale { p.full_cells } else { DESK_CELLS })
    }

    #[must_use]
    pub fn config(&self, p: &Problem) -> SolverConfig {
        let mut c = SolverConfig::new(self.scheme, self.cfl.unwrap_or(p.cfl), self.t_end.unwrap_or(p.t_end))
            .with_relaxation(self.theta1, self.theta2);
        if self.floored {
            c.positivity = tpr_fv::Positivity::Floored;
        }
        c
    }
}

pub fn simulate(p: &Problem, opts: &SimulateOptions) -> Result<Simulation, CliError> {
    let grid = p.grid(opts.cells_for(p))?;
    Ok(run_simulation(&p.riemann_data(), &grid, &opts.config(p), &p.eos)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct SimulateReport {
    pub files: Vec<PathBuf>,
    pub steps: usize,
    pub time: f64,
    pub max_step_closure: f64,
    pub kapila: KapilaDiagnostics,
    pub floored_cells: usize,
}

pub fn cmd_simulate(p: &Problem, opts: &SimulateOptions, dir: &Path) -> Result<SimulateReport, CliError> {
    let sim = simulate(p, opts)?;
    let tag = format!("{}_{}", p.name, opts.scheme.label());
    let (mut w, csv) = create(dir, &format!("{tag}.csv"))?;
    write_snapshot_csv(&mut w, &sim.grid, &sim.cells, &p.eos)?;
    w.flush()?;
    let files = vec![
        csv.clone(),
        write_json(dir, &format!("{tag}_ledger.json"), &sim.ledger.entries)?,
        plot_script(dir, &format!("{tag}.gp"), &csv, "x")?,
    ];
    Ok(SimulateReport {
        files,
        steps: sim.steps,
        time: sim.time,
        max_step_closure: sim.ledger.max_step_closure,
        kapila: kapila_limit_diagnostics(&sim.cells, &p.eos),
        floored_cells: sim.floored_cells,
    })
}

/// Exact solution sampled at the cell centres of a finished run.
pub fn exact_on_grid(p: &Problem, sol: &ExactSolution, sim: &Simulation) -> Result<Vec<PrimitiveState>, CliError> {
    sim.grid
        .centers()
        .into_iter()
        .map(|x| sol.sample_xt(x - p.x_split, sim.time).map_err(|e| CliError::Validation(e.to_string())))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FieldDifference {
    pub field: &'static str,
    pub l1: f64,
    pub linf: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub problem: String,
    pub cells: usize,
    pub models: (String, String),
    pub theta1: f64,
    pub theta2: f64,
    pub differences: Vec<FieldDifference>,
    /// L1(ρ) of the first model without relaxation against the exact solution, when one exists.
    pub reference_l1_rho: Option<f64>,
    pub kapila: (KapilaDiagnostics, KapilaDiagnostics),
    pub verdict: String,
}

/// Difference table between two runs on the same grid.
#[must_use]
pub fn differences(a: &Simulation, b: &Simulation, p: &Problem) -> Vec<FieldDifference> {
    Field::ALL
        .iter()
        .map(|&f| FieldDifference {
            field: f.name(),
            l1: l1_distance(&a.cells, &b.cells, &a.grid, f, &p.eos, |_| true),
            linf: linf_distance(&a.cells, &b.cells, f, &p.eos),
        })
        .collect()
}

pub fn cmd_compare(p: &Problem, models: (Scheme, Scheme), base: &SimulateOptions, dir: &Path) -> Result<CompareReport, CliError> {
    let run = |s: Scheme| simulate(p, &SimulateOptions { scheme: s, ..*base });
    let a = run(models.0)?;
    let b = run(models.1)?;
    if a.grid != b.grid {
        return Err(CliError::Config("runs are on different grids".into()));
    }
    // The relaxed runs are judged against the homogeneous discretisation error.
    let reference_l1_rho = match p.exact_solution() {
        Ok(sol) => {
            let homogeneous = SimulateOptions { scheme: models.0, theta1: f64::INFINITY, theta2: f64::INFINITY, ..*base };
            let r = if base.theta1.is_infinite() && base.theta2.is_infinite() { a.clone() } else { simulate(p, &homogeneous)? };
            let ex = exact_on_grid(p, &sol, &r)?;
            Some(l1_distance(&r.cells, &ex, &r.grid, Field::Rho, &p.eos, |_| true))
        }
        Err(_) => None,
    };
    let differences = differences(&a, &b, p);
    let d = differences.iter().find(|d| d.field == "rho").map_or(f64::NAN, |d| d.l1);
    let verdict = match reference_l1_rho {
        Some(r) if d < 3.0 * r => format!("agree: L1(rho) difference {d:.3e} < 3 x discretisation error {r:.3e}"),
        Some(r) if d > 10.0 * r => format!("disagree: L1(rho) difference {d:.3e} > 10 x discretisation error {r:.3e}"),
        Some(r) => format!("inconclusive: L1(rho) difference {d:.3e}, discretisation error {r:.3e}"),
        None => format!("L1(rho) difference {d:.3e}; no exact solution for a reference"),
    };
    let report = CompareReport {
        problem: p.name.clone(),
        cells: a.grid.n_cells(),
        models: (models.0.label().into(), models.1.label().into()),
        theta1: base.theta1,
        theta2: base.theta2,
        differences,
        reference_l1_rho,
        kapila: (kapila_limit_diagnostics(&a.cells, &p.eos), kapila_limit_diagnostics(&b.cells, &p.eos)),
        verdict,
    };
    write_json(dir, &format!("{}_compare.json", p.name), &report)?;
    Ok(report)
}
