use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tpr_cli::commands::{self, SimulateOptions};
use tpr_cli::{presets, CliError, Problem};
use tpr_fv::Scheme;

#[derive(Parser)]
#[command(name = "tpr", version, about = "Exact and finite-volume solvers for barotropic two-phase Riemann problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Preset name (rp1..rp6) or path to a problem file.
    problem: String,
    /// Output directory; defaults to $TPR_OUTPUT_DIR, then ./tpr-out.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Number of cells; overrides --paper-scale.
    #[arg(long)]
    cells: Option<usize>,
    /// Use the problem's full-resolution cell count.
    #[arg(long = "paper-scale")]
    full_scale: bool,
    /// Pressure relaxation time.
    #[arg(long, default_value_t = f64::INFINITY)]
    theta1: f64,
    /// Velocity relaxation time.
    #[arg(long, default_value_t = f64::INFINITY)]
    theta2: f64,
    /// Clamp non-physical cells instead of stopping.
    #[arg(long)]
    floored: bool,
    /// Courant number; defaults to the problem's.
    #[arg(long)]
    cfl: Option<f64>,
    /// Final time; defaults to the problem's.
    #[arg(long)]
    t_end: Option<f64>,
}

impl RunArgs {
    fn options(&self, scheme: Scheme) -> SimulateOptions {
        SimulateOptions {
            scheme,
            cells: self.cells,
            full_scale: self.full_scale,
            theta1: self.theta1,
            theta2: self.theta2,
            floored: self.floored,
            cfl: self.cfl,
            t_end: self.t_end,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample the exact solution and check every wave.
    Exact {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
    },
    /// Check the exact solution without writing files.
    Validate { problem: String },
    /// Eigenvalues along the exact solution.
    Eigen {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
    },
    /// Run a finite-volume simulation.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// shtc | force | bn
        #[arg(long, alias = "model", default_value = "shtc")]
        scheme: Scheme,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run two models on the same grid and tabulate their differences.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "shtc")]
        first: Scheme,
        #[arg(long, default_value = "bn")]
        second: Scheme,
        #[command(flatten)]
        run: RunArgs,
    },
    /// List the bundled presets.
    Presets,
}

fn print_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn load(name: &str) -> Result<Problem, CliError> {
    let p = Problem::resolve(name)?;
    for line in commands::run_header(&p) {
        println!("{line}");
    }
    Ok(p)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Exact { common, samples } => {
            let p = load(&common.problem)?;
            let r = commands::cmd_exact(&p, samples, &commands::output_dir(common.out))?;
            for w in &r.waves {
                let host = w.host.as_deref().map_or(String::new(), |h| format!(" inside {h} fan"));
                println!("{:>4} {:<8} {:+.6e} .. {:+.6e}{host}", w.family, w.kind, w.head, w.tail);
            }
            println!("max jump residual {:.3e}", r.validation.max_jump_residual());
            print_files(&r.files);
        }
        Command::Validate { problem } => {
            let p = load(&problem)?;
            let r = commands::cmd_validate(&p)?;
            println!("valid: {} shocks, {} fans, max jump residual {:.3e}", r.shocks.len(), r.fans.len(), r.max_jump_residual());
        }
        Command::Eigen { common, samples } => {
            let p = load(&common.problem)?;
            print_files(&[commands::cmd_eigen(&p, samples, &commands::output_dir(common.out))?]);
        }
        Command::Simulate { common, scheme, run } => {
            let p = load(&common.problem)?;
            let r = commands::cmd_simulate(&p, &run.options(scheme), &commands::output_dir(common.out))?;
            println!("{} steps to t = {:.6e}, max step closure {:.3e}", r.steps, r.time, r.max_step_closure);
            println!("max |p1 - p2|/p {:.3e}, max |w| {:.3e}", r.kapila.pressure_max, r.kapila.slip_max);
            if r.floored_cells > 0 {
                println!("floored {} cell updates", r.floored_cells);
            }
            print_files(&r.files);
        }
        Command::Compare { common, first, second, run } => {
            let p = load(&common.problem)?;
            let r = commands::cmd_compare(&p, (first, second), &run.options(first), &commands::output_dir(common.out))?;
            println!("{:<9} {:>12} {:>12}", "field", "L1", "Linf");
            for d in &r.differences {
                println!("{:<9} {:>12.4e} {:>12.4e}", d.field, d.l1, d.linf);
            }
            println!("{}", r.verdict);
        }
        Command::Presets => {
            for name in presets::NAMES {
                println!("{name}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
