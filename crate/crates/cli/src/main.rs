mod args;
mod config;
mod error;
mod figures;
mod output;
mod run;
mod validate;

use std::process::ExitCode;

use cavity_entanglement::InitialState;
use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, GridArgs, SolverArgs, SystemArgs};
use config::{GridConfig, Mode, RunConfig, SourceConfig};
use error::CliError;
use run::{run_jobs, Job};

fn source(system: &SystemArgs) -> SourceConfig {
    if system.free_space {
        SourceConfig::FreeSpace {
            omega0: system.omega0,
            g: system.g,
        }
    } else {
        SourceConfig::Cavity {
            omega0: system.omega0,
            g: system.g,
            radius: system.radius,
        }
    }
}

fn grid(args: &GridArgs) -> GridConfig {
    GridConfig {
        t_start: args.t_start,
        t_max: args.t_max,
        dt: args.dt,
    }
}

fn single(
    mode: Mode,
    system: &SystemArgs,
    solver: &SolverArgs,
    grid: Option<GridConfig>,
    state: Option<InitialState>,
    r_max: Option<usize>,
    output: &std::path::Path,
) -> Vec<Job> {
    vec![Job {
        label: None,
        config: RunConfig {
            mode,
            source: source(system),
            state,
            grid,
            truncation_eps: solver.eps,
            root_tol: solver.root_tol,
            r_max,
            output_path: output.to_path_buf(),
            figure_id: None,
        },
    }]
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let jobs = match &cli.command {
        Command::Spectrum(a) => single(Mode::Spectrum, &a.system, &a.solver, None, None, a.r_max, &a.output),
        Command::F00(a) => single(
            Mode::F00,
            &a.system,
            &a.solver,
            Some(grid(&a.grid)),
            None,
            a.r_max,
            &a.output,
        ),
        Command::Concurrence(a) => {
            let state = InitialState::new(a.xi, a.phi)?;
            single(
                Mode::Concurrence,
                &a.system,
                &a.solver,
                Some(grid(&a.grid)),
                Some(state),
                a.r_max,
                &a.output,
            )
        }
        Command::Figure(a) => figures::curves(a.id, &a.out_dir, a.dt, a.eps, a.root_tol)
            .into_iter()
            .map(|c| Job {
                label: Some(c.label),
                config: c.config,
            })
            .collect(),
        Command::Validate(a) => {
            let checks = validate::run_checks(a)?;
            let mut failed = 0;
            for check in &checks {
                let verdict = if check.pass { "PASS" } else { "FAIL" };
                println!("{verdict} {}: {}", check.name, check.detail);
                failed += usize::from(!check.pass);
            }
            if failed > 0 {
                return Err(CliError::Validation(failed));
            }
            return Ok(());
        }
    };
    for path in run_jobs(&jobs)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
