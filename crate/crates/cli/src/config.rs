use std::fmt::Write as _;
use std::path::PathBuf;

use cavity_entanglement::{
    atom_amplitudes, concurrence, AmplitudeSource, CavityParams, FreeSpace, InitialState, ModeSpectrum,
    QuadratureConfig, SpectrumConfig, TimeGrid,
};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::CliError;
use crate::figures::FigureId;
use crate::output::{Cell, Table};

/// Largest truncation tolerance accepted on the command line.
pub const MAX_TRUNCATION_EPS: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Spectrum,
    F00,
    Concurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SourceConfig {
    Cavity { omega0: f64, g: f64, radius: f64 },
    FreeSpace { omega0: f64, g: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridConfig {
    pub t_start: f64,
    pub t_max: f64,
    pub dt: f64,
}

impl GridConfig {
    pub fn grid(&self) -> Result<TimeGrid, CliError> {
        Ok(TimeGrid::inclusive(self.t_start, self.t_max, self.dt)?)
    }
}

/// Everything needed to produce one output file.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub source: SourceConfig,
    pub state: Option<InitialState>,
    pub grid: Option<GridConfig>,
    pub truncation_eps: f64,
    pub root_tol: f64,
    pub r_max: Option<usize>,
    pub output_path: PathBuf,
    pub figure_id: Option<FigureId>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let eps = self.truncation_eps;
        if !(eps > 0.0 && eps <= MAX_TRUNCATION_EPS) {
            return Err(CliError::Config(format!(
                "truncation eps must lie in (0, {MAX_TRUNCATION_EPS}], got {eps}"
            )));
        }
        if !(self.root_tol > 0.0 && self.root_tol < 1e-3) {
            return Err(CliError::Config(format!(
                "root tolerance must lie in (0, 1e-3), got {}",
                self.root_tol
            )));
        }
        match self.source {
            SourceConfig::Cavity { omega0, g, radius } => {
                CavityParams::new(omega0, g, radius)?;
            }
            SourceConfig::FreeSpace { omega0, g } => {
                FreeSpace::new(omega0, g)?;
                if self.mode == Mode::Spectrum {
                    return Err(CliError::Config("free space has a continuous spectrum".into()));
                }
            }
        }
        if let Some(grid) = &self.grid {
            if !(grid.t_max > 0.0 && grid.t_max.is_finite()) {
                return Err(CliError::Config(format!("t_max must be positive, got {}", grid.t_max)));
            }
            if !(grid.dt > 0.0 && grid.dt.is_finite()) {
                return Err(CliError::Config(format!("dt must be positive, got {}", grid.dt)));
            }
            if !(grid.t_start >= 0.0 && grid.t_start < grid.t_max) {
                return Err(CliError::Config(format!(
                    "t_start must lie in [0, t_max), got {}",
                    grid.t_start
                )));
            }
        } else if self.mode != Mode::Spectrum {
            return Err(CliError::Config("a time grid is required".into()));
        }
        if self.mode == Mode::Concurrence && self.state.is_none() {
            return Err(CliError::Config("an initial state is required".into()));
        }
        Ok(())
    }

    pub fn spectrum_config(&self) -> SpectrumConfig {
        SpectrumConfig {
            truncation_eps: self.truncation_eps,
            root_tol: self.root_tol,
            ..SpectrumConfig::default()
        }
    }

    /// Equivalent command line, with every value printed in round-trip form.
    pub fn command_line(&self) -> String {
        let mut cmd = String::from("cavent");
        let sub = match self.mode {
            Mode::Spectrum => "spectrum",
            Mode::F00 => "f00",
            Mode::Concurrence => "concurrence",
        };
        write!(cmd, " {sub}").unwrap();
        match self.source {
            SourceConfig::Cavity { omega0, g, radius } => {
                write!(cmd, " --omega0 {omega0:?} --g {g:?} --radius {radius:?}").unwrap()
            }
            SourceConfig::FreeSpace { omega0, g } => {
                write!(cmd, " --omega0 {omega0:?} --g {g:?} --free-space").unwrap()
            }
        }
        if let Some(state) = &self.state {
            write!(cmd, " --xi {:?} --phi {:?}", state.xi, state.phi).unwrap();
        }
        if let Some(grid) = &self.grid {
            write!(
                cmd,
                " --t-start {:?} --t-max {:?} --dt {:?}",
                grid.t_start, grid.t_max, grid.dt
            )
            .unwrap();
        }
        if let Some(r_max) = self.r_max {
            write!(cmd, " --r-max {r_max}").unwrap();
        } else if matches!(self.source, SourceConfig::Cavity { .. }) {
            write!(cmd, " --eps {:?}", self.truncation_eps).unwrap();
        }
        if matches!(self.source, SourceConfig::Cavity { .. }) {
            write!(cmd, " --root-tol {:?}", self.root_tol).unwrap();
        }
        write!(cmd, " --output {}", self.output_path.display()).unwrap();
        cmd
    }
}

/// A constructed amplitude source.
pub enum Built {
    Cavity(ModeSpectrum),
    Free(FreeSpace),
}

/// Facts about a built source that go into the sidecar.
#[derive(Debug, Clone, Serialize)]
pub struct SourceSummary {
    pub modes: Option<usize>,
    pub weight_sum: Option<f64>,
    pub tail_mass: Option<f64>,
    pub quadrature: Option<QuadratureConfig>,
}

impl Built {
    pub fn new(cfg: &RunConfig) -> Result<Self, CliError> {
        Ok(match cfg.source {
            SourceConfig::Cavity { omega0, g, radius } => {
                let params = CavityParams::new(omega0, g, radius)?;
                let spectrum = match cfg.r_max {
                    Some(r_max) => ModeSpectrum::with_r_max(params, r_max, cfg.root_tol)?,
                    None => ModeSpectrum::build(params, &cfg.spectrum_config())?,
                };
                log::info!(
                    "{} normal modes, tail mass {:.3e}",
                    spectrum.len(),
                    spectrum.tail_mass()
                );
                Built::Cavity(spectrum)
            }
            SourceConfig::FreeSpace { omega0, g } => Built::Free(FreeSpace::new(omega0, g)?),
        })
    }

    pub fn source(&self) -> &dyn AmplitudeSource {
        match self {
            Built::Cavity(s) => s,
            Built::Free(f) => f,
        }
    }

    pub fn summary(&self) -> SourceSummary {
        match self {
            Built::Cavity(s) => SourceSummary {
                modes: Some(s.len()),
                weight_sum: Some(s.weight_sum()),
                tail_mass: Some(s.tail_mass()),
                quadrature: None,
            },
            Built::Free(f) => SourceSummary {
                modes: None,
                weight_sum: None,
                tail_mass: None,
                quadrature: Some(f.quadrature),
            },
        }
    }

    /// Bound on `|f00|` error at times up to `t_end`: the missing weight plus
    /// the phase drift `t·(δΩ + ε_mach Ω)` summed over the retained modes.
    pub fn f00_error_bound(&self, t_end: f64, root_tol: f64) -> f64 {
        match self {
            Built::Cavity(s) => {
                let moment: f64 = s.frequencies().iter().zip(s.weights()).map(|(om, w)| om * w).sum();
                s.tail_mass() + t_end.abs() * (root_tol + f64::EPSILON) * moment
            }
            Built::Free(f) => f.quadrature.abs_tol,
        }
    }
}

/// Output of one run plus what the sidecar reports about it.
pub struct RunResult {
    pub table: Table,
    pub summary: SourceSummary,
    pub f00_error_bound: Option<f64>,
}

pub fn spectrum_table(spectrum: &ModeSpectrum) -> Table {
    let rows = spectrum
        .frequencies()
        .iter()
        .zip(spectrum.weights())
        .enumerate()
        .map(|(r, (&om, &w))| vec![Cell::Int(r), Cell::Real(om), Cell::Real(w)])
        .collect();
    Table::new(&["r", "Omega_r", "weight_r"], rows)
}

pub fn f00_table(times: &[f64], f: &[Complex64]) -> Table {
    let rows = times
        .iter()
        .zip(f)
        .map(|(&t, z)| vec![Cell::Real(t), Cell::Real(z.re), Cell::Real(z.im), Cell::Real(z.norm())])
        .collect();
    Table::new(&["t", "re", "im", "abs"], rows)
}

pub fn concurrence_table(times: &[f64], f: &[Complex64], omega0: f64, state: &InitialState) -> Table {
    let rows = times
        .iter()
        .zip(f)
        .map(|(&t, &z)| {
            vec![
                Cell::Real(t),
                Cell::Real(concurrence(&atom_amplitudes(z, t, omega0, state))),
            ]
        })
        .collect();
    Table::new(&["t", "C"], rows)
}

/// Runs a validated configuration against an already built source.
pub fn execute(cfg: &RunConfig, built: &Built) -> Result<RunResult, CliError> {
    let summary = built.summary();
    if cfg.mode == Mode::Spectrum {
        let Built::Cavity(spectrum) = built else {
            return Err(CliError::Config("free space has a continuous spectrum".into()));
        };
        return Ok(RunResult {
            table: spectrum_table(spectrum),
            summary,
            f00_error_bound: None,
        });
    }
    let grid_cfg = cfg.grid.expect("validated");
    let grid = grid_cfg.grid()?;
    let f = built.source().f00_grid(&grid)?;
    let times = grid.times();
    let table = match cfg.mode {
        Mode::F00 => f00_table(&times, &f),
        Mode::Concurrence => {
            let state = cfg.state.expect("validated");
            concurrence_table(&times, &f, built.source().omega0(), &state)
        }
        Mode::Spectrum => unreachable!(),
    };
    let t_end = grid.at(grid.count - 1);
    Ok(RunResult {
        table,
        summary,
        f00_error_bound: Some(built.f00_error_bound(t_end, cfg.root_tol)),
    })
}
