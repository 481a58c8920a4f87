use std::collections::HashMap;
use std::path::PathBuf;

use serde::Serialize;

use crate::config::{execute, Built, Mode, RunConfig, SourceSummary};
use crate::error::CliError;
use crate::figures::FigureId;
use crate::output::{sidecar_path, OutputSet};

/// Caveat attached to late-time runs.
const PHASE_NOTE: &str = "phase error grows as t times the root tolerance; f00_error_bound accounts for it";

#[derive(Debug, Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    mode: Mode,
    figure: Option<FigureId>,
    curve: Option<&'a str>,
    config: &'a RunConfig,
    source: SourceSummary,
    columns: &'a [String],
    rows: usize,
    f00_error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    reproduce: String,
}

/// A configuration to run, optionally labelled as a figure curve.
pub struct Job {
    pub label: Option<String>,
    pub config: RunConfig,
}

/// Runs every job, sharing built sources between jobs with the same
/// physical parameters and tolerances. On any failure no output survives.
pub fn run_jobs(jobs: &[Job]) -> Result<Vec<PathBuf>, CliError> {
    for job in jobs {
        job.config.validate()?;
    }
    let mut outputs = OutputSet::new();
    let mut built: HashMap<String, Built> = HashMap::new();
    for job in jobs {
        let cfg = &job.config;
        let key = format!(
            "{:?}|{:?}|{:?}|{:?}",
            cfg.source, cfg.truncation_eps, cfg.root_tol, cfg.r_max
        );
        if !built.contains_key(&key) {
            built.insert(key.clone(), Built::new(cfg)?);
        }
        let result = execute(cfg, &built[&key])?;
        let late = cfg.grid.is_some_and(|g| g.t_max > 1e6);
        let sidecar = Sidecar {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            mode: cfg.mode,
            figure: cfg.figure_id,
            curve: job.label.as_deref(),
            config: cfg,
            source: result.summary,
            columns: &result.table.columns,
            rows: result.table.rows.len(),
            f00_error_bound: result.f00_error_bound,
            note: late.then_some(PHASE_NOTE),
            reproduce: cfg.command_line(),
        };
        outputs.write_csv(&cfg.output_path, &result.table)?;
        outputs.write_json(&sidecar_path(&cfg.output_path), &sidecar)?;
        log::info!("wrote {}", cfg.output_path.display());
    }
    Ok(outputs.commit())
}
