use std::f64::consts::PI;
use std::path::Path;

use cavity_entanglement::InitialState;
use clap::ValueEnum;
use serde::Serialize;

use crate::config::{GridConfig, Mode, RunConfig, SourceConfig};

/// Root tolerance used for the late-time windows.
pub const LATE_ROOT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FigureId {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3a,
    Fig3b,
    Fig3c,
    Fig3d,
    Fig4a,
    Fig4b,
}

impl FigureId {
    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig1a => "fig1a",
            FigureId::Fig1b => "fig1b",
            FigureId::Fig2 => "fig2",
            FigureId::Fig3a => "fig3a",
            FigureId::Fig3b => "fig3b",
            FigureId::Fig3c => "fig3c",
            FigureId::Fig3d => "fig3d",
            FigureId::Fig4a => "fig4a",
            FigureId::Fig4b => "fig4b",
        }
    }
}

/// One curve of a figure.
#[derive(Debug, Clone)]
pub struct Curve {
    pub label: String,
    pub config: RunConfig,
}

struct Builder<'a> {
    id: FigureId,
    out_dir: &'a Path,
    dt: f64,
    eps: f64,
}

impl Builder<'_> {
    fn curve(
        &self,
        label: String,
        source: SourceConfig,
        state: InitialState,
        window: (f64, f64),
        root_tol: f64,
    ) -> Curve {
        let output_path = self.out_dir.join(format!("{}_{label}.csv", self.id.name()));
        Curve {
            label,
            config: RunConfig {
                mode: Mode::Concurrence,
                source,
                state: Some(state),
                grid: Some(GridConfig {
                    t_start: window.0,
                    t_max: window.1,
                    dt: self.dt,
                }),
                truncation_eps: self.eps,
                root_tol,
                r_max: None,
                output_path,
                figure_id: Some(self.id),
            },
        }
    }
}

fn state(xi: f64, phi: f64) -> InitialState {
    InitialState::new(xi, phi).expect("catalog states are valid")
}

/// Every curve of a figure, with its parameters fixed.
pub fn curves(id: FigureId, out_dir: &Path, dt: f64, eps: f64, root_tol: f64) -> Vec<Curve> {
    let b = Builder { id, out_dir, dt, eps };
    let early = (0.0, 10.0);
    let free = SourceConfig::FreeSpace { omega0: 1.0, g: 1.0 };
    let cavity = |g: f64, radius: f64| SourceConfig::Cavity { omega0: 1.0, g, radius };
    match id {
        FigureId::Fig1a => [("0", 0.0), ("pi6", PI / 6.0), ("pi4", PI / 4.0), ("pi3", PI / 3.0)]
            .into_iter()
            .map(|(name, phi)| b.curve(format!("phi{name}"), free, state(0.5, phi), early, root_tol))
            .collect(),
        FigureId::Fig1b => [0.0, 0.1, 0.2, 0.4]
            .into_iter()
            .map(|xi| b.curve(format!("xi{xi}"), free, state(xi, 0.0), early, root_tol))
            .collect(),
        FigureId::Fig2 => [0.01, 0.1, 0.5, 1.0, 2.0]
            .into_iter()
            .map(|g| b.curve(format!("g{g}"), cavity(g, 1.0), state(0.0, 0.0), early, root_tol))
            .collect(),
        FigureId::Fig3a | FigureId::Fig3b | FigureId::Fig3c | FigureId::Fig3d => {
            let radius = match id {
                FigureId::Fig3a => 0.01,
                FigureId::Fig3b => 0.1,
                FigureId::Fig3c => 0.5,
                _ => 1.0,
            };
            let source = cavity(1.0, radius);
            let s = state(0.0, 0.0);
            vec![
                b.curve("t0".into(), source, s, early, root_tol),
                b.curve("t1e2".into(), source, s, (100.0, 110.0), root_tol),
                b.curve("t1e9".into(), source, s, (1e9, 1e9 + 10.0), root_tol.min(LATE_ROOT_TOL)),
            ]
        }
        FigureId::Fig4a | FigureId::Fig4b => {
            let phi = if id == FigureId::Fig4a { 0.0 } else { PI / 5.0 };
            [0.2, 1.0, 5.0]
                .into_iter()
                .map(|radius| {
                    b.curve(
                        format!("R{radius}"),
                        cavity(1.0, radius),
                        state(0.5, phi),
                        early,
                        root_tol,
                    )
                })
                .collect()
        }
    }
}
