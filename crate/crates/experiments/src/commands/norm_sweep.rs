//! `‖T_φ‖` along a schedule, against the grid supremum and, for `2cos θ`
//! on the circle, the closed-form section norms.

use clap::Args;
use hardy_core::analysis::sweep::{symbol_norm_sweep, SWEEP_SLACK};
use hardy_core::{GroupModel64, SymbolSpec64};

use super::Common;
use crate::settings::CliResult;
use crate::table::{flag, float, timed, Table};

pub const CLOSED_FORM_TOLERANCE: f64 = 1e-6;

#[derive(Args, Clone, Debug)]
pub struct NormSweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// Group symbol.
    #[arg(long)]
    pub phi: Option<String>,
}

/// `2cos(π/(n+2))` for the level-`n` circle section of `2cos θ`.
fn closed_form(model: &GroupModel64, phi: &SymbolSpec64, level: usize) -> Option<f64> {
    (model.is_compact() && *phi == SymbolSpec64::two_cos())
        .then(|| 2.0 * (std::f64::consts::PI / (level as f64 + 2.0)).cos())
}

pub fn run(args: &NormSweepArgs) -> CliResult<()> {
    let settings = super::resolve(
        "norm-sweep",
        &args.common,
        vec![("phi", args.phi.clone())],
        &[
            ("model", "circle:M=64"),
            ("schedule", "64,128,256,512,1024"),
            ("phi", "trig:r-1=1,r1=1"),
        ],
    )?;
    let model = super::model(&settings)?;
    let schedule = super::schedule(&settings)?;
    let method = super::method(&settings)?;
    let phi: SymbolSpec64 = settings.get("phi")?;

    let mut table = Table::new([
        "level",
        "dimension",
        "norm",
        "method",
        "iterations",
        "residual",
        "grid_sup",
        "closed_form",
        "status",
    ]);
    let mut failures = Vec::new();
    let mut previous: Option<f64> = None;
    for &level in &schedule {
        let (rows, ms) = timed(|| symbol_norm_sweep(&model, &phi, &[level], method));
        let row = rows?.remove(0);
        let value = row.norm.value;
        let oracle = closed_form(&model, &phi, level);
        let ok = row.norm.converged
            && value <= row.grid_sup * (1.0 + 1e-12)
            && previous.is_none_or(|p| value >= p - SWEEP_SLACK)
            && oracle.is_none_or(|o| (value - o).abs() < CLOSED_FORM_TOLERANCE);
        if !ok {
            failures.push(format!("level {level}: norm {value}"));
        }
        previous = Some(value);
        table.push(
            vec![
                level.to_string(),
                row.dimension.to_string(),
                float(value),
                row.norm.method.to_string(),
                row.norm.iterations.to_string(),
                float(row.norm.residual),
                float(row.grid_sup),
                oracle.map(float).unwrap_or_default(),
                flag(ok),
            ],
            ms,
        );
    }
    table.emit(&settings)?;
    super::verdict("norm-sweep", failures)
}
