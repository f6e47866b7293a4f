//! Singular-value decay of commutators and semi-commutators of Toeplitz
//! sections, and the Hardy-invariance defect of an analytic symbol.

use clap::Args;
use hardy_core::analysis::commutator::{decay_point, DefectKind};
use hardy_core::analysis::norm::{operator_norm, NormMethod};
use hardy_core::analysis::schedule::schedule_models;
use hardy_core::operators::{analytic_symbol_from_positive_spectrum, hardy_invariance_defect};
use hardy_core::SymbolSpec64;

use super::Common;
use crate::settings::CliResult;
use crate::table::{flag, float, timed, Table};

pub const DECAY_FACTOR: f64 = 1.5;
pub const DEFECT_TOLERANCE: f64 = 1e-8;

#[derive(Args, Clone, Debug)]
pub struct CommutatorDecayArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub psi: Option<String>,
    /// Dual symbol on `Γ⁺` whose inverse transform is the analytic symbol.
    #[arg(long)]
    pub spectrum: Option<String>,
}

pub fn run(args: &CommutatorDecayArgs) -> CliResult<()> {
    let settings = super::resolve(
        "commutator-decay",
        &args.common,
        vec![
            ("phi", args.phi.clone()),
            ("psi", args.psi.clone()),
            ("spectrum", args.spectrum.clone()),
        ],
        &[
            ("model", "line:N=256,h=0.09817477042468103"),
            ("schedule", "256,512,1024"),
            ("phi", "gauss:center=0,width=1"),
            ("psi", "gauss:center=1,width=1"),
            ("spectrum", "dgauss:center=5,width=1"),
        ],
    )?;
    let base = super::model(&settings)?;
    let schedule = super::schedule(&settings)?;
    let phi: SymbolSpec64 = settings.get("phi")?;
    let psi: SymbolSpec64 = settings.get("psi")?;
    let spectrum: SymbolSpec64 = settings.get("spectrum")?;
    let models = schedule_models(&base, &schedule)?;

    let mut table = Table::new([
        "quantity",
        "level",
        "dimension",
        "sigma_1",
        "sigma_quarter",
        "value",
        "decay_factor",
        "status",
    ]);
    let mut failures = Vec::new();
    for kind in [DefectKind::Commutator, DefectKind::SemiCommutator] {
        let mut previous: Option<f64> = None;
        for (model, level) in models.iter().zip(&schedule) {
            let (result, ms) = timed(|| kind.assemble(model, &phi, &psi).map(|op| decay_point(&op)));
            let point = result?;
            let factor = previous.map(|p| p / point.ratio);
            let ok = factor.is_none_or(|f| f >= DECAY_FACTOR);
            if !ok {
                failures.push(format!(
                    "{} at level {level}: ratio {:e} shrank by {:.3} (need {DECAY_FACTOR})",
                    kind.as_str(),
                    point.ratio,
                    factor.unwrap_or(f64::NAN)
                ));
            }
            previous = Some(point.ratio);
            table.push(
                vec![
                    kind.as_str().to_string(),
                    level.to_string(),
                    point.dimension.to_string(),
                    float(point.sigma_first),
                    float(point.sigma_quarter),
                    float(point.ratio),
                    factor.map(float).unwrap_or_default(),
                    flag(ok),
                ],
                ms,
            );
        }
    }

    for (model, level) in models.iter().zip(&schedule) {
        let (result, ms) = timed(|| -> hardy_core::Result<(f64, usize)> {
            let k = spectrum.evaluate_dual(model)?;
            let psi = analytic_symbol_from_positive_spectrum(&k)?;
            let defect = hardy_invariance_defect(&psi);
            Ok((operator_norm(&defect, NormMethod::Svd).value, defect.dim()))
        });
        let (value, dim) = result?;
        let ok = value < DEFECT_TOLERANCE;
        if !ok {
            failures.push(format!("hardy defect at level {level}: {value:e}"));
        }
        table.push(
            vec![
                "hardy-defect".into(),
                level.to_string(),
                dim.to_string(),
                String::new(),
                String::new(),
                float(value),
                String::new(),
                flag(ok),
            ],
            ms,
        );
    }

    table.emit(&settings)?;
    super::verdict("commutator-decay", failures)
}
