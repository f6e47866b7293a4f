//! Hilbert–Schmidt kernel of `D_θ̃ M_φ` against the factored operator and the norm bound.

use clap::Args;
use hardy_core::analysis::kernel::{hs_kernel, HsKernel};
use hardy_core::analysis::norm::{matrix_norm, matrix_singular_values, NormMethod};
use hardy_core::SymbolSpec64;
use rand::Rng;
use rayon::prelude::*;

use super::Common;
use crate::settings::CliResult;
use crate::table::{flag, float, timed, Table};

pub const OPERATOR_TOLERANCE: f64 = 1e-8;
pub const SPECTRUM_TOLERANCE: f64 = 1e-8;

#[derive(Args, Clone, Debug)]
pub struct HsBoundArgs {
    #[command(flatten)]
    pub common: Common,
    /// Group symbol; when given with `--theta`, only this pair is tested.
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    /// Number of random Gaussian pairs drawn from the seed.
    #[arg(long)]
    pub pairs: Option<usize>,
}

pub struct HsRow {
    pub kernel: HsKernel<f64>,
    pub operator_gap: f64,
    pub sigma_sq_sum: f64,
}

impl HsRow {
    pub fn spectrum_error(&self) -> f64 {
        let hs2 = self.kernel.hs_norm * self.kernel.hs_norm;
        if hs2 == 0.0 {
            self.sigma_sq_sum
        } else {
            (self.sigma_sq_sum - hs2).abs() / hs2
        }
    }

    pub fn passes(&self) -> bool {
        self.operator_gap < OPERATOR_TOLERANCE
            && self.spectrum_error() < SPECTRUM_TOLERANCE
            && self.kernel.hs_norm <= self.kernel.bound * (1.0 + 1e-8)
    }
}

pub fn check_pair(
    model: &hardy_core::GroupModel64,
    phi: &SymbolSpec64,
    theta: &SymbolSpec64,
) -> hardy_core::Result<HsRow> {
    let kernel = hs_kernel(model, phi, theta)?;
    let direct = kernel.operator();
    let factored = HsKernel::factored_operator(model, phi, theta)?;
    let operator_gap = matrix_norm(&(direct.matrix() - factored.matrix()), NormMethod::Svd).value;
    let sigma_sq_sum = matrix_singular_values(direct.matrix()).iter().map(|s| s * s).sum();
    Ok(HsRow {
        kernel,
        operator_gap,
        sigma_sq_sum,
    })
}

pub fn run(args: &HsBoundArgs) -> CliResult<()> {
    let settings = super::resolve(
        "hs-bound",
        &args.common,
        vec![
            ("phi", args.phi.clone()),
            ("theta", args.theta.clone()),
            ("pairs", args.pairs.map(|p| p.to_string())),
        ],
        &[("model", "line:N=512,h=0.1"), ("pairs", "10")],
    )?;
    let model = super::model(&settings)?;
    let pairs: Vec<(SymbolSpec64, SymbolSpec64)> =
        match (settings.get_opt("phi")?, settings.get_opt("theta")?) {
            (Some(phi), Some(theta)) => vec![(phi, theta)],
            (None, None) => {
                let mut rng = super::rng(&settings)?;
                (0..settings.get::<usize>("pairs")?)
                    .map(|_| {
                        let phi = SymbolSpec64::gauss(rng.random_range(-2.0..2.0), rng.random_range(0.5..1.5));
                        let theta =
                            SymbolSpec64::dual_gauss(rng.random_range(2.0..6.0), rng.random_range(0.5..1.5));
                        (phi, theta)
                    })
                    .collect()
            }
            _ => {
                return Err(crate::settings::CliError::Usage(
                    "`--phi` and `--theta` go together".into(),
                ))
            }
        };

    let rows: Vec<_> = pairs
        .par_iter()
        .map(|(phi, theta)| timed(|| check_pair(&model, phi, theta)))
        .collect();

    let mut table = Table::new([
        "pair",
        "phi",
        "theta",
        "hs_norm",
        "bound",
        "support_length",
        "sigma_sq_sum",
        "spectrum_rel_err",
        "operator_gap",
        "status",
    ]);
    let mut failures = Vec::new();
    for (i, ((phi, theta), (row, ms))) in pairs.iter().zip(rows).enumerate() {
        let row = row?;
        if !row.passes() {
            failures.push(format!("pair {i} ({phi}; {theta})"));
        }
        table.push(
            vec![
                i.to_string(),
                phi.to_string(),
                theta.to_string(),
                float(row.kernel.hs_norm),
                float(row.kernel.bound),
                float(row.kernel.support_length),
                float(row.sigma_sq_sum),
                float(row.spectrum_error()),
                float(row.operator_gap),
                flag(row.passes()),
            ],
            ms,
        );
    }
    table.emit(&settings)?;
    super::verdict("hs-bound", failures)
}
