//! Modulation and translation witnesses, their Fourier-conjugate forms, and
//! the `1 − 3ε` lower bound for points `(∞, γ)`.

use clap::Args;
use hardy_core::analysis::witness::{
    modulation_character, modulation_witness, reproduce_lower_bound, translation_multiplier,
    translation_witness, WitnessSetup,
};
use hardy_core::operators::{
    extended_fourier_multiplier, extended_multiplier_from_samples, multiplication_from_samples, Basis,
    FiniteSectionOperator,
};
use hardy_core::{FiniteSectionOperator64, GroupModel64, SymbolSpec64};
use rand::Rng;

use super::Common;
use crate::settings::{CliError, CliResult};
use crate::table::{flag, float, timed, Table};

pub const IDENTITY_TOLERANCE: f64 = 1e-10;
pub const UNITARY_TOLERANCE: f64 = 1e-12;
pub const COMMUTATION_TOLERANCE: f64 = 1e-10;
pub const SLACK: f64 = 0.01;

#[derive(Args, Clone, Debug)]
pub struct WitnessDemoArgs {
    #[command(flatten)]
    pub common: Common,
    /// Translation, a group grid point.
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Modulation, a dual grid point; defaults to eight dual steps.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma0: Option<f64>,
    /// Finite dual coordinate of the `(∞, γ)` lower bound.
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub epsilons: Option<String>,
    /// Random dual symbols checked for commutation with the translation.
    #[arg(long)]
    pub multipliers: Option<usize>,
}

/// Frobenius norm of `a − b`, an upper bound for the operator norm.
fn gap(a: &FiniteSectionOperator64, b: &FiniteSectionOperator64) -> hardy_core::Result<f64> {
    Ok(a.sub(b)?.frobenius_norm())
}

pub fn run(args: &WitnessDemoArgs) -> CliResult<()> {
    let opt = |x: Option<f64>| x.map(|v| v.to_string());
    let settings = super::resolve(
        "witness-demo",
        &args.common,
        vec![
            ("t0", opt(args.t0)),
            ("gamma0", opt(args.gamma0)),
            ("gamma", opt(args.gamma)),
            ("epsilons", args.epsilons.clone()),
            ("multipliers", args.multipliers.map(|m| m.to_string())),
        ],
        &[
            ("model", "line:N=1024,h=0.05"),
            ("t0", "2"),
            ("gamma", "2"),
            ("epsilons", "0.1,0.05"),
            ("multipliers", "4"),
        ],
    )?;
    let model: GroupModel64 = super::model(&settings)?;
    if model.is_compact() {
        return Err(CliError::Usage("witness-demo needs a line model".into()));
    }
    let t0: f64 = settings.get("t0")?;
    let gamma0: f64 = settings
        .get_opt("gamma0")?
        .unwrap_or(8.0 * model.dual_spacing());
    let gamma: f64 = settings.get("gamma")?;
    let epsilons: Vec<f64> = settings.get_list("epsilons")?;
    let mut rng = super::rng(&settings)?;

    let mut table = Table::new(["check", "parameters", "measured", "threshold", "status"]);
    let mut failures = Vec::new();
    let mut record = |table: &mut Table, check: &str, params: String, measured: f64, threshold: f64, ok: bool, ms| {
        if !ok {
            failures.push(format!("{check} ({params}): {measured:e} vs {threshold:e}"));
        }
        table.push(
            vec![check.to_string(), params, float(measured), float(threshold), flag(ok)],
            ms,
        );
    };

    let (result, ms) = timed(|| -> hardy_core::Result<f64> {
        let s = modulation_witness(&model, gamma0)?;
        let chi = modulation_character(&model, gamma0)?;
        gap(&s, &multiplication_from_samples(&chi).to_basis(Basis::L2Fourier)?)
    });
    let m = result?;
    let params = format!("gamma0={}", float(gamma0));
    record(&mut table, "modulation-conjugate", params, m, IDENTITY_TOLERANCE, m < IDENTITY_TOLERANCE, ms);

    let (result, ms) = timed(|| -> hardy_core::Result<(FiniteSectionOperator64, f64)> {
        let s = translation_witness(&model, t0)?;
        let mult = extended_multiplier_from_samples(&translation_multiplier(&model, t0)?);
        let m = gap(&s, &mult.to_basis(Basis::L2Sample)?)?;
        Ok((s, m))
    });
    let (shift, m) = result?;
    let params = format!("t0={}", float(t0));
    record(&mut table, "translation-conjugate", params.clone(), m, IDENTITY_TOLERANCE, m < IDENTITY_TOLERANCE, ms);

    let (result, ms) = timed(|| {
        let id = FiniteSectionOperator::identity(model, Basis::L2Sample);
        gap(&shift.adjoint().compose(&shift)?, &id)
    });
    let u = result?;
    record(&mut table, "translation-unitary", params, u, UNITARY_TOLERANCE, u < UNITARY_TOLERANCE, ms);

    let count: usize = settings.get("multipliers")?;
    let top = model.dual_point(model.dual_len() - 1);
    for i in 0..count {
        let theta = if i % 2 == 0 {
            SymbolSpec64::dual_gauss(rng.random_range(0.0..top / 4.0), rng.random_range(0.5..2.0))
        } else {
            SymbolSpec64::dual_tail(rng.random_range(0.1..2.0))
        };
        let (result, ms) = timed(|| -> hardy_core::Result<f64> {
            let d = extended_fourier_multiplier(&model, &theta)?.to_basis(Basis::L2Sample)?;
            gap(&d.compose(&shift)?, &shift.compose(&d)?)
        });
        let c = result?;
        let params = format!("t0={};theta={theta}", float(t0));
        record(&mut table, "translation-commutes", params, c, COMMUTATION_TOLERANCE, c < COMMUTATION_TOLERANCE, ms);
    }

    let setup = WitnessSetup {
        gamma,
        tail_width: 1.0,
        bump_width: 1.0,
        slack: SLACK,
    };
    for eps in epsilons {
        let (result, ms) = timed(|| reproduce_lower_bound(&model, &setup, eps));
        let w = result?;
        let params = format!(
            "epsilon={};gamma={};sigma={};localized={};k1={};k2={};t0={}",
            float(w.epsilon),
            float(w.gamma),
            float(w.sigma),
            float(w.localized),
            w.k1,
            w.k2,
            float(w.t0)
        );
        record(&mut table, "lower-bound", params, w.achieved, w.required, w.passes(), ms);
    }

    table.emit(&settings)?;
    super::verdict("witness-demo", failures)
}
