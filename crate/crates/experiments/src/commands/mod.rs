pub mod character_grid;
pub mod commutator_decay;
pub mod hs_bound;
pub mod norm_sweep;
pub mod plancherel;
pub mod witness_demo;

use std::path::PathBuf;

use clap::Args;
use hardy_core::analysis::NormMethod;
use hardy_core::GroupModel64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::settings::{CliError, CliResult, Settings};

/// Flags shared by every experiment.
#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Group model, e.g. `circle:M=64` or `line:N=256,h=0.1`.
    #[arg(long)]
    pub model: Option<String>,
    /// Comma-separated truncation levels, strictly increasing.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Norm method: svd, power or auto.
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV output path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// File of `key=value` lines filling any flag not given on the command line.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

impl Common {
    pub fn entries(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("model", self.model.clone()),
            ("schedule", self.schedule.clone()),
            ("method", self.method.clone()),
            ("seed", self.seed.map(|s| s.to_string())),
            ("out", self.out.as_ref().map(|p| p.display().to_string())),
        ]
    }
}

pub const COMMON_DEFAULTS: &[(&str, &str)] = &[("method", "auto"), ("seed", "1")];

pub fn resolve(
    command: &'static str,
    common: &Common,
    extra: Vec<(&'static str, Option<String>)>,
    defaults: &[(&'static str, &str)],
) -> CliResult<Settings> {
    let mut flags = common.entries();
    flags.extend(extra);
    let mut all = COMMON_DEFAULTS.to_vec();
    all.extend_from_slice(defaults);
    Settings::resolve(command, flags, common.config.as_deref(), &all)
}

pub fn model(settings: &Settings) -> CliResult<GroupModel64> {
    settings.get("model")
}

pub fn method(settings: &Settings) -> CliResult<NormMethod> {
    settings.get("method")
}

pub fn rng(settings: &Settings) -> CliResult<ChaCha8Rng> {
    Ok(ChaCha8Rng::seed_from_u64(settings.get("seed")?))
}

pub fn schedule(settings: &Settings) -> CliResult<Vec<usize>> {
    let raw = settings
        .raw("schedule")
        .ok_or_else(|| CliError::Usage("missing `--schedule`".into()))?;
    Ok(hardy_core::analysis::parse_schedule(raw)?)
}

/// Report failing rows on stderr and turn them into the exit status.
pub fn verdict(command: &str, failures: Vec<String>) -> CliResult<()> {
    if failures.is_empty() {
        return Ok(());
    }
    for f in &failures {
        eprintln!("{command}: {f}");
    }
    Err(CliError::Failed(format!("{} failing row(s)", failures.len())))
}
