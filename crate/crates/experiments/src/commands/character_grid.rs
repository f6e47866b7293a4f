//! Pair tests over a grid of `(t, γ)` points plus the points at infinity.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Write;

use clap::Args;
use hardy_core::analysis::character::{power_pair_test, Classification, Coordinate, PairPoint, PairWidths};
use rayon::prelude::*;
use serde_json::json;

use super::Common;
use crate::settings::{CliError, CliResult};
use crate::table::{float, json_path, timed, Table};

#[derive(Args, Clone, Debug)]
pub struct CharacterGridArgs {
    #[command(flatten)]
    pub common: Common,
    /// Finite group coordinates, comma-separated (may be empty).
    #[arg(long, allow_hyphen_values = true)]
    pub t_values: Option<String>,
    /// Finite dual coordinates in Γ⁺, comma-separated (may be empty).
    #[arg(long)]
    pub gamma_values: Option<String>,
    #[arg(long)]
    pub group_bump: Option<f64>,
    #[arg(long)]
    pub dual_bump: Option<f64>,
    #[arg(long)]
    pub group_tail: Option<f64>,
    #[arg(long)]
    pub dual_tail: Option<f64>,
}

/// Finite × finite, then `(t, ∞)`, `(∞, γ)` and `(∞, ∞)`.
pub fn grid_points(ts: &[f64], gammas: &[f64]) -> Vec<PairPoint<f64>> {
    use Coordinate::{Finite, Infinity};
    let mut points = Vec::new();
    for &t in ts {
        for &g in gammas {
            points.push(PairPoint::new(Finite(t), Finite(g)));
        }
    }
    points.extend(ts.iter().map(|&t| PairPoint::new(Finite(t), Infinity)));
    points.extend(gammas.iter().map(|&g| PairPoint::new(Infinity, Finite(g))));
    points.push(PairPoint::new(Infinity, Infinity));
    points
}

pub fn run(args: &CharacterGridArgs) -> CliResult<()> {
    let opt = |x: Option<f64>| x.map(|v| v.to_string());
    let settings = super::resolve(
        "character-grid",
        &args.common,
        vec![
            ("t-values", args.t_values.clone()),
            ("gamma-values", args.gamma_values.clone()),
            ("group-bump", opt(args.group_bump)),
            ("dual-bump", opt(args.dual_bump)),
            ("group-tail", opt(args.group_tail)),
            ("dual-tail", opt(args.dual_tail)),
        ],
        &[
            ("model", "line:N=256,h=0.09817477042468103"),
            ("schedule", "256,512,1024"),
            ("t-values", "-2,0,1,3"),
            ("gamma-values", "0,0.5,1,2"),
            ("group-bump", "1"),
            ("dual-bump", "1"),
            ("group-tail", "1"),
            ("dual-tail", "0.25"),
        ],
    )?;
    let base = super::model(&settings)?;
    let schedule = super::schedule(&settings)?;
    let method = super::method(&settings)?;
    let widths = PairWidths {
        group_bump: settings.get("group-bump")?,
        dual_bump: settings.get("dual-bump")?,
        group_tail: settings.get("group-tail")?,
        dual_tail: settings.get("dual-tail")?,
    };
    let ts: Vec<f64> = settings.get_list("t-values")?;
    let gammas: Vec<f64> = settings.get_list("gamma-values")?;
    let points = grid_points(&ts, &gammas);

    let results: Vec<_> = points
        .par_iter()
        .map(|p| timed(|| power_pair_test(&base, p, &widths, &schedule, method)))
        .collect();

    let mut columns = vec!["t".to_string(), "gamma".to_string()];
    columns.extend(schedule.iter().map(|n| format!("norm_{n}")));
    columns.extend(["drift", "classification", "expected", "margin", "converged"].map(String::from));
    let mut table = Table::new(columns);

    let mut counts: BTreeMap<&str, usize> = [
        Classification::InCharacterSpace,
        Classification::Excluded,
        Classification::Inconclusive,
    ]
    .iter()
    .map(|c| (c.as_str(), 0))
    .collect();
    let mut offending = Vec::new();
    let mut worst_margin = f64::INFINITY;
    for (result, ms) in results {
        let v = result?;
        let values: Vec<f64> = v.norms.iter().map(|n| n.value).collect();
        let drift = match values.as_slice() {
            [.., a, b] => (b - a).abs(),
            _ => 0.0,
        };
        let expected = if v.point.is_finite() {
            Classification::Excluded
        } else {
            Classification::InCharacterSpace
        };
        *counts.entry(v.classification.as_str()).or_default() += 1;
        worst_margin = worst_margin.min(v.margin);
        let converged = v.norms.iter().all(|n| n.converged);
        if !v.matches_expected_shape() || !converged {
            offending.push(format!("{} classified {} (expected {expected})", v.point, v.classification));
        }
        let mut row = vec![v.point.t.to_string(), v.point.gamma.to_string()];
        row.extend(values.iter().map(|x| float(*x)));
        row.extend([
            float(drift),
            v.classification.to_string(),
            expected.to_string(),
            float(v.margin),
            converged.to_string(),
        ]);
        table.push(row, ms);
    }
    table.emit(&settings)?;

    let summary = json!({
        "experiment": "character-grid",
        "config": settings.as_json(),
        "pass": offending.is_empty(),
        "counts": counts,
        "worst_margin": worst_margin,
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes");
    match json_path(&settings) {
        Some(path) => writeln!(File::create(path)?, "{text}")?,
        None => eprintln!("{text}"),
    }
    if offending.is_empty() {
        Ok(())
    } else {
        for o in &offending {
            eprintln!("character-grid: {o}");
        }
        Err(CliError::Failed(format!("{} offending pair(s)", offending.len())))
    }
}
