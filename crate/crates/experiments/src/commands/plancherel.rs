//! Isometry and round-trip of the Fourier pair on random vectors.

use clap::Args;
use hardy_core::{forward_fourier, inverse_fourier, GridFunction};
use num_complex::Complex;
use rand::Rng;
use rayon::prelude::*;

use super::Common;
use crate::settings::CliResult;
use crate::table::{flag, float, timed, Table};

pub const ISOMETRY_TOLERANCE: f64 = 1e-10;
pub const ROUND_TRIP_TOLERANCE: f64 = 1e-12;

#[derive(Args, Clone, Debug)]
pub struct PlancherelArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of random vectors.
    #[arg(long)]
    pub vectors: Option<usize>,
}

pub fn run(args: &PlancherelArgs) -> CliResult<()> {
    let settings = super::resolve(
        "plancherel",
        &args.common,
        vec![("vectors", args.vectors.map(|v| v.to_string()))],
        &[("model", "line:N=1024,h=0.1"), ("vectors", "100")],
    )?;
    let model = super::model(&settings)?;
    let count: usize = settings.get("vectors")?;
    let mut rng = super::rng(&settings)?;
    let n = model.sample_count();
    let inputs: Vec<Vec<Complex<f64>>> = (0..count)
        .map(|_| {
            (0..n)
                .map(|_| Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect()
        })
        .collect();

    let rows: Vec<_> = inputs
        .into_par_iter()
        .map(|values| {
            timed(|| {
                let mut f = GridFunction::new(model, values).expect("sized vector");
                if !model.is_square() {
                    // a non-square circle represents band-limited vectors only
                    f = inverse_fourier(&forward_fourier(&f));
                }
                let fh = forward_fourier(&f);
                let back = inverse_fourier(&fh);
                let norm = f.norm();
                let isometry = (fh.norm() - norm).abs() / norm;
                let diff = back
                    .axpby(Complex::new(1.0, 0.0), &f, Complex::new(-1.0, 0.0))
                    .expect("same model");
                (norm, fh.norm(), isometry, diff.norm() / norm)
            })
        })
        .collect();

    let mut table = Table::new([
        "vector",
        "model",
        "norm_f",
        "norm_fhat",
        "isometry_rel_err",
        "round_trip_rel_err",
        "status",
    ]);
    let mut failures = Vec::new();
    for (i, ((norm, norm_hat, iso, trip), ms)) in rows.into_iter().enumerate() {
        let ok = iso < ISOMETRY_TOLERANCE && trip < ROUND_TRIP_TOLERANCE;
        if !ok {
            failures.push(format!("vector {i}: isometry {iso:e}, round trip {trip:e}"));
        }
        table.push(
            vec![
                i.to_string(),
                model.to_string(),
                float(norm),
                float(norm_hat),
                float(iso),
                float(trip),
                flag(ok),
            ],
            ms,
        );
    }
    table.emit(&settings)?;
    super::verdict("plancherel", failures)
}
