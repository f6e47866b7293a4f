//! Finite-section norms `‖T_φ‖` along a truncation schedule.

use crate::error::Result;
use crate::group::GroupModel;
use crate::operators::toeplitz_operator;
use crate::scalar::Real;
use crate::symbol::SymbolSpec;

use super::norm::{operator_norm, NormEstimate, NormMethod};
use super::schedule::schedule_models;

/// Allowed drop between consecutive levels. Line levels that double the period
/// are not compressions of one another, so tiny decreases occur.
pub const SWEEP_SLACK: f64 = 1e-5;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow<T> {
    pub level: usize,
    pub dimension: usize,
    pub norm: NormEstimate<T>,
    /// `max_j |φ(t_j)|` on the level's grid.
    pub grid_sup: T,
}

pub fn symbol_norm_sweep<T: Real>(
    base: &GroupModel<T>,
    phi: &SymbolSpec<T>,
    schedule: &[usize],
    method: NormMethod,
) -> Result<Vec<SweepRow<T>>> {
    schedule_models(base, schedule)?
        .iter()
        .zip(schedule)
        .map(|(model, &level)| {
            let t = toeplitz_operator(model, phi)?;
            Ok(SweepRow {
                level,
                dimension: t.dim(),
                norm: operator_norm(&t, method),
                grid_sup: phi.evaluate_group(model)?.sup_norm(),
            })
        })
        .collect()
}

/// Whether the norms never drop by more than `slack` from one level to the next.
pub fn is_nondecreasing<T: Real>(rows: &[SweepRow<T>], slack: T) -> bool {
    rows.windows(2)
        .all(|w| w[1].norm.value >= w[0].norm.value - slack)
}
