//! Truncation schedules: one model per refinement level.
//!
//! A circle level is the mode count `M` (Hardy section of dimension `M + 1`).
//! A line level is the sample count `N = N₀·2^k` reached from the base model
//! by alternately doubling the period and halving the spacing, so every
//! level's group and dual grids contain those of the previous level.

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::scalar::{lit, Real};

/// Parse `a,b,c` into a strictly increasing list of levels.
pub fn parse_schedule(text: &str) -> Result<Vec<usize>> {
    let levels = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|e| crate::text::parse_error(text, &e.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    validate_schedule(&levels)?;
    Ok(levels)
}

pub fn validate_schedule(levels: &[usize]) -> Result<()> {
    if levels.is_empty() {
        return Err(Error::InvalidSchedule("empty schedule".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSchedule(format!(
            "levels must be strictly increasing: {levels:?}"
        )));
    }
    Ok(())
}

pub fn format_schedule(levels: &[usize]) -> String {
    levels
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// The model at `level` refined from `base`.
pub fn level_model<T: Real>(base: &GroupModel<T>, level: usize) -> Result<GroupModel<T>> {
    match *base {
        GroupModel::Circle { .. } => GroupModel::circle_square(level),
        GroupModel::Line { samples, spacing } => {
            let bad = || {
                Error::InvalidSchedule(format!(
                    "line level {level} is not {samples}·2^k for base `{base}`"
                ))
            };
            if level < samples || level % samples != 0 || !(level / samples).is_power_of_two() {
                return Err(bad());
            }
            let k = (level / samples).trailing_zeros();
            let halvings = k / 2;
            let h = spacing / lit::<T>(f64::from(1u32 << halvings));
            GroupModel::line(level, h)
        }
    }
}

pub fn schedule_models<T: Real>(base: &GroupModel<T>, levels: &[usize]) -> Result<Vec<GroupModel<T>>> {
    validate_schedule(levels)?;
    levels.iter().map(|&n| level_model(base, n)).collect()
}
