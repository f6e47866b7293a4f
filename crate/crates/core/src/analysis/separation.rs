//! Translating one compact set off another on the line.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::scalar::Real;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::Precondition(format!("bad interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn length(&self) -> T {
        self.hi - self.lo
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn shifted(&self, t: T) -> Self {
        Self {
            lo: self.lo + t,
            hi: self.hi + t,
        }
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing every member of `parts`.
    pub fn hull(parts: &[Self]) -> Option<Self> {
        let first = parts.first()?;
        Some(parts.iter().fold(*first, |acc, p| Self {
            lo: acc.lo.min(p.lo),
            hi: acc.hi.max(p.hi),
        }))
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `t₀` with `K₁ ∩ (t₀ + K₂) = ∅`: `sup K₁ − inf K₂ + 1`, checked afterwards.
pub fn separate_compacts<T: Real>(
    model: &GroupModel<T>,
    k1: &[Interval<T>],
    k2: &[Interval<T>],
) -> Result<T> {
    if model.is_compact() {
        return Err(Error::Unsupported {
            what: "separating compact sets".into(),
            model: model.to_string(),
        });
    }
    let (Some(a), Some(b)) = (Interval::hull(k1), Interval::hull(k2)) else {
        return Err(Error::Precondition("compact sets must be nonempty".into()));
    };
    let t0 = a.hi - b.lo + T::one();
    let overlap = k1
        .iter()
        .any(|p| k2.iter().any(|q| p.intersects(&q.shifted(t0))));
    if overlap {
        return Err(Error::Precondition(format!("translate by {t0} still meets K₁")));
    }
    Ok(t0)
}
