//! Pair tester for points `(t, γ)` of `Ġ × Γ̇⁺`: peaking symbols at the pair,
//! `‖T_φ D_θ‖` along a truncation schedule, and a fixed classification rule.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::operators::{fourier_multiplier, toeplitz_operator};
use crate::scalar::{lit, Real};
use crate::symbol::SymbolSpec;

use super::norm::{operator_norm, NormEstimate, NormMethod};
use super::schedule::schedule_models;

pub const ATTAINED_THRESHOLD: f64 = 0.98;
pub const EXCLUDED_THRESHOLD: f64 = 0.95;
pub const DRIFT_LIMIT: f64 = 0.005;
pub const MONOTONE_SLACK: f64 = 1e-6;
pub const MIN_LEVELS: usize = 3;
/// A finite-point bump must drop below `1 − PEAK_GAP` one grid step away.
pub const PEAK_GAP: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coordinate<T> {
    Finite(T),
    Infinity,
}

impl<T: Real> Coordinate<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, Coordinate::Finite(_))
    }
}

impl<T: Real> fmt::Display for Coordinate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coordinate::Finite(x) => write!(f, "{x}"),
            Coordinate::Infinity => f.write_str("inf"),
        }
    }
}

impl<T: Real> FromStr for Coordinate<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Coordinate::Infinity),
            other => other
                .parse::<T>()
                .ok()
                .filter(|x| x.is_finite())
                .map(Coordinate::Finite)
                .ok_or_else(|| crate::text::parse_error(s, "expected a number or inf")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairPoint<T> {
    pub t: Coordinate<T>,
    pub gamma: Coordinate<T>,
}

impl<T: Real> PairPoint<T> {
    pub fn new(t: Coordinate<T>, gamma: Coordinate<T>) -> Self {
        Self { t, gamma }
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.gamma.is_finite()
    }
}

impl<T: Real> fmt::Display for PairPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.gamma)
    }
}

/// Widths of the four peaking symbol families.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairWidths<T> {
    pub group_bump: T,
    pub dual_bump: T,
    pub group_tail: T,
    pub dual_tail: T,
}

impl<T: Real> Default for PairWidths<T> {
    fn default() -> Self {
        Self {
            group_bump: T::one(),
            dual_bump: T::one(),
            group_tail: T::one(),
            dual_tail: lit(0.25),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Classification {
    InCharacterSpace,
    Excluded,
    Inconclusive,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::InCharacterSpace => "in-character-space",
            Classification::Excluded => "excluded",
            Classification::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CharacterVerdict<T> {
    pub point: PairPoint<T>,
    pub truncation_levels: Vec<usize>,
    pub norms: Vec<NormEstimate<T>>,
    pub classification: Classification,
    /// `max(ν_m − 0.98, 0.95 − ν_m)`: positive when the final norm is clear of the inconclusive band.
    pub margin: T,
}

impl<T: Real> CharacterVerdict<T> {
    /// Whether the classification is the one expected for this point:
    /// excluded exactly when both coordinates are finite.
    pub fn matches_expected_shape(&self) -> bool {
        let expected = if self.point.is_finite() {
            Classification::Excluded
        } else {
            Classification::InCharacterSpace
        };
        self.classification == expected
    }
}

/// With norms `ν₁..ν_m`: in the character space if `ν_m ≥ 0.98` and the
/// sequence is nondecreasing within `1e-6`; excluded if `ν_m ≤ 0.95` and
/// `|ν_m − ν_{m−1}| < 0.005`; otherwise inconclusive.
pub fn classify<T: Real>(norms: &[T]) -> (Classification, T) {
    let Some(&last) = norms.last() else {
        return (Classification::Inconclusive, -T::one());
    };
    let attained = lit::<T>(ATTAINED_THRESHOLD);
    let excluded = lit::<T>(EXCLUDED_THRESHOLD);
    let margin = (last - attained).max(excluded - last);
    let monotone = norms
        .windows(2)
        .all(|w| w[1] >= w[0] - lit(MONOTONE_SLACK));
    let stable = match norms {
        [.., prev, last] => crate::scalar::abs(*last - *prev) < lit(DRIFT_LIMIT),
        _ => false,
    };
    let class = if last >= attained && monotone {
        Classification::InCharacterSpace
    } else if last <= excluded && stable {
        Classification::Excluded
    } else {
        Classification::Inconclusive
    };
    (class, margin)
}

/// Group symbol peaking at `t`: a Gaussian bump centred on the nearest grid
/// point, or the tail for `t = ∞`.
pub fn group_peak_symbol<T: Real>(
    model: &GroupModel<T>,
    t: Coordinate<T>,
    widths: &PairWidths<T>,
) -> Result<SymbolSpec<T>> {
    match t {
        Coordinate::Infinity => Ok(SymbolSpec::tail(widths.group_tail)),
        Coordinate::Finite(t) => {
            let center = model.group_point(model.nearest_group_index(t));
            check_peak(model.group_spacing(), widths.group_bump)?;
            Ok(SymbolSpec::gauss(center, widths.group_bump))
        }
    }
}

/// Dual symbol peaking at `γ ∈ Γ̇⁺`.
pub fn dual_peak_symbol<T: Real>(
    model: &GroupModel<T>,
    gamma: Coordinate<T>,
    widths: &PairWidths<T>,
) -> Result<SymbolSpec<T>> {
    match gamma {
        Coordinate::Infinity => Ok(SymbolSpec::dual_tail(widths.dual_tail)),
        Coordinate::Finite(gamma) => {
            let k = model.nearest_dual_index(gamma);
            if !model.is_positive(k) {
                return Err(Error::Precondition(format!("γ = {gamma} is not in Γ⁺")));
            }
            check_peak(model.dual_spacing(), widths.dual_bump)?;
            Ok(SymbolSpec::dual_gauss(model.dual_point(k), widths.dual_bump))
        }
    }
}

fn check_peak<T: Real>(step: T, width: T) -> Result<()> {
    let s = step / width;
    if (-(s * s)).exp() >= T::one() - lit(PEAK_GAP) {
        return Err(Error::Precondition(format!(
            "bump width {width} is too wide for grid step {step} to peak strictly"
        )));
    }
    Ok(())
}

/// `‖T_φ D_θ‖` on one model with symbols peaking at `point`.
pub fn pair_norm<T: Real>(
    model: &GroupModel<T>,
    point: &PairPoint<T>,
    widths: &PairWidths<T>,
    method: NormMethod,
) -> Result<NormEstimate<T>> {
    let phi = group_peak_symbol(model, point.t, widths)?;
    let theta = dual_peak_symbol(model, point.gamma, widths)?;
    let t = toeplitz_operator(model, &phi)?;
    let d = fourier_multiplier(model, &theta)?;
    Ok(operator_norm(&t.compose(&d)?, method))
}

pub fn power_pair_test<T: Real>(
    base: &GroupModel<T>,
    point: &PairPoint<T>,
    widths: &PairWidths<T>,
    schedule: &[usize],
    method: NormMethod,
) -> Result<CharacterVerdict<T>> {
    if schedule.len() < MIN_LEVELS {
        return Err(Error::InsufficientEvidence {
            levels: schedule.len(),
        });
    }
    if base.is_compact() {
        return Err(Error::Unsupported {
            what: "pair test".into(),
            model: base.to_string(),
        });
    }
    let norms = schedule_models(base, schedule)?
        .iter()
        .map(|model| pair_norm(model, point, widths, method))
        .collect::<Result<Vec<_>>>()?;
    let values: Vec<T> = norms.iter().map(|n| n.value).collect();
    let (classification, margin) = classify(&values);
    Ok(CharacterVerdict {
        point: *point,
        truncation_levels: schedule.to_vec(),
        norms,
        classification,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Coordinate::{Finite, Infinity};

    fn base() -> GroupModel<f64> {
        GroupModel::line(256, std::f64::consts::PI / 32.0).unwrap()
    }

    const SCHEDULE: [usize; 3] = [256, 512, 1024];

    fn verdict(t: Coordinate<f64>, gamma: Coordinate<f64>) -> CharacterVerdict<f64> {
        power_pair_test(
            &base(),
            &PairPoint::new(t, gamma),
            &PairWidths::default(),
            &SCHEDULE,
            NormMethod::Svd,
        )
        .unwrap()
    }

    #[test]
    fn finite_pair_is_excluded() {
        let v = verdict(Finite(0.0), Finite(1.0));
        assert_eq!(v.classification, Classification::Excluded);
        let last = v.norms.last().unwrap().value;
        assert!(last <= 0.99);
        let prev = v.norms[1].value;
        assert!((last - prev).abs() < 0.005);
        assert!(v.matches_expected_shape());
    }

    #[test]
    fn points_at_infinity_are_attained() {
        for (t, gamma) in [(Finite(0.0), Infinity), (Infinity, Finite(2.0)), (Infinity, Infinity)] {
            let v = verdict(t, gamma);
            assert_eq!(v.classification, Classification::InCharacterSpace, "{v:?}");
            assert!(v.norms.last().unwrap().value >= 0.98);
            assert!(v.margin > 0.0);
        }
    }

    #[test]
    fn short_schedule_is_insufficient() {
        let err = power_pair_test(
            &base(),
            &PairPoint::new(Finite(0.0), Finite(1.0)),
            &PairWidths::default(),
            &[256, 512],
            NormMethod::Svd,
        );
        assert!(matches!(err, Err(Error::InsufficientEvidence { levels: 2 })));
    }

    #[test]
    fn decision_rule() {
        assert_eq!(classify(&[0.97, 0.98, 0.99]).0, Classification::InCharacterSpace);
        assert_eq!(classify(&[0.99, 0.98, 0.985]).0, Classification::Inconclusive);
        assert_eq!(classify(&[0.4, 0.4, 0.4]).0, Classification::Excluded);
        assert_eq!(classify(&[0.4, 0.4, 0.41]).0, Classification::Inconclusive);
        assert_eq!(classify(&[0.96, 0.96, 0.96]).0, Classification::Inconclusive);
        let (_, margin) = classify(&[0.5_f64, 0.5, 0.5]);
        assert!((margin - 0.45).abs() < 1e-15);
    }

    #[test]
    fn peaking_symbols() {
        let m = base();
        let wide = PairWidths {
            group_bump: 1e4,
            ..PairWidths::default()
        };
        assert!(group_peak_symbol(&m, Finite(0.0), &wide).is_err());
        assert!(dual_peak_symbol(&m, Finite(-1.0), &PairWidths::default()).is_err());
        let phi = group_peak_symbol(&m, Finite(0.05), &PairWidths::default()).unwrap();
        let values = phi.evaluate_group(&m).unwrap();
        let peak = values.values().iter().filter(|z| z.re == 1.0).count();
        assert_eq!(peak, 1);
        assert!(values.values().iter().all(|z| z.re == 1.0 || z.re < 1.0 - 1e-6));
    }

    #[test]
    fn coordinate_text() {
        assert_eq!("inf".parse::<Coordinate<f64>>().unwrap(), Infinity);
        assert_eq!("2.5".parse::<Coordinate<f64>>().unwrap(), Finite(2.5));
        assert!("x".parse::<Coordinate<f64>>().is_err());
        assert_eq!(PairPoint::new(Finite(1.0), Infinity).to_string(), "(1, inf)");
    }
}
