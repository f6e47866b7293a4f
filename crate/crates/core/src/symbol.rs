//! Closed-form symbol families evaluable on the group grid or on `Γ⁺`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::{DualGridFunction, GridFunction, GroupModel};
use crate::scalar::{lit, to_f64, Real};
use crate::text::Params;

/// Gaussian bumps are cut to exactly zero below this value, and any symbol
/// whose analytic tail exceeds it at the grid boundary is rejected.
pub const TAIL_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Group,
    Dual,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Group => "group",
            Side::Dual => "dual",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec<T> {
    /// Constant `c`; on the dual side it is `c·χ_{Γ⁺}`.
    Constant { side: Side, value: Complex<T> },
    /// `exp(-((x - center)/width)²)`, cut to zero below [`TAIL_CUTOFF`].
    Gauss { side: Side, center: T, width: T },
    /// Group side `1 - 1/(1 + (t/w)²)`; dual side `ξ/(ξ + w)` on `ξ ≥ 0`. Both tend to 1 at ∞.
    Tail { side: Side, width: T },
    /// Trigonometric polynomial `Σ c_n e^{inθ}` on the circle.
    Trig { coefficients: BTreeMap<i64, Complex<T>> },
}

impl<T: Real> SymbolSpec<T> {
    pub fn gauss(center: T, width: T) -> Self {
        SymbolSpec::Gauss {
            side: Side::Group,
            center,
            width,
        }
    }

    pub fn dual_gauss(center: T, width: T) -> Self {
        SymbolSpec::Gauss {
            side: Side::Dual,
            center,
            width,
        }
    }

    pub fn tail(width: T) -> Self {
        SymbolSpec::Tail {
            side: Side::Group,
            width,
        }
    }

    pub fn dual_tail(width: T) -> Self {
        SymbolSpec::Tail {
            side: Side::Dual,
            width,
        }
    }

    pub fn constant(value: Complex<T>) -> Self {
        SymbolSpec::Constant {
            side: Side::Group,
            value,
        }
    }

    pub fn dual_constant(value: Complex<T>) -> Self {
        SymbolSpec::Constant {
            side: Side::Dual,
            value,
        }
    }

    pub fn trig(terms: impl IntoIterator<Item = (i64, Complex<T>)>) -> Self {
        let mut coefficients = BTreeMap::new();
        for (n, c) in terms {
            *coefficients
                .entry(n)
                .or_insert_with(|| Complex::new(T::zero(), T::zero())) += c;
        }
        coefficients.retain(|_, c: &mut Complex<T>| c.norm_sqr() != T::zero());
        SymbolSpec::Trig { coefficients }
    }

    /// `e^{inθ}`.
    pub fn character(n: i64) -> Self {
        Self::trig([(n, Complex::new(T::one(), T::zero()))])
    }

    /// `2 cos θ`.
    pub fn two_cos() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::trig([(1, one), (-1, one)])
    }

    pub fn side(&self) -> Side {
        match self {
            SymbolSpec::Constant { side, .. }
            | SymbolSpec::Gauss { side, .. }
            | SymbolSpec::Tail { side, .. } => *side,
            SymbolSpec::Trig { .. } => Side::Group,
        }
    }

    /// Value at the point at infinity of the one-point compactification.
    /// `None` for circle-only families, where the group is already compact.
    pub fn value_at_infinity(&self) -> Option<Complex<T>> {
        match self {
            SymbolSpec::Constant { value, .. } => Some(*value),
            SymbolSpec::Gauss { .. } => Some(Complex::new(T::zero(), T::zero())),
            SymbolSpec::Tail { .. } => Some(Complex::new(T::one(), T::zero())),
            SymbolSpec::Trig { .. } => None,
        }
    }

    /// Closed-form upper bound for `‖·‖∞`.
    pub fn sup_bound(&self) -> T {
        match self {
            SymbolSpec::Constant { value, .. } => value.norm_sqr().sqrt(),
            SymbolSpec::Gauss { .. } | SymbolSpec::Tail { .. } => T::one(),
            SymbolSpec::Trig { coefficients } => coefficients
                .values()
                .fold(T::zero(), |acc, c| acc + c.norm_sqr().sqrt()),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            SymbolSpec::Constant { side, value } => SymbolSpec::Constant {
                side: *side,
                value: value.conj(),
            },
            SymbolSpec::Trig { coefficients } => {
                Self::trig(coefficients.iter().map(|(n, c)| (-n, c.conj())))
            }
            real => real.clone(),
        }
    }

    /// Product inside the closed-form algebra, when it stays there:
    /// trigonometric polynomials multiply exactly, constants scale.
    pub fn product(&self, other: &Self) -> Option<Self> {
        use SymbolSpec::*;
        match (self, other) {
            (Trig { coefficients: a }, Trig { coefficients: b }) => {
                let terms = a
                    .iter()
                    .flat_map(|(m, x)| b.iter().map(move |(n, y)| (m + n, x * y)));
                Some(Self::trig(terms.collect::<Vec<_>>()))
            }
            (Constant { side: s, value: a }, Constant { side: t, value: b }) if s == t => {
                Some(Constant {
                    side: *s,
                    value: a * b,
                })
            }
            (Constant { side: Side::Group, value }, Trig { coefficients })
            | (Trig { coefficients }, Constant { side: Side::Group, value }) => {
                Some(Self::trig(coefficients.iter().map(|(n, c)| (*n, c * value)).collect::<Vec<_>>()))
            }
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidModel(format!("symbol `{self}`: {what}")));
        match self {
            SymbolSpec::Gauss { center, width, .. } => {
                if !center.is_finite() {
                    return bad("center must be finite");
                }
                if !(*width > T::zero()) || !width.is_finite() {
                    return bad("width must be positive");
                }
            }
            SymbolSpec::Tail { width, .. } => {
                if !(*width > T::zero()) || !width.is_finite() {
                    return bad("width must be positive");
                }
            }
            SymbolSpec::Constant { value, .. } => {
                if !(value.re.is_finite() && value.im.is_finite()) {
                    return bad("value must be finite");
                }
            }
            SymbolSpec::Trig { coefficients } => {
                if coefficients.values().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
                    return bad("coefficients must be finite");
                }
            }
        }
        Ok(())
    }

    fn side_error(&self, expected: Side) -> Error {
        Error::SideMismatch {
            symbol: self.to_string(),
            expected: expected.as_str(),
            found: self.side().as_str(),
        }
    }

    fn unsupported(&self, model: &GroupModel<T>) -> Error {
        Error::Unsupported {
            what: format!("symbol `{self}`"),
            model: model.to_string(),
        }
    }

    fn aliasing(&self, tail: T) -> Error {
        Error::Aliasing {
            symbol: self.to_string(),
            tail: to_f64(tail),
        }
    }

    /// Samples on the group grid.
    pub fn evaluate_group(&self, model: &GroupModel<T>) -> Result<GridFunction<T>> {
        self.validate()?;
        if self.side() != Side::Group {
            return Err(self.side_error(Side::Group));
        }
        let cutoff = lit::<T>(TAIL_CUTOFF);
        match self {
            SymbolSpec::Constant { value, .. } => GridFunction::from_fn(*model, |_| *value),
            SymbolSpec::Gauss { center, width, .. } => {
                if model.is_compact() {
                    return Err(self.unsupported(model));
                }
                // distance from the centre to the nearer end of the periodized window
                let half = model.period() / lit(2.0);
                let reach = half - crate::scalar::abs(*center);
                let tail = if reach > T::zero() {
                    gaussian(reach / *width)
                } else {
                    T::one()
                };
                if tail > cutoff {
                    return Err(self.aliasing(tail));
                }
                GridFunction::from_fn(*model, |t| {
                    real(truncated(gaussian((t - *center) / *width), cutoff))
                })
            }
            SymbolSpec::Tail { width, .. } => {
                if model.is_compact() {
                    return Err(self.unsupported(model));
                }
                GridFunction::from_fn(*model, |t| {
                    let s = t / *width;
                    let s2 = s * s;
                    real(s2 / (T::one() + s2))
                })
            }
            SymbolSpec::Trig { coefficients } => {
                let GroupModel::Circle { modes, samples } = *model else {
                    return Err(self.unsupported(model));
                };
                // quadrature of the represented modes is exact only below this degree
                let limit = (samples - modes) as i64;
                if let Some((_, c)) = coefficients.iter().find(|(n, _)| n.abs() >= limit) {
                    return Err(self.aliasing(c.norm_sqr().sqrt()));
                }
                let values = (0..samples)
                    .map(|j| {
                        coefficients.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (n, c)| {
                            acc + c * crate::scalar::root_of_unity::<T>(-(n * j as i64), samples)
                        })
                    })
                    .collect();
                GridFunction::new(*model, values)
            }
        }
    }

    /// Samples on the dual grid, extended by zero off `Γ⁺`.
    pub fn evaluate_dual(&self, model: &GroupModel<T>) -> Result<DualGridFunction<T>> {
        self.validate()?;
        if self.side() != Side::Dual {
            return Err(self.side_error(Side::Dual));
        }
        let cutoff = lit::<T>(TAIL_CUTOFF);
        let zero = Complex::new(T::zero(), T::zero());
        let top = model.dual_point(model.dual_len() - 1);
        let on_positive = |f: &dyn Fn(T) -> Complex<T>| {
            DualGridFunction::from_fn(*model, |xi| if xi >= T::zero() { f(xi) } else { zero })
        };
        match self {
            SymbolSpec::Constant { value, .. } => on_positive(&|_| *value),
            SymbolSpec::Gauss { center, width, .. } => {
                let reach = top - *center;
                let tail = if reach > T::zero() {
                    gaussian(reach / *width)
                } else {
                    T::one()
                };
                if tail > cutoff {
                    return Err(self.aliasing(tail));
                }
                on_positive(&|xi| real(truncated(gaussian((xi - *center) / *width), cutoff)))
            }
            SymbolSpec::Tail { width, .. } => on_positive(&|xi| real(xi / (xi + *width))),
            SymbolSpec::Trig { .. } => Err(self.side_error(Side::Dual)),
        }
    }
}

fn gaussian<T: Real>(s: T) -> T {
    (-(s * s)).exp()
}

fn truncated<T: Real>(x: T, cutoff: T) -> T {
    if x < cutoff {
        T::zero()
    } else {
        x
    }
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

impl<T: Real> fmt::Display for SymbolSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = |side: &Side| if *side == Side::Dual { "d" } else { "" };
        match self {
            SymbolSpec::Constant { side, value } => {
                write!(f, "{}const:re={},im={}", prefix(side), value.re, value.im)
            }
            SymbolSpec::Gauss {
                side,
                center,
                width,
            } => write!(f, "{}gauss:center={center},width={width}", prefix(side)),
            SymbolSpec::Tail { side, width } => write!(f, "{}tail:width={width}", prefix(side)),
            SymbolSpec::Trig { coefficients } => {
                write!(f, "trig:")?;
                let mut first = true;
                for (n, c) in coefficients {
                    for (tag, part) in [("r", c.re), ("i", c.im)] {
                        if part != T::zero() {
                            if !first {
                                write!(f, ",")?;
                            }
                            write!(f, "{tag}{n}={part}")?;
                            first = false;
                        }
                    }
                }
                Ok(())
            }
        }
    }
}

impl<T: Real> FromStr for SymbolSpec<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut params = Params::parse(s)?;
        let (side, family) = match params.family.strip_prefix('d') {
            Some(rest) if matches!(rest, "const" | "gauss" | "tail") => (Side::Dual, rest),
            _ => (Side::Group, params.family),
        };
        let spec = match family {
            "const" => SymbolSpec::Constant {
                side,
                value: Complex::new(params.require("re")?, params.take("im")?.unwrap_or(T::zero())),
            },
            "gauss" => SymbolSpec::Gauss {
                side,
                center: params.require("center")?,
                width: params.require("width")?,
            },
            "tail" => SymbolSpec::Tail {
                side,
                width: params.require("width")?,
            },
            "trig" => {
                let keys: Vec<(String, String)> = params
                    .remaining()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect();
                let mut terms = Vec::new();
                for (key, value) in keys {
                    let (imag, mode) = match key.split_at(1) {
                        ("r", mode) => (false, mode),
                        ("i", mode) => (true, mode),
                        _ => return Err(params.error(&format!("unknown key `{key}`"))),
                    };
                    let mode: i64 = mode
                        .parse()
                        .map_err(|_| params.error(&format!("bad mode in `{key}`")))?;
                    let part: T = value
                        .parse()
                        .map_err(|_| params.error(&format!("bad value for `{key}`")))?;
                    let c = if imag {
                        Complex::new(T::zero(), part)
                    } else {
                        Complex::new(part, T::zero())
                    };
                    terms.push((mode, c));
                    params.mark_used(&key);
                }
                Self::trig(terms)
            }
            other => return Err(params.error(&format!("unknown symbol family `{other}`"))),
        };
        params.finish()?;
        spec.validate().map_err(|e| crate::text::parse_error(s, &e.to_string()))?;
        Ok(spec)
    }
}

/// Trigonometric-polynomial coefficient lookup, used by tests and assembly checks.
pub fn trig_coefficient<T: Real>(spec: &SymbolSpec<T>, n: i64) -> Complex<T> {
    match spec {
        SymbolSpec::Trig { coefficients } => coefficients
            .get(&n)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero())),
        SymbolSpec::Constant {
            side: Side::Group,
            value,
        } if n == 0 => *value,
        _ => Complex::new(T::zero(), T::zero()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> GroupModel<f64> {
        GroupModel::line(256, 0.1).unwrap()
    }

    #[test]
    fn gaussian_bump_on_line() {
        let model = line();
        let phi = SymbolSpec::gauss(0.0, 1.0).evaluate_group(&model).unwrap();
        for (j, z) in phi.values().iter().enumerate() {
            let t = model.group_point(j);
            let expected = (-t * t).exp();
            let expected = if expected < TAIL_CUTOFF { 0.0 } else { expected };
            assert!((z.re - expected).abs() < 1e-15 && z.im == 0.0);
        }
        assert_eq!(SymbolSpec::gauss(0.0, 1.0).value_at_infinity().unwrap().re, 0.0);
    }

    #[test]
    fn tail_peaks_only_at_infinity() {
        let model = line();
        let spec = SymbolSpec::tail(2.0);
        let phi = spec.evaluate_group(&model).unwrap();
        assert!(phi.values().iter().all(|z| z.re < 1.0 && z.re >= 0.0));
        assert_eq!(spec.value_at_infinity().unwrap().re, 1.0);
        // limit toward the boundary within the analytic tail bound w²/t²
        let edge = model.group_point(0);
        let gap = 1.0 - phi.values()[0].re;
        assert!(gap <= (2.0 / edge).powi(2));
    }

    #[test]
    fn dual_tail_on_positive_half() {
        let model = line();
        let spec = SymbolSpec::dual_tail(0.5);
        let theta = spec.evaluate_dual(&model).unwrap();
        for (k, z) in theta.values().iter().enumerate() {
            let xi = model.dual_point(k);
            let expected = if xi >= 0.0 { xi / (xi + 0.5) } else { 0.0 };
            assert!((z.re - expected).abs() < 1e-15);
        }
        assert_eq!(theta.values()[model.hardy_offset()].re, 0.0);
    }

    #[test]
    fn side_errors() {
        let model = line();
        assert!(matches!(
            SymbolSpec::dual_tail(1.0).evaluate_group(&model),
            Err(Error::SideMismatch { .. })
        ));
        assert!(matches!(
            SymbolSpec::gauss(0.0, 1.0).evaluate_dual(&model),
            Err(Error::SideMismatch { .. })
        ));
        let circle = GroupModel::<f64>::circle_square(8).unwrap();
        assert!(matches!(
            SymbolSpec::gauss(0.0, 1.0).evaluate_group(&circle),
            Err(Error::Unsupported { .. })
        ));
        assert!(matches!(
            SymbolSpec::<f64>::two_cos().evaluate_group(&model),
            Err(Error::Unsupported { .. })
        ));
    }

    #[test]
    fn aliasing_rejections() {
        let model = line();
        // window is [-12.8, 12.8): a bump at 10 of width 1 leaks exp(-7.84) at the edge
        assert!(matches!(
            SymbolSpec::gauss(10.0, 1.0).evaluate_group(&model),
            Err(Error::Aliasing { .. })
        ));
        // dual window tops out near π/h ≈ 31.4
        assert!(matches!(
            SymbolSpec::dual_gauss(30.0, 1.0).evaluate_dual(&model),
            Err(Error::Aliasing { .. })
        ));
        assert!(SymbolSpec::dual_gauss(20.0, 1.0).evaluate_dual(&model).is_ok());
        let circle = GroupModel::<f64>::circle_square(4).unwrap();
        assert!(SymbolSpec::<f64>::character(4).evaluate_group(&circle).is_ok());
        assert!(matches!(
            SymbolSpec::<f64>::character(5).evaluate_group(&circle),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn trig_algebra() {
        let one = Complex::new(1.0, 0.0);
        let e1 = SymbolSpec::<f64>::character(1);
        let e_1 = SymbolSpec::<f64>::character(-1);
        assert_eq!(e1.product(&e_1).unwrap(), SymbolSpec::trig([(0, one)]));
        assert_eq!(e1.product(&e1).unwrap(), SymbolSpec::character(2));
        assert_eq!(e1.conj(), e_1);
        let sq = SymbolSpec::<f64>::two_cos().product(&SymbolSpec::two_cos()).unwrap();
        assert_eq!(trig_coefficient(&sq, 0), Complex::new(2.0, 0.0));
        assert_eq!(trig_coefficient(&sq, 2), one);
        assert!(SymbolSpec::gauss(0.0, 1.0).product(&e1).is_none());
    }

    #[test]
    fn text_forms() {
        let cases = [
            "gauss:center=0,width=1",
            "dgauss:center=3,width=0.5",
            "tail:width=1",
            "dtail:width=0.25",
            "const:re=1,im=0",
            "dconst:re=0.5,im=-2",
            "trig:r-1=1,r1=1",
            "trig:i1=1",
            "trig:",
        ];
        for s in cases {
            let spec: SymbolSpec<f64> = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert!("gauss:center=0".parse::<SymbolSpec<f64>>().is_err());
        assert!("gauss:center=0,width=-1".parse::<SymbolSpec<f64>>().is_err());
        assert!("wave:width=1".parse::<SymbolSpec<f64>>().is_err());
        assert!("trig:x1=1".parse::<SymbolSpec<f64>>().is_err());
        assert!("tail:width=1,center=2".parse::<SymbolSpec<f64>>().is_err());
    }
}
