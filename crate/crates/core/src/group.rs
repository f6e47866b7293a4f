//! Discretized locally compact abelian groups: the circle and a periodized
//! line, with their Haar weights, dual grids and the Fourier transform pair.
//!
//! Conventions:
//!
//! * characters are `γ(t) = e^{iξt}` (`ξ = n` on the circle),
//! * `F f(ξ) = ∫ e^{-iξt} f(t) dλ(t)` and `F⁻¹ g(t) = ∫ e^{iξt} g(ξ) dλ̃(ξ)`,
//! * circle: `dλ = dθ/2π` (weight `1/N`), counting measure on the modes `-M..=M`,
//! * line: `dλ = dt` (weight `h`), `dλ̃ = dξ/2π` (weight `Δξ/2π = 1/(N h)`).
//!
//! The line grid is `t_j = (j - N/2) h` and its dual `ξ_k = -π/h + k Δξ`; the
//! Nyquist bin `ξ_0 = -π/h` therefore sits on the negative half.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::{from_i64, from_usize, root_of_unity, to_f64, Real};
use crate::text::Params;

/// Grid coordinate tolerance for "is this value a grid point", in units of the spacing.
const GRID_SNAP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GroupModel<T> {
    /// `𝕋` sampled at `N` equispaced angles, modes `-M..=M` represented.
    Circle { modes: usize, samples: usize },
    /// `ℝ` periodized to circumference `L = N h`.
    Line { samples: usize, spacing: T },
}

impl<T: Real> GroupModel<T> {
    pub fn circle(modes: usize, samples: usize) -> Result<Self> {
        if modes < 2 {
            return Err(Error::InvalidModel(format!("circle needs M >= 2, got {modes}")));
        }
        if samples < 2 * modes + 1 {
            return Err(Error::InvalidModel(format!(
                "circle needs N >= 2M+1 = {}, got {samples}",
                2 * modes + 1
            )));
        }
        Ok(GroupModel::Circle { modes, samples })
    }

    /// Circle with `N = 2M + 1`, the only size on which the transform pair is unitary
    /// for arbitrary sample vectors.
    pub fn circle_square(modes: usize) -> Result<Self> {
        Self::circle(modes, 2 * modes + 1)
    }

    pub fn line(samples: usize, spacing: T) -> Result<Self> {
        if samples < 8 || samples % 2 != 0 {
            return Err(Error::InvalidModel(format!(
                "line needs an even N >= 8, got {samples}"
            )));
        }
        if !(spacing > T::zero()) || !spacing.is_finite() {
            return Err(Error::InvalidModel(format!("line needs h > 0, got {spacing}")));
        }
        Ok(GroupModel::Line { samples, spacing })
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, GroupModel::Circle { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GroupModel::Circle { .. } => "circle",
            GroupModel::Line { .. } => "line",
        }
    }

    pub fn sample_count(&self) -> usize {
        match *self {
            GroupModel::Circle { samples, .. } | GroupModel::Line { samples, .. } => samples,
        }
    }

    pub fn dual_len(&self) -> usize {
        match *self {
            GroupModel::Circle { modes, .. } => 2 * modes + 1,
            GroupModel::Line { samples, .. } => samples,
        }
    }

    /// Number of dual bins in `Γ⁺`.
    pub fn hardy_dim(&self) -> usize {
        match *self {
            GroupModel::Circle { modes, .. } => modes + 1,
            GroupModel::Line { samples, .. } => samples / 2,
        }
    }

    /// `Γ⁺` occupies the dual indices `hardy_offset()..dual_len()`.
    pub fn hardy_offset(&self) -> usize {
        self.dual_len() - self.hardy_dim()
    }

    /// Whether sample vectors and dual vectors have the same length, i.e. the
    /// transform pair is a bijection.
    pub fn is_square(&self) -> bool {
        self.sample_count() == self.dual_len()
    }

    pub fn group_weight(&self) -> T {
        match *self {
            GroupModel::Circle { samples, .. } => T::one() / from_usize(samples),
            GroupModel::Line { spacing, .. } => spacing,
        }
    }

    pub fn dual_weight(&self) -> T {
        match *self {
            GroupModel::Circle { .. } => T::one(),
            GroupModel::Line { samples, spacing } => T::one() / (from_usize::<T>(samples) * spacing),
        }
    }

    pub fn group_spacing(&self) -> T {
        match *self {
            GroupModel::Circle { samples, .. } => T::two_pi() / from_usize(samples),
            GroupModel::Line { spacing, .. } => spacing,
        }
    }

    pub fn dual_spacing(&self) -> T {
        match *self {
            GroupModel::Circle { .. } => T::one(),
            GroupModel::Line { samples, spacing } => T::two_pi() / (from_usize::<T>(samples) * spacing),
        }
    }

    /// Circumference of the sampled period: `2π` or `L = N h`.
    pub fn period(&self) -> T {
        from_usize::<T>(self.sample_count()) * self.group_spacing()
    }

    /// Integer position of sample `j` in units of the spacing (`j` or `j - N/2`).
    pub fn group_offset(&self, j: usize) -> i64 {
        match *self {
            GroupModel::Circle { .. } => j as i64,
            GroupModel::Line { samples, .. } => j as i64 - (samples / 2) as i64,
        }
    }

    /// Integer frequency of dual bin `k` in units of the dual spacing.
    pub fn dual_offset(&self, k: usize) -> i64 {
        match *self {
            GroupModel::Circle { modes, .. } => k as i64 - modes as i64,
            GroupModel::Line { samples, .. } => k as i64 - (samples / 2) as i64,
        }
    }

    pub fn group_point(&self, j: usize) -> T {
        from_i64::<T>(self.group_offset(j)) * self.group_spacing()
    }

    pub fn dual_point(&self, k: usize) -> T {
        from_i64::<T>(self.dual_offset(k)) * self.dual_spacing()
    }

    pub fn group_points(&self) -> Vec<T> {
        (0..self.sample_count()).map(|j| self.group_point(j)).collect()
    }

    pub fn dual_points(&self) -> Vec<T> {
        (0..self.dual_len()).map(|k| self.dual_point(k)).collect()
    }

    /// Dual index holding the integer frequency `m`, if represented.
    pub fn dual_index_of_offset(&self, m: i64) -> Option<usize> {
        let k = m + self.dual_offset_origin();
        (0..self.dual_len() as i64).contains(&k).then_some(k as usize)
    }

    fn dual_offset_origin(&self) -> i64 {
        -self.dual_offset(0)
    }

    pub fn is_positive(&self, k: usize) -> bool {
        k >= self.hardy_offset()
    }

    /// `e^{-iξ_k t_j}`, with the integer phase reduced modulo `N` before scaling.
    pub fn dual_character_conj(&self, k: usize, j: usize) -> Complex<T> {
        root_of_unity(self.dual_offset(k) * self.group_offset(j), self.sample_count())
    }

    pub fn nearest_group_index(&self, t: T) -> usize {
        let n = self.sample_count() as i64;
        let pos = (t / self.group_spacing()).round();
        let offset = to_f64(pos) as i64;
        let j = match self {
            GroupModel::Circle { .. } => offset.rem_euclid(n),
            GroupModel::Line { .. } => (offset + n / 2).clamp(0, n - 1),
        };
        j as usize
    }

    pub fn nearest_dual_index(&self, xi: T) -> usize {
        let pos = to_f64((xi / self.dual_spacing()).round()) as i64;
        let k = pos + self.dual_offset_origin();
        k.clamp(0, self.dual_len() as i64 - 1) as usize
    }

    /// Index of `t` on the group grid; errors when `t` is not a grid point.
    pub fn group_index_of(&self, t: T) -> Result<usize> {
        let scaled = to_f64(t / self.group_spacing());
        let off_grid = Error::OffGrid {
            what: "group coordinate",
            value: to_f64(t),
        };
        if !scaled.is_finite() || (scaled - scaled.round()).abs() > GRID_SNAP_TOL {
            return Err(off_grid);
        }
        let offset = scaled.round() as i64;
        let n = self.sample_count() as i64;
        match self {
            GroupModel::Circle { .. } => Ok(offset.rem_euclid(n) as usize),
            GroupModel::Line { .. } => {
                let j = offset + n / 2;
                if (0..n).contains(&j) {
                    Ok(j as usize)
                } else {
                    Err(off_grid)
                }
            }
        }
    }

    /// Index of `ξ` on the dual grid; errors when `ξ` is not a represented grid point.
    pub fn dual_index_of(&self, xi: T) -> Result<usize> {
        let scaled = to_f64(xi / self.dual_spacing());
        let off_grid = Error::OffGrid {
            what: "dual coordinate",
            value: to_f64(xi),
        };
        if !scaled.is_finite() || (scaled - scaled.round()).abs() > GRID_SNAP_TOL {
            return Err(off_grid);
        }
        self.dual_index_of_offset(scaled.round() as i64).ok_or(off_grid)
    }

    /// Unitary matrix of the transform between the sample and dual coordinate
    /// systems, `U[k][j] = e^{-iξ_k t_j} / √N`; rows are orthonormal.
    pub fn unitary_dft(&self) -> nalgebra::DMatrix<Complex<T>> {
        let scale = T::one() / from_usize::<T>(self.sample_count()).sqrt();
        nalgebra::DMatrix::from_fn(self.dual_len(), self.sample_count(), |k, j| {
            self.dual_character_conj(k, j) * scale
        })
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl<T: Real> fmt::Display for GroupModel<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupModel::Circle { modes, samples } => write!(f, "circle:M={modes},N={samples}"),
            GroupModel::Line { samples, spacing } => write!(f, "line:N={samples},h={spacing}"),
        }
    }
}

impl<T: Real> FromStr for GroupModel<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut params = Params::parse(s)?;
        let model = match params.family {
            "circle" => {
                let modes: usize = params.require("M")?;
                let samples: Option<usize> = params.take("N")?;
                Self::circle(modes, samples.unwrap_or(2 * modes + 1))
            }
            "line" => {
                let samples: usize = params.require("N")?;
                let spacing: T = params.require("h")?;
                Self::line(samples, spacing)
            }
            other => return Err(params.error(&format!("unknown model family `{other}`"))),
        };
        let model = model.map_err(|e| params.error(&e.to_string()))?;
        params.finish()?;
        Ok(model)
    }
}

/// Complex samples on the group grid.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<T> {
    model: GroupModel<T>,
    values: Vec<Complex<T>>,
}

/// Complex samples on the dual grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DualGridFunction<T> {
    model: GroupModel<T>,
    values: Vec<Complex<T>>,
}

fn check_values<T: Real>(model: &GroupModel<T>, expected: usize, values: &[Complex<T>]) -> Result<()> {
    if values.len() != expected {
        return Err(Error::LengthMismatch {
            model: model.describe(),
            expected,
            found: values.len(),
        });
    }
    if let Some(i) = values.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::NonFinite(i));
    }
    Ok(())
}

macro_rules! grid_common {
    ($ty:ident, $len:ident, $point:ident, $weight:ident) => {
        impl<T: Real> $ty<T> {
            pub fn new(model: GroupModel<T>, values: Vec<Complex<T>>) -> Result<Self> {
                check_values(&model, model.$len(), &values)?;
                Ok(Self { model, values })
            }

            pub fn zeros(model: GroupModel<T>) -> Self {
                Self {
                    model,
                    values: vec![Complex::new(T::zero(), T::zero()); model.$len()],
                }
            }

            /// Samples `f` at every grid coordinate.
            pub fn from_fn(model: GroupModel<T>, f: impl Fn(T) -> Complex<T>) -> Result<Self> {
                let values = (0..model.$len()).map(|i| f(model.$point(i))).collect();
                Self::new(model, values)
            }

            pub fn model(&self) -> &GroupModel<T> {
                &self.model
            }

            pub fn values(&self) -> &[Complex<T>] {
                &self.values
            }

            pub fn into_values(self) -> Vec<Complex<T>> {
                self.values
            }

            /// Weighted L² norm.
            pub fn norm(&self) -> T {
                let sum = self.values.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
                (sum * self.model.$weight()).sqrt()
            }

            pub fn sup_norm(&self) -> T {
                self.values
                    .iter()
                    .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
            }

            /// Weighted inner product `⟨self, other⟩`, linear in the first slot.
            pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
                ensure_same_model(&self.model, &other.model)?;
                let sum = self
                    .values
                    .iter()
                    .zip(&other.values)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b.conj());
                Ok(sum * self.model.$weight())
            }

            pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
                Self {
                    model: self.model,
                    values: self.values.iter().map(|&z| f(z)).collect(),
                }
            }

            /// Pointwise product.
            pub fn mul(&self, other: &Self) -> Result<Self> {
                ensure_same_model(&self.model, &other.model)?;
                Ok(Self {
                    model: self.model,
                    values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
                })
            }

            /// `a·self + b·other`.
            pub fn axpby(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
                ensure_same_model(&self.model, &other.model)?;
                Ok(Self {
                    model: self.model,
                    values: self
                        .values
                        .iter()
                        .zip(&other.values)
                        .map(|(x, y)| x * a + y * b)
                        .collect(),
                })
            }
        }
    };
}

grid_common!(GridFunction, sample_count, group_point, group_weight);
grid_common!(DualGridFunction, dual_len, dual_point, dual_weight);

impl<T: Real> DualGridFunction<T> {
    /// Largest modulus on the negative dual bins (outside `Γ⁺`).
    pub fn negative_mass(&self) -> T {
        let offset = self.model.hardy_offset();
        self.values[..offset]
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt()))
    }

    /// Zero every bin outside `Γ⁺`.
    pub fn restrict_positive(&self) -> Self {
        let offset = self.model.hardy_offset();
        let mut values = self.values.clone();
        for z in &mut values[..offset] {
            *z = Complex::new(T::zero(), T::zero());
        }
        Self {
            model: self.model,
            values,
        }
    }
}

pub(crate) fn ensure_same_model<T: Real>(a: &GroupModel<T>, b: &GroupModel<T>) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::ModelMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}

fn fft<T: Real>(buffer: &mut [Complex<T>], inverse: bool) {
    let mut planner = FftPlanner::<T>::new();
    let plan = if inverse {
        planner.plan_fft_inverse(buffer.len())
    } else {
        planner.plan_fft_forward(buffer.len())
    };
    plan.process(buffer);
}

fn alternate<T: Real>(i: usize) -> T {
    if i % 2 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `F f(ξ_k) = Σ_j e^{-iξ_k t_j} f(t_j) w_j`.
pub fn forward_fourier<T: Real>(f: &GridFunction<T>) -> DualGridFunction<T> {
    let model = *f.model();
    let n = model.sample_count();
    let weight = model.group_weight();
    let values = match model {
        GroupModel::Circle { modes, .. } => {
            let mut buf = f.values().to_vec();
            fft(&mut buf, false);
            (-(modes as i64)..=modes as i64)
                .map(|m| buf[m.rem_euclid(n as i64) as usize] * weight)
                .collect()
        }
        GroupModel::Line { .. } => {
            // (k - N/2)(j - N/2) splits into the plain DFT kernel times (-1)^{j + k + N/2}
            let mut buf: Vec<_> = f
                .values()
                .iter()
                .enumerate()
                .map(|(j, z)| z * alternate::<T>(j))
                .collect();
            fft(&mut buf, false);
            buf.iter()
                .enumerate()
                .map(|(k, z)| z * (weight * alternate::<T>(k + n / 2)))
                .collect()
        }
    };
    DualGridFunction { model, values }
}

/// `F⁻¹ g(t_j) = Σ_k e^{iξ_k t_j} g(ξ_k) w̃_k`.
pub fn inverse_fourier<T: Real>(g: &DualGridFunction<T>) -> GridFunction<T> {
    let model = *g.model();
    let n = model.sample_count();
    let weight = model.dual_weight();
    let values = match model {
        GroupModel::Circle { modes, .. } => {
            let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
            for (k, z) in g.values().iter().enumerate() {
                let m = k as i64 - modes as i64;
                buf[m.rem_euclid(n as i64) as usize] = *z * weight;
            }
            fft(&mut buf, true);
            buf
        }
        GroupModel::Line { .. } => {
            let mut buf: Vec<_> = g
                .values()
                .iter()
                .enumerate()
                .map(|(k, z)| z * alternate::<T>(k))
                .collect();
            fft(&mut buf, true);
            buf.iter()
                .enumerate()
                .map(|(j, z)| z * (weight * alternate::<T>(j + n / 2)))
                .collect()
        }
    };
    GridFunction { model, values }
}

/// `U x` for the unitary transform `U[k][j] = e^{-iξ_k t_j}/√N`, via FFT.
pub fn unitary_forward<T: Real>(model: &GroupModel<T>, x: &[Complex<T>]) -> Vec<Complex<T>> {
    let scale = T::one() / (model.group_weight() * from_usize::<T>(model.sample_count()).sqrt());
    let f = GridFunction {
        model: *model,
        values: x.to_vec(),
    };
    forward_fourier(&f).values.into_iter().map(|z| z * scale).collect()
}

/// `Uᴴ y`, the adjoint of [`unitary_forward`].
pub fn unitary_adjoint<T: Real>(model: &GroupModel<T>, y: &[Complex<T>]) -> Vec<Complex<T>> {
    let scale = T::one() / (model.dual_weight() * from_usize::<T>(model.sample_count()).sqrt());
    let g = DualGridFunction {
        model: *model,
        values: y.to_vec(),
    };
    inverse_fourier(&g).values.into_iter().map(|z| z * scale).collect()
}
