//! Modulation and translation operators, and the explicit lower bound
//! `‖D_θ̃ M_φ S_{t₀} g‖ ≥ 1 − 3ε` for a tail symbol `φ` and a dual bump `θ`.

use num_complex::Complex;

use crate::analysis::separation::{separate_compacts, Interval};
use crate::error::{Error, Result};
use crate::group::{inverse_fourier, DualGridFunction, GridFunction, GroupModel};
use crate::operators::{extended_fourier_multiplier, multiplication_operator, Basis, CMatrix, FiniteSectionOperator};
use crate::scalar::{from_i64, lit, Real};
use crate::symbol::SymbolSpec;

/// `(S_{γ₀} f)(γ) = f(γ − γ₀)` on the dual window, indices taken modulo the
/// sample count. This is exactly `F M_{γ₀} F⁻¹`; on square models it is a
/// cyclic shift and hence unitary.
pub fn modulation_witness<T: Real>(model: &GroupModel<T>, gamma0: T) -> Result<FiniteSectionOperator<T>> {
    let shift = model.dual_offset(model.dual_index_of(gamma0)?);
    let n = model.dual_len();
    let period = model.sample_count() as i64;
    let matrix = CMatrix::from_fn(n, n, |a, b| {
        let d = model.dual_offset(a) - model.dual_offset(b) - shift;
        if d.rem_euclid(period) == 0 {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    FiniteSectionOperator::new(*model, Basis::L2Fourier, matrix)
}

/// `(S_{t₀} f)(t) = f(t − t₀)`, cyclic on the periodized line; equals
/// `F⁻¹ M_{e^{−iξt₀}} F`.
pub fn translation_witness<T: Real>(model: &GroupModel<T>, t0: T) -> Result<FiniteSectionOperator<T>> {
    if model.is_compact() {
        return Err(Error::Unsupported {
            what: "translation witness".into(),
            model: model.to_string(),
        });
    }
    let shift = model.group_offset(model.group_index_of(t0)?);
    let n = model.sample_count();
    let matrix = CMatrix::from_fn(n, n, |i, j| {
        let d = (i as i64 - j as i64 - shift).rem_euclid(n as i64);
        if d == 0 {
            Complex::new(T::one(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    FiniteSectionOperator::new(*model, Basis::L2Sample, matrix)
}

/// Dual-side multiplier `e^{−iξt₀}` whose conjugate by `F` is [`translation_witness`].
pub fn translation_multiplier<T: Real>(model: &GroupModel<T>, t0: T) -> Result<DualGridFunction<T>> {
    let shift = model.group_offset(model.group_index_of(t0)?);
    let n = model.sample_count();
    let values = (0..model.dual_len())
        .map(|k| crate::scalar::root_of_unity(model.dual_offset(k) * shift, n))
        .collect();
    DualGridFunction::new(*model, values)
}

/// Group-side character `e^{iγ₀t}` whose conjugate by `F` is [`modulation_witness`].
pub fn modulation_character<T: Real>(model: &GroupModel<T>, gamma0: T) -> Result<GridFunction<T>> {
    let shift = model.dual_offset(model.dual_index_of(gamma0)?);
    let n = model.sample_count();
    let values = (0..n)
        .map(|j| crate::scalar::root_of_unity(-(model.group_offset(j) * shift), n))
        .collect();
    GridFunction::new(*model, values)
}

#[derive(Clone, Debug)]
pub struct LowerBoundWitness<T> {
    pub epsilon: T,
    pub gamma: T,
    /// Spectral width of the packet `g`.
    pub sigma: T,
    /// `‖D_θ̃ g‖`.
    pub localized: T,
    pub k1: Interval<T>,
    pub k2: Interval<T>,
    pub t0: T,
    /// `‖D_θ̃ M_φ S_{t₀} g‖`.
    pub achieved: T,
    /// `1 − 3ε − slack`.
    pub required: T,
}

impl<T: Real> LowerBoundWitness<T> {
    pub fn passes(&self) -> bool {
        self.achieved >= self.required
    }
}

/// Parameters of the lower-bound construction.
#[derive(Clone, Copy, Debug)]
pub struct WitnessSetup<T> {
    pub gamma: T,
    /// Width of the group tail `φ`.
    pub tail_width: T,
    /// Width of the dual bump `θ` at `γ`.
    pub bump_width: T,
    pub slack: T,
}

/// Reproduce the lower bound for `(∞, γ)`:
///
/// 1. `φ` is the group tail, `K₁` the hull of grid points with `φ < 1 − ε`;
/// 2. `g` is a normalized Gaussian packet at `γ` on `Γ⁺`, narrowed until `‖D_θ̃ g‖ ≥ 1 − ε`;
/// 3. `K₂` is the smallest symmetric interval carrying `1 − ε` of `‖g‖²`;
/// 4. `t₀` separates `K₁` from `K₂`, rounded up onto the grid, and `f = S_{t₀} g`.
pub fn reproduce_lower_bound<T: Real>(
    model: &GroupModel<T>,
    setup: &WitnessSetup<T>,
    epsilon: T,
) -> Result<LowerBoundWitness<T>> {
    if model.is_compact() {
        return Err(Error::Unsupported {
            what: "translation lower bound".into(),
            model: model.to_string(),
        });
    }
    let one = T::one();
    let target = one - epsilon;
    let h = model.group_spacing();

    let phi_symbol = SymbolSpec::tail(setup.tail_width);
    let phi = phi_symbol.evaluate_group(model)?;
    let low: Vec<T> = (0..model.sample_count())
        .filter(|&j| phi.values()[j].re < target)
        .map(|j| model.group_point(j))
        .collect();
    let k1 = hull_of_points(&low)?;

    let gamma = model.dual_point(model.nearest_dual_index(setup.gamma));
    let theta_symbol = SymbolSpec::dual_gauss(gamma, setup.bump_width);
    let d = extended_fourier_multiplier(model, &theta_symbol)?;

    let mut sigma = setup.bump_width;
    let min_sigma = model.dual_spacing();
    let (g, localized) = loop {
        let g = spectral_packet(model, gamma, sigma)?;
        let dg = d.to_basis(Basis::L2Sample)?.apply(g.values())?;
        let localized = GridFunction::new(*model, dg)?.norm();
        if localized >= target {
            break (g, localized);
        }
        sigma = sigma / lit(2.0);
        if sigma < min_sigma {
            return Err(Error::Precondition(format!(
                "no packet at γ = {gamma} reaches ‖D_θ̃ g‖ ≥ {target} on `{model}`"
            )));
        }
    };

    let k2 = mass_interval(&g, target)?;
    let t0 = separate_compacts(model, &[k1], &[k2])?;
    let steps = (t0 / h).ceil();
    let t0 = steps * h;
    if k2.hi + t0 > model.period() / lit(2.0) - h {
        return Err(Error::Precondition(format!(
            "translate {t0} of {k2} wraps around `{model}`"
        )));
    }
    let shift = translation_witness(model, t0)?;
    let f = shift.apply(g.values())?;
    let m = multiplication_operator(model, &phi_symbol)?;
    let mf = m.apply(&f)?;
    let dmf = d.to_basis(Basis::L2Sample)?.apply(&mf)?;
    let achieved = GridFunction::new(*model, dmf)?.norm();

    Ok(LowerBoundWitness {
        epsilon,
        gamma,
        sigma,
        localized,
        k1,
        k2,
        t0,
        achieved,
        required: one - lit::<T>(3.0) * epsilon - setup.slack,
    })
}

fn hull_of_points<T: Real>(points: &[T]) -> Result<Interval<T>> {
    let lo = points.iter().copied().reduce(|a, b| a.min(b));
    let hi = points.iter().copied().reduce(|a, b| a.max(b));
    match (lo, hi) {
        (Some(lo), Some(hi)) => Interval::new(lo, hi),
        _ => Err(Error::Precondition("empty point set".into())),
    }
}

/// `g = F⁻¹ ĝ` with `ĝ(ξ) = exp(−((ξ − γ)/σ)²)` on `ξ ≥ 0`, normalized.
fn spectral_packet<T: Real>(model: &GroupModel<T>, gamma: T, sigma: T) -> Result<GridFunction<T>> {
    let spectrum = DualGridFunction::from_fn(*model, |xi| {
        if xi >= T::zero() {
            let s = (xi - gamma) / sigma;
            Complex::new((-(s * s)).exp(), T::zero())
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })?;
    let g = inverse_fourier(&spectrum);
    let size = g.norm();
    Ok(g.map(|z| z / size))
}

/// Smallest grid-symmetric interval `[−r, r]` carrying `fraction` of `‖g‖²`.
fn mass_interval<T: Real>(g: &GridFunction<T>, fraction: T) -> Result<Interval<T>> {
    let model = g.model();
    let h = model.group_weight();
    let total = g.norm() * g.norm();
    let max_offset = (model.sample_count() / 2) as i64 - 1;
    let mut mass = T::zero();
    for r in 0..=max_offset {
        for offset in if r == 0 { vec![0] } else { vec![-r, r] } {
            let j = (offset + (model.sample_count() / 2) as i64) as usize;
            mass = mass + g.values()[j].norm_sqr() * h;
        }
        if mass >= fraction * total {
            let radius = from_i64::<T>(r) * model.group_spacing();
            return Interval::new(-radius, radius);
        }
    }
    Err(Error::Precondition("mass does not fit in the window".into()))
}
