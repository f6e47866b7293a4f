//! Finite-section matrices for multiplication, Hardy projection, Toeplitz,
//! Fourier-multiplier and convolution operators.
//!
//! Three coordinate systems are used:
//!
//! * `l2-sample`: values at the group samples,
//! * `l2-fourier`: values at the dual bins (the whole dual window),
//! * `hardy-fourier`: values at the `Γ⁺` bins only.
//!
//! All group and dual weights are uniform, so Euclidean matrix norms are the
//! operator norms on the weighted spaces, and the change of coordinates
//! between `l2-sample` and `l2-fourier` is the unitary `U[k][j] = e^{-iξ_k t_j}/√N`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::{
    ensure_same_model, forward_fourier, inverse_fourier, unitary_adjoint, unitary_forward,
    DualGridFunction, GridFunction, GroupModel,
};
use crate::scalar::{to_f64, Real};
use crate::symbol::SymbolSpec;

pub type CMatrix<T> = DMatrix<Complex<T>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    HardyFourier,
    L2Sample,
    L2Fourier,
}

impl Basis {
    pub fn as_str(self) -> &'static str {
        match self {
            Basis::HardyFourier => "hardy-fourier",
            Basis::L2Sample => "l2-sample",
            Basis::L2Fourier => "l2-fourier",
        }
    }

    pub fn dimension<T: Real>(self, model: &GroupModel<T>) -> usize {
        match self {
            Basis::HardyFourier => model.hardy_dim(),
            Basis::L2Sample => model.sample_count(),
            Basis::L2Fourier => model.dual_len(),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hardy-fourier" => Ok(Basis::HardyFourier),
            "l2-sample" => Ok(Basis::L2Sample),
            "l2-fourier" => Ok(Basis::L2Fourier),
            _ => Err(crate::text::parse_error(s, "unknown basis")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteSectionOperator<T: Real> {
    model: GroupModel<T>,
    basis: Basis,
    matrix: CMatrix<T>,
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

impl<T: Real> FiniteSectionOperator<T> {
    pub fn new(model: GroupModel<T>, basis: Basis, matrix: CMatrix<T>) -> Result<Self> {
        let dim = basis.dimension(&model);
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::LengthMismatch {
                model: format!("{model} ({basis})"),
                expected: dim,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self {
            model,
            basis,
            matrix,
        })
    }

    pub fn identity(model: GroupModel<T>, basis: Basis) -> Self {
        let dim = basis.dimension(&model);
        Self {
            model,
            basis,
            matrix: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(model: GroupModel<T>, basis: Basis) -> Self {
        let dim = basis.dimension(&model);
        Self {
            model,
            basis,
            matrix: CMatrix::zeros(dim, dim),
        }
    }

    pub fn from_diagonal(model: GroupModel<T>, basis: Basis, diagonal: &[Complex<T>]) -> Result<Self> {
        let dim = basis.dimension(&model);
        if diagonal.len() != dim {
            return Err(Error::LengthMismatch {
                model: format!("{model} ({basis})"),
                expected: dim,
                found: diagonal.len(),
            });
        }
        let mut matrix = CMatrix::zeros(dim, dim);
        for (i, z) in diagonal.iter().enumerate() {
            matrix[(i, i)] = *z;
        }
        Ok(Self {
            model,
            basis,
            matrix,
        })
    }

    pub fn model(&self) -> &GroupModel<T> {
        &self.model
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_diagonal(&self) -> bool {
        let zero = T::zero();
        self.matrix
            .iter()
            .enumerate()
            .all(|(idx, z)| idx % (self.dim() + 1) == 0 || z.norm_sqr() == zero)
    }

    pub fn adjoint(&self) -> Self {
        Self {
            model: self.model,
            basis: self.basis,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self {
            model: self.model,
            basis: self.basis,
            matrix: self.matrix.map(|z| z * c),
        }
    }

    /// Re-express an `l2-*` operator in the other `l2-*` coordinate system.
    ///
    /// On a circle with `N > 2M + 1` the rows of `U` are orthonormal but `U` is
    /// not square, so `l2-sample → l2-fourier` compresses to the represented modes.
    pub fn to_basis(&self, target: Basis) -> Result<Self> {
        if self.basis == target {
            return Ok(self.clone());
        }
        let matrix = match (self.basis, target) {
            (Basis::L2Sample, Basis::L2Fourier) => conjugate_by_dft(&self.model, &self.matrix, false),
            (Basis::L2Fourier, Basis::L2Sample) => conjugate_by_dft(&self.model, &self.matrix, true),
            (from, to) => {
                return Err(Error::BasisMismatch {
                    left: from.as_str(),
                    right: to.as_str(),
                })
            }
        };
        Ok(Self {
            model: self.model,
            basis: target,
            matrix,
        })
    }

    /// `P A P` restricted to the `Γ⁺` bins.
    pub fn compress_to_hardy(&self) -> Result<Self> {
        let full = match self.basis {
            Basis::HardyFourier => return Ok(self.clone()),
            Basis::L2Sample => self.to_basis(Basis::L2Fourier)?,
            Basis::L2Fourier => self.clone(),
        };
        let offset = self.model.hardy_offset();
        let dim = self.model.hardy_dim();
        Ok(Self {
            model: self.model,
            basis: Basis::HardyFourier,
            matrix: full.matrix.view((offset, offset), (dim, dim)).into_owned(),
        })
    }

    /// Extend a Hardy-space operator by zero on the orthogonal complement.
    pub fn embed_in_l2(&self) -> Result<Self> {
        if self.basis != Basis::HardyFourier {
            return Err(Error::BasisMismatch {
                left: self.basis.as_str(),
                right: Basis::HardyFourier.as_str(),
            });
        }
        let offset = self.model.hardy_offset();
        let dim = self.model.hardy_dim();
        let mut matrix = CMatrix::zeros(self.model.dual_len(), self.model.dual_len());
        matrix
            .view_mut((offset, offset), (dim, dim))
            .copy_from(&self.matrix);
        Ok(Self {
            model: self.model,
            basis: Basis::L2Fourier,
            matrix,
        })
    }

    /// Bring `other` into this operator's coordinates.
    fn aligned(&self, other: &Self) -> Result<Self> {
        ensure_same_model(&self.model, &other.model)?;
        match (self.basis, other.basis) {
            (a, b) if a == b => Ok(other.clone()),
            (Basis::HardyFourier, b) | (b, Basis::HardyFourier) => Err(Error::BasisMismatch {
                left: self.basis.as_str(),
                right: if b == self.basis { Basis::HardyFourier.as_str() } else { b.as_str() },
            }),
            (target, _) => other.to_basis(target),
        }
    }

    /// `self ∘ other`, expressed in the basis of `self`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let rhs = self.aligned(other)?;
        Ok(Self {
            model: self.model,
            basis: self.basis,
            matrix: &self.matrix * &rhs.matrix,
        })
    }

    /// `a·self + b·other`, expressed in the basis of `self`.
    pub fn add(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
        let rhs = self.aligned(other)?;
        Ok(Self {
            model: self.model,
            basis: self.basis,
            matrix: self.matrix.map(|z| z * a) + rhs.matrix.map(|z| z * b),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(cone(), other, -cone::<T>())
    }

    /// Matrix-vector product in this operator's coordinates.
    pub fn apply(&self, v: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if v.len() != self.dim() {
            return Err(Error::LengthMismatch {
                model: format!("{} ({})", self.model, self.basis),
                expected: self.dim(),
                found: v.len(),
            });
        }
        let x = nalgebra::DVector::from_column_slice(v);
        Ok((&self.matrix * x).iter().copied().collect())
    }

    /// Largest entrywise modulus of `self - other` (after basis alignment).
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        let rhs = self.aligned(other)?;
        Ok((&self.matrix - &rhs.matrix)
            .iter()
            .fold(T::zero(), |acc, z| acc.max(z.norm_sqr().sqrt())))
    }

    pub fn frobenius_norm(&self) -> T {
        self.matrix
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }
}

/// `U A Uᴴ` (or `Uᴴ A U` when `inverse`), one FFT per column and per row.
fn conjugate_by_dft<T: Real>(model: &GroupModel<T>, a: &CMatrix<T>, inverse: bool) -> CMatrix<T> {
    let apply = |v: &[Complex<T>]| {
        if inverse {
            unitary_adjoint(model, v)
        } else {
            unitary_forward(model, v)
        }
    };
    let out_dim = if inverse {
        model.sample_count()
    } else {
        model.dual_len()
    };
    // left factor: columns
    let mut left = CMatrix::zeros(out_dim, a.ncols());
    for (c, col) in a.column_iter().enumerate() {
        let v: Vec<_> = col.iter().copied().collect();
        left.set_column(c, &nalgebra::DVector::from_vec(apply(&v)));
    }
    // right factor: (X Vᴴ)ᵢ = conj(V conj(Xᵢ)) row by row
    let mut out = CMatrix::zeros(out_dim, out_dim);
    for r in 0..out_dim {
        let row: Vec<_> = left.row(r).iter().map(|z| z.conj()).collect();
        for (c, z) in apply(&row).into_iter().enumerate() {
            out[(r, c)] = z.conj();
        }
    }
    out
}

/// `M_φ` in sample coordinates.
pub fn multiplication_operator<T: Real>(
    model: &GroupModel<T>,
    symbol: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let phi = symbol.evaluate_group(model)?;
    Ok(multiplication_from_samples(&phi))
}

pub fn multiplication_from_samples<T: Real>(phi: &GridFunction<T>) -> FiniteSectionOperator<T> {
    FiniteSectionOperator::from_diagonal(*phi.model(), Basis::L2Sample, phi.values())
        .expect("grid function length matches model")
}

/// `P = D_{χ_{Γ⁺}}` on the whole dual window.
pub fn hardy_projection<T: Real>(model: &GroupModel<T>) -> FiniteSectionOperator<T> {
    let diagonal: Vec<_> = (0..model.dual_len())
        .map(|k| if model.is_positive(k) { cone() } else { czero() })
        .collect();
    FiniteSectionOperator::from_diagonal(*model, Basis::L2Fourier, &diagonal)
        .expect("diagonal length matches dual grid")
}

/// Block of the band-limited section `w̃·ψ̂(ξ_a - ξ_b)`, rows and columns given
/// as dual-index ranges. Differences outside the dual window contribute zero.
fn spectral_block<T: Real>(
    spectrum: &DualGridFunction<T>,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> CMatrix<T> {
    let model = spectrum.model();
    let weight = model.dual_weight();
    let values = spectrum.values();
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let a = rows.start + i;
        let b = cols.start + j;
        let diff = model.dual_offset(a) - model.dual_offset(b);
        match model.dual_index_of_offset(diff) {
            Some(k) => values[k] * weight,
            None => czero(),
        }
    })
}

/// `M_ψ` in `l2-fourier` coordinates as the section of multiplication by the
/// band-limited function whose spectrum is `F ψ`: entry `(a, b)` is
/// `w̃·ψ̂(ξ_a − ξ_b)`, zero when the difference leaves the dual window.
///
/// Unlike `U M_ψ Uᴴ` this has no cyclic wrap-around, so it is the compression
/// of the operator on the whole group rather than on its periodization. The
/// two agree on every entry with `|a - b|` inside the window, in particular on
/// the Hardy block.
pub fn multiplication_section<T: Real>(psi: &GridFunction<T>) -> FiniteSectionOperator<T> {
    let model = *psi.model();
    let spectrum = forward_fourier(psi);
    let n = model.dual_len();
    FiniteSectionOperator {
        model,
        basis: Basis::L2Fourier,
        matrix: spectral_block(&spectrum, 0..n, 0..n),
    }
}

/// `T_φ = P M_φ` on `H²`, entries `w̃·φ̂(ξ_a − ξ_b)` for `a, b ∈ Γ⁺`
/// (on the circle: `T_{jk} = φ̂(j − k)`).
pub fn toeplitz_operator<T: Real>(
    model: &GroupModel<T>,
    symbol: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let phi = symbol.evaluate_group(model)?;
    Ok(toeplitz_from_samples(&phi))
}

pub fn toeplitz_from_samples<T: Real>(phi: &GridFunction<T>) -> FiniteSectionOperator<T> {
    let model = *phi.model();
    let spectrum = forward_fourier(phi);
    let hardy = model.hardy_offset()..model.dual_len();
    FiniteSectionOperator {
        model,
        basis: Basis::HardyFourier,
        matrix: spectral_block(&spectrum, hardy.clone(), hardy),
    }
}

/// `D_θ` on `H²`: `diag θ(γ_k)` over the `Γ⁺` bins.
pub fn fourier_multiplier<T: Real>(
    model: &GroupModel<T>,
    symbol: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let theta = symbol.evaluate_dual(model)?;
    Ok(fourier_multiplier_from_samples(&theta))
}

pub fn fourier_multiplier_from_samples<T: Real>(theta: &DualGridFunction<T>) -> FiniteSectionOperator<T> {
    let model = *theta.model();
    let diagonal = &theta.values()[model.hardy_offset()..];
    FiniteSectionOperator::from_diagonal(model, Basis::HardyFourier, diagonal)
        .expect("hardy block length matches model")
}

/// `D_θ̃` on all of `L²`, with `θ̃ = χ_{Γ⁺} θ`.
pub fn extended_fourier_multiplier<T: Real>(
    model: &GroupModel<T>,
    symbol: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let theta = symbol.evaluate_dual(model)?;
    Ok(extended_multiplier_from_samples(&theta.restrict_positive()))
}

/// `D_θ` on all of `L²` for arbitrary dual samples (no restriction to `Γ⁺`).
pub fn extended_multiplier_from_samples<T: Real>(theta: &DualGridFunction<T>) -> FiniteSectionOperator<T> {
    FiniteSectionOperator::from_diagonal(*theta.model(), Basis::L2Fourier, theta.values())
        .expect("dual grid length matches model")
}

/// `(T_k f)(t) = ∫ k(t s⁻¹) f(s) dλ(s)` in sample coordinates (cyclic on the grid).
pub fn convolution_sample_operator<T: Real>(kernel: &GridFunction<T>) -> FiniteSectionOperator<T> {
    let model = *kernel.model();
    let n = model.sample_count();
    let weight = model.group_weight();
    let values = kernel.values();
    // t_i - s_j is the grid point with offset (i - j); on the line that is index i - j + N/2
    let shift = match model {
        GroupModel::Circle { .. } => 0,
        GroupModel::Line { .. } => n / 2,
    };
    let matrix = CMatrix::from_fn(n, n, |i, j| values[(i + n + shift - j) % n] * weight);
    FiniteSectionOperator {
        model,
        basis: Basis::L2Sample,
        matrix,
    }
}

/// Convolution by `k` compressed to `H²`; equals `D_{k̂}`.
pub fn convolution_operator<T: Real>(kernel: &GridFunction<T>) -> Result<FiniteSectionOperator<T>> {
    convolution_sample_operator(kernel).compress_to_hardy()
}

/// `ǩ = F⁻¹ k` for `k` supported on `Γ⁺`; multiplication by `ǩ` leaves `H²` invariant.
pub fn analytic_symbol_from_positive_spectrum<T: Real>(k: &DualGridFunction<T>) -> Result<GridFunction<T>> {
    let mass = k.negative_mass();
    if mass > T::zero() {
        return Err(Error::NegativeSpectrum { mass: to_f64(mass) });
    }
    Ok(inverse_fourier(k))
}

/// `(I − P) M_ψ P` in `l2-fourier` coordinates, built from [`multiplication_section`].
pub fn hardy_invariance_defect<T: Real>(psi: &GridFunction<T>) -> FiniteSectionOperator<T> {
    let model = *psi.model();
    let spectrum = forward_fourier(psi);
    let n = model.dual_len();
    let offset = model.hardy_offset();
    let mut matrix = CMatrix::zeros(n, n);
    matrix
        .view_mut((0, offset), (offset, n - offset))
        .copy_from(&spectral_block(&spectrum, 0..offset, offset..n));
    FiniteSectionOperator {
        model,
        basis: Basis::L2Fourier,
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn circle(m: usize) -> GroupModel<f64> {
        GroupModel::circle_square(m).unwrap()
    }

    #[test]
    fn constant_symbol_gives_identity() {
        let model = GroupModel::<f64>::line(32, 0.5).unwrap();
        let m = multiplication_operator(&model, &SymbolSpec::constant(c(1.0))).unwrap();
        assert_eq!(m, FiniteSectionOperator::identity(model, Basis::L2Sample));
        let d = fourier_multiplier(&model, &SymbolSpec::dual_constant(c(1.0))).unwrap();
        assert_eq!(d, FiniteSectionOperator::identity(model, Basis::HardyFourier));
    }

    #[test]
    fn projection_kills_negative_modes() {
        let model = circle(6);
        let p = hardy_projection(&model);
        let mut e_minus = vec![c(0.0); model.dual_len()];
        e_minus[model.dual_index_of_offset(-1).unwrap()] = c(1.0);
        assert!(p.apply(&e_minus).unwrap().iter().all(|z| z.norm() == 0.0));

        // 2cosθ = e^{iθ} + e^{-iθ}; projection keeps e^{iθ}
        let mut two_cos = vec![c(0.0); model.dual_len()];
        two_cos[model.dual_index_of_offset(1).unwrap()] = c(1.0);
        two_cos[model.dual_index_of_offset(-1).unwrap()] = c(1.0);
        let kept = p.apply(&two_cos).unwrap();
        for (k, z) in kept.iter().enumerate() {
            let expected = if model.dual_offset(k) == 1 { 1.0 } else { 0.0 };
            assert_eq!(*z, c(expected));
        }
        assert_eq!(p.compose(&p).unwrap(), p);
        assert_eq!(p.adjoint(), p);
    }

    #[test]
    fn circle_toeplitz_of_characters() {
        let model = circle(8);
        let shift = toeplitz_operator(&model, &SymbolSpec::character(1)).unwrap();
        let tri = toeplitz_operator(&model, &SymbolSpec::two_cos()).unwrap();
        for j in 0..model.hardy_dim() {
            for k in 0..model.hardy_dim() {
                let s = if j == k + 1 { 1.0 } else { 0.0 };
                let t = if j.abs_diff(k) == 1 { 1.0 } else { 0.0 };
                assert!((shift.matrix()[(j, k)] - c(s)).norm() < 1e-14);
                assert!((tri.matrix()[(j, k)] - c(t)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn compose_requires_compatible_bases() {
        let model = circle(4);
        let p = hardy_projection(&model);
        let t = toeplitz_operator(&model, &SymbolSpec::two_cos()).unwrap();
        assert!(matches!(p.compose(&t), Err(Error::BasisMismatch { .. })));
        assert!(matches!(t.compose(&p), Err(Error::BasisMismatch { .. })));
        let other = FiniteSectionOperator::identity(circle(5), Basis::HardyFourier);
        assert!(matches!(t.compose(&other), Err(Error::ModelMismatch { .. })));
        let v = vec![c(1.0); t.dim()];
        let id = FiniteSectionOperator::identity(model, Basis::HardyFourier);
        assert_eq!(id.apply(&v).unwrap(), v);
        assert!(id.apply(&v[1..]).is_err());
    }

    #[test]
    fn real_diagonal_is_self_adjoint() {
        let model = circle(3);
        let d = FiniteSectionOperator::from_diagonal(
            model,
            Basis::L2Fourier,
            &[c(0.1), c(-2.0), c(3.0), c(0.0), c(1.0), c(5.0), c(-1.0)],
        )
        .unwrap();
        assert_eq!(d.adjoint(), d);
        assert!(d.is_diagonal());
    }

    #[test]
    fn analytic_symbol_rejects_negative_modes() {
        let model = circle(4);
        let mut values = vec![c(0.0); model.dual_len()];
        values[model.dual_index_of_offset(-1).unwrap()] = c(1.0);
        let k = DualGridFunction::new(model, values).unwrap();
        assert!(matches!(
            analytic_symbol_from_positive_spectrum(&k),
            Err(Error::NegativeSpectrum { .. })
        ));
    }

    #[test]
    fn analytic_monomial_preserves_hardy_space_exactly() {
        let model = circle(6);
        let mut values = vec![c(0.0); model.dual_len()];
        values[model.dual_index_of_offset(1).unwrap()] = c(1.0);
        let k = DualGridFunction::new(model, values).unwrap();
        let psi = analytic_symbol_from_positive_spectrum(&k).unwrap();
        for (j, z) in psi.values().iter().enumerate() {
            let theta = model.group_point(j);
            assert!((z - Complex::new(theta.cos(), theta.sin())).norm() < 1e-14);
        }
        let defect = hardy_invariance_defect(&psi);
        assert!(defect.matrix().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn delta_kernel_convolves_to_identity() {
        let model = GroupModel::<f64>::line(16, 0.25).unwrap();
        let mut values = vec![c(0.0); 16];
        values[model.group_index_of(0.0).unwrap()] = c(1.0 / model.group_weight());
        let k = GridFunction::new(model, values).unwrap();
        let sample = convolution_sample_operator(&k);
        assert!(sample
            .max_abs_diff(&FiniteSectionOperator::identity(model, Basis::L2Sample))
            .unwrap()
            < 1e-15);
        let hardy = convolution_operator(&k).unwrap();
        assert!(hardy
            .max_abs_diff(&FiniteSectionOperator::identity(model, Basis::HardyFourier))
            .unwrap()
            < 1e-13);
    }

    #[test]
    fn basis_text_form() {
        for b in [Basis::HardyFourier, Basis::L2Sample, Basis::L2Fourier] {
            assert_eq!(b.to_string().parse::<Basis>().unwrap(), b);
        }
        assert!("hardy".parse::<Basis>().is_err());
    }
}
