//! The integral kernel of `D_θ̃ M_φ` on the line and its Hilbert–Schmidt norm.

use crate::error::{Error, Result};
use crate::group::{inverse_fourier, GroupModel};
use crate::operators::{
    extended_fourier_multiplier, multiplication_operator, Basis, CMatrix, FiniteSectionOperator,
};
use crate::scalar::{from_usize, lit, modulus, Real};
use crate::symbol::{SymbolSpec, TAIL_CUTOFF};

#[derive(Clone, Debug)]
pub struct HsKernel<T: Real> {
    pub model: GroupModel<T>,
    /// `k(t_j, τ_l) = φ(τ_l)·θ̌(t_j − τ_l)`.
    pub k_values: CMatrix<T>,
    /// `(Σ |k|² h²)^{1/2}`.
    pub hs_norm: T,
    /// `(‖φ‖∞² ‖θ‖₂² λ(K₁))^{1/2}`.
    pub bound: T,
    /// `λ(K₁)`: total length of grid cells where `|φ| > 1e-12`.
    pub support_length: T,
}

impl<T: Real> HsKernel<T> {
    /// The integral operator `f ↦ Σ_l k(·, τ_l) f(τ_l) h` in sample coordinates.
    pub fn operator(&self) -> FiniteSectionOperator<T> {
        let h = self.model.group_weight();
        FiniteSectionOperator::new(self.model, Basis::L2Sample, self.k_values.map(|z| z * h))
            .expect("kernel matrix matches model")
    }

    /// `D_θ̃ M_φ` assembled from its factors, for comparison with [`Self::operator`].
    pub fn factored_operator(
        model: &GroupModel<T>,
        phi: &SymbolSpec<T>,
        theta: &SymbolSpec<T>,
    ) -> Result<FiniteSectionOperator<T>> {
        let d = extended_fourier_multiplier(model, theta)?;
        let m = multiplication_operator(model, phi)?;
        d.to_basis(Basis::L2Sample)?.compose(&m)
    }
}

fn require_compact<T: Real>(symbol: &SymbolSpec<T>) -> Result<()> {
    let vanishes = symbol
        .value_at_infinity()
        .is_some_and(|v| v.norm_sqr() == T::zero());
    if vanishes {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "symbol `{symbol}` is not compactly supported"
        )))
    }
}

pub fn hs_kernel<T: Real>(
    model: &GroupModel<T>,
    phi: &SymbolSpec<T>,
    theta: &SymbolSpec<T>,
) -> Result<HsKernel<T>> {
    if model.is_compact() {
        return Err(Error::Unsupported {
            what: "Hilbert–Schmidt kernel".into(),
            model: model.to_string(),
        });
    }
    require_compact(phi)?;
    require_compact(theta)?;
    let phi_values = phi.evaluate_group(model)?;
    let theta_values = theta.evaluate_dual(model)?;
    let theta_check = inverse_fourier(&theta_values);

    let n = model.sample_count();
    let phi_v = phi_values.values();
    let check = theta_check.values();
    // t_j − τ_l has grid offset j − l, i.e. index j − l + N/2
    let k_values = CMatrix::from_fn(n, n, |j, l| phi_v[l] * check[(j + n + n / 2 - l) % n]);

    let h = model.group_weight();
    let sum_sq = k_values.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr());
    let hs_norm = sum_sq.sqrt() * h;

    let cutoff = lit::<T>(TAIL_CUTOFF);
    let support = phi_v.iter().filter(|z| modulus(**z) > cutoff).count();
    let support_length = from_usize::<T>(support) * h;
    let sup = phi_values.sup_norm();
    let theta_l2 = theta_values.norm();
    let bound = sup * theta_l2 * support_length.sqrt();

    Ok(HsKernel {
        model: *model,
        k_values,
        hs_norm,
        bound,
        support_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use crate::analysis::norm::{matrix_norm, matrix_singular_values, NormMethod};

    fn model() -> GroupModel<f64> {
        GroupModel::line(512, 0.1).unwrap()
    }

    #[test]
    fn zero_symbol_gives_zero_kernel() {
        let phi = SymbolSpec::constant(Complex::new(0.0, 0.0));
        let theta = SymbolSpec::dual_gauss(3.0, 1.0);
        let k = hs_kernel(&model(), &phi, &theta).unwrap();
        assert_eq!(k.hs_norm, 0.0);
        assert!(k.k_values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn kernel_matches_factored_operator() {
        let m = model();
        let phi = SymbolSpec::gauss(0.0, 1.0);
        let theta = SymbolSpec::dual_gauss(3.0, 1.0);
        let k = hs_kernel(&m, &phi, &theta).unwrap();
        let direct = k.operator();
        let factored = HsKernel::factored_operator(&m, &phi, &theta).unwrap();
        let gap = matrix_norm(&(direct.matrix() - factored.matrix()), NormMethod::Svd).value;
        assert!(gap < 1e-8, "gap {gap}");

        let s2: f64 = matrix_singular_values(direct.matrix()).iter().map(|s| s * s).sum();
        assert!((s2 - k.hs_norm.powi(2)).abs() <= 1e-8 * k.hs_norm.powi(2));
        assert!(k.hs_norm <= k.bound * (1.0 + 1e-8));
        assert!(k.hs_norm > 0.0);
    }

    #[test]
    fn rejects_noncompact_symbols_and_circle() {
        let m = model();
        assert!(hs_kernel(&m, &SymbolSpec::tail(1.0), &SymbolSpec::dual_gauss(3.0, 1.0)).is_err());
        assert!(hs_kernel(&m, &SymbolSpec::gauss(0.0, 1.0), &SymbolSpec::dual_tail(1.0)).is_err());
        let circle = GroupModel::circle_square(8).unwrap();
        assert!(matches!(
            hs_kernel(&circle, &SymbolSpec::constant(Complex::new(0.0, 0.0)), &SymbolSpec::dual_gauss(3.0, 1.0)),
            Err(Error::Unsupported { .. })
        ));
    }
}
