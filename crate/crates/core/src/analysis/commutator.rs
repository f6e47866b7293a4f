//! Commutators and semi-commutators of Toeplitz sections, and a
//! singular-value decay proxy for their compactness.

use crate::error::Result;
use crate::group::GroupModel;
use crate::operators::{toeplitz_from_samples, toeplitz_operator, FiniteSectionOperator};
use crate::scalar::Real;
use crate::symbol::SymbolSpec;

use super::norm::matrix_singular_values;

/// `T_φ T_ψ − T_ψ T_φ`.
pub fn commutator<T: Real>(
    model: &GroupModel<T>,
    phi: &SymbolSpec<T>,
    psi: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let a = toeplitz_operator(model, phi)?;
    let b = toeplitz_operator(model, psi)?;
    a.compose(&b)?.sub(&b.compose(&a)?)
}

/// `T_{φψ} − T_ψ T_φ`. The product symbol stays in closed form when the family
/// algebra allows it and is otherwise formed on the grid.
pub fn semi_commutator<T: Real>(
    model: &GroupModel<T>,
    phi: &SymbolSpec<T>,
    psi: &SymbolSpec<T>,
) -> Result<FiniteSectionOperator<T>> {
    let a = toeplitz_operator(model, phi)?;
    let b = toeplitz_operator(model, psi)?;
    let product = match phi.product(psi) {
        Some(spec) => toeplitz_operator(model, &spec)?,
        None => {
            let samples = phi.evaluate_group(model)?.mul(&psi.evaluate_group(model)?)?;
            toeplitz_from_samples(&samples)
        }
    };
    product.sub(&b.compose(&a)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefectKind {
    Commutator,
    SemiCommutator,
}

impl DefectKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DefectKind::Commutator => "commutator",
            DefectKind::SemiCommutator => "semi-commutator",
        }
    }

    pub fn assemble<T: Real>(
        self,
        model: &GroupModel<T>,
        phi: &SymbolSpec<T>,
        psi: &SymbolSpec<T>,
    ) -> Result<FiniteSectionOperator<T>> {
        match self {
            DefectKind::Commutator => commutator(model, phi, psi),
            DefectKind::SemiCommutator => semi_commutator(model, phi, psi),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayPoint<T> {
    /// Section dimension `n`.
    pub dimension: usize,
    pub sigma_first: T,
    /// `σ_{⌈n/4⌉}` (1-based).
    pub sigma_quarter: T,
    /// `σ_{⌈n/4⌉} / σ₁`, zero for the zero operator.
    pub ratio: T,
}

pub fn decay_point<T: Real>(op: &FiniteSectionOperator<T>) -> DecayPoint<T> {
    let n = op.dim();
    let sigma = matrix_singular_values(op.matrix());
    let quarter = n.div_ceil(4).max(1);
    let sigma_first = sigma.first().copied().unwrap_or_else(T::zero);
    let sigma_quarter = sigma.get(quarter - 1).copied().unwrap_or_else(T::zero);
    let ratio = if sigma_first > T::zero() {
        sigma_quarter / sigma_first
    } else {
        T::zero()
    };
    DecayPoint {
        dimension: n,
        sigma_first,
        sigma_quarter,
        ratio,
    }
}

/// Whether each ratio is at least `factor` times smaller than the previous one.
pub fn decays_by<T: Real>(points: &[DecayPoint<T>], factor: T) -> bool {
    points
        .windows(2)
        .all(|w| w[1].ratio * factor <= w[0].ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    fn circle() -> GroupModel<f64> {
        GroupModel::circle_square(16).unwrap()
    }

    #[test]
    fn self_commutator_vanishes() {
        let phi = SymbolSpec::trig([(1, Complex::new(0.5, 0.0)), (-2, Complex::new(0.0, 1.0))]);
        let c = commutator(&circle(), &phi, &phi).unwrap();
        assert!(c.matrix().iter().all(|z| z.norm() < 1e-15));
        let line = GroupModel::line(64, 0.25).unwrap();
        let g = SymbolSpec::gauss(1.0, 1.0);
        assert!(commutator(&line, &g, &g).unwrap().matrix().iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn analytic_symbols_multiply() {
        let z = SymbolSpec::character(1);
        let s = semi_commutator(&circle(), &z, &z).unwrap();
        assert!(s.matrix().iter().all(|x| x.norm() < 1e-14));
    }

    fn unit_at(dim: usize, index: usize) -> Vec<Vec<f64>> {
        (0..dim)
            .map(|j| (0..dim).map(|k| if j == index && k == index { 1.0 } else { 0.0 }).collect())
            .collect()
    }

    fn assert_matches(s: &FiniteSectionOperator<f64>, expected: &[Vec<f64>]) {
        for (j, row) in expected.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                assert!((s.matrix()[(j, k)] - Complex::new(*x, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn shift_pairs_leave_rank_one_defects() {
        let model = circle();
        let n = model.hardy_dim();
        // T_1 − T_z T_z̄ = e₀e₀*
        let s = semi_commutator(&model, &SymbolSpec::character(-1), &SymbolSpec::character(1)).unwrap();
        assert_matches(&s, &unit_at(n, 0));
        let d = decay_point(&s);
        assert!((d.sigma_first - 1.0).abs() < 1e-14);
        assert!(d.ratio < 1e-14);
        // T_1 − T_z̄ T_z vanishes on H², except at the truncation edge of the section
        let s = semi_commutator(&model, &SymbolSpec::character(1), &SymbolSpec::character(-1)).unwrap();
        assert_matches(&s, &unit_at(n, n - 1));
    }

    #[test]
    fn decay_predicate() {
        let p = |ratio| DecayPoint {
            dimension: 1,
            sigma_first: 1.0,
            sigma_quarter: ratio,
            ratio,
        };
        assert!(decays_by(&[p(1.0), p(0.5), p(0.2)], 1.5));
        assert!(!decays_by(&[p(1.0), p(0.9)], 1.5));
    }
}
