//! Operator norms and singular values of finite sections.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::group::GroupModel;
use crate::operators::{Basis, CMatrix, FiniteSectionOperator};
use crate::scalar::{abs, lit, Real};

/// Dense SVD is used up to this dimension when the method is [`NormMethod::Auto`].
pub const SVD_LIMIT: usize = 1024;
pub const POWER_TOLERANCE: f64 = 1e-10;
pub const POWER_MAX_ITERATIONS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormMethod {
    Svd,
    PowerIteration,
    /// SVD up to [`SVD_LIMIT`], power iteration above.
    Auto,
}

impl NormMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            NormMethod::Svd => "svd",
            NormMethod::PowerIteration => "power-iteration",
            NormMethod::Auto => "auto",
        }
    }

    pub fn resolve(self, dim: usize) -> Self {
        match self {
            NormMethod::Auto if dim <= SVD_LIMIT => NormMethod::Svd,
            NormMethod::Auto => NormMethod::PowerIteration,
            other => other,
        }
    }
}

impl fmt::Display for NormMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svd" => Ok(NormMethod::Svd),
            "power" | "power-iteration" => Ok(NormMethod::PowerIteration),
            "auto" => Ok(NormMethod::Auto),
            _ => Err(crate::text::parse_error(s, "expected svd, power or auto")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormEstimate<T> {
    pub value: T,
    /// Either [`NormMethod::Svd`] or [`NormMethod::PowerIteration`].
    pub method: NormMethod,
    pub iterations: usize,
    /// `‖A*A v − λv‖ / λ` at the returned vector; zero for SVD.
    pub residual: T,
    pub converged: bool,
}

pub fn operator_norm<T: Real>(a: &FiniteSectionOperator<T>, method: NormMethod) -> NormEstimate<T> {
    matrix_norm(a.matrix(), method.resolve(section_size(a)))
}

/// Section size `n`: a circle Hardy section at level `M` has dimension `M + 1`.
pub fn section_size<T: Real>(a: &FiniteSectionOperator<T>) -> usize {
    match (a.model(), a.basis()) {
        (GroupModel::Circle { .. }, Basis::HardyFourier) => a.dim() - 1,
        _ => a.dim(),
    }
}

pub fn matrix_norm<T: Real>(a: &CMatrix<T>, method: NormMethod) -> NormEstimate<T> {
    match method.resolve(a.nrows().max(a.ncols())) {
        NormMethod::Svd => NormEstimate {
            value: matrix_singular_values(a).first().copied().unwrap_or_else(T::zero),
            method: NormMethod::Svd,
            iterations: 0,
            residual: T::zero(),
            converged: true,
        },
        _ => power_iteration(a, lit(POWER_TOLERANCE), POWER_MAX_ITERATIONS),
    }
}

/// Power iteration on `A*A` from the normalized all-ones vector, stopping once
/// the Rayleigh quotient changes by less than `tolerance` relative.
pub fn power_iteration<T: Real>(a: &CMatrix<T>, tolerance: T, max_iterations: usize) -> NormEstimate<T> {
    let n = a.ncols();
    let zero = T::zero();
    let estimate = |value, iterations, residual, converged| NormEstimate {
        value,
        method: NormMethod::PowerIteration,
        iterations,
        residual,
        converged,
    };
    if n == 0 {
        return estimate(zero, 0, zero, true);
    }
    let mut v = DVector::from_element(n, Complex::new(T::one(), zero));
    v.unscale_mut(v.norm());
    let mut lambda = zero;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iterations {
        iterations += 1;
        let w = a.ad_mul(&(a * &v));
        let next = v.dotc(&w).re;
        let size = w.norm();
        if size == zero {
            return estimate(zero, iterations, zero, true);
        }
        let settled = abs(next - lambda) <= tolerance * next;
        lambda = next;
        v = w.unscale(size);
        if settled {
            converged = true;
            break;
        }
    }
    let w = a.ad_mul(&(a * &v));
    let lambda = v.dotc(&w).re;
    let residual = (w - v.scale(lambda)).norm() / lambda;
    estimate(lambda.sqrt(), iterations, residual, converged)
}

/// All singular values, largest first.
pub fn matrix_singular_values<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut values: Vec<T> = a.clone().singular_values().iter().copied().collect();
    values.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    values
}

/// The `count` largest singular values, largest first.
pub fn singular_values<T: Real>(a: &FiniteSectionOperator<T>, count: usize) -> Vec<T> {
    let mut values = matrix_singular_values(a.matrix());
    values.truncate(count);
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::toeplitz_operator;
    use crate::symbol::SymbolSpec;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn identity_and_diagonal() {
        let model = GroupModel::<f64>::circle_square(4).unwrap();
        let id = FiniteSectionOperator::identity(model, Basis::HardyFourier);
        for method in [NormMethod::Svd, NormMethod::PowerIteration] {
            assert!((operator_norm(&id, method).value - 1.0).abs() < 1e-14);
        }
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![c(0.3), c(0.7)]));
        assert!((matrix_norm(&d, NormMethod::Svd).value - 0.7).abs() < 1e-15);
        let p = matrix_norm(&d, NormMethod::PowerIteration);
        assert!((p.value - 0.7).abs() < 1e-9);
        assert!(p.converged);
    }

    #[test]
    fn tridiagonal_section_matches_closed_form() {
        let model = GroupModel::<f64>::circle_square(511).unwrap();
        let t = toeplitz_operator(&model, &SymbolSpec::two_cos()).unwrap();
        let expected = 2.0 * (std::f64::consts::PI / 513.0).cos();
        assert!((operator_norm(&t, NormMethod::Svd).value - expected).abs() < 1e-6);
    }

    #[test]
    fn rank_one_and_unitary_spectra() {
        let u = DVector::from_vec(vec![c(1.0), c(2.0), Complex::new(0.0, 1.0)]);
        let v = DVector::from_vec(vec![c(-1.0), c(0.5), c(3.0)]);
        let outer = &u * v.adjoint();
        let s = matrix_singular_values(&outer);
        assert!((s[0] - u.norm() * v.norm()).abs() < 1e-12);
        assert!(s[1..].iter().all(|x| *x < 1e-12));

        let dft = GroupModel::<f64>::line(16, 0.3).unwrap().unitary_dft();
        assert!(matrix_singular_values(&dft).iter().all(|x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn method_names() {
        for m in [NormMethod::Svd, NormMethod::PowerIteration, NormMethod::Auto] {
            assert_eq!(m.as_str().parse::<NormMethod>().unwrap(), m);
        }
        assert_eq!("power".parse::<NormMethod>().unwrap(), NormMethod::PowerIteration);
        assert_eq!(NormMethod::Auto.resolve(1024), NormMethod::Svd);
        assert_eq!(NormMethod::Auto.resolve(1025), NormMethod::PowerIteration);
    }
}
