use hardy_core::analysis::norm::{matrix_norm, NormMethod};
use hardy_core::group::{unitary_adjoint, unitary_forward};
use hardy_core::operators::*;
use hardy_core::*;
use num_complex::Complex;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<C> {
    (0..n)
        .map(|_| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn op_norm(a: &nalgebra::DMatrix<C>) -> f64 {
    matrix_norm(a, NormMethod::Svd).value
}

#[test]
fn gaussian_transform_matches_closed_form() {
    let model = GroupModel64::line(256, 0.1).unwrap();
    let f = GridFunction::from_fn(model, |t| C::new((-t * t / 2.0).exp(), 0.0)).unwrap();
    let fh = forward_fourier(&f);
    let two_pi = 2.0 * std::f64::consts::PI;
    let worst = model
        .dual_points()
        .iter()
        .zip(fh.values())
        .map(|(xi, z)| (z - C::new(two_pi.sqrt() * (-xi * xi / 2.0).exp(), 0.0)).norm())
        .fold(0.0, f64::max);
    assert!(worst < 1e-8, "{worst}");
}

#[test]
fn circle_characters_are_orthonormal() {
    let model = GroupModel64::circle(6, 17).unwrap();
    let chars: Vec<_> = (-6i64..=6)
        .map(|n| {
            GridFunction::from_fn(model, |t| {
                let a = n as f64 * t;
                C::new(a.cos(), a.sin())
            })
            .unwrap()
        })
        .collect();
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((a.inner(b).unwrap() - C::new(expected, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn fft_conversion_matches_dense_dft() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for model in [
        GroupModel64::line(16, 0.4).unwrap(),
        GroupModel64::circle_square(7).unwrap(),
        GroupModel64::circle(5, 14).unwrap(),
    ] {
        let u = model.unitary_dft();
        let x = random_vector(&mut rng, model.sample_count());
        let dense = &u * nalgebra::DVector::from_vec(x.clone());
        let fast = unitary_forward(&model, &x);
        for (a, b) in dense.iter().zip(&fast) {
            assert!((a - b).norm() < 1e-13);
        }
        let y = random_vector(&mut rng, model.dual_len());
        let dense = u.adjoint() * nalgebra::DVector::from_vec(y.clone());
        for (a, b) in dense.iter().zip(&unitary_adjoint(&model, &y)) {
            assert!((a - b).norm() < 1e-13);
        }
    }
}

#[test]
fn basis_conversion_preserves_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let model = GroupModel64::line(64, 0.2).unwrap();
    let m = nalgebra::DMatrix::from_fn(64, 64, |_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    let a = FiniteSectionOperator::new(model, Basis::L2Sample, m).unwrap();
    let b = a.to_basis(Basis::L2Fourier).unwrap();
    assert!((op_norm(a.matrix()) - op_norm(b.matrix())).abs() < 1e-10);
    let back = b.to_basis(Basis::L2Sample).unwrap();
    assert!(a.max_abs_diff(&back).unwrap() < 1e-12);
    let u = model.unitary_dft();
    let dense = &u * a.matrix() * u.adjoint();
    assert!((dense - b.matrix()).iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn toeplitz_adjoint_is_conjugate_symbol() {
    let model = GroupModel64::line(128, 0.15).unwrap();
    let phi = SymbolSpec64::gauss(1.0, 0.7);
    let samples = phi.evaluate_group(&model).unwrap().map(|z| z * C::new(0.3, 0.9));
    let t = toeplitz_from_samples(&samples);
    let tbar = toeplitz_from_samples(&samples.map(|z| z.conj()));
    assert!(t.adjoint().max_abs_diff(&tbar).unwrap() < 1e-12);

    let circle = GroupModel64::circle_square(10).unwrap();
    let p = SymbolSpec64::trig([(1, C::new(1.0, 2.0)), (-3, C::new(0.0, -0.5))]);
    let t = toeplitz_operator(&circle, &p).unwrap();
    let tbar = toeplitz_operator(&circle, &p.conj()).unwrap();
    assert!(t.adjoint().max_abs_diff(&tbar).unwrap() < 1e-12);
}

#[test]
fn circle_toeplitz_is_constant_along_diagonals() {
    let model = GroupModel64::circle_square(12).unwrap();
    let p = SymbolSpec64::trig([(0, C::new(0.5, 0.0)), (2, C::new(1.0, -1.0)), (-5, C::new(0.25, 0.0))]);
    let t = toeplitz_operator(&model, &p).unwrap();
    let n = t.dim();
    for j in 0..n {
        for k in 0..n {
            let d = j as i64 - k as i64;
            assert_eq!(t.matrix()[(j, k)], t.matrix()[(j.min(k) + (d.max(0) as usize), j.min(k) + ((-d).max(0) as usize))]);
            let expected = hardy_core::symbol::trig_coefficient(&p, d);
            assert!((t.matrix()[(j, k)] - expected).norm() < 1e-14);
        }
    }
}

#[test]
fn toeplitz_is_compression_of_multiplication() {
    let model = GroupModel64::line(64, 0.3).unwrap();
    let phi = SymbolSpec64::gauss(-1.0, 1.5);
    let t = toeplitz_operator(&model, &phi).unwrap();
    let samples = phi.evaluate_group(&model).unwrap();
    let section = multiplication_section(&samples).compress_to_hardy().unwrap();
    assert!(t.max_abs_diff(&section).unwrap() < 1e-15);
    // the circulant route agrees on the Hardy block
    let p = hardy_projection(&model);
    let m = multiplication_operator(&model, &phi).unwrap();
    let routed = p.compose(&m).unwrap().compress_to_hardy().unwrap();
    assert!(t.max_abs_diff(&routed).unwrap() < 1e-13);
}

#[test]
fn tail_multiplier_values() {
    let model = GroupModel64::line(32, 0.5).unwrap();
    let d = fourier_multiplier(&model, &SymbolSpec64::dual_tail(1.0)).unwrap();
    assert!(d.is_diagonal());
    for (i, k) in (model.hardy_offset()..model.dual_len()).enumerate() {
        let xi = model.dual_point(k);
        assert!((d.matrix()[(i, i)].re - xi / (xi + 1.0)).abs() < 1e-15);
    }
    assert_eq!(d.matrix()[(0, 0)], C::new(0.0, 0.0));
    let e = fourier_multiplier(&model, &SymbolSpec64::dual_gauss(1.0, 0.5)).unwrap();
    assert_eq!(d.compose(&e).unwrap(), e.compose(&d).unwrap());
}

#[test]
fn convolution_is_multiplier_by_transform() {
    let circle = GroupModel64::circle(5, 13).unwrap();
    let k = SymbolSpec64::character(1).evaluate_group(&circle).unwrap();
    let conv = convolution_operator(&k).unwrap();
    let mut ind = vec![C::new(0.0, 0.0); circle.dual_len()];
    ind[circle.dual_index_of_offset(1).unwrap()] = C::new(1.0, 0.0);
    let expected = fourier_multiplier_from_samples(&DualGridFunction::new(circle, ind).unwrap());
    assert!(conv.max_abs_diff(&expected).unwrap() < 1e-13);

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let model = GroupModel64::line(128, 0.2).unwrap();
    for _ in 0..5 {
        let g = SymbolSpec64::gauss(rng.random_range(-3.0..3.0), rng.random_range(0.3..2.0));
        let k = g.evaluate_group(&model).unwrap();
        let conv = convolution_operator(&k).unwrap();
        let d = fourier_multiplier_from_samples(&forward_fourier(&k));
        assert!(op_norm(&(conv.matrix() - d.matrix())) < 1e-10);
    }
}

#[test]
fn analytic_gaussian_spectrum_preserves_hardy_space() {
    let model = GroupModel64::line(256, 0.1).unwrap();
    let spectrum = SymbolSpec64::dual_gauss(5.0, 1.0).evaluate_dual(&model).unwrap();
    let psi = analytic_symbol_from_positive_spectrum(&spectrum).unwrap();
    let defect = hardy_invariance_defect(&psi);
    assert!(op_norm(defect.matrix()) < 1e-8);
    // a symbol with negative frequencies does not
    let cosine = GridFunction::from_fn(model, |t| C::new(t.cos() * (-t * t / 8.0).exp(), 0.0)).unwrap();
    assert!(op_norm(hardy_invariance_defect(&cosine).matrix()) > 0.1);
}

#[test]
fn multiplication_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let model = GroupModel64::line(64, 0.3).unwrap();
    let phi = SymbolSpec64::gauss(0.0, 1.0);
    let m = multiplication_operator(&model, &phi).unwrap();
    for (j, t) in model.group_points().iter().enumerate() {
        let e = (-t * t).exp();
        let expected = if e < 1e-12 { 0.0 } else { e };
        assert_eq!(m.matrix()[(j, j)].re, expected);
    }
    let f = GridFunction::new(model, random_vector(&mut rng, 64)).unwrap();
    let mf = GridFunction::new(model, m.apply(f.values()).unwrap()).unwrap();
    assert!(mf.norm() <= f.norm() * phi.sup_bound() + 1e-12);
}

#[test]
fn single_precision_smoke() {
    let model = GroupModel32::circle_square(32).unwrap();
    let t = toeplitz_operator(&model, &SymbolSpec32::two_cos()).unwrap();
    let norm = hardy_core::analysis::operator_norm(&t, NormMethod::Svd).value;
    let expected = 2.0 * (std::f32::consts::PI / 34.0).cos();
    assert!((norm - expected).abs() < 1e-4);
    let line = GroupModel32::line(64, 0.25).unwrap();
    let f = SymbolSpec32::gauss(0.0, 1.0).evaluate_group(&line).unwrap();
    let back = inverse_fourier(&forward_fourier(&f));
    assert!(back.axpby(Complex::new(1.0, 0.0), &f, Complex::new(-1.0, 0.0)).unwrap().norm() < 1e-5);
}

fn arb_model() -> impl Strategy<Value = GroupModel64> {
    prop_oneof![
        (2usize..40, 0usize..5).prop_map(|(m, extra)| GroupModel64::circle(m, 2 * m + 1 + extra).unwrap()),
        (4usize..64, 0.01f64..2.0).prop_map(|(half, h)| GroupModel64::line(2 * half, h).unwrap()),
    ]
}

fn arb_symbol() -> impl Strategy<Value = SymbolSpec64> {
    prop_oneof![
        (-3.0f64..3.0, 0.1f64..5.0).prop_map(|(c, w)| SymbolSpec64::gauss(c, w)),
        (0.0f64..10.0, 0.1f64..5.0).prop_map(|(c, w)| SymbolSpec64::dual_gauss(c, w)),
        (0.01f64..5.0).prop_map(SymbolSpec64::tail),
        (0.01f64..5.0).prop_map(SymbolSpec64::dual_tail),
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| SymbolSpec64::constant(C::new(a, b))),
        prop::collection::vec((-6i64..6, -2.0f64..2.0, -2.0f64..2.0), 1..4)
            .prop_map(|t| SymbolSpec64::trig(t.into_iter().map(|(n, a, b)| (n, C::new(a, b))))),
    ]
}

proptest! {
    #[test]
    fn model_text_round_trips(model in arb_model()) {
        let text = model.to_string();
        prop_assert_eq!(text.parse::<GroupModel64>().unwrap(), model);
    }

    #[test]
    fn symbol_text_round_trips(symbol in arb_symbol()) {
        let text = symbol.to_string();
        prop_assert_eq!(text.parse::<SymbolSpec64>().unwrap(), symbol);
    }

    #[test]
    fn plancherel_and_round_trip(model in arb_model(), seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // non-square circles only represent band-limited vectors
        let spectrum = DualGridFunction::new(model, random_vector(&mut rng, model.dual_len())).unwrap();
        let f = inverse_fourier(&spectrum);
        let fh = forward_fourier(&f);
        prop_assert!((fh.norm() - f.norm()).abs() <= 1e-10 * f.norm());
        let back = inverse_fourier(&fh);
        let err = back.axpby(C::new(1.0, 0.0), &f, C::new(-1.0, 0.0)).unwrap().norm();
        prop_assert!(err <= 1e-12 * f.norm());
    }

    #[test]
    fn toeplitz_map_is_linear(
        a in (-3.0f64..3.0, 0.2f64..1.5),
        b in (-3.0f64..3.0, 0.2f64..1.5),
        c in (-2.0f64..2.0, -2.0f64..2.0),
    ) {
        let model = GroupModel64::line(64, 0.4).unwrap();
        let c = C::new(c.0, c.1);
        let phi = SymbolSpec64::gauss(a.0, a.1).evaluate_group(&model).unwrap();
        let psi = SymbolSpec64::gauss(b.0, b.1).evaluate_group(&model).unwrap();
        let sum = phi.axpby(c, &psi, C::new(1.0, 0.0)).unwrap();
        let lhs = toeplitz_from_samples(&sum);
        let rhs = toeplitz_from_samples(&phi).add(c, &toeplitz_from_samples(&psi), C::new(1.0, 0.0)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn adjoint_is_involutive(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = GroupModel64::circle_square(5).unwrap();
        let m = nalgebra::DMatrix::from_fn(6, 6, |_, _| C::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        let a = FiniteSectionOperator::new(model, Basis::HardyFourier, m).unwrap();
        prop_assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn toeplitz_norm_bounded_by_grid_sup(c in -3.0f64..3.0, w in 0.2f64..1.5) {
        let model = GroupModel64::line(64, 0.4).unwrap();
        let phi = SymbolSpec64::gauss(c, w);
        let t = toeplitz_operator(&model, &phi).unwrap();
        let sup = phi.evaluate_group(&model).unwrap().sup_norm();
        prop_assert!(op_norm(t.matrix()) <= sup * (1.0 + 1e-12));
    }
}
