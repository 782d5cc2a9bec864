use num_complex::Complex64;
use proptest::prelude::*;
use qutrit_geometry::bound::{
    c_lambda, lambda_coefficients, lambda_min, scaled_coefficient_magnitudes, LineSpec,
};
use qutrit_geometry::criteria::{
    analytic_ppt_region, classify, partial_transpose_a, partial_transpose_b, realign_inverse,
    realign_matrix, Label,
};
use qutrit_geometry::families::{
    qutrit_three_param, swap, FamilyPoint, HorodeckiParam, ThreeParams,
};
use qutrit_geometry::numeric::{hermitian_eigen, hermitian_eigenvalues, hs_inner, hs_norm, kron, singular_values};
use qutrit_geometry::sampling::{chunk_rng, random_density, random_hermitian, random_matrix};
use qutrit_geometry::weyl::{bell_projector, bell_projector_bloch, WeylBasis};
use qutrit_geometry::witness::{lemma_check, Decomposition, WitnessOperator};
use qutrit_geometry::Matrix;

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalues_sum_to_trace_and_square_to_norm(s in seed(), n in 1usize..=9) {
        let h = random_hermitian(n, &mut chunk_rng(s, 0));
        let values = hermitian_eigenvalues(&h, 1e-10).unwrap();
        prop_assert!((values.sum() - h.trace().re).abs() < 1e-11);
        let squares: f64 = values.values().iter().map(|x| x * x).sum();
        prop_assert!((squares - hs_norm(&h).powi(2)).abs() < 1e-10);
        prop_assert!(values.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn eigenvectors_diagonalize(s in seed(), n in 1usize..=9) {
        let h = random_hermitian(n, &mut chunk_rng(s, 0));
        let e = hermitian_eigen(&h, 1e-10).unwrap();
        let d = Matrix::diagonal(e.values.values());
        let back = &(&e.vectors * &d) * &e.vectors.adjoint();
        prop_assert!(back.max_abs_diff(&h) < 1e-11);
    }

    #[test]
    fn singular_values_of_adjoint_agree(s in seed(), r in 1usize..=9, c in 1usize..=9) {
        let m = random_matrix(r, c, &mut chunk_rng(s, 0));
        let a = singular_values(&m);
        let b = singular_values(&m.adjoint());
        for (x, y) in a.values().iter().zip(b.values()) {
            prop_assert!((x - y).abs() < 1e-11);
        }
        let squares: f64 = a.values().iter().map(|x| x * x).sum();
        prop_assert!((squares - hs_norm(&m).powi(2)).abs() < 1e-10);
    }

    #[test]
    fn hs_inner_is_conjugate_symmetric(s in seed(), n in 1usize..=9) {
        let mut rng = chunk_rng(s, 0);
        let a = random_matrix(n, n, &mut rng);
        let b = random_matrix(n, n, &mut rng);
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
        prop_assert!(hs_norm(&(&a + &b)) <= hs_norm(&a) + hs_norm(&b) + 1e-12);
    }

    #[test]
    fn kron_mixed_product(s in seed()) {
        let mut rng = chunk_rng(s, 0);
        let (a, b, c, d) = (
            random_matrix(2, 2, &mut rng),
            random_matrix(3, 3, &mut rng),
            random_matrix(2, 2, &mut rng),
            random_matrix(3, 3, &mut rng),
        );
        let lhs = &kron(&a, &b) * &kron(&c, &d);
        let rhs = kron(&(&a * &c), &(&b * &d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn bloch_round_trip(s in seed(), d in 2usize..=4) {
        let rho = random_density(d, &mut chunk_rng(s, 0));
        let basis = WeylBasis::<f64>::new(d).unwrap();
        let back = basis.reconstruct(&basis.decompose(&rho).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn partial_transpose_is_linear_involutive_and_trace_preserving(s in seed(), da in 2usize..=3, db in 2usize..=3) {
        let mut rng = chunk_rng(s, 0);
        let n = da * db;
        let a = random_matrix(n, n, &mut rng);
        let b = random_matrix(n, n, &mut rng);
        let w = Complex64::new(0.3, -1.1);
        let pt = |m: &Matrix| partial_transpose_b(m, da, db).unwrap();
        let lhs = pt(&(&a + &b.scale(w)));
        let rhs = &pt(&a) + &pt(&b).scale(w);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        prop_assert!(pt(&pt(&a)).max_abs_diff(&a) < 1e-15);
        prop_assert!((pt(&a).trace() - a.trace()).norm() < 1e-12);
        // transposing the first factor is the full transpose of the second
        let pa = partial_transpose_a(&a, da, db).unwrap();
        prop_assert!(pa.max_abs_diff(&pt(&a).transpose()) < 1e-15);
    }

    #[test]
    fn realignment_is_invertible(s in seed(), d in 2usize..=3) {
        let m = random_matrix(d * d, d * d, &mut chunk_rng(s, 0));
        let back = realign_inverse(&realign_matrix(&m, d).unwrap(), d).unwrap();
        prop_assert!(back.max_abs_diff(&m) < 1e-15);
    }

    #[test]
    fn lemma_decomposition_round_trip(s in seed()) {
        let mut rng = chunk_rng(s, 0);
        use rand::Rng;
        let mut coeffs: Vec<Complex64> = (0..9)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        coeffs[0] = Complex64::new(0.0, 0.0);
        let basis = WeylBasis::<f64>::new(3).unwrap();
        let mut m = Matrix::identity(9).scale_real(2.0);
        for l in 0..3i64 {
            for k in 0..3i64 {
                if (l, k) != (0, 0) {
                    m += &basis.pair(l, k).scale(coeffs[(l * 3 + k) as usize]);
                }
            }
        }
        let h = (&m + &m.adjoint()).scale_real(0.5);
        let form = lemma_check(&h).unwrap();
        prop_assert!(form.decomposition.reconstruct().unwrap().max_abs_diff(&h) < 1e-12);
        if let Decomposition::Qudit { a, .. } = form.decomposition {
            prop_assert!((a - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn lambda_min_is_even_in_gamma(g in 0.0f64..0.99, e in -0.2499f64..0.3333) {
        let a = scaled_coefficient_magnitudes(&LineSpec::new(g, e));
        let b = scaled_coefficient_magnitudes(&LineSpec::new(-g, e));
        prop_assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12);
    }

    #[test]
    fn c_lambda_closed_form_matches_construction(g in -0.9f64..0.9, e in -0.24f64..0.33, lambda in 0.05f64..0.95) {
        let spec = LineSpec::new(g, e);
        let rho = qutrit_three_param(spec.plane_point());
        prop_assume!(rho.is_ok());
        let numeric = c_lambda(&rho.unwrap(), lambda).unwrap();
        let closed = lambda_coefficients(&spec, lambda).unwrap().matrix();
        prop_assert!(numeric.matrix().max_abs_diff(&closed) < 1e-12);
    }

    #[test]
    fn lambda_witness_vanishes_on_shifted_state(g in 0.0f64..0.34, e in -0.2f64..0.3) {
        let spec = LineSpec::new(g, e);
        prop_assume!(spec.is_ppt());
        let lambda = lambda_min(&spec).unwrap();
        prop_assume!(lambda < 1.0);
        let c = lambda_coefficients(&spec, lambda).unwrap();
        let w = WitnessOperator::from_decomposition(c.decomposition()).unwrap();
        prop_assert!(w.is_valid());
        prop_assert!((c.max_abs_coeff() - 1.0).abs() < 1e-9);
        let shifted = qutrit_three_param(spec.line_point(lambda)).unwrap();
        prop_assert!(hs_inner(shifted.matrix(), w.matrix()).unwrap().re.abs() < 1e-12);
    }

    #[test]
    fn swap_relates_horodecki_to_its_image(b in 0.0f64..=5.0) {
        let h = HorodeckiParam::new(b).unwrap();
        let s = swap(3);
        let image = FamilyPoint::Qutrit3(h.to_simplex()).matrix_unchecked();
        let literal = FamilyPoint::Horodecki(h).matrix_unchecked();
        prop_assert!((&(&s * &image) * &s).max_abs_diff(&literal) < 1e-14);
    }

    #[test]
    fn classification_consistent_with_scalars(a in -0.4f64..1.0, b in -0.7f64..1.0, g in -1.0f64..1.0) {
        let point = FamilyPoint::Qutrit3(ThreeParams::new(a, b, g));
        let c = classify(&point).unwrap();
        match c.label {
            Label::Invalid => prop_assert!(!point.is_positive()),
            Label::NptEntangled => prop_assert!(c.min_pt_eigenvalue < -1e-10),
            Label::BoundEntangled => prop_assert!(c.min_pt_eigenvalue >= -1e-10 && c.realignment_sum > 1.0),
            Label::Separable => prop_assert!(c.min_pt_eigenvalue >= -1e-10 && c.realignment_sum <= 1.0 + 1e-10),
            Label::PptUndetermined => prop_assert!(false, "family points are never undetermined"),
        }
        if point.is_positive() {
            prop_assert_eq!(c.label.is_ppt(), analytic_ppt_region(&point));
        }
    }
}

#[test]
fn bell_projectors_agree_with_bloch_form() {
    for d in 2..=4 {
        let mut total = Matrix::zeros(d * d, d * d);
        for n in 0..d {
            for k in 0..d {
                let p = bell_projector::<f64>(d, n, k).unwrap();
                let q = bell_projector_bloch::<f64>(d, n, k).unwrap();
                assert!(p.max_abs_diff(&q) < 1e-12, "d={d} ({n},{k})");
                total += &p;
            }
        }
        assert!(total.max_abs_diff(&Matrix::identity(d * d)) < 1e-12);
    }
}

#[test]
fn weyl_basis_is_orthogonal_for_small_dimensions() {
    for d in 2..=5 {
        let basis = WeylBasis::<f64>::new(d).unwrap();
        let di = d as i64;
        for idx in 0..d * d {
            for jdx in 0..d * d {
                let (n, m) = ((idx / d) as i64, (idx % d) as i64);
                let (k, l) = ((jdx / d) as i64, (jdx % d) as i64);
                let ip = hs_inner(basis.op(n, m), basis.op(k, l)).unwrap();
                let expected = if idx == jdx { d as f64 } else { 0.0 };
                assert!((ip.re - expected).abs() < 1e-12 && ip.im.abs() < 1e-12);
            }
        }
        assert_eq!(basis.op(di, 0), basis.op(0, 0));
    }
}
