mod common;

use nalgebra::DVector;
use proptest::prelude::*;
use rebrick::basis;
use rebrick::frame::{self, FiniteFrame};
use rebrick::io;
use rebrick::linalg::{self, Complex64, ComplexMatrix, RealMatrix, Tolerance, IMAG};
use rebrick::multiplier::{self, Multiplier};
use rebrick::permutation::{self, CharPolyMethod, Permutation};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn real_matrix(
    rows: impl Strategy<Value = usize>,
    cols: impl Strategy<Value = usize>,
) -> impl Strategy<Value = RealMatrix> {
    (rows, cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-1.0f64..1.0, r * c).prop_map(move |v| RealMatrix::from_vec(r, c, v))
    })
}

fn square(max: usize) -> impl Strategy<Value = RealMatrix> {
    (1..=max).prop_flat_map(|n| real_matrix(Just(n), Just(n)))
}

fn complex_matrix(max: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-1e3f64..1e3, -1e3f64..1e3), r * c).prop_map(move |v| {
            ComplexMatrix::from_iterator(r, c, v.into_iter().map(|(a, b)| Complex64::new(a, b)))
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn bits_equal(a: &ComplexMatrix, b: &ComplexMatrix) -> bool {
    a.shape() == b.shape()
        && a.iter()
            .zip(b.iter())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn svd_reconstructs(m in complex_matrix(12)) {
        let d = linalg::svd(&m).unwrap();
        let scale = d.sigma_max().max(f64::MIN_POSITIVE);
        prop_assert!(linalg::max_abs_diff(&d.reconstruct(), &m) <= tol().equality_abs * scale);
        prop_assert!(d.singular_values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn kernel_is_orthonormal_and_annihilated(m in real_matrix(1..6usize, 1..8usize), drop in 0usize..3) {
        // force a rank drop by repeating rows
        let mut m = m;
        for r in 1..m.nrows().min(drop + 1) {
            let first = m.row(0).into_owned();
            m.set_row(r, &first);
        }
        let k = linalg::kernel_basis(&m, &tol()).unwrap();
        let rank = linalg::rank(&m, &tol()).unwrap();
        prop_assert_eq!(k.ncols(), m.ncols() - rank);
        if k.ncols() > 0 {
            let scale = linalg::operator_norm(&m).unwrap().max(1.0);
            prop_assert!((&m * &k).amax() <= tol().equality_abs * scale);
            prop_assert!(linalg::max_abs_diff(&(k.transpose() * &k), &common::eye(k.ncols())) <= tol().equality_abs);
        }
    }

    #[test]
    fn rebrick_tests_agree_away_from_degeneracy(a in square(7)) {
        let n = a.nrows();
        let (_, v) = basis::rebrick_with_operator(&a, &common::eye(n), &tol()).unwrap();
        if !v.near_degenerate {
            prop_assert!(v.consistent);
        }
        let direct = linalg::sigma_min(&linalg::id_plus_i(&a)).unwrap();
        prop_assert!((direct - v.sigma_min_b).abs() <= 1e-12 * (1.0 + direct));
    }

    #[test]
    fn rebricked_dual_is_biorthogonal(v in square(6), a in square(6)) {
        prop_assume!(v.nrows() == a.nrows());
        let n = v.nrows();
        prop_assume!(linalg::sigma_min(&v).unwrap() > 1e-3);
        prop_assume!(linalg::sigma_min(&linalg::id_plus_i(&a)).unwrap() > 1e-3);
        let (primal, dual) = basis::rebricked_dual(&v, &a, &tol()).unwrap();
        let gram = dual.adjoint() * primal;
        prop_assert!(linalg::max_abs_diff(&gram, &ComplexMatrix::identity(n, n)) <= 1e-7);
    }

    #[test]
    fn char_poly_methods_agree(a in square(7)) {
        let fast = permutation::char_poly_with(&a, CharPolyMethod::TraceRecursion).unwrap();
        let slow = permutation::char_poly_with(&a, CharPolyMethod::PrincipalMinors).unwrap();
        prop_assert!(fast.relative_distance(&slow) <= 1e-9);
        prop_assert!(fast.is_monic());
        for z in linalg::eigenvalues(&a).unwrap() {
            prop_assert!(fast.eval(z).norm() <= 1e-8 * (1.0 + z.norm()).powi(a.nrows() as i32));
        }
    }

    #[test]
    fn permutation_matrices_compose(
        (p, q) in (1usize..7).prop_flat_map(|n| (permutation(n), permutation(n)))
    ) {
        prop_assert_eq!(p.matrix() * q.matrix(), p.then(&q).matrix());
        prop_assert!(p.then(&p.inverse()).is_identity());
        prop_assert_eq!(Permutation::from_one_based(&p.one_based_image()).unwrap(), p.clone());
        let a = RealMatrix::from_fn(p.len(), p.len(), |i, j| (i * 10 + j) as f64);
        prop_assert_eq!(permutation::apply_column_permutation(&a, &p).unwrap(), &a * p.matrix());
    }

    #[test]
    fn repair_reaches_invertibility(a in (2usize..6).prop_flat_map(|n| real_matrix(Just(n), Just(n))), seed in any::<u64>()) {
        let found = permutation::repair_permutation(&a, &tol(), seed).unwrap();
        let ap = permutation::apply_column_permutation(&a, &found.permutation).unwrap();
        let s = linalg::singular_values(&linalg::id_plus_i(&ap)).unwrap();
        prop_assert!(linalg::is_invertible_sv(&s, a.nrows(), &tol()));
        let again = permutation::repair_permutation(&a, &tol(), seed).unwrap();
        prop_assert_eq!(found.permutation, again.permutation);
    }

    #[test]
    fn operator_rebricked_frame_bounds_are_sandwiched(s in real_matrix(3..4usize, 3..7usize), a in real_matrix(3..4usize, 3..4usize)) {
        let Ok(f) = FiniteFrame::new(s, "f", &tol()) else { return Ok(()) };
        let Ok(r) = frame::operator_rebrick_frame(&f, &a, &tol()) else { return Ok(()) };
        let fb = frame::frame_bounds(&f).unwrap();
        let sv = linalg::singular_values(&linalg::id_plus_i(&a)).unwrap();
        let slack = 1e-10;
        prop_assert!(fb.lower * sv[2].powi(2) <= r.bounds.lower * (1.0 + slack));
        prop_assert!(r.bounds.upper <= sv[0].powi(2) * fb.upper * (1.0 + slack));
    }

    #[test]
    fn frame_order_is_reflexive(s in real_matrix(2..5usize, 5..8usize)) {
        let Ok(f) = FiniteFrame::new(s, "f", &tol()) else { return Ok(()) };
        let v = frame::frame_leq(&f, &f, &tol()).unwrap();
        prop_assert!(v.equivalent);
        prop_assert_eq!(v.ker_dim_f, f.len() - f.dim());
    }

    #[test]
    fn dft_is_an_isometry(x in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..64)) {
        let x: Vec<Complex64> = x.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        let big = multiplier::dft(&x);
        let n1: f64 = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let n2: f64 = big.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((n1 - n2).abs() <= 1e-12);
        let back = multiplier::idft(&big);
        prop_assert!(x.iter().zip(&back).all(|(a, b)| (a - b).norm() <= 1e-12));
    }

    #[test]
    fn multipliers_commute_with_shift(
        m in (1usize..16).prop_flat_map(|h| prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 2 * h))
    ) {
        let m = Multiplier::new(m.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let a = m.matrix();
        let t = linalg::to_complex(&multiplier::shift_matrix(m.len()));
        prop_assert!(linalg::max_abs_diff(&(&a * &t), &(&t * &a)) <= 1e-10);
    }

    #[test]
    fn valid_sign_symbols_rebrick_unitarily(half in 2usize..16, signs in prop::collection::vec(any::<bool>(), 16)) {
        let n = 2 * half;
        let mut v = vec![1.0; n];
        for k in 0..=half {
            let s = if signs[k % 16] { 1.0 } else { -1.0 };
            v[k] = s;
            v[(n - k) % n] = s;
        }
        let m = Multiplier::from_real(&v).unwrap();
        prop_assert!(multiplier::validate_rebrick_multiplier(&m, &tol()).valid);
        let mut delta = vec![0.0; n];
        delta[0] = 1.0;
        let (b, unitary) = multiplier::rebrick_translates(&delta, &m, &tol()).unwrap();
        prop_assert!(unitary);
        prop_assert!(linalg::unitarity_defect(&b).unwrap() <= 1e-10);
    }

    #[test]
    fn symbol_of_analytic_operator(half in 1usize..40) {
        let n = 2 * half;
        let h = multiplier::discrete_hilbert(n).unwrap();
        for (k, v) in h.values().iter().enumerate() {
            let s = Complex64::new(1.0, 0.0) + IMAG * v;
            let expected = if k == 0 || k == half { 1.0 } else if k < half { 2.0 } else { 0.0 };
            prop_assert!((s - Complex64::new(expected, 0.0)).norm() <= 1e-12);
        }
        prop_assert_eq!(multiplier::analytic_defect(n, &tol()).unwrap().kernel_dim, half.saturating_sub(1));
    }

    #[test]
    fn matrix_files_round_trip(m in complex_matrix(6)) {
        prop_assert!(bits_equal(&io::parse_json(&io::to_json(&m)).unwrap(), &m));
        prop_assert!(bits_equal(&io::parse_csv(&io::to_csv(&m)).unwrap(), &m));
    }

    #[test]
    fn parseval_rebrick_iff_orthogonal_symmetric(seed in any::<u64>(), n in 1usize..6, flip in any::<bool>()) {
        let mut r = common::rng(seed);
        let q = common::orthogonal(&mut r, n);
        let d = RealMatrix::from_diagonal(&DVector::from_fn(n, |i, _| if (i % 2 == 0) ^ flip { 1.0 } else { -1.0 }));
        let a = &q * d * q.transpose();
        let f = FiniteFrame::new(common::orthogonal(&mut r, n), "e", &tol()).unwrap();
        let (_, parseval) = frame::parseval_rebrick(&f, &a, &tol()).unwrap();
        prop_assert!(parseval);
    }
}
