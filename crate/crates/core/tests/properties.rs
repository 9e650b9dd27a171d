use num_complex::Complex64;
use orthospec_core::experiments::{fit_decay, mt_rational_rate, DecayModel};
use orthospec_core::matfun::{krylov_apply, ContourSpec, KrylovOptions, OperatorKind};
use orthospec_core::orthopoly::{gauss_quadrature, recurrence_coeffs, Family};
use orthospec_core::pde::{solve_diffusion, DiffusionProblem};
use orthospec_core::structmat::op_norm_estimate;
use orthospec_core::transforms::{dft_unitary, mt_analysis, parseval_norm, Direction};
use orthospec_core::wsystems::{laguerre_w_diff, ultra_w_diff};
use orthospec_core::{BasisKind, BasisSpec, CoeffVec, DiffMatrix, IndexSet};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![
        Just(Family::Legendre),
        Just(Family::Hermite),
        (-0.9f64..6.0).prop_map(|alpha| Family::Laguerre { alpha }),
        (-0.9f64..6.0, -0.9f64..6.0).prop_map(|(alpha, beta)| Family::Jacobi { alpha, beta }),
        (-0.9f64..6.0).prop_map(|a| Family::Jacobi { alpha: a, beta: a }),
    ]
}

fn complex_vec(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| Complex64::new(a, b)),
        len,
    )
}

fn w_system() -> impl Strategy<Value = (BasisKind, usize)> {
    (prop::bool::ANY, 1.05f64..6.0, 1usize..80).prop_map(|(lag, alpha, n)| {
        let kind = if lag {
            BasisKind::LaguerreW { alpha }
        } else {
            BasisKind::UltrasphericalW { alpha }
        };
        (kind, n)
    })
}

fn w_diff(kind: BasisKind, n: usize) -> DiffMatrix {
    match kind {
        BasisKind::LaguerreW { alpha } => laguerre_w_diff(alpha, n).unwrap().into(),
        BasisKind::UltrasphericalW { alpha } => ultra_w_diff(alpha, n).unwrap().into(),
        _ => unreachable!(),
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn recurrence_is_favard_positive_and_even_weights_have_zero_diagonal(f in family(), n in 1usize..120) {
        let rc = recurrence_coeffs(f, n).unwrap();
        prop_assert!(rc.offdiag.iter().all(|&b| b > 0.0));
        let symmetric = match f {
            Family::Legendre | Family::Hermite => true,
            Family::Jacobi { alpha, beta } => alpha == beta,
            Family::Laguerre { .. } => false,
        };
        if symmetric {
            prop_assert!(rc.diag.iter().all(|&c| c == 0.0));
        }
    }

    #[test]
    fn gauss_weights_sum_to_mu0_and_nodes_increase(f in family(), n in 1usize..60) {
        let rc = recurrence_coeffs(f, n + 1).unwrap();
        let q = gauss_quadrature(&rc, n).unwrap();
        let total: f64 = q.weights.iter().sum();
        prop_assert!((total - rc.mu0).abs() <= 1e-12 * rc.mu0, "{} vs {}", total, rc.mu0);
        prop_assert!(q.weights.iter().all(|&w| w > 0.0));
        prop_assert!(q.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn index_set_follows_kind(alpha in -0.99f64..8.0) {
        prop_assert_eq!(BasisSpec::mt().index_set(), IndexSet::TwoSided);
        prop_assert_eq!(BasisSpec::hermite().index_set(), IndexSet::OneSided);
        prop_assert_eq!(BasisSpec::laguerre(alpha).unwrap().index_set(), IndexSet::OneSided);
        prop_assert_eq!(BasisSpec::ultraspherical(alpha).unwrap().index_set(), IndexSet::OneSided);
        let needs_more = alpha <= 1.0;
        prop_assert_eq!(BasisSpec::laguerre(alpha).unwrap().diff_matrix(8).is_err(), needs_more);
        prop_assert_eq!(BasisSpec::ultraspherical(alpha).unwrap().diff_matrix(8).is_err(), needs_more);
    }

    #[test]
    fn alpha_at_or_below_minus_one_is_rejected(alpha in -10.0f64..=-1.0) {
        prop_assert!(BasisSpec::laguerre(alpha).is_err());
        prop_assert!(BasisSpec::ultraspherical(alpha).is_err());
    }

    #[test]
    fn t_system_matrices_are_exactly_skew_hermitian(n in 0usize..60, mt in prop::bool::ANY) {
        let spec = if mt { BasisSpec::mt() } else { BasisSpec::hermite() };
        let a = spec.diff_matrix(n).unwrap().to_dense();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert_eq!(a[(i, j)], -a[(j, i)].conj());
            }
        }
    }

    #[test]
    fn w_system_matrices_are_exactly_skew_with_positive_generators((kind, n) in w_system()) {
        let d = w_diff(kind, n);
        let a = d.to_dense();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert_eq!(a[(i, j)], -a[(j, i)].conj());
                if matches!(kind, BasisKind::UltrasphericalW { .. }) && (i + j) % 2 == 0 {
                    prop_assert_eq!(a[(i, j)], Complex64::new(0.0, 0.0));
                }
            }
        }
        if let DiffMatrix::Semiseparable(s) = &d {
            prop_assert!(s.gen_a().iter().all(|&v| v > 0.0));
            prop_assert!(s.gen_b().iter().all(|&v| v > 0.0));
        } else {
            prop_assert!(false, "W-system matrix is not semiseparable");
        }
    }

    #[test]
    fn structured_matvec_matches_dense((kind, n) in w_system(), seed in complex_vec(81), rows_frac in 0.0f64..1.0) {
        let d = w_diff(kind, n);
        let x = &seed[..n + 1];
        let a = d.to_dense();
        let y = d.matvec(x).unwrap();
        let scale = norm(&y).max(1e-300);
        let dense: Vec<Complex64> = (0..=n).map(|m| (0..=n).map(|j| a[(m, j)] * x[j]).sum()).collect();
        let err: f64 = y.iter().zip(&dense).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-12 * scale);
        let rows = ((n + 1) as f64 * rows_frac) as usize;
        let yr = d.matvec_rect(x, rows).unwrap();
        for (m, v) in yr.iter().enumerate() {
            prop_assert!((v - y[m]).norm() <= 1e-12 * scale);
        }
    }

    #[test]
    fn structured_solves_have_small_residual((kind, n) in w_system(), seed in complex_vec(81), kre in -2.0f64..2.0, kim in -2.0f64..2.0) {
        let d = w_diff(kind, n);
        let x = &seed[..n + 1];
        let kappa = Complex64::new(kre, kim) / (1.0 + n as f64);
        let y = d.solve_shifted(kappa, x).unwrap();
        let dy = d.matvec(&y).unwrap();
        let res: f64 = (0..=n).map(|m| (y[m] - kappa * dy[m] - x[m]).norm_sqr()).sum::<f64>().sqrt();
        prop_assert!(res <= 1e-10 * norm(x).max(1e-300));
    }

    #[test]
    fn dft_round_trip_is_identity(p in 0u32..10, seed in complex_vec(512)) {
        let z = &seed[..1usize << p];
        let f = dft_unitary(z, Direction::Forward).unwrap();
        prop_assert!((norm(&f) - norm(z)).abs() <= 1e-13 * (1.0 + norm(z)));
        let back = dft_unitary(&f, Direction::Inverse).unwrap();
        for (a, b) in back.iter().zip(z) {
            prop_assert!((a - b).norm() <= 1e-13);
        }
    }

    #[test]
    fn non_power_of_two_dft_is_rejected(n in 3usize..500) {
        prop_assume!(!n.is_power_of_two());
        prop_assert!(dft_unitary(&vec![Complex64::new(1.0, 0.0); n], Direction::Forward).is_err());
    }

    #[test]
    fn coefficient_lengths_follow_index_set(n in 0usize..40, alpha in 1.5f64..4.0) {
        prop_assert_eq!(CoeffVec::zeros(BasisSpec::mt(), n).data().len(), 2 * n + 1);
        prop_assert_eq!(CoeffVec::zeros(BasisSpec::laguerre(alpha).unwrap(), n).data().len(), n + 1);
        prop_assert_eq!(CoeffVec::zeros(BasisSpec::mt(), n).offset(), -(n as i64));
    }

    #[test]
    fn mt_transform_is_parseval_for_resolved_functions(shift in -2.0f64..2.0, width in 0.5f64..2.0) {
        // ||e^{-(x-s)^2/w^2}||_2^2 = w sqrt(pi/2)
        let f = |x: f64| (-((x - shift) / width).powi(2)).exp();
        let c = mt_analysis(f, 256, None).unwrap();
        let want = (width * (std::f64::consts::PI / 2.0).sqrt()).sqrt();
        prop_assert!((parseval_norm(&c) - want).abs() <= 1e-8 * want);
    }

    #[test]
    fn rational_rate_is_conjugation_invariant(
        poles in prop::collection::vec((-3.0f64..3.0, 0.05f64..3.0, prop::bool::ANY), 1..6)
    ) {
        let set: Vec<Complex64> = poles.iter().map(|&(re, im, up)| Complex64::new(re, if up { im } else { -im })).collect();
        let conj: Vec<Complex64> = set.iter().map(|s| s.conj()).collect();
        let a = mt_rational_rate(&set).unwrap();
        let b = mt_rational_rate(&conj).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
        prop_assert!(a > 0.0 && a < 1.0);
    }

    #[test]
    fn synthetic_rates_are_recovered(rho in 0.05f64..0.95, p in 0.5f64..4.0) {
        let spec = BasisSpec::hermite();
        let geo = (0..=40).map(|n| Complex64::new(rho.powi(n), 0.0)).collect();
        let fit = fit_decay(&CoeffVec::new(spec, 40, geo).unwrap(), DecayModel::Exponential, (1, 30)).unwrap();
        prop_assert!((fit.parameter - rho).abs() <= 1e-6);
        let alg = (0..=400).map(|n| Complex64::new(((n.max(1)) as f64).powf(-p), 0.0)).collect();
        let fit = fit_decay(&CoeffVec::new(spec, 400, alg).unwrap(), DecayModel::Algebraic, (10, 400)).unwrap();
        prop_assert!((fit.parameter - p).abs() <= 1e-3);
        prop_assert!(fit.points >= 5);
    }

    #[test]
    fn krylov_exponential_of_skew_operator_is_unitary((kind, n) in w_system(), seed in complex_vec(81), t in -3.0f64..3.0) {
        let d = w_diff(kind, n);
        let x = &seed[..n + 1];
        let out = krylov_apply(|v| d.matvec(v), OperatorKind::SkewHermitian, Complex64::new(t / (1.0 + n as f64), 0.0), x, &KrylovOptions::default()).unwrap();
        prop_assert!((norm(&out.value) - norm(x)).abs() <= 1e-10 * norm(x));
    }

    #[test]
    fn enclosing_contour_exceeds_spectral_radius((kind, n) in w_system()) {
        let d = w_diff(kind, n);
        let contour = ContourSpec::enclosing(&d, 1.25, 64).unwrap();
        let est = op_norm_estimate(&d, 1, 200).unwrap();
        prop_assert!(contour.radius > est.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn diffusion_is_dissipative(alpha in 1.5f64..4.0, k in 1usize..4, amp in 0.2f64..2.0, steps in 1usize..12) {
        let u0 = move |x: f64| amp * (k as f64 * std::f64::consts::PI * x).sin() * (1.0 - x * x);
        let report = solve_diffusion(&DiffusionProblem::new(alpha, 32, &u0, 0.05, steps)).unwrap();
        prop_assert_eq!(report.norms.len(), steps + 1);
        prop_assert!(report.norms.windows(2).all(|w| w[1] <= w[0] + 1e-12));
    }
}
