use proptest::prelude::*;

use qrf_core::matrix::{eigensystem_normal, tensor, ComplexMatrix, Tolerance};
use qrf_core::perspectives::{central_shift, commutator_deviation, Relativization};
use qrf_core::random::{random_density_matrix, random_hermitian, random_matrix, seeded_rng};
use qrf_core::symmetry::{is_symmetric, strong_twirl, symmetric_algebra, weak_twirl};
use qrf_core::{charge_decomposition, charge_observable, shift_representation, SymmetryKind};

fn tol() -> Tolerance {
    Tolerance::default()
}

fn small_lattice() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![Just((2, 1)), Just((2, 2)), Just((3, 1)), Just((3, 2)), Just((2, 3)), Just((4, 1))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn twirls_are_idempotent((n, k) in small_lattice(), seed in any::<u64>()) {
        let rep = shift_representation(n, k).unwrap();
        let rho = random_density_matrix(rep.dim(), &mut seeded_rng(seed));
        let w = weak_twirl(&rep, &rho).unwrap();
        prop_assert!(weak_twirl(&rep, &w).unwrap().approx_eq(&w, &tol()));
        let s = strong_twirl(&rep, &rho).unwrap();
        prop_assert!(strong_twirl(&rep, &s).unwrap().approx_eq(&s, &tol()));
        prop_assert!((w.trace() - rho.trace()).norm() < 1e-10);
        prop_assert!(s.trace().re <= 1.0 + 1e-10);
    }

    #[test]
    fn strong_symmetric_implies_weak((n, k) in small_lattice(), seed in any::<u64>()) {
        let rep = shift_representation(n, k).unwrap();
        let a = random_matrix(rep.dim(), &mut seeded_rng(seed));
        let s = strong_twirl(&rep, &a).unwrap();
        prop_assert!(is_symmetric(&rep, &s, SymmetryKind::Strong, &tol()).unwrap());
        prop_assert!(is_symmetric(&rep, &s, SymmetryKind::Weak, &tol()).unwrap());
        let fixed = weak_twirl(&rep, &a).unwrap().approx_eq(&a, &tol());
        prop_assert_eq!(is_symmetric(&rep, &a, SymmetryKind::Weak, &tol()).unwrap(), fixed);
    }

    #[test]
    fn strong_algebra_sits_inside_weak((n, k) in small_lattice()) {
        let rep = shift_representation(n, k).unwrap();
        let weak = symmetric_algebra(&rep, SymmetryKind::Weak, &tol()).unwrap();
        let strong = symmetric_algebra(&rep, SymmetryKind::Strong, &tol()).unwrap();
        for b in strong.basis() {
            prop_assert!(weak.contains(b).unwrap());
        }
    }

    #[test]
    fn relativization_is_an_injective_homomorphism((n, k) in small_lattice(), seed in any::<u64>()) {
        let r = Relativization::new(shift_representation(n, k).unwrap());
        let mut rng = seeded_rng(seed);
        let a = random_matrix(r.target_dim(), &mut rng);
        let b = random_matrix(r.target_dim(), &mut rng);
        prop_assert!(r.homomorphism_residual(&a, &b).unwrap() < 1e-10);
        prop_assert!(r.adjoint_residual(&a).unwrap() < 1e-10);
        prop_assert!(r.injectivity_residual(&a).unwrap() < 1e-10);
        prop_assert!(r.unitality_residual() < 1e-10);
        let prod = r.product_rep().unwrap();
        prop_assert!(is_symmetric(&prod, &r.apply(&a).unwrap(), SymmetryKind::Weak, &tol()).unwrap());
    }

    #[test]
    fn central_shift_keeps_commutators(seed in any::<u64>(), alpha in -3.0f64..3.0) {
        let rep = shift_representation(3, 2).unwrap();
        let c = charge_observable(&charge_decomposition(&rep, &tol()).unwrap(), &tol()).unwrap().matrix;
        let mut rng = seeded_rng(seed);
        // weakly symmetric generators commute with the total charge
        let gens: Vec<ComplexMatrix> = (0..3)
            .map(|_| weak_twirl(&rep, &random_hermitian(9, &mut rng)).unwrap())
            .collect();
        let shifted = central_shift(&gens, &c, alpha, &tol()).unwrap();
        prop_assert!(commutator_deviation(&gens, &shifted) < 1e-10);
    }

    #[test]
    fn tensor_is_associative(seed in any::<u64>()) {
        let mut rng = seeded_rng(seed);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(3, &mut rng);
        let c = random_matrix(2, &mut rng);
        prop_assert!(tensor(&tensor(&a, &b), &c).max_abs_diff(&tensor(&a, &tensor(&b, &c))) < 1e-14);
    }

    #[test]
    fn hermitian_spectra_reassemble(dim in 1usize..7, seed in any::<u64>()) {
        let h = random_hermitian(dim, &mut seeded_rng(seed));
        let spaces = eigensystem_normal(&h, &tol()).unwrap();
        let rebuilt = spaces
            .iter()
            .fold(ComplexMatrix::zeros(dim), |acc, s| &acc + &s.projector.scale(s.eigenvalue));
        prop_assert!(rebuilt.approx_eq(&h, &Tolerance::new(1e-9, 1e-9).unwrap()));
        let total: usize = spaces.iter().map(|s| s.rank()).sum();
        prop_assert_eq!(total, dim);
    }
}
