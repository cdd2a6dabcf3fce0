use std::f64::consts::PI;

use qrf_core::algebra::StarAlgebra;
use qrf_core::group::DEFAULT_DIM_CAP;
use qrf_core::matrix::{pauli, tensor, ComplexMatrix, Tolerance};
use qrf_core::perspectives::{lattice_perspective, perspective_report, table1};
use qrf_core::symmetry::symmetric_algebra;
use qrf_core::{charge_decomposition, charge_observable, shift_representation, span_closure, SymmetryKind};

fn tol() -> Tolerance {
    Tolerance::default()
}

#[test]
fn z3_charge_observable_in_charge_basis() {
    let rep = shift_representation(3, 2).unwrap();
    let dec = charge_decomposition(&rep, &tol()).unwrap();
    assert_eq!(dec.dimensions(), vec![3, 3, 3]);
    let c = charge_observable(&dec, &tol()).unwrap();
    let diag = dec.to_charge_basis(&c.matrix);
    let expected: Vec<f64> = [0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0, 2.0, 2.0]
        .iter()
        .map(|k| 2.0 * PI * k / 3.0)
        .collect();
    for i in 0..9 {
        for j in 0..9 {
            let want = if i == j { expected[i] } else { 0.0 };
            assert!((diag[(i, j)].re - want).abs() < 1e-10 && diag[(i, j)].im.abs() < 1e-10);
        }
    }
}

#[test]
fn table1_z3_matches_z2_pattern() {
    let t = table1(3, 2, &tol(), DEFAULT_DIM_CAP).unwrap();
    let (weak, strong) = (&t.rows[0], &t.rows[1]);
    assert!(!weak.factor && !weak.reversible && weak.charge_accessible);
    assert!(strong.factor && strong.reversible && !strong.charge_accessible);
    assert_eq!(weak.symmetric_algebra.blocks, vec![3, 3, 3]);
    assert_eq!(strong.symmetric_algebra.blocks, vec![3]);
}

#[test]
fn collaborative_z2_is_the_weak_algebra() {
    let rep = shift_representation(2, 2).unwrap();
    let report = perspective_report(2, 2, SymmetryKind::Weak, &tol(), DEFAULT_DIM_CAP).unwrap();
    let weak = symmetric_algebra(&rep, SymmetryKind::Weak, &tol()).unwrap();
    assert!(report.collaborative.same_span(&weak));
    let xx = tensor(&pauli::x(), &pauli::x());
    assert!(report.collaborative.residual(&xx).unwrap() < 1e-10);
}

#[test]
fn dimension_cap_is_enforced() {
    let err = table1(3, 4, &tol(), 64);
    assert!(matches!(err, Err(qrf_core::Error::DimOverflow { .. })));
}

#[test]
fn bicommutant_for_constructed_algebras() {
    let mut algebras = Vec::new();
    for (n, k) in [(2, 2), (3, 2), (2, 3)] {
        let rep = shift_representation(n, k).unwrap();
        for kind in SymmetryKind::ALL {
            algebras.push(symmetric_algebra(&rep, kind, &tol()).unwrap());
            algebras.push(lattice_perspective(n, k, 0, kind, &tol(), DEFAULT_DIM_CAP).unwrap());
        }
    }
    algebras.push(span_closure(&[tensor(&pauli::z(), &pauli::id())], &tol()).unwrap());
    algebras.push(StarAlgebra::full(3, &tol()));
    for a in &algebras {
        assert!(a.bicommutant_holds().unwrap(), "dim {} algebra of size {}", a.dim(), a.algebra_dim());
    }
}

#[test]
fn center_and_blocks_are_consistent() {
    let rep = shift_representation(2, 3).unwrap();
    let weak = symmetric_algebra(&rep, SymmetryKind::Weak, &tol()).unwrap();
    let blocks = weak.block_decomposition().unwrap();
    let total: usize = blocks.blocks.iter().map(|b| b.block_dim * b.block_dim).sum();
    assert_eq!(total, weak.algebra_dim());
    let sum = blocks
        .blocks
        .iter()
        .fold(ComplexMatrix::zeros(8), |acc, b| &acc + &b.projector);
    assert!(sum.approx_eq(weak.unit(), &tol()));
}
