//! Cyclic groups ℤ_n, their unitary representations, and the charge sectors
//! they induce.
//!
//! The three descriptions of an abelian symmetry are tied together here: the
//! representation `g ↦ U(g)`, its generator `U(1)`, and the charge observable
//! `C` with `exp(iC) = U(1)`. Charge `c` is the sector on which the generator
//! acts as `e^{2iπc/n}`; the charge observable takes the value `2πc/n` there.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json;
use crate::matrix::{
    eigensystem_normal, positive_arg, tensor_all, ComplexMatrix, Tolerance, C64, ONE, ZERO,
};

/// Largest Hilbert-space dimension accepted by the lattice constructors.
pub const DEFAULT_DIM_CAP: usize = 4096;

/// A unitary representation of ℤ_n, stored as the full list `U(0) … U(n−1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAbelianRep {
    order: usize,
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl FiniteAbelianRep {
    /// Builds the representation generated by `generator`, checking that it is
    /// unitary and that `generator^order = I`.
    pub fn from_generator(order: usize, generator: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidRepresentation("group order must be positive".into()));
        }
        if !generator.is_unitary(tol) {
            return Err(Error::InvalidRepresentation("generator is not unitary".into()));
        }
        let dim = generator.dim();
        let mut elements = Vec::with_capacity(order);
        let mut current = ComplexMatrix::identity(dim);
        for _ in 0..order {
            let next = current.matmul(&generator);
            elements.push(current);
            current = next;
        }
        let closure = current.max_abs_diff(&ComplexMatrix::identity(dim));
        if closure >= tol.eq_tol {
            return Err(Error::InvalidRepresentation(format!(
                "generator^{order} differs from the identity by {closure:e}"
            )));
        }
        Ok(Self {
            order,
            dim,
            elements,
        })
    }

    /// Every group element acts as the identity.
    pub fn trivial(order: usize, dim: usize) -> Self {
        Self {
            order,
            dim,
            elements: vec![ComplexMatrix::identity(dim); order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self) -> &ComplexMatrix {
        &self.elements[1 % self.order]
    }

    /// `U(g)`, with `g` taken mod n.
    pub fn element(&self, g: usize) -> &ComplexMatrix {
        &self.elements[g % self.order]
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Largest deviation from `U(a)U(b) = U(a+b mod n)`, `U(0) = I` and unitarity.
    pub fn law_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.dim);
        let mut worst = self.elements[0].max_abs_diff(&id);
        for a in 0..self.order {
            let ua = &self.elements[a];
            worst = worst.max(ua.matmul(&ua.adjoint()).max_abs_diff(&id));
            for b in 0..self.order {
                let prod = ua.matmul(&self.elements[b]);
                worst = worst.max(prod.max_abs_diff(self.element(a + b)));
            }
        }
        worst
    }

    /// `g ↦ U(g) ⊗ V(g)` for two representations of the same group.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::InvalidRepresentation(format!(
                "cannot tensor representations of Z_{} and Z_{}",
                self.order, other.order
            )));
        }
        Ok(Self {
            order: self.order,
            dim: self.dim * other.dim,
            elements: self
                .elements
                .iter()
                .zip(&other.elements)
                .map(|(a, b)| a.tensor(b))
                .collect(),
        })
    }

    /// Group average `(1/n) Σ_g U(g)`, the projector onto the invariant sector.
    pub fn average(&self) -> ComplexMatrix {
        let sum = self
            .elements
            .iter()
            .fold(ComplexMatrix::zeros(self.dim), |acc, u| &acc + u);
        sum.scale_re(1.0 / self.order as f64)
    }

    pub fn to_document(&self) -> RepDocument {
        RepDocument {
            order: self.order,
            dim: self.dim,
            generator: json::encode_entries(self.generator()),
        }
    }

    pub fn from_document(doc: &RepDocument, tol: &Tolerance) -> Result<Self> {
        let generator = json::decode_entries(doc.dim, &doc.generator)?;
        Self::from_generator(doc.order, generator, tol)
    }
}

/// Serialized representation: `{order, dim, generator: [[re, im], …]}` with
/// the generator flattened row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepDocument {
    pub order: usize,
    pub dim: usize,
    pub generator: Vec<[f64; 2]>,
}

/// Single-site cyclic shift `|m⟩ ↦ |m+1 mod n⟩`.
pub fn cyclic_shift(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, |i, j| if i == (j + 1) % n { ONE } else { ZERO })
}

/// Global translation of `n_systems` particles on an `n_sites` ring.
pub fn shift_representation(n_sites: usize, n_systems: usize) -> Result<FiniteAbelianRep> {
    shift_representation_capped(n_sites, n_systems, DEFAULT_DIM_CAP)
}

pub fn shift_representation_capped(
    n_sites: usize,
    n_systems: usize,
    cap: usize,
) -> Result<FiniteAbelianRep> {
    if n_sites < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 sites, got {n_sites}")));
    }
    if n_systems < 1 {
        return Err(Error::InvalidInput("need at least one system".into()));
    }
    let dim = lattice_dim(n_sites, n_systems, cap)?;
    let shift = cyclic_shift(n_sites);
    let generator = tensor_all(std::iter::repeat_n(&shift, n_systems));
    debug_assert_eq!(generator.dim(), dim);
    FiniteAbelianRep::from_generator(n_sites, generator, &Tolerance::default())
}

/// `n_sites^n_systems`, or `DimOverflow` past `cap`.
pub fn lattice_dim(n_sites: usize, n_systems: usize, cap: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n_systems {
        dim = dim.saturating_mul(n_sites);
        if dim > cap {
            return Err(Error::DimOverflow { dim, cap });
        }
    }
    Ok(dim)
}

#[derive(Debug, Clone)]
pub struct ChargeSector {
    pub charge: usize,
    pub eigenvalue: C64,
    pub projector: ComplexMatrix,
    pub dimension: usize,
    /// Orthonormal basis of the sector.
    pub vectors: Vec<Vec<C64>>,
}

/// Sectors of the generator, ordered by charge. Empty sectors are omitted.
#[derive(Debug, Clone)]
pub struct ChargeDecomposition {
    order: usize,
    dim: usize,
    sectors: Vec<ChargeSector>,
}

impl ChargeDecomposition {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sectors(&self) -> &[ChargeSector] {
        &self.sectors
    }

    pub fn sector(&self, charge: usize) -> Option<&ChargeSector> {
        self.sectors.iter().find(|s| s.charge == charge)
    }

    pub fn dimensions(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.dimension).collect()
    }

    pub fn charges(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.charge).collect()
    }

    /// Projector onto the invariant (charge 0) sector; zero if that sector is empty.
    pub fn vacuum_projector(&self) -> ComplexMatrix {
        self.sector(0)
            .map(|s| s.projector.clone())
            .unwrap_or_else(|| ComplexMatrix::zeros(self.dim))
    }

    /// Largest entrywise deviation of `Σ_c P_c` from the identity.
    pub fn completeness_residual(&self) -> f64 {
        self.sectors
            .iter()
            .fold(ComplexMatrix::zeros(self.dim), |acc, s| &acc + &s.projector)
            .max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// Unitary `W` whose columns are the sector bases, grouped by charge.
    /// `W† M W` expresses `M` in the charge eigenbasis.
    pub fn basis_change(&self) -> ComplexMatrix {
        let columns: Vec<&Vec<C64>> = self.sectors.iter().flat_map(|s| &s.vectors).collect();
        ComplexMatrix::from_fn(self.dim, |i, j| columns.get(j).map_or(ZERO, |v| v[i]))
    }

    pub fn to_charge_basis(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let w = self.basis_change();
        w.adjoint().matmul(m).matmul(&w)
    }

    /// Charge label of each row/column of the charge eigenbasis.
    pub fn basis_charges(&self) -> Vec<usize> {
        self.sectors
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.charge, s.dimension))
            .collect()
    }
}

/// Eigendecomposes the generator and labels each eigenspace by its charge.
pub fn charge_decomposition(rep: &FiniteAbelianRep, tol: &Tolerance) -> Result<ChargeDecomposition> {
    let n = rep.order();
    let spaces = eigensystem_normal(rep.generator(), tol)?;
    let mut sectors: Vec<ChargeSector> = Vec::with_capacity(spaces.len());
    for space in spaces {
        let turns = positive_arg(space.eigenvalue, tol.rank_tol) * n as f64 / (2.0 * PI);
        let charge = (turns.round() as usize) % n;
        let expected = C64::from_polar(1.0, 2.0 * PI * charge as f64 / n as f64);
        if (space.eigenvalue - expected).norm() > tol.rank_tol.max(1e-8) {
            return Err(Error::InvalidRepresentation(format!(
                "eigenvalue {} is not an {n}-th root of unity",
                space.eigenvalue
            )));
        }
        if let Some(existing) = sectors.iter_mut().find(|s| s.charge == charge) {
            existing.projector = &existing.projector + &space.projector;
            existing.dimension += space.rank();
            existing.vectors.extend(space.vectors);
        } else {
            sectors.push(ChargeSector {
                charge,
                eigenvalue: expected,
                dimension: space.rank(),
                projector: space.projector,
                vectors: space.vectors,
            });
        }
    }
    sectors.sort_by_key(|s| s.charge);
    Ok(ChargeDecomposition {
        order: n,
        dim: rep.dim(),
        sectors,
    })
}

/// Hermitian charge observable `C = Σ_c (2πc/n) P_c`.
#[derive(Debug, Clone)]
pub struct ChargeObservable {
    pub matrix: ComplexMatrix,
    pub order: usize,
}

impl ChargeObservable {
    /// `2πc/n`.
    pub fn eigenvalue_for(&self, charge: usize) -> f64 {
        2.0 * PI * charge as f64 / self.order as f64
    }
}

pub fn charge_observable(dec: &ChargeDecomposition, tol: &Tolerance) -> Result<ChargeObservable> {
    let residual = dec.completeness_residual();
    if residual >= tol.eq_tol {
        return Err(Error::IncompleteDecomposition { residual });
    }
    let n = dec.order() as f64;
    let matrix = dec
        .sectors()
        .iter()
        .fold(ComplexMatrix::zeros(dec.dim()), |acc, s| {
            &acc + &s.projector.scale_re(2.0 * PI * s.charge as f64 / n)
        });
    Ok(ChargeObservable {
        matrix,
        order: dec.order(),
    })
}

/// Charge observable straight from a representation.
pub fn charge_of(rep: &FiniteAbelianRep, tol: &Tolerance) -> Result<ChargeObservable> {
    charge_observable(&charge_decomposition(rep, tol)?, tol)
}

/// Two-system charge eigenstate `|c;r⟩ = n^{-1/2} Σ_m e^{−2iπmc/n} |m, m+r⟩`
/// on an `n`-site ring: charge `c`, relative distance `r`.
pub fn charge_eigenstate(n: usize, c: usize, r: usize) -> Result<Vec<C64>> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 sites, got {n}")));
    }
    if c >= n {
        return Err(Error::IndexOutOfRange {
            what: "charge",
            index: c,
            bound: n,
        });
    }
    if r >= n {
        return Err(Error::IndexOutOfRange {
            what: "relation",
            index: r,
            bound: n,
        });
    }
    let norm = 1.0 / (n as f64).sqrt();
    let mut v = vec![ZERO; n * n];
    for m in 0..n {
        let phase = C64::from_polar(norm, -2.0 * PI * (m * c) as f64 / n as f64);
        v[m * n + (m + r) % n] = phase;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{inner, pauli, tensor};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn omega(k: usize, n: usize) -> C64 {
        C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
    }

    #[test]
    fn z3_two_systems_spectrum() {
        let rep = shift_representation(3, 2).unwrap();
        assert_eq!(rep.dim(), 9);
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        assert_eq!(dec.dimensions(), vec![3, 3, 3]);
        assert_eq!(dec.charges(), vec![0, 1, 2]);
        for (s, c) in dec.sectors().iter().zip(0..) {
            assert!((s.eigenvalue - omega(c, 3)).norm() < 1e-12);
        }
    }

    #[test]
    fn z2_scenario_generator_is_xx() {
        let rep = shift_representation(2, 2).unwrap();
        assert_eq!(rep.generator(), &tensor(&pauli::x(), &pauli::x()));
        let single = shift_representation(2, 1).unwrap();
        assert_eq!(single.generator(), &pauli::x());
        assert_eq!(single.element(0), &ComplexMatrix::identity(2));
    }

    #[test]
    fn xx_sectors_match_bell_pairs() {
        let rep = shift_representation(2, 2).unwrap();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        assert_eq!(dec.dimensions(), vec![2, 2]);
        // hand-diagonalized: (|00⟩±|11⟩)/√2, (|01⟩±|10⟩)/√2
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let r = |v: [f64; 4]| v.iter().map(|&x| C64::new(x * s, 0.0)).collect::<Vec<_>>();
        let even = [r([1.0, 0.0, 0.0, 1.0]), r([0.0, 1.0, 1.0, 0.0])];
        let odd = [r([1.0, 0.0, 0.0, -1.0]), r([0.0, 1.0, -1.0, 0.0])];
        let p0 = even.iter().fold(ComplexMatrix::zeros(4), |a, v| &a + &ComplexMatrix::projector_onto(v));
        let p1 = odd.iter().fold(ComplexMatrix::zeros(4), |a, v| &a + &ComplexMatrix::projector_onto(v));
        assert!(dec.sector(0).unwrap().projector.approx_eq(&p0, &tol()));
        assert!(dec.sector(1).unwrap().projector.approx_eq(&p1, &tol()));
    }

    #[test]
    fn single_qubit_sectors_are_plus_minus() {
        let rep = shift_representation(2, 1).unwrap();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = ComplexMatrix::projector_onto(&[C64::new(s, 0.0), C64::new(s, 0.0)]);
        let minus = ComplexMatrix::projector_onto(&[C64::new(s, 0.0), C64::new(-s, 0.0)]);
        assert!(dec.sector(0).unwrap().projector.approx_eq(&plus, &tol()));
        assert!(dec.sector(1).unwrap().projector.approx_eq(&minus, &tol()));
    }

    #[test]
    fn charge_observable_in_charge_basis() {
        let rep = shift_representation(3, 2).unwrap();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        let c = charge_observable(&dec, &tol()).unwrap();
        let diag: Vec<C64> = [0, 0, 0, 1, 1, 1, 2, 2, 2]
            .iter()
            .map(|&k| C64::new(2.0 * PI / 3.0 * k as f64, 0.0))
            .collect();
        let in_basis = dec.to_charge_basis(&c.matrix);
        assert!(in_basis.max_abs_diff(&ComplexMatrix::diagonal(&diag)) < 1e-10);
    }

    #[test]
    fn xx_charge_is_pi_times_odd_projector() {
        let rep = shift_representation(2, 2).unwrap();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        let c = charge_observable(&dec, &tol()).unwrap();
        let odd = dec.sector(1).unwrap().projector.scale_re(PI);
        assert!(c.matrix.approx_eq(&odd, &tol()));
    }

    #[test]
    fn trivial_rep_has_zero_charge() {
        let rep = FiniteAbelianRep::trivial(3, 4);
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        assert_eq!(dec.dimensions(), vec![4]);
        let c = charge_observable(&dec, &tol()).unwrap();
        assert!(c.matrix.max_abs() < 1e-12);
    }

    #[test]
    fn incomplete_decomposition_rejected() {
        let rep = shift_representation(3, 1).unwrap();
        let mut dec = charge_decomposition(&rep, &tol()).unwrap();
        dec.sectors.pop();
        assert!(matches!(
            charge_observable(&dec, &tol()),
            Err(Error::IncompleteDecomposition { .. })
        ));
    }

    #[test]
    fn eigenstate_c0_r0() {
        let v = charge_eigenstate(3, 0, 0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for (i, z) in v.iter().enumerate() {
            let expected = if [0, 4, 8].contains(&i) { s } else { 0.0 };
            assert!((z - C64::new(expected, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn eigenstates_pick_up_phase_and_are_orthonormal() {
        let rep = shift_representation(3, 2).unwrap();
        let mut states = Vec::new();
        for c in 0..3 {
            for r in 0..3 {
                let v = charge_eigenstate(3, c, r).unwrap();
                let moved = rep.generator().apply(&v);
                let expected: Vec<C64> = v.iter().map(|z| z * omega(c, 3)).collect();
                let err = moved.iter().zip(&expected).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(err < 1e-12, "c={c} r={r} err={err}");
                states.push(v);
            }
        }
        for (a, va) in states.iter().enumerate() {
            for (b, vb) in states.iter().enumerate() {
                let ip = inner(va, vb);
                let expected = if a == b { ONE } else { ZERO };
                assert!((ip - expected).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn eigenstate_index_errors() {
        assert!(matches!(charge_eigenstate(3, 3, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(charge_eigenstate(3, 0, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn dim_cap_enforced() {
        assert!(matches!(
            shift_representation(4, 7),
            Err(Error::DimOverflow { .. })
        ));
        assert!(shift_representation_capped(2, 3, 8).is_ok());
        assert!(shift_representation_capped(2, 4, 8).is_err());
    }

    #[test]
    fn group_average_is_vacuum_projector() {
        for (n, k) in [(2, 2), (3, 2), (3, 1), (4, 2)] {
            let rep = shift_representation(n, k).unwrap();
            let dec = charge_decomposition(&rep, &tol()).unwrap();
            assert!(rep.average().approx_eq(&dec.vacuum_projector(), &tol()));
            assert_eq!(dec.dimensions().iter().sum::<usize>(), rep.dim());
            assert!(rep.law_residual() < 1e-12);
        }
    }

    #[test]
    fn document_roundtrip() {
        let rep = shift_representation(3, 2).unwrap();
        let doc = rep.to_document();
        let text = serde_json::to_string(&doc).unwrap();
        let back: RepDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(FiniteAbelianRep::from_document(&back, &tol()).unwrap(), rep);
    }

    #[test]
    fn rejects_non_representation() {
        // X does not satisfy X^3 = I
        let err = FiniteAbelianRep::from_generator(3, pauli::x(), &tol());
        assert!(matches!(err, Err(Error::InvalidRepresentation(_))));
    }
}
