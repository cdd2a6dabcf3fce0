//! Relativization to a frame, perspectival and collaborative algebras.
//!
//! The frame is a regular ℤ_n system with basis `|g⟩`. Relativizing an
//! operator `T` on the observed systems yields `Σ_g |g⟩⟨g| ⊗ U(g) T U(g)†`,
//! which commutes with the joint shift of frame and observed systems.
//!
//! The continuous momenta `P₁, P₂, P_tot` of translation-invariant particles
//! have no finite-dimensional counterpart. The ambiguity they illustrate is
//! reproduced here with ℤ_n local charge observables in their place.

use serde::{Deserialize, Serialize};

use crate::algebra::{find_isomorphism, AlgebraReport, IsomorphismReport, StarAlgebra};
use crate::error::{Error, Result};
use crate::group::{
    charge_decomposition, charge_observable, cyclic_shift, lattice_dim, shift_representation,
    FiniteAbelianRep,
};
use crate::matrix::{ComplexMatrix, Tolerance};
use crate::symmetry::{symmetric_algebra, SymmetryKind};

/// The relativization map of one frame, bound to the observed systems' representation.
#[derive(Debug, Clone)]
pub struct Relativization {
    rep: FiniteAbelianRep,
}

impl Relativization {
    pub fn new(rep: FiniteAbelianRep) -> Self {
        Self { rep }
    }

    /// Equals the group order: the frame carries the regular representation.
    pub fn frame_dim(&self) -> usize {
        self.rep.order()
    }

    pub fn target_dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn joint_dim(&self) -> usize {
        self.frame_dim() * self.target_dim()
    }

    pub fn apply(&self, t: &ComplexMatrix) -> Result<ComplexMatrix> {
        yen(&self.rep, t)
    }

    /// Shift on the frame labels tensored with the observed representation.
    pub fn product_rep(&self) -> Result<FiniteAbelianRep> {
        let n = self.rep.order();
        let frame = FiniteAbelianRep::from_generator(n, cyclic_shift(n), &Tolerance::default())?;
        frame.tensor(&self.rep)
    }

    /// `‖R(ab) − R(a)R(b)‖_F`.
    pub fn homomorphism_residual(&self, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
        let lhs = self.apply(&a.checked_matmul(b)?)?;
        let rhs = self.apply(a)?.matmul(&self.apply(b)?);
        Ok((&lhs - &rhs).frobenius_norm())
    }

    /// `‖R(a†) − R(a)†‖_F`.
    pub fn adjoint_residual(&self, a: &ComplexMatrix) -> Result<f64> {
        Ok((&self.apply(&a.adjoint())? - &self.apply(a)?.adjoint()).frobenius_norm())
    }

    /// `‖R(I) − I‖_F`.
    pub fn unitality_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(self.target_dim());
        let out = self.apply(&id).expect("identity has the target dimension");
        (&out - &ComplexMatrix::identity(self.joint_dim())).frobenius_norm()
    }

    /// `|‖R(a)‖² − n‖a‖²|`: the map scales HS norms by `√n`, so it is injective.
    pub fn injectivity_residual(&self, a: &ComplexMatrix) -> Result<f64> {
        let image = self.apply(a)?.frobenius_norm().powi(2);
        let expected = self.frame_dim() as f64 * a.frobenius_norm().powi(2);
        Ok((image - expected).abs())
    }
}

/// `Σ_g |g⟩⟨g| ⊗ U(g) T U(g)†` on frame ⊗ observed.
pub fn yen(rep: &FiniteAbelianRep, t: &ComplexMatrix) -> Result<ComplexMatrix> {
    if t.dim() != rep.dim() {
        return Err(Error::DimMismatch {
            expected: rep.dim(),
            found: t.dim(),
        });
    }
    let n = rep.order();
    let mut out = ComplexMatrix::zeros(n * rep.dim());
    for (g, u) in rep.elements().iter().enumerate() {
        out = &out + &ComplexMatrix::unit(n, g, g).tensor(&u.conjugate(t));
    }
    Ok(out)
}

fn matrix_units(dim: usize) -> impl Iterator<Item = ComplexMatrix> {
    (0..dim).flat_map(move |i| (0..dim).map(move |j| ComplexMatrix::unit(dim, i, j)))
}

/// Image of the relativization map on all operators of the observed systems.
pub fn perspectival_algebra(rep: &FiniteAbelianRep, observed_dim: usize, tol: &Tolerance) -> Result<StarAlgebra> {
    if observed_dim != rep.dim() {
        return Err(Error::DimMismatch {
            expected: rep.dim(),
            found: observed_dim,
        });
    }
    let images = matrix_units(observed_dim)
        .map(|e| yen(rep, &e))
        .collect::<Result<Vec<_>>>()?;
    StarAlgebra::generate(&images, true, tol)
}

/// Iterated join.
pub fn collaborative_algebra(perspectivals: &[StarAlgebra]) -> Result<StarAlgebra> {
    let (first, rest) = perspectivals
        .split_first()
        .ok_or_else(|| Error::InvalidInput("collaborative algebra of no perspectives".into()))?;
    rest.iter().try_fold(first.clone(), |acc, a| acc.join(a))
}

/// Whether the total charge observable of `rep` lies in `collaborative`.
pub fn charge_accessible(rep: &FiniteAbelianRep, collaborative: &StarAlgebra, tol: &Tolerance) -> Result<bool> {
    let c = charge_observable(&charge_decomposition(rep, tol)?, tol)?;
    collaborative.contains(&c.matrix)
}

/// `{g + α·central}`; fails with `NotCentral` unless `central` commutes with
/// every generator. Pairwise commutators are then untouched, which is
/// re-checked before returning.
pub fn central_shift(
    generators: &[ComplexMatrix],
    central: &ComplexMatrix,
    alpha: f64,
    tol: &Tolerance,
) -> Result<Vec<ComplexMatrix>> {
    for g in generators {
        if g.dim() != central.dim() {
            return Err(Error::DimMismatch {
                expected: central.dim(),
                found: g.dim(),
            });
        }
        let residual = g.commutator(central).frobenius_norm();
        if residual >= tol.eq_tol {
            return Err(Error::NotCentral { residual });
        }
    }
    let shifted: Vec<ComplexMatrix> = generators
        .iter()
        .map(|g| g + &central.scale_re(alpha))
        .collect();
    let deviation = commutator_deviation(generators, &shifted);
    if deviation >= tol.eq_tol {
        return Err(Error::NotCentral { residual: deviation });
    }
    Ok(shifted)
}

/// Largest `‖[a_i, a_j] − [b_i, b_j]‖_F` over all index pairs.
pub fn commutator_deviation(a: &[ComplexMatrix], b: &[ComplexMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.len().min(b.len()) {
        for j in 0..a.len().min(b.len()) {
            let d = &a[i].commutator(&a[j]) - &b[i].commutator(&b[j]);
            worst = worst.max(d.frobenius_norm());
        }
    }
    worst
}

/// `−2⁻¹ mod n` as a real coefficient, the finite stand-in for shifting each
/// momentum by `−P_tot/2`. Needs `n` odd.
pub fn modular_half_shift(n: usize) -> Result<f64> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Unavailable(format!(
            "2 has no inverse modulo {n}; the half-total shift needs an odd order"
        )));
    }
    Ok(-(n.div_ceil(2) as f64))
}

/// Local charges `C ⊗ I` and `I ⊗ C` of two ℤ_n systems.
pub fn local_charge_generators(n: usize, tol: &Tolerance) -> Result<Vec<ComplexMatrix>> {
    let local = charge_observable(&charge_decomposition(&shift_representation(n, 1)?, tol)?, tol)?.matrix;
    let id = ComplexMatrix::identity(n);
    Ok(vec![local.tensor(&id), id.tensor(&local)])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumAmbiguity {
    pub order: usize,
    pub alpha: f64,
    pub commutator_deviation: f64,
    pub original_join_dim: usize,
    pub shifted_join_dim: usize,
    pub original_contains_charge: bool,
    pub shifted_contains_charge: bool,
}

impl MomentumAmbiguity {
    /// Same commutation relations, different verdict on the total charge.
    pub fn is_witness(&self, tol: &Tolerance) -> bool {
        self.commutator_deviation < tol.eq_tol && self.original_contains_charge != self.shifted_contains_charge
    }
}

/// Two generator sets related by a central shift with the total charge:
/// their algebras need not agree on whether the total charge is accessible.
pub fn momentum_ambiguity(n: usize, tol: &Tolerance) -> Result<MomentumAmbiguity> {
    let alpha = modular_half_shift(n)?;
    let rep = shift_representation(n, 2)?;
    let total = charge_observable(&charge_decomposition(&rep, tol)?, tol)?.matrix;
    let original = local_charge_generators(n, tol)?;
    let shifted = central_shift(&original, &total, alpha, tol)?;
    let a = StarAlgebra::generate(&original, true, tol)?;
    let b = StarAlgebra::generate(&shifted, true, tol)?;
    Ok(MomentumAmbiguity {
        order: n,
        alpha,
        commutator_deviation: commutator_deviation(&original, &shifted),
        original_join_dim: a.algebra_dim(),
        shifted_join_dim: b.algebra_dim(),
        original_contains_charge: a.contains(&total)?,
        shifted_contains_charge: b.contains(&total)?,
    })
}

fn system_label(k: usize) -> String {
    char::from_u32('A' as u32 + k as u32)
        .filter(|c| c.is_ascii_uppercase())
        .map(String::from)
        .unwrap_or_else(|| format!("S{k}"))
}

/// `A_{others|frame}`.
pub fn perspective_name(n_systems: usize, frame: usize) -> String {
    let others: String = (0..n_systems).filter(|&k| k != frame).map(system_label).collect();
    format!("A_{{{}|{}}}", others, system_label(frame))
}

/// Perspectival algebra of system `frame` on a lattice of `n_systems` copies
/// of ℤ_n, written in the lattice's own tensor order. Strong perspectives
/// are compressed to the invariant sector.
pub fn lattice_perspective(
    n: usize,
    n_systems: usize,
    frame: usize,
    kind: SymmetryKind,
    tol: &Tolerance,
    dim_cap: usize,
) -> Result<StarAlgebra> {
    if frame >= n_systems {
        return Err(Error::IndexOutOfRange {
            what: "frame system",
            index: frame,
            bound: n_systems,
        });
    }
    let dim = lattice_dim(n, n_systems, dim_cap)?;
    let observed = if n_systems == 1 {
        FiniteAbelianRep::trivial(n, 1)
    } else {
        shift_representation(n, n_systems - 1)?
    };
    let dims = vec![n; n_systems];
    // result factor k is system k, found in the frame-first ordering
    let perm: Vec<usize> = (0..n_systems)
        .map(|k| match k.cmp(&frame) {
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Less => k + 1,
            std::cmp::Ordering::Greater => k,
        })
        .collect();
    let images = matrix_units(observed.dim())
        .map(|e| yen(&observed, &e)?.permute_subsystems(&dims, &perm))
        .collect::<Result<Vec<_>>>()?;
    match kind {
        SymmetryKind::Weak => StarAlgebra::generate(&images, true, tol),
        SymmetryKind::Strong => {
            let p0 = shift_representation(n, n_systems)?.average();
            debug_assert_eq!(p0.dim(), dim);
            let compressed: Vec<ComplexMatrix> = images.iter().map(|m| p0.conjugate(m)).collect();
            StarAlgebra::generate(&compressed, false, tol)
        }
    }
}

/// Perspectival algebras of every system, their join, and charge accessibility.
#[derive(Debug, Clone)]
pub struct PerspectiveReport {
    pub kind: SymmetryKind,
    pub perspectival_algebras: Vec<(String, StarAlgebra)>,
    pub collaborative: StarAlgebra,
    pub charge_in_collaborative: bool,
    pub charge_in_each_perspective: Vec<bool>,
}

pub fn perspective_report(
    n: usize,
    n_systems: usize,
    kind: SymmetryKind,
    tol: &Tolerance,
    dim_cap: usize,
) -> Result<PerspectiveReport> {
    lattice_dim(n, n_systems, dim_cap)?;
    let rep = shift_representation(n, n_systems)?;
    let perspectival_algebras = (0..n_systems)
        .map(|k| Ok((perspective_name(n_systems, k), lattice_perspective(n, n_systems, k, kind, tol, dim_cap)?)))
        .collect::<Result<Vec<_>>>()?;
    let algebras: Vec<StarAlgebra> = perspectival_algebras.iter().map(|(_, a)| a.clone()).collect();
    let collaborative = collaborative_algebra(&algebras)?;
    let charge_in_each_perspective = algebras
        .iter()
        .map(|a| charge_accessible(&rep, a, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(PerspectiveReport {
        kind,
        charge_in_collaborative: charge_accessible(&rep, &collaborative, tol)?,
        perspectival_algebras,
        collaborative,
        charge_in_each_perspective,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedReport {
    pub name: String,
    pub algebra: AlgebraReport,
}

/// One computed row pair of the weak/strong comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub kind: SymmetryKind,
    pub symmetric_algebra: AlgebraReport,
    pub factor: bool,
    pub reversible: bool,
    pub charge_accessible: bool,
    pub perspectival: Vec<NamedReport>,
    pub collaborative: AlgebraReport,
    pub charge_in_each_perspective: Vec<bool>,
    pub isomorphisms: Vec<IsomorphismReport>,
    pub perspectival_is_scalar: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub order: usize,
    pub systems: usize,
    pub dim: usize,
    pub rows: Vec<Table1Row>,
}

pub fn table1_row(
    n: usize,
    n_systems: usize,
    kind: SymmetryKind,
    tol: &Tolerance,
    dim_cap: usize,
) -> Result<Table1Row> {
    lattice_dim(n, n_systems, dim_cap)?;
    let rep = shift_representation(n, n_systems)?;
    let sym = symmetric_algebra(&rep, kind, tol)?;
    let persp = perspective_report(n, n_systems, kind, tol, dim_cap)?;
    let isomorphisms = persp
        .perspectival_algebras
        .iter()
        .map(|(_, a)| find_isomorphism(&sym, a))
        .collect::<Result<Vec<_>>>()?;
    let perspectival = persp
        .perspectival_algebras
        .iter()
        .map(|(name, a)| {
            Ok(NamedReport {
                name: name.clone(),
                algebra: a.report()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let sym_report = sym.report()?;
    Ok(Table1Row {
        kind,
        factor: sym_report.is_factor,
        symmetric_algebra: sym_report,
        reversible: isomorphisms.iter().all(|r| r.isomorphic),
        charge_accessible: persp.charge_in_collaborative,
        perspectival_is_scalar: persp.perspectival_algebras.iter().all(|(_, a)| a.algebra_dim() == 1),
        perspectival,
        collaborative: persp.collaborative.report()?,
        charge_in_each_perspective: persp.charge_in_each_perspective,
        isomorphisms,
    })
}

pub fn table1(n: usize, n_systems: usize, tol: &Tolerance, dim_cap: usize) -> Result<Table1> {
    let dim = lattice_dim(n, n_systems, dim_cap)?;
    let rows = SymmetryKind::ALL
        .iter()
        .map(|&kind| table1_row(n, n_systems, kind, tol, dim_cap))
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1 {
        order: n,
        systems: n_systems,
        dim,
        rows,
    })
}
