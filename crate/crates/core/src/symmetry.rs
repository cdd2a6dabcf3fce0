//! Imposing a symmetry: incoherent (weak) and coherent (strong) group averaging.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::StarAlgebra;
use crate::error::{Error, Result};
use crate::group::{charge_decomposition, charge_observable, FiniteAbelianRep};
use crate::matrix::{ComplexMatrix, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymmetryKind {
    /// `[C, A] = 0`: block diagonal across charge sectors.
    Weak,
    /// `supp(A) ⊆ H₀`: supported on the invariant sector.
    Strong,
}

impl SymmetryKind {
    pub const ALL: [SymmetryKind; 2] = [SymmetryKind::Weak, SymmetryKind::Strong];

    pub fn name(self) -> &'static str {
        match self {
            SymmetryKind::Weak => "weak",
            SymmetryKind::Strong => "strong",
        }
    }
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymmetryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "weak" => Ok(SymmetryKind::Weak),
            "strong" => Ok(SymmetryKind::Strong),
            other => Err(Error::InvalidInput(format!("unknown symmetry kind `{other}`"))),
        }
    }
}

fn check_dim(rep: &FiniteAbelianRep, m: &ComplexMatrix) -> Result<()> {
    if m.dim() != rep.dim() {
        return Err(Error::DimMismatch {
            expected: rep.dim(),
            found: m.dim(),
        });
    }
    Ok(())
}

/// `(1/n) Σ_g U(g) ρ U(g)†`.
pub fn weak_twirl(rep: &FiniteAbelianRep, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(rep, rho)?;
    let sum = rep
        .elements()
        .iter()
        .fold(ComplexMatrix::zeros(rep.dim()), |acc, u| &acc + &u.conjugate(rho));
    Ok(sum.scale_re(1.0 / rep.order() as f64))
}

/// `(1/n²) Σ_{g,g′} U(g) ρ U(g′)†`, evaluated as `Ū ρ Ū†` with `Ū` the group
/// average, which is the invariant-sector projector `Π₀`. Not renormalized.
pub fn strong_twirl(rep: &FiniteAbelianRep, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dim(rep, rho)?;
    Ok(rep.average().conjugate(rho))
}

/// [`strong_twirl`] rescaled to unit trace, or `None` when the surviving
/// trace is below `rank_tol`.
pub fn strong_twirl_normalized(
    rep: &FiniteAbelianRep,
    rho: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<Option<ComplexMatrix>> {
    let out = strong_twirl(rep, rho)?;
    let t = out.trace().re;
    Ok((t > tol.rank_tol).then(|| out.scale_re(1.0 / t)))
}

pub fn twirl(rep: &FiniteAbelianRep, rho: &ComplexMatrix, kind: SymmetryKind) -> Result<ComplexMatrix> {
    match kind {
        SymmetryKind::Weak => weak_twirl(rep, rho),
        SymmetryKind::Strong => strong_twirl(rep, rho),
    }
}

/// Weak: `‖[C, a]‖_F < eq_tol`. Strong: `‖a − Π₀aΠ₀‖_F < eq_tol`.
pub fn is_symmetric(
    rep: &FiniteAbelianRep,
    a: &ComplexMatrix,
    kind: SymmetryKind,
    tol: &Tolerance,
) -> Result<bool> {
    Ok(symmetry_residual(rep, a, kind, tol)? < tol.eq_tol)
}

/// The norm compared against `eq_tol` by [`is_symmetric`].
pub fn symmetry_residual(
    rep: &FiniteAbelianRep,
    a: &ComplexMatrix,
    kind: SymmetryKind,
    tol: &Tolerance,
) -> Result<f64> {
    check_dim(rep, a)?;
    match kind {
        SymmetryKind::Weak => {
            let c = charge_observable(&charge_decomposition(rep, tol)?, tol)?;
            Ok(c.matrix.commutator(a).frobenius_norm())
        }
        SymmetryKind::Strong => {
            let p0 = rep.average();
            Ok((a - &p0.conjugate(a)).frobenius_norm())
        }
    }
}

/// `A_W = ⊕_c Lin(H_c)` or `A_S = Lin(H₀)`.
pub fn symmetric_algebra(rep: &FiniteAbelianRep, kind: SymmetryKind, tol: &Tolerance) -> Result<StarAlgebra> {
    let dec = charge_decomposition(rep, tol)?;
    match kind {
        SymmetryKind::Weak => StarAlgebra::charge_block_diagonal(&dec, tol),
        SymmetryKind::Strong => StarAlgebra::corner(&dec.vacuum_projector(), tol),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{charge_eigenstate, shift_representation};
    use crate::matrix::C64;
    use crate::random::{random_density_matrix, random_matrix, seeded_rng};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn z3() -> FiniteAbelianRep {
        shift_representation(3, 2).unwrap()
    }

    #[test]
    fn weak_twirl_of_superposition_decoheres() {
        let s00 = charge_eigenstate(3, 0, 0).unwrap();
        let s10 = charge_eigenstate(3, 1, 0).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi: Vec<C64> = s00.iter().zip(&s10).map(|(a, b)| (a + b) * h).collect();
        let rho = ComplexMatrix::projector_onto(&psi);
        let expected = (&ComplexMatrix::projector_onto(&s00) + &ComplexMatrix::projector_onto(&s10)).scale_re(0.5);
        assert!(weak_twirl(&z3(), &rho).unwrap().approx_eq(&expected, &tol()));
    }

    #[test]
    fn maximally_mixed_is_fixed() {
        let rho = ComplexMatrix::identity(9).scale_re(1.0 / 9.0);
        assert!(weak_twirl(&z3(), &rho).unwrap().approx_eq(&rho, &tol()));
    }

    #[test]
    fn strong_twirl_examples() {
        let a = charge_eigenstate(3, 0, 1).unwrap();
        let b = charge_eigenstate(3, 0, 2).unwrap();
        let rho = ComplexMatrix::outer(&a, &b).unwrap();
        assert!(strong_twirl(&z3(), &rho).unwrap().approx_eq(&rho, &tol()));
        let s10 = charge_eigenstate(3, 1, 0).unwrap();
        let out = strong_twirl(&z3(), &ComplexMatrix::projector_onto(&s10)).unwrap();
        assert!(out.max_abs() < 1e-12);
        assert!(strong_twirl_normalized(&z3(), &ComplexMatrix::projector_onto(&s10), &tol())
            .unwrap()
            .is_none());
    }

    #[test]
    fn strong_twirl_matches_double_sum() {
        let rep = z3();
        let mut rng = seeded_rng(3);
        let rho = random_density_matrix(9, &mut rng);
        let mut sum = ComplexMatrix::zeros(9);
        for u in rep.elements() {
            for v in rep.elements() {
                sum = &sum + &u.matmul(&rho).matmul(&v.adjoint());
            }
        }
        let direct = sum.scale_re(1.0 / 9.0);
        assert!(strong_twirl(&rep, &rho).unwrap().approx_eq(&direct, &tol()));
    }

    #[test]
    fn weak_twirl_is_pinching() {
        let rep = z3();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        let mut rng = seeded_rng(5);
        let rho = random_matrix(9, &mut rng);
        let pinched = dec
            .sectors()
            .iter()
            .fold(ComplexMatrix::zeros(9), |acc, s| &acc + &s.projector.conjugate(&rho));
        assert!(weak_twirl(&rep, &rho).unwrap().approx_eq(&pinched, &tol()));
    }

    #[test]
    fn charge_observable_symmetry() {
        let rep = z3();
        let c = charge_observable(&charge_decomposition(&rep, &tol()).unwrap(), &tol()).unwrap();
        assert!(is_symmetric(&rep, &c.matrix, SymmetryKind::Weak, &tol()).unwrap());
        assert!(!is_symmetric(&rep, &c.matrix, SymmetryKind::Strong, &tol()).unwrap());
    }

    #[test]
    fn dimension_checks() {
        let bad = ComplexMatrix::identity(4);
        assert!(matches!(weak_twirl(&z3(), &bad), Err(Error::DimMismatch { .. })));
        assert!(matches!(strong_twirl(&z3(), &bad), Err(Error::DimMismatch { .. })));
        assert!(is_symmetric(&z3(), &bad, SymmetryKind::Weak, &tol()).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Weak".parse::<SymmetryKind>().unwrap(), SymmetryKind::Weak);
        assert_eq!("strong".parse::<SymmetryKind>().unwrap(), SymmetryKind::Strong);
        assert!("medium".parse::<SymmetryKind>().is_err());
    }

    #[test]
    fn symmetric_algebras_of_z3() {
        let weak = symmetric_algebra(&z3(), SymmetryKind::Weak, &tol()).unwrap();
        let strong = symmetric_algebra(&z3(), SymmetryKind::Strong, &tol()).unwrap();
        assert_eq!(weak.algebra_dim(), 27);
        assert_eq!(strong.algebra_dim(), 9);
        for b in strong.basis() {
            assert!(weak.contains(b).unwrap());
        }
    }
}
