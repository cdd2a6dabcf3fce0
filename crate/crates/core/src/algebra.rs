//! Finite-dimensional *-algebras of matrices.
//!
//! An algebra is stored as a Hilbert–Schmidt orthonormal basis of its linear
//! span. Membership, joins and structural queries then reduce to projections
//! and small eigenproblems. Structural data (center, Wedderburn blocks) is
//! computed on first use and cached.
//!
//! Algebras need not contain the ambient identity: a corner `Lin(H₀)` is a
//! *-algebra whose unit is the projector onto `H₀`. Every algebra has a unit,
//! the projector onto the union of the ranges of its elements.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::ChargeDecomposition;
use crate::matrix::{
    eigensystem_normal, hermitian_eigen, hs_inner_unchecked, range_projector, ComplexMatrix,
    Tolerance, C64,
};
use crate::random::seeded_rng;

/// Seed for the random central element drawn by [`StarAlgebra::block_decomposition`].
pub const DEFAULT_SEED: u64 = 0x5eed_0fa1;

const MAX_DRAWS: usize = 5;

#[derive(Debug, Clone)]
pub struct StarAlgebra {
    dim: usize,
    basis: Vec<ComplexMatrix>,
    contains_identity: bool,
    tol: Tolerance,
    seed: u64,
    unit: OnceLock<ComplexMatrix>,
    center: OnceLock<Box<StarAlgebra>>,
    blocks: OnceLock<Result<BlockStructure>>,
}

/// One Wedderburn block: the algebra restricted to `projector` is
/// `Lin(C^block_dim) ⊗ I_multiplicity`.
#[derive(Debug, Clone)]
pub struct Block {
    pub projector: ComplexMatrix,
    pub block_dim: usize,
    pub multiplicity: usize,
    pub rank: usize,
}

#[derive(Debug, Clone)]
pub struct BlockStructure {
    pub blocks: Vec<Block>,
    pub is_factor: bool,
}

impl BlockStructure {
    /// Block dimensions, largest first.
    pub fn profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.blocks.iter().map(|b| b.block_dim).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }
}

/// Serializable summary of an algebra's structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub blocks: Vec<usize>,
    pub multiplicities: Vec<usize>,
    pub is_factor: bool,
    pub contains_identity: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsomorphismReport {
    pub isomorphic: bool,
    pub reason: String,
    pub left_profile: Vec<usize>,
    pub right_profile: Vec<usize>,
}

/// Orthogonalizes `x` against `basis` (two passes) and appends the normalized
/// remainder when it is not negligible.
fn try_extend(basis: &mut Vec<ComplexMatrix>, x: &ComplexMatrix, rank_tol: f64) -> bool {
    let norm = x.frobenius_norm();
    if norm <= rank_tol {
        return false;
    }
    let mut r = x.scale_re(1.0 / norm);
    for _ in 0..2 {
        for b in basis.iter() {
            let c = hs_inner_unchecked(b, &r);
            if c != C64::new(0.0, 0.0) {
                r = &r - &b.scale(c);
            }
        }
    }
    let rn = r.frobenius_norm();
    if rn <= rank_tol {
        return false;
    }
    basis.push(r.scale_re(1.0 / rn));
    true
}

fn orthonormalize(items: impl IntoIterator<Item = ComplexMatrix>, rank_tol: f64) -> Vec<ComplexMatrix> {
    let mut basis = Vec::new();
    for x in items {
        try_extend(&mut basis, &x, rank_tol);
    }
    basis
}

fn common_dim(items: &[ComplexMatrix]) -> Result<usize> {
    let first = items
        .first()
        .ok_or_else(|| Error::InvalidInput("need at least one generator".into()))?
        .dim();
    for m in items {
        if m.dim() != first {
            return Err(Error::DimMismatch {
                expected: first,
                found: m.dim(),
            });
        }
    }
    Ok(first)
}

/// Smallest unital *-algebra containing every generator.
pub fn span_closure(generators: &[ComplexMatrix], tol: &Tolerance) -> Result<StarAlgebra> {
    StarAlgebra::generate(generators, true, tol)
}

impl StarAlgebra {
    fn from_basis(dim: usize, basis: Vec<ComplexMatrix>, tol: &Tolerance) -> Self {
        let mut alg = Self {
            dim,
            basis,
            contains_identity: false,
            tol: *tol,
            seed: DEFAULT_SEED,
            unit: OnceLock::new(),
            center: OnceLock::new(),
            blocks: OnceLock::new(),
        };
        alg.contains_identity = alg
            .residual_norm(&ComplexMatrix::identity(dim))
            < tol.eq_tol * (dim as f64).sqrt().max(1.0);
        alg
    }

    /// *-algebra generated by `generators`; with `unital` the identity is
    /// adjoined first. Products and adjoints are folded in until the span
    /// stops growing.
    pub fn generate(generators: &[ComplexMatrix], unital: bool, tol: &Tolerance) -> Result<Self> {
        let dim = common_dim(generators)?;
        let max_dim = dim * dim;
        let seeds = unital
            .then(|| ComplexMatrix::identity(dim))
            .into_iter()
            .chain(generators.iter().cloned());
        let mut basis = orthonormalize(seeds, tol.rank_tol);
        let mut i = 0;
        while i < basis.len() && basis.len() < max_dim {
            let ei = basis[i].clone();
            try_extend(&mut basis, &ei.adjoint(), tol.rank_tol);
            for j in 0..=i {
                if basis.len() >= max_dim {
                    break;
                }
                let ej = basis[j].clone();
                try_extend(&mut basis, &ei.matmul(&ej), tol.rank_tol);
                if j != i {
                    try_extend(&mut basis, &ej.matmul(&ei), tol.rank_tol);
                }
            }
            i += 1;
        }
        Ok(Self::from_basis(dim, basis, tol))
    }

    /// `Lin(C^dim)`.
    pub fn full(dim: usize, tol: &Tolerance) -> Self {
        let basis = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| ComplexMatrix::unit(dim, i, j)))
            .collect();
        Self::from_basis(dim, basis, tol)
    }

    /// Multiples of the identity.
    pub fn scalars(dim: usize, tol: &Tolerance) -> Self {
        let basis = vec![ComplexMatrix::identity(dim).scale_re(1.0 / (dim as f64).sqrt())];
        Self::from_basis(dim, basis, tol)
    }

    /// Direct sum `⊕_k Lin(V_k)` of full algebras on mutually orthogonal
    /// subspaces, each given by an orthonormal basis.
    pub fn direct_sum(dim: usize, subspaces: &[Vec<Vec<C64>>], tol: &Tolerance) -> Result<Self> {
        let mut basis = Vec::new();
        for vecs in subspaces {
            for u in vecs {
                for v in vecs {
                    if u.len() != dim || v.len() != dim {
                        return Err(Error::DimMismatch {
                            expected: dim,
                            found: u.len().min(v.len()),
                        });
                    }
                    basis.push(ComplexMatrix::outer(u, v)?);
                }
            }
        }
        Ok(Self::from_basis(dim, orthonormalize(basis, tol.rank_tol), tol))
    }

    /// Block-diagonal operators across the charge sectors, `⊕_c Lin(H_c)`.
    pub fn charge_block_diagonal(dec: &ChargeDecomposition, tol: &Tolerance) -> Result<Self> {
        let subspaces: Vec<Vec<Vec<C64>>> = dec.sectors().iter().map(|s| s.vectors.clone()).collect();
        Self::direct_sum(dec.dim(), &subspaces, tol)
    }

    /// Operators supported on the range of `projector`: `Lin(range P)`.
    pub fn corner(projector: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if !projector.is_projector(tol) {
            return Err(Error::InvalidInput("corner algebra needs an orthogonal projector".into()));
        }
        let (values, vectors) = hermitian_eigen(projector);
        let range: Vec<Vec<C64>> = values
            .iter()
            .zip(vectors)
            .filter(|(v, _)| **v > 0.5)
            .map(|(_, vec)| vec)
            .collect();
        if range.is_empty() {
            return Err(Error::InvalidInput("corner algebra of the zero projector".into()));
        }
        Self::direct_sum(projector.dim(), &[range], tol)
    }

    /// Span of `items` taken as an algebra without closing it. The caller
    /// vouches for closure (e.g. the image of a homomorphism).
    pub fn from_closed_span(items: &[ComplexMatrix], tol: &Tolerance) -> Result<Self> {
        let dim = common_dim(items)?;
        Ok(Self::from_basis(dim, orthonormalize(items.iter().cloned(), tol.rank_tol), tol))
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self.blocks = OnceLock::new();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the algebra as a complex vector space.
    pub fn algebra_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn contains_identity(&self) -> bool {
        self.contains_identity
    }

    pub fn tolerance(&self) -> &Tolerance {
        &self.tol
    }

    /// HS-orthogonal projection of `x` onto the algebra's span.
    pub fn project(&self, x: &ComplexMatrix) -> ComplexMatrix {
        self.basis.iter().fold(ComplexMatrix::zeros(self.dim), |acc, b| {
            &acc + &b.scale(hs_inner_unchecked(b, x))
        })
    }

    fn residual_norm(&self, x: &ComplexMatrix) -> f64 {
        (x - &self.project(x)).frobenius_norm()
    }

    /// Frobenius norm of the part of `x` outside the algebra.
    pub fn residual(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check_dim(x)?;
        Ok(self.residual_norm(x))
    }

    pub fn contains(&self, x: &ComplexMatrix) -> Result<bool> {
        Ok(self.residual(x)? < self.tol.eq_tol)
    }

    fn check_dim(&self, x: &ComplexMatrix) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Largest residuals of adjoints and pairwise products of basis elements.
    /// Both are ~0 for a genuine *-algebra.
    pub fn closure_residuals(&self) -> (f64, f64) {
        let mut adj: f64 = 0.0;
        let mut prod: f64 = 0.0;
        for a in &self.basis {
            adj = adj.max(self.residual_norm(&a.adjoint()));
            for b in &self.basis {
                prod = prod.max(self.residual_norm(&a.matmul(b)));
            }
        }
        (adj, prod)
    }

    /// Identity element of the algebra: the projector onto its support.
    pub fn unit(&self) -> &ComplexMatrix {
        self.unit.get_or_init(|| {
            if self.contains_identity {
                return ComplexMatrix::identity(self.dim);
            }
            let gram = self.basis.iter().fold(ComplexMatrix::zeros(self.dim), |acc, b| {
                &(&acc + &b.matmul(&b.adjoint())) + &b.adjoint().matmul(b)
            });
            range_projector(&gram, &self.tol)
        })
    }

    /// Same span as `other` (mutual containment).
    pub fn same_span(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.algebra_dim() == other.algebra_dim()
            && other.basis.iter().all(|b| self.residual_norm(b) < self.tol.eq_tol)
            && self.basis.iter().all(|b| other.residual_norm(b) < self.tol.eq_tol)
    }

    /// Everything commuting with every element of the algebra.
    ///
    /// Solves `[X, b] = 0` for all basis elements `b` at once: the null space
    /// of `M = Σ_b L_b† L_b` with `L_b vec(X) = vec(Xb − bX)`.
    pub fn commutant(&self) -> StarAlgebra {
        let n = self.dim;
        let mut s1 = ComplexMatrix::zeros(n);
        let mut s2 = ComplexMatrix::zeros(n);
        let mut cross = ComplexMatrix::zeros(n * n);
        for b in &self.basis {
            let bd = b.adjoint();
            s1 = &s1 + &b.matmul(&bd);
            s2 = &s2 + &bd.matmul(b);
            cross = &cross + &(&b.tensor(&b.conj()) + &bd.tensor(&b.transpose()));
        }
        let id = ComplexMatrix::identity(n);
        let gram = &(&id.tensor(&s1.conj()) + &s2.tensor(&id)) - &cross;
        let (values, vectors) = hermitian_eigen(&gram);
        let largest = values.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
        let cutoff = self.tol.rank_tol * largest;
        let null: Vec<ComplexMatrix> = values
            .iter()
            .zip(vectors)
            .filter(|(v, _)| **v <= cutoff)
            .map(|(_, vec)| ComplexMatrix::from_row_major(n, vec).expect("n*n entries"))
            .collect();
        Self::from_basis(n, orthonormalize(null, self.tol.rank_tol), &self.tol).with_seed(self.seed)
    }

    /// Algebra ∩ commutant, obtained by projecting the commutant onto the
    /// algebra (the trace-preserving conditional expectation maps the
    /// commutant onto the center).
    pub fn center(&self) -> &StarAlgebra {
        self.center.get_or_init(|| {
            let comm = self.commutant();
            let projected = comm.basis.iter().map(|x| self.project(x));
            let basis = orthonormalize(projected, self.tol.rank_tol);
            Box::new(Self::from_basis(self.dim, basis, &self.tol).with_seed(self.seed))
        })
    }

    /// Wedderburn–Artin decomposition from the spectral projectors of a random
    /// Hermitian central element. Retries with fresh draws when the element
    /// fails to separate all minimal central projectors.
    pub fn block_decomposition(&self) -> Result<BlockStructure> {
        self.blocks.get_or_init(|| self.compute_blocks()).clone()
    }

    fn compute_blocks(&self) -> Result<BlockStructure> {
        let center = self.center();
        let mut hermitian: Vec<ComplexMatrix> = Vec::new();
        for c in center.basis() {
            let re = (c + &c.adjoint()).scale_re(0.5);
            let im = (c - &c.adjoint()).scale(C64::new(0.0, -0.5));
            for h in [re, im] {
                if h.frobenius_norm() > self.tol.rank_tol {
                    hermitian.push(h);
                }
            }
        }
        let wanted = center.algebra_dim();
        let unit = self.unit().clone();
        let mut rng = seeded_rng(self.seed);
        for _ in 0..MAX_DRAWS {
            let h = hermitian.iter().fold(ComplexMatrix::zeros(self.dim), |acc, x| {
                &acc + &x.scale_re(rng.gen_range(-1.0..1.0))
            });
            let spaces = eigensystem_normal(&h, &self.tol)?;
            let mut blocks = Vec::new();
            for space in spaces {
                let q = space.projector.matmul(&unit);
                let rank = q.trace().re.round() as usize;
                if rank == 0 {
                    continue;
                }
                blocks.push(self.describe_block(q, rank)?);
            }
            if blocks.len() == wanted {
                blocks.sort_by_key(|b| first_support_index(&b.projector));
                let is_factor = blocks.len() == 1;
                return Ok(BlockStructure { blocks, is_factor });
            }
        }
        Err(Error::DegenerateDraw { attempts: MAX_DRAWS })
    }

    fn describe_block(&self, projector: ComplexMatrix, rank: usize) -> Result<Block> {
        // dim(A·q) is the rank of the Gram matrix ⟨b_i q, b_j q⟩.
        let cut: Vec<ComplexMatrix> = self.basis.iter().map(|b| b.matmul(&projector)).collect();
        let k = cut.len();
        let gram = ComplexMatrix::from_fn(k, |i, j| hs_inner_unchecked(&cut[i], &cut[j]));
        let (values, _) = hermitian_eigen(&gram);
        let largest = values.iter().fold(1.0f64, |a, &v| a.max(v.abs()));
        let sub_dim = values.iter().filter(|&&v| v > self.tol.rank_tol * largest).count();
        let block_dim = (sub_dim as f64).sqrt().round() as usize;
        if block_dim == 0 || block_dim * block_dim != sub_dim || !rank.is_multiple_of(block_dim) {
            return Err(Error::InvalidInput(format!(
                "block of rank {rank} carries a {sub_dim}-dimensional subalgebra; not a full matrix block"
            )));
        }
        Ok(Block {
            projector,
            block_dim,
            multiplicity: rank / block_dim,
            rank,
        })
    }

    pub fn is_factor(&self) -> Result<bool> {
        Ok(self.block_decomposition()?.is_factor)
    }

    /// Algebra generated by both operands. The join is unital when either
    /// operand contains the identity.
    pub fn join(&self, other: &Self) -> Result<StarAlgebra> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let generators: Vec<ComplexMatrix> =
            self.basis.iter().chain(&other.basis).cloned().collect();
        let unital = self.contains_identity || other.contains_identity;
        Ok(Self::generate(&generators, unital, &self.tol)?.with_seed(self.seed))
    }

    /// The algebra with the identity adjoined.
    pub fn unitization(&self) -> Result<StarAlgebra> {
        if self.contains_identity {
            return Ok(self.clone());
        }
        Self::generate(&self.basis, true, &self.tol)
    }

    /// Finite-dimensional bicommutant theorem: `A'' = A + C·I`.
    pub fn bicommutant_holds(&self) -> Result<bool> {
        let double = self.commutant().commutant();
        Ok(double.same_span(&self.unitization()?))
    }

    pub fn report(&self) -> Result<AlgebraReport> {
        let blocks = self.block_decomposition()?;
        Ok(AlgebraReport {
            dim: self.dim,
            algebra_dim: self.algebra_dim(),
            center_dim: self.center().algebra_dim(),
            blocks: blocks.blocks.iter().map(|b| b.block_dim).collect(),
            multiplicities: blocks.blocks.iter().map(|b| b.multiplicity).collect(),
            is_factor: blocks.is_factor,
            contains_identity: self.contains_identity,
        })
    }
}

fn first_support_index(p: &ComplexMatrix) -> usize {
    (0..p.dim()).find(|&i| p[(i, i)].re > 1e-6).unwrap_or(p.dim())
}

/// Finite-dimensional C*-algebras are isomorphic exactly when their
/// multisets of block dimensions agree.
pub fn find_isomorphism(a: &StarAlgebra, b: &StarAlgebra) -> Result<IsomorphismReport> {
    let left_profile = a.block_decomposition()?.profile();
    let right_profile = b.block_decomposition()?.profile();
    let isomorphic = left_profile == right_profile;
    let reason = if isomorphic {
        format!("matching block profiles {left_profile:?}")
    } else {
        format!("block profiles differ: {left_profile:?} vs {right_profile:?}")
    };
    Ok(IsomorphismReport {
        isomorphic,
        reason,
        left_profile,
        right_profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{charge_decomposition, charge_observable, shift_representation};
    use crate::matrix::{pauli::*, tensor};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn closure_of_identity_is_one_dimensional() {
        let alg = span_closure(&[ComplexMatrix::identity(3)], &tol()).unwrap();
        assert_eq!(alg.algebra_dim(), 1);
        assert!(alg.contains_identity());
    }

    #[test]
    fn closure_of_x_is_i_and_x() {
        let alg = span_closure(&[x()], &tol()).unwrap();
        assert_eq!(alg.algebra_dim(), 2);
        assert!(alg.contains(&x()).unwrap());
        assert!(!alg.contains(&z()).unwrap());
        assert!(alg.center().same_span(&alg));
    }

    #[test]
    fn closure_of_ix_and_zz() {
        let alg = span_closure(&[tensor(&id(), &x()), tensor(&z(), &z())], &tol()).unwrap();
        assert_eq!(alg.algebra_dim(), 4);
        for w in [tensor(&id(), &id()), tensor(&id(), &x()), tensor(&z(), &z()), tensor(&z(), &y())] {
            assert!(alg.contains(&w).unwrap());
        }
        let (adj, prod) = alg.closure_residuals();
        assert!(adj < 1e-10 && prod < 1e-10);
    }

    #[test]
    fn mismatched_generators_rejected() {
        let err = span_closure(&[x(), ComplexMatrix::identity(3)], &tol());
        assert!(matches!(err, Err(Error::DimMismatch { .. })));
        assert!(span_closure(&[], &tol()).is_err());
    }

    #[test]
    fn commutant_extremes() {
        let full = StarAlgebra::full(3, &tol());
        assert_eq!(full.commutant().algebra_dim(), 1);
        let scalars = StarAlgebra::scalars(3, &tol());
        assert_eq!(scalars.commutant().algebra_dim(), 9);
    }

    #[test]
    fn z3_weak_and_strong_structure() {
        let rep = shift_representation(3, 2).unwrap();
        let dec = charge_decomposition(&rep, &tol()).unwrap();
        let c = charge_observable(&dec, &tol()).unwrap();
        let weak = span_closure(std::slice::from_ref(&c.matrix), &tol()).unwrap().commutant();
        assert_eq!(weak.algebra_dim(), 27);
        assert_eq!(weak.center().algebra_dim(), 3);
        let blocks = weak.block_decomposition().unwrap();
        assert_eq!(blocks.blocks.len(), 3);
        assert!(!blocks.is_factor);
        assert!(weak.contains(&c.matrix).unwrap());
        for p in dec.sectors() {
            assert!(weak.center().contains(&p.projector).unwrap());
        }

        let strong = StarAlgebra::corner(&dec.vacuum_projector(), &tol()).unwrap();
        assert_eq!(strong.algebra_dim(), 9);
        assert_eq!(strong.center().algebra_dim(), 1);
        assert!(strong.is_factor().unwrap());
        assert!(!strong.contains(&c.matrix).unwrap());
        assert!(strong.unit().approx_eq(&dec.vacuum_projector(), &tol()));
    }

    #[test]
    fn full_algebra_is_single_block() {
        let blocks = StarAlgebra::full(4, &tol()).block_decomposition().unwrap();
        assert_eq!(blocks.profile(), vec![4]);
        assert!(blocks.is_factor);
    }

    #[test]
    fn joins() {
        let a = span_closure(&[tensor(&id(), &x())], &tol()).unwrap();
        assert!(a.join(&a).unwrap().same_span(&a));
        let full = StarAlgebra::full(4, &tol());
        let scalars = StarAlgebra::scalars(4, &tol());
        assert!(scalars.join(&full).unwrap().same_span(&full));
        let z2 = span_closure(&[tensor(&z(), &z())], &tol()).unwrap();
        assert!(matches!(a.join(&StarAlgebra::full(2, &tol())), Err(Error::DimMismatch { .. })));
        assert_eq!(a.join(&z2).unwrap().algebra_dim(), 4);
    }

    #[test]
    fn isomorphism_by_profile() {
        let a = StarAlgebra::full(2, &tol());
        let r = find_isomorphism(&a, &a).unwrap();
        assert!(r.isomorphic);
        let diag = span_closure(&[z()], &tol()).unwrap();
        let r = find_isomorphism(&diag, &a).unwrap();
        assert!(!r.isomorphic);
        assert_eq!(r.left_profile, vec![1, 1]);
        assert_eq!(r.right_profile, vec![2]);
    }

    #[test]
    fn block_multiplicity_for_tensor_factor() {
        // Lin(C^2) ⊗ I_2 : one block of dimension 2, multiplicity 2
        let alg = span_closure(&[tensor(&x(), &id()), tensor(&z(), &id())], &tol()).unwrap();
        let blocks = alg.block_decomposition().unwrap();
        assert_eq!(blocks.blocks.len(), 1);
        assert_eq!(blocks.blocks[0].block_dim, 2);
        assert_eq!(blocks.blocks[0].multiplicity, 2);
        assert!(alg.bicommutant_holds().unwrap());
    }

    #[test]
    fn bicommutant_of_corner_adds_identity() {
        let p = ComplexMatrix::diagonal(&[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
        let corner = StarAlgebra::corner(&p, &tol()).unwrap();
        assert!(!corner.contains_identity());
        assert!(corner.bicommutant_holds().unwrap());
        assert_eq!(corner.unitization().unwrap().algebra_dim(), 5);
    }
}
