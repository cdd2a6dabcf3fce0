//! Dense square complex matrices with explicit tolerance control.
//!
//! Storage is row-major. The Kronecker product uses the "left factor outer"
//! convention: in `a ⊗ b` the row index is `i_a * dim(b) + i_b`, so the left
//! factor indexes blocks. Every multi-system basis in the crate follows it.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Comparison and truncation thresholds.
///
/// `eq_tol` bounds entrywise and residual comparisons; `rank_tol` decides when
/// an eigenvalue, singular value or Gram–Schmidt residual counts as zero and
/// when two eigenvalues belong to the same cluster.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eq_tol: f64,
    pub rank_tol: f64,
}

impl Tolerance {
    pub fn new(eq_tol: f64, rank_tol: f64) -> Result<Self> {
        if !(eq_tol.is_finite() && rank_tol.is_finite()) || eq_tol <= 0.0 || rank_tol <= 0.0 {
            return Err(Error::InvalidTolerance(format!(
                "tolerances must be positive and finite (eq_tol={eq_tol}, rank_tol={rank_tol})"
            )));
        }
        if eq_tol < f64::EPSILON {
            return Err(Error::InvalidTolerance(format!(
                "eq_tol={eq_tol} is below machine epsilon"
            )));
        }
        Ok(Self { eq_tol, rank_tol })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eq_tol: 1e-10,
            rank_tol: 1e-9,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for i in 0..self.dim {
            write!(f, "  ")?;
            for j in 0..self.dim {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.data[i * dim + j] = f(i, j);
            }
        }
        m
    }

    /// Builds a matrix from a row-major entry list of length `dim * dim`.
    pub fn from_row_major(dim: usize, data: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("matrix dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(Error::DimMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Self::from_row_major(dim, data)
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = d;
        }
        m
    }

    /// `|ket⟩⟨bra|`.
    pub fn outer(ket: &[C64], bra: &[C64]) -> Result<Self> {
        if ket.len() != bra.len() {
            return Err(Error::DimMismatch {
                expected: ket.len(),
                found: bra.len(),
            });
        }
        Ok(Self::from_fn(ket.len(), |i, j| ket[i] * bra[j].conj()))
    }

    /// Projector onto the span of a single (not necessarily normalized) vector.
    pub fn projector_onto(v: &[C64]) -> Self {
        let n2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let mut m = Self::from_fn(v.len(), |i, j| v[i] * v[j].conj());
        if n2 > 0.0 {
            m = m.scale(C64::new(1.0 / n2, 0.0));
        }
        m
    }

    /// Matrix unit `|i⟩⟨j|`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m.data[i * dim + j] = ONE;
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<C64> {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.data[j * self.dim + i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.data[j * self.dim + i])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.data[i * self.dim + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) < tol.eq_tol
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn checked_matmul(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        Ok(self.matmul(other))
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `self · m · self†`.
    pub fn conjugate(&self, m: &Self) -> Self {
        self.matmul(m).matmul(&self.adjoint())
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..k {
            out = out.matmul(self);
        }
        out
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn is_hermitian(&self, tol: &Tolerance) -> bool {
        self.max_abs_diff(&self.adjoint()) < tol.eq_tol
    }

    pub fn is_unitary(&self, tol: &Tolerance) -> bool {
        let id = Self::identity(self.dim);
        self.matmul(&self.adjoint()).max_abs_diff(&id) < tol.eq_tol
            && self.adjoint().matmul(self).max_abs_diff(&id) < tol.eq_tol
    }

    pub fn is_projector(&self, tol: &Tolerance) -> bool {
        self.is_hermitian(tol) && self.matmul(self).max_abs_diff(self) < tol.eq_tol
    }

    /// Frobenius norm of `[m, m†]`.
    pub fn normality_residual(&self) -> f64 {
        self.commutator(&self.adjoint()).frobenius_norm()
    }

    /// Kronecker product, left factor outer.
    pub fn tensor(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let d = n * m;
        let mut out = vec![ZERO; d * d];
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                if a == ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out[(i * m + k) * d + j * m + l] = a * other.data[k * m + l];
                    }
                }
            }
        }
        Self { dim: d, data: out }
    }

    /// Reorders tensor factors. `dims` lists the factor dimensions of `self`
    /// (left to right); factor `k` of the result is factor `perm[k]` of `self`.
    pub fn permute_subsystems(&self, dims: &[usize], perm: &[usize]) -> Result<Self> {
        let total: usize = dims.iter().product();
        if total != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: total,
            });
        }
        let mut seen = vec![false; dims.len()];
        if perm.len() != dims.len()
            || perm.iter().any(|&p| p >= dims.len() || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidInput(format!("{perm:?} is not a permutation")));
        }
        let index_map = permuted_indices(dims, perm);
        let mut out = Self::zeros(self.dim);
        for (new_i, &old_i) in index_map.iter().enumerate() {
            for (new_j, &old_j) in index_map.iter().enumerate() {
                out.data[new_i * self.dim + new_j] = self.data[old_i * self.dim + old_j];
            }
        }
        Ok(out)
    }

    pub(crate) fn to_nalgebra(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.dim, self.dim, &self.data)
    }
}

/// For each basis index of the permuted space, the matching index of the
/// original space.
fn permuted_indices(dims: &[usize], perm: &[usize]) -> Vec<usize> {
    let new_dims: Vec<usize> = perm.iter().map(|&p| dims[p]).collect();
    let total: usize = dims.iter().product();
    let mut old_strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        old_strides[k] = old_strides[k + 1] * dims[k + 1];
    }
    (0..total)
        .map(|mut idx| {
            let mut old = 0;
            for k in (0..new_dims.len()).rev() {
                let digit = idx % new_dims[k];
                idx /= new_dims[k];
                old += digit * old_strides[perm[k]];
            }
            old
        })
        .collect()
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.scale_re(-1.0)
    }
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    a.tensor(b)
}

/// Kronecker product of a sequence of factors, left to right.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(None, |acc: Option<ComplexMatrix>, f| {
            Some(match acc {
                None => f.clone(),
                Some(a) => a.tensor(f),
            })
        })
        .unwrap_or_else(|| ComplexMatrix::identity(1))
}

/// Hilbert–Schmidt inner product `tr(a† b)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    check_dims(a, b)?;
    Ok(hs_inner_unchecked(a, b))
}

pub(crate) fn hs_inner_unchecked(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    a.data.iter().zip(&b.data).map(|(x, y)| x.conj() * y).sum()
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// One eigenspace of a normal matrix.
#[derive(Debug, Clone)]
pub struct Eigenspace {
    pub eigenvalue: C64,
    pub projector: ComplexMatrix,
    /// Orthonormal basis of the eigenspace.
    pub vectors: Vec<Vec<C64>>,
}

impl Eigenspace {
    pub fn rank(&self) -> usize {
        self.vectors.len()
    }
}

/// Argument mapped into `[0, 2π)`; values within `wrap` of `2π` fold to 0.
pub(crate) fn positive_arg(z: C64, wrap: f64) -> f64 {
    if z.norm() == 0.0 {
        return 0.0;
    }
    let mut a = z.arg();
    if a < 0.0 {
        a += 2.0 * PI;
    }
    if 2.0 * PI - a < wrap {
        a = 0.0;
    }
    a
}

// Irrational-ish mixing weights for the Hermitian pencil (m + m†)/2 + t (m − m†)/2i.
const PENCIL_WEIGHTS: [f64; 4] = [0.577_215_664_901_532_9, std::f64::consts::SQRT_2, std::f64::consts::FRAC_1_PI, std::f64::consts::E];

/// Spectral decomposition of a normal matrix, with eigenvectors.
///
/// Eigenvalues closer than `rank_tol` are merged into one eigenspace. The
/// result is ordered by argument in `[0, 2π)`, then by modulus.
pub fn eigensystem_normal(m: &ComplexMatrix, tol: &Tolerance) -> Result<Vec<Eigenspace>> {
    let scale = m.frobenius_norm().max(1.0);
    let residual = m.normality_residual();
    if residual > tol.eq_tol * scale * scale {
        return Err(Error::NotNormal { residual });
    }
    let herm = (m + &m.adjoint()).scale_re(0.5);
    let anti = (m - &m.adjoint()).scale(C64::new(0.0, -0.5));
    let mut last = None;
    for &t in &PENCIL_WEIGHTS {
        let pencil = &herm + &anti.scale_re(t);
        let spaces = cluster_spectrum(m, &pencil, tol);
        let rebuilt = spaces.iter().fold(ComplexMatrix::zeros(m.dim()), |acc, s| {
            &acc + &s.projector.scale(s.eigenvalue)
        });
        let err = rebuilt.max_abs_diff(m);
        if err < tol.eq_tol * scale {
            return Ok(spaces);
        }
        last = Some(err);
    }
    // Every pencil mixed two eigenspaces; only possible for near-degenerate
    // spectra closer than the clustering threshold allows.
    Err(Error::NotNormal {
        residual: last.unwrap_or(f64::NAN),
    })
}

fn cluster_spectrum(m: &ComplexMatrix, pencil: &ComplexMatrix, tol: &Tolerance) -> Vec<Eigenspace> {
    let n = m.dim();
    let eig = SymmetricEigen::new(pencil.to_nalgebra());
    let vectors: Vec<Vec<C64>> = (0..n)
        .map(|k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    let values: Vec<C64> = vectors
        .iter()
        .map(|v| inner(v, &m.apply(v)))
        .collect();

    // single-linkage clustering
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = x;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if (values[a] - values[b]).norm() < tol.rank_tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for k in 0..n {
        let r = find(&mut parent, k);
        if root_slot[r] == usize::MAX {
            root_slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[root_slot[r]].push(k);
    }

    let mut spaces: Vec<Eigenspace> = groups
        .into_iter()
        .map(|g| {
            let eigenvalue = g.iter().map(|&k| values[k]).sum::<C64>() / g.len() as f64;
            let vecs: Vec<Vec<C64>> = g.iter().map(|&k| vectors[k].clone()).collect();
            let mut projector = ComplexMatrix::zeros(n);
            for v in &vecs {
                for i in 0..n {
                    for j in 0..n {
                        projector.data[i * n + j] += v[i] * v[j].conj();
                    }
                }
            }
            Eigenspace {
                eigenvalue,
                projector,
                vectors: vecs,
            }
        })
        .collect();
    spaces.sort_by(|a, b| {
        let ka = (positive_arg(a.eigenvalue, tol.rank_tol), a.eigenvalue.norm());
        let kb = (positive_arg(b.eigenvalue, tol.rank_tol), b.eigenvalue.norm());
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    spaces
}

/// Eigenvalue / eigenprojector pairs of a normal matrix.
pub fn eigendecompose_normal(m: &ComplexMatrix, tol: &Tolerance) -> Result<Vec<(C64, ComplexMatrix)>> {
    Ok(eigensystem_normal(m, tol)?
        .into_iter()
        .map(|s| (s.eigenvalue, s.projector))
        .collect())
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
pub(crate) fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, Vec<Vec<C64>>) {
    let eig = SymmetricEigen::new(h.to_nalgebra());
    let n = h.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).iter().copied().collect())
        .collect();
    (values, vectors)
}

/// Projector onto the range of a positive semidefinite matrix.
pub(crate) fn range_projector(psd: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    let (values, vectors) = hermitian_eigen(psd);
    let cutoff = tol.rank_tol * values.iter().fold(1.0f64, |a, &b| a.max(b.abs()));
    let n = psd.dim();
    let mut p = ComplexMatrix::zeros(n);
    for (v, vec) in values.iter().zip(&vectors) {
        if *v > cutoff {
            p = &p + &ComplexMatrix::outer(vec, vec).expect("same length");
        }
    }
    p
}

/// `exp(i·h)` for Hermitian `h`, through its spectral decomposition.
pub fn exp_i_hermitian(h: &ComplexMatrix, tol: &Tolerance) -> Result<ComplexMatrix> {
    if !h.is_hermitian(&Tolerance {
        eq_tol: tol.eq_tol * h.frobenius_norm().max(1.0),
        ..*tol
    }) {
        return Err(Error::InvalidInput("exp_i_hermitian needs a Hermitian argument".into()));
    }
    let (values, vectors) = hermitian_eigen(h);
    let n = h.dim();
    let mut out = ComplexMatrix::zeros(n);
    for (lambda, v) in values.iter().zip(&vectors) {
        let phase = C64::from_polar(1.0, *lambda);
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] += phase * v[i] * v[j].conj();
            }
        }
    }
    Ok(out)
}

/// Pauli matrices, handy across the crate and its tests.
pub mod pauli {
    use super::*;

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    pub fn h() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]).unwrap()
    }

    pub fn id() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }
}
