//! Seeded random operators for sampling-based checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::{ComplexMatrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut impl Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Matrix with entries uniform in the unit square of the complex plane.
pub fn random_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| entry(rng))
}

pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let a = random_matrix(dim, rng);
    (&a + &a.adjoint()).scale_re(0.5)
}

/// Full-rank density matrix `G G† / tr(G G†)`.
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = random_matrix(dim, rng);
    let p = g.matmul(&g.adjoint());
    let t = p.trace().re;
    p.scale_re(1.0 / t)
}

pub fn random_state(dim: usize, rng: &mut impl Rng) -> Vec<C64> {
    let v: Vec<C64> = (0..dim).map(|_| entry(rng)).collect();
    let n = crate::matrix::vector_norm(&v);
    v.into_iter().map(|z| z / n).collect()
}
