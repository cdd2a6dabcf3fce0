//! Mode spaces with sectorial correlations, and routes constraining maps
//! between sectors.

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, Tolerance, C64, ONE, ZERO};

/// Two-level modes (empty or occupied) of which only some joint occupation
/// patterns are physically allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSpace {
    modes: Vec<String>,
    /// Allowed occupation patterns, in the order of the embedded basis.
    allowed: Vec<Vec<bool>>,
}

impl ModeSpace {
    pub fn new(modes: &[&str], allowed: Vec<Vec<bool>>) -> Result<Self> {
        for p in &allowed {
            if p.len() != modes.len() {
                return Err(Error::DimMismatch {
                    expected: modes.len(),
                    found: p.len(),
                });
            }
        }
        for (i, p) in allowed.iter().enumerate() {
            if allowed[..i].contains(p) {
                return Err(Error::InvalidInput("repeated occupation pattern".into()));
            }
        }
        Ok(Self {
            modes: modes.iter().map(|s| s.to_string()).collect(),
            allowed,
        })
    }

    pub fn modes(&self) -> &[String] {
        &self.modes
    }

    pub fn full_dim(&self) -> usize {
        1 << self.modes.len()
    }

    pub fn allowed_dim(&self) -> usize {
        self.allowed.len()
    }

    pub fn allowed_patterns(&self) -> &[Vec<bool>] {
        &self.allowed
    }

    fn pattern_index(pattern: &[bool]) -> usize {
        pattern.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b))
    }

    /// Full-space basis index of each allowed pattern.
    pub fn allowed_indices(&self) -> Vec<usize> {
        self.allowed.iter().map(|p| Self::pattern_index(p)).collect()
    }

    pub fn embed_state(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check_len(v.len(), self.allowed_dim())?;
        let mut out = vec![ZERO; self.full_dim()];
        for (amp, idx) in v.iter().zip(self.allowed_indices()) {
            out[idx] = *amp;
        }
        Ok(out)
    }

    /// Components of a full-space vector along the allowed basis.
    pub fn restrict_state(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check_len(v.len(), self.full_dim())?;
        Ok(self.allowed_indices().into_iter().map(|i| v[i]).collect())
    }

    /// `W m W†`, with `W` the embedding isometry.
    pub fn embed_operator(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_len(m.dim(), self.allowed_dim())?;
        let idx = self.allowed_indices();
        let mut out = ComplexMatrix::zeros(self.full_dim());
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                out[(a, b)] = m[(i, j)];
            }
        }
        Ok(out)
    }

    /// `W† m W`.
    pub fn restrict_operator(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_len(m.dim(), self.full_dim())?;
        let idx = self.allowed_indices();
        Ok(ComplexMatrix::from_fn(idx.len(), |i, j| m[(idx[i], idx[j])]))
    }

    pub fn allowed_projector(&self) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.full_dim());
        for i in self.allowed_indices() {
            p[(i, i)] = ONE;
        }
        p
    }

    /// Projector on the space of a circuit over `wires` onto the states whose
    /// mode wires show one of the selected allowed patterns. Wires that are
    /// not modes (registers) are left free.
    pub fn sector_projector_on(&self, wires: &[String], selected: &[usize]) -> Result<ComplexMatrix> {
        let positions = self
            .modes
            .iter()
            .map(|m| {
                wires
                    .iter()
                    .position(|w| w == m)
                    .ok_or_else(|| Error::InvalidInput(format!("circuit lacks mode wire `{m}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        for &s in selected {
            if s >= self.allowed.len() {
                return Err(Error::IndexOutOfRange {
                    what: "allowed pattern",
                    index: s,
                    bound: self.allowed.len(),
                });
            }
        }
        let n = wires.len();
        let dim = 1 << n;
        let mut p = ComplexMatrix::zeros(dim);
        for idx in 0..dim {
            let pattern: Vec<bool> = positions.iter().map(|&w| (idx >> (n - 1 - w)) & 1 == 1).collect();
            if selected.iter().any(|&s| self.allowed[s] == pattern) {
                p[(idx, idx)] = ONE;
            }
        }
        Ok(p)
    }

    pub fn allowed_projector_on(&self, wires: &[String]) -> Result<ComplexMatrix> {
        let all: Vec<usize> = (0..self.allowed.len()).collect();
        self.sector_projector_on(wires, &all)
    }

    fn check_len(&self, found: usize, expected: usize) -> Result<()> {
        if found != expected {
            return Err(Error::DimMismatch { expected, found });
        }
        Ok(())
    }
}

/// Modes `A0, A1, B0, B1`; one excitation per system. The allowed basis is
/// ordered like the kinematical basis `|a⟩_{A|E}|b⟩_{B|E}`, index `2a + b`.
pub fn build_apparatus() -> ModeSpace {
    let allowed = (0..4)
        .map(|k| {
            let (a, b) = (k / 2, k % 2);
            vec![a == 0, a == 1, b == 0, b == 1]
        })
        .collect();
    ModeSpace::new(&["A0", "A1", "B0", "B1"], allowed).expect("four patterns of four modes")
}

/// Bob's position relative to Alice as modes `A` (her path) and `Ā` (the
/// other one); `|0⟩_{B|A}` is Bob on Alice's path.
pub fn alice_frame_modes() -> ModeSpace {
    ModeSpace::new(&["A", "Abar"], vec![vec![true, false], vec![false, true]]).expect("two patterns")
}

/// Sector pairs a map may connect: each input sector must land inside its
/// output sector.
#[derive(Debug, Clone)]
pub struct Route {
    pairs: Vec<(ComplexMatrix, ComplexMatrix)>,
}

impl Route {
    pub fn new(pairs: Vec<(ComplexMatrix, ComplexMatrix)>, tol: &Tolerance) -> Result<Self> {
        let dim = pairs
            .first()
            .ok_or_else(|| Error::InvalidInput("route without sectors".into()))?
            .0
            .dim();
        for (p, q) in &pairs {
            for m in [p, q] {
                if m.dim() != dim {
                    return Err(Error::DimMismatch { expected: dim, found: m.dim() });
                }
                if !m.is_projector(tol) {
                    return Err(Error::InvalidInput("route sectors must be projectors".into()));
                }
            }
        }
        for side in [0, 1] {
            for i in 0..pairs.len() {
                for j in 0..i {
                    let (a, b) = if side == 0 {
                        (&pairs[i].0, &pairs[j].0)
                    } else {
                        (&pairs[i].1, &pairs[j].1)
                    };
                    if a.matmul(b).max_abs() >= tol.eq_tol {
                        return Err(Error::InvalidInput("route sectors overlap".into()));
                    }
                }
            }
        }
        Ok(Self { pairs })
    }

    /// Each sector to itself.
    pub fn delta(sectors: Vec<ComplexMatrix>, tol: &Tolerance) -> Result<Self> {
        Self::new(sectors.into_iter().map(|p| (p.clone(), p)).collect(), tol)
    }

    pub fn dim(&self) -> usize {
        self.pairs[0].0.dim()
    }

    pub fn pairs(&self) -> &[(ComplexMatrix, ComplexMatrix)] {
        &self.pairs
    }

    fn union(&self, side: usize) -> ComplexMatrix {
        self.pairs.iter().fold(ComplexMatrix::zeros(self.dim()), |acc, (p, q)| {
            &acc + if side == 0 { p } else { q }
        })
    }

    /// Largest leak of `u` across the route: out of a paired output sector,
    /// or between the declared sectors and their complement in either direction.
    pub fn violation(&self, u: &ComplexMatrix) -> Result<f64> {
        if u.dim() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: u.dim(),
            });
        }
        let id = ComplexMatrix::identity(self.dim());
        let mut worst: f64 = 0.0;
        for (p, q) in &self.pairs {
            worst = worst.max((&id - q).matmul(u).matmul(p).frobenius_norm());
        }
        let inside_in = self.union(0);
        let inside_out = self.union(1);
        worst = worst.max(inside_out.matmul(u).matmul(&(&id - &inside_in)).frobenius_norm());
        worst = worst.max((&id - &inside_out).matmul(u).matmul(&inside_in).frobenius_norm());
        Ok(worst)
    }
}

pub fn route_compliant(u: &ComplexMatrix, route: &Route, tol: &Tolerance) -> Result<bool> {
    Ok(route.violation(u)? < tol.eq_tol)
}

/// δ route on a circuit's wires with Alice's path as the sector label:
/// every circuit of the apparatus keeps Alice where she is.
pub fn apparatus_route(space: &ModeSpace, wires: &[String], tol: &Tolerance) -> Result<Route> {
    let on_path0 = space.sector_projector_on(wires, &[0, 1])?;
    let on_path1 = space.sector_projector_on(wires, &[2, 3])?;
    Route::delta(vec![on_path0, on_path1], tol)
}

/// Single-sector route for Alice's own description: stay in the
/// single-excitation subspace.
pub fn alice_route(space: &ModeSpace, wires: &[String], tol: &Tolerance) -> Result<Route> {
    Route::delta(vec![space.allowed_projector_on(wires)?], tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::circuit::index_of;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn apparatus_basis() {
        let space = build_apparatus();
        assert_eq!(space.allowed_dim(), 4);
        assert_eq!(space.full_dim(), 16);
        let e00 = space.embed_state(&[ONE, ZERO, ZERO, ZERO]).unwrap();
        // occ A0, vac A1, occ B0, vac B1
        assert_eq!(e00[index_of(&[1, 0, 1, 0])], ONE);
        assert_eq!(space.allowed_indices(), vec![
            index_of(&[1, 0, 1, 0]),
            index_of(&[1, 0, 0, 1]),
            index_of(&[0, 1, 1, 0]),
            index_of(&[0, 1, 0, 1]),
        ]);
    }

    #[test]
    fn embed_restrict_round_trip() {
        let space = build_apparatus();
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let bell = vec![s, ZERO, ZERO, s];
        let full = space.embed_state(&bell).unwrap();
        assert_eq!(full[index_of(&[1, 0, 1, 0])], s);
        assert_eq!(full[index_of(&[0, 1, 0, 1])], s);
        assert_eq!(space.restrict_state(&full).unwrap(), bell);
        let m = ComplexMatrix::from_fn(4, |i, j| C64::new(i as f64, j as f64));
        assert_eq!(space.restrict_operator(&space.embed_operator(&m).unwrap()).unwrap(), m);
        assert!(space.embed_state(&[ONE]).is_err());
    }

    #[test]
    fn routes() {
        let p0 = ComplexMatrix::diagonal(&[ONE, ZERO]);
        let p1 = ComplexMatrix::diagonal(&[ZERO, ONE]);
        let route = Route::delta(vec![p0.clone(), p1.clone()], &tol()).unwrap();
        assert!(route_compliant(&ComplexMatrix::identity(2), &route, &tol()).unwrap());
        assert!(!route_compliant(&crate::matrix::pauli::x(), &route, &tol()).unwrap());
        assert!(Route::delta(vec![p0.clone(), p0.clone()], &tol()).is_err());
        assert!(route_compliant(&ComplexMatrix::identity(3), &route, &tol()).is_err());
    }

    #[test]
    fn leaking_into_complement_is_caught() {
        let p = ComplexMatrix::diagonal(&[ONE, ZERO]);
        let route = Route::delta(vec![p], &tol()).unwrap();
        assert!(!route_compliant(&crate::matrix::pauli::h(), &route, &tol()).unwrap());
        assert!(route_compliant(&crate::matrix::pauli::z(), &route, &tol()).unwrap());
    }

    #[test]
    fn registers_are_free() {
        let space = alice_frame_modes();
        let wires: Vec<String> = ["reg", "A", "Abar"].iter().map(|s| s.to_string()).collect();
        let p = space.allowed_projector_on(&wires).unwrap();
        assert_eq!(p.trace(), C64::new(4.0, 0.0));
        assert!(space.allowed_projector_on(&wires[..2]).is_err());
    }
}
