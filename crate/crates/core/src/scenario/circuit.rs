//! Gate-list circuits on two-level wires, compiled to dense unitaries.
//!
//! Basis states of a circuit are bit strings with the first wire as the most
//! significant bit. For mode wires `|1⟩` is an occupied mode and `|0⟩` an
//! empty one.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{pauli, ComplexMatrix, C64, ONE, ZERO};

/// Circuits beyond this many wires are refused; the dense unitary would be
/// `2^w × 2^w`.
pub const MAX_WIRES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateKind {
    X,
    H,
    Swap,
    BeamSplitter,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::X | GateKind::H => 1,
            GateKind::Swap | GateKind::BeamSplitter => 2,
        }
    }

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            GateKind::X => pauli::x(),
            GateKind::H => pauli::h(),
            GateKind::Swap => swap(),
            GateKind::BeamSplitter => beam_splitter(),
        }
    }
}

/// A gate fires when every wire in `controls` holds `|1⟩` and every wire in
/// `negated_controls` holds `|0⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<String>,
    #[serde(default)]
    pub controls: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub negated_controls: Vec<String>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: &[&str]) -> Self {
        Self {
            kind,
            targets: targets.iter().map(|s| s.to_string()).collect(),
            controls: Vec::new(),
            negated_controls: Vec::new(),
        }
    }

    pub fn controlled(mut self, controls: &[&str]) -> Self {
        self.controls.extend(controls.iter().map(|s| s.to_string()));
        self
    }

    pub fn negated(mut self, controls: &[&str]) -> Self {
        self.negated_controls.extend(controls.iter().map(|s| s.to_string()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub wires: Vec<String>,
    pub gates: Vec<Gate>,
}

struct Resolved {
    matrix: ComplexMatrix,
    targets: Vec<usize>,
    controls: Vec<usize>,
    negated: Vec<usize>,
}

impl Circuit {
    pub fn new(wires: &[&str]) -> Self {
        Self {
            wires: wires.iter().map(|s| s.to_string()).collect(),
            gates: Vec::new(),
        }
    }

    pub fn push(mut self, gate: Gate) -> Self {
        self.gates.push(gate);
        self
    }

    pub fn extend(mut self, gates: impl IntoIterator<Item = Gate>) -> Self {
        self.gates.extend(gates);
        self
    }

    pub fn dim(&self) -> usize {
        1 << self.wires.len()
    }

    pub fn wire_index(&self, name: &str) -> Result<usize> {
        self.wires
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown wire `{name}`")))
    }

    /// Checks wire names and gate arities.
    pub fn validate(&self) -> Result<()> {
        self.resolve().map(|_| ())
    }

    fn resolve(&self) -> Result<Vec<Resolved>> {
        if self.wires.len() > MAX_WIRES {
            return Err(Error::DimOverflow {
                dim: self.wires.len(),
                cap: MAX_WIRES,
            });
        }
        for (i, w) in self.wires.iter().enumerate() {
            if self.wires[..i].contains(w) {
                return Err(Error::InvalidInput(format!("duplicate wire `{w}`")));
            }
        }
        let lookup = |names: &[String]| names.iter().map(|n| self.wire_index(n)).collect::<Result<Vec<_>>>();
        self.gates
            .iter()
            .map(|g| {
                let targets = lookup(&g.targets)?;
                let controls = lookup(&g.controls)?;
                let negated = lookup(&g.negated_controls)?;
                if targets.len() != g.kind.arity() {
                    return Err(Error::InvalidInput(format!(
                        "{:?} acts on {} wires, got {}",
                        g.kind,
                        g.kind.arity(),
                        targets.len()
                    )));
                }
                let mut all: Vec<usize> = targets.iter().chain(&controls).chain(&negated).copied().collect();
                all.sort_unstable();
                all.dedup();
                if all.len() != targets.len() + controls.len() + negated.len() {
                    return Err(Error::InvalidInput(format!("gate {:?} reuses a wire", g.kind)));
                }
                Ok(Resolved {
                    matrix: g.kind.matrix(),
                    targets,
                    controls,
                    negated,
                })
            })
            .collect()
    }

    /// Product of all gates, last gate leftmost.
    pub fn compile(&self) -> Result<ComplexMatrix> {
        let n = self.wires.len();
        let mut u = ComplexMatrix::identity(1 << n);
        for g in self.resolve()? {
            u = embed_gate(&g, n).matmul(&u);
        }
        Ok(u)
    }

    pub fn simulate(&self, state: &[C64]) -> Result<Vec<C64>> {
        if state.len() != self.dim() {
            return Err(Error::DimMismatch {
                expected: self.dim(),
                found: state.len(),
            });
        }
        let n = self.wires.len();
        let mut v = state.to_vec();
        for g in self.resolve()? {
            v = embed_gate(&g, n).apply(&v);
        }
        Ok(v)
    }
}

fn bit(index: usize, wire: usize, n_wires: usize) -> usize {
    (index >> (n_wires - 1 - wire)) & 1
}

fn embed_gate(g: &Resolved, n_wires: usize) -> ComplexMatrix {
    let dim = 1usize << n_wires;
    let k = g.targets.len();
    let mut out = ComplexMatrix::zeros(dim);
    for col in 0..dim {
        let fires = g.controls.iter().all(|&c| bit(col, c, n_wires) == 1)
            && g.negated.iter().all(|&c| bit(col, c, n_wires) == 0);
        if !fires {
            out[(col, col)] = ONE;
            continue;
        }
        let local_in = g
            .targets
            .iter()
            .fold(0, |acc, &t| (acc << 1) | bit(col, t, n_wires));
        let cleared = g
            .targets
            .iter()
            .fold(col, |acc, &t| acc & !(1 << (n_wires - 1 - t)));
        for local_out in 0..(1 << k) {
            let amp = g.matrix[(local_out, local_in)];
            if amp == ZERO {
                continue;
            }
            let row = g.targets.iter().enumerate().fold(cleared, |acc, (pos, &t)| {
                acc | (((local_out >> (k - 1 - pos)) & 1) << (n_wires - 1 - t))
            });
            out[(row, col)] += amp;
        }
    }
    out
}

pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4")
}

/// Two-mode beam splitter on `|m₁ m₂⟩`:
/// `|10⟩ → (|10⟩+|01⟩)/√2`, `|01⟩ → (|10⟩−|01⟩)/√2`, identity on `|00⟩` and `|11⟩`.
pub fn beam_splitter() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, -s, s, 0.0],
        &[0.0, s, s, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4")
}

/// Computational basis vector of dimension `dim`.
pub fn basis_state(dim: usize, index: usize) -> Vec<C64> {
    let mut v = vec![ZERO; dim];
    v[index] = ONE;
    v
}

/// Basis index of a bit string, first bit most significant.
pub fn index_of(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b != 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{tensor, Tolerance};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn beam_splitter_action() {
        let bs = beam_splitter();
        let out = bs.apply(&basis_state(4, index_of(&[1, 0])));
        let s = FRAC_1_SQRT_2;
        assert!((out[index_of(&[1, 0])].re - s).abs() < 1e-15);
        assert!((out[index_of(&[0, 1])].re - s).abs() < 1e-15);
        let out = bs.apply(&basis_state(4, index_of(&[0, 1])));
        assert!((out[index_of(&[1, 0])].re - s).abs() < 1e-15);
        assert!((out[index_of(&[0, 1])].re + s).abs() < 1e-15);
        assert!(bs.matmul(&bs).approx_eq(&ComplexMatrix::identity(4), &tol()));
        assert!(bs.is_unitary(&tol()));
    }

    #[test]
    fn beam_splitter_is_hadamard_on_single_excitation() {
        // position |0⟩ ↔ |10⟩, |1⟩ ↔ |01⟩
        let bs = beam_splitter();
        let idx = [index_of(&[1, 0]), index_of(&[0, 1])];
        let h = ComplexMatrix::from_fn(2, |i, j| bs[(idx[i], idx[j])]);
        assert!(h.approx_eq(&pauli::h(), &tol()));
    }

    #[test]
    fn cnot_convention() {
        let c = Circuit::new(&["c", "t"]).push(Gate::new(GateKind::X, &["t"]).controlled(&["c"]));
        let u = c.compile().unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert_eq!(u, expected);
        let neg = Circuit::new(&["c", "t"]).push(Gate::new(GateKind::X, &["t"]).negated(&["c"]));
        let u = neg.compile().unwrap();
        assert_eq!(u[(1, 0)], ONE);
        assert_eq!(u[(2, 2)], ONE);
    }

    #[test]
    fn single_gate_on_second_wire() {
        let c = Circuit::new(&["a", "b"]).push(Gate::new(GateKind::H, &["b"]));
        assert!(c.compile().unwrap().approx_eq(&tensor(&pauli::id(), &pauli::h()), &tol()));
    }

    #[test]
    fn target_order_matters_for_beam_splitter() {
        let ab = Circuit::new(&["a", "b"]).push(Gate::new(GateKind::BeamSplitter, &["a", "b"]));
        let ba = Circuit::new(&["a", "b"]).push(Gate::new(GateKind::BeamSplitter, &["b", "a"]));
        assert!(ab.compile().unwrap().approx_eq(&beam_splitter(), &tol()));
        assert!(!ba.compile().unwrap().approx_eq(&beam_splitter(), &tol()));
    }

    #[test]
    fn simulate_matches_compile() {
        let c = Circuit::new(&["a", "b", "c"])
            .push(Gate::new(GateKind::H, &["a"]))
            .push(Gate::new(GateKind::Swap, &["b", "c"]).controlled(&["a"]))
            .push(Gate::new(GateKind::BeamSplitter, &["c", "a"]).negated(&["b"]));
        let psi = basis_state(8, 3);
        let direct = c.compile().unwrap().apply(&psi);
        let stepped = c.simulate(&psi).unwrap();
        assert!(direct.iter().zip(&stepped).all(|(a, b)| (a - b).norm() < 1e-14));
    }

    #[test]
    fn bad_circuits() {
        let unknown = Circuit::new(&["a"]).push(Gate::new(GateKind::X, &["z"]));
        assert!(unknown.compile().is_err());
        let arity = Circuit::new(&["a", "b"]).push(Gate::new(GateKind::Swap, &["a"]));
        assert!(arity.compile().is_err());
        let reuse = Circuit::new(&["a", "b"]).push(Gate::new(GateKind::X, &["a"]).controlled(&["a"]));
        assert!(reuse.compile().is_err());
        let dup = Circuit::new(&["a", "a"]);
        assert!(dup.validate().is_err());
    }

    #[test]
    fn json_shape() {
        let c = Circuit::new(&["r", "a"]).push(Gate::new(GateKind::X, &["r"]).controlled(&["a"]));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(
            text,
            r#"{"wires":["r","a"],"gates":[{"kind":"x","targets":["r"],"controls":["a"]}]}"#
        );
        let back: Circuit = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }
}
