//! Eve's account of Alice's momentum measurement, checked gate by gate.
//!
//! Literal diagrams control on `|1⟩`, so their register reads 1 for
//! the `−` outcome. The occupation-convention circuits of the parent module
//! read 1 for `+`. Both pairs are checked; the conclusion (Alice measures
//! `X_{B|E}`) is the same.

use serde::{Deserialize, Serialize};

use super::circuit::Circuit;
use super::modes::{alice_frame_modes, alice_route, apparatus_route, build_apparatus, Route};
use super::{
    alice_mode_map, alice_momentum_circuit, alice_momentum_mode_circuit, alice_position_circuit,
    alice_position_circuit_kin, literal_diag2, literal_diag3, eve_mode_map, Picture,
};
use crate::error::{Error, Result};
use crate::group::shift_representation;
use crate::json;
use crate::matrix::{pauli, tensor, ComplexMatrix, Tolerance, C64, ZERO};
use crate::perspectives::yen;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    /// Literal position-basis diagrams, compared entrywise.
    pub diag_deviation: f64,
    /// Occupation-convention circuits: Eve's against `I_A ⊗` Alice's.
    pub convention_deviation: f64,
    /// Eve's circuits against Alice's, conditioned on Alice's path.
    pub relativization_deviation: f64,
    /// Mode-picture circuits against their position-basis counterparts.
    pub mode_deviation: f64,
    /// Register observable read off the right-hand diagram, on `(A|E, B|E)`.
    pub observable: Vec<[f64; 2]>,
    pub observable_deviation: f64,
    /// Relativized `X` against `I ⊗ X`.
    pub yen_deviation: f64,
    pub max_deviation: f64,
    pub eq_tol: f64,
    pub passed: bool,
}

/// Largest entrywise difference; `DimMismatch` for different wire counts.
pub fn circuit_deviation(lhs: &Circuit, rhs: &Circuit) -> Result<f64> {
    let (a, b) = (lhs.compile()?, rhs.compile()?);
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.max_abs_diff(&b))
}

/// `TheoremViolation` unless the two circuits compile to the same unitary.
pub fn verify_circuit_pair(lhs: &Circuit, rhs: &Circuit, tol: &Tolerance) -> Result<f64> {
    let deviation = circuit_deviation(lhs, rhs)?;
    if deviation >= tol.eq_tol {
        return Err(Error::TheoremViolation { deviation });
    }
    Ok(deviation)
}

/// Largest entrywise gap in `big · W = W · small`, with `W` sending basis
/// state `j` to `map[j]`.
pub fn intertwining_deviation(big: &ComplexMatrix, small: &ComplexMatrix, map: &[usize]) -> f64 {
    let mut worst: f64 = 0.0;
    for (j, &col) in map.iter().enumerate() {
        let mut expected = vec![ZERO; big.dim()];
        for (i, &row) in map.iter().enumerate() {
            expected[row] = small[(i, j)];
        }
        for (row, e) in expected.iter().enumerate() {
            worst = worst.max((big[(row, col)] - e).norm());
        }
    }
    worst
}

/// `W · small · W†`.
pub fn embed_via(map: &[usize], big_dim: usize, small: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(big_dim);
    for (i, &r) in map.iter().enumerate() {
        for (j, &c) in map.iter().enumerate() {
            out[(r, c)] = small[(i, j)];
        }
    }
    out
}

/// Alice's operation on `(reg, B|A)` as Eve sees it on `(reg, A|E, B|E)`:
/// applied in the branch where Alice is on path `a`, with `b_rel = a ⊕ b`.
pub fn relativize_alice(alice: &ComplexMatrix) -> Result<ComplexMatrix> {
    if alice.dim() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            found: alice.dim(),
        });
    }
    Ok(ComplexMatrix::from_fn(8, |row, col| {
        let (r1, a1, b1) = (row >> 2, (row >> 1) & 1, row & 1);
        let (r0, a0, b0) = (col >> 2, (col >> 1) & 1, col & 1);
        if a1 != a0 {
            return ZERO;
        }
        alice[((r1 << 1) | (b1 ^ a1), (r0 << 1) | (b0 ^ a0))]
    }))
}

/// `E_plus − E_minus` for a register (wire 0, initially `|0⟩`) in front of a
/// 4-dimensional system; `plus` is the register value of the `+` outcome.
pub fn register_observable(u: &ComplexMatrix, plus: usize) -> Result<ComplexMatrix> {
    if u.dim() != 8 {
        return Err(Error::DimMismatch {
            expected: 8,
            found: u.dim(),
        });
    }
    let effect = |r: usize| {
        let k = ComplexMatrix::from_fn(4, |i, j| u[((r << 2) | i, j)]);
        k.adjoint().matmul(&k)
    };
    Ok(&effect(plus) - &effect(1 - plus))
}

pub fn theorem1_report(tol: &Tolerance) -> Result<Theorem1Report> {
    theorem1_report_for(&literal_diag2(), &literal_diag3(), tol)
}

/// Runs every check with the given pair standing in for the literal diagrams.
pub fn theorem1_report_for(diag2: &Circuit, diag3: &Circuit, tol: &Tolerance) -> Result<Theorem1Report> {
    let diag_deviation = circuit_deviation(diag2, diag3)?;

    let alice = alice_momentum_circuit(Picture::Alice).compile()?;
    let eve = alice_momentum_circuit(Picture::Eve).compile()?;
    // (reg, B) ⊗ A reordered to (reg, A, B)
    let frame_blind = alice
        .tensor(&ComplexMatrix::identity(2))
        .permute_subsystems(&[2, 2, 2], &[0, 2, 1])?;
    let convention_deviation = eve.max_abs_diff(&frame_blind);

    let alice_pos = alice_position_circuit_kin(Picture::Alice).compile()?;
    let eve_pos = alice_position_circuit_kin(Picture::Eve).compile()?;
    let relativization_deviation = eve
        .max_abs_diff(&relativize_alice(&alice)?)
        .max(eve_pos.max_abs_diff(&relativize_alice(&alice_pos)?));

    let (amap, emap) = (alice_mode_map(), eve_mode_map());
    let mode_deviation = [
        intertwining_deviation(&alice_momentum_mode_circuit(Picture::Alice).compile()?, &alice, &amap),
        intertwining_deviation(&alice_momentum_mode_circuit(Picture::Eve).compile()?, &eve, &emap),
        intertwining_deviation(&alice_position_circuit(Picture::Alice).compile()?, &alice_pos, &amap),
        intertwining_deviation(&alice_position_circuit(Picture::Eve).compile()?, &eve_pos, &emap),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let ix = tensor(&pauli::id(), &pauli::x());
    let observable = register_observable(&diag3.compile()?, 0)?;
    let observable_deviation = observable
        .max_abs_diff(&ix)
        .max(register_observable(&eve, 1)?.max_abs_diff(&ix));

    let yen_deviation = yen(&shift_representation(2, 1)?, &pauli::x())?.max_abs_diff(&ix);

    let max_deviation = [
        diag_deviation,
        convention_deviation,
        relativization_deviation,
        mode_deviation,
        observable_deviation,
        yen_deviation,
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(Theorem1Report {
        diag_deviation,
        convention_deviation,
        relativization_deviation,
        mode_deviation,
        observable: json::encode_entries(&observable),
        observable_deviation,
        yen_deviation,
        max_deviation,
        eq_tol: tol.eq_tol,
        passed: max_deviation < tol.eq_tol,
    })
}

/// [`theorem1_report`], failing with `TheoremViolation` on any deviation.
pub fn verify_theorem1(tol: &Tolerance) -> Result<Theorem1Report> {
    let report = theorem1_report(tol)?;
    if !report.passed {
        return Err(Error::TheoremViolation {
            deviation: report.max_deviation,
        });
    }
    Ok(report)
}

fn register_one_probability(out: &[C64], n_wires: usize, reg_wires: &[usize]) -> f64 {
    out.iter()
        .enumerate()
        .filter(|(i, _)| reg_wires.iter().any(|&w| (i >> (n_wires - 1 - w)) & 1 == 1))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

fn check_kin(psi: &[C64]) -> Result<()> {
    if psi.len() != 4 {
        return Err(Error::DimMismatch {
            expected: 4,
            found: psi.len(),
        });
    }
    Ok(())
}

/// Probability of register value 1 when Eve runs `circuit` (position basis,
/// wires `(reg, A|E, B|E)`) on `|0⟩_reg ⊗ ψ`.
pub fn eve_register_statistics(circuit: &Circuit, psi: &[C64]) -> Result<f64> {
    check_kin(psi)?;
    let mut input = vec![ZERO; 8];
    input[..4].copy_from_slice(psi);
    Ok(register_one_probability(&circuit.simulate(&input)?, 3, &[0]))
}

/// Same, computed from Alice's side: in each branch `a` she holds the
/// relative state `b_rel ↦ ψ(a, a ⊕ b_rel)` and runs her own circuit.
pub fn alice_register_statistics(circuit: &Circuit, psi: &[C64]) -> Result<f64> {
    check_kin(psi)?;
    let mut p = 0.0;
    for a in 0..2 {
        let mut input = vec![ZERO; 4];
        for b_rel in 0..2 {
            input[b_rel] = psi[(a << 1) | (b_rel ^ a)];
        }
        p += register_one_probability(&circuit.simulate(&input)?, 2, &[0]);
    }
    Ok(p)
}

/// Same, on Eve's six mode wires with one register per path.
pub fn eve_mode_register_statistics(circuit: &Circuit, psi: &[C64]) -> Result<f64> {
    check_kin(psi)?;
    let mut input = vec![ZERO; 64];
    for (k, &idx) in eve_mode_map().iter().take(4).enumerate() {
        input[idx] = psi[k];
    }
    Ok(register_one_probability(&circuit.simulate(&input)?, 6, &[0, 3]))
}

/// Eve reads both path registers into her own register `e`. The readout
/// leaves Alice's path untouched: it commutes with the projector onto
/// `(|occ vac⟩ + |vac occ⟩)/√2` on `(A0, A1)`. Returns the commutator norm.
pub fn register_probe_residual() -> Result<f64> {
    use super::circuit::{Gate, GateKind};
    let wires = ["e", "reg0", "A0", "B0", "reg1", "A1", "B1"];
    let readout = Circuit::new(&wires)
        .push(Gate::new(GateKind::X, &["e"]).controlled(&["reg0"]))
        .push(Gate::new(GateKind::X, &["e"]).controlled(&["reg1"]))
        .compile()?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut plus = vec![ZERO; 4];
    plus[0b10] = C64::new(s, 0.0);
    plus[0b01] = C64::new(s, 0.0);
    let p_a = ComplexMatrix::projector_onto(&plus);
    // reorder (A0, A1, e, reg0, B0, reg1, B1) into the circuit's wire order
    let joint = p_a
        .tensor(&ComplexMatrix::identity(32))
        .permute_subsystems(&[2; 7], &[2, 3, 0, 4, 5, 1, 6])?;
    Ok(readout.commutator(&joint).frobenius_norm())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteCheck {
    pub circuit: String,
    pub violation: f64,
    pub compliant: bool,
}

/// Every scenario circuit against the sectorial constraints of its mode
/// space. Position-basis circuits are embedded into modes first.
pub fn route_checks(tol: &Tolerance) -> Result<Vec<RouteCheck>> {
    let apparatus = build_apparatus();
    let alice_modes = alice_frame_modes();
    let mut out = Vec::new();
    let mut push = |name: &str, u: ComplexMatrix, route: Route| {
        let violation = route.violation(&u)?;
        out.push(RouteCheck {
            circuit: name.to_string(),
            violation,
            compliant: violation < tol.eq_tol,
        });
        Ok::<(), Error>(())
    };
    for (name, c) in [
        ("alice_position/alice", alice_position_circuit(Picture::Alice)),
        ("alice_momentum_modes/alice", alice_momentum_mode_circuit(Picture::Alice)),
    ] {
        let route = alice_route(&alice_modes, &c.wires, tol)?;
        push(name, c.compile()?, route)?;
    }
    for (name, c) in [
        ("alice_position/eve", alice_position_circuit(Picture::Eve)),
        ("alice_momentum_modes/eve", alice_momentum_mode_circuit(Picture::Eve)),
    ] {
        let route = apparatus_route(&apparatus, &c.wires, tol)?;
        push(name, c.compile()?, route)?;
    }
    let alice_wires = alice_position_circuit(Picture::Alice).wires;
    let eve_wires = alice_position_circuit(Picture::Eve).wires;
    for (name, c) in [
        ("alice_position_kin/alice", alice_position_circuit_kin(Picture::Alice)),
        ("alice_momentum/alice", alice_momentum_circuit(Picture::Alice)),
    ] {
        let u = embed_via(&alice_mode_map(), 8, &c.compile()?);
        push(name, u, alice_route(&alice_modes, &alice_wires, tol)?)?;
    }
    for (name, c) in [
        ("alice_position_kin/eve", alice_position_circuit_kin(Picture::Eve)),
        ("alice_momentum/eve", alice_momentum_circuit(Picture::Eve)),
        ("diag2", literal_diag2()),
        ("diag3", literal_diag3()),
    ] {
        let u = embed_via(&eve_mode_map(), 64, &c.compile()?);
        push(name, u, apparatus_route(&apparatus, &eve_wires, tol)?)?;
    }
    Ok(out)
}
