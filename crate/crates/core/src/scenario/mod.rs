//! Two systems travelling through two paths, seen by an external observer
//! (Eve) and by one of the systems (Alice).
//!
//! Eve describes the kinematical space `H_{A|E} ⊗ H_{B|E}` or, equivalently,
//! four modes `A0, A1, B0, B1` restricted to one excitation per system.
//! Alice describes Bob's position relative to her, `H_{B|A}`, or the two modes
//! `A` (her path) and `Abar`. Measurements write into a register that is
//! local to Alice; in Eve's mode picture it is one register per path.
//!
//! Wire order for position-basis circuits is `(reg, A|E, B|E)` for Eve and
//! `(reg, B|A)` for Alice.

pub mod circuit;
pub mod modes;
pub mod theorem;

use serde::{Deserialize, Serialize};

pub use circuit::{beam_splitter, Circuit, Gate, GateKind};
pub use modes::{alice_frame_modes, build_apparatus, route_compliant, ModeSpace, Route};
pub use theorem::{theorem1_report, verify_circuit_pair, verify_theorem1, Theorem1Report};

use circuit::index_of;
use GateKind::{BeamSplitter, Swap, H, X};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Picture {
    Alice,
    Eve,
}

pub const EVE_MODE_WIRES: [&str; 6] = ["reg0", "A0", "B0", "reg1", "A1", "B1"];
pub const ALICE_MODE_WIRES: [&str; 3] = ["reg", "A", "Abar"];
pub const EVE_KIN_WIRES: [&str; 3] = ["reg", "A|E", "B|E"];
pub const ALICE_KIN_WIRES: [&str; 2] = ["reg", "B|A"];

/// Alice writes 1 when Bob shares her path.
pub fn alice_position_circuit(picture: Picture) -> Circuit {
    match picture {
        Picture::Alice => Circuit::new(&ALICE_MODE_WIRES).push(Gate::new(X, &["reg"]).controlled(&["A"])),
        Picture::Eve => Circuit::new(&EVE_MODE_WIRES)
            .push(Gate::new(X, &["reg0"]).controlled(&["A0", "B0"]))
            .push(Gate::new(X, &["reg1"]).controlled(&["A1", "B1"])),
    }
}

/// [`alice_position_circuit`] in the position basis. Bob on Alice's path is
/// `|0⟩_{B|A}`, so the write fires on `|0⟩`.
pub fn alice_position_circuit_kin(picture: Picture) -> Circuit {
    match picture {
        Picture::Alice => Circuit::new(&ALICE_KIN_WIRES).push(Gate::new(X, &["reg"]).negated(&["B|A"])),
        Picture::Eve => Circuit::new(&EVE_KIN_WIRES).extend(same_path_write()),
    }
}

/// `reg ⊕= [A|E = B|E]`.
fn same_path_write() -> [Gate; 2] {
    [
        Gate::new(X, &["reg"]).negated(&["B|E"]),
        Gate::new(X, &["reg"]).controlled(&["A|E"]),
    ]
}

/// Eve's correction of Alice's beam-splitter orientation on `B|E`.
fn oriented(gate: Gate) -> [Gate; 3] {
    [
        Gate::new(X, &["B|E"]).controlled(&["A|E"]),
        gate,
        Gate::new(X, &["B|E"]).controlled(&["A|E"]),
    ]
}

/// Alice's measurement of Bob's momentum in the position basis, register
/// reading 1 for the `+` outcome.
pub fn alice_momentum_circuit(picture: Picture) -> Circuit {
    match picture {
        Picture::Alice => Circuit::new(&ALICE_KIN_WIRES)
            .push(Gate::new(H, &["B|A"]))
            .push(Gate::new(X, &["reg"]).negated(&["B|A"]))
            .push(Gate::new(H, &["B|A"])),
        Picture::Eve => Circuit::new(&EVE_KIN_WIRES)
            .extend(oriented(Gate::new(H, &["B|E"])))
            .extend(same_path_write())
            .extend(oriented(Gate::new(H, &["B|E"]))),
    }
}

/// The same measurement on modes: beam splitter, position write, beam splitter.
pub fn alice_momentum_mode_circuit(picture: Picture) -> Circuit {
    match picture {
        Picture::Alice => Circuit::new(&ALICE_MODE_WIRES)
            .push(Gate::new(BeamSplitter, &["A", "Abar"]))
            .push(Gate::new(X, &["reg"]).controlled(&["A"]))
            .push(Gate::new(BeamSplitter, &["A", "Abar"])),
        Picture::Eve => {
            let flip = || Gate::new(Swap, &["B0", "B1"]).controlled(&["A1"]);
            let split = || [flip(), Gate::new(BeamSplitter, &["B0", "B1"]), flip()];
            Circuit::new(&EVE_MODE_WIRES)
                .extend(split())
                .extend(alice_position_circuit(Picture::Eve).gates)
                .extend(split())
        }
    }
}

/// Eve's position-basis gate sequence with `|1⟩` controls throughout:
/// `CX(A→B) H_B CX(A→B) CX(B→reg) CX(A→reg) CX(A→B) H_B CX(A→B)`.
pub fn literal_diag2() -> Circuit {
    let cx_ab = || Gate::new(X, &["B|E"]).controlled(&["A|E"]);
    Circuit::new(&EVE_KIN_WIRES)
        .push(cx_ab())
        .push(Gate::new(H, &["B|E"]))
        .push(cx_ab())
        .push(Gate::new(X, &["reg"]).controlled(&["B|E"]))
        .push(Gate::new(X, &["reg"]).controlled(&["A|E"]))
        .push(cx_ab())
        .push(Gate::new(H, &["B|E"]))
        .push(cx_ab())
}

/// `H_B CX(B→reg) H_B`: a measurement of `X_{B|E}` alone.
pub fn literal_diag3() -> Circuit {
    Circuit::new(&EVE_KIN_WIRES)
        .push(Gate::new(H, &["B|E"]))
        .push(Gate::new(X, &["reg"]).controlled(&["B|E"]))
        .push(Gate::new(H, &["B|E"]))
}

/// Basis map from Alice's `(reg, B|A)` into her modes `(reg, A, Abar)`.
pub fn alice_mode_map() -> Vec<usize> {
    (0..4)
        .map(|k| {
            let (r, b) = (k >> 1, k & 1);
            index_of(&[r as u8, (b == 0) as u8, (b == 1) as u8])
        })
        .collect()
}

/// Basis map from Eve's `(reg, A|E, B|E)` into `(reg0, A0, B0, reg1, A1, B1)`:
/// the register value sits on Alice's path, the other register stays empty.
pub fn eve_mode_map() -> Vec<usize> {
    (0..8)
        .map(|k| {
            let (r, a, b) = ((k >> 2) as u8, (k >> 1) & 1, k & 1);
            index_of(&[
                if a == 0 { r } else { 0 },
                (a == 0) as u8,
                (b == 0) as u8,
                if a == 1 { r } else { 0 },
                (a == 1) as u8,
                (b == 1) as u8,
            ])
        })
        .collect()
}
