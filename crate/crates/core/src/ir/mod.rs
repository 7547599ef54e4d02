// Copyright 2026 The tpar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Circuit data model.

mod metrics;
mod qc;

use std::fmt;

use smallvec::{smallvec, SmallVec};

pub use metrics::{t_depth, total_depth, Metrics};
pub use qc::{parse_qc, write_qc, ParseError};

/// A gate of the Clifford+T+Toffoli gate set. Wire arguments are indices
/// into the owning circuit's wire list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    Y(usize),
    Z(usize),
    H(usize),
    P(usize),
    Pdg(usize),
    T(usize),
    Tdg(usize),
    Cnot { control: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    P,
    Pdg,
    T,
    Tdg,
    Cnot,
    Toffoli,
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::Y(_) => GateKind::Y,
            Gate::Z(_) => GateKind::Z,
            Gate::H(_) => GateKind::H,
            Gate::P(_) => GateKind::P,
            Gate::Pdg(_) => GateKind::Pdg,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Cnot { .. } => GateKind::Cnot,
            Gate::Toffoli { .. } => GateKind::Toffoli,
        }
    }

    /// Wires in order: controls first, target last.
    pub fn wires(&self) -> SmallVec<[usize; 3]> {
        match *self {
            Gate::X(w)
            | Gate::Y(w)
            | Gate::Z(w)
            | Gate::H(w)
            | Gate::P(w)
            | Gate::Pdg(w)
            | Gate::T(w)
            | Gate::Tdg(w) => smallvec![w],
            Gate::Cnot { control, target } => smallvec![control, target],
            Gate::Toffoli { c1, c2, target } => smallvec![c1, c2, target],
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, Gate::T(_) | Gate::Tdg(_))
    }

    /// Applies `f` to every wire index.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::X(w) => Gate::X(f(w)),
            Gate::Y(w) => Gate::Y(f(w)),
            Gate::Z(w) => Gate::Z(f(w)),
            Gate::H(w) => Gate::H(f(w)),
            Gate::P(w) => Gate::P(f(w)),
            Gate::Pdg(w) => Gate::Pdg(f(w)),
            Gate::T(w) => Gate::T(f(w)),
            Gate::Tdg(w) => Gate::Tdg(f(w)),
            Gate::Cnot { control, target } => Gate::Cnot {
                control: f(control),
                target: f(target),
            },
            Gate::Toffoli { c1, c2, target } => Gate::Toffoli {
                c1: f(c1),
                c2: f(c2),
                target: f(target),
            },
        }
    }

    /// The power of T this gate applies, for diagonal single-qubit gates.
    pub fn phase_power(&self) -> Option<u8> {
        match self {
            Gate::T(_) => Some(1),
            Gate::P(_) => Some(2),
            Gate::Z(_) => Some(4),
            Gate::Pdg(_) => Some(6),
            Gate::Tdg(_) => Some(7),
            _ => None,
        }
    }
}

/// The doubly-controlled Z on wires `a`, `b`, `c` using seven T gates and
/// six CNOTs.
pub fn ccz_gates(a: usize, b: usize, c: usize) -> [Gate; 13] {
    let cx = |control, target| Gate::Cnot { control, target };
    [
        Gate::Tdg(a),
        Gate::Tdg(b),
        cx(c, a),
        cx(b, c),
        Gate::T(a),
        Gate::T(c),
        cx(b, a),
        cx(b, c),
        Gate::Tdg(a),
        cx(c, a),
        Gate::T(a),
        Gate::Tdg(c),
        cx(b, a),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("gate {index} ({gate:?}) uses wire {wire} but the circuit has {wires} wires")]
    WireOutOfRange {
        index: usize,
        gate: Gate,
        wire: usize,
        wires: usize,
    },
    #[error("gate {index} ({gate:?}) uses a wire more than once")]
    RepeatedWire { index: usize, gate: Gate },
    #[error("{inputs} inputs declared for a circuit with {wires} wires")]
    TooManyInputs { inputs: usize, wires: usize },
}

/// An ordered gate list over named wires.
///
/// Wires `0..num_inputs` carry the primary inputs; the remaining wires are
/// ancillae that start (and must end) in |0⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub wire_names: Vec<String>,
    pub num_inputs: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(wire_names: Vec<String>, num_inputs: usize) -> Self {
        assert!(num_inputs <= wire_names.len());
        Circuit {
            wire_names,
            num_inputs,
            gates: Vec::new(),
        }
    }

    /// A circuit with wires named `q0, q1, ...`.
    pub fn with_wires(wires: usize, num_inputs: usize) -> Self {
        Circuit::new((0..wires).map(|i| format!("q{i}")).collect(), num_inputs)
    }

    pub fn num_wires(&self) -> usize {
        self.wire_names.len()
    }

    pub fn num_ancillae(&self) -> usize {
        self.num_wires() - self.num_inputs
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        self.gates.extend(gates);
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let wires = self.num_wires();
        if self.num_inputs > wires {
            return Err(CircuitError::TooManyInputs {
                inputs: self.num_inputs,
                wires,
            });
        }
        for (index, gate) in self.gates.iter().enumerate() {
            let ws = gate.wires();
            if let Some(&wire) = ws.iter().find(|&&w| w >= wires) {
                return Err(CircuitError::WireOutOfRange {
                    index,
                    gate: *gate,
                    wire,
                    wires,
                });
            }
            for i in 0..ws.len() {
                if ws[i + 1..].contains(&ws[i]) {
                    return Err(CircuitError::RepeatedWire { index, gate: *gate });
                }
            }
        }
        Ok(())
    }

    pub fn has_toffoli(&self) -> bool {
        self.gates.iter().any(|g| matches!(g, Gate::Toffoli { .. }))
    }

    pub fn metrics(&self) -> Metrics {
        Metrics::of(self)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_qc(self))
    }
}

/// Replaces each Toffoli by H on the target, the seven-T ccZ, and H again.
pub fn expand(c: &Circuit) -> Circuit {
    let mut out = Circuit::new(c.wire_names.clone(), c.num_inputs);
    for g in &c.gates {
        match *g {
            Gate::Toffoli { c1, c2, target } => {
                out.push(Gate::H(target));
                out.extend(ccz_gates(c1, c2, target));
                out.push(Gate::H(target));
            }
            other => out.push(other),
        }
    }
    out
}

/// Removes pairs of H gates on the same wire with nothing on that wire in
/// between.
pub fn cancel_hadamard_pairs(c: &Circuit) -> Circuit {
    let mut keep = vec![true; c.gates.len()];
    // Per wire, the indices of kept gates touching it.
    let mut stacks: Vec<Vec<usize>> = vec![Vec::new(); c.num_wires()];
    for (i, g) in c.gates.iter().enumerate() {
        if let Gate::H(w) = *g {
            if let Some(&j) = stacks[w].last() {
                if matches!(c.gates[j], Gate::H(_)) {
                    stacks[w].pop();
                    keep[i] = false;
                    keep[j] = false;
                    continue;
                }
            }
        }
        for w in g.wires() {
            stacks[w].push(i);
        }
    }
    let mut out = Circuit::new(c.wire_names.clone(), c.num_inputs);
    out.extend(
        c.gates
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(g, _)| *g),
    );
    out
}
