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

//! Phase-polynomial summaries of circuits.
//!
//! A {CNOT, T} circuit maps |x⟩ to ω^p(x) |g(x)⟩ with ω = e^{iπ/4}, where
//! p is a Z8-weighted sum of XOR functions. Hadamard gates are handled by
//! introducing a fresh path variable per gate and recording the wire states
//! on either side of it.

use indexmap::IndexMap;

use crate::gf2::{Mask, XorFunction};
use crate::ir::{Circuit, Gate};

/// A phase term ω^{coeff · f(x)}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhaseTerm {
    pub coeff: u8,
    pub mask: Mask,
}

impl PhaseTerm {
    pub fn new(coeff: u8, mask: Mask) -> Self {
        PhaseTerm {
            coeff: coeff % 8,
            mask,
        }
    }

    /// Whether synthesizing this term needs a T or T† gate.
    pub fn is_odd(&self) -> bool {
        self.coeff % 2 == 1
    }
}

/// Phase terms keyed by mask, in first-insertion order.
pub type TermSet = IndexMap<Mask, u8>;

/// Adds ω^{c · f} to `terms`.
///
/// A term on `1 ⊕ f` is stored as `−c` on `f`; the leftover ω^c is a global
/// phase and is dropped, as are terms on constant functions.
pub fn merge_term(terms: &mut TermSet, c: u8, f: &XorFunction) {
    if f.is_constant() {
        return;
    }
    let c = if f.parity { (8 - c % 8) % 8 } else { c % 8 };
    if c == 0 {
        return;
    }
    let entry = terms.entry(f.mask.clone()).or_insert(0);
    *entry = (*entry + c) % 8;
    if *entry == 0 {
        terms.shift_remove(&f.mask);
    }
}

/// Wire states before and after one Hadamard gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HadamardEvent {
    pub target: usize,
    /// Variable index of the path variable introduced by this gate.
    pub path_var: usize,
    pub q_in: Vec<XorFunction>,
    pub q_out: Vec<XorFunction>,
}

/// The ⟨S, Q, H⟩ summary of a circuit.
///
/// Variables `0..m` are the primary inputs and variable `n + i` is the path
/// variable of the `i`-th Hadamard gate, so every mask has width `n + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSummary {
    pub terms: TermSet,
    pub q: Vec<XorFunction>,
    pub events: Vec<HadamardEvent>,
    /// Wire count.
    pub n: usize,
    /// Primary input count.
    pub m: usize,
    /// Hadamard count.
    pub k: usize,
}

impl CircuitSummary {
    pub fn width(&self) -> usize {
        self.n + self.k
    }

    /// The initial wire states: `x_j` on input wire `j`, zero on ancillae.
    pub fn initial_states(n: usize, m: usize, width: usize) -> Vec<XorFunction> {
        (0..n)
            .map(|j| {
                if j < m {
                    XorFunction::var(width, j)
                } else {
                    XorFunction::zero(width)
                }
            })
            .collect()
    }

    pub fn phase_terms(&self) -> Vec<PhaseTerm> {
        self.terms
            .iter()
            .map(|(m, c)| PhaseTerm::new(*c, m.clone()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SummaryError {
    #[error("gate {index} is a Toffoli; expand the circuit first")]
    UnexpandedToffoli { index: usize },
    #[error("gate {index} ({gate:?}) is not a CNOT, X or phase gate")]
    Unsupported { index: usize, gate: Gate },
    #[error("input has {got} bits, circuit has {wires} wires")]
    InputWidth { got: usize, wires: usize },
}

/// Folds the gate semantics over the circuit starting from the initial
/// states.
pub fn summarize(c: &Circuit) -> Result<CircuitSummary, SummaryError> {
    let n = c.num_wires();
    let m = c.num_inputs;
    let k = c.gates.iter().filter(|g| matches!(g, Gate::H(_))).count();
    let width = n + k;
    let mut q = CircuitSummary::initial_states(n, m, width);
    let mut terms = TermSet::new();
    let mut events = Vec::with_capacity(k);

    for (index, g) in c.gates.iter().enumerate() {
        match *g {
            Gate::X(w) => q[w].flip_parity(),
            Gate::Y(w) => {
                merge_term(&mut terms, 4, &q[w]);
                q[w].flip_parity();
            }
            Gate::Z(w) | Gate::P(w) | Gate::Pdg(w) | Gate::T(w) | Gate::Tdg(w) => {
                let c = g.phase_power().expect("diagonal gate");
                merge_term(&mut terms, c, &q[w]);
            }
            Gate::Cnot { control, target } => {
                let src = q[control].clone();
                q[target].xor_assign(&src);
            }
            Gate::H(w) => {
                let path_var = n + events.len();
                let q_in = q.clone();
                q[w] = XorFunction::var(width, path_var);
                events.push(HadamardEvent {
                    target: w,
                    path_var,
                    q_in,
                    q_out: q.clone(),
                });
            }
            Gate::Toffoli { .. } => return Err(SummaryError::UnexpandedToffoli { index }),
        }
    }
    Ok(CircuitSummary {
        terms,
        q,
        events,
        n,
        m,
        k,
    })
}

/// Classically simulates a circuit of CNOT, X and diagonal phase gates on a
/// basis input, returning the ω exponent and the output basis state.
pub fn simulate_cnot_t(c: &Circuit, input: &[bool]) -> Result<(u8, Vec<bool>), SummaryError> {
    if input.len() != c.num_wires() {
        return Err(SummaryError::InputWidth {
            got: input.len(),
            wires: c.num_wires(),
        });
    }
    let mut state = input.to_vec();
    let mut exponent = 0u8;
    for (index, g) in c.gates.iter().enumerate() {
        match *g {
            Gate::X(w) => state[w] = !state[w],
            Gate::Cnot { control, target } => state[target] ^= state[control],
            Gate::Z(w) | Gate::P(w) | Gate::Pdg(w) | Gate::T(w) | Gate::Tdg(w) => {
                if state[w] {
                    exponent = (exponent + g.phase_power().expect("diagonal gate")) % 8;
                }
            }
            other => return Err(SummaryError::Unsupported { index, gate: other }),
        }
    }
    Ok((exponent, state))
}
