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

//! Re-synthesis of linear stages and phase stages.

use crate::gf2::{eliminate_with_ops, Basis, RowOp, XorFunction};
use crate::ir::Gate;
use crate::phasepoly::PhaseTerm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("block of {size} terms needs {needed} wires but only {wires} are available")]
    NotComputable {
        size: usize,
        needed: usize,
        wires: usize,
    },
    #[error("a phase term is outside the span of the input states")]
    OutOfSpan,
    #[error("source and target states span different spaces")]
    Unreachable,
    #[error("{from} source states but {to} target states")]
    LengthMismatch { from: usize, to: usize },
    #[error("hadamard target {0} is out of range")]
    BadTarget(usize),
}

/// Extends the block's functions to a full list of wire states with the same
/// span as `q_in`.
///
/// The result starts with the block's masks in order, continues with the
/// rows of `q_in` that are not yet in the span, and is padded with zero
/// functions up to `wires` entries. All parities are zero.
pub fn extend_to_basis(
    block: &[PhaseTerm],
    q_in: &[XorFunction],
    wires: usize,
) -> Result<Vec<XorFunction>, SynthError> {
    let width = q_in.first().map(|q| q.width()).unwrap_or(0);
    let span = Basis::from_rows(width, q_in.iter().map(|q| &q.mask));
    let mut out: Vec<XorFunction> = Vec::with_capacity(wires);
    let mut basis = Basis::new(width);
    for t in block {
        if !span.contains(&t.mask) {
            return Err(SynthError::OutOfSpan);
        }
        basis.insert(&t.mask);
        out.push(XorFunction::new(false, t.mask.clone()));
    }
    for q in q_in {
        if basis.insert(&q.mask) {
            out.push(XorFunction::new(false, q.mask.clone()));
        }
    }
    if out.len() > wires {
        return Err(SynthError::NotComputable {
            size: block.len(),
            needed: out.len(),
            wires,
        });
    }
    out.resize(wires, XorFunction::zero(width));
    Ok(out)
}

fn op_gate(op: &RowOp) -> Gate {
    match *op {
        RowOp::Add { source, target } => Gate::Cnot {
            control: source,
            target,
        },
        RowOp::Flip { target } => Gate::X(target),
    }
}

/// CNOT and X gates taking wire states `from` to wire states `to`.
///
/// Both lists are reduced to the same canonical form by Gaussian
/// elimination; the circuit is the reduction of `from` followed by the
/// reduction of `to` run backwards.
pub fn linear_stage(from: &[XorFunction], to: &[XorFunction]) -> Result<Vec<Gate>, SynthError> {
    if from.len() != to.len() {
        return Err(SynthError::LengthMismatch {
            from: from.len(),
            to: to.len(),
        });
    }
    if from == to {
        return Ok(Vec::new());
    }
    let (bf, ops_from) = eliminate_with_ops(from);
    let (bt, ops_to) = eliminate_with_ops(to);
    if bf.rows() != bt.rows() {
        return Err(SynthError::Unreachable);
    }
    Ok(cancel_adjacent(
        ops_from.iter().chain(ops_to.iter().rev()).map(op_gate),
    ))
}

/// Drops consecutive pairs of identical CNOT or X gates.
fn cancel_adjacent(gates: impl IntoIterator<Item = Gate>) -> Vec<Gate> {
    let mut out: Vec<Gate> = Vec::new();
    for g in gates {
        if out.last() == Some(&g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

/// Gates applying ω^c on a wire, for c in Z8. At most one of them is a T or
/// T† gate.
pub fn phase_gates(c: u8, wire: usize) -> Vec<Gate> {
    match c % 8 {
        0 => vec![],
        1 => vec![Gate::T(wire)],
        2 => vec![Gate::P(wire)],
        3 => vec![Gate::P(wire), Gate::T(wire)],
        4 => vec![Gate::Z(wire)],
        5 => vec![Gate::Z(wire), Gate::T(wire)],
        6 => vec![Gate::Pdg(wire)],
        _ => vec![Gate::Tdg(wire)],
    }
}

/// Applies each term's phase on its wire.
pub fn phase_stage(terms: &[PhaseTerm], placement: &[usize]) -> Vec<Gate> {
    assert_eq!(terms.len(), placement.len());
    terms
        .iter()
        .zip(placement)
        .flat_map(|(t, &w)| phase_gates(t.coeff, w))
        .collect()
}

/// One block together with the wire states around it.
#[derive(Clone, Debug)]
pub struct SynthesisRequest {
    pub block: Vec<PhaseTerm>,
    pub q_in: Vec<XorFunction>,
    /// Wire states after the block. With a Hadamard these are the states
    /// after the H gate.
    pub q_out: Vec<XorFunction>,
    pub hadamard: Option<usize>,
}

/// Linear stage into a basis containing the block, the phase stage, a linear
/// stage to the output states, and the optional Hadamard.
///
/// With a Hadamard the wires are first restored to `q_in` and the H gate is
/// applied to the target.
pub fn synthesize_block(req: &SynthesisRequest) -> Result<Vec<Gate>, SynthError> {
    let wires = req.q_in.len();
    let mut gates = Vec::new();
    let mut current = req.q_in.clone();
    if !req.block.is_empty() {
        let basis = extend_to_basis(&req.block, &req.q_in, wires)?;
        gates.extend(linear_stage(&current, &basis)?);
        let placement: Vec<usize> = (0..req.block.len()).collect();
        gates.extend(phase_stage(&req.block, &placement));
        current = basis;
    }
    match req.hadamard {
        None => gates.extend(linear_stage(&current, &req.q_out)?),
        Some(target) => {
            if target >= wires {
                return Err(SynthError::BadTarget(target));
            }
            gates.extend(linear_stage(&current, &req.q_in)?);
            gates.push(Gate::H(target));
        }
    }
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{Mask, RowOp};

    fn f(width: usize, vars: &[usize]) -> XorFunction {
        XorFunction::new(false, Mask::from_indices(width, vars.iter().map(|v| v - 1)))
    }

    fn replay(gates: &[Gate], states: &[XorFunction]) -> Vec<XorFunction> {
        let mut s = states.to_vec();
        for g in gates {
            match *g {
                Gate::Cnot { control, target } => RowOp::Add {
                    source: control,
                    target,
                }
                .apply(&mut s),
                Gate::X(w) => RowOp::Flip { target: w }.apply(&mut s),
                _ => panic!("non-linear gate {g:?}"),
            }
        }
        s
    }

    #[test]
    fn one_ancilla_ccz_block_fills_the_wires() {
        let w = 3;
        let block: Vec<PhaseTerm> = [&[1][..], &[2], &[1, 3], &[1, 2, 3]]
            .iter()
            .map(|v| PhaseTerm::new(7, f(w, v).mask))
            .collect();
        let q_in = vec![f(w, &[1]), f(w, &[2]), f(w, &[3]), XorFunction::zero(w)];
        let basis = extend_to_basis(&block, &q_in, 4).unwrap();
        let masks: Vec<_> = basis.iter().map(|b| b.mask.clone()).collect();
        assert_eq!(
            masks,
            block.iter().map(|t| t.mask.clone()).collect::<Vec<_>>()
        );
    }

    #[test]
    fn empty_block_extends_to_the_input_states() {
        let q_in = vec![f(2, &[1]), f(2, &[2])];
        assert_eq!(extend_to_basis(&[], &q_in, 2).unwrap(), q_in);
    }

    #[test]
    fn oversized_block_is_rejected() {
        let block: Vec<PhaseTerm> = [&[1, 3][..], &[2, 3], &[1, 2]]
            .iter()
            .map(|v| PhaseTerm::new(1, f(3, v).mask))
            .collect();
        let q_in = vec![f(3, &[1]), f(3, &[2]), f(3, &[3])];
        assert!(matches!(
            extend_to_basis(&block, &q_in, 3),
            Err(SynthError::NotComputable { needed: 4, .. })
        ));
    }

    #[test]
    fn identical_states_need_no_gates() {
        let q = vec![f(2, &[1]), f(2, &[2])];
        assert!(linear_stage(&q, &q).unwrap().is_empty());
    }

    #[test]
    fn linear_stage_reaches_its_target() {
        let w = 3;
        let from = vec![f(w, &[1]), f(w, &[2]), f(w, &[3]), XorFunction::zero(w)];
        let to = vec![f(w, &[1]), f(w, &[2]), f(w, &[1, 3]), f(w, &[1, 2, 3])];
        let gates = linear_stage(&from, &to).unwrap();
        assert_eq!(replay(&gates, &from), to);
    }

    #[test]
    fn linear_stage_realizes_parities_with_x() {
        let from = vec![f(2, &[1]), f(2, &[2])];
        let mut to = vec![f(2, &[2]), f(2, &[1, 2])];
        to[1].parity = true;
        let gates = linear_stage(&from, &to).unwrap();
        assert_eq!(replay(&gates, &from), to);
        assert!(gates.iter().any(|g| matches!(g, Gate::X(_))));
    }

    #[test]
    fn linear_stage_rejects_different_spans() {
        let from = vec![f(2, &[1]), XorFunction::zero(2)];
        let to = vec![f(2, &[2]), XorFunction::zero(2)];
        assert_eq!(linear_stage(&from, &to), Err(SynthError::Unreachable));
    }

    #[test]
    fn phase_gate_table() {
        assert_eq!(phase_gates(7, 0), vec![Gate::Tdg(0)]);
        assert_eq!(phase_gates(4, 0), vec![Gate::Z(0)]);
        assert_eq!(phase_gates(3, 2), vec![Gate::P(2), Gate::T(2)]);
        for c in 0..8u8 {
            let gates = phase_gates(c, 0);
            let power: u8 = gates.iter().map(|g| g.phase_power().unwrap()).sum();
            assert_eq!(power % 8, c);
            assert!(gates.iter().filter(|g| g.is_t()).count() <= 1);
        }
    }

    #[test]
    fn empty_request_is_empty_circuit() {
        let q = vec![f(2, &[1]), f(2, &[2])];
        let req = SynthesisRequest {
            block: vec![],
            q_in: q.clone(),
            q_out: q,
            hadamard: None,
        };
        assert!(synthesize_block(&req).unwrap().is_empty());
    }
}
