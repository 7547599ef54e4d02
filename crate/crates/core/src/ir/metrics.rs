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

use serde::Serialize;

use super::{Circuit, Gate};

/// Gate counts and depths of a circuit.
///
/// An unexpanded Toffoli counts as seven T gates and three T layers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub t_count: usize,
    pub t_depth: usize,
    pub cnot_count: usize,
    pub h_count: usize,
    pub other_count: usize,
    pub total_depth: usize,
    pub qubits: usize,
    pub ancillae: usize,
}

impl Metrics {
    pub fn of(c: &Circuit) -> Metrics {
        let mut m = Metrics {
            t_depth: t_depth(c),
            total_depth: total_depth(c),
            qubits: c.num_wires(),
            ancillae: c.num_ancillae(),
            ..Metrics::default()
        };
        for g in &c.gates {
            match g {
                Gate::T(_) | Gate::Tdg(_) => m.t_count += 1,
                Gate::Toffoli { .. } => m.t_count += 7,
                Gate::Cnot { .. } => m.cnot_count += 1,
                Gate::H(_) => m.h_count += 1,
                _ => m.other_count += 1,
            }
        }
        m
    }
}

/// Number of T layers.
///
/// Each wire carries the number of T layers that must precede it. A T gate
/// adds one layer to its wire, a CNOT synchronizes its two wires, and a
/// Toffoli synchronizes its three wires and adds three layers. Other
/// single-qubit gates leave the counters alone.
pub fn t_depth(c: &Circuit) -> usize {
    let mut depth = vec![0usize; c.num_wires()];
    for g in &c.gates {
        match *g {
            Gate::T(w) | Gate::Tdg(w) => depth[w] += 1,
            Gate::Cnot { control, target } => {
                let d = depth[control].max(depth[target]);
                depth[control] = d;
                depth[target] = d;
            }
            Gate::Toffoli { c1, c2, target } => {
                let d = depth[c1].max(depth[c2]).max(depth[target]) + 3;
                depth[c1] = d;
                depth[c2] = d;
                depth[target] = d;
            }
            _ => {}
        }
    }
    depth.into_iter().max().unwrap_or(0)
}

/// Number of layers in an as-soon-as-possible schedule of all gates.
pub fn total_depth(c: &Circuit) -> usize {
    let mut depth = vec![0usize; c.num_wires()];
    for g in &c.gates {
        let ws = g.wires();
        let d = ws.iter().map(|&w| depth[w]).max().unwrap_or(0) + 1;
        for w in ws {
            depth[w] = d;
        }
    }
    depth.into_iter().max().unwrap_or(0)
}
