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

//! Hand-transcribed circuits shared by the integration tests.

#![allow(dead_code)]

use tpar::{Circuit, Gate};

fn cx(control: usize, target: usize) -> Gate {
    Gate::Cnot { control, target }
}

/// Four wires; two T/T† pairs merge away and two T gates combine into a P.
/// Wire indices are 0-based.
pub fn example1() -> Circuit {
    let mut c = Circuit::with_wires(4, 4);
    c.extend([
        cx(2, 3),
        Gate::T(0),
        Gate::T(3),
        cx(0, 1),
        cx(2, 3),
        cx(1, 2),
        cx(1, 0),
        cx(3, 2),
        cx(1, 2),
        cx(0, 1),
        Gate::T(2),
        Gate::Tdg(1),
    ]);
    c
}

/// The doubly-controlled Z in T-depth 2 with one |0⟩ ancilla on wire 3.
pub fn ccz_one_ancilla() -> Circuit {
    let mut c = Circuit::with_wires(4, 3);
    c.extend([
        cx(0, 2),
        cx(2, 3),
        cx(1, 3),
        Gate::Tdg(0),
        Gate::Tdg(1),
        Gate::T(2),
        Gate::Tdg(3),
        cx(1, 3),
        cx(2, 3),
        cx(0, 2),
        cx(1, 0),
        cx(2, 1),
        Gate::T(0),
        Gate::T(1),
        Gate::Tdg(2),
        cx(2, 1),
        cx(1, 0),
    ]);
    c
}

/// Two overlapping Toffolis: (1,2 → 3) then (2,3 → 4).
pub fn two_toffolis() -> Circuit {
    let mut c = Circuit::with_wires(4, 4);
    c.push(Gate::Toffoli {
        c1: 0,
        c2: 1,
        target: 2,
    });
    c.push(Gate::Toffoli {
        c1: 1,
        c2: 2,
        target: 3,
    });
    c
}

/// The `.qc` text of [`example1`].
pub const EXAMPLE1_QC: &str = "\
# two phase pairs that cancel
.v x1 x2 x3 x4
.i x1 x2 x3 x4
BEGIN
tof x3 x4
T x1
T x4
tof x1 x2
tof x3 x4
tof x2 x3
tof x2 x1
tof x4 x3
tof x2 x3
tof x1 x2
T x3
T* x2
END
";

pub const TWO_TOFFOLIS_QC: &str = "\
.v a b c d
.i a b c d
BEGIN
tof a b c
tof b c d
END
";
