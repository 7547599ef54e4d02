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

//! Multiple-controlled Toffoli generators and a classical simulator for
//! reversible circuits.

use crate::ir::{ccz_gates, Circuit, Gate};

use super::BenchError;

/// The seven-T doubly-controlled Z on wires `a`, `b`, `c`.
pub fn ccz_fixture() -> Circuit {
    let mut c = Circuit::new(vec!["a".into(), "b".into(), "c".into()], 3);
    c.extend(ccz_gates(0, 1, 2));
    c
}

/// A single Toffoli with controls `a`, `b` and target `c`.
pub fn toffoli() -> Circuit {
    let mut c = Circuit::new(vec!["a".into(), "b".into(), "c".into()], 3);
    c.push(Gate::Toffoli {
        c1: 0,
        c2: 1,
        target: 2,
    });
    c
}

fn tof(c1: usize, c2: usize, target: usize) -> Gate {
    Gate::Toffoli { c1, c2, target }
}

/// k-controlled NOT from 4k−8 Toffolis using k−2 ancillae in arbitrary
/// states, which are restored.
///
/// Wires: controls `c1..ck`, ancillae `a1..a(k-2)`, target `t`; all of them
/// are inputs.
pub fn gen_mct_barenco(k: usize) -> Result<Circuit, BenchError> {
    if k < 3 {
        return Err(BenchError::TooSmall { k });
    }
    let ctl = |j: usize| j - 1;
    let anc = |j: usize| k + j - 1;
    let t = 2 * k - 2;
    let mut names: Vec<String> = (1..=k).map(|j| format!("c{j}")).collect();
    names.extend((1..=k - 2).map(|j| format!("a{j}")));
    names.push("t".into());
    let mut c = Circuit::new(names, 2 * k - 1);

    let top = tof(ctl(k), anc(k - 2), t);
    let step = |j: usize| tof(ctl(j + 1), anc(j - 1), anc(j));
    let bottom = tof(ctl(1), ctl(2), anc(1));
    let down = |c: &mut Circuit| c.extend((2..=k - 2).rev().map(step));
    let up = |c: &mut Circuit| c.extend((2..=k - 2).map(step));

    c.push(top);
    down(&mut c);
    c.push(bottom);
    up(&mut c);
    c.push(top);
    down(&mut c);
    c.push(bottom);
    up(&mut c);
    debug_assert_eq!(c.gates.len(), 4 * k - 8);
    Ok(c)
}

/// k-controlled NOT from 2k−3 Toffolis using k−2 ancillae initialized to
/// |0⟩, which are uncomputed.
///
/// Wires: controls `c1..ck`, target `t`, ancillae `a1..a(k-2)`.
pub fn gen_mct_nc(k: usize) -> Result<Circuit, BenchError> {
    if k < 3 {
        return Err(BenchError::TooSmall { k });
    }
    let ctl = |j: usize| j - 1;
    let t = k;
    let anc = |j: usize| k + j;
    let mut names: Vec<String> = (1..=k).map(|j| format!("c{j}")).collect();
    names.push("t".into());
    names.extend((1..=k - 2).map(|j| format!("a{j}")));
    let mut c = Circuit::new(names, k + 1);

    let compute: Vec<Gate> = std::iter::once(tof(ctl(1), ctl(2), anc(1)))
        .chain((2..=k - 2).map(|j| tof(ctl(j + 1), anc(j - 1), anc(j))))
        .collect();
    c.extend(compute.iter().copied());
    c.push(tof(ctl(k), anc(k - 2), t));
    c.extend(compute.iter().rev().copied());
    debug_assert_eq!(c.gates.len(), 2 * k - 3);
    Ok(c)
}

/// Runs a circuit of X, CNOT and Toffoli gates on a basis state packed into
/// a word (bit `w` is wire `w`). `None` if another gate occurs.
pub fn run_reversible(c: &Circuit, input: u64) -> Option<u64> {
    let mut s = input;
    let bit = |s: u64, w: usize| (s >> w) & 1;
    for g in &c.gates {
        match *g {
            Gate::X(w) => s ^= 1 << w,
            Gate::Cnot { control, target } => s ^= bit(s, control) << target,
            Gate::Toffoli { c1, c2, target } => s ^= (bit(s, c1) & bit(s, c2)) << target,
            _ => return None,
        }
    }
    Some(s)
}

/// Checks that an MCT circuit flips the target exactly when all `k`
/// controls are set, leaving every other wire unchanged, over all inputs.
pub(crate) fn check_mct(c: &Circuit, k: usize, target: usize) -> Result<(), String> {
    let m = c.num_inputs;
    if m > 24 {
        return Err(format!("{m} inputs are too many to check exhaustively"));
    }
    let controls = (1u64 << k) - 1;
    for x in 0..(1u64 << m) {
        let y = run_reversible(c, x).ok_or("circuit is not classical")?;
        let expect = x ^ (u64::from(x & controls == controls) << target);
        if y != expect {
            return Err(format!("input {x:#b} gives {y:#b}, expected {expect:#b}"));
        }
    }
    Ok(())
}
