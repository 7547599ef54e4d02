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

//! Dense statevector simulation.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::ir::{Circuit, Gate};

const OMEGA: Complex64 = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
const OMEGA_BAR: Complex64 = Complex64::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Amplitudes over `2^wires` basis states; bit `w` of an index is wire `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub wires: usize,
    pub amps: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(wires: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << wires];
        amps[index] = Complex64::new(1.0, 0.0);
        StateVector { wires, amps }
    }

    fn diag(&mut self, w: usize, phase: Complex64) {
        let bit = 1 << w;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= phase;
            }
        }
    }

    /// Swaps amplitude pairs differing in `target` whose index has all bits
    /// of `controls` set.
    fn controlled_flip(&mut self, controls: usize, target: usize) {
        let bit = 1 << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && i & controls == controls {
                self.amps.swap(i, i | bit);
            }
        }
    }

    pub fn apply(&mut self, g: &Gate) {
        match *g {
            Gate::X(w) => self.controlled_flip(0, w),
            Gate::Y(w) => {
                // Y = i·X·Z
                self.diag(w, Complex64::new(-1.0, 0.0));
                self.controlled_flip(0, w);
                for a in &mut self.amps {
                    *a *= I;
                }
            }
            Gate::Z(w) => self.diag(w, Complex64::new(-1.0, 0.0)),
            Gate::P(w) => self.diag(w, I),
            Gate::Pdg(w) => self.diag(w, -I),
            Gate::T(w) => self.diag(w, OMEGA),
            Gate::Tdg(w) => self.diag(w, OMEGA_BAR),
            Gate::H(w) => {
                let bit = 1 << w;
                for i in 0..self.amps.len() {
                    if i & bit == 0 {
                        let a = self.amps[i];
                        let b = self.amps[i | bit];
                        self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::Cnot { control, target } => self.controlled_flip(1 << control, target),
            Gate::Toffoli { c1, c2, target } => self.controlled_flip((1 << c1) | (1 << c2), target),
        }
    }

    pub fn run(c: &Circuit, wires: usize, index: usize) -> Self {
        let mut s = StateVector::basis(wires, index);
        for g in &c.gates {
            s.apply(g);
        }
        s
    }
}
