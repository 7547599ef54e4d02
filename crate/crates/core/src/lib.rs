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

//! T-count and T-depth optimization of Clifford+T circuits.
//!
//! A circuit is summarized as a phase polynomial over Z8 together with the
//! wire states around each Hadamard gate. Phase terms are then regrouped by
//! matroid partitioning so that each group is applied in one layer of T gates,
//! and the circuit is re-synthesized from CNOT, X, phase and Hadamard gates.
//!
//! ```
//! use tpar::{bench, optimize, AncillaPolicy};
//!
//! let ccz = bench::ccz_fixture();
//! let out = optimize(&ccz, AncillaPolicy::Fixed(1)).unwrap();
//! assert_eq!(out.after.t_count, 7);
//! assert_eq!(out.after.t_depth, 2);
//! ```

pub mod bench;
pub mod gf2;
pub mod ir;
pub mod matroid;
mod parallel;
pub mod phasepoly;
pub mod synth;
pub mod tpar;
pub mod verify;

pub use crate::ir::{Circuit, Gate, Metrics};
pub use crate::parallel::Parallelism;
pub use crate::tpar::{optimize, optimize_with, AncillaPolicy, OptimizeOptions, Optimized};
