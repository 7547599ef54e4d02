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

//! Equivalence and minimality oracles.

mod statevector;

use std::collections::HashMap;

use crate::gf2::{Mask, XorFunction};
use crate::ir::{expand, Circuit};
use crate::matroid::Oracle;
use crate::parallel::Parallelism;
use crate::phasepoly::{summarize, CircuitSummary, PhaseTerm};

pub use statevector::StateVector;

/// Default wire limit for dense simulation.
pub const DEFAULT_MAX_WIRES: usize = 10;
/// Amplitude tolerance for unitary comparison.
pub const TOLERANCE: f64 = 1e-9;
/// Largest term set accepted by [`brute_force_min_partition`].
pub const MAX_BRUTE_FORCE_TERMS: usize = 9;
const MAX_WITNESS_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Equal,
    EqualUpToGlobalPhase,
    Different,
}

impl Verdict {
    pub fn is_equivalent(self) -> bool {
        self != Verdict::Different
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Equal => "equal",
            Verdict::EqualUpToGlobalPhase => "equal-up-to-global-phase",
            Verdict::Different => "different",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceReport {
    pub verdict: Verdict,
    /// An input on which the circuits differ. For unitary checks this is a
    /// basis input over the primary inputs; for summary checks it assigns
    /// the primary inputs followed by the path variables.
    pub witness: Option<Vec<bool>>,
    pub max_amplitude_error: f64,
    pub note: Option<String>,
}

impl EquivalenceReport {
    fn equal(verdict: Verdict, err: f64) -> Self {
        EquivalenceReport {
            verdict,
            witness: None,
            max_amplitude_error: err,
            note: None,
        }
    }

    fn different(witness: Vec<bool>, err: f64, note: impl Into<Option<String>>) -> Self {
        EquivalenceReport {
            verdict: Verdict::Different,
            witness: Some(witness),
            max_amplitude_error: err,
            note: note.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("{wires} wires exceed the simulation limit of {max}")]
    TooManyWires { wires: usize, max: usize },
    #[error("{size} terms exceed the brute-force limit of {max}")]
    TooManyTerms { size: usize, max: usize },
    #[error("no partition into independent blocks exists")]
    NoPartition,
}

fn bits(x: usize, len: usize) -> Vec<bool> {
    (0..len).map(|i| (x >> i) & 1 == 1).collect()
}

/// Compares the circuits on every basis input with ancillae in |0⟩, up to
/// a global phase, by dense simulation.
pub fn check_unitary(
    a: &Circuit,
    b: &Circuit,
    max_wires: usize,
) -> Result<EquivalenceReport, VerifyError> {
    check_unitary_with(a, b, max_wires, Parallelism::default())
}

pub fn check_unitary_with(
    a: &Circuit,
    b: &Circuit,
    max_wires: usize,
    par: Parallelism,
) -> Result<EquivalenceReport, VerifyError> {
    let wires = a.num_wires().max(b.num_wires());
    if wires > max_wires {
        return Err(VerifyError::TooManyWires {
            wires,
            max: max_wires,
        });
    }
    let m = a.num_inputs;
    if b.num_inputs != m {
        return Ok(EquivalenceReport::different(
            vec![false; m.min(b.num_inputs)],
            f64::INFINITY,
            Some("input counts differ".to_string()),
        ));
    }

    let first_a = StateVector::run(a, wires, 0);
    let first_b = StateVector::run(b, wires, 0);
    let (j, _) = first_a
        .amps
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .expect("at least one amplitude");
    let phase = first_b.amps[j] / first_a.amps[j];
    if (phase.norm() - 1.0).abs() > TOLERANCE {
        return Ok(EquivalenceReport::different(
            vec![false; m],
            (first_b.amps[j] - first_a.amps[j]).norm(),
            None,
        ));
    }

    let errors = par.map_range(1usize << m, |x| {
        let sa = StateVector::run(a, wires, x);
        let sb = StateVector::run(b, wires, x);
        sa.amps
            .iter()
            .zip(&sb.amps)
            .map(|(u, v)| (v - u * phase).norm())
            .fold(0.0f64, f64::max)
    });
    let max_err = errors.iter().copied().fold(0.0f64, f64::max);
    if let Some(x) = errors.iter().position(|e| *e > TOLERANCE) {
        return Ok(EquivalenceReport::different(bits(x, m), max_err, None));
    }
    let verdict = if (phase - 1.0).norm() <= TOLERANCE {
        Verdict::Equal
    } else {
        Verdict::EqualUpToGlobalPhase
    };
    Ok(EquivalenceReport::equal(verdict, max_err))
}

/// A summary with variables renumbered to `inputs, path variables`.
struct Canonical {
    m: usize,
    width: usize,
    terms: HashMap<Mask, u8>,
    events: Vec<(usize, Vec<XorFunction>, Vec<XorFunction>)>,
    q: Vec<XorFunction>,
}

impl Canonical {
    fn new(s: &CircuitSummary) -> Self {
        let width = s.m + s.k;
        let map_mask = |mask: &Mask| {
            Mask::from_indices(
                width,
                mask.iter_ones().map(|j| {
                    if j < s.m {
                        j
                    } else {
                        assert!(j >= s.n, "ancilla variable in a summary");
                        s.m + (j - s.n)
                    }
                }),
            )
        };
        let map_states = |q: &[XorFunction]| {
            q.iter()
                .map(|f| XorFunction::new(f.parity, map_mask(&f.mask)))
                .collect::<Vec<_>>()
        };
        Canonical {
            m: s.m,
            width,
            terms: s.terms.iter().map(|(k, c)| (map_mask(k), *c)).collect(),
            events: s
                .events
                .iter()
                .map(|e| (e.target, map_states(&e.q_in), map_states(&e.q_out)))
                .collect(),
            q: map_states(&s.q),
        }
    }

    fn phase(&self, x: &Mask) -> u8 {
        self.terms
            .iter()
            .filter(|(f, _)| f.dot(x))
            .fold(0u8, |acc, (_, c)| (acc + c) % 8)
    }
}

/// Wire states agree on shared wires and extra wires are constant zero.
fn states_match(a: &[XorFunction], b: &[XorFunction]) -> bool {
    let shared = a.len().min(b.len());
    a[..shared] == b[..shared]
        && a[shared..]
            .iter()
            .chain(&b[shared..])
            .all(|f| !f.parity && f.is_constant())
}

fn outputs_differ(a: &[XorFunction], b: &[XorFunction], x: &Mask) -> bool {
    let val = |q: &[XorFunction], i: usize| q.get(i).is_some_and(|f| f.eval(x));
    (0..a.len().max(b.len())).any(|i| val(a, i) != val(b, i))
}

/// Compares the phase-polynomial summaries of two circuits.
///
/// Toffolis are expanded first. Path variables are matched by Hadamard
/// order, so circuits with different Hadamard structure are reported as
/// different even when they are equivalent.
pub fn check_summary(a: &Circuit, b: &Circuit) -> EquivalenceReport {
    let sa = summarize(&expand(a)).expect("expanded circuits summarize");
    let sb = summarize(&expand(b)).expect("expanded circuits summarize");
    if sa.m != sb.m {
        return EquivalenceReport::different(
            vec![false; sa.m.min(sb.m)],
            f64::NAN,
            Some("input counts differ".to_string()),
        );
    }
    let ca = Canonical::new(&sa);
    let cb = Canonical::new(&sb);
    let zeros = vec![false; ca.width.min(cb.width)];
    if sa.k != sb.k {
        return EquivalenceReport::different(
            zeros,
            f64::NAN,
            Some(format!("{} vs {} hadamard gates", sa.k, sb.k)),
        );
    }
    for (i, (ea, eb)) in ca.events.iter().zip(&cb.events).enumerate() {
        if ea.0 != eb.0 || !states_match(&ea.1, &eb.1) || !states_match(&ea.2, &eb.2) {
            return EquivalenceReport::different(
                zeros,
                f64::NAN,
                Some(format!("hadamard {i} sees different wire states")),
            );
        }
    }
    let q_match = states_match(&ca.q, &cb.q);
    if q_match && ca.terms == cb.terms {
        return EquivalenceReport::equal(Verdict::Equal, 0.0);
    }

    let width = ca.width;
    let differs = |x: &Mask| ca.phase(x) != cb.phase(x) || outputs_differ(&ca.q, &cb.q, x);
    let mut candidates: Vec<Mask> = (0..width).map(|j| Mask::unit(width, j)).collect();
    candidates.extend(
        ca.terms
            .iter()
            .filter(|(f, c)| cb.terms.get(*f) != Some(c))
            .map(|(f, _)| f.clone()),
    );
    candidates.extend(
        cb.terms
            .iter()
            .filter(|(f, c)| ca.terms.get(*f) != Some(c))
            .map(|(f, _)| f.clone()),
    );
    let to_bits = |x: &Mask| (0..width).map(|j| x.get(j)).collect::<Vec<_>>();
    if let Some(x) = candidates.iter().find(|x| differs(x)) {
        return EquivalenceReport::different(to_bits(x), f64::NAN, None);
    }
    if width <= MAX_WITNESS_VARS {
        for v in 0..(1usize << width) {
            let x = Mask::from_bools(&bits(v, width));
            if differs(&x) {
                return EquivalenceReport::different(to_bits(&x), f64::NAN, None);
            }
        }
        if q_match {
            let mut r = EquivalenceReport::equal(Verdict::Equal, 0.0);
            r.note = Some("phase polynomials agree on every assignment".to_string());
            return r;
        }
    }
    debug_assert_eq!(ca.m, cb.m);
    EquivalenceReport::different(
        vec![false; width],
        f64::NAN,
        Some("summaries differ; no distinguishing assignment searched".to_string()),
    )
}

/// Minimum number of independent blocks covering `terms`, by exhaustive
/// search over set partitions.
pub fn brute_force_min_partition(terms: &[PhaseTerm], o: &Oracle) -> Result<usize, VerifyError> {
    if terms.len() > MAX_BRUTE_FORCE_TERMS {
        return Err(VerifyError::TooManyTerms {
            size: terms.len(),
            max: MAX_BRUTE_FORCE_TERMS,
        });
    }
    fn search(
        i: usize,
        terms: &[PhaseTerm],
        blocks: &mut Vec<Vec<Mask>>,
        best: &mut usize,
        o: &Oracle,
    ) {
        if blocks.len() >= *best {
            return;
        }
        if i == terms.len() {
            *best = blocks.len();
            return;
        }
        let m = &terms[i].mask;
        for b in 0..blocks.len() {
            blocks[b].push(m.clone());
            if o.is_independent(&blocks[b]) {
                search(i + 1, terms, blocks, best, o);
            }
            blocks[b].pop();
        }
        blocks.push(vec![m.clone()]);
        if o.is_independent(&blocks[blocks.len() - 1]) {
            search(i + 1, terms, blocks, best, o);
        }
        blocks.pop();
    }
    let mut best = terms.len() + 1;
    search(0, terms, &mut Vec::new(), &mut best, o);
    if best > terms.len() {
        return Err(VerifyError::NoPartition);
    }
    Ok(best)
}
