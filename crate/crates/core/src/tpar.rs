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

//! The optimization driver.
//!
//! The circuit is cut at its Hadamard gates. Before each Hadamard, every
//! pending phase term whose function is available on the wires joins the
//! matroid partition; blocks holding a term that the Hadamard would make
//! unavailable are synthesized, one layer of T gates each. Whatever remains
//! after the last Hadamard is synthesized against the final wire states.

use std::fmt;
use std::str::FromStr;

use crate::gf2::{rank, XorFunction};
use crate::ir::{cancel_hadamard_pairs, expand, Circuit, Gate, Metrics};
use crate::matroid::{partition_add, partition_all, repair_on_dim_increase, Oracle, Partition};
use crate::phasepoly::{summarize, CircuitSummary, PhaseTerm, SummaryError};
use crate::synth::{extend_to_basis, linear_stage, phase_stage, SynthError};
use crate::Parallelism;

/// How many extra |0⟩ wires the optimizer may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AncillaPolicy {
    Fixed(usize),
    Unbounded,
}

impl fmt::Display for AncillaPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AncillaPolicy::Fixed(h) => write!(f, "{h}"),
            AncillaPolicy::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl FromStr for AncillaPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "unbounded" | "inf" => Ok(AncillaPolicy::Unbounded),
            _ => s
                .parse()
                .map(AncillaPolicy::Fixed)
                .map_err(|_| format!("invalid ancilla count `{s}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OptimizeOptions {
    pub policy: AncillaPolicy,
    /// Partition odd and even coefficients separately.
    pub split_even_odd: bool,
    /// How the smaller budgets of a fixed policy are tried.
    pub parallelism: Parallelism,
}

impl OptimizeOptions {
    pub fn new(policy: AncillaPolicy) -> Self {
        OptimizeOptions {
            policy,
            split_even_odd: false,
            parallelism: Parallelism::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OptimizeError {
    #[error("invalid circuit: {0}")]
    Circuit(#[from] crate::ir::CircuitError),
    #[error(transparent)]
    Summary(#[from] SummaryError),
    #[error("synthesis failed: {0}")]
    Synth(#[from] SynthError),
    #[error("{0} phase terms were never synthesized")]
    Unplaced(usize),
}

/// The result of an optimization run.
#[derive(Clone, Debug)]
pub struct Optimized {
    pub circuit: Circuit,
    /// The input after Toffoli expansion and Hadamard cancellation; the
    /// output has the same summary as this circuit.
    pub prepared: Circuit,
    pub before: Metrics,
    pub after: Metrics,
}

/// Expands Toffolis and cancels adjacent Hadamard pairs.
pub fn prepare(c: &Circuit) -> Circuit {
    cancel_hadamard_pairs(&expand(c))
}

/// Wire count the independence oracle works with; `usize::MAX` when
/// unbounded.
pub fn plan_ancillae(summary: &CircuitSummary, policy: AncillaPolicy) -> usize {
    match policy {
        AncillaPolicy::Fixed(h) => summary.n + h,
        AncillaPolicy::Unbounded => usize::MAX,
    }
}

pub fn optimize(c: &Circuit, policy: AncillaPolicy) -> Result<Optimized, OptimizeError> {
    optimize_with(c, &OptimizeOptions::new(policy))
}

pub fn optimize_with(c: &Circuit, opts: &OptimizeOptions) -> Result<Optimized, OptimizeError> {
    c.validate()?;
    let prepared = prepare(c);
    let summary = summarize(&prepared)?;
    let circuit = match opts.policy {
        AncillaPolicy::Unbounded => Driver::new(&summary, opts).run()?,
        // The partitioning is greedy, so a larger budget can come out deeper
        // than a smaller one. Every budget up to h is tried and the
        // shallowest result kept, earliest first on ties.
        AncillaPolicy::Fixed(h) => {
            let runs = opts.parallelism.map_range(h + 1, |b| {
                let o = OptimizeOptions {
                    policy: AncillaPolicy::Fixed(b),
                    ..*opts
                };
                Driver::new(&summary, &o).run()
            });
            let mut best: Option<(usize, Circuit)> = None;
            for run in runs {
                let c = run?;
                let d = crate::ir::t_depth(&c);
                if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                    best = Some((d, c));
                }
            }
            best.expect("at least one budget").1
        }
    };
    let circuit = name_wires(c, circuit);
    Ok(Optimized {
        before: c.metrics(),
        after: circuit.metrics(),
        circuit,
        prepared,
    })
}

fn name_wires(original: &Circuit, mut out: Circuit) -> Circuit {
    let mut names = original.wire_names.clone();
    let mut next = 0;
    while names.len() < out.num_wires() {
        let candidate = format!("anc{next}");
        next += 1;
        if !names.contains(&candidate) {
            names.push(candidate);
        }
    }
    out.wire_names = names;
    out
}

fn pad(states: &[XorFunction], wires: usize) -> Vec<XorFunction> {
    let width = states.first().map(|s| s.width()).unwrap_or(0);
    let mut v = states.to_vec();
    v.resize(wires, XorFunction::zero(width));
    v
}

struct Driver<'a> {
    summary: &'a CircuitSummary,
    oracle_width: usize,
    unbounded: bool,
    split: bool,
    /// Current wire states of the circuit being emitted.
    current: Vec<XorFunction>,
    gates: Vec<Gate>,
    /// Terms not yet partitioned, with their position in the summary.
    pending: Vec<(usize, PhaseTerm)>,
    /// One partition, or odd and even partitions when split.
    partitions: Vec<Partition>,
    /// Summary position of every partitioned term, by mask.
    order: indexmap::IndexMap<crate::gf2::Mask, usize>,
}

impl<'a> Driver<'a> {
    fn new(summary: &'a CircuitSummary, opts: &OptimizeOptions) -> Self {
        let oracle_width = plan_ancillae(summary, opts.policy);
        let wires = match opts.policy {
            AncillaPolicy::Fixed(h) => summary.n + h,
            AncillaPolicy::Unbounded => summary.n,
        };
        let current = pad(
            &CircuitSummary::initial_states(summary.n, summary.m, summary.width()),
            wires,
        );
        let pending: Vec<(usize, PhaseTerm)> =
            summary.phase_terms().into_iter().enumerate().collect();
        let order = pending.iter().map(|(i, t)| (t.mask.clone(), *i)).collect();
        Driver {
            summary,
            oracle_width,
            unbounded: opts.policy == AncillaPolicy::Unbounded,
            split: opts.split_even_odd,
            current,
            gates: Vec::new(),
            pending,
            partitions: vec![Partition::new(); if opts.split_even_odd { 2 } else { 1 }],
            order,
        }
    }

    fn oracle(&self, dim: usize) -> Oracle {
        Oracle::new(dim, self.oracle_width)
    }

    fn class(&self, t: &PhaseTerm) -> usize {
        if self.split && !t.is_odd() {
            1
        } else {
            0
        }
    }

    fn run(mut self) -> Result<Circuit, OptimizeError> {
        let s = self.summary;
        for i in 0..=s.k {
            let q_in: &[XorFunction] = if i < s.k { &s.events[i].q_in } else { &s.q };
            let dim = rank(q_in.iter().map(|q| &q.mask));
            let span = crate::gf2::Basis::from_rows(s.width(), q_in.iter().map(|q| &q.mask));

            // Terms that are computable now join the partition.
            let oracle = self.oracle(dim);
            let (ready, rest): (Vec<_>, Vec<_>) = std::mem::take(&mut self.pending)
                .into_iter()
                .partition(|(_, t)| span.contains(&t.mask));
            self.pending = rest;
            for (_, t) in ready {
                let c = self.class(&t);
                partition_add(t, &mut self.partitions[c], &oracle);
            }

            // Flush blocks that the Hadamard would make uncomputable.
            let q_out = (i < s.k).then(|| &s.events[i].q_out);
            let out_span =
                q_out.map(|q| crate::gf2::Basis::from_rows(s.width(), q.iter().map(|f| &f.mask)));
            for c in 0..self.partitions.len() {
                let (flushed, kept) = self.select_flush(c, out_span.as_ref(), &oracle);
                self.partitions[c].blocks = kept;
                for block in flushed {
                    self.flush(&block, q_in, dim)?;
                }
            }

            let Some(q_out) = q_out else { break };
            let dim_out = rank(q_out.iter().map(|q| &q.mask));
            if dim_out > dim {
                let oracle = self.oracle(dim_out);
                for c in 0..self.partitions.len() {
                    for t in repair_on_dim_increase(&mut self.partitions[c], &oracle) {
                        let idx = self.order[&t.mask];
                        let at = self.pending.partition_point(|(j, _)| *j < idx);
                        self.pending.insert(at, (idx, t));
                    }
                }
            }

            // Restore the input states and apply the Hadamard.
            let target = pad(q_in, self.current.len());
            self.gates.extend(linear_stage(&self.current, &target)?);
            let e = &s.events[i];
            self.gates.push(Gate::H(e.target));
            self.current = pad(&e.q_out, self.current.len());
        }

        if !self.pending.is_empty() || self.partitions.iter().any(|p| !p.is_empty()) {
            return Err(OptimizeError::Unplaced(
                self.pending.len()
                    + self
                        .partitions
                        .iter()
                        .map(|p| p.num_elements())
                        .sum::<usize>(),
            ));
        }
        let target = pad(&s.q, self.current.len());
        self.gates.extend(linear_stage(&self.current, &target)?);

        let used = self
            .gates
            .iter()
            .flat_map(|g| g.wires())
            .max()
            .map_or(0, |w| w + 1)
            .max(s.n);
        let mut out = Circuit::with_wires(used, s.m);
        out.gates = self.gates;
        Ok(out)
    }

    /// Splits partition `c` into blocks to synthesize now and blocks to keep.
    ///
    /// Without a following Hadamard everything is synthesized. Otherwise the
    /// terms that the Hadamard makes uncomputable are partitioned on their
    /// own, the other terms of their blocks fill those blocks where they fit,
    /// and the remainder is returned to the kept blocks.
    fn select_flush(
        &mut self,
        c: usize,
        out_span: Option<&crate::gf2::Basis>,
        oracle: &Oracle,
    ) -> (Vec<Vec<PhaseTerm>>, Vec<Vec<PhaseTerm>>) {
        let blocks = std::mem::take(&mut self.partitions[c].blocks);
        let Some(span) = out_span else {
            return (blocks, Vec::new());
        };
        let (leaving, staying): (Vec<_>, Vec<_>) = blocks
            .into_iter()
            .partition(|b| b.iter().any(|t| !span.contains(&t.mask)));
        if leaving.is_empty() {
            return (leaving, staying);
        }
        let (must, optional): (Vec<PhaseTerm>, Vec<PhaseTerm>) = leaving
            .into_iter()
            .flatten()
            .partition(|t| !span.contains(&t.mask));
        let mut flushed = partition_all(must, oracle).blocks;
        let mut kept = Partition { blocks: staying };
        for t in optional {
            let slot = flushed.iter_mut().find(|b| {
                let masks = b.iter().map(|x| &x.mask).chain(std::iter::once(&t.mask));
                oracle.is_independent(masks)
            });
            match slot {
                Some(b) => b.push(t),
                None => partition_add(t, &mut kept, oracle),
            }
        }
        (flushed, kept.blocks)
    }

    /// Emits one block: a linear stage into a basis holding the block's
    /// functions on its first wires, then the phase gates. The wires are
    /// left in that basis.
    fn flush(
        &mut self,
        block: &[PhaseTerm],
        q_in: &[XorFunction],
        dim: usize,
    ) -> Result<(), OptimizeError> {
        if self.unbounded {
            let r = rank(block.iter().map(|t| &t.mask));
            let needed = block.len() + dim - r;
            if needed > self.current.len() {
                let width = self.summary.width();
                self.current.resize(needed, XorFunction::zero(width));
            }
        }
        let wires = self.current.len();
        let basis = extend_to_basis(block, &pad(q_in, wires), wires)?;
        self.gates.extend(linear_stage(&self.current, &basis)?);
        let placement: Vec<usize> = (0..block.len()).collect();
        self.gates.extend(phase_stage(block, &placement));
        self.current = basis;
        Ok(())
    }
}
