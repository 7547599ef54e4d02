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

//! Benchmark circuit families and a report runner.

mod generators;
mod gf2m;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use crate::ir::{expand, Circuit};
use crate::parallel::Parallelism;
use crate::tpar::{optimize, AncillaPolicy};
use crate::verify::{check_summary, check_unitary_with, DEFAULT_MAX_WIRES};

pub use generators::{ccz_fixture, gen_mct_barenco, gen_mct_nc, run_reversible, toffoli};
pub use gf2m::{
    default_modulus, degree, gen_gf_mult, is_irreducible, poly_mulmod, poly_rem, MAX_DEGREE,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("multiple-controlled Toffolis need k >= 3, got {k}")]
    TooSmall { k: usize },
    #[error("field degree {m} is outside 2..={MAX_DEGREE}")]
    Degree { m: usize },
    #[error("{modulus:#b} is not an irreducible polynomial of degree {m}")]
    Modulus { m: usize, modulus: u64 },
    #[error("unknown family `{0}`")]
    Family(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    MctBarenco,
    MctNc,
    GfMult,
    Fixture,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::MctBarenco => "mct-barenco",
            Family::MctNc => "mct-nc",
            Family::GfMult => "gf-mult",
            Family::Fixture => "fixture",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mct-barenco" | "barenco" => Ok(Family::MctBarenco),
            "mct-nc" | "nc" => Ok(Family::MctNc),
            "gf-mult" | "gf" => Ok(Family::GfMult),
            "fixture" | "ccz" => Ok(Family::Fixture),
            other => Err(BenchError::Family(other.to_string())),
        }
    }
}

/// One benchmark instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchSpec {
    pub family: Family,
    /// k for the Toffoli families, m for multipliers; unused by the fixture.
    pub size: usize,
    /// Reduction polynomial for multipliers; the default for `size` if unset.
    pub modulus: Option<u64>,
}

impl BenchSpec {
    pub fn new(family: Family, size: usize) -> Self {
        BenchSpec {
            family,
            size,
            modulus: None,
        }
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::MctBarenco => format!("barenco-{}", self.size),
            Family::MctNc => format!("nc-{}", self.size),
            Family::GfMult => format!("gf2^{}-mult", self.size),
            Family::Fixture => "ccz".to_string(),
        }
    }

    fn modulus(&self) -> Result<u64, BenchError> {
        match self.modulus {
            Some(p) => Ok(p),
            None => default_modulus(self.size),
        }
    }

    pub fn generate(&self) -> Result<Circuit, BenchError> {
        match self.family {
            Family::MctBarenco => gen_mct_barenco(self.size),
            Family::MctNc => gen_mct_nc(self.size),
            Family::GfMult => gen_gf_mult(self.size, self.modulus()?),
            Family::Fixture => Ok(ccz_fixture()),
        }
    }

    /// Checks the generated circuit's classical function.
    pub fn check_function(&self, c: &Circuit) -> Result<(), String> {
        let k = self.size;
        match self.family {
            Family::MctBarenco => generators::check_mct(c, k, 2 * k - 2),
            Family::MctNc => generators::check_mct(c, k, k),
            Family::GfMult => gf2m::check_gf_mult(c, k, self.modulus().map_err(|e| e.to_string())?),
            Family::Fixture => {
                let r = check_unitary_with(c, &toffoli_conjugated(), 3, Parallelism::Sequential)
                    .map_err(|e| e.to_string())?;
                if r.verdict.is_equivalent() {
                    Ok(())
                } else {
                    Err("fixture is not a doubly-controlled Z".into())
                }
            }
        }
    }
}

/// H · Toffoli · H on the target, which is the doubly-controlled Z.
fn toffoli_conjugated() -> Circuit {
    let mut c = toffoli();
    c.gates.insert(0, crate::Gate::H(2));
    c.push(crate::Gate::H(2));
    c
}

/// Ancilla budget as given on the command line: a count, one per wire of
/// the circuit, or unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolicySpec {
    Fixed(usize),
    PerWire,
    Unbounded,
}

impl PolicySpec {
    pub fn resolve(self, c: &Circuit) -> AncillaPolicy {
        match self {
            PolicySpec::Fixed(h) => AncillaPolicy::Fixed(h),
            PolicySpec::PerWire => AncillaPolicy::Fixed(c.num_wires()),
            PolicySpec::Unbounded => AncillaPolicy::Unbounded,
        }
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicySpec::Fixed(h) => write!(f, "{h}"),
            PolicySpec::PerWire => f.write_str("n"),
            PolicySpec::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl FromStr for PolicySpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n" => Ok(PolicySpec::PerWire),
            "unbounded" | "inf" => Ok(PolicySpec::Unbounded),
            _ => s.parse().map(PolicySpec::Fixed).map_err(|_| {
                format!("invalid ancilla budget `{s}` (expected a count, `n` or `unbounded`)")
            }),
        }
    }
}

/// One report row. Before-columns for T gates are counted on the Toffoli
/// level; CNOT and Hadamard counts come from the expanded input.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub name: String,
    pub n: usize,
    pub ancillae_policy: String,
    pub tc_before: usize,
    pub tc_after: usize,
    pub td_before: usize,
    pub td_after: usize,
    pub cnot_before: usize,
    pub cnot_after: usize,
    pub h_count: usize,
    pub verify_verdict: String,
    pub seconds: f64,
}

impl BenchRow {
    /// Whether optimization and every verification succeeded.
    pub fn ok(&self) -> bool {
        !self.verify_verdict.starts_with("error") && !self.verify_verdict.contains("different")
    }
}

pub const CSV_COLUMNS: [&str; 12] = [
    "name",
    "n",
    "ancillae_policy",
    "tc_before",
    "tc_after",
    "td_before",
    "td_after",
    "cnot_before",
    "cnot_after",
    "h_count",
    "verify_verdict",
    "seconds",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).expect("in-memory write");
        for r in &self.rows {
            w.serialize(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }

    /// The CSV columns followed by the T-count and T-depth reductions.
    pub fn to_markdown(&self) -> String {
        let mut out = format!(
            "| {} | tc_reduction | td_reduction |\n",
            CSV_COLUMNS.join(" | ")
        );
        out.push_str(&format!("|{}\n", "---|".repeat(CSV_COLUMNS.len() + 2)));
        for r in &self.rows {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {:.4} | {} | {} |\n",
                r.name,
                r.n,
                r.ancillae_policy,
                r.tc_before,
                r.tc_after,
                r.td_before,
                r.td_after,
                r.cnot_before,
                r.cnot_after,
                r.h_count,
                r.verify_verdict,
                r.seconds,
                percent(r.tc_before, r.tc_after),
                percent(r.td_before, r.td_after),
            ));
        }
        out
    }
}

fn percent(before: usize, after: usize) -> String {
    if before == 0 {
        "-".to_string()
    } else {
        format!(
            "{:.1}%",
            100.0 * (before as f64 - after as f64) / before as f64
        )
    }
}

/// Optimizes and verifies one circuit under one budget.
pub fn run_circuit(name: &str, c: &Circuit, policy: PolicySpec, par: Parallelism) -> BenchRow {
    let expanded = expand(c);
    let em = expanded.metrics();
    let before = c.metrics();
    let mut row = BenchRow {
        name: name.to_string(),
        n: c.num_wires(),
        ancillae_policy: policy.to_string(),
        tc_before: before.t_count,
        tc_after: 0,
        td_before: before.t_depth,
        td_after: 0,
        cnot_before: em.cnot_count,
        cnot_after: 0,
        h_count: em.h_count,
        verify_verdict: String::new(),
        seconds: 0.0,
    };
    let start = Instant::now();
    let result = optimize(c, policy.resolve(c));
    row.seconds = start.elapsed().as_secs_f64();
    let out = match result {
        Ok(out) => out,
        Err(e) => {
            row.verify_verdict = format!("error: {e}");
            return row;
        }
    };
    row.tc_after = out.after.t_count;
    row.td_after = out.after.t_depth;
    row.cnot_after = out.after.cnot_count;
    let summary = check_summary(&out.prepared, &out.circuit);
    row.verify_verdict = format!("summary={}", summary.verdict);
    if out.circuit.num_wires() <= DEFAULT_MAX_WIRES {
        match check_unitary_with(c, &out.circuit, DEFAULT_MAX_WIRES, par) {
            Ok(r) => row
                .verify_verdict
                .push_str(&format!(";unitary={}", r.verdict)),
            Err(e) => row.verify_verdict.push_str(&format!(";unitary=error: {e}")),
        }
    }
    row
}

/// Generates, checks, optimizes and verifies every spec under every budget.
/// Failures are recorded in the row's verdict and the run continues. Rows
/// come out in spec order, then budget order.
pub fn run_benchmarks(
    specs: &[BenchSpec],
    policies: &[PolicySpec],
    par: Parallelism,
) -> BenchReport {
    let jobs: Vec<(BenchSpec, PolicySpec)> = specs
        .iter()
        .flat_map(|s| policies.iter().map(move |p| (*s, *p)))
        .collect();
    let rows = par.map(&jobs, |(spec, policy)| {
        let failed = |msg: String| BenchRow {
            name: spec.name(),
            n: 0,
            ancillae_policy: policy.to_string(),
            tc_before: 0,
            tc_after: 0,
            td_before: 0,
            td_after: 0,
            cnot_before: 0,
            cnot_after: 0,
            h_count: 0,
            verify_verdict: format!("error: {msg}"),
            seconds: 0.0,
        };
        let c = match spec.generate() {
            Ok(c) => c,
            Err(e) => return failed(e.to_string()),
        };
        if let Err(e) = spec.check_function(&c) {
            return failed(format!("generator check failed: {e}"));
        }
        run_circuit(&spec.name(), &c, *policy, par)
    });
    BenchReport { rows }
}
