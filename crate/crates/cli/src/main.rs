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

//! `tpar`: optimize `.qc` circuits for T-count and T-depth, or run the
//! built-in benchmark families.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tpar::bench::{run_benchmarks, BenchSpec, Family, PolicySpec};
use tpar::ir::{expand, parse_qc, write_qc, Gate};
use tpar::tpar::prepare;
use tpar::verify::{check_summary, check_unitary_with, DEFAULT_MAX_WIRES};
use tpar::{optimize_with, Metrics, OptimizeOptions, Parallelism};

#[derive(Parser)]
#[command(
    name = "tpar",
    version,
    about = "Reduce T-count and T-depth of Clifford+T circuits",
    args_conflicts_with_subcommands = true,
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Generate, optimize and verify benchmark circuits and print a report.
    Bench(BenchArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Input `.qc` file, or `-` for standard input.
    input: Option<String>,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Ancilla budget: a count, `n` for one per wire, or `unbounded`.
    #[arg(long, default_value = "0")]
    ancillae: PolicySpec,
    /// Verification mode. Defaults to summary, plus unitary when the
    /// output wires and path variables number at most 10.
    #[arg(long, value_enum)]
    verify: Option<VerifyMode>,
    /// Only expand Toffolis into Clifford+T; do not optimize.
    #[arg(long)]
    expand: bool,
    /// Print metrics and verdicts as JSON on standard error.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyMode {
    Summary,
    Unitary,
    Both,
    None,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Markdown,
}

#[derive(Args)]
struct BenchArgs {
    /// Families: mct-barenco, mct-nc, gf-mult, fixture (comma separated).
    #[arg(long, value_delimiter = ',', required = true)]
    family: Vec<Family>,
    /// Control counts for the Toffoli families, e.g. `3..10` or `3,5,7`.
    #[arg(long, default_value = "3..10")]
    k: String,
    /// Field degrees for the multipliers, e.g. `2..8`.
    #[arg(long, default_value = "2..8")]
    m: String,
    /// Reduction polynomial for the multipliers as a bit mask (`0b10011`,
    /// `0x13` or decimal); the default depends on m.
    #[arg(long, value_parser = parse_int)]
    modulus: Option<u64>,
    /// Ancilla budgets to sweep.
    #[arg(long, value_delimiter = ',', default_value = "0,n,unbounded")]
    ancillae: Vec<PolicySpec>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = Parallelism::default())]
    parallelism: Parallelism,
}

enum Failure {
    Usage(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn parse_int(s: &str) -> Result<u64, String> {
    let (digits, radix) = if let Some(rest) = s.strip_prefix("0b") {
        (rest, 2)
    } else if let Some(rest) = s.strip_prefix("0x") {
        (rest, 16)
    } else {
        (s, 10)
    };
    u64::from_str_radix(digits, radix).map_err(|e| format!("`{s}`: {e}"))
}

/// `a..b` and `a..=b` are inclusive; otherwise a comma-separated list.
fn parse_sizes(s: &str) -> anyhow::Result<Vec<usize>> {
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let (lo, hi): (usize, usize) = (lo.trim().parse()?, hi.trim().parse()?);
        if lo > hi {
            bail!("empty range `{s}`");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .with_context(|| format!("invalid size `{x}`"))
        })
        .collect()
}

fn read_input(input: &str) -> anyhow::Result<(String, String)> {
    if input == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .context("reading standard input")?;
        Ok(("<stdin>".to_string(), text))
    } else {
        let text = fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        Ok((input.to_string(), text))
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing standard output"),
    }
}

#[derive(Serialize)]
struct Stats<'a> {
    input: &'a str,
    ancillae: String,
    before: Metrics,
    after: Metrics,
    verification: Verification,
}

#[derive(Default, Serialize)]
struct Verification {
    #[serde(skip_serializing_if = "Option::is_none")]
    summary: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unitary: Option<String>,
}

fn run(args: RunArgs) -> Result<(), Failure> {
    let input = args.input.as_deref().unwrap_or("-");
    let (name, text) = read_input(input)?;
    let circuit = parse_qc(&text).map_err(|e| anyhow!("{name}:{}: {}", e.line, e.message))?;
    circuit.validate().map_err(|e| anyhow!("{name}: {e}"))?;

    let policy = args.ancillae.resolve(&circuit);
    let (output, prepared) = if args.expand {
        (expand(&circuit), None)
    } else {
        let mut opts = OptimizeOptions::new(policy);
        opts.parallelism = Parallelism::Sequential;
        let out = optimize_with(&circuit, &opts).map_err(|e| anyhow!("{name}: {e}"))?;
        (out.circuit, Some(out.prepared))
    };
    write_output(args.output.as_ref(), &write_qc(&output))?;

    let path_vars = prepare(&circuit)
        .gates
        .iter()
        .filter(|g| matches!(g, Gate::H(_)))
        .count();
    let small = output.num_wires() + path_vars <= DEFAULT_MAX_WIRES;
    let (want_summary, want_unitary) = match args.verify {
        Some(VerifyMode::Summary) => (true, false),
        Some(VerifyMode::Unitary) => (false, true),
        Some(VerifyMode::Both) => (true, true),
        Some(VerifyMode::None) => (false, false),
        None => (true, small),
    };

    let mut verification = Verification::default();
    let mut failures = Vec::new();
    if want_summary {
        // Expansion alone does not change the summary, so only the
        // optimized circuit is compared.
        if let Some(prepared) = &prepared {
            let r = check_summary(prepared, &output);
            if !r.verdict.is_equivalent() {
                failures.push(format!(
                    "summary check: {}{}",
                    r.verdict,
                    r.note.map(|n| format!(" ({n})")).unwrap_or_default()
                ));
            }
            verification.summary = Some(r.verdict.to_string());
        }
    }
    if want_unitary {
        let r = check_unitary_with(
            &circuit,
            &output,
            DEFAULT_MAX_WIRES,
            Parallelism::Sequential,
        )
        .map_err(|e| anyhow!("{name}: unitary check: {e}"))?;
        if !r.verdict.is_equivalent() {
            failures.push(format!("unitary check: {}", r.verdict));
        }
        verification.unitary = Some(r.verdict.to_string());
    }

    if args.stats {
        let stats = Stats {
            input: &name,
            ancillae: args.ancillae.to_string(),
            before: circuit.metrics(),
            after: output.metrics(),
            verification,
        };
        let json = serde_json::to_string_pretty(&stats).expect("stats serialize");
        eprintln!("{json}");
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{name}: {}",
            failures.join("; ")
        )))
    }
}

fn bench(args: BenchArgs) -> Result<(), Failure> {
    let ks = parse_sizes(&args.k).context("--k")?;
    let ms = parse_sizes(&args.m).context("--m")?;
    let mut specs = Vec::new();
    for family in &args.family {
        match family {
            Family::MctBarenco | Family::MctNc => {
                specs.extend(ks.iter().map(|&k| BenchSpec::new(*family, k)))
            }
            Family::GfMult => specs.extend(ms.iter().map(|&m| BenchSpec {
                modulus: args.modulus,
                ..BenchSpec::new(Family::GfMult, m)
            })),
            Family::Fixture => specs.push(BenchSpec::new(Family::Fixture, 0)),
        }
    }
    let report = run_benchmarks(&specs, &args.ancillae, args.parallelism);
    let text = match args.format {
        Format::Csv => report.to_csv(),
        Format::Markdown => report.to_markdown(),
    };
    write_output(args.output.as_ref(), &text)?;
    let failed: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.ok())
        .map(|r| format!("{} [{}]: {}", r.name, r.ancillae_policy, r.verify_verdict))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(failed.join("\n")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Bench(args)) => bench(args),
        None => run(cli.run),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("tpar: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("tpar: {e:#}");
            ExitCode::from(2)
        }
    }
}
