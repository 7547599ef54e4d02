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

//! The `.qc` gate-list format.
//!
//! ```text
//! .v a b c
//! .i a b
//! BEGIN
//! H c
//! tof a b c
//! END
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Circuit, Gate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

#[derive(PartialEq)]
enum Section {
    Header,
    Body,
    Done,
}

/// Parses a `.qc` file.
///
/// Wires are reordered so that the primary inputs (`.i`, in declaration
/// order) come first, followed by the remaining wires of `.v`. Without an
/// `.i` line every wire is an input.
pub fn parse_qc(text: &str) -> Result<Circuit, ParseError> {
    let mut declared: Option<Vec<String>> = None;
    let mut inputs: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut circuit: Option<Circuit> = None;
    let mut section = Section::Header;

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let head = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();

        match section {
            Section::Done => return err(line_no, format!("unexpected `{head}` after END")),
            Section::Header => match head {
                ".v" => {
                    if declared.is_some() {
                        return err(line_no, "duplicate .v line");
                    }
                    let mut seen = HashMap::new();
                    for (i, a) in args.iter().enumerate() {
                        if seen.insert(*a, i).is_some() {
                            return err(line_no, format!("wire `{a}` declared twice"));
                        }
                    }
                    declared = Some(args.iter().map(|s| s.to_string()).collect());
                }
                ".i" => {
                    if inputs.is_some() {
                        return err(line_no, "duplicate .i line");
                    }
                    let Some(vs) = &declared else {
                        return err(line_no, ".i before .v");
                    };
                    let mut list: Vec<String> = Vec::new();
                    for a in &args {
                        if !vs.iter().any(|v| v == a) {
                            return err(line_no, format!("undeclared wire `{a}`"));
                        }
                        if list.iter().any(|v| v == a) {
                            return err(line_no, format!("input `{a}` listed twice"));
                        }
                        list.push(a.to_string());
                    }
                    inputs = Some(list);
                }
                ".o" => {
                    let Some(vs) = &declared else {
                        return err(line_no, ".o before .v");
                    };
                    if let Some(a) = args.iter().find(|a| !vs.iter().any(|v| v == *a)) {
                        return err(line_no, format!("undeclared wire `{a}`"));
                    }
                }
                "BEGIN" => {
                    if !args.is_empty() {
                        return err(line_no, "BEGIN takes no arguments");
                    }
                    let Some(vs) = declared.take() else {
                        return err(line_no, "BEGIN before .v");
                    };
                    let ins = inputs.take().unwrap_or_else(|| vs.clone());
                    let mut names = ins.clone();
                    names.extend(vs.into_iter().filter(|v| !ins.contains(v)));
                    for (i, n) in names.iter().enumerate() {
                        index.insert(n.clone(), i);
                    }
                    circuit = Some(Circuit::new(names, ins.len()));
                    section = Section::Body;
                }
                other if other.starts_with('.') => {
                    return err(line_no, format!("unknown header `{other}`"))
                }
                other => return err(line_no, format!("unexpected `{other}` before BEGIN")),
            },
            Section::Body => {
                if head == "END" {
                    if !args.is_empty() {
                        return err(line_no, "END takes no arguments");
                    }
                    section = Section::Done;
                    continue;
                }
                let mut wires = Vec::with_capacity(args.len());
                for a in &args {
                    match index.get(*a) {
                        Some(&w) => wires.push(w),
                        None => return err(line_no, format!("undeclared wire `{a}`")),
                    }
                }
                for i in 0..wires.len() {
                    if wires[i + 1..].contains(&wires[i]) {
                        return err(line_no, format!("wire `{}` repeated", args[i]));
                    }
                }
                let gate =
                    parse_gate(head, &wires).ok_or_else(|| bad_gate(line_no, head, wires.len()))?;
                circuit.as_mut().expect("body follows BEGIN").push(gate);
            }
        }
    }
    match section {
        Section::Done => Ok(circuit.expect("END follows BEGIN")),
        Section::Body => err(text.lines().count(), "missing END"),
        Section::Header => err(text.lines().count().max(1), "missing BEGIN"),
    }
}

fn single(name: &str) -> Option<fn(usize) -> Gate> {
    Some(match name {
        "X" => Gate::X,
        "Y" => Gate::Y,
        "Z" => Gate::Z,
        "H" => Gate::H,
        "P" | "S" => Gate::P,
        "P*" | "S*" => Gate::Pdg,
        "T" => Gate::T,
        "T*" => Gate::Tdg,
        _ => return None,
    })
}

fn parse_gate(name: &str, wires: &[usize]) -> Option<Gate> {
    match (name, wires) {
        ("tof", [t]) => Some(Gate::X(*t)),
        ("tof", [control, target]) => Some(Gate::Cnot {
            control: *control,
            target: *target,
        }),
        ("tof", [c1, c2, target]) => Some(Gate::Toffoli {
            c1: *c1,
            c2: *c2,
            target: *target,
        }),
        (n, [w]) => single(n).map(|f| f(*w)),
        _ => None,
    }
}

fn bad_gate(line: usize, name: &str, arity: usize) -> ParseError {
    let message = if name == "tof" || single(name).is_some() {
        format!("gate `{name}` does not take {arity} wires")
    } else {
        format!("unknown gate `{name}`")
    };
    ParseError { line, message }
}

/// Serializes a circuit in canonical form: `.v`, `.i`, `BEGIN`, one gate per
/// line, `END`.
pub fn write_qc(c: &Circuit) -> String {
    let mut out = String::new();
    let name = |w: usize| c.wire_names[w].as_str();
    let join = |ws: &[String]| ws.iter().map(|s| format!(" {s}")).collect::<String>();
    let _ = writeln!(out, ".v{}", join(&c.wire_names));
    let _ = writeln!(out, ".i{}", join(&c.wire_names[..c.num_inputs]));
    out.push_str("BEGIN\n");
    for g in &c.gates {
        let _ = match *g {
            Gate::X(w) => writeln!(out, "X {}", name(w)),
            Gate::Y(w) => writeln!(out, "Y {}", name(w)),
            Gate::Z(w) => writeln!(out, "Z {}", name(w)),
            Gate::H(w) => writeln!(out, "H {}", name(w)),
            Gate::P(w) => writeln!(out, "P {}", name(w)),
            Gate::Pdg(w) => writeln!(out, "P* {}", name(w)),
            Gate::T(w) => writeln!(out, "T {}", name(w)),
            Gate::Tdg(w) => writeln!(out, "T* {}", name(w)),
            Gate::Cnot { control, target } => {
                writeln!(out, "tof {} {}", name(control), name(target))
            }
            Gate::Toffoli { c1, c2, target } => {
                writeln!(out, "tof {} {} {}", name(c1), name(c2), name(target))
            }
        };
    }
    out.push_str("END\n");
    out
}
