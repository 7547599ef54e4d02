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

//! GF(2^m) multipliers.
//!
//! Polynomials over F2 are packed into words, bit `i` holding the
//! coefficient of x^i.

use crate::gf2::XorFunction;
use crate::ir::{Circuit, Gate};
use crate::synth::linear_stage;

use super::BenchError;

/// Largest supported field degree; three registers must fit in a word.
pub const MAX_DEGREE: usize = 20;

pub fn degree(p: u64) -> Option<usize> {
    (p != 0).then(|| 63 - p.leading_zeros() as usize)
}

/// Remainder of `a` divided by `b`.
pub fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = degree(b).expect("division by zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// `a · b mod p`.
pub fn poly_mulmod(a: u64, b: u64, p: u64) -> u64 {
    let m = degree(p).expect("nonzero modulus");
    let mut acc = 0u64;
    let mut a = poly_rem(a, p);
    for i in 0..m {
        if (b >> i) & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= p;
        }
    }
    acc
}

/// Irreducibility by trial division.
pub fn is_irreducible(p: u64) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (2u64..(1u64 << (d / 2 + 1))).all(|q| poly_rem(p, q) != 0)
}

/// The conventional reduction polynomial for degree `m`: a fixed table for
/// small degrees, otherwise the least irreducible trinomial, then the least
/// irreducible pentanomial.
pub fn default_modulus(m: usize) -> Result<u64, BenchError> {
    if !(2..=MAX_DEGREE).contains(&m) {
        return Err(BenchError::Degree { m });
    }
    let table: u64 = match m {
        2 => 0b111,
        3 => 0b1011,
        4 => 0b1_0011,
        5 => 0b10_0101,
        6 => 0b100_0011,
        7 => 0b1000_0011,
        8 => 0b1_0001_1011,
        _ => 0,
    };
    if table != 0 {
        return Ok(table);
    }
    let top = (1u64 << m) | 1;
    let trinomials = (1..m).map(|k| top | (1 << k));
    let pentanomials = (1u64 << 1..1u64 << m)
        .filter(|mid| mid & 1 == 0 && mid.count_ones() == 3)
        .map(|mid| top | mid);
    trinomials
        .chain(pentanomials)
        .find(|p| is_irreducible(*p))
        .ok_or(BenchError::Degree { m })
}

fn tof(c1: usize, c2: usize, target: usize) -> Gate {
    Gate::Toffoli { c1, c2, target }
}

/// Emits the partial products grouped by target register.
///
/// Within the stage the first Toffoli of every multi-Toffoli group comes
/// first, then the middle ones, then groups of one, then the last ones, so
/// the Hadamard pairs around each target cancel and all targets are open at
/// the same time.
fn emit_stage(c: &mut Circuit, groups: &[Vec<Gate>]) {
    let multi = || groups.iter().filter(|g| g.len() > 1);
    c.extend(multi().map(|g| g[0]));
    c.extend(multi().flat_map(|g| g[1..g.len() - 1].iter().copied()));
    c.extend(groups.iter().filter(|g| g.len() == 1).map(|g| g[0]));
    c.extend(multi().map(|g| g[g.len() - 1]));
}

/// Multiplier for GF(2^m) = F2[x]/(modulus) with m² Toffolis.
///
/// Wires `a0..a(m-1)` and `b0..b(m-1)` hold the operands; `c0..c(m-1)`
/// start in |0⟩ and receive the product. The high partial products are
/// accumulated first and reduced in place by a CNOT network, then the low
/// partial products are added on top.
pub fn gen_gf_mult(m: usize, modulus: u64) -> Result<Circuit, BenchError> {
    if !(2..=MAX_DEGREE).contains(&m) {
        return Err(BenchError::Degree { m });
    }
    if degree(modulus) != Some(m) || !is_irreducible(modulus) {
        return Err(BenchError::Modulus { m, modulus });
    }
    let a = |i: usize| i;
    let b = |j: usize| m + j;
    let cr = |s: usize| 2 * m + s;
    let mut names: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
    names.extend((0..m).map(|j| format!("b{j}")));
    names.extend((0..m).map(|s| format!("c{s}")));
    let mut c = Circuit::new(names, 2 * m);

    let products = |s: usize, target: usize| -> Vec<Gate> {
        (0..m)
            .filter(|&i| s >= i && s - i < m)
            .map(|i| tof(a(i), b(s - i), cr(target)))
            .collect()
    };

    let high: Vec<Vec<Gate>> = (m..2 * m - 1).map(|s| products(s, s - m)).collect();
    emit_stage(&mut c, &high);

    // Column r of the reduction map is x^(m+r) mod p; the spare column
    // acts on c(m-1), which is still zero, and only makes the map invertible.
    let mut columns = Vec::with_capacity(m);
    let mut v = modulus ^ (1 << m);
    for _ in 0..m - 1 {
        columns.push(v);
        v <<= 1;
        if (v >> m) & 1 == 1 {
            v ^= modulus;
        }
    }
    let spare = (0..m)
        .map(|i| 1u64 << i)
        .find(|e| {
            let mut cols: Vec<u64> = columns.clone();
            cols.push(*e);
            full_rank(&cols, m)
        })
        .expect("high powers are independent modulo an irreducible polynomial");
    columns.push(spare);
    let from: Vec<XorFunction> = (0..m).map(|r| XorFunction::var(m, r)).collect();
    let to: Vec<XorFunction> = (0..m)
        .map(|row| {
            XorFunction::new(
                false,
                crate::gf2::Mask::from_indices(
                    m,
                    (0..m).filter(|&col| (columns[col] >> row) & 1 == 1),
                ),
            )
        })
        .collect();
    let reduction = linear_stage(&from, &to).expect("reduction map is invertible");
    c.extend(reduction.iter().map(|g| g.remap(cr)));

    let low: Vec<Vec<Gate>> = (0..m).map(|s| products(s, s)).collect();
    emit_stage(&mut c, &low);
    debug_assert_eq!(
        c.gates
            .iter()
            .filter(|g| matches!(g, Gate::Toffoli { .. }))
            .count(),
        m * m
    );
    Ok(c)
}

fn full_rank(cols: &[u64], m: usize) -> bool {
    let masks: Vec<crate::gf2::Mask> = cols
        .iter()
        .map(|c| crate::gf2::Mask::from_indices(m, (0..m).filter(|i| (c >> i) & 1 == 1)))
        .collect();
    crate::gf2::rank(&masks) == cols.len()
}

/// Checks the multiplier against field multiplication on every operand
/// pair.
pub(crate) fn check_gf_mult(c: &Circuit, m: usize, modulus: u64) -> Result<(), String> {
    if 2 * m > 20 {
        return Err(format!("degree {m} is too large to check exhaustively"));
    }
    let mask = (1u64 << m) - 1;
    for x in 0..(1u64 << (2 * m)) {
        let (av, bv) = (x & mask, x >> m);
        let y = super::run_reversible(c, x).ok_or("circuit is not classical")?;
        let expect = x | (poly_mulmod(av, bv, modulus) << (2 * m));
        if y != expect {
            return Err(format!(
                "a={av:#b} b={bv:#b} gives {y:#b}, expected {expect:#b}"
            ));
        }
    }
    Ok(())
}
