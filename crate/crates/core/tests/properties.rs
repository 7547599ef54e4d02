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

//! Property tests against independent brute-force oracles.

use proptest::prelude::*;

use num_complex::Complex64;
use tpar::gf2::{
    dependency_support, eliminate_with_ops, find_dependent, in_span, rank, replay, Mask,
    XorFunction,
};
use tpar::ir::{expand, parse_qc, write_qc};
use tpar::matroid::{
    is_independent, partition_add, partition_all, repair_on_dim_increase, Oracle, Partition,
};
use tpar::phasepoly::{simulate_cnot_t, summarize, PhaseTerm};
use tpar::synth::{extend_to_basis, linear_stage};
use tpar::verify::{check_summary, check_unitary, StateVector, Verdict};
use tpar::{optimize, AncillaPolicy, Circuit, Gate};

// ---------------------------------------------------------------- oracles

/// Every vector in the span, by enumerating all subset XORs.
fn span_by_subsets(rows: &[Mask], width: usize) -> std::collections::HashSet<Mask> {
    let mut out = std::collections::HashSet::new();
    for sel in 0..(1usize << rows.len()) {
        let mut acc = Mask::zeros(width);
        for (i, r) in rows.iter().enumerate() {
            if sel >> i & 1 == 1 {
                acc.xor_assign(r);
            }
        }
        out.insert(acc);
    }
    out
}

fn rank_by_subsets(rows: &[Mask], width: usize) -> usize {
    span_by_subsets(rows, width).len().trailing_zeros() as usize
}

fn apply_linear(gates: &[Gate], states: &[XorFunction]) -> Vec<XorFunction> {
    let mut s = states.to_vec();
    for g in gates {
        match *g {
            Gate::Cnot { control, target } => {
                let src = s[control].clone();
                s[target].xor_assign(&src);
            }
            Gate::X(w) => s[w].flip_parity(),
            other => panic!("unexpected {other:?}"),
        }
    }
    s
}

// ------------------------------------------------------------- strategies

fn mask(width: usize) -> impl Strategy<Value = Mask> {
    proptest::collection::vec(any::<bool>(), width).prop_map(|b| Mask::from_bools(&b))
}

fn nonzero_mask(width: usize) -> impl Strategy<Value = Mask> {
    mask(width).prop_filter("nonzero", |m| !m.is_zero())
}

fn masks(max_width: usize, max_len: usize) -> impl Strategy<Value = (usize, Vec<Mask>)> {
    (1..=max_width)
        .prop_flat_map(move |w| (Just(w), proptest::collection::vec(mask(w), 0..=max_len)))
}

fn xor_fn(width: usize) -> impl Strategy<Value = XorFunction> {
    (any::<bool>(), mask(width)).prop_map(|(p, m)| XorFunction::new(p, m))
}

/// A random invertible list of `n` wire states over `n` variables, built by
/// applying random CNOTs and Xs to the identity.
fn invertible(n: usize) -> impl Strategy<Value = Vec<XorFunction>> {
    let op = (0..n, 0..n, any::<bool>());
    proptest::collection::vec(op, 0..30).prop_map(move |ops| {
        let mut s: Vec<XorFunction> = (0..n).map(|i| XorFunction::var(n, i)).collect();
        for (a, b, flip) in ops {
            if flip {
                s[a].flip_parity();
            } else if a != b {
                let src = s[a].clone();
                s[b].xor_assign(&src);
            }
        }
        s
    })
}

fn gate(n: usize, with_h: bool, with_toffoli: bool) -> BoxedStrategy<Gate> {
    let w = 0..n;
    let mut choices: Vec<BoxedStrategy<Gate>> = vec![
        w.clone().prop_map(Gate::T).boxed(),
        w.clone().prop_map(Gate::Tdg).boxed(),
        w.clone().prop_map(Gate::P).boxed(),
        w.clone().prop_map(Gate::Pdg).boxed(),
        w.clone().prop_map(Gate::Z).boxed(),
        w.clone().prop_map(Gate::X).boxed(),
    ];
    if n >= 2 {
        choices.push(
            (0..n, 1..n)
                .prop_map(move |(c, d)| Gate::Cnot {
                    control: c,
                    target: (c + d) % n,
                })
                .boxed(),
        );
        choices.push(
            (0..n, 1..n)
                .prop_map(move |(c, d)| Gate::Cnot {
                    control: c,
                    target: (c + d) % n,
                })
                .boxed(),
        );
    }
    if with_h {
        choices.push(w.clone().prop_map(Gate::H).boxed());
        choices.push(w.clone().prop_map(Gate::Y).boxed());
    }
    if with_toffoli && n >= 3 {
        choices.push(
            proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 3)
                .prop_shuffle()
                .prop_map(|v| Gate::Toffoli {
                    c1: v[0],
                    c2: v[1],
                    target: v[2],
                })
                .boxed(),
        );
    }
    proptest::strategy::Union::new(choices).boxed()
}

fn circuit(
    wires: std::ops::RangeInclusive<usize>,
    len: usize,
    with_h: bool,
    with_toffoli: bool,
) -> impl Strategy<Value = Circuit> {
    wires.prop_flat_map(move |n| {
        (
            0..=n,
            proptest::collection::vec(gate(n, with_h, with_toffoli), 0..len),
        )
            .prop_map(move |(anc, gates)| {
                let mut c = Circuit::with_wires(n, n - anc.min(n.saturating_sub(1)));
                c.gates = gates;
                c
            })
    })
}

fn terms(width: usize, max: usize) -> impl Strategy<Value = Vec<PhaseTerm>> {
    proptest::collection::vec((1u8..8, nonzero_mask(width)), 0..=max)
        .prop_map(|v| v.into_iter().map(|(c, m)| PhaseTerm::new(c, m)).collect())
}

/// An oracle with `dim_v ≤ width ≤ 6` over masks of width `dim_v`.
fn oracle_and_terms(max_terms: usize) -> impl Strategy<Value = (Oracle, Vec<PhaseTerm>)> {
    (1usize..=6)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(move |(n, d)| (Just(Oracle::new(d, n)), terms(d, max_terms)))
}

// ------------------------------------------------------------------- gf2

proptest! {
    #[test]
    fn rank_matches_subset_enumeration((w, rows) in masks(8, 7)) {
        prop_assert_eq!(rank(&rows), rank_by_subsets(&rows, w));
    }

    #[test]
    fn in_span_matches_rank((w, rows) in masks(8, 6), pick in any::<proptest::sample::Index>()) {
        let f = Mask::from_indices(w, (0..w).filter(|i| pick.index(1 << w) >> i & 1 == 1));
        let mut with = rows.clone();
        with.push(f.clone());
        prop_assert_eq!(in_span(&f, &rows), rank(&with) == rank(&rows));
        prop_assert_eq!(in_span(&f, &rows), span_by_subsets(&rows, w).contains(&f));
    }

    #[test]
    fn rank_is_monotone_and_subadditive((w, a) in masks(8, 5), b in proptest::collection::vec(mask(8), 0..5)) {
        let b: Vec<Mask> = b.into_iter().map(|m| Mask::from_indices(w, m.iter_ones().filter(|&i| i < w))).collect();
        let mut ab = a.clone();
        ab.extend(b.iter().cloned());
        prop_assert!(rank(&a) <= rank(&ab));
        prop_assert!(rank(&ab) <= rank(&a) + rank(&b));
    }

    #[test]
    fn elimination_replays_to_its_basis(rows in (1usize..=8).prop_flat_map(|w| proptest::collection::vec(xor_fn(w), 1..=8))) {
        let (basis, ops) = eliminate_with_ops(&rows);
        let mut work = rows.clone();
        replay(&ops, &mut work);
        let w = rows[0].width();
        for (i, r) in work.iter().enumerate() {
            prop_assert!(!r.parity);
            if i < basis.rank() {
                prop_assert_eq!(&r.mask, &basis.rows()[i]);
            } else {
                prop_assert!(r.mask.is_zero());
            }
        }
        let masks: Vec<Mask> = rows.iter().map(|r| r.mask.clone()).collect();
        prop_assert_eq!(basis.rank(), rank_by_subsets(&masks, w));
        let p = basis.pivots();
        prop_assert!(p.windows(2).all(|x| x[0] < x[1]));
    }

    #[test]
    fn dependent_element_can_be_removed((_w, rows) in masks(5, 7)) {
        match find_dependent(&rows) {
            None => prop_assert_eq!(rank(&rows), rows.len()),
            Some(i) => {
                let mut rest = rows.clone();
                rest.remove(i);
                prop_assert_eq!(rank(&rest), rank(&rows));
                let first: Vec<Mask> = rows[..i].to_vec();
                prop_assert!(in_span(&rows[i], &first));
            }
        }
    }

    #[test]
    fn dependency_support_marks_exactly_the_non_coloops((_w, rows) in masks(5, 7)) {
        let refs: Vec<&Mask> = rows.iter().collect();
        let (r, support) = dependency_support(&refs);
        prop_assert_eq!(r, rank(&rows));
        for i in 0..rows.len() {
            let mut rest = rows.clone();
            rest.remove(i);
            prop_assert_eq!(support.get(i), rank(&rest) == r);
        }
    }
}

// -------------------------------------------------------------------- ir

proptest! {
    #[test]
    fn qc_round_trip(c in circuit(1..=5, 20, true, true)) {
        let text = write_qc(&c);
        prop_assert_eq!(parse_qc(&text).unwrap(), c);
    }

    #[test]
    fn t_depth_is_at_most_t_count(c in circuit(1..=5, 30, true, true)) {
        let m = c.metrics();
        prop_assert!(m.t_depth <= m.t_count);
    }
}

// -------------------------------------------------------------- phasepoly

fn statevector_phase(c: &Circuit, x: usize) -> (u8, usize) {
    let s = StateVector::run(c, c.num_wires(), x);
    let (j, a) = s
        .amps
        .iter()
        .enumerate()
        .find(|(_, a)| a.norm() > 0.5)
        .unwrap();
    let angle = a.arg().rem_euclid(2.0 * std::f64::consts::PI);
    let e = (angle / (std::f64::consts::PI / 4.0)).round() as u8 % 8;
    (e, j)
}

proptest! {
    #[test]
    fn simulator_matches_statevector(c in circuit(1..=5, 25, false, false)) {
        let n = c.num_wires();
        for x in 0..(1usize << n) {
            let input: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
            let (e, out) = simulate_cnot_t(&c, &input).unwrap();
            let idx = out.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| 1 << i).sum::<usize>();
            prop_assert_eq!(statevector_phase(&c, x), (e, idx));
        }
    }

    #[test]
    fn summary_agrees_with_simulation_up_to_global_phase(mut c in circuit(1..=6, 25, false, false)) {
        let n = c.num_wires();
        c.num_inputs = n;
        let s = summarize(&c).unwrap();
        let eval = |x: &Mask| s.terms.iter().filter(|(f, _)| f.dot(x)).fold(0u8, |a, (_, k)| (a + k) % 8);
        let (e0, _) = simulate_cnot_t(&c, &vec![false; n]).unwrap();
        for x in 0..(1usize << n) {
            let bits: Vec<bool> = (0..n).map(|i| x >> i & 1 == 1).collect();
            let xm = Mask::from_bools(&bits);
            let (e, out) = simulate_cnot_t(&c, &bits).unwrap();
            prop_assert_eq!((8 + e - e0) % 8, eval(&xm));
            let q: Vec<bool> = s.q.iter().map(|f| f.eval(&xm)).collect();
            prop_assert_eq!(q, out);
        }
    }

    #[test]
    fn merging_never_grows_the_term_set(c in circuit(1..=6, 40, true, false)) {
        let s = summarize(&c).unwrap();
        let phase_gates = c.gates.iter().filter(|g| g.phase_power().is_some() || matches!(g, Gate::Y(_))).count();
        prop_assert!(s.terms.len() <= phase_gates);
    }

    #[test]
    fn cancelling_cnot_pair_leaves_summary_unchanged(c in circuit(2..=5, 20, true, false), at in any::<proptest::sample::Index>(), pair in (0usize..5, 1usize..5)) {
        let n = c.num_wires();
        let control = pair.0 % n;
        let target = (control + 1 + pair.1 % (n - 1)) % n;
        let mut d = c.clone();
        let i = at.index(c.gates.len() + 1);
        let g = Gate::Cnot { control, target };
        d.gates.splice(i..i, [g, g]);
        prop_assert_eq!(summarize(&c).unwrap(), summarize(&d).unwrap());
    }
}

// ---------------------------------------------------------------- matroid

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0..(1usize << items.len()))
        .map(|s| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| s >> i & 1 == 1)
                .map(|(_, t)| t.clone())
                .collect()
        })
        .collect()
}

fn multiset(p: impl IntoIterator<Item = PhaseTerm>) -> Vec<(Mask, u8)> {
    let mut v: Vec<_> = p.into_iter().map(|t| (t.mask, t.coeff)).collect();
    v.sort();
    v
}

proptest! {
    #[test]
    fn independence_axioms_hold_exhaustively((o, ground) in oracle_and_terms(6)) {
        let family: Vec<Vec<PhaseTerm>> = subsets(&ground);
        let indep: Vec<bool> = family.iter().map(|a| is_independent(a, &o)).collect();
        prop_assert!(is_independent(&[], &o));
        let n = ground.len();
        for a in 0..(1usize << n) {
            if !indep[a] { continue; }
            // Every subset of an independent set is independent.
            let mut sub = a;
            loop {
                prop_assert!(indep[sub]);
                if sub == 0 { break; }
                sub = (sub - 1) & a;
            }
            // Exchange with every larger independent set.
            for b in 0..(1usize << n) {
                if indep[b] && b.count_ones() > a.count_ones() {
                    let extends = (0..n).any(|x| b >> x & 1 == 1 && a >> x & 1 == 0 && indep[a | 1 << x]);
                    prop_assert!(extends);
                }
            }
        }
    }

    #[test]
    fn incremental_partition_is_valid_and_complete((o, ts) in oracle_and_terms(7)) {
        let mut p = Partition::new();
        for (i, t) in ts.iter().enumerate() {
            partition_add(t.clone(), &mut p, &o);
            prop_assert!(p.is_valid(&o));
            prop_assert_eq!(multiset(p.elements().cloned()), multiset(ts[..=i].iter().cloned()));
        }
    }

    #[test]
    fn augmenting_leaves_untouched_blocks_alone((o, ts) in oracle_and_terms(7), extra in (1u8..8, any::<proptest::sample::Index>())) {
        let p = partition_all(ts.clone(), &o);
        let d = o.dim_v;
        let m = Mask::from_indices(d, (0..d).filter(|i| (extra.1.index((1 << d) - 1) + 1) >> i & 1 == 1));
        let mut q = p.clone();
        partition_add(PhaseTerm::new(extra.0, m), &mut q, &o);
        prop_assert!(q.is_valid(&o));
        prop_assert!(q.len() <= p.len() + 1);
        prop_assert!(q.blocks.len() >= p.blocks.len());
    }

    #[test]
    fn repair_restores_validity((o, ts) in oracle_and_terms(7)) {
        prop_assume!(o.dim_v < o.width);
        let mut p = partition_all(ts.iter().map(|t| PhaseTerm::new(t.coeff, t.mask.widened(o.dim_v + 1))), &o);
        let before = multiset(p.elements().cloned());
        let o_new = Oracle::new(o.dim_v + 1, o.width);
        let evicted = repair_on_dim_increase(&mut p, &o_new);
        prop_assert!(p.is_valid(&o_new));
        prop_assert!(evicted.len() <= before.len());
        let mut after = multiset(p.elements().cloned());
        after.extend(multiset(evicted));
        after.sort();
        prop_assert_eq!(after, before);
    }
}

// ------------------------------------------------------------------ synth

proptest! {
    #[test]
    fn linear_stage_maps_from_to_to((from, to) in (1usize..=8).prop_flat_map(|n| (invertible(n), invertible(n)))) {
        let gates = linear_stage(&from, &to).unwrap();
        prop_assert_eq!(apply_linear(&gates, &from), to.clone());
        // Forward then back is the identity on states.
        let back = linear_stage(&to, &from).unwrap();
        prop_assert_eq!(apply_linear(&back, &to), from);
    }

    #[test]
    fn extension_contains_the_block_and_keeps_rank((o, ts) in oracle_and_terms(7)) {
        let d = o.dim_v;
        let mut q_in: Vec<XorFunction> = (0..d).map(|i| XorFunction::var(d, i)).collect();
        q_in.resize(o.width, XorFunction::zero(d));
        for block in partition_all(ts, &o).blocks {
            let ext = extend_to_basis(&block, &q_in, o.width).unwrap();
            prop_assert_eq!(ext.len(), o.width);
            for (t, e) in block.iter().zip(&ext) {
                prop_assert_eq!(&t.mask, &e.mask);
            }
            let em: Vec<Mask> = ext.iter().map(|e| e.mask.clone()).collect();
            let qm: Vec<Mask> = q_in.iter().map(|e| e.mask.clone()).collect();
            prop_assert_eq!(rank(&em), rank(&qm));
        }
    }
}

// ------------------------------------------------------- tpar and verify

fn small_circuit() -> impl Strategy<Value = Circuit> {
    circuit(1..=4, 24, true, true).prop_filter("at most 3 hadamards", |c| {
        expand(c)
            .gates
            .iter()
            .filter(|g| matches!(g, Gate::H(_)))
            .count()
            <= 3
            && c.gates
                .iter()
                .filter(|g| matches!(g, Gate::Toffoli { .. }))
                .count()
                <= 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn optimization_preserves_semantics(c in small_circuit(), h in 0usize..3) {
        for policy in [AncillaPolicy::Fixed(h), AncillaPolicy::Unbounded] {
            let out = optimize(&c, policy).unwrap();
            let s = check_summary(&out.prepared, &out.circuit);
            prop_assert_eq!(s.verdict, Verdict::Equal, "{:?}", s);
            prop_assume!(out.circuit.num_wires() <= 10);
            let u = check_unitary(&c, &out.circuit, 10).unwrap();
            prop_assert!(u.verdict.is_equivalent(), "{:?}\n{}", u, out.circuit);
            prop_assert!(out.after.t_count <= c.metrics().t_count);
        }
    }

    #[test]
    fn more_ancillae_never_deepen(c in small_circuit()) {
        let mut last = usize::MAX;
        for h in 0..3 {
            let d = optimize(&c, AncillaPolicy::Fixed(h)).unwrap().after.t_depth;
            prop_assert!(d <= last);
            last = d;
        }
        let d = optimize(&c, AncillaPolicy::Unbounded).unwrap().after.t_depth;
        prop_assert!(d <= last);
    }

    #[test]
    fn summary_equality_implies_unitary_equality(a in small_circuit(), b in small_circuit()) {
        prop_assume!(a.num_wires() == b.num_wires() && a.num_inputs == b.num_inputs);
        if check_summary(&a, &b).verdict == Verdict::Equal {
            prop_assert!(check_unitary(&a, &b, 10).unwrap().verdict.is_equivalent());
        }
    }

    #[test]
    fn unitary_check_is_reflexive_and_symmetric(a in small_circuit(), b in small_circuit()) {
        prop_assert!(check_unitary(&a, &a, 10).unwrap().verdict.is_equivalent());
        prop_assume!(a.num_inputs == b.num_inputs);
        let ab = check_unitary(&a, &b, 10).unwrap().verdict.is_equivalent();
        let ba = check_unitary(&b, &a, 10).unwrap().verdict.is_equivalent();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn optimization_is_deterministic(c in small_circuit()) {
        let a = optimize(&c, AncillaPolicy::Fixed(1)).unwrap();
        let b = optimize(&c, AncillaPolicy::Fixed(1)).unwrap();
        prop_assert_eq!(write_qc(&a.circuit), write_qc(&b.circuit));
    }
}

#[test]
fn statevector_constants_are_unit_phases() {
    let mut c = Circuit::with_wires(1, 1);
    c.extend([Gate::X(0), Gate::T(0)]);
    let s = StateVector::run(&c, 1, 0);
    assert!((s.amps[1] - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-12);
}

// ------------------------------------------------------------------ bench

/// Schoolbook carry-less product followed by long division.
fn clmul_mod(a: u64, b: u64, p: u64, m: usize) -> u64 {
    let mut prod = 0u64;
    for i in 0..m {
        if a >> i & 1 == 1 {
            prod ^= b << i;
        }
    }
    for s in (m..2 * m).rev() {
        if prod >> s & 1 == 1 {
            prod ^= p << (s - m);
        }
    }
    prod
}

proptest! {
    #[test]
    fn multiplier_matches_carry_less_product(m in 2usize..=8, a in any::<u64>(), b in any::<u64>()) {
        use tpar::bench::{default_modulus, gen_gf_mult, run_reversible};
        let p = default_modulus(m).unwrap();
        let c = gen_gf_mult(m, p).unwrap();
        let full = (1u64 << m) - 1;
        let (a, b) = (a & full, b & full);
        let out = run_reversible(&c, a | b << m).unwrap();
        prop_assert_eq!(out & full, a);
        prop_assert_eq!(out >> m & full, b);
        prop_assert_eq!(out >> (2 * m), clmul_mod(a, b, p, m));
    }

    #[test]
    fn toffoli_ladders_compute_the_conjunction(k in 3usize..=6, x in any::<u64>()) {
        use tpar::bench::{gen_mct_barenco, gen_mct_nc, run_reversible};
        // Barenco borrows its ancillae in any state; the other ladder needs them clean.
        for (c, dirty) in [(gen_mct_barenco(k).unwrap(), true), (gen_mct_nc(k).unwrap(), false)] {
            let t = c.wire_names.iter().position(|w| w == "t").unwrap();
            let ctl: u64 = (1 << k) - 1;
            let all: u64 = (1 << c.num_wires()) - 1;
            let input = if dirty { x & all } else { (x & ctl) | (x >> 40 & 1) << t };
            let expect = input ^ (((input & ctl == ctl) as u64) << t);
            prop_assert_eq!(run_reversible(&c, input).unwrap(), expect);
        }
    }
}
