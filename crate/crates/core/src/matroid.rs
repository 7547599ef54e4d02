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

//! Partitioning phase terms into the fewest computable blocks.
//!
//! A set A of linear functions can be produced simultaneously on the wires of
//! a reversible linear circuit over an input space of dimension d with n
//! wires iff `d − rank(A) ≤ n − |A|`. These sets form the independent sets of
//! a matroid, so a minimal partition is found by Edmonds-style augmenting
//! paths.

use std::collections::VecDeque;

use crate::gf2::{dependency_support, find_dependent, rank, Mask};
use crate::phasepoly::PhaseTerm;

/// The independence test for a given input-space dimension and wire count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub dim_v: usize,
    /// Available wires. `usize::MAX` stands for an unbounded supply.
    pub width: usize,
}

impl Oracle {
    pub fn new(dim_v: usize, width: usize) -> Self {
        assert!(dim_v <= width, "dimension {dim_v} exceeds width {width}");
        Oracle { dim_v, width }
    }

    pub fn unbounded(dim_v: usize) -> Self {
        Oracle::new(dim_v, usize::MAX)
    }

    /// `dim_v − rank ≤ width − size`, evaluated without underflow.
    #[inline]
    fn admits(&self, size: usize, rank: usize) -> bool {
        self.dim_v as u128 + size as u128 <= self.width as u128 + rank as u128
    }

    pub fn is_independent<'a>(&self, masks: impl IntoIterator<Item = &'a Mask> + Clone) -> bool {
        let size = masks.clone().into_iter().count();
        self.admits(size, rank(masks))
    }
}

pub fn is_independent(a: &[PhaseTerm], o: &Oracle) -> bool {
    o.is_independent(a.iter().map(|t| &t.mask))
}

/// An ordered list of disjoint independent blocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Partition {
    pub blocks: Vec<Vec<PhaseTerm>>,
}

impl Partition {
    pub fn new() -> Self {
        Partition::default()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &PhaseTerm> {
        self.blocks.iter().flatten()
    }

    pub fn num_elements(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn is_valid(&self, o: &Oracle) -> bool {
        self.blocks.iter().all(|b| is_independent(b, o))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    New,
    At(usize, usize),
}

/// Inserts `s` into a minimal valid partition, keeping it minimal.
///
/// Breadth-first search over the exchange graph: from an element `h` we may
/// either add `h` to a block `A` outright (ending the search), or swap `h`
/// for some `u ∈ A` when `A − u + h` stays independent. The first block that
/// accepts a head ends the search and the path is applied in place. When no
/// path exists `s` opens a new block.
pub fn partition_add(s: PhaseTerm, p: &mut Partition, o: &Oracle) {
    let nblocks = p.blocks.len();
    let mut parent: Vec<Vec<Option<Node>>> = p.blocks.iter().map(|b| vec![None; b.len()]).collect();
    let mut queue = VecDeque::from([Node::New]);

    while let Some(head) = queue.pop_front() {
        let (head_mask, head_block) = match head {
            Node::New => (&s.mask, None),
            Node::At(b, i) => (&p.blocks[b][i].mask, Some(b)),
        };
        let head_mask = head_mask.clone();
        for b in 0..nblocks {
            if head_block == Some(b) {
                continue;
            }
            let block = &p.blocks[b];
            let mut rows: Vec<&Mask> = block.iter().map(|t| &t.mask).collect();
            rows.push(&head_mask);
            let (rk, support) = dependency_support(&rows);
            if o.admits(block.len() + 1, rk) {
                apply_path(p, &parent, s, head, b);
                return;
            }
            // A + h is dependent; A + h − u is independent iff the rank slack
            // is exactly one and u lies on a circuit of A + h.
            if !o.admits(block.len(), rk) {
                continue;
            }
            for (i, mark) in parent[b].iter_mut().enumerate() {
                if mark.is_none() && support.get(i) {
                    *mark = Some(head);
                    queue.push_back(Node::At(b, i));
                }
            }
        }
    }
    p.blocks.push(vec![s]);
}

fn apply_path(
    p: &mut Partition,
    parent: &[Vec<Option<Node>>],
    s: PhaseTerm,
    head: Node,
    into: usize,
) {
    let term = |p: &Partition, node: Node| match node {
        Node::New => s.clone(),
        Node::At(b, i) => p.blocks[b][i].clone(),
    };
    let moved = term(p, head);
    p.blocks[into].push(moved);
    let mut cur = head;
    while let Node::At(b, i) = cur {
        let prev = parent[b][i].expect("path nodes have parents");
        p.blocks[b][i] = term(p, prev);
        cur = prev;
    }
}

/// Minimal partition of `terms`, built by inserting them in order.
pub fn partition_all(terms: impl IntoIterator<Item = PhaseTerm>, o: &Oracle) -> Partition {
    let mut p = Partition::new();
    for t in terms {
        partition_add(t, &mut p, o);
    }
    p
}

/// Restores validity after the input-space dimension grows by one.
///
/// Every block that is no longer independent drops its first element lying
/// in the span of the elements before it. Returns the dropped terms in block
/// order.
pub fn repair_on_dim_increase(p: &mut Partition, o_new: &Oracle) -> Vec<PhaseTerm> {
    let mut evicted = Vec::new();
    for block in &mut p.blocks {
        while !is_independent(block, o_new) {
            let masks: Vec<Mask> = block.iter().map(|t| t.mask.clone()).collect();
            let i = find_dependent(&masks).expect("an invalid block is linearly dependent");
            evicted.push(block.remove(i));
        }
    }
    p.blocks.retain(|b| !b.is_empty());
    evicted
}
