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

//! Bit-packed linear algebra over F2.
//!
//! Every oracle in the optimizer (span membership of phase terms, the
//! matroid independence test, CNOT synthesis) bottoms out in the routines
//! here. Rows are packed into `u64` words and reduced with word-wide XOR.

use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

#[inline]
fn words_for(width: usize) -> usize {
    width.div_ceil(WORD)
}

/// A row vector over F2 of fixed width.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask {
    width: usize,
    words: SmallVec<[u64; 2]>,
}

impl Mask {
    pub fn zeros(width: usize) -> Self {
        Mask {
            width,
            words: SmallVec::from_elem(0, words_for(width)),
        }
    }

    /// The mask with only bit `index` set.
    pub fn unit(width: usize, index: usize) -> Self {
        let mut m = Mask::zeros(width);
        m.set(index, true);
        m
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut m = Mask::zeros(width);
        for i in indices {
            m.flip(i);
        }
        m
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Mask::from_indices(
            bits.len(),
            bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i),
        )
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn get(&self, index: usize) -> bool {
        assert!(
            index < self.width,
            "bit {index} out of range for width {}",
            self.width
        );
        (self.words[index / WORD] >> (index % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, index: usize, value: bool) {
        assert!(
            index < self.width,
            "bit {index} out of range for width {}",
            self.width
        );
        let bit = 1u64 << (index % WORD);
        if value {
            self.words[index / WORD] |= bit;
        } else {
            self.words[index / WORD] &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, index: usize) {
        assert!(
            index < self.width,
            "bit {index} out of range for width {}",
            self.width
        );
        self.words[index / WORD] ^= 1u64 << (index % WORD);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &Mask) {
        assert_eq!(self.width, other.width, "mask width mismatch");
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Mask) -> Mask {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    #[inline]
    pub fn lowest_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD + t)
                }
            })
        })
    }

    /// Inner product over F2, i.e. the value of the linear function `self`
    /// at the point `x`.
    pub fn dot(&self, x: &Mask) -> bool {
        assert_eq!(self.width, x.width, "mask width mismatch");
        self.words
            .iter()
            .zip(x.words.iter())
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Appends zero columns up to `width`.
    pub fn widened(&self, width: usize) -> Mask {
        assert!(width >= self.width, "masks only widen");
        let mut out = Mask::zeros(width);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out
    }

    /// Keeps the first `width` columns. Every dropped column must be zero.
    pub fn narrowed(&self, width: usize) -> Mask {
        assert!(width <= self.width);
        assert!(
            self.iter_ones().all(|i| i < width),
            "narrowing would drop set bits"
        );
        let mut out = Mask::zeros(width);
        let n = out.words.len();
        out.words.copy_from_slice(&self.words[..n]);
        out
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders as `x1+x3` with 1-based variable names; the zero mask is `0`.
impl fmt::Display for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in self.iter_ones() {
            if !first {
                write!(f, "+")?;
            }
            write!(f, "x{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// An affine Boolean function `parity ⊕ (mask · x)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XorFunction {
    pub parity: bool,
    pub mask: Mask,
}

impl XorFunction {
    pub fn new(parity: bool, mask: Mask) -> Self {
        XorFunction { parity, mask }
    }

    pub fn zero(width: usize) -> Self {
        XorFunction::new(false, Mask::zeros(width))
    }

    pub fn var(width: usize, index: usize) -> Self {
        XorFunction::new(false, Mask::unit(width, index))
    }

    pub fn width(&self) -> usize {
        self.mask.width()
    }

    pub fn is_constant(&self) -> bool {
        self.mask.is_zero()
    }

    pub fn xor_assign(&mut self, other: &XorFunction) {
        self.parity ^= other.parity;
        self.mask.xor_assign(&other.mask);
    }

    pub fn flip_parity(&mut self) {
        self.parity = !self.parity;
    }

    pub fn eval(&self, x: &Mask) -> bool {
        self.parity ^ self.mask.dot(x)
    }

    pub fn widened(&self, width: usize) -> XorFunction {
        XorFunction::new(self.parity, self.mask.widened(width))
    }
}

impl fmt::Debug for XorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for XorFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parity {
            if self.mask.is_zero() {
                write!(f, "1")
            } else {
                write!(f, "1+{}", self.mask)
            }
        } else {
            write!(f, "{}", self.mask)
        }
    }
}

/// Row-echelon basis of a set of masks.
///
/// Each row's pivot is its lowest set bit and pivots strictly increase, so a
/// vector is reduced by a single pass over the rows in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    width: usize,
    rows: Vec<Mask>,
    pivots: Vec<usize>,
}

impl Basis {
    pub fn new(width: usize) -> Self {
        Basis {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<'a>(width: usize, rows: impl IntoIterator<Item = &'a Mask>) -> Self {
        let mut b = Basis::new(width);
        for r in rows {
            b.insert(r);
        }
        b
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis. The result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &Mask) -> Mask {
        assert_eq!(v.width(), self.width, "mask width mismatch");
        let mut v = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
        v
    }

    pub fn contains(&self, v: &Mask) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the basis. Returns `false` when `v` was already in the span.
    pub fn insert(&mut self, v: &Mask) -> bool {
        let r = self.reduce(v);
        match r.lowest_one() {
            None => false,
            Some(p) => {
                let at = self.pivots.partition_point(|&q| q < p);
                self.rows.insert(at, r);
                self.pivots.insert(at, p);
                true
            }
        }
    }
}

fn check_widths<'a>(rows: impl IntoIterator<Item = &'a Mask>) -> Option<usize> {
    let mut width = None;
    for r in rows {
        match width {
            None => width = Some(r.width()),
            Some(w) => assert_eq!(w, r.width(), "mask width mismatch"),
        }
    }
    width
}

/// Dimension of the span of `rows`.
pub fn rank<'a>(rows: impl IntoIterator<Item = &'a Mask> + Clone) -> usize {
    match check_widths(rows.clone()) {
        None => 0,
        Some(w) => Basis::from_rows(w, rows).rank(),
    }
}

/// Whether `f` is an F2 combination of `basis`.
pub fn in_span<'a>(f: &Mask, basis: impl IntoIterator<Item = &'a Mask>) -> bool {
    let mut b = Basis::new(f.width());
    for r in basis {
        b.insert(r);
    }
    b.contains(f)
}

/// Elementary operation on a list of wire states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowOp {
    /// `rows[target] ^= rows[source]`; a CNOT with control `source`.
    Add { source: usize, target: usize },
    /// Flip the parity of `rows[target]`; an X gate.
    Flip { target: usize },
}

impl RowOp {
    pub fn apply(&self, rows: &mut [XorFunction]) {
        match *self {
            RowOp::Add { source, target } => {
                assert_ne!(source, target, "row added into itself");
                let src = rows[source].clone();
                rows[target].xor_assign(&src);
            }
            RowOp::Flip { target } => rows[target].flip_parity(),
        }
    }
}

pub fn replay(ops: &[RowOp], rows: &mut [XorFunction]) {
    for op in ops {
        op.apply(rows);
    }
}

/// Gauss-Jordan elimination that records every row operation.
///
/// On return, replaying the operations on `rows` leaves the reduced
/// row-echelon basis in positions `0..rank` (pivot order) and zero rows with
/// zero parity everywhere else. All parities end up cleared, so two row sets
/// with the same span reduce to the same list.
pub fn eliminate_with_ops(rows: &[XorFunction]) -> (Basis, Vec<RowOp>) {
    let width = check_widths(rows.iter().map(|r| &r.mask)).unwrap_or(0);
    let mut work: Vec<XorFunction> = rows.to_vec();
    let mut ops = Vec::new();
    let mut pivots = Vec::new();
    let mut next = 0;

    for col in 0..width {
        if next == work.len() {
            break;
        }
        let Some(src) = (next..work.len()).find(|&r| work[r].mask.get(col)) else {
            continue;
        };
        if src != next {
            let op = RowOp::Add {
                source: src,
                target: next,
            };
            op.apply(&mut work);
            ops.push(op);
        }
        for r in 0..work.len() {
            if r != next && work[r].mask.get(col) {
                let op = RowOp::Add {
                    source: next,
                    target: r,
                };
                op.apply(&mut work);
                ops.push(op);
            }
        }
        pivots.push(col);
        next += 1;
    }
    for (r, row) in work.iter_mut().enumerate() {
        if row.parity {
            row.flip_parity();
            ops.push(RowOp::Flip { target: r });
        }
    }

    let basis = Basis {
        width,
        rows: work[..next].iter().map(|r| r.mask.clone()).collect(),
        pivots,
    };
    (basis, ops)
}

/// Index of the first element that lies in the span of the elements before
/// it. Removing that element leaves the rank unchanged. `None` when the block
/// is linearly independent.
pub fn find_dependent(block: &[Mask]) -> Option<usize> {
    let width = check_widths(block)?;
    let mut b = Basis::new(width);
    block.iter().position(|m| !b.insert(m))
}

/// Rank of `rows` together with the set of row indices that occur in some
/// linear dependency among them (the non-coloops of the row set).
pub fn dependency_support(rows: &[&Mask]) -> (usize, Mask) {
    let n = rows.len();
    let mut support = Mask::zeros(n);
    let Some(width) = check_widths(rows.iter().copied()) else {
        return (0, support);
    };
    // Each reduced row carries the combination of inputs that produced it.
    let mut reduced: Vec<(usize, Mask, Mask)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = (*row).clone();
        let mut combo = Mask::unit(n, i);
        for (p, r, c) in &reduced {
            if v.get(*p) {
                v.xor_assign(r);
                combo.xor_assign(c);
            }
        }
        match v.lowest_one() {
            Some(p) => {
                let at = reduced.partition_point(|(q, _, _)| *q < p);
                reduced.insert(at, (p, v, combo));
            }
            None => {
                for j in combo.iter_ones() {
                    support.set(j, true);
                }
            }
        }
    }
    debug_assert!(reduced.iter().all(|(_, r, _)| r.width() == width));
    (reduced.len(), support)
}
