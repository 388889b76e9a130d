//! Set partitions of `{0, .., n-1}`, integer partitions of `n`, and the
//! counting functions that tie them to idempotents.
//!
//! A [`SetPartition`] is always stored canonically: blocks sorted by their
//! minimum element, elements ascending within each block. The canonical order
//! between partitions is lexicographic order on restricted growth strings,
//! which puts the one-block partition first and the all-singletons partition
//! last.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratmat::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SetPartitionRepr", into = "SetPartitionRepr")]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SetPartitionRepr {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<SetPartitionRepr> for SetPartition {
    type Error = Error;
    fn try_from(repr: SetPartitionRepr) -> Result<Self> {
        SetPartition::from_blocks(repr.n, repr.blocks)
    }
}

impl From<SetPartition> for SetPartitionRepr {
    fn from(p: SetPartition) -> Self {
        SetPartitionRepr {
            n: p.n,
            blocks: p.blocks,
        }
    }
}

impl SetPartition {
    /// Validates and canonicalizes the given blocks.
    pub fn from_blocks(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be positive".into()));
        }
        let mut seen = vec![false; n];
        for block in &mut blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable();
            for &x in block.iter() {
                if x >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} out of range 0..{n}"
                    )));
                }
                if seen[x] {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears twice"
                    )));
                }
                seen[x] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!(
                "element {missing} is not covered"
            )));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks })
    }

    /// Builds a partition from any labeling: `i` and `j` share a block iff
    /// `labels[i] == labels[j]`.
    pub fn from_labels<T: Ord>(labels: &[T]) -> Result<Self> {
        let mut groups: BTreeMap<&T, Vec<usize>> = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            groups.entry(label).or_default().push(i);
        }
        SetPartition::from_blocks(labels.len(), groups.into_values().collect())
    }

    pub fn one_block(n: usize) -> Self {
        assert!(n > 0);
        SetPartition {
            n,
            blocks: vec![(0..n).collect()],
        }
    }

    pub fn singletons(n: usize) -> Self {
        assert!(n > 0);
        SetPartition {
            n,
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Restricted growth string: `rgs[i]` is the index of the block holding `i`.
    pub fn rgs(&self) -> Vec<usize> {
        let mut rgs = vec![0; self.n];
        for (k, block) in self.blocks.iter().enumerate() {
            for &i in block {
                rgs[i] = k;
            }
        }
        rgs
    }

    pub fn block_index_of(&self, i: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.binary_search(&i).is_ok())
            .expect("element in range")
    }

    /// Sends every element `i` to `p.apply(i)`.
    pub fn relabel(&self, p: &Permutation) -> Result<SetPartition> {
        if p.len() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| p.apply(i)).collect())
            .collect();
        SetPartition::from_blocks(self.n, blocks)
    }

    /// All partitions obtained by splitting exactly one block into two
    /// non-empty parts. Each result appears once.
    pub fn block_splits(&self) -> Vec<SetPartition> {
        let mut out = Vec::new();
        for (k, block) in self.blocks.iter().enumerate() {
            let size = block.len();
            if size < 2 {
                continue;
            }
            // the first element stays in part A; each mask picks which of the
            // remaining elements join part B, excluding the empty choice
            for mask in 1u64..(1u64 << (size - 1)) {
                let mut part_a = vec![block[0]];
                let mut part_b = Vec::new();
                for (bit, &x) in block[1..].iter().enumerate() {
                    if mask >> bit & 1 == 1 {
                        part_b.push(x);
                    } else {
                        part_a.push(x);
                    }
                }
                let mut blocks = self.blocks.clone();
                blocks[k] = part_a;
                blocks.push(part_b);
                out.push(
                    SetPartition::from_blocks(self.n, blocks).expect("split of a valid partition"),
                );
            }
        }
        out
    }

    /// Parses 1-based block notation such as `(1,2)(3,4)` or `(1,2),(3,4)`.
    /// Elements not mentioned become singletons.
    pub fn parse_one_based(n: usize, text: &str) -> Result<SetPartition> {
        let err = |column: usize, message: String| Error::Parse {
            line: 1,
            column,
            message,
        };
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let mut number_start = 0;
        let finish_number =
            |number: &mut String, current: &mut Option<Vec<usize>>, start: usize| -> Result<()> {
                if number.is_empty() {
                    return Ok(());
                }
                let value: usize = number
                    .parse()
                    .map_err(|_| err(start, format!("invalid index {number:?}")))?;
                if value == 0 || value > n {
                    return Err(err(start, format!("index {value} out of range 1..={n}")));
                }
                current.as_mut().expect("inside a block").push(value - 1);
                number.clear();
                Ok(())
            };
        for (pos, ch) in text.chars().enumerate() {
            let column = pos + 1;
            match ch {
                '(' | '{' | '[' => {
                    if current.is_some() {
                        return Err(err(column, "nested block".into()));
                    }
                    current = Some(Vec::new());
                }
                ')' | '}' | ']' => {
                    finish_number(&mut number, &mut current, number_start)?;
                    match current.take() {
                        Some(block) if !block.is_empty() => blocks.push(block),
                        Some(_) => {}
                        None => return Err(err(column, "unmatched closing bracket".into())),
                    }
                }
                '0'..='9' => {
                    if current.is_none() {
                        return Err(err(column, "index outside of a block".into()));
                    }
                    if number.is_empty() {
                        number_start = column;
                    }
                    number.push(ch);
                }
                ',' | ' ' | '\t' => {
                    if current.is_some() {
                        finish_number(&mut number, &mut current, number_start)?;
                    }
                }
                other => return Err(err(column, format!("unexpected character {other:?}"))),
            }
        }
        if current.is_some() {
            return Err(err(text.chars().count() + 1, "unterminated block".into()));
        }
        let mut covered = vec![false; n];
        for &x in blocks.iter().flatten() {
            if covered[x] {
                return Err(err(1, format!("index {} appears twice", x + 1)));
            }
            covered[x] = true;
        }
        blocks.extend((0..n).filter(|&i| !covered[i]).map(|i| vec![i]));
        SetPartition::from_blocks(n, blocks)
    }

    /// 1-based listing of the blocks with at least two elements, e.g. `(1,2),(3,4)`.
    /// The all-singletons partition lists every singleton, e.g. `(1)(2)(3)`.
    pub fn non_singleton_notation(&self) -> String {
        let big: Vec<String> = self
            .blocks
            .iter()
            .filter(|b| b.len() > 1)
            .map(|b| one_based(b))
            .collect();
        if big.is_empty() {
            self.blocks.iter().map(|b| one_based(b)).collect::<String>()
        } else {
            big.join(",")
        }
    }
}

fn one_based(block: &[usize]) -> String {
    let items: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", items.join(","))
}

impl fmt::Display for SetPartition {
    /// 1-based blocks, e.g. `(1,2)(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in &self.blocks {
            f.write_str(&one_based(block))?;
        }
        Ok(())
    }
}

impl PartialOrd for SetPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SetPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.rgs().cmp(&other.rgs()))
    }
}

/// Lazy enumeration of all set partitions of `{0, .., n-1}` in restricted
/// growth string lexicographic order.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    done: bool,
}

pub fn enumerate_set_partitions(n: usize) -> SetPartitions {
    assert!(n >= 1, "n must be positive");
    SetPartitions {
        rgs: vec![0; n],
        prefix_max: vec![0; n],
        done: false,
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let current =
            SetPartition::from_labels(&self.rgs).expect("restricted growth string is a partition");
        let n = self.rgs.len();
        match (1..n)
            .rev()
            .find(|&i| self.rgs[i] <= self.prefix_max[i - 1])
        {
            Some(i) => {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
            }
            None => self.done = true,
        }
        Some(current)
    }
}

/// Integer partition of `n`, stored as its parts in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IntShapeRepr", into = "IntShapeRepr")]
pub struct IntShape {
    n: usize,
    parts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct IntShapeRepr {
    n: usize,
    parts: Vec<usize>,
}

impl TryFrom<IntShapeRepr> for IntShape {
    type Error = Error;
    fn try_from(repr: IntShapeRepr) -> Result<Self> {
        let shape = IntShape::from_parts(repr.parts)?;
        if shape.n != repr.n {
            return Err(Error::InvalidPartition(format!(
                "parts sum to {}, expected {}",
                shape.n, repr.n
            )));
        }
        Ok(shape)
    }
}

impl From<IntShape> for IntShapeRepr {
    fn from(s: IntShape) -> Self {
        IntShapeRepr {
            n: s.n,
            parts: s.parts,
        }
    }
}

impl IntShape {
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidPartition(
                "parts must be positive and non-empty".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(IntShape {
            n: parts.iter().sum(),
            parts,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Parts in descending order.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of parts equal to `alpha`.
    pub fn multiplicity(&self, alpha: usize) -> usize {
        self.parts.iter().filter(|&&p| p == alpha).count()
    }

    /// `alpha -> multiplicity` for every part size that occurs.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for IntShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

/// All integer partitions of `n`, in descending lexicographic order of their
/// parts: `4; 3+1; 2+2; 2+1+1; 1+1+1+1`.
pub fn enumerate_int_shapes(n: usize) -> Vec<IntShape> {
    assert!(n >= 1, "n must be positive");
    fn go(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<IntShape>) {
        if remaining == 0 {
            out.push(IntShape {
                n: prefix.iter().sum(),
                parts: prefix.clone(),
            });
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn shape_of(p: &SetPartition) -> IntShape {
    IntShape::from_parts(p.blocks.iter().map(Vec::len).collect()).expect("blocks are non-empty")
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n! / Π_α (α!)^ρ_α · ρ_α!`: the number of set partitions (hence of
/// idempotents of D_n) with the given block-size multiset.
pub fn count_idempotents_of_shape(shape: &IntShape) -> BigUint {
    let denominator = shape
        .multiplicities()
        .into_iter()
        .fold(BigUint::one(), |acc, (alpha, rho)| {
            acc * factorial(alpha).pow(rho as u32) * factorial(rho)
        });
    factorial(shape.n) / denominator
}

pub fn count_idempotents(n: usize) -> BigUint {
    enumerate_int_shapes(n)
        .iter()
        .map(count_idempotents_of_shape)
        .sum()
}

/// Bell number from the Bell triangle.
pub fn bell_number(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("non-empty row").clone());
        for x in &row {
            let value = next.last().expect("non-empty row") + x;
            next.push(value);
        }
        row = next;
    }
    row.swap_remove(0)
}

/// Stirling number of the second kind via `S(n,k) = k·S(n-1,k) + S(n-1,k-1)`.
pub fn stirling_second_kind(n: usize, k: usize) -> BigUint {
    let mut row = vec![BigUint::zero(); k + 1];
    row[0] = BigUint::one();
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            row[j] = BigUint::from(j) * &row[j] + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    row.swap_remove(k)
}

fn check_same_n(p: &SetPartition, q: &SetPartition) -> Result<()> {
    if p.n != q.n {
        return Err(Error::SizeMismatch {
            left: p.n,
            right: q.n,
        });
    }
    Ok(())
}

/// Every block of `p` lies inside some block of `q`.
pub fn refines(p: &SetPartition, q: &SetPartition) -> Result<bool> {
    check_same_n(p, q)?;
    let q_rgs = q.rgs();
    Ok(p.blocks
        .iter()
        .all(|b| b.iter().all(|&i| q_rgs[i] == q_rgs[b[0]])))
}

/// Coarsest common refinement: all non-empty intersections of a `p` block with a `q` block.
pub fn partition_meet(p: &SetPartition, q: &SetPartition) -> Result<SetPartition> {
    check_same_n(p, q)?;
    let labels: Vec<(usize, usize)> = p.rgs().into_iter().zip(q.rgs()).collect();
    SetPartition::from_labels(&labels)
}

/// Finest common coarsening, by union-find over the blocks of both.
pub fn partition_join(p: &SetPartition, q: &SetPartition) -> Result<SetPartition> {
    check_same_n(p, q)?;
    let mut uf = UnionFind::new(p.n);
    for block in p.blocks.iter().chain(&q.blocks) {
        for &x in &block[1..] {
            uf.union(block[0], x);
        }
    }
    let labels: Vec<usize> = (0..p.n).map(|i| uf.find(i)).collect();
    SetPartition::from_labels(&labels)
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
