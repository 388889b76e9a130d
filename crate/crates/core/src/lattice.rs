//! The finite lattice of idempotent-generated ideals of D_n.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{contains_ideal, ideal_join, ideal_meet, IdealHandle};
use crate::partitions::{enumerate_set_partitions, SetPartition};

/// Largest n accepted by [`build_lattice`].
pub const MAX_LATTICE_N: usize = 12;
/// Largest n accepted by [`meet_join_table`].
pub const MAX_TABLE_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealLattice {
    n: usize,
    nodes: Vec<IdealHandle>,
    index: HashMap<SetPartition, usize>,
    cover_edges: Vec<(usize, usize)>,
    level_sizes: BTreeMap<usize, usize>,
}

impl IdealLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ideals in canonical generator order; node 0 is the one-block ideal.
    pub fn nodes(&self) -> &[IdealHandle] {
        &self.nodes
    }

    /// `(lower, upper)` pairs of the covering relation under containment.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    /// Rank `k` mapped to the number of ideals with a `k`-block generator.
    pub fn level_sizes(&self) -> &BTreeMap<usize, usize> {
        &self.level_sizes
    }

    pub fn index_of(&self, ideal: &IdealHandle) -> Option<usize> {
        self.index.get(ideal.generator()).copied()
    }

    /// The smallest ideal, `{all-1/n}`.
    pub fn bottom(&self) -> usize {
        0
    }

    /// The largest ideal, D_n itself.
    pub fn top(&self) -> usize {
        self.nodes.len() - 1
    }

    fn lookup(&self, ideal: &IdealHandle) -> usize {
        self.index_of(ideal)
            .expect("lattice is closed under meet and join")
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.lookup(&ideal_meet(&self.nodes[a], &self.nodes[b]).expect("same n"))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.lookup(&ideal_join(&self.nodes[a], &self.nodes[b]).expect("same n"))
    }

    /// `inner ⊆ outer`.
    pub fn contains(&self, outer: usize, inner: usize) -> bool {
        contains_ideal(&self.nodes[outer], &self.nodes[inner]).expect("same n")
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.n,
            nodes: self.nodes.iter().map(|h| h.generator().clone()).collect(),
            covers: self.cover_edges.iter().map(|&(a, b)| [a, b]).collect(),
            levels: self.level_sizes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub nodes: Vec<SetPartition>,
    pub covers: Vec<[usize; 2]>,
    pub levels: BTreeMap<usize, usize>,
}

pub fn build_lattice(n: usize) -> Result<IdealLattice> {
    build_lattice_with_limit(n, MAX_LATTICE_N)
}

/// Builds all `Bell(n)` ideals and their covers. Covers come from splitting
/// one generator block in two.
pub fn build_lattice_with_limit(n: usize, limit: usize) -> Result<IdealLattice> {
    if n == 0 {
        return Err(Error::InvalidPartition("n must be positive".into()));
    }
    if n > limit {
        return Err(Error::LimitExceeded { n, limit });
    }
    let partitions: Vec<SetPartition> = enumerate_set_partitions(n).collect();
    let index: HashMap<SetPartition, usize> = partitions
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let mut level_sizes = BTreeMap::new();
    let mut cover_edges = Vec::new();
    for (lower, p) in partitions.iter().enumerate() {
        *level_sizes.entry(p.num_blocks()).or_insert(0) += 1;
        for split in p.block_splits() {
            cover_edges.push((lower, index[&split]));
        }
    }
    cover_edges.sort_unstable();
    Ok(IdealLattice {
        n,
        nodes: partitions.into_iter().map(IdealHandle::new).collect(),
        index,
        cover_edges,
        level_sizes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawViolation {
    pub law: String,
    pub nodes: Vec<usize>,
}

/// Counts of exhaustive lattice law checks and every violation found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub n: usize,
    pub nodes: usize,
    pub single_checks: usize,
    pub pair_checks: usize,
    pub triple_checks: usize,
    pub violations: Vec<LawViolation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks idempotence, commutativity, absorption, the bound
/// properties `a∧b ⊆ a, b ⊆ a∨b` (pairs), associativity, and that meet and
/// join are the greatest lower and least upper bounds (triples).
pub fn verify_lattice_laws(l: &IdealLattice) -> LawReport {
    let size = l.nodes.len();
    let mut meet = vec![vec![0; size]; size];
    let mut join = vec![vec![0; size]; size];
    let mut leq = vec![vec![false; size]; size];
    for a in 0..size {
        for b in 0..size {
            meet[a][b] = l.meet(a, b);
            join[a][b] = l.join(a, b);
            leq[a][b] = l.contains(b, a);
        }
    }
    let mut violations = Vec::new();
    let mut fail = |law: &str, nodes: &[usize]| {
        violations.push(LawViolation {
            law: law.to_string(),
            nodes: nodes.to_vec(),
        })
    };
    for a in 0..size {
        if meet[a][a] != a {
            fail("meet idempotence", &[a]);
        }
        if join[a][a] != a {
            fail("join idempotence", &[a]);
        }
    }
    for a in 0..size {
        for b in 0..size {
            let (m, j) = (meet[a][b], join[a][b]);
            if m != meet[b][a] {
                fail("meet commutativity", &[a, b]);
            }
            if j != join[b][a] {
                fail("join commutativity", &[a, b]);
            }
            if meet[a][join[a][b]] != a {
                fail("absorption a∧(a∨b) = a", &[a, b]);
            }
            if join[a][meet[a][b]] != a {
                fail("absorption a∨(a∧b) = a", &[a, b]);
            }
            if !(leq[m][a] && leq[m][b]) {
                fail("meet below both", &[a, b]);
            }
            if !(leq[a][j] && leq[b][j]) {
                fail("join above both", &[a, b]);
            }
        }
    }
    for a in 0..size {
        for b in 0..size {
            let (m, j) = (meet[a][b], join[a][b]);
            for c in 0..size {
                if meet[m][c] != meet[a][meet[b][c]] {
                    fail("meet associativity", &[a, b, c]);
                }
                if join[j][c] != join[a][join[b][c]] {
                    fail("join associativity", &[a, b, c]);
                }
                if leq[c][a] && leq[c][b] && !leq[c][m] {
                    fail("meet is the greatest lower bound", &[a, b, c]);
                }
                if leq[a][c] && leq[b][c] && !leq[j][c] {
                    fail("join is the least upper bound", &[a, b, c]);
                }
            }
        }
    }
    LawReport {
        n: l.n,
        nodes: size,
        single_checks: size,
        pair_checks: size * size,
        triple_checks: size * size * size,
        violations,
    }
}

/// Full tables of meet and join node indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeetJoinTable {
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
}

pub fn meet_join_table(l: &IdealLattice) -> Result<MeetJoinTable> {
    meet_join_table_with_limit(l, MAX_TABLE_N)
}

pub fn meet_join_table_with_limit(l: &IdealLattice, limit: usize) -> Result<MeetJoinTable> {
    if l.n > limit {
        return Err(Error::LimitExceeded { n: l.n, limit });
    }
    let size = l.nodes.len();
    let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
        (0..size)
            .map(|a| (0..size).map(|b| op(a, b)).collect())
            .collect()
    };
    Ok(MeetJoinTable {
        meet: table(&|a, b| l.meet(a, b)),
        join: table(&|a, b| l.join(a, b)),
    })
}

/// GraphViz digraph of the Hasse diagram, drawn bottom to top.
pub fn export_dot(l: &IdealLattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph ideals_D{} {{", l.n).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for (i, node) in l.nodes.iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", node.label()).unwrap();
    }
    for &(lower, upper) in &l.cover_edges {
        writeln!(out, "  n{lower} -> n{upper};").unwrap();
    }
    out.push_str("}\n");
    out
}
