//! Idempotents of D_n and their correspondence with set partitions.
//!
//! The idempotent attached to a partition has entry `1/|B|` at `(i, j)` when
//! `i` and `j` share the block `B`, and zero otherwise. Every idempotent
//! doubly stochastic matrix arises this way, exactly once.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::partitions::{
    enumerate_set_partitions, shape_of, IntShape, SetPartition, SetPartitions,
};
use crate::ratmat::{conjugate_by_permutation, rat, Matrix, Permutation};

/// An idempotent of D_n. Equality is partition equality; the matrix is a cache.
#[derive(Debug, Clone)]
pub struct Idempotent {
    partition: SetPartition,
    matrix: Matrix,
}

impl PartialEq for Idempotent {
    fn eq(&self, other: &Self) -> bool {
        self.partition == other.partition
    }
}

impl Eq for Idempotent {}

impl std::hash::Hash for Idempotent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.partition.hash(state);
    }
}

impl Idempotent {
    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    /// Linear-algebra rank, which equals the number of blocks.
    pub fn rank(&self) -> usize {
        self.partition.num_blocks()
    }

    pub fn shape(&self) -> IntShape {
        shape_of(&self.partition)
    }

    pub fn canonical_block_form(&self) -> (Permutation, Matrix) {
        canonical_block_form(self)
    }
}

impl fmt::Display for Idempotent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

pub fn idempotent_from_partition(p: &SetPartition) -> Idempotent {
    let n = p.n();
    let mut matrix = Matrix::zeros(n, n);
    for block in p.blocks() {
        let value = rat(1, block.len() as i64);
        for &i in block {
            for &j in block {
                matrix.set(i, j, value.clone());
            }
        }
    }
    Idempotent {
        partition: p.clone(),
        matrix,
    }
}

/// Recovers the partition of a doubly stochastic idempotent from its classes
/// of equal rows, then confirms the matrix is exactly the one that partition
/// produces.
pub fn partition_from_matrix(m: &Matrix) -> Result<SetPartition> {
    if !m.is_square() {
        return Err(Error::NotIdempotent(format!(
            "{}x{} matrix is not square",
            m.n_rows(),
            m.n_cols()
        )));
    }
    if !m.is_doubly_stochastic() {
        return Err(Error::NotIdempotent(
            "matrix is not doubly stochastic".into(),
        ));
    }
    if m.multiply(m)? != *m {
        return Err(Error::NotIdempotent("m·m differs from m".into()));
    }
    let rows: Vec<&[_]> = m.rows().collect();
    let partition = SetPartition::from_labels(&rows)?;
    if idempotent_from_partition(&partition).matrix != *m {
        return Err(Error::NotIdempotent(
            "matrix differs from the idempotent of its row classes".into(),
        ));
    }
    Ok(partition)
}

/// Wraps a matrix as an [`Idempotent`] after checking it via [`partition_from_matrix`].
pub fn idempotent_from_matrix(m: &Matrix) -> Result<Idempotent> {
    let partition = partition_from_matrix(m)?;
    Ok(Idempotent {
        partition,
        matrix: m.clone(),
    })
}

/// Exact test `m·m = m`.
pub fn is_idempotent(m: &Matrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.n_rows(),
            cols: m.n_cols(),
        });
    }
    Ok(m.multiply(m)? == *m)
}

/// Permutation `p` and block diagonal `U = P·E·Pᵀ` whose diagonal blocks are
/// the all-`1/n_i` matrices with `n_1 >= n_2 >= .. >= n_k`. Blocks of equal
/// size keep the order of their smallest element.
pub fn canonical_block_form(e: &Idempotent) -> (Permutation, Matrix) {
    let mut blocks: Vec<&Vec<usize>> = e.partition.blocks().iter().collect();
    // stable sort: ties stay in min-element order
    blocks.sort_by_key(|b| std::cmp::Reverse(b.len()));
    let n = e.n();
    let mut images = vec![0; n];
    let mut position = 0;
    for block in &blocks {
        for &i in block.iter() {
            images[i] = position;
            position += 1;
        }
    }
    let p = Permutation::new(images).expect("blocks cover 0..n");
    let u = conjugate_by_permutation(&p, &e.matrix).expect("sizes agree");
    debug_assert!(is_block_diagonal(
        &u,
        &blocks.iter().map(|b| b.len()).collect::<Vec<_>>()
    ));
    (p, u)
}

fn is_block_diagonal(u: &Matrix, sizes: &[usize]) -> bool {
    let mut owner = Vec::with_capacity(u.n_rows());
    for (k, &s) in sizes.iter().enumerate() {
        owner.extend(std::iter::repeat_n(k, s));
    }
    (0..u.n_rows()).all(|i| (0..u.n_cols()).all(|j| owner[i] == owner[j] || u.get(i, j).is_zero()))
}

/// Streams every idempotent of D_n in canonical partition order.
pub fn enumerate_idempotents(n: usize) -> Idempotents {
    Idempotents {
        inner: enumerate_set_partitions(n),
    }
}

#[derive(Debug, Clone)]
pub struct Idempotents {
    inner: SetPartitions,
}

impl Iterator for Idempotents {
    type Item = Idempotent;

    fn next(&mut self) -> Option<Idempotent> {
        self.inner.next().map(|p| idempotent_from_partition(&p))
    }
}
