//! Green's D-relation between idempotents of D_n, certified by witnesses.
//!
//! Idempotents `E` and `F` are D-related when there are `x ∈ E·D_n·F` and
//! `y ∈ F·D_n·E` with `x·y = E` and `y·x = F`. For idempotents of the same
//! shape such a pair comes from a conjugating permutation. No general decision
//! procedure is attempted; cross-shape pairs are only explored by the exact
//! block-pattern search in [`search_block_witness`].

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idempotents::Idempotent;
use crate::io::MatrixJson;
use crate::partitions::{shape_of, SetPartition};
use crate::ratmat::{Matrix, Permutation, Rational};

/// A pair `(x, y)` offered as evidence that two idempotents are D-related.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WitnessRepr", into = "WitnessRepr")]
pub struct DWitness {
    pub x: Matrix,
    pub y: Matrix,
}

#[derive(Serialize, Deserialize)]
struct WitnessRepr {
    x: MatrixJson,
    y: MatrixJson,
}

impl TryFrom<WitnessRepr> for DWitness {
    type Error = Error;
    fn try_from(repr: WitnessRepr) -> Result<Self> {
        Ok(DWitness {
            x: repr.x.try_into()?,
            y: repr.y.try_into()?,
        })
    }
}

impl From<DWitness> for WitnessRepr {
    fn from(w: DWitness) -> Self {
        WitnessRepr {
            x: (&w.x).into(),
            y: (&w.y).into(),
        }
    }
}

/// True iff `x·y = E`, `y·x = F`, `x = E·x·F` and `y = F·y·E`, with both
/// witnesses doubly stochastic.
pub fn verify_d_witness(w: &DWitness, e: &Idempotent, f: &Idempotent) -> Result<bool> {
    let n = e.n();
    if f.n() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: f.n(),
        });
    }
    for m in [&w.x, &w.y] {
        if m.n_rows() != n || m.n_cols() != n {
            return Err(Error::dims(
                format!("{n}x{n}"),
                format!("{}x{}", m.n_rows(), m.n_cols()),
            ));
        }
    }
    if !w.x.is_doubly_stochastic() || !w.y.is_doubly_stochastic() {
        return Ok(false);
    }
    let (em, fm) = (e.matrix(), f.matrix());
    Ok(w.x.multiply(&w.y)? == *em
        && w.y.multiply(&w.x)? == *fm
        && em.multiply(&w.x)?.multiply(fm)? == w.x
        && fm.multiply(&w.y)?.multiply(em)? == w.y)
}

/// Permutation carrying the blocks of `p` onto the blocks of `q`.
///
/// Blocks are matched by size; among equal sizes in order of their minimum
/// element; within matched blocks ascending elements go to ascending elements.
pub fn find_conjugating_permutation(p: &SetPartition, q: &SetPartition) -> Result<Permutation> {
    if p.n() != q.n() {
        return Err(Error::SizeMismatch {
            left: p.n(),
            right: q.n(),
        });
    }
    let (sp, sq) = (shape_of(p), shape_of(q));
    if sp != sq {
        return Err(Error::ShapeMismatch {
            left: sp.to_string(),
            right: sq.to_string(),
        });
    }
    fn by_size(part: &SetPartition) -> Vec<&Vec<usize>> {
        let mut blocks: Vec<&Vec<usize>> = part.blocks().iter().collect();
        blocks.sort_by_key(|b| b.len());
        blocks
    }
    let mut images = vec![0; p.n()];
    for (from, to) in by_size(p).into_iter().zip(by_size(q)) {
        for (&i, &j) in from.iter().zip(to) {
            images[i] = j;
        }
    }
    Permutation::new(images)
}

/// Witness `x = E·Pᵀ`, `y = P·E` where `P·E·Pᵀ = F`.
pub fn same_shape_d_witness(e: &Idempotent, f: &Idempotent) -> Result<DWitness> {
    let p = find_conjugating_permutation(e.partition(), f.partition())?;
    let pm = p.to_matrix();
    let x = e.matrix().multiply(&pm.transpose())?;
    let y = pm.multiply(e.matrix())?;
    Ok(DWitness { x, y })
}

/// Witness for any pair: conjugation for equal shapes, otherwise an
/// explicit unsupported error (absence of a witness is not disproof).
pub fn d_witness(e: &Idempotent, f: &Idempotent) -> Result<DWitness> {
    match same_shape_d_witness(e, f) {
        Err(Error::ShapeMismatch { left, right }) => {
            Err(Error::UnsupportedCrossShape { left, right })
        }
        other => other,
    }
}

/// Outcome of [`search_block_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockWitnessSearch {
    Found(DWitness),
    /// No support pattern admits a normalized witness.
    Infeasible {
        support_pairs: usize,
        surviving_patterns: usize,
    },
    /// Some pattern left free parameters, so the search cannot conclude.
    Undetermined {
        surviving_patterns: usize,
    },
}

/// Largest block count accepted by [`search_block_witness`].
pub const BLOCK_SEARCH_LIMIT: usize = 3;

/// Exhaustive exact search for a normalized witness between `e` and `f`.
///
/// A normalized `x = E·x·F` is constant on every (E-block × F-block)
/// rectangle, so it reduces to a `k_e × k_f` matrix `X` (likewise `Y`). The
/// conditions `x·y = E`, `y·x = F` become `X·C·Y = A⁻¹` and `Y·A·X = C⁻¹`
/// with `A`, `C` the diagonal block-size matrices. Because every term is
/// nonnegative, the zero/nonzero pattern of the products is decided by the
/// supports alone. The search enumerates every support pair, keeps the ones
/// whose products have the required diagonal pattern, solves the row and
/// column sum equations of `x` and `y` on each surviving support, and checks
/// the resulting candidate exactly.
pub fn search_block_witness(e: &Idempotent, f: &Idempotent) -> Result<BlockWitnessSearch> {
    if e.n() != f.n() {
        return Err(Error::SizeMismatch {
            left: e.n(),
            right: f.n(),
        });
    }
    let (ke, kf) = (e.rank(), f.rank());
    if ke.max(kf) > BLOCK_SEARCH_LIMIT {
        return Err(Error::LimitExceeded {
            n: ke.max(kf),
            limit: BLOCK_SEARCH_LIMIT,
        });
    }
    let a: Vec<usize> = e.partition().blocks().iter().map(Vec::len).collect();
    let c: Vec<usize> = f.partition().blocks().iter().map(Vec::len).collect();
    let cells = ke * kf;
    let mut surviving = 0;
    let mut undetermined = false;
    let support_pairs = 1usize << (2 * cells);
    for x_mask in 1u32..(1 << cells) {
        let sx = |i: usize, j: usize| x_mask >> (i * kf + j) & 1 == 1;
        for y_mask in 1u32..(1 << cells) {
            let sy = |j: usize, i: usize| y_mask >> (j * ke + i) & 1 == 1;
            if !diagonal_pattern(ke, kf, &sx, &sy) || !diagonal_pattern(kf, ke, &sy, &sx) {
                continue;
            }
            surviving += 1;
            let xs = solve_on_support(ke, kf, &c, &a, &sx);
            let ys = solve_on_support(kf, ke, &a, &c, &sy);
            let (xv, yv) = match (xs, ys) {
                (Solved::Unique(xv), Solved::Unique(yv)) => (xv, yv),
                (Solved::Inconsistent, _) | (_, Solved::Inconsistent) => continue,
                _ => {
                    undetermined = true;
                    continue;
                }
            };
            if xv.iter().chain(&yv).any(|v| v.is_negative()) {
                continue;
            }
            let witness = DWitness {
                x: expand(e.partition(), f.partition(), &xv),
                y: expand(f.partition(), e.partition(), &yv),
            };
            if verify_d_witness(&witness, e, f)? {
                return Ok(BlockWitnessSearch::Found(witness));
            }
        }
    }
    Ok(if undetermined {
        BlockWitnessSearch::Undetermined {
            surviving_patterns: surviving,
        }
    } else {
        BlockWitnessSearch::Infeasible {
            support_pairs,
            surviving_patterns: surviving,
        }
    })
}

/// Support of `L·R` (L is `rows × mid`, R is `mid × rows`) is exactly the diagonal.
fn diagonal_pattern(
    rows: usize,
    mid: usize,
    left: &dyn Fn(usize, usize) -> bool,
    right: &dyn Fn(usize, usize) -> bool,
) -> bool {
    (0..rows).all(|i| {
        (0..rows).all(|l| {
            let hit = (0..mid).any(|j| left(i, j) && right(j, l));
            hit == (i == l)
        })
    })
}

enum Solved {
    Unique(Vec<Rational>),
    Inconsistent,
    Free,
}

/// Solves the row and column sum equations of the expanded matrix for a
/// reduced `rows × cols` block matrix restricted to `support`:
/// `Σ_j col_sizes[j]·X[i][j] = 1` and `Σ_i row_sizes[i]·X[i][j] = 1`.
fn solve_on_support(
    rows: usize,
    cols: usize,
    col_sizes: &[usize],
    row_sizes: &[usize],
    support: &dyn Fn(usize, usize) -> bool,
) -> Solved {
    let vars: Vec<(usize, usize)> = (0..rows)
        .flat_map(|i| (0..cols).map(move |j| (i, j)))
        .filter(|&(i, j)| support(i, j))
        .collect();
    let mut system: Vec<Vec<Rational>> = Vec::new();
    for i in 0..rows {
        let mut eq: Vec<Rational> = vars
            .iter()
            .map(|&(r, s)| {
                if r == i {
                    Rational::from_integer(col_sizes[s].into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        eq.push(Rational::one());
        system.push(eq);
    }
    for j in 0..cols {
        let mut eq: Vec<Rational> = vars
            .iter()
            .map(|&(r, s)| {
                if s == j {
                    Rational::from_integer(row_sizes[r].into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        eq.push(Rational::one());
        system.push(eq);
    }
    let values = match gauss_jordan(system, vars.len()) {
        Some(Some(values)) => values,
        Some(None) => return Solved::Free,
        None => return Solved::Inconsistent,
    };
    let mut full = vec![Rational::zero(); rows * cols];
    for (&(i, j), v) in vars.iter().zip(values) {
        full[i * cols + j] = v;
    }
    Solved::Unique(full)
}

/// `None` when inconsistent, `Some(None)` when underdetermined.
fn gauss_jordan(mut system: Vec<Vec<Rational>>, unknowns: usize) -> Option<Option<Vec<Rational>>> {
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..unknowns {
        let Some(p) = (row..system.len()).find(|&r| !system[r][col].is_zero()) else {
            continue;
        };
        system.swap(row, p);
        let scale = system[row][col].recip();
        system[row].iter_mut().for_each(|x| *x *= &scale);
        let pivot = system[row].clone();
        for (r, eq) in system.iter_mut().enumerate() {
            if r != row && !eq[col].is_zero() {
                let factor = eq[col].clone();
                for (x, p) in eq.iter_mut().zip(&pivot) {
                    *x -= &factor * p;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    if system[row..].iter().any(|eq| !eq[unknowns].is_zero()) {
        return None;
    }
    if pivot_cols.len() < unknowns {
        return Some(None);
    }
    Some(Some(
        system[..unknowns]
            .iter()
            .map(|eq| eq[unknowns].clone())
            .collect(),
    ))
}

/// Expands a reduced block matrix over `row_part × col_part` rectangles.
fn expand(row_part: &SetPartition, col_part: &SetPartition, reduced: &[Rational]) -> Matrix {
    let n = row_part.n();
    let (rb, cb) = (row_part.rgs(), col_part.rgs());
    let cols = col_part.num_blocks();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, reduced[rb[i] * cols + cb[j]].clone());
        }
    }
    m
}
