//! Exact rational dense matrices.
//!
//! Every entry is a [`Rational`] (an arbitrary precision reduced fraction), so
//! the stochastic predicates, products and ranks below are decided exactly.
//! There are no tolerances anywhere in this module.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Exact fraction with a positive denominator, always in lowest terms.
pub type Rational = BigRational;

/// Builds `num/den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or an integer string. Whitespace around the value and
/// around the slash is ignored; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty rational".into());
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("invalid numerator {num:?}"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("invalid denominator {den:?}"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix(
                "matrix must have at least one row and column".into(),
            ));
        }
        if entries.len() != rows * cols {
            return Err(Error::dims(
                format!("{} entries", rows * cols),
                format!("{} entries", entries.len()),
            ));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_cols) {
            return Err(Error::InvalidMatrix(format!(
                "row {i} has {} entries, expected {n_cols}",
                row.len()
            )));
        }
        Matrix::new(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(rows: &[&[(i64, i64)]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| rat(p, q)).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// The n×n matrix with every entry equal to `1/n`.
    pub fn uniform(n: usize) -> Self {
        Matrix {
            rows: n,
            cols: n,
            entries: vec![rat(1, n as i64); n * n],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn multiply(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dims(
                format!("{} rows on the right", self.cols),
                format!("{}", other.rows),
            ));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            let row = self.row(i);
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Nonnegative entries and every row summing to exactly one.
    pub fn is_stochastic(&self) -> bool {
        self.entries.iter().all(|x| !x.is_negative())
            && self.rows().all(|r| r.iter().sum::<Rational>().is_one())
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_square() && self.is_stochastic() && self.transpose().is_stochastic()
    }

    pub fn is_permutation_matrix(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        if !self.entries.iter().all(|x| x.is_zero() || x.is_one()) {
            return false;
        }
        let mut col_count = vec![0usize; n];
        for row in self.rows() {
            let ones: Vec<usize> = (0..n).filter(|&j| row[j].is_one()).collect();
            if ones.len() != 1 {
                return false;
            }
            col_count[ones[0]] += 1;
        }
        col_count.iter().all(|&c| c == 1)
    }

    /// Exact rank by Gaussian elimination; pivots are taken as the first
    /// nonzero entry of each column among the remaining rows.
    pub fn rank(&self) -> usize {
        let mut work: Vec<Vec<Rational>> = self.rows().map(<[Rational]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !work[r][col].is_zero()) else {
                continue;
            };
            work.swap(rank, pivot);
            let pivot_row = work[rank].clone();
            let pivot_val = pivot_row[col].clone();
            for row in work.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot_val;
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact inverse by Gauss-Jordan elimination, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut work: Vec<Vec<Rational>> = self.rows().map(<[Rational]>::to_vec).collect();
        let mut inv: Vec<Vec<Rational>> = Matrix::identity(n)
            .rows()
            .map(<[Rational]>::to_vec)
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !work[r][col].is_zero()) else {
                return Ok(None);
            };
            work.swap(col, pivot);
            inv.swap(col, pivot);
            let scale = work[col][col].recip();
            work[col].iter_mut().for_each(|x| *x *= &scale);
            inv[col].iter_mut().for_each(|x| *x *= &scale);
            for r in 0..n {
                if r == col || work[r][col].is_zero() {
                    continue;
                }
                let factor = work[r][col].clone();
                for j in 0..n {
                    let dw = &factor * &work[col][j];
                    work[r][j] -= dw;
                    let di = &factor * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Ok(Some(Matrix {
            rows: n,
            cols: n,
            entries: inv.into_iter().flatten().collect(),
        }))
    }

    /// Support digraph strongly connected components, see [`irreducible_components`].
    pub fn irreducible_components(&self) -> Result<Decomposition> {
        irreducible_components(self)
    }
}

impl fmt::Display for Matrix {
    /// Aligned `p/q` grid, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.cols).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// A bijection of `{0, .., n-1}`; index `i` is sent to `images[i]`.
///
/// The associated permutation matrix `P` has `P[images[i]][i] = 1`, so
/// `P·M·Pᵀ` moves entry `(i, j)` of `M` to `(images[i], images[j])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.images.len();
        let mut m = Matrix::zeros(n, n);
        for (i, &x) in self.images.iter().enumerate() {
            m.set(x, i, Rational::one());
        }
        m
    }
}

/// Returns `P·m·Pᵀ`, i.e. `m` with rows and columns relabeled by `p`.
pub fn conjugate_by_permutation(p: &Permutation, m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    if m.rows != p.len() {
        return Err(Error::dims(
            format!("{0}x{0} matrix", p.len()),
            format!("{0}x{0}", m.rows),
        ));
    }
    let n = m.rows;
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(p.apply(i), p.apply(j), m.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Irreducible block decomposition of a doubly stochastic matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Conjugating by this permutation makes the matrix block diagonal.
    pub permutation: Permutation,
    /// Index classes of the blocks, each sorted ascending, ordered by minimum.
    pub classes: Vec<Vec<usize>>,
    pub blocks: Vec<Matrix>,
}

impl Decomposition {
    /// Reassembles the original matrix from the blocks.
    pub fn reassemble(&self) -> Matrix {
        let n = self.permutation.len();
        let mut diag = Matrix::zeros(n, n);
        let mut offset = 0;
        for block in &self.blocks {
            let k = block.n_rows();
            for i in 0..k {
                for j in 0..k {
                    diag.set(offset + i, offset + j, block.get(i, j).clone());
                }
            }
            offset += k;
        }
        conjugate_by_permutation(&self.permutation.inverse(), &diag)
            .expect("decomposition sizes are consistent")
    }
}

/// Splits a doubly stochastic matrix into irreducible diagonal blocks.
///
/// Blocks are the strongly connected components of the support digraph
/// (`i -> j` iff `m[i][j] > 0`), ordered by smallest index. For a doubly
/// stochastic matrix no positive entry may link two different components;
/// that is checked and reported as [`Error::Internal`] if it ever fails.
pub fn irreducible_components(m: &Matrix) -> Result<Decomposition> {
    if !m.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    let n = m.n_rows();
    let mut graph = DiGraph::<usize, ()>::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|i| graph.add_node(i)).collect();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_positive() {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|scc| {
            let mut c: Vec<usize> = scc.into_iter().map(|ix| graph[ix]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    classes.sort_by_key(|c| c[0]);

    let mut class_of = vec![0; n];
    for (k, class) in classes.iter().enumerate() {
        for &i in class {
            class_of[i] = k;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if class_of[i] != class_of[j] && !m.get(i, j).is_zero() {
                return Err(Error::Internal(format!(
                    "positive entry ({i}, {j}) links two components of a doubly stochastic matrix"
                )));
            }
        }
    }

    let mut images = vec![0; n];
    let mut position = 0;
    for class in &classes {
        for &i in class {
            images[i] = position;
            position += 1;
        }
    }
    let permutation = Permutation::new(images)?;
    let blocks = classes
        .iter()
        .map(|class| {
            let entries = class
                .iter()
                .flat_map(|&i| class.iter().map(move |&j| m.get(i, j).clone()))
                .collect();
            Matrix::new(class.len(), class.len(), entries)
        })
        .collect::<Result<Vec<_>>>()?;
    for block in &blocks {
        if !block.is_doubly_stochastic() {
            return Err(Error::Internal(
                "irreducible block is not doubly stochastic".into(),
            ));
        }
    }
    Ok(Decomposition {
        permutation,
        classes,
        blocks,
    })
}

/// Deterministic exact sample from D_n: a convex combination of `terms`
/// uniformly drawn permutation matrices with positive rational weights.
pub fn random_doubly_stochastic(n: usize, seed: u64, terms: usize) -> Matrix {
    assert!(n >= 1 && terms >= 1, "need n >= 1 and terms >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_doubly_stochastic(&mut rng, n, terms)
}

/// Same construction as [`random_doubly_stochastic`], drawing from a caller's RNG.
pub fn sample_doubly_stochastic<R: Rng + ?Sized>(rng: &mut R, n: usize, terms: usize) -> Matrix {
    let weights: Vec<i64> = (0..terms).map(|_| rng.random_range(1..=12)).collect();
    let total: i64 = weights.iter().sum();
    let mut m = Matrix::zeros(n, n);
    let mut images: Vec<usize> = (0..n).collect();
    for w in weights {
        images.shuffle(rng);
        let weight = rat(w, total);
        for (i, &x) in images.iter().enumerate() {
            let cell = m.get(x, i) + &weight;
            m.set(x, i, cell);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_stochastic() -> Matrix {
        Matrix::from_fractions(&[
            &[(1, 2), (1, 2), (0, 1)],
            &[(1, 1), (0, 1), (0, 1)],
            &[(1, 4), (1, 4), (1, 2)],
        ])
        .unwrap()
    }

    fn sample_doubly() -> Matrix {
        Matrix::from_fractions(&[
            &[(1, 2), (1, 2), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
            &[(1, 2), (1, 2), (0, 1)],
        ])
        .unwrap()
    }

    fn e21_d3() -> Matrix {
        Matrix::from_fractions(&[
            &[(1, 2), (1, 2), (0, 1)],
            &[(1, 2), (1, 2), (0, 1)],
            &[(0, 1), (0, 1), (1, 1)],
        ])
        .unwrap()
    }

    fn e22_d3() -> Matrix {
        Matrix::from_fractions(&[
            &[(1, 2), (0, 1), (1, 2)],
            &[(0, 1), (1, 1), (0, 1)],
            &[(1, 2), (0, 1), (1, 2)],
        ])
        .unwrap()
    }

    fn e23_d3() -> Matrix {
        Matrix::from_fractions(&[
            &[(1, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 2), (1, 2)],
            &[(0, 1), (1, 2), (1, 2)],
        ])
        .unwrap()
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("1/-2").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn stochastic_predicates() {
        assert!(sample_stochastic().is_stochastic());
        assert!(!sample_stochastic().is_doubly_stochastic());
        assert!(sample_doubly().is_doubly_stochastic());
        assert!(Matrix::identity(3).is_stochastic());
        let bad = Matrix::from_fractions(&[&[(1, 2), (1, 2)], &[(1, 2), (1, 3)]]).unwrap();
        assert!(!bad.is_stochastic());
        for n in 1..6 {
            assert!(Matrix::uniform(n).is_doubly_stochastic());
        }
        // non-square stochastic matrices are allowed, never doubly stochastic
        let wide = Matrix::from_fractions(&[&[(1, 3), (1, 3), (1, 3)]]).unwrap();
        assert!(wide.is_stochastic());
        assert!(!wide.is_doubly_stochastic());
        let negative = Matrix::from_fractions(&[&[(3, 2), (-1, 2)], &[(-1, 2), (3, 2)]]).unwrap();
        assert!(!negative.is_stochastic());
    }

    #[test]
    fn column_sum_of_stochastic_example() {
        let m = sample_stochastic();
        let col0: Rational = (0..3).map(|i| m.get(i, 0).clone()).sum();
        assert_eq!(col0, rat(7, 4));
    }

    #[test]
    fn multiply_examples() {
        let e = Matrix::uniform(3);
        assert_eq!(e.multiply(&e).unwrap(), e);
        // hand-multiplied: rows 0,1 of E_2^1 average rows 0,1 of E_2^2, row 2 copies row 2
        let expected = Matrix::from_fractions(&[
            &[(1, 4), (1, 2), (1, 4)],
            &[(1, 4), (1, 2), (1, 4)],
            &[(1, 2), (0, 1), (1, 2)],
        ])
        .unwrap();
        assert_eq!(e21_d3().multiply(&e22_d3()).unwrap(), expected);
        let a = sample_stochastic();
        assert_eq!(Matrix::identity(3).multiply(&a).unwrap(), a);
        assert!(matches!(
            Matrix::identity(2).multiply(&a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::uniform(3).rank(), 1);
        for n in 1..6 {
            assert_eq!(Matrix::identity(n).rank(), n);
        }
        let e31_d4 = Matrix::from_fractions(&[
            &[(1, 1), (0, 1), (0, 1), (0, 1)],
            &[(0, 1), (1, 1), (0, 1), (0, 1)],
            &[(0, 1), (0, 1), (1, 2), (1, 2)],
            &[(0, 1), (0, 1), (1, 2), (1, 2)],
        ])
        .unwrap();
        assert_eq!(e31_d4.rank(), 3);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
    }

    #[test]
    fn conjugation_examples() {
        let m = sample_stochastic();
        assert_eq!(
            conjugate_by_permutation(&Permutation::identity(3), &m).unwrap(),
            m
        );
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        // blocks {0},{1,2} relabeled by (0 1) become {1},{0,2}
        assert_eq!(
            conjugate_by_permutation(&swap, &e23_d3()).unwrap(),
            e22_d3()
        );
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            conjugate_by_permutation(&cycle, &Matrix::uniform(3)).unwrap(),
            Matrix::uniform(3)
        );
        // agrees with the explicit P·M·Pᵀ product
        let p = cycle.to_matrix();
        let direct = p.multiply(&m).unwrap().multiply(&p.transpose()).unwrap();
        assert_eq!(conjugate_by_permutation(&cycle, &m).unwrap(), direct);
        assert!(conjugate_by_permutation(&Permutation::identity(2), &m).is_err());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn permutation_matrix_predicate() {
        assert!(Matrix::identity(4).is_permutation_matrix());
        assert!(!Matrix::uniform(2).is_permutation_matrix());
        let cycle = Permutation::new(vec![1, 2, 0]).unwrap().to_matrix();
        assert!(cycle.is_permutation_matrix());
        assert!(!Matrix::zeros(2, 2).is_permutation_matrix());
    }

    #[test]
    fn components_examples() {
        let d = irreducible_components(&e21_d3()).unwrap();
        assert_eq!(d.blocks, vec![Matrix::uniform(2), Matrix::identity(1)]);
        assert_eq!(d.reassemble(), e21_d3());

        let d = irreducible_components(&Matrix::uniform(4)).unwrap();
        assert_eq!(d.blocks, vec![Matrix::uniform(4)]);

        let d = irreducible_components(&Matrix::identity(3)).unwrap();
        assert_eq!(d.blocks.len(), 3);
        assert!(d.blocks.iter().all(|b| *b == Matrix::identity(1)));

        let d = irreducible_components(&e22_d3()).unwrap();
        assert_eq!(d.classes, vec![vec![0, 2], vec![1]]);
        assert_eq!(d.reassemble(), e22_d3());

        assert_eq!(
            irreducible_components(&sample_stochastic()),
            Err(Error::NotDoublyStochastic)
        );
    }

    #[test]
    fn random_generator_contract() {
        for seed in 0..20 {
            let p = random_doubly_stochastic(4, seed, 1);
            assert!(p.is_permutation_matrix());
            let m = random_doubly_stochastic(4, seed, 5);
            assert!(m.is_doubly_stochastic());
            assert_eq!(m, random_doubly_stochastic(4, seed, 5));
        }
    }

    #[test]
    fn inverse_of_permutation_is_transpose() {
        let p = Permutation::new(vec![3, 1, 0, 2]).unwrap().to_matrix();
        assert_eq!(p.inverse().unwrap().unwrap(), p.transpose());
        assert_eq!(Matrix::uniform(3).inverse().unwrap(), None);
    }

    #[test]
    fn display_is_aligned() {
        let text = e21_d3().to_string();
        assert_eq!(
            text,
            "[ 1/2  1/2    0 ]\n[ 1/2  1/2    0 ]\n[   0    0    1 ]"
        );
    }
}
