//! Principal right ideals `E·D_n` generated by idempotents.
//!
//! A doubly stochastic `m` lies in `E·D_n` exactly when `E·m = m`, i.e. when
//! the rows of `m` agree within every block of `E`'s partition. Containment of
//! ideals reverses refinement of the generating partitions, so the meet of two
//! ideals is generated by the partition join and the join by the partition
//! meet.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::idempotents::{idempotent_from_partition, Idempotent};
use crate::partitions::{partition_join, partition_meet, refines, SetPartition};
use crate::ratmat::{Matrix, Rational};

/// The ideal `E·D_n`, identified by the partition of its generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IdealRepr", into = "IdealRepr")]
pub struct IdealHandle {
    generator: SetPartition,
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    n: usize,
    generator: GeneratorRepr,
}

#[derive(Serialize, Deserialize)]
struct GeneratorRepr {
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<IdealRepr> for IdealHandle {
    type Error = Error;
    fn try_from(repr: IdealRepr) -> Result<Self> {
        Ok(IdealHandle {
            generator: SetPartition::from_blocks(repr.n, repr.generator.blocks)?,
        })
    }
}

impl From<IdealHandle> for IdealRepr {
    fn from(h: IdealHandle) -> Self {
        IdealRepr {
            n: h.n(),
            generator: GeneratorRepr {
                blocks: h.generator.blocks().to_vec(),
            },
        }
    }
}

impl IdealHandle {
    pub fn new(generator: SetPartition) -> Self {
        IdealHandle { generator }
    }

    pub fn generator(&self) -> &SetPartition {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.n()
    }

    /// Rank of the generating idempotent.
    pub fn rank(&self) -> usize {
        self.generator.num_blocks()
    }

    pub fn idempotent(&self) -> Idempotent {
        idempotent_from_partition(&self.generator)
    }

    /// `I^k_{(..)}` with 1-based non-singleton blocks, e.g. `I^2_{(1,2),(3,4)}`.
    pub fn label(&self) -> String {
        format!(
            "I^{}_{{{}}}",
            self.rank(),
            self.generator.non_singleton_notation()
        )
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn ideal_of(e: &Idempotent) -> IdealHandle {
    IdealHandle::new(e.partition().clone())
}

/// Outcome of a membership test, with the first violated condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member,
    NotDoublyStochastic {
        reason: String,
    },
    /// Rows `first` and `second` (0-based) share generator block `block` but differ.
    RowsDiffer {
        block: usize,
        first: usize,
        second: usize,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

impl fmt::Display for Membership {
    /// Uses 1-based row numbers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::Member => f.write_str("member"),
            Membership::NotDoublyStochastic { reason } => {
                write!(f, "not doubly stochastic: {reason}")
            }
            Membership::RowsDiffer {
                block,
                first,
                second,
            } => {
                write!(
                    f,
                    "rows {},{} differ (generator block {})",
                    first + 1,
                    second + 1,
                    block + 1
                )
            }
        }
    }
}

fn stochastic_violation(m: &Matrix) -> Option<String> {
    if !m.is_square() {
        return Some(format!(
            "{}x{} matrix is not square",
            m.n_rows(),
            m.n_cols()
        ));
    }
    let n = m.n_rows();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_negative() {
                return Some(format!(
                    "entry ({},{}) = {} is negative",
                    i + 1,
                    j + 1,
                    m.get(i, j)
                ));
            }
        }
    }
    for (i, row) in m.rows().enumerate() {
        let sum: Rational = row.iter().sum();
        if !sum.is_one() {
            return Some(format!("row {} sums to {sum}", i + 1));
        }
    }
    for j in 0..n {
        let sum: Rational = (0..n).map(|i| m.get(i, j)).sum();
        if !sum.is_one() {
            return Some(format!("column {} sums to {sum}", j + 1));
        }
    }
    None
}

/// Decides `m ∈ E·D_n` and names the failing condition otherwise.
pub fn check_membership(ideal: &IdealHandle, m: &Matrix) -> Result<Membership> {
    let n = ideal.n();
    if m.n_rows() != n || m.n_cols() != n {
        return Err(Error::dims(
            format!("{n}x{n}"),
            format!("{}x{}", m.n_rows(), m.n_cols()),
        ));
    }
    if let Some(reason) = stochastic_violation(m) {
        return Ok(Membership::NotDoublyStochastic { reason });
    }
    if ideal.idempotent().matrix().multiply(m)? == *m {
        return Ok(Membership::Member);
    }
    for (k, block) in ideal.generator.blocks().iter().enumerate() {
        let first = block[0];
        if let Some(&second) = block[1..].iter().find(|&&i| m.row(i) != m.row(first)) {
            return Ok(Membership::RowsDiffer {
                block: k,
                first,
                second,
            });
        }
    }
    Err(Error::Internal(
        "E·m differs from m although rows agree within blocks".into(),
    ))
}

pub fn contains_matrix(ideal: &IdealHandle, m: &Matrix) -> Result<bool> {
    Ok(check_membership(ideal, m)?.is_member())
}

/// `inner ⊆ outer`, i.e. the generator of `outer` refines that of `inner`.
pub fn contains_ideal(outer: &IdealHandle, inner: &IdealHandle) -> Result<bool> {
    refines(&outer.generator, &inner.generator)
}

/// Intersection of two ideals.
pub fn ideal_meet(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    Ok(IdealHandle::new(partition_join(
        &a.generator,
        &b.generator,
    )?))
}

/// Smallest idempotent-generated ideal containing both.
pub fn ideal_join(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    Ok(IdealHandle::new(partition_meet(
        &a.generator,
        &b.generator,
    )?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// The one-block ideal `{E}`.
    Single,
    /// A proper family with free rows.
    Family,
    /// All of D_n.
    Whole,
}

/// Symbolic shape of the members of `E·D_n`.
///
/// Members carry one representative stochastic row per generator block. The
/// rows of all blocks but the last are free; column sums force the last one:
/// `forced = (1 - Σ |B_j|·r_j) / |B_last|`, which must be entrywise
/// nonnegative. That constraint is tighter than `0 <= entries <= 1` on the
/// free rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescription {
    pub n: usize,
    pub label: String,
    pub kind: FamilyKind,
    /// Generator blocks, 0-based.
    pub blocks: Vec<Vec<usize>>,
    /// Indices into `blocks` whose representative row is free.
    pub free_blocks: Vec<usize>,
    /// Index into `blocks` of the row forced by the column sums.
    pub forced_block: usize,
    pub free_rows: usize,
    /// Number of real parameters: `free_rows · (n - 1)`.
    pub parameters: usize,
}

pub fn describe_family(ideal: &IdealHandle) -> FamilyDescription {
    let n = ideal.n();
    let k = ideal.rank();
    let kind = if k == 1 {
        FamilyKind::Single
    } else if k == n {
        FamilyKind::Whole
    } else {
        FamilyKind::Family
    };
    FamilyDescription {
        n,
        label: ideal.label(),
        kind,
        blocks: ideal.generator.blocks().to_vec(),
        free_blocks: (0..k - 1).collect(),
        forced_block: k - 1,
        free_rows: k - 1,
        parameters: (k - 1) * (n - 1),
    }
}

fn block_name(block: &[usize]) -> String {
    let items: Vec<String> = block.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", items.join(","))
}

impl fmt::Display for FamilyDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: String = self.blocks.iter().map(|b| block_name(b)).collect();
        writeln!(
            f,
            "{} in D_{}: generator blocks {}",
            self.label, self.n, blocks
        )?;
        match self.kind {
            FamilyKind::Single => {
                return write!(f, "  single member: every entry equals 1/{}", self.n);
            }
            FamilyKind::Whole => writeln!(f, "  the whole semigroup D_{}", self.n)?,
            FamilyKind::Family => {}
        }
        writeln!(
            f,
            "  one representative row per block; rows within a block identical; column sums force the remaining entries"
        )?;
        writeln!(
            f,
            "  free stochastic rows: {} ({} parameters)",
            self.free_rows, self.parameters
        )?;
        for (slot, &b) in self.free_blocks.iter().enumerate() {
            writeln!(
                f,
                "    r{} on rows {}",
                slot + 1,
                block_name(&self.blocks[b])
            )?;
        }
        let terms: Vec<String> = self
            .free_blocks
            .iter()
            .enumerate()
            .map(|(slot, &b)| match self.blocks[b].len() {
                1 => format!("r{}", slot + 1),
                s => format!("{s}·r{}", slot + 1),
            })
            .collect();
        let forced = &self.blocks[self.forced_block];
        write!(
            f,
            "  forced row on {}: (1 - {}) / {}, every entry >= 0",
            block_name(forced),
            terms.join(" - "),
            forced.len()
        )
    }
}

/// Builds the member of `ideal` with the given representative rows for the
/// free blocks (in block order); the last block's row is forced.
pub fn family_instance(ideal: &IdealHandle, free_rows: &[Vec<Rational>]) -> Result<Matrix> {
    let n = ideal.n();
    let blocks = ideal.generator.blocks();
    let k = blocks.len();
    if free_rows.len() != k - 1 {
        return Err(Error::dims(format!("{} free rows", k - 1), free_rows.len()));
    }
    if let Some(row) = free_rows.iter().find(|r| r.len() != n) {
        return Err(Error::dims(format!("rows of length {n}"), row.len()));
    }
    let last = &blocks[k - 1];
    let mut forced = vec![Rational::one(); n];
    for (row, block) in free_rows.iter().zip(blocks) {
        let weight = Rational::from_integer(block.len().into());
        for (x, r) in forced.iter_mut().zip(row) {
            *x -= &weight * r;
        }
    }
    let scale = Rational::from_integer(last.len().into()).recip();
    forced.iter_mut().for_each(|x| *x *= &scale);

    let mut m = Matrix::zeros(n, n);
    for (block, row) in blocks
        .iter()
        .zip(free_rows.iter().chain(std::iter::once(&forced)))
    {
        for &i in block {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
    }
    if !m.is_doubly_stochastic() {
        return Err(Error::NotDoublyStochastic);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::{random_doubly_stochastic, rat};

    fn ideal(n: usize, spec: &str) -> IdealHandle {
        IdealHandle::new(SetPartition::parse_one_based(n, spec).unwrap())
    }

    fn e21_family(a: Rational, b: Rational) -> Matrix {
        let one = Rational::one();
        let two = rat(2, 1);
        let top = vec![a.clone(), b.clone(), &one - &a - &b];
        let bottom = vec![
            &one - &two * &a,
            &one - &two * &b,
            -&one + &two * &a + &two * &b,
        ];
        Matrix::from_rows(vec![top.clone(), top, bottom]).unwrap()
    }

    #[test]
    fn handle_of_idempotent() {
        let e1 = idempotent_from_partition(&SetPartition::one_block(3));
        assert_eq!(ideal_of(&e1).rank(), 1);
        let e3 = idempotent_from_partition(&SetPartition::singletons(3));
        assert_eq!(ideal_of(&e3).generator(), &SetPartition::singletons(3));
        assert_eq!(ideal_of(&e3).idempotent(), e3);
    }

    #[test]
    fn membership_examples() {
        let i21 = ideal(3, "(1,2)");
        assert!(contains_matrix(&i21, &e21_family(rat(1, 4), rat(1, 4))).unwrap());
        assert!(contains_matrix(&i21, &e21_family(rat(1, 2), rat(1, 2))).unwrap());
        let outside = e21_family(rat(3, 5), rat(1, 4));
        assert!(!outside.is_doubly_stochastic());
        assert!(matches!(
            check_membership(&i21, &outside).unwrap(),
            Membership::NotDoublyStochastic { .. }
        ));
        for p in crate::partitions::enumerate_set_partitions(3) {
            assert!(contains_matrix(&IdealHandle::new(p), &Matrix::uniform(3)).unwrap());
        }
        let verdict = check_membership(&i21, &Matrix::identity(3)).unwrap();
        assert_eq!(
            verdict,
            Membership::RowsDiffer {
                block: 0,
                first: 0,
                second: 1
            }
        );
        assert_eq!(verdict.to_string(), "rows 1,2 differ (generator block 1)");
        assert!(check_membership(&i21, &Matrix::identity(4)).is_err());
    }

    #[test]
    fn containment_examples() {
        assert!(contains_ideal(&ideal(4, "(3,4)"), &ideal(4, "(1,2)(3,4)")).unwrap());
        let bottom = ideal(4, "(1,2,3,4)");
        for p in crate::partitions::enumerate_set_partitions(4) {
            assert!(contains_ideal(&IdealHandle::new(p), &bottom).unwrap());
        }
        let a = ideal(4, "(1,2)(3,4)");
        let b = ideal(4, "(1,3)(2,4)");
        assert!(!contains_ideal(&a, &b).unwrap());
        assert!(!contains_ideal(&b, &a).unwrap());
    }

    #[test]
    fn meet_and_join_examples() {
        assert_eq!(
            ideal_meet(&ideal(4, "(3,4)"), &ideal(4, "(1,2)")).unwrap(),
            ideal(4, "(1,2)(3,4)")
        );
        assert_eq!(
            ideal_meet(&ideal(4, "(1,2)(3,4)"), &ideal(4, "(1,3)(2,4)")).unwrap(),
            ideal(4, "(1,2,3,4)")
        );
        let a = ideal(4, "(1,3,4)");
        assert_eq!(ideal_meet(&a, &a).unwrap(), a);
        assert_eq!(
            ideal_join(&ideal(4, "(1,3,4)"), &ideal(4, "(1,2,4)")).unwrap(),
            ideal(4, "(1,4)")
        );
        assert_eq!(
            ideal_join(&ideal(4, "(3,4)"), &ideal(4, "(1,2)")).unwrap(),
            ideal(4, "")
        );
        assert_eq!(
            ideal_join(&ideal(4, "(1,2)(3,4)"), &ideal(4, "(3,4)")).unwrap(),
            ideal(4, "(3,4)")
        );
        assert!(ideal_join(&ideal(4, "(3,4)"), &ideal(3, "(1,2)")).is_err());
    }

    #[test]
    fn family_descriptions() {
        let d = describe_family(&ideal(3, "(1,2)"));
        assert_eq!(d.kind, FamilyKind::Family);
        assert_eq!(d.free_rows, 1);
        assert_eq!(d.parameters, 2);
        assert_eq!(d.blocks, vec![vec![0, 1], vec![2]]);
        assert_eq!(d.forced_block, 1);
        let text = d.to_string();
        assert!(text.contains("forced row on (3): (1 - 2·r1) / 1"), "{text}");

        let single = describe_family(&ideal(3, "(1,2,3)"));
        assert_eq!(single.kind, FamilyKind::Single);
        assert_eq!(single.free_rows, 0);
        assert!(single.to_string().contains("single member"));

        let whole = describe_family(&ideal(3, ""));
        assert_eq!(whole.kind, FamilyKind::Whole);
        assert_eq!(whole.parameters, 4);

        assert_eq!(describe_family(&ideal(4, "(3,4)")).parameters, 6);
        assert_eq!(describe_family(&ideal(4, "(1,2)(3,4)")).parameters, 3);
    }

    #[test]
    fn instances_of_family() {
        let i = ideal(3, "(1,2)");
        let m = family_instance(&i, &[vec![rat(1, 4), rat(1, 4), rat(1, 2)]]).unwrap();
        assert_eq!(m, e21_family(rat(1, 4), rat(1, 4)));
        assert_eq!(
            family_instance(&i, &[vec![rat(3, 5), rat(1, 4), rat(3, 20)]]),
            Err(Error::NotDoublyStochastic)
        );
        assert_eq!(
            family_instance(&ideal(3, "(1,2,3)"), &[]).unwrap(),
            Matrix::uniform(3)
        );
        assert!(family_instance(&i, &[]).is_err());
    }

    #[test]
    fn products_with_generator_are_members() {
        for p in crate::partitions::enumerate_set_partitions(3) {
            let i = IdealHandle::new(p);
            let e = i.idempotent();
            for seed in 0..25 {
                let x = random_doubly_stochastic(3, seed, 3);
                let m = e.matrix().multiply(&x).unwrap();
                assert!(contains_matrix(&i, &m).unwrap());
            }
        }
    }

    #[test]
    fn json_form() {
        let i = ideal(4, "(1,2)(3,4)");
        let text = serde_json::to_string(&i).unwrap();
        assert_eq!(text, r#"{"n":4,"generator":{"blocks":[[0,1],[2,3]]}}"#);
        assert_eq!(serde_json::from_str::<IdealHandle>(&text).unwrap(), i);
        assert_eq!(i.label(), "I^2_{(1,2),(3,4)}");
    }
}
