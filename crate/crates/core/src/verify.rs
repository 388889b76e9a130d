//! Reproduction harness: every reference object and identity for D_3 and
//! D_4, plus exhaustive small-n checks, run against the library.
//!
//! Checks never stop at the first failure; each one reports its own status
//! and the first identity it found violated.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, FamilyFixture, LatticeOp, OpIdentity};
use crate::green::{
    same_shape_d_witness, search_block_witness, verify_d_witness, BlockWitnessSearch,
};
use crate::ideals::{check_membership, ideal_join, ideal_meet, IdealHandle, Membership};
use crate::idempotents::{enumerate_idempotents, idempotent_from_partition, partition_from_matrix};
use crate::lattice::{build_lattice, verify_lattice_laws};
use crate::partitions::{
    bell_number, count_idempotents, count_idempotents_of_shape, enumerate_int_shapes,
    enumerate_set_partitions, shape_of, stirling_second_kind, IntShape, SetPartition,
};
use crate::ratmat::{irreducible_components, sample_doubly_stochastic, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_n: 4, seed: 7 }
    }
}

/// `(parts, count)` rows for one n.
pub type ShapeCounts = Vec<(Vec<usize>, u64)>;

/// Reference objects the suite compares against. [`Default`] loads the
/// transcribed catalogs; tests may corrupt a copy to exercise failure paths.
#[derive(Debug, Clone)]
pub struct ReferenceData {
    pub d3: Vec<CatalogEntry>,
    pub d4: Vec<CatalogEntry>,
    pub shape_counts: Vec<(usize, ShapeCounts)>,
    pub identities: Vec<OpIdentity>,
    pub families: Vec<FamilyFixture>,
    /// Matrices asserted stochastic but not doubly stochastic.
    pub stochastic_only: Vec<Matrix>,
    pub doubly_stochastic: Vec<Matrix>,
}

impl Default for ReferenceData {
    fn default() -> Self {
        ReferenceData {
            d3: catalog::d3_catalog(),
            d4: catalog::d4_catalog(),
            shape_counts: vec![
                (3, vec![(vec![3], 1), (vec![2, 1], 3), (vec![1, 1, 1], 1)]),
                (
                    4,
                    vec![
                        (vec![4], 1),
                        (vec![3, 1], 4),
                        (vec![2, 2], 3),
                        (vec![2, 1, 1], 6),
                        (vec![1, 1, 1, 1], 1),
                    ],
                ),
            ],
            identities: catalog::d4_identities(),
            families: catalog::families(),
            stochastic_only: vec![Matrix::from_fractions(&[
                &[(1, 2), (1, 2), (0, 1)],
                &[(1, 1), (0, 1), (0, 1)],
                &[(1, 4), (1, 4), (1, 2)],
            ])
            .expect("valid")],
            doubly_stochastic: vec![Matrix::from_fractions(&[
                &[(1, 2), (1, 2), (0, 1)],
                &[(0, 1), (0, 1), (1, 1)],
                &[(1, 2), (1, 2), (0, 1)],
            ])
            .expect("valid")],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Check = std::result::Result<String, String>;

pub fn run_suite(config: &VerifyConfig, reference: &ReferenceData) -> VerifyReport {
    let mut checks = Vec::new();
    let mut record = |id, name, outcome: Check| {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckOutcome {
            id,
            name,
            passed,
            detail,
        });
    };
    record("AC1", "counting", counting(config, reference));
    record("AC2", "catalog reproduction", catalogs(config, reference));
    record("AC3", "rank law", rank_law(config));
    record("AC4", "ideal families", ideal_families(config, reference));
    record("AC5", "meet/join identities", identities(config, reference));
    record("AC6", "lattice laws", lattice_laws(config));
    record("AC7", "absorption", absorption(config));
    record("AC8", "irreducibility", irreducibility(config));
    record("AC9", "D-witnesses", witnesses(config));
    record("AC10", "closure and predicates", closure(config, reference));
    VerifyReport {
        max_n: config.max_n,
        seed: config.seed,
        checks,
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counting(config: &VerifyConfig, reference: &ReferenceData) -> Check {
    let top = config.max_n.min(10);
    for n in 1..=top {
        let formula = count_idempotents(n);
        let bell = bell_number(n);
        let listed = enumerate_set_partitions(n).count();
        ensure(formula == bell && bell == BigUint::from(listed), || {
            format!("n={n}: formula {formula}, Bell {bell}, enumerated {listed}")
        })?;
    }
    let mut shapes_checked = 0;
    for (n, rows) in reference
        .shape_counts
        .iter()
        .filter(|(n, _)| *n <= config.max_n)
    {
        let listed: Vec<IntShape> = enumerate_int_shapes(*n);
        ensure(listed.len() == rows.len(), || {
            format!("n={n}: {} shapes listed", listed.len())
        })?;
        for (parts, count) in rows {
            let shape = IntShape::from_parts(parts.clone()).map_err(|e| e.to_string())?;
            ensure(listed.contains(&shape), || {
                format!("shape {shape} missing for n={n}")
            })?;
            let got = count_idempotents_of_shape(&shape);
            ensure(got == BigUint::from(*count), || {
                format!("n={n}, shape {shape}: {got} idempotents, expected {count}")
            })?;
            shapes_checked += 1;
        }
    }
    Ok(format!(
        "n <= {top} agree with Bell numbers; {shapes_checked} per-shape counts"
    ))
}

fn catalog_matches(n: usize, entries: &[CatalogEntry]) -> std::result::Result<(), String> {
    let generated: Vec<Matrix> = enumerate_idempotents(n)
        .map(|e| e.matrix().clone())
        .collect();
    ensure(entries.len() == generated.len(), || {
        format!(
            "D_{n}: catalog has {} matrices, enumeration {}",
            entries.len(),
            generated.len()
        )
    })?;
    for entry in entries {
        let hits = generated.iter().filter(|m| **m == entry.matrix).count();
        ensure(hits == 1, || {
            format!(
                "D_{n} {} found {hits} times among enumerated idempotents",
                entry.label
            )
        })?;
        let expected = catalog::label_partition(n, entry.label)
            .ok_or_else(|| format!("D_{n}: unknown label {}", entry.label))?;
        let got = partition_from_matrix(&entry.matrix)
            .map_err(|e| format!("D_{n} {}: {e}", entry.label))?;
        ensure(got == expected, || {
            format!(
                "D_{n} {}: partition {got}, expected {expected}",
                entry.label
            )
        })?;
    }
    Ok(())
}

fn catalogs(config: &VerifyConfig, reference: &ReferenceData) -> Check {
    let mut done = Vec::new();
    if config.max_n >= 3 {
        catalog_matches(3, &reference.d3)?;
        done.push("D_3 (5)");
    }
    if config.max_n >= 4 {
        catalog_matches(4, &reference.d4)?;
        done.push("D_4 (15)");
    }
    Ok(if done.is_empty() {
        "skipped (max-n < 3)".into()
    } else {
        format!("{} match the enumeration exactly", done.join(", "))
    })
}

fn rank_law(config: &VerifyConfig) -> Check {
    let top = config.max_n.min(6);
    let mut count = 0;
    for n in 1..=top {
        for e in enumerate_idempotents(n) {
            let r = e.matrix().rank();
            ensure(r == e.partition().num_blocks(), || {
                format!(
                    "n={n}, {}: rank {r} but {} blocks",
                    e.partition(),
                    e.partition().num_blocks()
                )
            })?;
            count += 1;
        }
        ensure(
            Matrix::uniform(n).rank() == 1 && Matrix::identity(n).rank() == n,
            || format!("n={n}: rank(all-1/n) or rank(I) wrong"),
        )?;
    }
    Ok(format!(
        "{count} idempotents with n <= {top}; all-1/n has rank 1, identity rank n"
    ))
}

fn ideal_families(config: &VerifyConfig, reference: &ReferenceData) -> Check {
    let mut instances = 0;
    let mut families = 0;
    for fam in reference.families.iter().filter(|f| f.n <= config.max_n) {
        let generator = catalog::label_partition(fam.n, fam.label)
            .ok_or_else(|| format!("D_{}: unknown label {}", fam.n, fam.label))?;
        let ideal = IdealHandle::new(generator);
        let e = ideal.idempotent();
        let grid = catalog::feasible_grid(fam, 40);
        ensure(grid.len() >= 10, || {
            format!(
                "{} D_{}: only {} feasible points",
                fam.label,
                fam.n,
                grid.len()
            )
        })?;
        for point in &grid {
            let m = (fam.build)(point);
            let verdict = check_membership(&ideal, &m).map_err(|e| e.to_string())?;
            ensure(verdict == Membership::Member, || {
                format!(
                    "{} D_{} at {:?}: {verdict}",
                    fam.label,
                    fam.n,
                    point.iter().map(ToString::to_string).collect::<Vec<_>>()
                )
            })?;
            let fixed = e.matrix().multiply(&m).map_err(|e| e.to_string())?;
            ensure(fixed == m, || {
                format!("{} D_{}: E·m differs from m", fam.label, fam.n)
            })?;
            instances += 1;
        }
        families += 1;
    }
    Ok(format!(
        "{families} families, {instances} exact instantiations"
    ))
}

fn identities(config: &VerifyConfig, reference: &ReferenceData) -> Check {
    if config.max_n < 4 {
        return Ok("skipped (max-n < 4)".into());
    }
    let handle = |label: &str| {
        catalog::label_partition(4, label)
            .map(IdealHandle::new)
            .ok_or_else(|| format!("unknown label {label}"))
    };
    for id in &reference.identities {
        let (a, b, expected) = (handle(&id.left)?, handle(&id.right)?, handle(&id.result)?);
        let got = match id.op {
            LatticeOp::Meet => ideal_meet(&a, &b),
            LatticeOp::Join => ideal_join(&a, &b),
        }
        .map_err(|e| e.to_string())?;
        ensure(got == expected, || {
            format!("{} fails: got {}", id.display(), got.label())
        })?;
        for (h, notation) in [&a, &b, &expected].into_iter().zip(&id.notation) {
            ensure(h.label() == *notation, || {
                format!("{}: label {} vs {notation}", id.display(), h.label())
            })?;
        }
    }
    Ok(format!(
        "{} identities hold exactly",
        reference.identities.len()
    ))
}

fn lattice_laws(config: &VerifyConfig) -> Check {
    let top = config.max_n.min(5);
    let mut details = Vec::new();
    for n in 1..=top {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        let report = verify_lattice_laws(&l);
        ensure(report.passed(), || {
            format!("n={n}: {:?}", report.violations.first())
        })?;
        details.push(format!("n={n}: {} nodes", report.nodes));
    }
    let stirling_top = config.max_n.min(8);
    for n in 1..=stirling_top {
        let l = build_lattice(n).map_err(|e| e.to_string())?;
        for (&k, &size) in l.level_sizes() {
            let s = stirling_second_kind(n, k);
            ensure(BigUint::from(size) == s, || {
                format!("n={n}, k={k}: {size} nodes, S(n,k) = {s}")
            })?;
        }
    }
    Ok(format!(
        "{}; level sizes = S(n,k) for n <= {stirling_top}",
        details.join(", ")
    ))
}

fn absorption(config: &VerifyConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut done = 0;
    for n in [3, 4].into_iter().filter(|&n| n <= config.max_n) {
        let a = Matrix::uniform(n);
        for _ in 0..100 {
            let d = sample_doubly_stochastic(&mut rng, n, 4);
            let left = a.multiply(&d).map_err(|e| e.to_string())?;
            let right = d.multiply(&a).map_err(|e| e.to_string())?;
            ensure(left == a && right == a, || {
                format!("n={n}: A·D = A = D·A fails for\n{d}")
            })?;
            done += 1;
        }
    }
    Ok(format!("{done} samples"))
}

fn irreducibility(config: &VerifyConfig) -> Check {
    let top = config.max_n.min(5);
    for n in 1..=top {
        let mut irreducible = Vec::new();
        for e in enumerate_idempotents(n) {
            let d = irreducible_components(e.matrix()).map_err(|err| err.to_string())?;
            ensure(d.reassemble() == *e.matrix(), || {
                format!("n={n}, {}: round trip fails", e.partition())
            })?;
            ensure(d.blocks.len() == e.partition().num_blocks(), || {
                format!("n={n}, {}: {} components", e.partition(), d.blocks.len())
            })?;
            if d.blocks.len() == 1 {
                irreducible.push(e.matrix().clone());
            }
        }
        ensure(irreducible == vec![Matrix::uniform(n)], || {
            format!("n={n}: {} irreducible idempotents", irreducible.len())
        })?;
    }
    Ok(format!("n <= {top}: only all-1/n is irreducible"))
}

fn witnesses(config: &VerifyConfig) -> Check {
    let top = config.max_n.min(4);
    let mut pairs = 0;
    for n in 1..=top {
        let all: Vec<_> = enumerate_idempotents(n).collect();
        for e in &all {
            for f in all
                .iter()
                .filter(|f| shape_of(f.partition()) == shape_of(e.partition()))
            {
                let w = same_shape_d_witness(e, f).map_err(|err| err.to_string())?;
                let ok = verify_d_witness(&w, e, f).map_err(|err| err.to_string())?;
                ensure(ok, || {
                    format!(
                        "n={n}: witness for {} ~ {} rejected",
                        e.partition(),
                        f.partition()
                    )
                })?;
                ensure(e.matrix().rank() == f.matrix().rank(), || {
                    "witnessed pair with different ranks".into()
                })?;
                pairs += 1;
            }
        }
    }
    let mut detail = format!("{pairs} same-shape pairs verified");
    if config.max_n >= 4 {
        let e = idempotent_from_partition(
            &SetPartition::parse_one_based(4, "(1,2)(3,4)").expect("valid"),
        );
        let f =
            idempotent_from_partition(&SetPartition::parse_one_based(4, "(2,3,4)").expect("valid"));
        match search_block_witness(&e, &f).map_err(|err| err.to_string())? {
            BlockWitnessSearch::Infeasible {
                support_pairs,
                surviving_patterns,
            } => detail.push_str(&format!(
                "; E_2^1 vs E_2^4: no normalized witness ({support_pairs} support pairs, {surviving_patterns} pass the product pattern)"
            )),
            other => detail.push_str(&format!("; E_2^1 vs E_2^4: {other:?}")),
        }
    }
    Ok(detail)
}

fn closure(config: &VerifyConfig, reference: &ReferenceData) -> Check {
    for m in &reference.stochastic_only {
        ensure(m.is_stochastic() && !m.is_doubly_stochastic(), || {
            format!("expected stochastic only:\n{m}")
        })?;
    }
    for m in &reference.doubly_stochastic {
        ensure(m.is_doubly_stochastic(), || {
            format!("expected doubly stochastic:\n{m}")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let top = config.max_n.max(1);
    for i in 0..1000 {
        let n = 1 + i % top;
        let a = sample_doubly_stochastic(&mut rng, n, 3);
        let b = sample_doubly_stochastic(&mut rng, n, 3);
        let ab = a.multiply(&b).map_err(|e| e.to_string())?;
        ensure(ab.is_doubly_stochastic(), || {
            format!("product not doubly stochastic:\n{ab}")
        })?;
    }
    Ok("1000 sampled products doubly stochastic; reference matrices classified".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmat::rat;

    #[test]
    fn default_suite_passes() {
        let report = run_suite(&VerifyConfig::default(), &ReferenceData::default());
        for c in &report.checks {
            assert!(c.passed, "{} {}: {}", c.id, c.name, c.detail);
        }
        assert_eq!(report.checks.len(), 10);
    }

    #[test]
    fn trivial_subset_passes() {
        let report = run_suite(
            &VerifyConfig { max_n: 1, seed: 0 },
            &ReferenceData::default(),
        );
        assert!(report.passed());
    }

    #[test]
    fn corrupted_catalog_fails() {
        let mut reference = ReferenceData::default();
        reference.d4[9].matrix.set(0, 0, rat(1, 3));
        let report = run_suite(&VerifyConfig::default(), &reference);
        let failed: Vec<_> = report.failures().map(|c| c.id).collect();
        assert_eq!(failed, ["AC2"]);
        assert!(
            report.checks[1].detail.contains("E_3^2"),
            "{}",
            report.checks[1].detail
        );
    }

    #[test]
    fn corrupted_identity_fails() {
        let mut reference = ReferenceData::default();
        reference.identities[5].result = "E_3^5".into();
        let report = run_suite(&VerifyConfig::default(), &reference);
        assert!(!report.passed());
        let c = report.failures().next().unwrap();
        assert_eq!(c.id, "AC5");
        assert!(
            c.detail.contains("<E_2^5> ∨ <E_2^6> = <E_3^5>"),
            "{}",
            c.detail
        );
    }
}
