//! Exact computations on the semigroup D_n of n×n doubly stochastic matrices:
//! its idempotents, the principal ideals they generate, and the lattice those
//! ideals form.
//!
//! All arithmetic is over exact rationals. Idempotents are keyed by set
//! partitions of `{0, .., n-1}`: the idempotent of a partition averages over
//! each block.

pub mod catalog;
pub mod error;
pub mod green;
pub mod ideals;
pub mod idempotents;
pub mod io;
pub mod lattice;
pub mod partitions;
pub mod ratmat;
pub mod verify;

pub use error::{Error, Result};
pub use green::{
    d_witness, find_conjugating_permutation, same_shape_d_witness, search_block_witness,
    verify_d_witness, BlockWitnessSearch, DWitness,
};
pub use ideals::{
    check_membership, contains_ideal, contains_matrix, describe_family, family_instance,
    ideal_join, ideal_meet, ideal_of, FamilyDescription, FamilyKind, IdealHandle, Membership,
};
pub use idempotents::{
    canonical_block_form, enumerate_idempotents, idempotent_from_matrix, idempotent_from_partition,
    is_idempotent, partition_from_matrix, Idempotent,
};
pub use lattice::{
    build_lattice, export_dot, meet_join_table, verify_lattice_laws, IdealLattice, LawReport,
};
pub use partitions::{
    bell_number, count_idempotents, count_idempotents_of_shape, enumerate_int_shapes,
    enumerate_set_partitions, partition_join, partition_meet, refines, shape_of,
    stirling_second_kind, IntShape, SetPartition,
};
pub use ratmat::{
    conjugate_by_permutation, irreducible_components, random_doubly_stochastic, Decomposition,
    Matrix, Permutation, Rational,
};
