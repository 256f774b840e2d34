//! Invariants and decision procedures for quadratic Poisson fields.
//!
//! A field `k_lambda(x_1, ..., x_n)` is determined by an antisymmetric
//! matrix whose entries live in the additive group of `k`. Entries are
//! modelled as [`ScalarVector`](crate::ScalarVector)s so that Z-linearly
//! independent constants can be represented by formal symbols.

mod decide;
mod matrix;
mod normal_form;
mod structure;

pub use decide::{
    check_mutual_witnesses, decide_iso_2x2, decide_iso_case_b, orbit_membership_bounded, verify_no_weyl_pair,
    witness_isomorphism, IsoDecision, IsomorphismWitness, MutualWitnessReport, NoWeylReport, OrbitSearch,
    OrbitVerdict, PairCheck, MAX_ORBIT_CANDIDATES,
};
pub use matrix::{apply_congruence, SkewMatrix};
pub use normal_form::{skew_normal_form, NormalFormResult};
pub use structure::{rational_structure, GroupKind, RationalStructure};
