//! Poisson structures given by generator data.
//!
//! A structure is either an [`IteratedPPASpec`] (derivation data per
//! adjunction step) or directly a [`GeneratorBracketTable`]; brackets of
//! arbitrary elements are evaluated through the unique biderivation
//! extension of the table.

mod derivation;
mod lattice;
mod quadratic;
mod spec;
mod table;
mod verify;

pub use derivation::Derivation;
pub use lattice::{center_lattice, Lattice};
pub use quadratic::QuadraticSpec;
pub use spec::{default_names, ppa_to_table, IteratedPPASpec, Step};
pub use table::{GeneratorBracketTable, Mode};
pub use verify::{
    is_poisson_variable_ideal, verify_jacobi, verify_step_condition, JacobiFailure, JacobiReport,
    StepCheck, StepFailure, StepReport,
};
