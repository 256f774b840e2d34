//! The six semiclassical-limit families with their iterated-extension data,
//! torus data and expected quadratic normal forms.
//!
//! Every constructor assembles the bracket twice, once from the step data
//! (alpha and delta tables) and once from the closed bracket formulas, and
//! refuses to return an instance when the two disagree.

mod families;
mod golden;
mod params;
mod random;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poisson::{ppa_to_table, GeneratorBracketTable, IteratedPPASpec, QuadraticSpec};
use crate::torus::TorusData;

pub use golden::{golden_suite, GoldenCase};
pub use params::FamilyParams;
pub use random::{draw_params, random_params, random_rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Affine,
    Matrices,
    SymplecticEuclidean,
    OddEuclidean,
    Symmetric,
    Antisymmetric,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Affine,
        Family::Matrices,
        Family::SymplecticEuclidean,
        Family::OddEuclidean,
        Family::Symmetric,
        Family::Antisymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Affine => "affine",
            Family::Matrices => "matrices",
            Family::SymplecticEuclidean => "symplectic_euclidean",
            Family::OddEuclidean => "odd_euclidean",
            Family::Symmetric => "symmetric",
            Family::Antisymmetric => "antisymmetric",
        }
    }

    /// Upper bound on the nilpotency index of each delta on generators.
    pub fn nilpotency_bound(self) -> usize {
        match self {
            Family::Affine => 1,
            Family::Symmetric => 3,
            _ => 2,
        }
    }

    /// Number of generators at size `n`.
    pub fn generator_count(self, n: usize) -> usize {
        match self {
            Family::Affine => n,
            Family::Matrices => n * n,
            Family::SymplecticEuclidean => 2 * n,
            Family::OddEuclidean => 2 * n + 1,
            Family::Symmetric => n * (n + 1) / 2,
            Family::Antisymmetric => n * n.saturating_sub(1) / 2,
        }
    }

    /// Whether the torus data meets the nonzero-eigenvalue hypothesis.
    pub fn torus_hypotheses_hold(self) -> bool {
        self != Family::Affine
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown family {s:?}")))
    }
}

/// A family member at concrete parameters.
#[derive(Clone, Debug)]
pub struct CatalogInstance {
    pub params: FamilyParams,
    pub spec: IteratedPPASpec,
    pub table: GeneratorBracketTable,
    pub torus: TorusData,
    pub expected_lambda: QuadraticSpec,
}

/// Builds the instance and cross-checks the step data against the closed
/// bracket formulas.
pub fn build(params: &FamilyParams) -> Result<CatalogInstance> {
    params.validate()?;
    let draft = families::draft(params)?;
    let table = ppa_to_table(&draft.spec);
    let n = table.n();
    for i in 0..n {
        for j in 0..i {
            let (a, b) = (table.get(i, j), draft.direct.get(i, j));
            if a != b {
                let names = draft.spec.names();
                return Err(Error::CatalogMismatch {
                    family: params.family().name().into(),
                    detail: format!(
                        "{{{}, {}}}: step data give {} but the bracket formula gives {}",
                        names[i],
                        names[j],
                        a.display_with(names),
                        b.display_with(names)
                    ),
                });
            }
        }
    }
    Ok(CatalogInstance {
        params: params.clone(),
        spec: draft.spec,
        table,
        torus: draft.torus,
        expected_lambda: draft.expected,
    })
}

#[cfg(test)]
mod tests;
