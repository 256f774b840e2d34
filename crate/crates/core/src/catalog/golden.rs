use num_traits::Zero;

use crate::catalog::{build, FamilyParams};
use crate::error::Result;
use crate::exactalg::{int, rat, Rational};
use crate::poisson::QuadraticSpec;

/// A fixed family member with its expected normal form.
#[derive(Clone, Debug)]
pub struct GoldenCase {
    pub label: String,
    pub params: FamilyParams,
    pub expected_lambda: QuadraticSpec,
}

fn antisym(upper: &[(usize, usize, Rational)], n: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (i, j, v) in upper {
        m[*j][*i] = -v.clone();
        m[*i][*j] = v.clone();
    }
    m
}

fn fixtures() -> Vec<(&'static str, FamilyParams)> {
    vec![
        ("affine n=2", FamilyParams::Affine { q: antisym(&[(0, 1, rat(3, 4))], 2) }),
        (
            "affine n=3",
            FamilyParams::Affine { q: antisym(&[(0, 1, int(2)), (0, 2, rat(-1, 3)), (1, 2, int(5))], 3) },
        ),
        ("matrices n=2, p=0, lambda=1", FamilyParams::Matrices { lambda: int(1), p: antisym(&[], 2) }),
        (
            "matrices n=2, p12=1/2, lambda=-3",
            FamilyParams::Matrices { lambda: int(-3), p: antisym(&[(0, 1, rat(1, 2))], 2) },
        ),
        (
            "matrices n=3",
            FamilyParams::Matrices {
                lambda: rat(2, 5),
                p: antisym(&[(0, 1, int(1)), (0, 2, rat(-2, 3)), (1, 2, int(4))], 3),
            },
        ),
        (
            "symplectic_euclidean n=2",
            FamilyParams::SymplecticEuclidean {
                gamma: antisym(&[(0, 1, rat(1, 3))], 2),
                p: vec![int(1), rat(-1, 2)],
                q: vec![int(2), int(3)],
            },
        ),
        (
            "odd_euclidean n=1",
            FamilyParams::OddEuclidean {
                gamma: antisym(&[], 1),
                p: vec![int(3)],
                q: vec![rat(1, 2)],
                lambda: int(1),
            },
        ),
        (
            "odd_euclidean n=2",
            FamilyParams::OddEuclidean {
                gamma: antisym(&[(0, 1, int(-2))], 2),
                p: vec![int(1), rat(5, 7)],
                q: vec![int(-1), int(2)],
                lambda: rat(-4, 3),
            },
        ),
        ("symmetric n=2", FamilyParams::Symmetric { n: 2 }),
        ("symmetric n=3", FamilyParams::Symmetric { n: 3 }),
        ("antisymmetric n=3", FamilyParams::Antisymmetric { n: 3 }),
        ("antisymmetric n=4", FamilyParams::Antisymmetric { n: 4 }),
    ]
}

/// Fixed instances of every family with the normal form the catalog
/// predicts for them.
pub fn golden_suite() -> Result<Vec<GoldenCase>> {
    fixtures()
        .into_iter()
        .map(|(label, params)| {
            let inst = build(&params)?;
            Ok(GoldenCase { label: label.to_string(), params, expected_lambda: inst.expected_lambda })
        })
        .collect()
}
