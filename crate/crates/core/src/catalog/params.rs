use num_traits::Zero;

use crate::catalog::Family;
use crate::error::{Error, Result};
use crate::exactalg::{format_rational, Rational};

/// Parameters of one family member. Matrix parameters are antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyParams {
    /// `{x_i, x_j} = q_ij x_i x_j`.
    Affine { q: Vec<Vec<Rational>> },
    /// `n x n` matrices with `lambda != 0`.
    Matrices { lambda: Rational, p: Vec<Vec<Rational>> },
    /// Generators `x_1, y_1, ..., x_n, y_n`; requires `p_i != q_i`.
    SymplecticEuclidean {
        gamma: Vec<Vec<Rational>>,
        p: Vec<Rational>,
        q: Vec<Rational>,
    },
    /// Generators `z_0, x_1, y_1, ..., x_n, y_n`; requires `p_i != q_i`.
    OddEuclidean {
        gamma: Vec<Vec<Rational>>,
        p: Vec<Rational>,
        q: Vec<Rational>,
        lambda: Rational,
    },
    Symmetric { n: usize },
    Antisymmetric { n: usize },
}

fn check_antisymmetric(name: &str, m: &[Vec<Rational>], n: usize) -> Result<()> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidParameters(format!("{name} must be {n} x {n}")));
    }
    for i in 0..n {
        for j in 0..=i {
            if m[i][j] != -m[j][i].clone() {
                return Err(Error::InvalidParameters(format!(
                    "{name} is not antisymmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn check_pq(p: &[Rational], q: &[Rational], n: usize) -> Result<()> {
    if p.len() != n || q.len() != n {
        return Err(Error::InvalidParameters(format!("P and Q must have length {n}")));
    }
    if let Some(i) = (0..n).find(|&i| p[i] == q[i]) {
        return Err(Error::InvalidParameters(format!(
            "p_{} = q_{} = {}",
            i + 1,
            i + 1,
            format_rational(&p[i])
        )));
    }
    Ok(())
}

impl FamilyParams {
    pub fn family(&self) -> Family {
        match self {
            FamilyParams::Affine { .. } => Family::Affine,
            FamilyParams::Matrices { .. } => Family::Matrices,
            FamilyParams::SymplecticEuclidean { .. } => Family::SymplecticEuclidean,
            FamilyParams::OddEuclidean { .. } => Family::OddEuclidean,
            FamilyParams::Symmetric { .. } => Family::Symmetric,
            FamilyParams::Antisymmetric { .. } => Family::Antisymmetric,
        }
    }

    /// The size parameter `n`.
    pub fn n(&self) -> usize {
        match self {
            FamilyParams::Affine { q } => q.len(),
            FamilyParams::Matrices { p, .. } => p.len(),
            FamilyParams::SymplecticEuclidean { p, .. } | FamilyParams::OddEuclidean { p, .. } => p.len(),
            FamilyParams::Symmetric { n } | FamilyParams::Antisymmetric { n } => *n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let min = match self.family() {
            Family::Antisymmetric => 2,
            _ => 1,
        };
        if n < min {
            return Err(Error::InvalidParameters(format!(
                "{} needs n >= {min}",
                self.family()
            )));
        }
        match self {
            FamilyParams::Affine { q } => check_antisymmetric("q", q, n),
            FamilyParams::Matrices { lambda, p } => {
                if lambda.is_zero() {
                    return Err(Error::InvalidParameters(
                        "lambda = 0 is the affine family; matrices need lambda != 0".into(),
                    ));
                }
                check_antisymmetric("p", p, n)
            }
            FamilyParams::SymplecticEuclidean { gamma, p, q }
            | FamilyParams::OddEuclidean { gamma, p, q, .. } => {
                check_antisymmetric("gamma", gamma, n)?;
                check_pq(p, q, n)
            }
            FamilyParams::Symmetric { .. } | FamilyParams::Antisymmetric { .. } => Ok(()),
        }
    }
}
