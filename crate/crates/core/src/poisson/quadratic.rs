use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{GeneratorBracketTable, Mode};

/// Antisymmetric matrix `lambda` of the structure `{x_i, x_j} = lambda_ij x_i x_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSpec {
    lambda: Vec<Vec<Rational>>,
}

impl QuadraticSpec {
    pub fn new(lambda: Vec<Vec<Rational>>) -> Result<Self> {
        let n = lambda.len();
        for (i, row) in lambda.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {} has length {}, expected {n}", i + 1, row.len())));
            }
        }
        for i in 0..n {
            for j in 0..=i {
                if lambda[i][j] != -lambda[j][i].clone() {
                    return Err(Error::Shape(format!(
                        "lambda is not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(QuadraticSpec { lambda })
    }

    pub fn zero(n: usize) -> Self {
        QuadraticSpec { lambda: vec![vec![Rational::zero(); n]; n] }
    }

    /// Fills the antisymmetric matrix from `f(i, j)` evaluated for `i > j`.
    pub fn from_lower<F>(n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Rational,
    {
        let mut q = Self::zero(n);
        for i in 0..n {
            for j in 0..i {
                let v = f(i, j);
                q.lambda[j][i] = -v.clone();
                q.lambda[i][j] = v;
            }
        }
        q
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.lambda[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.lambda
    }

    /// Relabels so that new generator `a` is old generator `perm[a]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let n = self.n();
        QuadraticSpec {
            lambda: (0..n)
                .map(|a| (0..n).map(|b| self.lambda[perm[a]][perm[b]].clone()).collect())
                .collect(),
        }
    }

    pub fn to_table(&self, mode: Mode) -> GeneratorBracketTable {
        let n = self.n();
        GeneratorBracketTable::from_fn(n, mode, |i, j| {
            let e = ExponentVector::unit(n, i).add(&ExponentVector::unit(n, j));
            LaurentPolynomial::monomial(e, self.lambda[i][j].clone())
        })
        .expect("monomial entries are polynomial")
    }

    /// `{x^a, x^b} = (a lambda b^T) x^{a+b}`.
    pub fn monomial_bracket(&self, a: &ExponentVector, b: &ExponentVector) -> LaurentPolynomial {
        LaurentPolynomial::monomial(a.add(b), a.form(&self.lambda, b))
    }

    /// Bracket assembled term by term from [`Self::monomial_bracket`].
    pub fn bracket_termwise(&self, f: &LaurentPolynomial, g: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.n());
        for (a, ca) in f.terms() {
            for (b, cb) in g.terms() {
                let c = ca * cb;
                out = &out + &self.monomial_bracket(a, b).scale(&c);
            }
        }
        out
    }

    /// `{f,g} = sum_{i,j} lambda_ij (x_i df/dx_i)(x_j dg/dx_j)`.
    pub fn bracket(&self, f: &LaurentPolynomial, g: &LaurentPolynomial) -> LaurentPolynomial {
        let n = self.n();
        let ef: Vec<_> = (0..n).map(|i| f.scaled_partial(i)).collect();
        let eg: Vec<_> = (0..n).map(|j| g.scaled_partial(j)).collect();
        let mut out = LaurentPolynomial::zero(n);
        for i in 0..n {
            if ef[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if self.lambda[i][j].is_zero() || eg[j].is_zero() {
                    continue;
                }
                out = &out + &(&ef[i] * &eg[j]).scale(&self.lambda[i][j]);
            }
        }
        out
    }
}

impl fmt::Display for QuadraticSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.lambda {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn rejects_non_antisymmetric() {
        assert!(QuadraticSpec::new(vec![vec![int(0), int(1)], vec![int(1), int(0)]]).is_err());
        assert!(QuadraticSpec::new(vec![vec![int(1)]]).is_err());
        assert!(QuadraticSpec::new(vec![vec![int(0), int(1)]]).is_err());
    }

    #[test]
    fn three_paths_agree_on_a_sample() {
        let q = QuadraticSpec::from_lower(3, |i, j| rat((i * 3 + j) as i64 + 1, 2));
        let f = &LaurentPolynomial::monomial(ExponentVector::new(vec![2, -1, 0]), int(3))
            + &LaurentPolynomial::var(3, 2);
        let g = &LaurentPolynomial::monomial(ExponentVector::new(vec![0, 1, 4]), rat(-1, 5))
            + &LaurentPolynomial::var(3, 0);
        let table = q.to_table(Mode::Laurent);
        let via_table = table.bracket(&f, &g).unwrap();
        assert_eq!(q.bracket(&f, &g), via_table);
        assert_eq!(q.bracket_termwise(&f, &g), via_table);
    }

    #[test]
    fn permutation_relabels() {
        let q = QuadraticSpec::from_lower(3, |i, j| int((10 * i + j) as i64));
        let p = q.permute(&[2, 0, 1]);
        assert_eq!(p.entry(0, 1), q.entry(2, 0));
        assert_eq!(p.entry(2, 0), q.entry(1, 2));
    }
}
