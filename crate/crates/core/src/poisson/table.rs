use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPolynomial;

/// Ring in which brackets are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Polynomial ring; inputs and table entries carry no negative exponents.
    Polynomial,
    /// Laurent polynomial ring.
    Laurent,
}

/// Values `{x_i, x_j}` for `i > j`; the rest follows by antisymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBracketTable {
    n: usize,
    mode: Mode,
    // lower[i][j] = {x_i, x_j}, j < i
    lower: Vec<Vec<LaurentPolynomial>>,
}

impl GeneratorBracketTable {
    pub fn zero(n: usize, mode: Mode) -> Self {
        let lower = (0..n)
            .map(|i| vec![LaurentPolynomial::zero(n); i])
            .collect();
        GeneratorBracketTable { n, mode, lower }
    }

    /// Builds a table from `f(i, j) = {x_i, x_j}` evaluated for `i > j`.
    pub fn from_fn<F>(n: usize, mode: Mode, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> LaurentPolynomial,
    {
        let mut t = Self::zero(n, mode);
        for i in 0..n {
            for j in 0..i {
                t.set(i, j, f(i, j))?;
            }
        }
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Same entries in another mode; fails when leaving Laurent mode with
    /// negative exponents present.
    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        let mut t = self.clone();
        t.mode = mode;
        for i in 0..self.n {
            for j in 0..i {
                t.check_entry(&self.lower[i][j])?;
            }
        }
        Ok(t)
    }

    fn check_entry(&self, v: &LaurentPolynomial) -> Result<()> {
        if v.nvars() != self.n {
            return Err(Error::ArityMismatch { left: self.n, right: v.nvars() });
        }
        if self.mode == Mode::Polynomial && !v.is_polynomial() {
            return Err(Error::LaurentInput { element: v.to_string() });
        }
        Ok(())
    }

    /// Rejects elements outside the ring of this table.
    pub fn check_input(&self, f: &LaurentPolynomial) -> Result<()> {
        self.check_entry(f)
    }

    /// Sets `{x_i, x_j} = value` (and implicitly `{x_j, x_i} = -value`).
    pub fn set(&mut self, i: usize, j: usize, value: LaurentPolynomial) -> Result<()> {
        for k in [i, j] {
            if k >= self.n {
                return Err(Error::IndexOutOfRange { index: k, n: self.n });
            }
        }
        self.check_entry(&value)?;
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lower[i][j] = value,
            std::cmp::Ordering::Less => self.lower[j][i] = -value,
            std::cmp::Ordering::Equal => {
                if !value.is_zero() {
                    return Err(Error::MalformedSpec(format!(
                        "bracket of generator {} with itself must vanish",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `{x_i, x_j}` for any pair of indices.
    pub fn get(&self, i: usize, j: usize) -> LaurentPolynomial {
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lower[i][j].clone(),
            std::cmp::Ordering::Less => -&self.lower[j][i],
            std::cmp::Ordering::Equal => LaurentPolynomial::zero(self.n),
        }
    }

    /// True when every entry `{x_i, x_j}` is a multiple of `x_i x_j`.
    pub fn is_quadratic(&self) -> bool {
        (0..self.n).all(|i| {
            (0..i).all(|j| {
                let e = crate::exactalg::ExponentVector::unit(self.n, i)
                    .add(&crate::exactalg::ExponentVector::unit(self.n, j));
                self.lower[i][j].is_zero() || self.lower[i][j].as_multiple_of(&e).is_some()
            })
        })
    }

    /// Biderivation extension:
    /// `{f,g} = sum_{i>j} {x_i,x_j} (df/dx_i dg/dx_j - df/dx_j dg/dx_i)`.
    pub fn bracket(&self, f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.check_input(f)?;
        self.check_input(g)?;
        Ok(self.bracket_unchecked(f, g))
    }

    pub(crate) fn bracket_unchecked(
        &self,
        f: &LaurentPolynomial,
        g: &LaurentPolynomial,
    ) -> LaurentPolynomial {
        let n = self.n;
        let df: Vec<_> = (0..n).map(|i| f.partial(i)).collect();
        let dg: Vec<_> = (0..n).map(|i| g.partial(i)).collect();
        let mut out = LaurentPolynomial::zero(n);
        for i in 0..n {
            for j in 0..i {
                let b = &self.lower[i][j];
                if b.is_zero() {
                    continue;
                }
                let w = &(&df[i] * &dg[j]) - &(&df[j] * &dg[i]);
                if !w.is_zero() {
                    out = &out + &(b * &w);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ExponentVector};

    fn x(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    #[test]
    fn quadratic_example_by_leibniz() {
        let t = GeneratorBracketTable::from_fn(2, Mode::Polynomial, |_, _| {
            // {x2, x1} = -x1 x2 for lambda_12 = 1
            -(&x(2, 0) * &x(2, 1))
        })
        .unwrap();
        let f = &x(2, 0) * &x(2, 1);
        let g = x(2, 1).pow(2);
        let expected = LaurentPolynomial::monomial(ExponentVector::new(vec![1, 3]), int(2));
        assert_eq!(t.bracket(&f, &g).unwrap(), expected);
        assert!(t.bracket(&f, &f).unwrap().is_zero());
        assert!(t.is_quadratic());
    }

    #[test]
    fn antisymmetric_storage() {
        let mut t = GeneratorBracketTable::zero(3, Mode::Polynomial);
        t.set(0, 2, x(3, 1)).unwrap();
        assert_eq!(t.get(2, 0), -x(3, 1));
        assert_eq!(t.get(0, 2), x(3, 1));
        assert!(t.get(1, 1).is_zero());
        assert!(t.set(1, 1, x(3, 0)).is_err());
        assert!(t.set(3, 0, x(3, 0)).is_err());
    }

    #[test]
    fn polynomial_mode_rejects_laurent_input() {
        let t = GeneratorBracketTable::zero(2, Mode::Polynomial);
        let inv = LaurentPolynomial::monomial(ExponentVector::new(vec![-1, 0]), int(1));
        assert!(matches!(t.bracket(&inv, &x(2, 0)), Err(Error::LaurentInput { .. })));
        let l = t.with_mode(Mode::Laurent).unwrap();
        assert!(l.bracket(&inv, &x(2, 0)).unwrap().is_zero());
    }
}
