use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{IntegerMatrix, Rational, ScalarVector, UNIT_SYMBOL};
use crate::poisson::QuadraticSpec;

/// Antisymmetric `n x n` matrix with entries in the Q-span of `1` and formal
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    entries: Vec<Vec<ScalarVector>>,
}

impl SkewMatrix {
    pub fn new(entries: Vec<Vec<ScalarVector>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {} has length {}, expected {}", i + 1, row.len(), n)));
            }
        }
        for i in 0..n {
            for j in 0..=i {
                if entries[i][j] != -&entries[j][i] {
                    return Err(Error::Shape(format!("entries ({},{}) and ({},{}) are not opposite", i + 1, j + 1, j + 1, i + 1)));
                }
            }
        }
        Ok(SkewMatrix { entries })
    }

    pub fn zero(n: usize) -> Self {
        SkewMatrix { entries: vec![vec![ScalarVector::zero(); n]; n] }
    }

    pub fn from_rationals(rows: &[Vec<Rational>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().cloned().map(ScalarVector::rational).collect()).collect())
    }

    pub fn from_integer(m: &IntegerMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!("{}x{} matrix is not square", m.rows(), m.cols())));
        }
        Self::new(
            (0..m.rows())
                .map(|i| m.row(i).iter().map(|v| ScalarVector::rational(Rational::from_integer(v.clone()))).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarVector {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<ScalarVector>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(ScalarVector::is_zero)
    }

    /// Formal symbols occurring in any entry, the unit excluded.
    pub fn symbols(&self) -> BTreeSet<String> {
        self.entries
            .iter()
            .flatten()
            .flat_map(|v| v.symbols().filter(|s| *s != UNIT_SYMBOL).map(str::to_string))
            .collect()
    }

    /// The matrix as a quadratic bracket, when every entry is rational.
    pub fn as_quadratic(&self) -> Option<QuadraticSpec> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(ScalarVector::as_rational).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        QuadraticSpec::new(rows).ok()
    }

    /// Evaluates every symbol; absent symbols become zero.
    pub fn specialize(&self, values: &BTreeMap<String, Rational>) -> QuadraticSpec {
        let rows = self.entries.iter().map(|r| r.iter().map(|v| v.evaluate(values)).collect()).collect();
        QuadraticSpec::new(rows).expect("specialization preserves antisymmetry")
    }

    /// Rescales by a nonzero rational.
    pub fn scale(&self, q: &Rational) -> Self {
        SkewMatrix { entries: self.entries.iter().map(|r| r.iter().map(|v| v.scale(q)).collect()).collect() }
    }
}

impl fmt::Display for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// `A lambda A^T`, computed with additions and integer scalings only.
pub fn apply_congruence(a: &IntegerMatrix, lam: &SkewMatrix) -> Result<SkewMatrix> {
    let n = lam.n();
    if a.cols() != n || a.rows() != n {
        return Err(Error::Shape(format!("{}x{} matrix cannot act on a {n}x{n} form", a.rows(), a.cols())));
    }
    // t = A lambda
    let mut t = vec![vec![ScalarVector::zero(); n]; n];
    for (i, row) in t.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            for l in 0..n {
                let c = a.get(i, l);
                if !c.is_zero() {
                    *cell += &lam.entry(l, m).scale_int(c);
                }
            }
        }
    }
    let mut out = vec![vec![ScalarVector::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut acc = ScalarVector::zero();
            for (m, tm) in t[i].iter().enumerate() {
                let c = a.get(j, m);
                if !c.is_zero() {
                    acc += &tm.scale_int(c);
                }
            }
            out[j][i] = -&acc;
            out[i][j] = acc;
        }
    }
    Ok(SkewMatrix { entries: out })
}
