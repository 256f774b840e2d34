use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactalg::{ExponentVector, IntegerMatrix};
use crate::poisson::QuadraticSpec;

/// Sublattice of `Z^dim` stored as the nonzero rows of its Hermite form, so
/// equal lattices compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Lattice generated by `rows` (each of length `dim`).
    pub fn generated_by(dim: usize, rows: Vec<Vec<BigInt>>) -> Self {
        if rows.is_empty() {
            return Lattice { dim, basis: Vec::new() };
        }
        let m = IntegerMatrix::from_big_rows(rows).expect("rows share the ambient dimension");
        let (h, _) = m.hermite();
        let basis = h
            .to_rows()
            .into_iter()
            .filter(|r| r.iter().any(|v| !v.is_zero()))
            .collect();
        Lattice { dim, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Basis rows as exponent vectors; `None` if an entry exceeds `i64`.
    pub fn exponent_vectors(&self) -> Option<Vec<ExponentVector>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i64).collect::<Option<Vec<_>>>().map(ExponentVector::new))
            .collect()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("({})", r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// `{ a in Z^n : a lambda = 0 }`, the exponents of Poisson-central monomials.
pub fn center_lattice(q: &QuadraticSpec) -> Lattice {
    let n = q.n();
    if n == 0 {
        return Lattice { dim: 0, basis: Vec::new() };
    }
    let mut den = BigInt::one();
    for row in q.matrix() {
        for v in row {
            den = den.lcm(v.denom());
        }
    }
    let rows: Vec<Vec<BigInt>> = q
        .matrix()
        .iter()
        .map(|row| row.iter().map(|v| (v * &den).to_integer()).collect())
        .collect();
    let m = IntegerMatrix::from_big_rows(rows).expect("square");
    let (h, u) = m.hermite();
    let kernel: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    Lattice::generated_by(n, kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::poisson::Mode;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn zero_matrix_gives_full_lattice() {
        let l = center_lattice(&QuadraticSpec::zero(2));
        assert_eq!(l.basis(), big(&[&[1, 0], &[0, 1]]).as_slice());
    }

    #[test]
    fn degenerate_block() {
        let q = QuadraticSpec::from_lower(3, |i, j| if (i, j) == (1, 0) { int(-1) } else { int(0) });
        assert_eq!(center_lattice(&q).basis(), big(&[&[0, 0, 1]]).as_slice());
    }

    #[test]
    fn invertible_gives_zero_lattice() {
        let q = QuadraticSpec::from_lower(2, |_, _| rat(3, 7));
        assert_eq!(center_lattice(&q).rank(), 0);
    }

    #[test]
    fn central_monomials_commute_with_generators() {
        // kernel with a non-unit generator: rows (2, -3, 0), (0,0,0) pattern
        let q = QuadraticSpec::from_lower(3, |i, j| match (i, j) {
            (1, 0) => int(0),
            (2, 0) => rat(3, 2),
            _ => int(1),
        });
        let l = center_lattice(&q);
        assert_eq!(l.rank(), 1);
        let table = q.to_table(Mode::Laurent);
        for e in l.exponent_vectors().unwrap() {
            let m = crate::exactalg::LaurentPolynomial::monomial(e, int(1));
            for k in 0..3 {
                let g = crate::exactalg::LaurentPolynomial::var(3, k);
                assert!(table.bracket(&m, &g).unwrap().is_zero());
            }
        }
    }
}
