use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::IntegerMatrix;

/// Canonical congruence form of an antisymmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    /// Unimodular, with `c * M * c^T` equal to [`Self::block_form`].
    pub c: IntegerMatrix,
    /// Positive invariant factors with `d[k] | d[k + 1]`.
    pub d: Vec<BigInt>,
}

impl NormalFormResult {
    /// Number of 2x2 blocks; half the rank.
    pub fn r(&self) -> usize {
        self.d.len()
    }

    pub fn n(&self) -> usize {
        self.c.rows()
    }

    /// Blocks `((0, d_k), (-d_k, 0))` along the diagonal, then zeros.
    pub fn block_form(&self) -> IntegerMatrix {
        block_form(self.n(), &self.d)
    }
}

pub(crate) fn block_form(n: usize, d: &[BigInt]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(n, n);
    for (k, dk) in d.iter().enumerate() {
        m.set(2 * k, 2 * k + 1, dk.clone());
        m.set(2 * k + 1, 2 * k, -dk);
    }
    m
}

/// Working pair `(w, c)` with `w = c * M * c^T` maintained by congruence moves.
struct Reducer {
    w: IntegerMatrix,
    c: IntegerMatrix,
}

impl Reducer {
    /// Index `target` gains `k` times index `source`.
    fn add(&mut self, target: usize, source: usize, k: &BigInt) {
        self.w.add_row_multiple(target, source, k);
        self.w.add_col_multiple(target, source, k);
        self.c.add_row_multiple(target, source, k);
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a != b {
            self.w.swap_rows(a, b);
            self.w.swap_cols(a, b);
            self.c.swap_rows(a, b);
        }
    }

    /// Smallest nonzero entry above the diagonal in the trailing block.
    fn smallest(&self, p: usize) -> Option<(usize, usize)> {
        let n = self.w.rows();
        let mut best: Option<(usize, usize)> = None;
        for i in p..n {
            for j in i + 1..n {
                let v = self.w.get(i, j);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(a, b)| v.abs() < self.w.get(a, b).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears rows `p` and `p + 1` beyond the pivot; false if a smaller
    /// remainder appeared.
    fn clear_pivot_rows(&mut self, p: usize) -> bool {
        let n = self.w.rows();
        let pivot = self.w.get(p, p + 1).clone();
        let mut clean = true;
        for l in p + 2..n {
            let q = self.w.get(p, l) / &pivot;
            if !q.is_zero() {
                self.add(l, p + 1, &-q);
            }
            if !self.w.get(p, l).is_zero() {
                clean = false;
            }
            let q = self.w.get(p + 1, l) / &pivot;
            if !q.is_zero() {
                self.add(l, p, &q);
            }
            if !self.w.get(p + 1, l).is_zero() {
                clean = false;
            }
        }
        clean
    }

    /// First trailing entry not divisible by the pivot.
    fn non_multiple(&self, p: usize) -> Option<(usize, usize)> {
        let n = self.w.rows();
        let pivot = self.w.get(p, p + 1);
        for i in p + 2..n {
            for j in i + 1..n {
                if !self.w.get(i, j).is_multiple_of(pivot) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Reduces an antisymmetric integer matrix to block form by symmetric
/// row and column operations.
pub fn skew_normal_form(m: &IntegerMatrix) -> Result<NormalFormResult> {
    if !m.is_square() || !m.is_antisymmetric() {
        return Err(Error::Shape("skew normal form needs a square antisymmetric integer matrix".into()));
    }
    let n = m.rows();
    let mut red = Reducer { w: m.clone(), c: IntegerMatrix::identity(n) };
    let mut d = Vec::new();
    let mut p = 0;
    while p + 1 < n {
        let Some((i, j)) = red.smallest(p) else { break };
        red.swap(p, i);
        red.swap(p + 1, j);
        if !red.clear_pivot_rows(p) {
            continue;
        }
        if let Some((i, _)) = red.non_multiple(p) {
            // w[p][j] becomes w[i][j], which the next pass reduces below the pivot
            red.add(p, i, &BigInt::one());
            continue;
        }
        if red.w.get(p, p + 1).is_negative() {
            red.swap(p, p + 1);
        }
        d.push(red.w.get(p, p + 1).clone());
        p += 2;
    }
    debug_assert_eq!(red.w, block_form(n, &d));
    Ok(NormalFormResult { c: red.c, d })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn check(mat: &IntegerMatrix) -> NormalFormResult {
        let nf = skew_normal_form(mat).unwrap();
        assert!(nf.c.is_unimodular());
        let ct = nf.c.transpose();
        assert_eq!(nf.c.mul(mat).unwrap().mul(&ct).unwrap(), nf.block_form());
        for w in nf.d.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        nf
    }

    #[test]
    fn zero_and_already_normal() {
        let nf = check(&IntegerMatrix::zeros(3, 3));
        assert_eq!(nf.r(), 0);
        assert_eq!(nf.c, IntegerMatrix::identity(3));
        let nf = check(&m(&[vec![0, 2], vec![-2, 0]]));
        assert_eq!(nf.d, vec![BigInt::from(2)]);
        assert_eq!(nf.c, IntegerMatrix::identity(2));
    }

    #[test]
    fn rank_two_three_by_three() {
        let nf = check(&m(&[vec![0, 2, 4], vec![-2, 0, 6], vec![-4, -6, 0]]));
        assert_eq!(nf.d, vec![BigInt::from(2)]);
    }

    #[test]
    fn divisor_chain_is_enforced() {
        // blocks 2 and 3 combine to 1 and 6
        let mat = m(&[vec![0, 2, 0, 0], vec![-2, 0, 0, 0], vec![0, 0, 0, 3], vec![0, 0, -3, 0]]);
        let nf = check(&mat);
        assert_eq!(nf.d, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rejects_symmetric_input() {
        assert!(skew_normal_form(&m(&[vec![0, 1], vec![1, 0]])).is_err());
    }
}
