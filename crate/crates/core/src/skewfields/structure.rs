use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{IntegerMatrix, Rational, ScalarVector};
use crate::skewfields::SkewMatrix;

/// The subgroup of the scalar space generated by the entries of a matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Zero,
    /// Generated by one positive element.
    Cyclic { generator: ScalarVector },
    /// Free abelian with the given Hermite-reduced basis; `rank >= 2`.
    Free { rank: usize, basis: Vec<ScalarVector> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalStructure {
    pub kind: GroupKind,
    /// `lambda / generator` in the cyclic case.
    pub integerized: Option<IntegerMatrix>,
}

impl RationalStructure {
    pub fn rank(&self) -> usize {
        match &self.kind {
            GroupKind::Zero => 0,
            GroupKind::Cyclic { .. } => 1,
            GroupKind::Free { rank, .. } => *rank,
        }
    }

    pub fn basis(&self) -> Vec<ScalarVector> {
        match &self.kind {
            GroupKind::Zero => Vec::new(),
            GroupKind::Cyclic { generator } => vec![generator.clone()],
            GroupKind::Free { basis, .. } => basis.clone(),
        }
    }

    /// Whether the entries above the diagonal are Z-independent.
    pub fn is_maximal_rank(&self, n: usize) -> bool {
        self.rank() == n * (n - 1) / 2 && n >= 2
    }
}

/// Coordinates of `values` over the symbols `axes`, scaled to integers by a
/// common denominator.
pub(crate) fn integer_coordinates(values: &[&ScalarVector], axes: &[String]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut den = BigInt::one();
    for v in values {
        for (_, c) in v.coordinates() {
            den = den.lcm(c.denom());
        }
    }
    let scale = Rational::from_integer(den.clone());
    let rows = values
        .iter()
        .map(|v| axes.iter().map(|a| (v.coordinate(a) * &scale).to_integer()).collect())
        .collect();
    (rows, den)
}

fn from_coordinates(row: &[BigInt], axes: &[String], den: &BigInt) -> ScalarVector {
    let mut out = ScalarVector::zero();
    for (a, c) in axes.iter().zip(row) {
        out += &ScalarVector::term(a, Rational::new(c.clone(), den.clone()));
    }
    out
}

/// Hermite-reduced basis of the subgroup generated by `values`.
pub(crate) fn subgroup_basis(values: &[&ScalarVector]) -> Vec<ScalarVector> {
    let axes: Vec<String> = values
        .iter()
        .flat_map(|v| v.symbols().map(str::to_string))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if axes.is_empty() {
        return Vec::new();
    }
    let (rows, den) = integer_coordinates(values, &axes);
    let (h, _) = IntegerMatrix::from_big_rows(rows).expect("uniform width").hermite();
    h.to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .map(|r| from_coordinates(&r, &axes, &den))
        .collect()
}

/// Integer `k` with `v = k * g`, if one exists.
pub(crate) fn integer_multiple(v: &ScalarVector, g: &ScalarVector) -> Option<BigInt> {
    let (axis, gc) = g.coordinates().next()?;
    let k = v.coordinate(axis) / gc;
    if !k.is_integer() || &g.scale(&k) != v {
        return None;
    }
    Some(k.to_integer())
}

/// Classifies the group generated by the entries of `lam`.
pub fn rational_structure(lam: &SkewMatrix) -> RationalStructure {
    let n = lam.n();
    let upper: Vec<&ScalarVector> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| lam.entry(i, j)).collect();
    let mut basis = subgroup_basis(&upper);
    match basis.len() {
        0 => RationalStructure { kind: GroupKind::Zero, integerized: None },
        1 => {
            let mut g = basis.pop().expect("one element");
            if g.coordinates().next().is_some_and(|(_, c)| c.is_negative()) {
                g = -&g;
            }
            let rows = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| integer_multiple(lam.entry(i, j), &g).unwrap_or_else(BigInt::zero))
                        .collect()
                })
                .collect();
            let m = IntegerMatrix::from_big_rows(rows).expect("square");
            RationalStructure { kind: GroupKind::Cyclic { generator: g }, integerized: Some(m) }
        }
        rank => RationalStructure { kind: GroupKind::Free { rank, basis }, integerized: None },
    }
}
