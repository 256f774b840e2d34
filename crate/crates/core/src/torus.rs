//! Torus actions through their weights.
//!
//! Only the character lattice `Z^r` and the Lie algebra `Q^r` appear: a
//! generator `x_j` has weight `w_j`, and `eta` acts on a monomial `x^a` by
//! the scalar `(eta | sum_j a_j w_j)`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{is_poisson_variable_ideal, GeneratorBracketTable, IteratedPPASpec};

/// Weights of the generators and one `eta` per step (the first may be absent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusData {
    r: usize,
    weights: Vec<Vec<i64>>,
    etas: Vec<Option<Vec<Rational>>>,
}

impl TorusData {
    pub fn new(r: usize, weights: Vec<Vec<i64>>, etas: Vec<Option<Vec<Rational>>>) -> Result<Self> {
        if weights.len() != etas.len() {
            return Err(Error::Shape(format!(
                "{} weights but {} etas",
                weights.len(),
                etas.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.len() != r) {
            return Err(Error::Shape(format!("weight of length {} in rank {r}", w.len())));
        }
        if let Some(e) = etas.iter().flatten().find(|e| e.len() != r) {
            return Err(Error::Shape(format!("eta of length {} in rank {r}", e.len())));
        }
        Ok(TorusData { r, weights, etas })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, j: usize) -> &[i64] {
        &self.weights[j]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn eta(&self, i: usize) -> Option<&[Rational]> {
        self.etas[i].as_deref()
    }

    pub fn etas(&self) -> &[Option<Vec<Rational>>] {
        &self.etas
    }

    /// `sum_j a_j w_j`.
    pub fn weight_of(&self, e: &ExponentVector) -> Vec<i64> {
        let mut out = vec![0; self.r];
        for (j, &a) in e.as_slice().iter().enumerate() {
            for (o, w) in out.iter_mut().zip(&self.weights[j]) {
                *o += a * w;
            }
        }
        out
    }

    /// The common weight of all terms, or `None` when `f` is zero or mixed.
    pub fn homogeneous_weight(&self, f: &LaurentPolynomial) -> Option<Vec<i64>> {
        let mut weights = f.terms().map(|(e, _)| self.weight_of(e));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }
}

/// `(eta | w)`.
pub fn pairing(eta: &[Rational], w: &[i64]) -> Rational {
    eta.iter().zip(w).map(|(a, &b)| a * Rational::from_integer(b.into())).sum()
}

/// `eta_i . f`, acting termwise by `(eta_i | weight)`.
pub fn eta_act(td: &TorusData, i: usize, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    if i >= td.n() {
        return Err(Error::IndexOutOfRange { index: i, n: td.n() });
    }
    if f.nvars() != td.n() {
        return Err(Error::ArityMismatch { left: td.n(), right: f.nvars() });
    }
    let eta = td
        .eta(i)
        .ok_or_else(|| Error::Hypothesis(format!("no eta given for step {}", i + 1)))?;
    let terms = f
        .terms()
        .map(|(e, c)| (e.clone(), c * pairing(eta, &td.weight_of(e))));
    LaurentPolynomial::from_terms(f.nvars(), terms)
}

/// `eta_i . x_j` differs from `alpha_i(x_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaMismatch {
    pub step: usize,
    pub generator: usize,
    pub alpha: LaurentPolynomial,
    pub eta_action: LaurentPolynomial,
}

/// A step image is not homogeneous of the weight the grading forces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingFailure {
    pub step: usize,
    pub generator: usize,
    pub map: &'static str,
    pub value: LaurentPolynomial,
    pub expected_weight: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Thm17Report {
    pub eta_mismatches: Vec<EtaMismatch>,
    /// `(eta_i | w_i)` per step; `None` when `eta_i` is absent.
    pub eigenvalues: Vec<Option<Rational>>,
    pub grading_failures: Vec<GradingFailure>,
    /// `2^n`, the bound on H-stable Poisson primes when the report passes.
    pub bound: BigUint,
}

impl Thm17Report {
    pub fn failing_eigenvalues(&self) -> Vec<usize> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, e)| e.as_ref().is_none_or(Zero::is_zero))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.eta_mismatches.is_empty()
            && self.grading_failures.is_empty()
            && self.failing_eigenvalues().is_empty()
    }
}

impl fmt::Display for Thm17Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "torus hypotheses hold; at most {} H-stable Poisson primes", self.bound);
        }
        write!(f, "torus hypotheses fail:")?;
        for m in &self.eta_mismatches {
            write!(
                f,
                " eta_{}.x{} = {} but alpha = {};",
                m.step + 1,
                m.generator + 1,
                m.eta_action,
                m.alpha
            )?;
        }
        for i in self.failing_eigenvalues() {
            write!(f, " eigenvalue of x{} under eta_{} is zero or undefined;", i + 1, i + 1)?;
        }
        for g in &self.grading_failures {
            write!(
                f,
                " {}_{}(x{}) = {} is not homogeneous of weight {:?};",
                g.map,
                g.step + 1,
                g.generator + 1,
                g.value,
                g.expected_weight
            )?;
        }
        Ok(())
    }
}

fn check_arity(spec: &IteratedPPASpec, td: &TorusData) -> Result<()> {
    if spec.n() != td.n() {
        return Err(Error::ArityMismatch { left: spec.n(), right: td.n() });
    }
    Ok(())
}

/// Checks `eta_i . x_j = alpha_i(x_j)` for `j < i`, nonzero eigenvalues
/// `(eta_i | w_i)`, and that `alpha_i(x_j)`, `delta_i(x_j)` are homogeneous
/// of weights `w_j` and `w_i + w_j`.
pub fn verify_thm17(spec: &IteratedPPASpec, td: &TorusData) -> Result<Thm17Report> {
    check_arity(spec, td)?;
    let n = spec.n();
    let mut eta_mismatches = Vec::new();
    let mut grading_failures = Vec::new();
    let eigenvalues = (0..n)
        .map(|i| td.eta(i).map(|eta| pairing(eta, td.weight(i))))
        .collect();
    for i in 1..n {
        for j in 0..i {
            let alpha = spec.alpha(i, j);
            let xj = LaurentPolynomial::var(n, j);
            let acted = match td.eta(i) {
                Some(_) => eta_act(td, i, &xj)?,
                None => LaurentPolynomial::zero(n),
            };
            if td.eta(i).is_none() || &acted != alpha {
                eta_mismatches.push(EtaMismatch {
                    step: i,
                    generator: j,
                    alpha: alpha.clone(),
                    eta_action: acted,
                });
            }
            let wj = td.weight(j).to_vec();
            let wij: Vec<i64> = td.weight(i).iter().zip(&wj).map(|(a, b)| a + b).collect();
            for (map, value, expected) in [("alpha", alpha, wj), ("delta", spec.delta(i, j), wij)] {
                if !value.is_zero() && td.homogeneous_weight(value).as_ref() != Some(&expected) {
                    grading_failures.push(GradingFailure {
                        step: i,
                        generator: j,
                        map,
                        value: value.clone(),
                        expected_weight: expected,
                    });
                }
            }
        }
    }
    Ok(Thm17Report {
        eta_mismatches,
        eigenvalues,
        grading_failures,
        bound: BigUint::one() << n,
    })
}

/// `s_i = (eta_i | w_i)` per generator (`None` when `eta_i` is absent),
/// after checking `eta_i . x_j = alpha_i(x_j)` on every step and, on steps
/// with `delta_i != 0`, that `s_i != 0` and `alpha_i delta_i = delta_i (alpha_i + s_i)`.
pub fn derive_s(spec: &IteratedPPASpec, td: &TorusData) -> Result<Vec<Option<Rational>>> {
    check_arity(spec, td)?;
    let n = spec.n();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let s = td.eta(i).map(|eta| pairing(eta, td.weight(i)));
        if i > 0 {
            for j in 0..i {
                let xj = LaurentPolynomial::var(n, j);
                let acted = match td.eta(i) {
                    Some(_) => eta_act(td, i, &xj)?,
                    None => LaurentPolynomial::zero(n),
                };
                if &acted != spec.alpha(i, j) {
                    return Err(Error::TorusHypothesis {
                        step: i + 1,
                        witness: format!(
                            "eta.{} = {} but alpha({}) = {}",
                            spec.names()[j],
                            acted.display_with(spec.names()),
                            spec.names()[j],
                            spec.alpha(i, j).display_with(spec.names())
                        ),
                    });
                }
            }
            if !spec.delta_is_zero(i) {
                let s = s.as_ref().filter(|s| !s.is_zero()).ok_or_else(|| Error::TorusHypothesis {
                    step: i + 1,
                    witness: format!("eigenvalue of {} is zero or eta is absent", spec.names()[i]),
                })?;
                let alpha = spec.alpha_derivation(i);
                let delta = spec.delta_derivation(i);
                for j in 0..i {
                    let lhs = alpha.apply(spec.delta(i, j));
                    let rhs = &delta.apply(spec.alpha(i, j)) + &spec.delta(i, j).scale(s);
                    if lhs != rhs {
                        return Err(Error::ShiftRelation {
                            step: i + 1,
                            generator: spec.names()[j].clone(),
                            residual: (&lhs - &rhs).display_with(spec.names()),
                        });
                    }
                }
            }
        }
        out.push(s);
    }
    Ok(out)
}

/// Largest generator count accepted by [`enumerate_variable_hstable`].
pub const MAX_ENUMERATION_GENERATORS: usize = 24;

/// All subsets `I` (as sorted index lists, ordered by bitmask) for which
/// `<x_i : i in I>` is a Poisson ideal.
pub fn enumerate_variable_hstable(table: &GeneratorBracketTable) -> Result<Vec<Vec<usize>>> {
    let n = table.n();
    if n > MAX_ENUMERATION_GENERATORS {
        return Err(Error::Hypothesis(format!(
            "subset enumeration is limited to {MAX_ENUMERATION_GENERATORS} generators"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let subset: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        if is_poisson_variable_ideal(table, &subset)? {
            out.push(subset);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::poisson::{Mode, QuadraticSpec};

    #[test]
    fn constants_have_weight_zero() {
        let td = TorusData::new(1, vec![vec![1], vec![2]], vec![None, Some(vec![rat(1, 3)])]).unwrap();
        let c = LaurentPolynomial::constant(2, int(5));
        assert!(eta_act(&td, 1, &c).unwrap().is_zero());
        let x2 = LaurentPolynomial::var(2, 1);
        assert_eq!(eta_act(&td, 1, &x2).unwrap(), x2.scale(&rat(2, 3)));
        assert!(eta_act(&td, 0, &x2).is_err());
    }

    #[test]
    fn affine_with_rows_of_lambda_fails_eigenvalue() {
        let q = QuadraticSpec::from_lower(3, |i, j| int((i + 2 * j + 1) as i64));
        let spec = IteratedPPASpec::from_quadratic(&q, Mode::Polynomial);
        let weights = (0..3).map(|j| (0..3).map(|k| i64::from(j == k)).collect()).collect();
        let etas = (0..3).map(|i| Some(q.matrix()[i].clone())).collect();
        let td = TorusData::new(3, weights, etas).unwrap();
        let r = verify_thm17(&spec, &td).unwrap();
        assert!(r.eta_mismatches.is_empty());
        assert_eq!(r.failing_eigenvalues(), vec![0, 1, 2]);
        assert!(!r.passed());
        assert_eq!(r.bound, BigUint::from(8u32));
    }

    #[test]
    fn quadratic_tables_have_all_subsets() {
        let q = QuadraticSpec::from_lower(3, |_, _| int(1));
        assert_eq!(enumerate_variable_hstable(&q.to_table(Mode::Polynomial)).unwrap().len(), 8);
    }
}
