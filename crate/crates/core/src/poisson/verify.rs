use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::LaurentPolynomial;
use crate::poisson::{ppa_to_table, GeneratorBracketTable, IteratedPPASpec, Mode};

/// Nonvanishing Jacobiator on a generator triple `i < j < k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiFailure {
    pub triple: (usize, usize, usize),
    pub jacobiator: LaurentPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: usize,
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "jacobi: {} triples, {} failures", self.triples_checked, self.failures.len())?;
        for w in &self.failures {
            let (i, j, k) = w.triple;
            write!(f, "; ({},{},{}) -> {}", i + 1, j + 1, k + 1, w.jacobiator)?;
        }
        Ok(())
    }
}

/// Evaluates the Jacobiator on all generator triples. The Jacobiator of a
/// biderivation is a triderivation, so vanishing on generators is enough.
pub fn verify_jacobi(table: &GeneratorBracketTable) -> JacobiReport {
    let n = table.n();
    let x: Vec<_> = (0..n).map(|i| LaurentPolynomial::var(n, i)).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                checked += 1;
                let jac = &(&table.bracket_unchecked(&x[i], &table.get(j, k))
                    + &table.bracket_unchecked(&x[j], &table.get(k, i)))
                    + &table.bracket_unchecked(&x[k], &table.get(i, j));
                if !jac.is_zero() {
                    failures.push(JacobiFailure { triple: (i, j, k), jacobiator: jac });
                }
            }
        }
    }
    JacobiReport { triples_checked: checked, failures }
}

/// Which identity of an adjunction step failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepCheck {
    /// `delta({a,b}) = {delta a, b} + {a, delta b} + alpha(a)delta(b) - delta(a)alpha(b)`.
    DeltaCompatibility,
    /// `alpha({a,b}) = {alpha a, b} + {a, alpha b}`.
    AlphaPoissonDerivation,
    /// `alpha delta = delta (alpha + s)`.
    ShiftRelation,
}

impl fmt::Display for StepCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepCheck::DeltaCompatibility => "delta-compatibility",
            StepCheck::AlphaPoissonDerivation => "alpha-poisson-derivation",
            StepCheck::ShiftRelation => "shift-relation",
        })
    }
}

/// Witness: the identity `check` fails on generators `a` (and `b`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    pub check: StepCheck,
    pub a: usize,
    pub b: Option<usize>,
    pub lhs: LaurentPolynomial,
    pub rhs: LaurentPolynomial,
}

impl StepFailure {
    pub fn mismatch(&self) -> LaurentPolynomial {
        &self.lhs - &self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    pub step: usize,
    pub identities_checked: usize,
    pub failures: Vec<StepFailure>,
}

impl StepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for StepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "step {}: {} identities, {} failures",
            self.step + 1,
            self.identities_checked,
            self.failures.len()
        )?;
        for w in &self.failures {
            match w.b {
                Some(b) => write!(f, "; {} at ({},{})", w.check, w.a + 1, b + 1)?,
                None => write!(f, "; {} at {}", w.check, w.a + 1)?,
            }
            write!(f, " mismatch {}", w.mismatch())?;
        }
        Ok(())
    }
}

/// Checks the identities required of `(alpha_i, delta_i, s_i)` on generator
/// pairs of `B = k[x_0..x_{i-1}]`. Both sides of each identity are
/// (bi)derivations, so generators suffice. The shift relation is checked
/// only when `s_i` is set.
pub fn verify_step_condition(spec: &IteratedPPASpec, i: usize) -> Result<StepReport> {
    let n = spec.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let table = ppa_to_table(spec);
    let alpha = spec.alpha_derivation(i);
    let delta = spec.delta_derivation(i);
    let x: Vec<_> = (0..i).map(|j| LaurentPolynomial::var(n, j)).collect();
    let br = |f: &LaurentPolynomial, g: &LaurentPolynomial| table.bracket_unchecked(f, g);
    let mut failures = Vec::new();
    let mut checked = 0;
    for a in 0..i {
        for b in a + 1..i {
            let ab = table.get(a, b);
            let (al_a, al_b) = (spec.alpha(i, a), spec.alpha(i, b));
            let (de_a, de_b) = (spec.delta(i, a), spec.delta(i, b));

            checked += 1;
            let lhs = delta.apply(&ab);
            let rhs = &(&(&br(de_a, &x[b]) + &br(&x[a], de_b)) + &(al_a * de_b)) - &(de_a * al_b);
            if lhs != rhs {
                failures.push(StepFailure { check: StepCheck::DeltaCompatibility, a, b: Some(b), lhs, rhs });
            }

            checked += 1;
            let lhs = alpha.apply(&ab);
            let rhs = &br(al_a, &x[b]) + &br(&x[a], al_b);
            if lhs != rhs {
                failures.push(StepFailure { check: StepCheck::AlphaPoissonDerivation, a, b: Some(b), lhs, rhs });
            }
        }
    }
    if let Some(s) = spec.s(i) {
        for a in 0..i {
            checked += 1;
            let lhs = alpha.apply(spec.delta(i, a));
            let rhs = &delta.apply(spec.alpha(i, a)) + &spec.delta(i, a).scale(s);
            if lhs != rhs {
                failures.push(StepFailure { check: StepCheck::ShiftRelation, a, b: None, lhs, rhs });
            }
        }
    }
    Ok(StepReport { step: i, identities_checked: checked, failures })
}

/// Whether `<x_l : l in subset>` is a Poisson ideal, by term divisibility.
pub fn is_poisson_variable_ideal(table: &GeneratorBracketTable, subset: &[usize]) -> Result<bool> {
    if table.mode() != Mode::Polynomial {
        return Err(Error::Hypothesis("variable ideals are tested on polynomial-only tables".into()));
    }
    let n = table.n();
    if let Some(&bad) = subset.iter().find(|&&l| l >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    let in_ideal = |p: &LaurentPolynomial| {
        p.terms().all(|(e, _)| subset.iter().any(|&l| e[l] > 0))
    };
    Ok(subset.iter().all(|&j| (0..n).all(|i| in_ideal(&table.get(i, j)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ExponentVector};
    use crate::poisson::QuadraticSpec;

    fn x(n: usize, i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(n, i)
    }

    #[test]
    fn jacobi_detects_failure() {
        let mut t = GeneratorBracketTable::zero(3, Mode::Polynomial);
        t.set(1, 0, x(3, 2)).unwrap();
        t.set(2, 0, x(3, 0)).unwrap();
        let r = verify_jacobi(&t);
        assert_eq!(r.triples_checked, 1);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].jacobiator, x(3, 2));
        assert!(verify_jacobi(&GeneratorBracketTable::zero(4, Mode::Polynomial)).passed());
    }

    fn weyl_like(sign: i64) -> IteratedPPASpec {
        let mut spec = IteratedPPASpec::new(2, Mode::Polynomial);
        spec.set_alpha(1, 0, x(2, 0).scale(&int(sign))).unwrap();
        spec.set_delta(1, 0, LaurentPolynomial::one(2)).unwrap();
        spec.set_s(1, Some(int(1))).unwrap();
        spec
    }

    #[test]
    fn weyl_like_step_passes_and_wrong_sign_fails() {
        assert!(verify_step_condition(&weyl_like(-1), 1).unwrap().passed());
        let r = verify_step_condition(&weyl_like(1), 1).unwrap();
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].check, StepCheck::ShiftRelation);
        assert_eq!(r.failures[0].mismatch(), LaurentPolynomial::constant(2, int(-2)));
        assert!(verify_step_condition(&weyl_like(1), 0).is_err());
    }

    #[test]
    fn quadratic_steps_pass() {
        let q = QuadraticSpec::from_lower(4, |i, j| int(i as i64 - 2 * j as i64));
        let spec = IteratedPPASpec::from_quadratic(&q, Mode::Polynomial);
        for i in 1..4 {
            assert!(verify_step_condition(&spec, i).unwrap().passed());
        }
        let t = q.to_table(Mode::Polynomial);
        for mask in 0u32..16 {
            let subset: Vec<usize> = (0..4).filter(|b| mask >> b & 1 == 1).collect();
            assert!(is_poisson_variable_ideal(&t, &subset).unwrap());
        }
    }

    #[test]
    fn variable_ideal_rejects_laurent_tables() {
        let t = GeneratorBracketTable::zero(2, Mode::Laurent);
        assert!(is_poisson_variable_ideal(&t, &[0]).is_err());
        let mut t = GeneratorBracketTable::zero(2, Mode::Polynomial);
        t.set(1, 0, LaurentPolynomial::monomial(ExponentVector::new(vec![0, 2]), int(1))).unwrap();
        assert!(!is_poisson_variable_ideal(&t, &[0]).unwrap());
        assert!(is_poisson_variable_ideal(&t, &[0, 1]).unwrap());
    }
}
