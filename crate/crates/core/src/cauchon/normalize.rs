use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{format_rational, ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{IteratedPPASpec, QuadraticSpec};
use crate::torus::{derive_s, TorusData};

use super::{
    verify_eq_3_2, verify_round_trip, verify_theta_poisson, DeletionContext, IdentityReport,
    DEFAULT_CUTOFF,
};

/// Where a reordering step inserts the top generator once it is known to
/// carry no delta.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Case3Strategy {
    /// Directly after the first generator.
    #[default]
    AfterFirst,
    /// Directly before the highest generator whose delta is nonzero.
    BeforeTarget,
}

#[derive(Clone, Debug)]
pub struct GkOptions {
    pub cutoff: usize,
    pub strategy: Case3Strategy,
    /// Re-verify the deletion identities at every deletion.
    pub certify: bool,
    /// Source of `s_i = (eta_i | w_i)` when the spec leaves `s_i` unset.
    pub torus: Option<TorusData>,
}

impl Default for GkOptions {
    fn default() -> Self {
        GkOptions { cutoff: DEFAULT_CUTOFF, strategy: Case3Strategy::default(), certify: false, torus: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftSource {
    Spec,
    Torus,
    /// Solved from `alpha delta - delta alpha = s delta` on a generator.
    Inferred,
    /// `delta_i = 0`; no constant needed.
    NotNeeded,
}

impl fmt::Display for ShiftSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShiftSource::Spec => "spec",
            ShiftSource::Torus => "torus",
            ShiftSource::Inferred => "inferred",
            ShiftSource::NotNeeded => "not-needed",
        })
    }
}

/// Evidence for hypotheses (a), (b), (c) at one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub step: usize,
    /// `k` with `delta_i^k(x_j) = 0` minimal, per earlier generator.
    pub nilpotency: Vec<usize>,
    pub s: Option<Rational>,
    pub s_source: ShiftSource,
    /// `lambda_ij` with `alpha_i(x_j) = lambda_ij x_j`.
    pub lambda: Vec<Rational>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HypothesisReport {
    pub steps: Vec<StepVerdict>,
}

/// Identities checked at a deletion and the ones that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub identities: usize,
    pub failures: Vec<String>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// One move of the normalization. Generator numbers refer to the input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogEntry {
    /// The top generator's delta is deleted through `theta`.
    Deletion {
        generator: usize,
        position: usize,
        s: Rational,
        certificate: Option<Certificate>,
    },
    /// The delta-free top generator is moved to `to`; `order` lists the
    /// input generators in their new order.
    Reorder {
        generator: usize,
        from: usize,
        to: usize,
        order: Vec<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GKResult {
    /// Quadratic structure of the fraction field, in the input generator order.
    pub lambda_out: QuadraticSpec,
    pub log: Vec<LogEntry>,
    pub report: HypothesisReport,
    pub names: Vec<String>,
}

impl GKResult {
    /// False when a certified deletion had a failing identity.
    pub fn certified(&self) -> bool {
        self.log.iter().all(|e| match e {
            LogEntry::Deletion { certificate: Some(c), .. } => c.passed(),
            _ => true,
        })
    }

    pub fn deletions(&self) -> usize {
        self.log.iter().filter(|e| matches!(e, LogEntry::Deletion { .. })).count()
    }
}

impl fmt::Display for GKResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for entry in &self.log {
            match entry {
                LogEntry::Deletion { generator, position, s, certificate } => {
                    write!(
                        f,
                        "delete delta of {} at position {} (s = {})",
                        self.names[*generator],
                        position + 1,
                        format_rational(s)
                    )?;
                    if let Some(c) = certificate {
                        write!(f, ", {} identities, {} failures", c.identities, c.failures.len())?;
                    }
                    writeln!(f)?;
                }
                LogEntry::Reorder { generator, from, to, order } => {
                    let order: Vec<&str> = order.iter().map(|&g| self.names[g].as_str()).collect();
                    writeln!(
                        f,
                        "move {} from position {} to {}: {}",
                        self.names[*generator],
                        from + 1,
                        to + 1,
                        order.join(", ")
                    )?;
                }
            }
        }
        let n = self.names.len();
        for i in 0..n {
            for j in 0..i {
                let l = self.lambda_out.entry(i, j);
                if !l.is_zero() {
                    writeln!(
                        f,
                        "{{{}, {}}} = {} {}*{}",
                        self.names[i],
                        self.names[j],
                        format_rational(l),
                        self.names[i],
                        self.names[j]
                    )?;
                }
            }
        }
        Ok(())
    }
}

fn diagonal_coefficient(spec: &IteratedPPASpec, i: usize, j: usize) -> Result<Rational> {
    let a = spec.alpha(i, j);
    if a.is_zero() {
        return Ok(Rational::zero());
    }
    a.as_multiple_of(&ExponentVector::unit(spec.n(), j)).ok_or_else(|| Error::NonDiagonalAlpha {
        step: i + 1,
        generator: spec.names()[j].clone(),
        value: a.display_with(spec.names()),
    })
}

fn shift_residual(spec: &IteratedPPASpec, i: usize, j: usize, s: &Rational) -> LaurentPolynomial {
    let alpha = spec.alpha_derivation(i);
    let delta = spec.delta_derivation(i);
    let lhs = alpha.apply(spec.delta(i, j));
    &(&lhs - &delta.apply(spec.alpha(i, j))) - &spec.delta(i, j).scale(s)
}

/// Solves `alpha delta(x_j) - delta alpha(x_j) = s delta(x_j)` on the first
/// generator with `delta(x_j) != 0`.
fn infer_shift(spec: &IteratedPPASpec, i: usize) -> Option<Rational> {
    let alpha = spec.alpha_derivation(i);
    let delta = spec.delta_derivation(i);
    (0..i).find_map(|j| {
        let d = spec.delta(i, j);
        let (e, c) = d.leading_term()?;
        let commutator = &alpha.apply(d) - &delta.apply(spec.alpha(i, j));
        Some(commutator.coefficient(e) / c)
    })
}

fn step_verdict(
    spec: &IteratedPPASpec,
    i: usize,
    torus_s: Option<&Option<Rational>>,
    cutoff: usize,
) -> Result<StepVerdict> {
    let n = spec.n();
    let lambda = (0..i).map(|j| diagonal_coefficient(spec, i, j)).collect::<Result<Vec<_>>>()?;
    let delta = spec.delta_derivation(i);
    let nilpotency = (0..i)
        .map(|j| {
            delta
                .nilpotency_index(&LaurentPolynomial::var(n, j), cutoff)
                .ok_or_else(|| Error::CutoffExceeded {
                    element: format!("delta_{}({})", i + 1, spec.names()[j]),
                    cutoff,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let from_spec = spec.s(i).cloned();
    let from_torus = torus_s.cloned().flatten();
    if let (Some(a), Some(b)) = (&from_spec, &from_torus) {
        if a != b {
            return Err(Error::TorusHypothesis {
                step: i + 1,
                witness: format!(
                    "spec gives s = {} but the torus eigenvalue is {}",
                    format_rational(a),
                    format_rational(b)
                ),
            });
        }
    }
    if spec.delta_is_zero(i) {
        let (s, s_source) = match (from_spec, from_torus) {
            (Some(s), _) => (Some(s), ShiftSource::Spec),
            (None, Some(s)) => (Some(s), ShiftSource::Torus),
            (None, None) => (None, ShiftSource::NotNeeded),
        };
        return Ok(StepVerdict { step: i, nilpotency, s, s_source, lambda });
    }
    let (s, s_source) = match (from_spec, from_torus) {
        (Some(s), _) => (s, ShiftSource::Spec),
        (None, Some(s)) => (s, ShiftSource::Torus),
        (None, None) => (
            infer_shift(spec, i).expect("delta is nonzero on some generator"),
            ShiftSource::Inferred,
        ),
    };
    for j in 0..i {
        let r = shift_residual(spec, i, j, &s);
        if !r.is_zero() {
            return Err(Error::ShiftRelation {
                step: i + 1,
                generator: spec.names()[j].clone(),
                residual: r.display_with(spec.names()),
            });
        }
    }
    if s.is_zero() {
        return Err(Error::MissingShift {
            step: i + 1,
            reason: format!("the shift relation forces s = 0 ({s_source})"),
        });
    }
    Ok(StepVerdict { step: i, nilpotency, s: Some(s), s_source, lambda })
}

fn certify(spec: &IteratedPPASpec, top: usize, s: &Rational, cutoff: usize) -> Result<Certificate> {
    let ctx = DeletionContext::new(spec, top, s.clone(), cutoff)?;
    let n = spec.n();
    let x: Vec<_> = (0..top).map(|j| LaurentPolynomial::var(n, j)).collect();
    let mut reports: Vec<IdentityReport> = Vec::new();
    for (j, xj) in x.iter().enumerate() {
        reports.push(verify_eq_3_2(&ctx, xj)?);
        reports.extend(verify_round_trip(&ctx, xj)?);
        for xk in &x[j + 1..] {
            reports.push(verify_theta_poisson(&ctx, xj, xk)?);
        }
    }
    let failures = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{}: {} vs {}",
                r.identity,
                r.lhs.display_with(spec.names()),
                r.rhs.display_with(spec.names())
            )
        })
        .collect();
    Ok(Certificate { identities: reports.len(), failures })
}

/// Verifies locally nilpotent deltas, the shift relations and diagonal
/// alphas, then removes every delta by deletions at the top and reorderings
/// of delta-free top generators. The resulting quadratic matrix is reported
/// in the input generator order.
pub fn gk_normalize(spec: &IteratedPPASpec, opts: &GkOptions) -> Result<GKResult> {
    spec.validate()?;
    let n = spec.n();
    let torus_s = opts.torus.as_ref().map(|td| derive_s(spec, td)).transpose()?;
    let mut cur = spec.clone();
    let mut report = HypothesisReport::default();
    for i in 1..n {
        let verdict = step_verdict(spec, i, torus_s.as_ref().map(|v| &v[i]), opts.cutoff)?;
        cur.set_s(i, verdict.s.clone())?;
        report.steps.push(verdict);
    }

    let mut order: Vec<usize> = (0..n).collect();
    let mut log = Vec::new();
    let max_moves = n * n + 1;
    while let Some(t) = (1..n).rev().find(|&p| !cur.delta_is_zero(p)) {
        if log.len() > max_moves * n {
            return Err(Error::Hypothesis("normalization did not terminate".into()));
        }
        if t == n - 1 {
            let s = cur.s(t).cloned().expect("shift recorded for every step with delta");
            let certificate = if opts.certify { Some(certify(&cur, t, &s, opts.cutoff)?) } else { None };
            cur.clear_delta(t);
            log.push(LogEntry::Deletion { generator: order[t], position: t, s, certificate });
        } else {
            let to = match opts.strategy {
                Case3Strategy::AfterFirst => 1,
                Case3Strategy::BeforeTarget => t,
            };
            let mut perm: Vec<usize> = (0..n).collect();
            let moved = perm.remove(n - 1);
            perm.insert(to, moved);
            cur = cur.reordered(&perm)?;
            order = perm.iter().map(|&p| order[p]).collect();
            log.push(LogEntry::Reorder { generator: order[to], from: n - 1, to, order: order.clone() });
        }
    }

    let mut lambda = vec![vec![Rational::zero(); n]; n];
    for p in 0..n {
        for q in 0..p {
            let c = diagonal_coefficient(&cur, p, q)?;
            lambda[order[q]][order[p]] = -c.clone();
            lambda[order[p]][order[q]] = c;
        }
    }
    Ok(GKResult {
        lambda_out: QuadraticSpec::new(lambda)?,
        log,
        report,
        names: spec.names().to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};
    use crate::poisson::Mode;

    #[test]
    fn quadratic_input_is_a_fixed_point() {
        let q = QuadraticSpec::from_lower(4, |i, j| rat(i as i64 - 5, j as i64 + 2));
        let spec = IteratedPPASpec::from_quadratic(&q, Mode::Polynomial);
        let r = gk_normalize(&spec, &GkOptions::default()).unwrap();
        assert_eq!(r.lambda_out, q);
        assert!(r.log.is_empty());
    }

    fn weyl_like(sign: i64, s: Option<i64>) -> IteratedPPASpec {
        let mut spec = IteratedPPASpec::new(3, Mode::Polynomial);
        let x = |i| LaurentPolynomial::var(3, i);
        spec.set_alpha(1, 0, x(0).scale(&int(sign))).unwrap();
        spec.set_delta(1, 0, LaurentPolynomial::one(3)).unwrap();
        spec.set_alpha(2, 0, x(0).scale(&int(2))).unwrap();
        spec.set_alpha(2, 1, x(1).scale(&int(-2))).unwrap();
        spec.set_s(1, s.map(int)).unwrap();
        spec
    }

    #[test]
    fn deletion_after_reordering() {
        let opts = GkOptions { certify: true, ..GkOptions::default() };
        let r = gk_normalize(&weyl_like(-1, None), &opts).unwrap();
        assert_eq!(r.report.steps[0].s_source, ShiftSource::Inferred);
        assert_eq!(r.report.steps[0].s, Some(int(1)));
        assert_eq!(r.deletions(), 1);
        assert!(r.certified());
        assert!(matches!(r.log[0], LogEntry::Reorder { generator: 2, to: 1, .. }));
        assert_eq!(r.lambda_out.entry(1, 0), &int(-1));
        assert_eq!(r.lambda_out.entry(2, 1), &int(-2));
        let other = gk_normalize(
            &weyl_like(-1, None),
            &GkOptions { strategy: Case3Strategy::BeforeTarget, ..opts },
        )
        .unwrap();
        assert_eq!(other.lambda_out, r.lambda_out);
    }

    #[test]
    fn hypothesis_failures_are_errors() {
        assert!(matches!(
            gk_normalize(&weyl_like(1, Some(1)), &GkOptions::default()),
            Err(Error::ShiftRelation { step: 2, .. })
        ));
        // alpha(b) = +b forces s = -1 with delta(b) = 1; a nonzero s still works
        assert!(gk_normalize(&weyl_like(1, None), &GkOptions::default()).is_ok());
        let mut bad = weyl_like(-1, None);
        bad.set_alpha(2, 1, LaurentPolynomial::var(3, 0)).unwrap();
        assert!(matches!(
            gk_normalize(&bad, &GkOptions::default()),
            Err(Error::NonDiagonalAlpha { step: 3, .. })
        ));
    }
}
