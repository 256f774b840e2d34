use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::catalog::random_rational;
use crate::error::{Error, Result};
use crate::exactalg::{ExponentVector, IntegerMatrix, LaurentPolynomial, Rational, ScalarVector};
use crate::poisson::{Mode, QuadraticSpec};
use crate::skewfields::normal_form::skew_normal_form;
use crate::skewfields::structure::subgroup_basis;
use crate::skewfields::{apply_congruence, rational_structure, GroupKind, SkewMatrix};

/// Upper bound on matrices examined by [`orbit_membership_bounded`].
pub const MAX_ORBIT_CANDIDATES: u64 = 2_000_000;

/// One generator pair of a substitution check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    /// `{x^{a_i}, x^{a_j}}` under the source bracket.
    pub bracket: LaurentPolynomial,
    /// `mu_ij x^{a_i + a_j}`.
    pub expected: LaurentPolynomial,
}

impl PairCheck {
    pub fn passed(&self) -> bool {
        self.bracket == self.expected
    }
}

/// Monomial substitution `y_i = x^{a_i}` carrying `lambda` to `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub mu: SkewMatrix,
    pub substitution: Vec<ExponentVector>,
    /// Values assigned to formal symbols for the bracket check; empty when
    /// `lambda` is rational.
    pub specialization: BTreeMap<String, Rational>,
    pub checks: Vec<PairCheck>,
}

impl IsomorphismWitness {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(PairCheck::passed)
    }
}

/// Builds `mu = A lambda A^T` and checks the substitution bracket by bracket.
/// Formal symbols are specialized to rationals drawn from `seed`.
pub fn witness_isomorphism(a: &IntegerMatrix, lam: &SkewMatrix, seed: u64) -> Result<IsomorphismWitness> {
    let det = a.det()?;
    if det.abs() != BigInt::one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    let mu = apply_congruence(a, lam)?;
    let n = lam.n();
    let substitution = (0..n)
        .map(|i| {
            a.row_i64(i)
                .map(ExponentVector::new)
                .ok_or_else(|| Error::InvalidParameters(format!("row {} of the witness exceeds 64 bits", i + 1)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let specialization: BTreeMap<String, Rational> = lam.symbols().into_iter().map(|s| (s, random_rational(&mut rng))).collect();
    let table = lam.specialize(&specialization).to_table(Mode::Laurent);
    let mu_q = mu.specialize(&specialization);
    let mut checks = Vec::new();
    for i in 0..n {
        let yi = LaurentPolynomial::monomial(substitution[i].clone(), Rational::one());
        for j in i + 1..n {
            let yj = LaurentPolynomial::monomial(substitution[j].clone(), Rational::one());
            let bracket = table.bracket(&yi, &yj)?;
            let expected = LaurentPolynomial::monomial(substitution[i].add(&substitution[j]), mu_q.entry(i, j).clone());
            checks.push(PairCheck { i, j, bracket, expected });
        }
    }
    Ok(IsomorphismWitness { mu, substitution, specialization, checks })
}

/// Outcome of an isomorphism decision; a `true` verdict carries a witness
/// that has already been re-verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoDecision {
    pub verdict: bool,
    pub witness: Option<IntegerMatrix>,
    pub reason: String,
}

impl IsoDecision {
    fn no(reason: impl Into<String>) -> Self {
        IsoDecision { verdict: false, witness: None, reason: reason.into() }
    }
}

fn same_size(lam: &SkewMatrix, mu: &SkewMatrix) -> Result<()> {
    if lam.n() != mu.n() {
        return Err(Error::Shape(format!("cannot compare {}x{} with {}x{}", lam.n(), lam.n(), mu.n(), mu.n())));
    }
    Ok(())
}

fn verified(a: IntegerMatrix, lam: &SkewMatrix, mu: &SkewMatrix, reason: String) -> Result<IsoDecision> {
    if &apply_congruence(&a, lam)? != mu {
        return Err(Error::Hypothesis(format!("witness {a} failed re-verification")));
    }
    Ok(IsoDecision { verdict: true, witness: Some(a), reason })
}

/// Decides isomorphism when the entries of `lam` generate a cyclic group.
pub fn decide_iso_case_b(lam: &SkewMatrix, mu: &SkewMatrix) -> Result<IsoDecision> {
    same_size(lam, mu)?;
    let n = lam.n();
    let sl = rational_structure(lam);
    let (g, nl) = match (&sl.kind, sl.integerized) {
        (GroupKind::Zero, _) => {
            return if mu.is_zero() {
                verified(IntegerMatrix::identity(n), lam, mu, "both brackets vanish".into())
            } else {
                Ok(IsoDecision::no("lambda vanishes but mu does not"))
            };
        }
        (GroupKind::Cyclic { generator }, Some(m)) => (generator.clone(), m),
        _ => {
            return Err(Error::Hypothesis(format!(
                "entries of lambda generate a free group of rank {}, not a cyclic one",
                sl_rank(lam)
            )))
        }
    };
    let sm = rational_structure(mu);
    let nm = match (&sm.kind, sm.integerized) {
        (GroupKind::Cyclic { generator }, Some(m)) if *generator == g => m,
        _ => return Ok(IsoDecision::no("entries generate different subgroups")),
    };
    let fl = skew_normal_form(&nl)?;
    let fm = skew_normal_form(&nm)?;
    if fl.d != fm.d {
        let show = |d: &[BigInt]| d.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        return Ok(IsoDecision::no(format!("invariant factors ({}) and ({}) differ", show(&fl.d), show(&fm.d))));
    }
    let a = fm.c.inverse_unimodular()?.mul(&fl.c)?;
    verified(a, lam, mu, format!("same generator {g} and invariant factors"))
}

fn sl_rank(lam: &SkewMatrix) -> usize {
    rational_structure(lam).rank()
}

/// Two-variable fields are isomorphic exactly when `lambda_12 = +-mu_12`.
pub fn decide_iso_2x2(lam: &SkewMatrix, mu: &SkewMatrix) -> Result<bool> {
    if lam.n() != 2 || mu.n() != 2 {
        return Err(Error::Shape("two-variable decision needs 2x2 matrices".into()));
    }
    let (l, m) = (lam.entry(0, 1), mu.entry(0, 1));
    Ok(l == m || *l == -m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrbitVerdict {
    /// `nu = A lambda A^T`, re-verified.
    Member(IntegerMatrix),
    /// No integer matrix with entries bounded by the budget works.
    NotFoundWithinBudget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSearch {
    pub verdict: OrbitVerdict,
    pub budget: u32,
    pub candidates_examined: u64,
    /// Reason no budget can succeed, when one was detected.
    pub obstruction: Option<String>,
}

fn integer_rank(q: &QuadraticSpec) -> usize {
    let mut den = BigInt::one();
    for v in q.matrix().iter().flatten() {
        den = num_integer::Integer::lcm(&den, v.denom());
    }
    let scale = Rational::from_integer(den);
    let rows = q.matrix().iter().map(|r| r.iter().map(|v| (v * &scale).to_integer()).collect()).collect();
    IntegerMatrix::from_big_rows(rows).map_or(0, |m| m.rank())
}

fn obstruction(lam: &SkewMatrix, nu: &SkewMatrix) -> Option<String> {
    let n = lam.n();
    let upper = |m: &SkewMatrix| -> Vec<ScalarVector> {
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| m.entry(i, j).clone()).collect()
    };
    let (ul, un) = (upper(lam), upper(nu));
    let base = subgroup_basis(&ul.iter().collect::<Vec<_>>());
    let joint = subgroup_basis(&ul.iter().chain(&un).collect::<Vec<_>>());
    if base != joint {
        return Some("entries of nu leave the subgroup generated by the entries of lambda".into());
    }
    if let (Some(ql), Some(qn)) = (lam.as_quadratic(), nu.as_quadratic()) {
        let (rl, rn) = (integer_rank(&ql), integer_rank(&qn));
        if rn > rl {
            return Some(format!("rank of nu ({rn}) exceeds rank of lambda ({rl})"));
        }
    }
    None
}

/// Searches integer matrices by increasing max-abs entry, lexicographically
/// within each shell, for `A` with `nu = A lambda A^T`.
pub fn orbit_membership_bounded(lam: &SkewMatrix, nu: &SkewMatrix, budget: u32) -> Result<OrbitSearch> {
    same_size(lam, nu)?;
    let n = lam.n();
    let cells = (n * n) as u32;
    let total = (2 * u64::from(budget) + 1).checked_pow(cells).filter(|&t| t <= MAX_ORBIT_CANDIDATES);
    if total.is_none() {
        return Err(Error::InvalidParameters(format!(
            "budget {budget} on {n}x{n} matrices exceeds {MAX_ORBIT_CANDIDATES} candidates"
        )));
    }
    let obstruction = obstruction(lam, nu);
    let mut examined = 0u64;
    for shell in 0..=budget as i64 {
        let mut entries = vec![-shell; n * n];
        loop {
            if entries.iter().any(|v| v.abs() == shell) {
                examined += 1;
                let rows: Vec<Vec<i64>> = entries.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
                let a = if n == 0 { IntegerMatrix::zeros(0, 0) } else { IntegerMatrix::from_rows(&rows)? };
                if &apply_congruence(&a, lam)? == nu {
                    return Ok(OrbitSearch { verdict: OrbitVerdict::Member(a), budget, candidates_examined: examined, obstruction });
                }
            }
            // odometer over [-shell, shell]^(n*n), last entry fastest
            let mut k = entries.len();
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if entries[k] < shell {
                    entries[k] += 1;
                    break;
                }
                entries[k] = -shell;
                if k == 0 {
                    k = usize::MAX;
                    break;
                }
            }
            if k == usize::MAX || entries.is_empty() {
                break;
            }
        }
    }
    Ok(OrbitSearch { verdict: OrbitVerdict::NotFoundWithinBudget, budget, candidates_examined: examined, obstruction })
}

/// Checks a pair of opposite witnesses `mu = A lambda A^T`,
/// `lambda = B mu B^T` and the shape of `BA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutualWitnessReport {
    pub forward: bool,
    pub backward: bool,
    pub product: IntegerMatrix,
    /// `BA` is diagonal with entries `+-1`.
    pub product_is_signed_diagonal: bool,
    pub a_unimodular: bool,
}

impl MutualWitnessReport {
    pub fn passed(&self) -> bool {
        self.forward && self.backward && self.product_is_signed_diagonal
    }
}

pub fn check_mutual_witnesses(
    lam: &SkewMatrix,
    mu: &SkewMatrix,
    a: &IntegerMatrix,
    b: &IntegerMatrix,
) -> Result<MutualWitnessReport> {
    same_size(lam, mu)?;
    let forward = &apply_congruence(a, lam)? == mu;
    let backward = &apply_congruence(b, mu)? == lam;
    let product = b.mul(a)?;
    let n = product.rows();
    let product_is_signed_diagonal = (0..n)
        .all(|i| (0..n).all(|j| if i == j { product.get(i, j).abs().is_one() } else { product.get(i, j).is_zero() }));
    Ok(MutualWitnessReport { forward, backward, product, product_is_signed_diagonal, a_unimodular: a.is_unimodular() })
}

/// Constant term of `{f, g}`; always zero for a quadratic bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoWeylReport {
    pub bracket: LaurentPolynomial,
    pub constant_term: Rational,
}

impl NoWeylReport {
    pub fn passed(&self) -> bool {
        self.constant_term.is_zero()
    }
}

pub fn verify_no_weyl_pair(q: &QuadraticSpec, f: &LaurentPolynomial, g: &LaurentPolynomial) -> Result<NoWeylReport> {
    for p in [f, g] {
        if p.nvars() != q.n() {
            return Err(Error::ArityMismatch { left: q.n(), right: p.nvars() });
        }
    }
    let bracket = q.bracket(f, g);
    let constant_term = bracket.constant_term();
    Ok(NoWeylReport { bracket, constant_term })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    fn two(v: Rational) -> SkewMatrix {
        SkewMatrix::from_rationals(&[vec![int(0), v.clone()], vec![-v, int(0)]]).unwrap()
    }

    #[test]
    fn witness_examples() {
        let lam = two(int(2));
        let w = witness_isomorphism(&IntegerMatrix::identity(2), &lam, 0).unwrap();
        assert_eq!(w.mu, lam);
        assert!(w.passed());
        let swap = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let w = witness_isomorphism(&swap, &lam, 0).unwrap();
        assert_eq!(w.mu, two(int(-2)));
        assert!(w.passed());
        let singular = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(witness_isomorphism(&singular, &lam, 0), Err(Error::NotUnimodular { .. })));
    }

    #[test]
    fn symbolic_witness_is_specialized() {
        let t = ScalarVector::symbol("tau");
        let z = ScalarVector::zero;
        let lam = SkewMatrix::new(vec![
            vec![z(), t.clone(), z()],
            vec![-&t, z(), ScalarVector::rational(int(1))],
            vec![z(), ScalarVector::rational(int(-1)), z()],
        ])
        .unwrap();
        let a = IntegerMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 0], vec![2, -3, 1]]).unwrap();
        let w = witness_isomorphism(&a, &lam, 11).unwrap();
        assert!(w.specialization.contains_key("tau"));
        assert!(w.passed());
    }

    #[test]
    fn case_b_examples() {
        let d = decide_iso_case_b(&two(int(2)), &two(int(-2))).unwrap();
        assert!(d.verdict);
        assert_eq!(apply_congruence(d.witness.as_ref().unwrap(), &two(int(2))).unwrap(), two(int(-2)));
        assert!(!decide_iso_case_b(&two(int(2)), &two(int(3))).unwrap().verdict);
        let d = decide_iso_case_b(&SkewMatrix::zero(3), &SkewMatrix::zero(3)).unwrap();
        assert_eq!(d.witness, Some(IntegerMatrix::identity(3)));
        assert!(!decide_iso_case_b(&SkewMatrix::zero(2), &two(int(1))).unwrap().verdict);
    }

    #[test]
    fn case_b_distinguishes_invariant_factors() {
        let m1 = IntegerMatrix::from_rows(&[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 2], vec![0, 0, -2, 0]]).unwrap();
        let m2 = IntegerMatrix::from_rows(&[vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 3], vec![0, 0, -3, 0]]).unwrap();
        let (l, m) = (SkewMatrix::from_integer(&m1).unwrap(), SkewMatrix::from_integer(&m2).unwrap());
        let d = decide_iso_case_b(&l, &m).unwrap();
        assert!(!d.verdict, "{}", d.reason);
    }

    #[test]
    fn case_b_rejects_free_groups() {
        let t = |s: &str| ScalarVector::symbol(s);
        let lam = SkewMatrix::new(vec![vec![ScalarVector::zero(), t("a")], vec![-&t("a"), ScalarVector::zero()]]).unwrap();
        assert!(decide_iso_case_b(&lam, &lam).unwrap().verdict);
        let z = ScalarVector::zero;
        let lam = SkewMatrix::new(vec![
            vec![z(), t("a"), t("b")],
            vec![-&t("a"), z(), z()],
            vec![-&t("b"), z(), z()],
        ])
        .unwrap();
        assert!(matches!(decide_iso_case_b(&lam, &lam), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn two_variable_examples() {
        assert!(decide_iso_2x2(&two(rat(5, 7)), &two(rat(-5, 7))).unwrap());
        assert!(!decide_iso_2x2(&two(int(1)), &two(int(2))).unwrap());
        assert!(decide_iso_2x2(&two(int(0)), &two(int(0))).unwrap());
        assert!(decide_iso_2x2(&SkewMatrix::zero(3), &SkewMatrix::zero(3)).is_err());
    }

    #[test]
    fn orbit_search_examples() {
        let lam = two(int(2));
        let s = orbit_membership_bounded(&lam, &SkewMatrix::zero(2), 3).unwrap();
        assert_eq!(s.verdict, OrbitVerdict::Member(IntegerMatrix::zeros(2, 2)));
        let s = orbit_membership_bounded(&lam, &two(int(8)), 2).unwrap();
        let OrbitVerdict::Member(a) = s.verdict else { panic!("expected a member") };
        assert_eq!(apply_congruence(&a, &lam).unwrap(), two(int(8)));
        assert_eq!(a.det().unwrap(), BigInt::from(4));
        let s = orbit_membership_bounded(&lam, &two(int(1)), 4).unwrap();
        assert_eq!(s.verdict, OrbitVerdict::NotFoundWithinBudget);
        assert_eq!(s.candidates_examined, 9u64.pow(4));
        assert!(s.obstruction.is_some());
        assert!(orbit_membership_bounded(&lam, &two(int(1)), 1000).is_err());
    }

    #[test]
    fn mutual_witnesses_in_the_free_case() {
        let t = |s: &str| ScalarVector::symbol(s);
        let z = ScalarVector::zero;
        let lam = SkewMatrix::new(vec![
            vec![z(), t("a"), t("b")],
            vec![-&t("a"), z(), t("c")],
            vec![-&t("b"), -&t("c"), z()],
        ])
        .unwrap();
        let a = IntegerMatrix::diagonal(&[-1, -1, -1]);
        let r = check_mutual_witnesses(&lam, &lam, &a, &a).unwrap();
        assert!(r.passed() && r.a_unimodular);
        let id = IntegerMatrix::identity(3);
        let p = IntegerMatrix::from_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let r = check_mutual_witnesses(&lam, &lam, &p, &id).unwrap();
        assert!(!r.forward && !r.passed());
    }

    #[test]
    fn no_weyl_examples() {
        let q = QuadraticSpec::new(vec![vec![int(0), rat(3, 2)], vec![rat(-3, 2), int(0)]]).unwrap();
        let x = LaurentPolynomial::var(2, 0);
        let xinv = LaurentPolynomial::monomial(ExponentVector::new(vec![-1, 0]), int(1));
        assert!(verify_no_weyl_pair(&q, &x, &xinv).unwrap().passed());
        let f = &(&x + &LaurentPolynomial::var(2, 1)) + &xinv;
        let g = &LaurentPolynomial::monomial(ExponentVector::new(vec![1, -1]), int(2)) + &LaurentPolynomial::var(2, 1);
        let r = verify_no_weyl_pair(&q, &f, &g).unwrap();
        assert!(!r.bracket.is_zero() && r.passed());
        assert!(verify_no_weyl_pair(&q, &f, &f).unwrap().passed());
        assert!(verify_no_weyl_pair(&q, &LaurentPolynomial::var(3, 0), &f).is_err());
    }
}
