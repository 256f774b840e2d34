use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{ppa_to_table, Derivation, GeneratorBracketTable, IteratedPPASpec, Mode};

/// Iteration bound for nilpotency certificates.
pub const DEFAULT_CUTOFF: usize = 64;

/// `A = B[x; alpha, delta]` where `x` is generator `top` of `spec` and `B`
/// is generated by the earlier generators. Later generators are ignored.
#[derive(Clone, Debug)]
pub struct DeletionContext {
    spec: IteratedPPASpec,
    top: usize,
    s: Rational,
    cutoff: usize,
    table: GeneratorBracketTable,
    alpha: Derivation,
    delta: Derivation,
}

impl DeletionContext {
    /// Fails unless `s != 0` and `delta` kills every generator of `B` within
    /// `cutoff` iterations.
    pub fn new(spec: &IteratedPPASpec, top: usize, s: Rational, cutoff: usize) -> Result<Self> {
        let n = spec.n();
        if top == 0 || top >= n {
            return Err(Error::IndexOutOfRange { index: top, n });
        }
        if s.is_zero() {
            return Err(Error::MissingShift { step: top + 1, reason: "s must be nonzero".into() });
        }
        if cutoff == 0 {
            return Err(Error::Hypothesis("nilpotency cutoff must be positive".into()));
        }
        let delta = spec.delta_derivation(top);
        for j in 0..top {
            let xj = LaurentPolynomial::var(n, j);
            if delta.nilpotency_index(&xj, cutoff).is_none() {
                return Err(Error::CutoffExceeded { element: spec.names()[j].clone(), cutoff });
            }
        }
        let table = ppa_to_table(spec).with_mode(Mode::Laurent)?;
        Ok(DeletionContext {
            spec: spec.clone(),
            top,
            s,
            cutoff,
            table,
            alpha: spec.alpha_derivation(top),
            delta,
        })
    }

    /// Context for the last generator, with `s` taken from the spec.
    pub fn at_top(spec: &IteratedPPASpec, cutoff: usize) -> Result<Self> {
        let top = spec.n().checked_sub(1).ok_or(Error::IndexOutOfRange { index: 0, n: 0 })?;
        let s = spec.s(top).cloned().ok_or_else(|| Error::MissingShift {
            step: top + 1,
            reason: "the spec does not supply s".into(),
        })?;
        Self::new(spec, top, s, cutoff)
    }

    pub fn spec(&self) -> &IteratedPPASpec {
        &self.spec
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn s(&self) -> &Rational {
        &self.s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn nvars(&self) -> usize {
        self.spec.n()
    }

    /// Bracket of `B[x^{±1}; alpha, delta]` (Laurent mode).
    pub fn table(&self) -> &GeneratorBracketTable {
        &self.table
    }

    pub fn alpha(&self) -> &Derivation {
        &self.alpha
    }

    pub fn delta(&self) -> &Derivation {
        &self.delta
    }

    /// The top generator `x`.
    pub fn x(&self) -> LaurentPolynomial {
        LaurentPolynomial::var(self.nvars(), self.top)
    }

    fn element_error(&self, f: &LaurentPolynomial, what: &str) -> Error {
        Error::Hypothesis(format!(
            "{} is not an element of {what}",
            f.display_with(self.spec.names())
        ))
    }

    /// Rejects elements outside `B`.
    pub fn check_base(&self, b: &LaurentPolynomial) -> Result<()> {
        if b.nvars() != self.nvars() {
            return Err(Error::ArityMismatch { left: self.nvars(), right: b.nvars() });
        }
        if !b.involves_only_below(self.top) {
            return Err(self.element_error(b, "B"));
        }
        Ok(())
    }

    /// Rejects elements outside `B[x^{±1}]`.
    pub fn check_extended(&self, f: &LaurentPolynomial) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::ArityMismatch { left: self.nvars(), right: f.nvars() });
        }
        if !f.involves_only_below(self.top + 1) {
            return Err(self.element_error(f, "B[x^{±1}]"));
        }
        Ok(())
    }

    /// `delta^k(b)`; fails if `delta^cutoff` is reached without vanishing.
    pub fn delta_power(&self, b: &LaurentPolynomial, k: usize) -> Result<LaurentPolynomial> {
        self.check_base(b)?;
        let mut v = b.clone();
        for step in 0..k {
            if v.is_zero() {
                break;
            }
            if step >= self.cutoff {
                return Err(self.cutoff_error(b));
            }
            v = self.delta.apply(&v);
        }
        Ok(v)
    }

    fn cutoff_error(&self, b: &LaurentPolynomial) -> Error {
        Error::CutoffExceeded { element: b.display_with(self.spec.names()), cutoff: self.cutoff }
    }

    /// `sum_k (1/k!) (sign/s)^k delta^k(b) x^{-k}` for `b` in `B`.
    fn series(&self, b: &LaurentPolynomial, sign: i64) -> Result<LaurentPolynomial> {
        let n = self.nvars();
        let ratio = Rational::from_integer(BigInt::from(sign)) / &self.s;
        let mut coeff = Rational::one();
        let mut out = LaurentPolynomial::zero(n);
        let mut v = b.clone();
        let mut k: i64 = 0;
        while !v.is_zero() {
            if k as usize >= self.cutoff {
                return Err(self.cutoff_error(b));
            }
            let shift = ExponentVector::unit(n, self.top).scale(-k);
            out = &out + &v.shift(&shift).scale(&coeff);
            v = self.delta.apply(&v);
            k += 1;
            coeff = &coeff * &ratio / Rational::from_integer(BigInt::from(k));
        }
        Ok(out)
    }

    /// Splits `f` as `sum_k b_k x^k` with `b_k` in `B`.
    fn x_components(&self, f: &LaurentPolynomial) -> Result<BTreeMap<i64, LaurentPolynomial>> {
        self.check_extended(f)?;
        let n = self.nvars();
        let mut parts: BTreeMap<i64, Vec<(ExponentVector, Rational)>> = BTreeMap::new();
        for (e, c) in f.terms() {
            let k = e[self.top];
            parts.entry(k).or_default().push((e.with_entry(self.top, -k), c.clone()));
        }
        parts
            .into_iter()
            .map(|(k, terms)| Ok((k, LaurentPolynomial::from_terms(n, terms)?)))
            .collect()
    }

    fn apply_termwise(&self, f: &LaurentPolynomial, sign: i64) -> Result<LaurentPolynomial> {
        let n = self.nvars();
        let mut out = LaurentPolynomial::zero(n);
        for (k, b) in self.x_components(f)? {
            let image = self.series(&b, sign)?;
            out = &out + &image.shift(&ExponentVector::unit(n, self.top).scale(k));
        }
        Ok(out)
    }

    /// `theta`, extended multiplicatively by `x -> x` to `B[x^{±1}]`.
    pub fn theta(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.apply_termwise(f, -1)
    }

    /// Inverse of [`Self::theta`]: the same series with `+1/s`.
    pub fn theta_inverse(&self, f: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        self.apply_termwise(f, 1)
    }
}
