use crate::error::{Error, Result};
use crate::exactalg::{LaurentPolynomial, Rational};
use crate::poisson::{Derivation, GeneratorBracketTable, Mode, QuadraticSpec};

/// `x1, ..., xn`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Data of one adjunction `B[x_i; alpha_i, delta_i]`: images of the earlier
/// generators `x_0..x_{i-1}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub alpha: Vec<LaurentPolynomial>,
    pub delta: Vec<LaurentPolynomial>,
    pub s: Option<Rational>,
}

/// Iterated Poisson polynomial algebra `k[x_0][x_1; alpha_1, delta_1]...`,
/// indexed from 0. Step 0 carries no data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IteratedPPASpec {
    n: usize,
    mode: Mode,
    names: Vec<String>,
    steps: Vec<Step>,
}

impl IteratedPPASpec {
    /// All alpha and delta zero.
    pub fn new(n: usize, mode: Mode) -> Self {
        let steps = (0..n)
            .map(|i| Step {
                alpha: vec![LaurentPolynomial::zero(n); i],
                delta: vec![LaurentPolynomial::zero(n); i],
                s: None,
            })
            .collect();
        IteratedPPASpec { n, mode, names: default_names(n), steps }
    }

    /// `alpha_i(x_j) = lambda_ij x_j`, `delta = 0`.
    pub fn from_quadratic(q: &QuadraticSpec, mode: Mode) -> Self {
        let n = q.n();
        let mut spec = Self::new(n, mode);
        for i in 0..n {
            for j in 0..i {
                spec.steps[i].alpha[j] = LaurentPolynomial::var(n, j).scale(q.entry(i, j));
            }
        }
        spec
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::MalformedSpec(format!(
                "{} names given for {} generators",
                names.len(),
                self.n
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn step(&self, i: usize) -> &Step {
        &self.steps[i]
    }

    pub fn alpha(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.steps[i].alpha[j]
    }

    pub fn delta(&self, i: usize, j: usize) -> &LaurentPolynomial {
        &self.steps[i].delta[j]
    }

    pub fn s(&self, i: usize) -> Option<&Rational> {
        self.steps[i].s.as_ref()
    }

    fn check_pair(&self, i: usize, j: usize, v: &LaurentPolynomial) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        if j >= i {
            return Err(Error::MalformedSpec(format!(
                "step {} has no image for generator {}",
                i + 1,
                j + 1
            )));
        }
        if v.nvars() != self.n {
            return Err(Error::ArityMismatch { left: self.n, right: v.nvars() });
        }
        if !v.involves_only_below(i) {
            return Err(Error::MalformedSpec(format!(
                "step {} image {} involves generators of index >= {}",
                i + 1,
                v,
                i + 1
            )));
        }
        if self.mode == Mode::Polynomial && !v.is_polynomial() {
            return Err(Error::LaurentInput { element: v.to_string() });
        }
        Ok(())
    }

    pub fn set_alpha(&mut self, i: usize, j: usize, v: LaurentPolynomial) -> Result<()> {
        self.check_pair(i, j, &v)?;
        self.steps[i].alpha[j] = v;
        Ok(())
    }

    pub fn set_delta(&mut self, i: usize, j: usize, v: LaurentPolynomial) -> Result<()> {
        self.check_pair(i, j, &v)?;
        self.steps[i].delta[j] = v;
        Ok(())
    }

    pub fn set_s(&mut self, i: usize, s: Option<Rational>) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        self.steps[i].s = s;
        Ok(())
    }

    /// Re-checks every stored image.
    pub fn validate(&self) -> Result<()> {
        if self.steps.len() != self.n || self.names.len() != self.n {
            return Err(Error::MalformedSpec("step or name count differs from n".into()));
        }
        for (i, st) in self.steps.iter().enumerate() {
            if st.alpha.len() != i || st.delta.len() != i {
                return Err(Error::MalformedSpec(format!("step {} has wrong arity", i + 1)));
            }
            for j in 0..i {
                self.check_pair(i, j, &st.alpha[j])?;
                self.check_pair(i, j, &st.delta[j])?;
            }
        }
        Ok(())
    }

    pub fn alpha_derivation(&self, i: usize) -> Derivation {
        Derivation::new(self.n, self.steps[i].alpha.clone())
    }

    pub fn delta_derivation(&self, i: usize) -> Derivation {
        Derivation::new(self.n, self.steps[i].delta.clone())
    }

    /// True when `delta_i` vanishes on every generator.
    pub fn delta_is_zero(&self, i: usize) -> bool {
        self.steps[i].delta.iter().all(LaurentPolynomial::is_zero)
    }

    /// Sets every `delta_i(x_j)` of step `i` to zero.
    pub fn clear_delta(&mut self, i: usize) {
        let n = self.n;
        for d in &mut self.steps[i].delta {
            *d = LaurentPolynomial::zero(n);
        }
    }

    /// The same algebra with generators adjoined in a new order: new
    /// generator `p` is old generator `perm[p]`. Each bracket is split as
    /// `alpha(y_q) y_p + delta(y_q)`; fails when some bracket does not have
    /// that shape over the earlier generators.
    pub fn reordered(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&o| o >= n || std::mem::replace(&mut seen[o], true)) {
            return Err(Error::MalformedSpec(format!("{perm:?} is not a permutation of {n} generators")));
        }
        let mut position = vec![0; n];
        for (p, &o) in perm.iter().enumerate() {
            position[o] = p;
        }
        let table = ppa_to_table(self);
        let mut out = Self::new(n, self.mode);
        out.names = perm.iter().map(|&o| self.names[o].clone()).collect();
        for p in 0..n {
            out.steps[p].s = self.steps[perm[p]].s.clone();
            for q in 0..p {
                let value = table.get(perm[p], perm[q]).relabel(n, &position);
                let mut alpha = Vec::new();
                let mut delta = Vec::new();
                for (e, c) in value.terms() {
                    match e[p] {
                        0 => delta.push((e.clone(), c.clone())),
                        1 => alpha.push((e.with_entry(p, -1), c.clone())),
                        _ => {
                            return Err(Error::MalformedSpec(format!(
                                "{{{}, {}}} = {} is not affine in {}",
                                out.names[p],
                                out.names[q],
                                value.display_with(&out.names),
                                out.names[p]
                            )))
                        }
                    }
                }
                out.set_alpha(p, q, LaurentPolynomial::from_terms(n, alpha)?)?;
                out.set_delta(p, q, LaurentPolynomial::from_terms(n, delta)?)?;
            }
        }
        Ok(out)
    }
}

/// `{x_i, x_j} = alpha_i(x_j) x_i + delta_i(x_j)` for `i > j`.
pub fn ppa_to_table(spec: &IteratedPPASpec) -> GeneratorBracketTable {
    let n = spec.n();
    GeneratorBracketTable::from_fn(n, spec.mode(), |i, j| {
        &(spec.alpha(i, j) * &LaurentPolynomial::var(n, i)) + spec.delta(i, j)
    })
    .expect("validated spec entries fit its mode")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, ExponentVector};

    #[test]
    fn weyl_like_step() {
        let mut spec = IteratedPPASpec::new(2, Mode::Polynomial);
        let x1 = LaurentPolynomial::var(2, 0);
        spec.set_alpha(1, 0, -&x1).unwrap();
        spec.set_delta(1, 0, LaurentPolynomial::one(2)).unwrap();
        spec.set_s(1, Some(int(1))).unwrap();
        let t = ppa_to_table(&spec);
        let expected = &LaurentPolynomial::monomial(ExponentVector::new(vec![1, 1]), int(-1))
            + &LaurentPolynomial::one(2);
        assert_eq!(t.get(1, 0), expected);
    }

    #[test]
    fn zero_spec_gives_zero_table() {
        let t = ppa_to_table(&IteratedPPASpec::new(3, Mode::Polynomial));
        assert_eq!(t, GeneratorBracketTable::zero(3, Mode::Polynomial));
    }

    #[test]
    fn reordering_preserves_brackets() {
        let mut spec = IteratedPPASpec::new(3, Mode::Polynomial);
        let x = |i| LaurentPolynomial::var(3, i);
        spec.set_alpha(1, 0, x(0).scale(&int(2))).unwrap();
        spec.set_alpha(2, 0, x(0).scale(&int(-1))).unwrap();
        spec.set_alpha(2, 1, x(1).scale(&int(3))).unwrap();
        assert_eq!(spec.reordered(&[0, 1, 2]).unwrap(), spec);
        let moved = spec.reordered(&[0, 2, 1]).unwrap();
        assert_eq!(moved.names(), ["x1", "x3", "x2"]);
        // {x2, x3} = -3 x2 x3, so the new step of x2 has alpha(x3) = -3 x3
        assert_eq!(moved.alpha(2, 1), &x(1).scale(&int(-3)));
        let original = ppa_to_table(&spec);
        let back = ppa_to_table(&moved.reordered(&[0, 2, 1]).unwrap());
        assert_eq!(original, back);
        assert!(spec.reordered(&[0, 0, 1]).is_err());

        // {x1, x2} = -x1^2 is quadratic in x1, so x1 cannot be adjoined after x2
        let mut weyl = IteratedPPASpec::new(2, Mode::Polynomial);
        weyl.set_delta(1, 0, LaurentPolynomial::monomial(ExponentVector::new(vec![2, 0]), int(1))).unwrap();
        assert!(weyl.reordered(&[1, 0]).is_err());
    }

    #[test]
    fn images_must_stay_below_the_step() {
        let mut spec = IteratedPPASpec::new(3, Mode::Polynomial);
        assert!(spec.set_delta(1, 0, LaurentPolynomial::var(3, 1)).is_err());
        assert!(spec.set_delta(1, 1, LaurentPolynomial::var(3, 0)).is_err());
        let inv = LaurentPolynomial::monomial(ExponentVector::new(vec![-1, 0, 0]), int(1));
        assert!(spec.set_alpha(2, 0, inv).is_err());
    }
}
