use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;

use crate::error::Result;
use crate::exactalg::{LaurentPolynomial, Rational};
use crate::poisson::{ppa_to_table, Mode};

use super::DeletionContext;

/// Both sides of an identity, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub lhs: LaurentPolynomial,
    pub rhs: LaurentPolynomial,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "holds" } else { "FAILS" };
        write!(f, "{} {verdict}: {} vs {}", self.identity, self.lhs, self.rhs)
    }
}

/// `{x, theta(b)} = theta(alpha(b)) x`.
pub fn verify_eq_3_2(ctx: &DeletionContext, b: &LaurentPolynomial) -> Result<IdentityReport> {
    ctx.check_base(b)?;
    let x = ctx.x();
    let lhs = ctx.table().bracket(&x, &ctx.theta(b)?)?;
    let rhs = &ctx.theta(&ctx.alpha().apply(b))? * &x;
    Ok(IdentityReport { identity: "{x, theta(b)} = theta(alpha(b)) x", lhs, rhs })
}

/// `delta^n({a,b}) = sum_{l+m=n} C(n,l) ({delta^l a, delta^m b}
///  + m delta^l(alpha a) delta^m(b) - l delta^l(a) delta^m(alpha b))`.
pub fn verify_lemma_3_6(
    ctx: &DeletionContext,
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    n: usize,
) -> Result<IdentityReport> {
    ctx.check_base(a)?;
    ctx.check_base(b)?;
    let table = ctx.table();
    let lhs = ctx.delta_power(&table.bracket(a, b)?, n)?;
    let alpha_a = ctx.alpha().apply(a);
    let alpha_b = ctx.alpha().apply(b);
    let mut rhs = LaurentPolynomial::zero(ctx.nvars());
    for l in 0..=n {
        let m = n - l;
        let dla = ctx.delta_power(a, l)?;
        let dmb = ctx.delta_power(b, m)?;
        let mut inner = table.bracket(&dla, &dmb)?;
        inner = &inner + &(&ctx.delta_power(&alpha_a, l)? * &dmb).scale(&int(m));
        inner = &inner - &(&dla * &ctx.delta_power(&alpha_b, m)?).scale(&int(l));
        let c = Rational::from_integer(binomial(BigInt::from(n), BigInt::from(l)));
        rhs = &rhs + &inner.scale(&c);
    }
    Ok(IdentityReport { identity: "delta^n({a,b}) expansion", lhs, rhs })
}

fn int(k: usize) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// `theta({a,b}) = {theta(a), theta(b)}` for `a, b` in `B`.
pub fn verify_theta_poisson(
    ctx: &DeletionContext,
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
) -> Result<IdentityReport> {
    ctx.check_base(a)?;
    ctx.check_base(b)?;
    let table = ctx.table();
    let lhs = ctx.theta(&table.bracket(a, b)?)?;
    let rhs = table.bracket(&ctx.theta(a)?, &ctx.theta(b)?)?;
    Ok(IdentityReport { identity: "theta({a,b}) = {theta(a), theta(b)}", lhs, rhs })
}

/// `theta(theta_inverse(b)) = b` and `theta_inverse(theta(b)) = b`.
pub fn verify_round_trip(ctx: &DeletionContext, b: &LaurentPolynomial) -> Result<[IdentityReport; 2]> {
    let there = ctx.theta(&ctx.theta_inverse(b)?)?;
    let back = ctx.theta_inverse(&ctx.theta(b)?)?;
    Ok([
        IdentityReport { identity: "theta(theta_inverse(b)) = b", lhs: there, rhs: b.clone() },
        IdentityReport { identity: "theta_inverse(theta(b)) = b", lhs: back, rhs: b.clone() },
    ])
}

/// `theta({f,g}') = {theta(f), theta(g)}` for `f, g` in `B[y^{±1}]`, where
/// `{,}'` is the bracket of `B[y^{±1}; alpha]` and `y` shares the slot of `x`.
pub fn verify_theta_extension(
    ctx: &DeletionContext,
    f: &LaurentPolynomial,
    g: &LaurentPolynomial,
) -> Result<IdentityReport> {
    ctx.check_extended(f)?;
    ctx.check_extended(g)?;
    let mut free = ctx.spec().clone();
    free.clear_delta(ctx.top());
    let source = ppa_to_table(&free).with_mode(Mode::Laurent)?;
    let lhs = ctx.theta(&source.bracket(f, g)?)?;
    let rhs = ctx.table().bracket(&ctx.theta(f)?, &ctx.theta(g)?)?;
    Ok(IdentityReport { identity: "theta is a Poisson map on B[y^{±1}; alpha]", lhs, rhs })
}
