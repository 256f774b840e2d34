use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use ppa::catalog::{build, draw_params, Family};
use ppa::cauchon::{gk_normalize, Case3Strategy, DeletionContext, GkOptions};
use ppa::exactalg::{rat, ExponentVector, IntegerMatrix, LaurentPolynomial, Rational};
use ppa::poisson::{
    center_lattice, ppa_to_table, verify_jacobi, verify_step_condition, IteratedPPASpec, Mode, QuadraticSpec,
};
use ppa::skewfields::{apply_congruence, decide_iso_case_b, skew_normal_form, witness_isomorphism, SkewMatrix};
use ppa::torus::{eta_act, enumerate_variable_hstable};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| rat(a, b))
}

fn arb_laurent(nvars: usize, terms: usize, lo: i64, hi: i64) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(lo..=hi, nvars), arb_rational()), 0..=terms).prop_map(move |ts| {
        LaurentPolynomial::from_terms(nvars, ts.into_iter().map(|(e, c)| (ExponentVector::new(e), c))).unwrap()
    })
}

fn arb_quadratic(n: usize) -> impl Strategy<Value = QuadraticSpec> {
    prop::collection::vec(arb_rational(), n * (n - 1) / 2).prop_map(move |vals| {
        let mut it = vals.into_iter();
        QuadraticSpec::from_lower(n, |_, _| it.next().unwrap())
    })
}

fn arb_skew_int(n: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |vals| {
        let mut m = vec![vec![0i64; n]; n];
        let mut it = vals.into_iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap();
                m[i][j] = v;
                m[j][i] = -v;
            }
        }
        IntegerMatrix::from_rows(&m).unwrap()
    })
}

/// Product of elementary matrices: row additions and swaps.
fn arb_unimodular(n: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut a = IntegerMatrix::identity(n);
        for (i, j, c, swap) in ops {
            let mut e = vec![vec![0i64; n]; n];
            for (k, row) in e.iter_mut().enumerate() {
                row[k] = 1;
            }
            if i != j {
                if swap {
                    e[i][i] = 0;
                    e[j][j] = 0;
                    e[i][j] = 1;
                    e[j][i] = 1;
                } else {
                    e[i][j] = c;
                }
            }
            a = IntegerMatrix::from_rows(&e).unwrap().mul(&a).unwrap();
        }
        a
    })
}

fn monomial(e: Vec<i64>) -> LaurentPolynomial {
    LaurentPolynomial::monomial(ExponentVector::new(e), rat(1, 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(f in arb_laurent(3, 4, -2, 2), g in arb_laurent(3, 4, -2, 2), h in arb_laurent(3, 4, -2, 2)) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn scaled_partial_is_a_derivation(f in arb_laurent(3, 4, -2, 2), g in arb_laurent(3, 4, -2, 2), i in 0usize..3) {
        let lhs = (&f * &g).scaled_partial(i);
        let rhs = &(&f.scaled_partial(i) * &g) + &(&f * &g.scaled_partial(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn constant_term_is_linear_and_reads_shifts(
        f in arb_laurent(3, 5, -2, 2),
        g in arb_laurent(3, 5, -2, 2),
        c in arb_rational(),
        a in prop::collection::vec(-2i64..=2, 3),
    ) {
        prop_assert_eq!((&f + &g.scale(&c)).constant_term(), f.constant_term() + g.constant_term() * &c);
        let shifted = &f * &monomial(a.clone());
        let neg = ExponentVector::new(a.iter().map(|v| -v).collect());
        prop_assert_eq!(shifted.constant_term(), f.coefficient(&neg));
    }

    #[test]
    fn monomial_substitution_is_multiplicative(
        f in arb_laurent(2, 4, -2, 2),
        g in arb_laurent(2, 4, -2, 2),
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 2),
    ) {
        let rows: Vec<ExponentVector> = rows.into_iter().map(ExponentVector::new).collect();
        let lhs = (&f * &g).monomial_substitute(&rows).unwrap();
        let rhs = &f.monomial_substitute(&rows).unwrap() * &g.monomial_substitute(&rows).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_brackets_agree_and_are_antisymmetric_derivations(
        q in arb_quadratic(3),
        f in arb_laurent(3, 4, -2, 2),
        g in arb_laurent(3, 4, -2, 2),
        h in arb_laurent(3, 3, -2, 2),
    ) {
        let table = q.to_table(Mode::Laurent);
        let fg = table.bracket(&f, &g).unwrap();
        prop_assert_eq!(&fg, &q.bracket_termwise(&f, &g));
        prop_assert_eq!(&fg, &q.bracket(&f, &g));
        prop_assert_eq!(&fg, &-&table.bracket(&g, &f).unwrap());
        let lhs = table.bracket(&(&f * &g), &h).unwrap();
        let rhs = &(&f * &table.bracket(&g, &h).unwrap()) + &(&table.bracket(&f, &h).unwrap() * &g);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quadratic_specs_pass_step_conditions_and_jacobi(q in arb_quadratic(4)) {
        let spec = IteratedPPASpec::from_quadratic(&q, Mode::Polynomial);
        for i in 1..4 {
            prop_assert!(verify_step_condition(&spec, i).unwrap().passed());
        }
        prop_assert!(verify_jacobi(&ppa_to_table(&spec)).passed());
    }

    #[test]
    fn central_monomials_commute_with_generators(m in arb_skew_int(4, 3)) {
        let rows: Vec<Vec<Rational>> = m.to_rows().into_iter().map(|r| r.into_iter().map(Rational::from_integer).collect()).collect();
        let q = QuadraticSpec::new(rows).unwrap();
        let lattice = center_lattice(&q);
        for e in lattice.exponent_vectors().unwrap() {
            let z = LaurentPolynomial::monomial(e, rat(1, 1));
            for i in 0..4 {
                prop_assert!(q.bracket(&z, &LaurentPolynomial::var(4, i)).is_zero());
            }
        }
    }

    #[test]
    fn normal_form_invariants(m in arb_skew_int(5, 9), u in arb_unimodular(5)) {
        let nf = skew_normal_form(&m).unwrap();
        prop_assert!(nf.c.is_unimodular());
        prop_assert_eq!(nf.c.mul(&m).unwrap().mul(&nf.c.transpose()).unwrap(), nf.block_form());
        let g = m.content();
        if !g.is_zero() {
            prop_assert_eq!(&nf.d[0], &g);
        }
        let moved = u.mul(&m).unwrap().mul(&u.transpose()).unwrap();
        prop_assert_eq!(&skew_normal_form(&moved).unwrap().d, &nf.d);
        // same form gives a congruence witness
        let (a, b) = (SkewMatrix::from_integer(&m).unwrap(), SkewMatrix::from_integer(&moved).unwrap());
        let d = decide_iso_case_b(&a, &b).unwrap();
        prop_assert!(d.verdict);
        prop_assert_eq!(apply_congruence(d.witness.as_ref().unwrap(), &a).unwrap(), b);
    }

    #[test]
    fn unimodular_witnesses_always_check(m in arb_skew_int(4, 6), u in arb_unimodular(4), scale in arb_rational()) {
        prop_assume!(!scale.is_zero());
        let lam = SkewMatrix::from_integer(&m).unwrap().scale(&scale);
        let w = witness_isomorphism(&u, &lam, 1).unwrap();
        prop_assert!(w.passed());
        prop_assert_eq!(w.mu, apply_congruence(&u, &lam).unwrap());
    }

    #[test]
    fn hstable_sets_are_closed_under_union(q in arb_quadratic(4), zeros in prop::collection::vec(any::<bool>(), 6)) {
        // zero entries make more ideals Poisson, so unions are exercised
        let mut it = zeros.into_iter();
        let q = QuadraticSpec::from_lower(4, |i, j| if it.next().unwrap() { Rational::zero() } else { q.entry(i, j).clone() });
        let spec = IteratedPPASpec::from_quadratic(&q, Mode::Polynomial);
        let sets = enumerate_variable_hstable(&ppa_to_table(&spec)).unwrap();
        let masks: Vec<u32> = sets.iter().map(|s| s.iter().map(|&j| 1u32 << j).sum()).collect();
        for a in &masks {
            for b in &masks {
                prop_assert!(masks.contains(&(a | b)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn theta_is_multiplicative_and_keeps_top_parts(
        seed in 0u64..1000,
        f in arb_laurent(4, 3, 0, 2),
        g in arb_laurent(4, 3, 0, 2),
        k in -2i64..=2,
    ) {
        let inst = build(&draw_params(Family::Matrices, 2, seed, 1).unwrap()[0]).unwrap();
        let ctx = DeletionContext::new(&inst.spec, 3, inst.spec.s(3).unwrap().clone(), 64).unwrap();
        let x = |p: &LaurentPolynomial| p.shift(&ExponentVector::new(vec![0, 0, 0, k]));
        let (f, g) = (x(&f), x(&g));
        let tf = ctx.theta(&f).unwrap();
        prop_assert_eq!(ctx.theta(&(&f * &g)).unwrap(), &tf * &ctx.theta(&g).unwrap());
        prop_assert_eq!(ctx.theta_inverse(&tf).unwrap(), f.clone());
        // theta only lowers the power of the top generator
        if let Some(m) = f.terms().map(|(e, _)| e[3]).max() {
            let top = |p: &LaurentPolynomial| -> Vec<(ExponentVector, Rational)> {
                p.terms().filter(|(e, _)| e[3] == m).map(|(e, c)| (e.clone(), c.clone())).collect()
            };
            prop_assert_eq!(top(&tf), top(&f));
            prop_assert!(tf.terms().all(|(e, _)| e[3] <= m));
        }
    }

    #[test]
    fn torus_acts_by_poisson_derivations_and_grades(
        seed in 0u64..1000,
        a in prop::collection::vec(0i64..=2, 4),
        b in prop::collection::vec(0i64..=2, 4),
        i in 0usize..4,
    ) {
        let inst = build(&draw_params(Family::Matrices, 2, seed, 1).unwrap()[0]).unwrap();
        let (td, table) = (&inst.torus, &inst.table);
        let (fa, fb) = (monomial(a), monomial(b));
        let br = table.bracket(&fa, &fb).unwrap();
        let lhs = eta_act(td, i, &br).unwrap();
        let rhs = &table.bracket(&eta_act(td, i, &fa).unwrap(), &fb).unwrap() + &table.bracket(&fa, &eta_act(td, i, &fb).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let prod = eta_act(td, i, &(&fa * &fb)).unwrap();
        let leib = &(&eta_act(td, i, &fa).unwrap() * &fb) + &(&fa * &eta_act(td, i, &fb).unwrap());
        prop_assert_eq!(prod, leib);
        if !br.is_zero() {
            let (u, v) = (td.homogeneous_weight(&fa).unwrap(), td.homogeneous_weight(&fb).unwrap());
            let sum: Vec<i64> = u.iter().zip(&v).map(|(x, y)| x + y).collect();
            prop_assert_eq!(td.homogeneous_weight(&br), Some(sum));
        }
    }

    #[test]
    fn case_orders_agree_on_catalog_draws(seed in 0u64..1000, fam in 0usize..6) {
        let (family, n) = [(Family::Affine, 3), (Family::Matrices, 2), (Family::SymplecticEuclidean, 2),
            (Family::OddEuclidean, 1), (Family::Symmetric, 2), (Family::Antisymmetric, 3)][fam];
        let inst = build(&draw_params(family, n, seed, 1).unwrap()[0]).unwrap();
        let a = gk_normalize(&inst.spec, &GkOptions::default()).unwrap();
        let b = gk_normalize(&inst.spec, &GkOptions { strategy: Case3Strategy::BeforeTarget, ..GkOptions::default() }).unwrap();
        prop_assert_eq!(&a.lambda_out, &b.lambda_out);
        prop_assert_eq!(&a.lambda_out, &inst.expected_lambda);
    }
}

#[test]
fn gcd_oracle_matches_content() {
    let m = IntegerMatrix::from_rows(&[vec![0, 6, -9], vec![-6, 0, 15], vec![9, -15, 0]]).unwrap();
    let nf = skew_normal_form(&m).unwrap();
    let g = [6i64, 9, 15].iter().fold(BigInt::zero(), |acc, &v| acc.gcd(&BigInt::from(v)));
    assert_eq!(nf.d[0], g.abs());
}
