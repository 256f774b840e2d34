use super::*;
use crate::cauchon::{gk_normalize, GkOptions};
use crate::exactalg::{int, rat, ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{verify_jacobi, verify_step_condition};
use crate::torus::{derive_s, verify_thm17};

fn mono(g: usize, vars: &[usize], c: Rational) -> LaurentPolynomial {
    let mut e = vec![0; g];
    for &v in vars {
        e[v] += 1;
    }
    LaurentPolynomial::monomial(ExponentVector::new(e), c)
}

fn zero(n: usize) -> Vec<Vec<Rational>> {
    vec![vec![int(0); n]; n]
}

#[test]
fn matrices_two_by_two() {
    let inst = build(&FamilyParams::Matrices { lambda: int(1), p: zero(2) }).unwrap();
    // X11, X12, X21, X22
    assert_eq!(inst.table.get(3, 0), mono(4, &[1, 2], int(1)));
    let exp = &inst.expected_lambda;
    assert_eq!(exp.entry(2, 0), &int(1));
    assert_eq!(exp.entry(2, 1), &int(1));
    assert_eq!(exp.entry(3, 1), &int(1));
    assert_eq!(exp.entry(1, 0), &int(0));
    assert_eq!(exp.entry(3, 0), &int(0));
    assert_eq!(exp.entry(3, 2), &int(0));

    let mut p = zero(2);
    p[1][0] = rat(2, 3);
    p[0][1] = rat(-2, 3);
    let inst = build(&FamilyParams::Matrices { lambda: int(5), p }).unwrap();
    assert_eq!(inst.table.get(3, 0), mono(4, &[1, 2], int(5)));
}

#[test]
fn symmetric_two_by_two_bracket() {
    let inst = build(&FamilyParams::Symmetric { n: 2 }).unwrap();
    // y11, y12, y22: both terms of the formula contribute y12^2 twice
    assert_eq!(inst.table.get(0, 2), mono(3, &[1, 1], int(4)));
}

#[test]
fn antisymmetric_shared_index() {
    let inst = build(&FamilyParams::Antisymmetric { n: 3 }).unwrap();
    // y12, y13, y23
    assert_eq!(inst.table.get(0, 1), mono(3, &[0, 1], int(1)));
}

#[test]
fn odd_euclidean_rank_one_output() {
    let params = FamilyParams::OddEuclidean {
        gamma: zero(1),
        p: vec![int(3)],
        q: vec![rat(1, 2)],
        lambda: int(2),
    };
    let inst = build(&params).unwrap();
    let r = gk_normalize(&inst.spec, &GkOptions::default()).unwrap();
    assert_eq!(r.lambda_out, inst.expected_lambda);
    // z0, x1, y1
    assert_eq!(r.lambda_out.entry(0, 1), &rat(-3, 2));
    assert_eq!(r.lambda_out.entry(0, 2), &rat(3, 2));
    assert_eq!(r.lambda_out.entry(1, 2), &rat(1, 2));
}

#[test]
fn invalid_parameters_are_rejected() {
    let bad = FamilyParams::SymplecticEuclidean { gamma: zero(1), p: vec![int(1)], q: vec![int(1)] };
    assert!(matches!(build(&bad), Err(Error::InvalidParameters(_))));
    let mut p = zero(2);
    p[0][1] = int(1);
    assert!(build(&FamilyParams::Matrices { lambda: int(1), p }).is_err());
    assert!(build(&FamilyParams::Matrices { lambda: int(0), p: zero(2) }).is_err());
    assert!(build(&FamilyParams::Antisymmetric { n: 1 }).is_err());
    assert_eq!("odd_euclidean".parse::<Family>().unwrap(), Family::OddEuclidean);
    assert!("quantum".parse::<Family>().is_err());
}

#[test]
fn every_family_is_consistent_at_small_sizes() {
    let sizes = [
        (Family::Affine, 3),
        (Family::Matrices, 2),
        (Family::SymplecticEuclidean, 2),
        (Family::OddEuclidean, 1),
        (Family::Symmetric, 3),
        (Family::Antisymmetric, 4),
    ];
    for (family, n) in sizes {
        for params in draw_params(family, n, 7, 2).unwrap() {
            let inst = build(&params).unwrap();
            assert_eq!(inst.spec.n(), family.generator_count(n));
            assert!(verify_jacobi(&inst.table).passed(), "{family}");
            for i in 1..inst.spec.n() {
                assert!(verify_step_condition(&inst.spec, i).unwrap().passed(), "{family} step {i}");
            }
            let thm = verify_thm17(&inst.spec, &inst.torus).unwrap();
            assert_eq!(thm.passed(), family.torus_hypotheses_hold(), "{family}: {thm}");
            if family.torus_hypotheses_hold() {
                derive_s(&inst.spec, &inst.torus).unwrap();
            }
            let r = gk_normalize(&inst.spec, &GkOptions::default()).unwrap();
            assert_eq!(r.lambda_out, inst.expected_lambda, "{family}");
            for v in &r.report.steps {
                assert!(v.nilpotency.iter().all(|&k| k <= family.nilpotency_bound()));
            }
        }
    }
}

#[test]
fn golden_suite_covers_every_family() {
    let suite = golden_suite().unwrap();
    for family in Family::ALL {
        assert!(suite.iter().any(|c| c.params.family() == family));
    }
}
