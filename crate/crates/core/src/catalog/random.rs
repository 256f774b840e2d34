use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{Family, FamilyParams};
use crate::error::Result;
use crate::exactalg::Rational;

/// `±a/b` with `a, b` uniform in `1..=50`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num: i64 = rng.random_range(1..=50);
    let den: i64 = rng.random_range(1..=50);
    let sign = if rng.random_bool(0.5) { -1 } else { 1 };
    Rational::new(BigInt::from(sign * num), BigInt::from(den))
}

fn antisymmetric<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<Rational>> {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = random_rational(rng);
            m[j][i] = -v.clone();
            m[i][j] = v;
        }
    }
    m
}

fn vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng)).collect()
}

/// `Q` drawn so that `q_i != p_i`.
fn distinct_from<R: Rng + ?Sized>(rng: &mut R, p: &[Rational]) -> Vec<Rational> {
    p.iter()
        .map(|pi| loop {
            let q = random_rational(rng);
            if &q != pi {
                break q;
            }
        })
        .collect()
}

/// Valid parameters for `family` at size `n`.
pub fn random_params<R: Rng + ?Sized>(family: Family, n: usize, rng: &mut R) -> Result<FamilyParams> {
    let params = match family {
        Family::Affine => FamilyParams::Affine { q: antisymmetric(rng, n) },
        Family::Matrices => FamilyParams::Matrices { lambda: random_rational(rng), p: antisymmetric(rng, n) },
        Family::SymplecticEuclidean => {
            let gamma = antisymmetric(rng, n);
            let p = vector(rng, n);
            let q = distinct_from(rng, &p);
            FamilyParams::SymplecticEuclidean { gamma, p, q }
        }
        Family::OddEuclidean => {
            let gamma = antisymmetric(rng, n);
            let p = vector(rng, n);
            let q = distinct_from(rng, &p);
            FamilyParams::OddEuclidean { gamma, p, q, lambda: random_rational(rng) }
        }
        Family::Symmetric => FamilyParams::Symmetric { n },
        Family::Antisymmetric => FamilyParams::Antisymmetric { n },
    };
    params.validate()?;
    Ok(params)
}

/// `count` reproducible draws; the stream depends on `seed`, `family` and `n`.
pub fn draw_params(family: Family, n: usize, seed: u64, count: usize) -> Result<Vec<FamilyParams>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((family as u64) << 32) | n as u64);
    (0..count).map(|_| random_params(family, n, &mut rng)).collect()
}
