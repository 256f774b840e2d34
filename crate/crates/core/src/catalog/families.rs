use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::catalog::FamilyParams;
use crate::error::Result;
use crate::exactalg::{ExponentVector, LaurentPolynomial, Rational};
use crate::poisson::{GeneratorBracketTable, IteratedPPASpec, Mode, QuadraticSpec};
use crate::torus::TorusData;

pub(super) struct Draft {
    pub spec: IteratedPPASpec,
    /// Bracket assembled from the closed formulas, independent of `spec`.
    pub direct: GeneratorBracketTable,
    pub torus: TorusData,
    pub expected: QuadraticSpec,
}

fn int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

fn half(q: &Rational) -> Rational {
    q / int(2)
}

fn sign(t: i64) -> i64 {
    t.signum()
}

/// `c * prod x_k` over `vars` (with repetition).
fn mono(nvars: usize, vars: &[usize], c: Rational) -> LaurentPolynomial {
    let mut e = vec![0; nvars];
    for &v in vars {
        e[v] += 1;
    }
    LaurentPolynomial::monomial(ExponentVector::new(e), c)
}

fn pair_name(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}{}{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}_{}", i + 1, j + 1)
    }
}

fn unit_eta(r: usize, k: usize) -> Vec<Rational> {
    (0..r).map(|c| int(i64::from(c == k))).collect()
}

/// Antisymmetric matrix filled from `(a, b, value)` with `{a, b} = value a b`.
struct Expected(Vec<Vec<Rational>>);

impl Expected {
    fn new(n: usize) -> Self {
        Expected(vec![vec![Rational::zero(); n]; n])
    }

    fn put(&mut self, a: usize, b: usize, v: Rational) {
        self.0[b][a] = -v.clone();
        self.0[a][b] = v;
    }

    fn finish(self) -> Result<QuadraticSpec> {
        QuadraticSpec::new(self.0)
    }
}

fn direct_table<F>(n: usize, mut br: F) -> Result<GeneratorBracketTable>
where
    F: FnMut(usize, usize) -> LaurentPolynomial,
{
    GeneratorBracketTable::from_fn(n, Mode::Polynomial, |a, b| br(a, b))
}

pub(super) fn draft(params: &FamilyParams) -> Result<Draft> {
    match params {
        FamilyParams::Affine { q } => affine(q),
        FamilyParams::Matrices { lambda, p } => matrices(lambda, p),
        FamilyParams::SymplecticEuclidean { gamma, p, q } => euclidean(gamma, p, q, None),
        FamilyParams::OddEuclidean { gamma, p, q, lambda } => euclidean(gamma, p, q, Some(lambda)),
        FamilyParams::Symmetric { n } => symmetric(*n),
        FamilyParams::Antisymmetric { n } => antisymmetric(*n),
    }
}

/// Sets `s_i` to the torus eigenvalue on every step with nonzero delta.
fn attach_shifts(spec: &mut IteratedPPASpec, torus: &TorusData) -> Result<()> {
    for i in 1..spec.n() {
        if !spec.delta_is_zero(i) {
            let s = torus.eta(i).map(|eta| crate::torus::pairing(eta, torus.weight(i)));
            spec.set_s(i, s)?;
        }
    }
    Ok(())
}

fn affine(q: &[Vec<Rational>]) -> Result<Draft> {
    let n = q.len();
    let expected = QuadraticSpec::new(q.to_vec())?;
    let spec = IteratedPPASpec::from_quadratic(&expected, Mode::Polynomial);
    let direct = direct_table(n, |i, j| mono(n, &[i, j], q[i][j].clone()))?;
    let weights = (0..n).map(|j| (0..n).map(|k| i64::from(j == k)).collect()).collect();
    let etas = q.iter().map(|row| Some(row.clone())).collect();
    Ok(Draft { spec, direct, torus: TorusData::new(n, weights, etas)?, expected })
}

fn matrices(lambda: &Rational, p: &[Vec<Rational>]) -> Result<Draft> {
    let n = p.len();
    let g = n * n;
    let idx = |i: usize, j: usize| i * n + j;
    let names = (0..g).map(|a| pair_name("X", a / n, a % n, n)).collect();
    let mut spec = IteratedPPASpec::new(g, Mode::Polynomial).with_names(names)?;
    for a in 1..g {
        let (l, m) = (a / n, a % n);
        for b in 0..a {
            let (i, j) = (b / n, b % n);
            let coeff = if l > i && m > j {
                &p[l][i] + &p[j][m]
            } else if l > i {
                lambda + &p[l][i] + &p[j][m]
            } else {
                p[j][m].clone()
            };
            spec.set_alpha(a, b, mono(g, &[b], coeff))?;
            if l > i && m > j {
                spec.set_delta(a, b, mono(g, &[idx(i, m), idx(l, j)], lambda.clone()))?;
            }
        }
    }
    let direct = direct_table(g, |a, b| {
        let ((l, m), (i, j)) = ((a / n, a % n), (b / n, b % n));
        if l > i && m > j {
            &mono(g, &[b, a], &p[l][i] + &p[j][m]) + &mono(g, &[idx(i, m), idx(l, j)], lambda.clone())
        } else if l > i {
            mono(g, &[b, a], lambda + &p[l][i] + &p[j][m])
        } else {
            mono(g, &[b, a], p[j][m].clone())
        }
    })?;
    let mut expected = Expected::new(g);
    for a in 0..g {
        for b in 0..a {
            let ((l, m), (i, j)) = ((a / n, a % n), (b / n, b % n));
            let v = if l >= i && m > j {
                &p[l][i] + &p[j][m]
            } else {
                lambda + &p[l][i] + &p[j][m]
            };
            expected.put(a, b, v);
        }
    }
    let r = 2 * n;
    let weights = (0..g)
        .map(|a| (0..r).map(|k| i64::from(k == a / n || k == n + a % n)).collect())
        .collect();
    let etas = (0..g)
        .map(|a| {
            let (l, m) = (a / n, a % n);
            let mut eta: Vec<Rational> = (0..n).map(|k| p[l][k].clone()).collect();
            eta.extend((0..n).map(|k| match k.cmp(&m) {
                Ordering::Less => p[k][m].clone(),
                Ordering::Equal => lambda.clone(),
                Ordering::Greater => lambda + &p[k][m],
            }));
            Some(eta)
        })
        .collect();
    let torus = TorusData::new(r, weights, etas)?;
    attach_shifts(&mut spec, &torus)?;
    Ok(Draft { spec, direct, torus, expected: expected.finish()? })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Gen {
    Z,
    X(usize),
    Y(usize),
}

/// Both euclidean families; `lambda` is present exactly for the odd one,
/// which prepends `z_0`.
fn euclidean(
    gamma: &[Vec<Rational>],
    p: &[Rational],
    q: &[Rational],
    lambda: Option<&Rational>,
) -> Result<Draft> {
    let n = p.len();
    let odd = lambda.is_some();
    let off = usize::from(odd);
    let g = 2 * n + off;
    let pos = |x: Gen| match x {
        Gen::Z => 0,
        Gen::X(i) => off + 2 * i,
        Gen::Y(i) => off + 2 * i + 1,
    };
    let gens: Vec<Gen> = (0..g)
        .map(|a| match (odd, a) {
            (true, 0) => Gen::Z,
            _ if (a - off) % 2 == 0 => Gen::X((a - off) / 2),
            _ => Gen::Y((a - off) / 2),
        })
        .collect();
    let names = gens
        .iter()
        .map(|x| match *x {
            Gen::Z => "z0".to_string(),
            Gen::X(i) => format!("x{}", i + 1),
            Gen::Y(i) => format!("y{}", i + 1),
        })
        .collect();
    let mut spec = IteratedPPASpec::new(g, Mode::Polynomial).with_names(names)?;
    let v = |x: Gen, c: Rational| mono(g, &[pos(x)], c);

    // step data
    for (a, &new) in gens.iter().enumerate() {
        for (b, &old) in gens.iter().enumerate().take(a) {
            let (alpha, delta) = match (new, old) {
                (Gen::X(j), Gen::Z) => (v(old, half(&p[j])), None),
                (Gen::Y(j), Gen::Z) => (v(old, -half(&p[j])), None),
                (Gen::X(j), Gen::X(i)) => (v(old, -&q[i] + &p[j] + &gamma[j][i]), None),
                (Gen::X(j), Gen::Y(i)) => (v(old, &q[i] + &gamma[i][j]), None),
                (Gen::Y(j), Gen::X(i)) if i < j => (v(old, -&p[j] + &gamma[i][j]), None),
                (Gen::Y(j), Gen::Y(i)) => (v(old, gamma[j][i].clone()), None),
                (Gen::Y(j), Gen::X(_)) => {
                    let mut d = LaurentPolynomial::zero(g);
                    for l in 0..j {
                        d = &d + &mono(g, &[pos(Gen::X(l)), pos(Gen::Y(l))], -(&q[l] - &p[l]));
                    }
                    if let Some(lambda) = lambda {
                        d = &d + &mono(g, &[0, 0], -lambda.clone());
                    }
                    (v(old, -q[j].clone()), Some(d))
                }
                (Gen::Z, _) => unreachable!("z0 is adjoined first"),
            };
            spec.set_alpha(a, b, alpha)?;
            if let Some(d) = delta {
                spec.set_delta(a, b, d)?;
            }
        }
    }

    // closed bracket formulas, {u, w} for any ordered pair
    let br = |u: Gen, w: Gen| -> LaurentPolynomial {
        let uw = |c: Rational| mono(g, &[pos(u), pos(w)], c);
        match (u, w) {
            (Gen::Z, Gen::Z) => LaurentPolynomial::zero(g),
            (Gen::Z, Gen::X(i)) => uw(-half(&p[i])),
            (Gen::Z, Gen::Y(i)) => uw(half(&p[i])),
            (Gen::Y(i), Gen::Y(j)) => uw(gamma[i][j].clone()),
            (Gen::X(i), Gen::Y(j)) => match i.cmp(&j) {
                Ordering::Less => uw(&p[j] + &gamma[j][i]),
                Ordering::Greater => uw(&q[j] + &gamma[j][i]),
                Ordering::Equal => {
                    let mut out = uw(q[i].clone());
                    for l in 0..i {
                        out = &out + &mono(g, &[pos(Gen::X(l)), pos(Gen::Y(l))], &q[l] - &p[l]);
                    }
                    if let Some(lambda) = lambda {
                        out = &out + &mono(g, &[0, 0], lambda.clone());
                    }
                    out
                }
            },
            (Gen::X(i), Gen::X(j)) => match i.cmp(&j) {
                Ordering::Less => uw(&q[i] - &p[j] + &gamma[i][j]),
                Ordering::Greater => uw(-(&q[j] - &p[i] + &gamma[j][i])),
                Ordering::Equal => LaurentPolynomial::zero(g),
            },
            _ => LaurentPolynomial::zero(g),
        }
    };
    let direct = direct_table(g, |a, b| {
        let (u, w) = (gens[a], gens[b]);
        match (u, w) {
            (Gen::Z, _) | (Gen::X(_), Gen::Z) | (Gen::Y(_), Gen::Z) => {
                if u == Gen::Z { br(u, w) } else { -br(w, u) }
            }
            (Gen::Y(_), Gen::X(_)) => -br(w, u),
            _ => br(u, w),
        }
    })?;

    let mut expected = Expected::new(g);
    for i in 0..n {
        if odd {
            expected.put(0, pos(Gen::X(i)), -half(&p[i]));
            expected.put(0, pos(Gen::Y(i)), half(&p[i]));
        }
        for j in 0..n {
            if i != j {
                expected.put(pos(Gen::Y(i)), pos(Gen::Y(j)), gamma[i][j].clone());
            }
            let vw = if i < j { &p[j] + &gamma[j][i] } else { &q[j] + &gamma[j][i] };
            expected.put(pos(Gen::X(i)), pos(Gen::Y(j)), vw);
            if i < j {
                expected.put(pos(Gen::X(i)), pos(Gen::X(j)), &q[i] - &p[j] + &gamma[i][j]);
            }
        }
    }

    // torus of rank n + 1: x_i -> e_i, y_i -> (e_1 or 2 e_z) - e_i, z0 -> e_z
    let r = n + 1;
    let weights = gens
        .iter()
        .map(|x| {
            let mut w = vec![0i64; r];
            match *x {
                Gen::Z => w[n] = 1,
                Gen::X(i) => w[i] = 1,
                Gen::Y(i) => {
                    if odd {
                        w[n] = 2;
                    } else {
                        w[0] += 1;
                        w[n] += 1;
                    }
                    w[i] -= 1;
                }
            }
            w
        })
        .collect();
    let etas = gens
        .iter()
        .map(|x| {
            Some(match *x {
                Gen::Z => unit_eta(r, n),
                Gen::X(0) if !odd => unit_eta(r, 0),
                Gen::X(j) => {
                    let mut eta: Vec<Rational> =
                        (0..n).map(|k| -&q[k] + &p[j] + &gamma[j][k]).collect();
                    eta.push(if odd { half(&p[j]) } else { &q[0] + &gamma[0][j] });
                    eta
                }
                Gen::Y(0) if !odd => {
                    let mut eta = vec![Rational::zero(); r];
                    eta[0] = -q[0].clone();
                    eta[n] = int(1);
                    eta
                }
                Gen::Y(j) => {
                    let mut eta: Vec<Rational> = (0..n)
                        .map(|k| match k.cmp(&j) {
                            Ordering::Less => -&p[j] + &gamma[k][j],
                            Ordering::Equal => -q[j].clone(),
                            Ordering::Greater => Rational::zero(),
                        })
                        .collect();
                    eta.push(if odd { -half(&p[j]) } else { gamma[j][0].clone() });
                    eta
                }
            })
        })
        .collect();
    let torus = TorusData::new(r, weights, etas)?;
    attach_shifts(&mut spec, &torus)?;
    Ok(Draft { spec, direct, torus, expected: expected.finish()? })
}

/// Lexicographic index pairs `(i, j)` with `i <= j` (or `i < j` when strict).
fn pairs(n: usize, strict: bool) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + usize::from(strict)..n).map(move |j| (i, j)))
        .collect()
}

fn pair_torus(n: usize, gens: &[(usize, usize)]) -> Result<TorusData> {
    let weights = gens
        .iter()
        .map(|&(i, j)| {
            let mut w = vec![0i64; n];
            w[i] += 1;
            w[j] += 1;
            w
        })
        .collect();
    let etas = gens
        .iter()
        .map(|&(l, m)| {
            let mut eta = vec![Rational::zero(); n];
            eta[l] -= int(1);
            eta[m] -= int(1);
            Some(eta)
        })
        .collect();
    TorusData::new(n, weights, etas)
}

fn symmetric(n: usize) -> Result<Draft> {
    let gens = pairs(n, false);
    let g = gens.len();
    let index = |a: usize, b: usize| gens.iter().position(|&x| x == (a.min(b), a.max(b))).unwrap();
    let names = gens.iter().map(|&(i, j)| pair_name("y", i, j, n)).collect();
    let mut spec = IteratedPPASpec::new(g, Mode::Polynomial).with_names(names)?;
    let yy = |a: (usize, usize), b: (usize, usize), c: i64| mono(g, &[index(a.0, a.1), index(b.0, b.1)], int(c));
    for (a, &(l, m)) in gens.iter().enumerate() {
        for (b, &(i, j)) in gens.iter().enumerate().take(a) {
            let one = (i == l && l < j && j < m) || (i < l && l < j && j == m) || (i < j && j == l && l < m);
            let two = (i == j && j == l && l < m) || (i < j && j == l && l == m);
            let c = if one { -1 } else if two { -2 } else { 0 };
            spec.set_alpha(a, b, mono(g, &[b], int(c)))?;
            if i < l && l <= j && j < m {
                spec.set_delta(a, b, yy((i, m), (l, j), -2))?;
            } else if i <= j && j < l && l <= m {
                spec.set_delta(a, b, &yy((i, l), (j, m), -2) + &yy((i, m), (j, l), -2))?;
            }
        }
    }
    let direct = direct_table(g, |a, b| {
        let ((i, j), (l, m)) = (gens[b], gens[a]);
        let (i, j, l, m) = (i as i64, j as i64, l as i64, m as i64);
        let first = sign(l - j) + sign(m - i);
        let second = sign(l - i) + sign(m - j);
        let (iu, ju, lu, mu) = (i as usize, j as usize, l as usize, m as usize);
        // {y_ij, y_lm} for the earlier (i, j); the table stores its negative
        -(&yy((iu, lu), (ju, mu), first) + &yy((iu, mu), (ju, lu), second))
    })?;
    let mut expected = Expected::new(g);
    for (a, &(l, m)) in gens.iter().enumerate() {
        for (b, &(i, j)) in gens.iter().enumerate().take(a) {
            let one = (i == l && l < j && j < m) || (i < l && l < j && j == m) || (i < j && j == l && l < m);
            let two = (i == j && j == l && l < m) || (i < j && j == l && l == m);
            if one || two {
                expected.put(b, a, int(if one { 1 } else { 2 }));
            }
        }
    }
    let torus = pair_torus(n, &gens)?;
    attach_shifts(&mut spec, &torus)?;
    Ok(Draft { spec, direct, torus, expected: expected.finish()? })
}

fn antisymmetric(n: usize) -> Result<Draft> {
    let gens = pairs(n, true);
    let g = gens.len();
    let index = |a: usize, b: usize| gens.iter().position(|&x| x == (a, b)).unwrap();
    // y_ab with y_ba = -y_ab and y_aa = 0, as (generator, sign)
    let entry = |a: usize, b: usize| match a.cmp(&b) {
        Ordering::Less => Some((index(a, b), 1)),
        Ordering::Greater => Some((index(b, a), -1)),
        Ordering::Equal => None,
    };
    let yy = |a: (usize, usize), b: (usize, usize), c: i64| match (entry(a.0, a.1), entry(b.0, b.1)) {
        (Some((u, su)), Some((w, sw))) => mono(g, &[u, w], int(c * su * sw)),
        _ => LaurentPolynomial::zero(g),
    };
    let names = gens.iter().map(|&(i, j)| pair_name("y", i, j, n)).collect();
    let mut spec = IteratedPPASpec::new(g, Mode::Polynomial).with_names(names)?;
    let shares_one = |(i, j): (usize, usize), (l, m): (usize, usize)| {
        usize::from(i == l) + usize::from(i == m) + usize::from(j == l) + usize::from(j == m) == 1
    };
    for (a, &(l, m)) in gens.iter().enumerate() {
        for (b, &(i, j)) in gens.iter().enumerate().take(a) {
            let c = if shares_one((i, j), (l, m)) { -1 } else { 0 };
            spec.set_alpha(a, b, mono(g, &[b], int(c)))?;
            if i < l && l < j && j < m {
                spec.set_delta(a, b, yy((i, m), (l, j), -2))?;
            } else if i < j && j < l && l < m {
                spec.set_delta(a, b, &yy((i, l), (j, m), -2) + &yy((i, m), (j, l), 2))?;
            }
        }
    }
    let direct = direct_table(g, |a, b| {
        let ((i, j), (l, m)) = (gens[b], gens[a]);
        let (si, sj, sl, sm) = (i as i64, j as i64, l as i64, m as i64);
        let first = sign(sl - sj) + sign(sm - si);
        let second = sign(sl - si) + sign(sm - sj);
        -(&yy((i, l), (j, m), first) - &yy((i, m), (j, l), second))
    })?;
    let mut expected = Expected::new(g);
    for (a, &lm) in gens.iter().enumerate() {
        for (b, &ij) in gens.iter().enumerate().take(a) {
            if shares_one(ij, lm) {
                expected.put(b, a, int(1));
            }
        }
    }
    let torus = pair_torus(n, &gens)?;
    attach_shifts(&mut spec, &torus)?;
    Ok(Draft { spec, direct, torus, expected: expected.finish()? })
}
