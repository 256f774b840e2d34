use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{format_rational, Rational};

/// Symbol naming the rational (unit) coordinate.
pub const UNIT_SYMBOL: &str = "1";

/// Element of the Q-vector space with basis {1} ∪ {formal parameter symbols}.
///
/// Only the additive structure exists: there is deliberately no product of
/// two scalar vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScalarVector {
    coords: BTreeMap<String, Rational>,
}

impl ScalarVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(q: Rational) -> Self {
        Self::term(UNIT_SYMBOL, q)
    }

    pub fn symbol(name: &str) -> Self {
        Self::term(name, Rational::one())
    }

    pub fn term(name: &str, q: Rational) -> Self {
        let mut coords = BTreeMap::new();
        if !q.is_zero() {
            coords.insert(name.to_string(), q);
        }
        ScalarVector { coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coordinate(&self, name: &str) -> Rational {
        self.coords.get(name).cloned().unwrap_or_default()
    }

    pub fn coordinates(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.coords.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.coords.keys().map(String::as_str)
    }

    /// `Some(q)` when only the unit coordinate is present.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords.keys().all(|k| k == UNIT_SYMBOL) {
            Some(self.coordinate(UNIT_SYMBOL))
        } else {
            None
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        ScalarVector {
            coords: self.coords.iter().map(|(k, v)| (k.clone(), v * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&Rational::from_integer(k.clone()))
    }

    fn accumulate(&mut self, other: &Self, sign: bool) {
        for (k, v) in &other.coords {
            let entry = self.coords.entry(k.clone()).or_default();
            if sign {
                *entry += v;
            } else {
                *entry -= v;
            }
            if entry.is_zero() {
                self.coords.remove(k);
            }
        }
    }

    /// Specializes every symbol; missing symbols evaluate to zero and the unit
    /// symbol always evaluates to one.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Rational {
        self.coords
            .iter()
            .map(|(k, v)| {
                if k == UNIT_SYMBOL {
                    v.clone()
                } else {
                    v * values.get(k).cloned().unwrap_or_default()
                }
            })
            .sum()
    }
}

impl Add for &ScalarVector {
    type Output = ScalarVector;
    fn add(self, rhs: &ScalarVector) -> ScalarVector {
        let mut out = self.clone();
        out.accumulate(rhs, true);
        out
    }
}

impl Sub for &ScalarVector {
    type Output = ScalarVector;
    fn sub(self, rhs: &ScalarVector) -> ScalarVector {
        let mut out = self.clone();
        out.accumulate(rhs, false);
        out
    }
}

impl Neg for &ScalarVector {
    type Output = ScalarVector;
    fn neg(self) -> ScalarVector {
        ScalarVector {
            coords: self.coords.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl std::ops::AddAssign<&ScalarVector> for ScalarVector {
    fn add_assign(&mut self, rhs: &ScalarVector) {
        self.accumulate(rhs, true);
    }
}

impl From<Rational> for ScalarVector {
    fn from(q: Rational) -> Self {
        ScalarVector::rational(q)
    }
}

/// Prints in the same syntax the scalar-expression parser accepts,
/// e.g. `1/2 + 2/3*t1 - t2`.
impl fmt::Display for ScalarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return f.write_str("0");
        }
        for (idx, (k, v)) in self.coords.iter().enumerate() {
            let negative = v.is_negative();
            let abs = v.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if k == UNIT_SYMBOL {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(k)?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int, rat};

    #[test]
    fn additive_structure() {
        let a = &ScalarVector::symbol("t1") + &ScalarVector::rational(rat(1, 2));
        let b = &a - &ScalarVector::symbol("t1");
        assert_eq!(b.as_rational(), Some(rat(1, 2)));
        assert!(a.as_rational().is_none());
        assert!((&a - &a).is_zero());
        assert_eq!(a.scale_int(&BigInt::from(-2)).to_string(), "-1 - 2*t1");
    }

    #[test]
    fn evaluation_specializes_symbols() {
        let a = &ScalarVector::term("tau", rat(2, 3)) + &ScalarVector::rational(int(1));
        let mut vals = BTreeMap::new();
        vals.insert("tau".to_string(), int(3));
        assert_eq!(a.evaluate(&vals), int(3));
    }
}
