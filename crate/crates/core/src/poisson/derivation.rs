use crate::exactalg::LaurentPolynomial;

/// A derivation of the (Laurent) polynomial ring determined by its values on
/// generators: `D(f) = sum_j df/dx_j * D(x_j)`. Generators without an image
/// are sent to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    nvars: usize,
    images: Vec<LaurentPolynomial>,
}

impl Derivation {
    pub fn new(nvars: usize, mut images: Vec<LaurentPolynomial>) -> Self {
        images.resize(nvars, LaurentPolynomial::zero(nvars));
        Derivation { nvars, images }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::new(nvars, Vec::new())
    }

    pub fn image(&self, j: usize) -> &LaurentPolynomial {
        &self.images[j]
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(LaurentPolynomial::is_zero)
    }

    pub fn apply(&self, f: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.nvars);
        for (j, img) in self.images.iter().enumerate() {
            if img.is_zero() || !f.involves(j) {
                continue;
            }
            out = &out + &(&f.partial(j) * img);
        }
        out
    }

    /// `D^k(f)`.
    pub fn apply_n(&self, f: &LaurentPolynomial, k: usize) -> LaurentPolynomial {
        let mut v = f.clone();
        for _ in 0..k {
            if v.is_zero() {
                break;
            }
            v = self.apply(&v);
        }
        v
    }

    /// Smallest `k` with `D^k(f) = 0`, searching up to `cutoff` iterations.
    pub fn nilpotency_index(&self, f: &LaurentPolynomial, cutoff: usize) -> Option<usize> {
        let mut v = f.clone();
        for k in 0..=cutoff {
            if v.is_zero() {
                return Some(k);
            }
            v = self.apply(&v);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int;

    #[test]
    fn leibniz_on_products() {
        // D(x1) = 1, D(x2) = x1
        let n = 2;
        let x1 = LaurentPolynomial::var(n, 0);
        let x2 = LaurentPolynomial::var(n, 1);
        let d = Derivation::new(n, vec![LaurentPolynomial::one(n), x1.clone()]);
        let f = &x1 * &x2;
        // D(x1 x2) = x2 + x1^2
        assert_eq!(d.apply(&f), &x2 + &(&x1 * &x1));
        assert_eq!(d.apply_n(&x1.pow(2), 2), LaurentPolynomial::constant(n, int(2)));
        assert_eq!(d.nilpotency_index(&x1.pow(2), 10), Some(3));
        assert_eq!(d.nilpotency_index(&x2, 1), None);
    }
}
