use std::collections::BTreeMap;
use std::fmt;


use super::scalar::{Poly, Rational, Scalar};

/// Finite formal linear combination. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinComb<B: Ord, S> {
    terms: BTreeMap<B, S>,
}

impl<B: Ord + Clone, S: Scalar> Default for LinComb<B, S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Ord + Clone, S: Scalar> LinComb<B, S> {
    pub fn zero() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }

    pub fn single(b: B) -> Self {
        Self::term(b, S::one())
    }

    pub fn term(b: B, c: S) -> Self {
        let mut x = Self::zero();
        x.add_term(b, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (B, S)>) -> Self {
        let mut x = Self::zero();
        for (b, c) in terms {
            x.add_term(b, c);
        }
        x
    }

    pub fn add_term(&mut self, b: B, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.terms.remove(&b);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> S {
        self.terms.get(b).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &S)> {
        self.terms.iter()
    }

    pub fn basis(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|(b, x)| (b.clone(), x.clone() * c.clone())))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone, T: Scalar>(
        &self,
        mut f: impl FnMut(&B, &S) -> LinComb<C, T>,
    ) -> LinComb<C, T> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            for (d, x) in f(b, c).terms {
                out.add_term(d, x);
            }
        }
        out
    }

    /// Bilinear extension of `f` over both arguments.
    pub fn bilinear<C: Ord + Clone, D: Ord + Clone>(
        &self,
        other: &LinComb<C, S>,
        mut f: impl FnMut(&B, &C) -> LinComb<D, S>,
    ) -> LinComb<D, S> {
        let mut out = LinComb::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let c = x.clone() * y.clone();
                for (d, z) in f(a, b).terms {
                    out.add_term(d, z * c.clone());
                }
            }
        }
        out
    }
}

/// Substitutes `t = delta` in every coefficient.
pub fn specialize<B: Ord + Clone>(x: &LinComb<B, Poly>, delta: &Rational) -> LinComb<B, Rational> {
    x.map_linear(|b, c| LinComb::term(b.clone(), c.eval(delta)))
}

impl<B: Ord + Clone + fmt::Display, S: Scalar> fmt::Display for LinComb<B, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·[{b}]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::scalar::int;
    use num_traits::One;

    #[test]
    fn zero_terms_vanish() {
        let mut x: LinComb<u8, Rational> = LinComb::term(1, int(2));
        x.add_term(1, int(-2));
        assert!(x.is_zero());
        x.add_term(3, int(0));
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn specialization_drops_vanishing_terms() {
        let x: LinComb<u8, Poly> = LinComb::from_terms([
            (1, Poly::t() - Poly::one()),
            (2, Poly::t()),
        ]);
        let y = specialize(&x, &int(1));
        assert_eq!(y, LinComb::term(2, int(1)));
    }

    #[test]
    fn arithmetic() {
        let a: LinComb<u8, Rational> = LinComb::from_terms([(1, int(1)), (2, int(3))]);
        let b = LinComb::from_terms([(2, int(3)), (5, int(1))]);
        let d = a.sub(&b);
        assert_eq!(d, LinComb::from_terms([(1, int(1)), (5, int(-1))]));
        let p = a.bilinear(&b, |x, y| LinComb::single(x + y));
        assert_eq!(p.coeff(&4), int(9));
        assert_eq!(p.coeff(&6), int(1));
    }
}
