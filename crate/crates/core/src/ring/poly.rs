//! Sparse multivariate polynomials with dense exponent vectors.
//!
//! Coefficients are either arbitrary-precision integers (optionally reduced
//! modulo `m`) or reduced rationals. Zero coefficients are never stored, so
//! two equal polynomials always have identical term maps.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exponent vector, one entry per registered variable.
pub type Exponents = Vec<u32>;

pub trait Coeff:
    Clone
    + Ord
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Bring a coefficient into canonical form for the given modulus.
    fn reduce(self, modulus: Option<&BigInt>) -> Self;
    fn from_bigint(k: &BigInt) -> Self;
}

impl Coeff for BigInt {
    fn reduce(self, modulus: Option<&BigInt>) -> Self {
        match modulus {
            Some(m) => self.mod_floor(m),
            None => self,
        }
    }

    fn from_bigint(k: &BigInt) -> Self {
        k.clone()
    }
}

impl Coeff for BigRational {
    fn reduce(self, _modulus: Option<&BigInt>) -> Self {
        self
    }

    fn from_bigint(k: &BigInt) -> Self {
        BigRational::from_integer(k.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn constant(c: C, nvars: usize, modulus: Option<&BigInt>) -> Self {
        let c = c.reduce(modulus);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { terms }
    }

    pub fn monomial(exps: Exponents, c: C, modulus: Option<&BigInt>) -> Self {
        let c = c.reduce(modulus);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { terms }
    }

    /// Build from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(iter: I, modulus: Option<&BigInt>) -> Self
    where
        I: IntoIterator<Item = (Exponents, C)>,
    {
        let mut terms: BTreeMap<Exponents, C> = BTreeMap::new();
        for (e, c) in iter {
            accumulate(&mut terms, e, c);
        }
        Poly { terms }.normalized(modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant coefficient if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn normalized(self, modulus: Option<&BigInt>) -> Self {
        let terms = self
            .terms
            .into_iter()
            .filter_map(|(e, c)| {
                let c = c.reduce(modulus);
                (!c.is_zero()).then_some((e, c))
            })
            .collect();
        Poly { terms }
    }

    pub fn add(&self, other: &Self, modulus: Option<&BigInt>) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), c.clone());
        }
        Poly { terms }.normalized(modulus)
    }

    pub fn neg(&self, modulus: Option<&BigInt>) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
        .normalized(modulus)
    }

    pub fn sub(&self, other: &Self, modulus: Option<&BigInt>) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            accumulate(&mut terms, e.clone(), -c.clone());
        }
        Poly { terms }.normalized(modulus)
    }

    pub fn mul(&self, other: &Self, modulus: Option<&BigInt>) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut terms: BTreeMap<Exponents, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, ca.clone() * cb.clone());
            }
        }
        Poly { terms }.normalized(modulus)
    }

    pub fn scale(&self, k: &C, modulus: Option<&BigInt>) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.clone() * k.clone()))
                .collect(),
        }
        .normalized(modulus)
    }

    /// Apply a partial map to every coefficient; `None` if any step fails.
    pub fn try_map_coeffs<F>(&self, mut f: F, modulus: Option<&BigInt>) -> Option<Self>
    where
        F: FnMut(&C) -> Option<C>,
    {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(e.clone(), f(c)?);
        }
        Some(Poly { terms }.normalized(modulus))
    }
}

fn accumulate<C: Coeff>(terms: &mut BTreeMap<Exponents, C>, e: Exponents, c: C) {
    match terms.get_mut(&e) {
        Some(slot) => {
            let cur = std::mem::replace(slot, C::zero());
            *slot = cur + c;
        }
        None => {
            terms.insert(e, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64) -> BigInt {
        BigInt::from(k)
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = Poly::monomial(vec![1, 0], z(1), None);
        let s = x.sub(&x, None);
        assert!(s.is_zero());
        assert!(s.terms().is_empty());
    }

    #[test]
    fn modulus_reduces_coefficients() {
        let m = z(4);
        let x = Poly::monomial(vec![1], z(2), Some(&m));
        let sq = x.mul(&x, Some(&m));
        assert!(sq.is_zero());
        let neg = x.neg(Some(&m));
        assert_eq!(neg.terms()[&vec![1]], z(2));
    }

    #[test]
    fn product_of_sum_and_difference() {
        let x = Poly::monomial(vec![1, 0], z(1), None);
        let y = Poly::monomial(vec![0, 1], z(1), None);
        let p = x.add(&y, None).mul(&x.sub(&y, None), None);
        let expect = Poly::from_terms(vec![(vec![2, 0], z(1)), (vec![0, 2], z(-1))], None);
        assert_eq!(p, expect);
    }
}
