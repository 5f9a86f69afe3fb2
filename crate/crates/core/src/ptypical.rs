//! p-typical Witt vectors `(a₀, …, aₙ)`, indexed on powers of `p`.
//!
//! Arithmetic evaluates universal p-typical polynomials, so it works over
//! rings with p-torsion. Ghost components are `wₖ = Σ_{i≤k} pⁱ aᵢ^{p^{k−i}}`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

use crate::error::{check_len, Result, WittError};
use crate::ring::{Elem, Ring};
use crate::series::{PlainSeries, UnitSeries};
use crate::universal::{gen_polys, PolyKind};
use crate::witt::{is_prime, GhostVec};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PTypicalWitt {
    ring: Ring,
    p: u64,
    coords: Vec<Elem>,
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(WittError::invalid(format!("{p} is not prime")))
    }
}

fn p_pow(p: u64, e: usize) -> BigInt {
    BigInt::from(p).pow(e as u32)
}

impl PTypicalWitt {
    pub fn new(ring: &Ring, p: u64, coords: Vec<Elem>) -> Result<Self> {
        check_prime(p)?;
        if coords.is_empty() {
            return Err(WittError::invalid("p-typical vectors need at least one coordinate"));
        }
        for c in &coords {
            ring.ensure_same(c.ring())?;
        }
        Ok(PTypicalWitt { ring: ring.clone(), p, coords })
    }

    pub fn from_ints(ring: &Ring, p: u64, coords: &[i64]) -> Result<Self> {
        Self::new(ring, p, coords.iter().map(|&c| ring.from_int(c)).collect())
    }

    pub fn zero(ring: &Ring, p: u64, len: usize) -> Result<Self> {
        Self::new(ring, p, vec![ring.zero(); len])
    }

    pub fn one(ring: &Ring, p: u64, len: usize) -> Result<Self> {
        Self::teichmuller_of(&ring.one(), p, len)
    }

    pub fn teichmuller_of(a: &Elem, p: u64, len: usize) -> Result<Self> {
        let ring = a.ring();
        let mut coords = vec![ring.zero(); len];
        if let Some(c) = coords.first_mut() {
            *c = a.clone();
        }
        Self::new(ring, p, coords)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        if self.p != other.p {
            return Err(WittError::invalid(format!("primes differ: {} vs {}", self.p, other.p)));
        }
        check_len(self.len(), other.len())
    }

    pub fn ghost(&self) -> GhostVec {
        let comps = (0..self.len())
            .map(|k| {
                let mut acc = self.ring.zero();
                for (i, a) in self.coords[..=k].iter().enumerate() {
                    if !a.is_zero() {
                        let e = self.p.pow((k - i) as u32);
                        acc = &acc + &a.pow(e).mul_int(&p_pow(self.p, i));
                    }
                }
                acc
            })
            .collect();
        GhostVec::new(&self.ring, comps).expect("components share the ring")
    }

    /// Solve `wₖ − Σ_{i<k} pⁱ aᵢ^{p^{k−i}} = pᵏ aₖ` successively.
    pub fn from_ghost(p: u64, w: &GhostVec) -> Result<Self> {
        check_prime(p)?;
        let ring = w.ring();
        let mut coords: Vec<Elem> = Vec::with_capacity(w.len());
        for (k, wk) in w.components().iter().enumerate() {
            let mut residual = wk.clone();
            for (i, a) in coords.iter().enumerate() {
                if !a.is_zero() {
                    let e = p.pow((k - i) as u32);
                    residual = &residual - &a.pow(e).mul_int(&p_pow(p, i));
                }
            }
            coords.push(residual.exact_div_int(&p_pow(p, k))?);
        }
        Self::new(ring, p, coords)
    }

    fn eval(&self, kind: PolyKind, other: Option<&Self>) -> Result<Self> {
        let set = gen_polys(kind, self.len() - 1)?;
        let out = set.eval(&self.coords, other.map(|o| o.coords.as_slice()))?;
        Self::new(&self.ring, self.p, out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        self.eval(PolyKind::PtSum(self.p), Some(other))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        self.eval(PolyKind::PtProd(self.p), Some(other))
    }

    pub fn neg(&self) -> Result<Self> {
        self.eval(PolyKind::PtNeg(self.p), None)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    /// `k·x` by repeated addition.
    pub fn scalar(&self, k: u64) -> Result<Self> {
        let mut acc = Self::zero(&self.ring, self.p, self.len())?;
        for _ in 0..k {
            acc = acc.add(self)?;
        }
        Ok(acc)
    }

    /// `V(a₀, a₁, …) = (0, a₀, a₁, …)`, dropping the last coordinate.
    pub fn verschiebung(&self) -> Self {
        let mut coords = vec![self.ring.zero()];
        coords.extend(self.coords[..self.len() - 1].iter().cloned());
        PTypicalWitt { ring: self.ring.clone(), p: self.p, coords }
    }

    /// Frobenius, shifting ghost components; the result is one coordinate shorter.
    pub fn frobenius(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(WittError::invalid("Frobenius needs at least two coordinates"));
        }
        let set = gen_polys(PolyKind::PtFrobenius(self.p), self.len() - 2)?;
        let out = set.eval(&self.coords, None)?;
        Self::new(&self.ring, self.p, out)
    }

    /// First `m` coordinates.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.len() {
            return Err(WittError::invalid(format!("cannot restrict length {} to {m}", self.len())));
        }
        Self::new(&self.ring, self.p, self.coords[..m].to_vec())
    }

    /// The image `∏ᵢ E(aᵢ t^{pⁱ})⁻¹` in the unit series, at precision `pⁿ`.
    ///
    /// `E` is the Artin–Hasse exponential; the inverse matches the
    /// `det(1 − tf)` normalization, so `[a]` maps to a series whose ghost
    /// components are `a, aᵖ, a^{p²}, …` at the p-power slots.
    pub fn embed_big(&self) -> Result<UnitSeries> {
        if !self.ring.is_q_algebra() {
            return Err(WittError::UnsupportedRing {
                ring: self.ring.to_string(),
                detail: "the Artin-Hasse embedding needs a Q-algebra".into(),
            });
        }
        let precision = self.p.pow((self.len() - 1) as u32) as usize;
        let mut product = UnitSeries::one(&self.ring, precision);
        for (i, a) in self.coords.iter().enumerate() {
            let e = artin_hasse(a, self.p, precision)?.substitute_power(self.p.pow(i as u32) as usize);
            product = product.mul(&e)?;
        }
        Ok(product.inverse())
    }
}

/// `E(a t) = exp(Σ a^{pʲ} t^{pʲ} / pʲ)` to the given precision.
pub fn artin_hasse(a: &Elem, p: u64, precision: usize) -> Result<UnitSeries> {
    check_prime(p)?;
    let ring = a.ring();
    let mut h = vec![ring.zero(); precision];
    let mut j = 0u32;
    while let Some(idx) = p.checked_pow(j).map(|v| v as usize).filter(|&v| v <= precision) {
        h[idx - 1] = a.pow(idx as u64).exact_div_int(&BigInt::from(idx))?;
        j += 1;
    }
    UnitSeries::exp(&PlainSeries::new(ring, h)?)
}

/// Coefficients of the Artin–Hasse exponential over `ℚ[a]`.
pub fn artin_hasse_coeffs(p: u64, precision: usize) -> Result<UnitSeries> {
    let ring = Ring::polynomial(Ring::rationals(), ["a"])?;
    artin_hasse(&ring.var("a")?, p, precision)
}

impl fmt::Display for PTypicalWitt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PTypicalWitt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PTypicalWitt[p={}]{self}", self.p)
    }
}
