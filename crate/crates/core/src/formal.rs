//! The atom presentation of truncated Witt vectors.
//!
//! A [`FormalSum`] is an integer combination of Verschiebung atoms `Vⁱ(a)`,
//! i.e. classes of companion-matrix endomorphisms. Atoms are keyed by the
//! exact ring element, so `V¹(a) + V¹(b)` is a two-atom sum and not `V¹(a+b)`.
//! Products follow `Vⁱ(a)·Vʲ(b) = g·V^l(a^{j/g} b^{i/g})` with `g = gcd(i, j)`
//! and `l = lcm(i, j)`. Every operation works in the quotient by atoms of index
//! above the truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_len, Result, WittError};
use crate::ring::{Elem, Ring};
use crate::series::{PlainSeries, UnitSeries};
use crate::witt::{GhostVec, WittVec};

/// A single Verschiebung atom `Vⁱ(a)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VAtom {
    pub index: usize,
    pub element: Elem,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormalSum {
    ring: Ring,
    trunc: usize,
    terms: BTreeMap<VAtom, BigInt>,
}

impl FormalSum {
    pub fn zero(ring: &Ring, trunc: usize) -> Self {
        FormalSum { ring: ring.clone(), trunc, terms: BTreeMap::new() }
    }

    /// `V¹(1)`, the multiplicative identity.
    pub fn one(ring: &Ring, trunc: usize) -> Self {
        Self::atom(ring, trunc, 1, ring.one()).expect("ring one lives in its ring")
    }

    pub fn atom(ring: &Ring, trunc: usize, index: usize, element: Elem) -> Result<Self> {
        Self::from_terms(ring, trunc, [(index, element, BigInt::one())])
    }

    pub fn from_terms<I>(ring: &Ring, trunc: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Elem, BigInt)>,
    {
        let mut s = FormalSum::zero(ring, trunc);
        for (i, a, c) in terms {
            if i == 0 {
                return Err(WittError::invalid("atom index must be positive"));
            }
            ring.ensure_same(a.ring())?;
            s.push(i, a, c);
        }
        Ok(s)
    }

    /// `τ(a₁, …, aₙ) = Σ Vⁱ(aᵢ)`.
    pub fn teichmuller(w: &WittVec) -> Self {
        let mut s = FormalSum::zero(w.ring(), w.len());
        for (i, a) in w.coords().iter().enumerate() {
            s.push(i + 1, a.clone(), BigInt::one());
        }
        s
    }

    fn push(&mut self, index: usize, element: Elem, c: BigInt) {
        if index == 0 || index > self.trunc || element.is_zero() || c.is_zero() {
            return;
        }
        let key = VAtom { index, element };
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Atoms with their nonzero integer multiplicities, in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&VAtom, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_atoms(&self) -> usize {
        self.terms.len()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        check_len(self.trunc, other.trunc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = self.clone();
        for (atom, c) in &other.terms {
            s.push(atom.index, atom.element.clone(), c.clone());
        }
        Ok(s)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut s = FormalSum::zero(&self.ring, self.trunc);
        for (atom, c) in &self.terms {
            s.push(atom.index, atom.element.clone(), c * k);
        }
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut s = FormalSum::zero(&self.ring, self.trunc);
        for (x, c) in &self.terms {
            for (y, d) in &other.terms {
                let (i, j) = (x.index, y.index);
                let g = i.gcd(&j);
                let l = i / g * j;
                if l > self.trunc {
                    continue;
                }
                let a = &x.element.pow((j / g) as u64) * &y.element.pow((i / g) as u64);
                s.push(l, a, c * d * BigInt::from(g));
            }
        }
        Ok(s)
    }

    /// `Fᵏ`, with `Fᵏ(Vⁱ(a)) = g·V^{i/g}(a^{k/g})`, `g = gcd(k, i)`.
    ///
    /// Atoms of index above the truncation `n` only affect indices above
    /// `n/k`, so the result is truncated at `⌊n/k⌋`.
    pub fn frobenius(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(WittError::invalid("Frobenius index must be positive"));
        }
        let mut s = FormalSum::zero(&self.ring, self.trunc / k);
        for (atom, c) in &self.terms {
            let g = k.gcd(&atom.index);
            s.push(atom.index / g, atom.element.pow((k / g) as u64), c * BigInt::from(g));
        }
        Ok(s)
    }

    /// `Vᵏ`, multiplying every atom index by `k`.
    pub fn verschiebung(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(WittError::invalid("Verschiebung index must be positive"));
        }
        let mut s = FormalSum::zero(&self.ring, self.trunc);
        for (atom, c) in &self.terms {
            if let Some(i) = atom.index.checked_mul(k) {
                s.push(i, atom.element.clone(), c.clone());
            }
        }
        Ok(s)
    }

    /// The modified trace: `Σ c·a` over index-one atoms.
    pub fn trace(&self) -> Elem {
        self.terms
            .iter()
            .filter(|(atom, _)| atom.index == 1)
            .fold(self.ring.zero(), |acc, (atom, c)| &acc + &atom.element.mul_int(c))
    }

    /// Component `k` is the trace of `Fᵏ(self)`.
    pub fn modified_ghost(&self) -> GhostVec {
        let comps = (1..=self.trunc)
            .map(|k| self.frobenius(k).expect("k is positive").trace())
            .collect();
        GhostVec::new(&self.ring, comps).expect("components share the ring")
    }

    /// `∏ (1 − a tⁱ)^c` over all atoms.
    pub fn to_series(&self) -> UnitSeries {
        let mut s = UnitSeries::one(&self.ring, self.trunc);
        for (atom, c) in &self.terms {
            let c = c.to_i64().expect("atom multiplicity fits in i64");
            s.mul_binomial(&atom.element, atom.index, c);
        }
        s
    }

    /// Teichmüller normal form by factoring the characteristic series.
    pub fn normal_form(&self) -> WittVec {
        self.to_series().factor()
    }

    /// Normal form by Newton's recursion on the modified ghost components.
    ///
    /// Solves `−k σ_k = Σ_{j=1..k} σ_{k−j} p_j` for the series coefficients,
    /// dividing by `k` at each step, then reads off coordinates. Fails where
    /// a division by `k` is not unique in the ring.
    pub fn newton_normal_form(&self) -> Result<WittVec> {
        let p = PlainSeries::from_ghost_vec(&self.modified_ghost());
        Ok(UnitSeries::from_ghost(&p)?.factor())
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (atom, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "V^{}({})", atom.index, atom.element)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalSum[n={}]({self})", self.trunc)
    }
}

/// Integer combinations of cycles `Cᵢ` with `Cᵢ·Cⱼ = gcd(i,j)·C_{lcm(i,j)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleSum {
    coeffs: Vec<BigInt>,
}

impl CycleSum {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        CycleSum { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        CycleSum { coeffs: vec![BigInt::zero(); trunc] }
    }

    /// The single cycle `Cᵢ`.
    pub fn cycle(trunc: usize, i: usize) -> Self {
        let mut c = Self::zero(trunc);
        if (1..=trunc).contains(&i) {
            c.coeffs[i - 1] = BigInt::one();
        }
        c
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// Multiplicity of `Cᵢ` (1-based).
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_len(self.truncation(), other.truncation())?;
        Ok(CycleSum { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_len(self.truncation(), other.truncation())?;
        let n = self.truncation();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let (i, j) = (i + 1, j + 1);
                let g = i.gcd(&j);
                let l = i / g * j;
                if l <= n {
                    out.coeffs[l - 1] += a * b * BigInt::from(g);
                }
            }
        }
        Ok(out)
    }

    /// `Σ cᵢ Vⁱ(1)` over ℤ.
    pub fn to_formal_sum(&self) -> FormalSum {
        let z = Ring::integers();
        let mut s = FormalSum::zero(&z, self.truncation());
        for (i, c) in self.coeffs.iter().enumerate() {
            s.push(i + 1, z.one(), c.clone());
        }
        s
    }

    /// `∏ (1 − tⁱ)^{−cᵢ}` over ℤ.
    pub fn to_series(&self) -> UnitSeries {
        self.to_formal_sum().neg().to_series()
    }
}

impl fmt::Display for CycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if c.is_one() { format!("C{}", i + 1) } else { format!("{c}·C{}", i + 1) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
