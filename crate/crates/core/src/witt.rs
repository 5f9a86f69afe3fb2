//! Truncated big Witt vectors `W_n(A)` and their ghost images.
//!
//! Ring operations never divide by integers: addition multiplies the
//! characteristic series and refactors, multiplication and Frobenius go
//! through the atom presentation. The ghost route (`ghost` / `from_ghost`) is
//! available separately and only works where the divisions are exact.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Pow;

use crate::error::{check_len, Result, WittError};
use crate::formal::FormalSum;
use crate::ring::{Elem, Ring, RingKind};
use crate::series::UnitSeries;
use crate::universal::{self, PolyKind};

/// Witt coordinates `(a₁, …, aₙ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WittVec {
    ring: Ring,
    coords: Vec<Elem>,
}

/// Ghost components `(w₁, …, wₙ)` with pointwise ring structure.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GhostVec {
    ring: Ring,
    comps: Vec<Elem>,
}

/// Outcome of the Dwork integrality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DworkOutcome {
    Pass,
    /// First violated congruence, scanning indices upward and primes upward.
    Fail { prime: u64, index: usize },
}

impl WittVec {
    pub fn new(ring: &Ring, coords: Vec<Elem>) -> Result<Self> {
        for c in &coords {
            ring.ensure_same(c.ring())?;
        }
        Ok(WittVec { ring: ring.clone(), coords })
    }

    pub fn from_ints(ring: &Ring, coords: &[i64]) -> Self {
        WittVec { ring: ring.clone(), coords: coords.iter().map(|&c| ring.from_int(c)).collect() }
    }

    pub fn zero(ring: &Ring, n: usize) -> Self {
        WittVec { ring: ring.clone(), coords: vec![ring.zero(); n] }
    }

    /// `(1, 0, …, 0)`.
    pub fn one(ring: &Ring, n: usize) -> Self {
        Self::teichmuller_of(&ring.one(), n)
    }

    /// The Teichmüller lift `[a] = (a, 0, …, 0)`.
    pub fn teichmuller_of(a: &Elem, n: usize) -> Self {
        let ring = a.ring().clone();
        let mut coords = vec![ring.zero(); n];
        if n > 0 {
            coords[0] = a.clone();
        }
        WittVec { ring, coords }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
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

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Elem::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        check_len(self.len(), other.len())
    }

    /// The general Teichmüller map `τ(a₁, …, aₙ) = Σ Vⁱ(aᵢ)`.
    pub fn teichmuller(&self) -> FormalSum {
        FormalSum::teichmuller(self)
    }

    pub fn to_series(&self) -> UnitSeries {
        UnitSeries::from_coords(self)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.to_series().mul(&other.to_series())?.factor())
    }

    pub fn neg(&self) -> Self {
        self.to_series().inverse().factor()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.teichmuller().mul(&other.teichmuller())?.normal_form())
    }

    /// `k·x = x + … + x`, with negative `k` meaning repeated negation.
    pub fn scalar(&self, k: i64) -> Self {
        self.to_series().pow(k).factor()
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = WittVec::one(&self.ring, self.len());
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring and length");
        }
        acc
    }

    /// `Vʳ`: coordinate `k·r` receives `aₖ`; everything else is zero.
    pub fn verschiebung(&self, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(WittError::invalid("Verschiebung index must be positive"));
        }
        let n = self.len();
        let mut coords = vec![self.ring.zero(); n];
        for (k, a) in self.coords.iter().enumerate() {
            let idx = (k + 1) * r;
            if idx <= n {
                coords[idx - 1] = a.clone();
            }
        }
        Ok(WittVec { ring: self.ring.clone(), coords })
    }

    /// `Fᵏ: W_n → W_{⌊n/k⌋}`, via the atom rule.
    pub fn frobenius(&self, k: usize) -> Result<Self> {
        Ok(self.teichmuller().frobenius(k)?.normal_form())
    }

    /// Ghost components `wₙ = Σ_{d|n} d·a_d^{n/d}`, as traces of Frobenius iterates.
    pub fn ghost(&self) -> GhostVec {
        self.teichmuller().modified_ghost()
    }

    /// Recover coordinates by V-division; inverse of [`WittVec::ghost`].
    pub fn from_ghost(w: &GhostVec) -> Result<Self> {
        let ring = w.ring();
        let n = w.len();
        let mut coords: Vec<Elem> = Vec::with_capacity(n);
        for m in 1..=n {
            let mut residual = w.comps[m - 1].clone();
            for d in (1..m).filter(|d| m % d == 0) {
                let a = &coords[d - 1];
                if !a.is_zero() {
                    residual = &residual - &a.pow((m / d) as u64).mul_int(&BigInt::from(d));
                }
            }
            coords.push(residual.exact_div_int(&BigInt::from(m))?);
        }
        Ok(WittVec { ring: ring.clone(), coords })
    }

    /// The multiplicative norm `N^d`.
    ///
    /// Torsion-free rings use the ghost formula; rings with a modulus
    /// evaluate the universal norm polynomials.
    pub fn norm(&self, d: usize) -> Result<Self> {
        if self.ring.is_torsion_free() {
            self.norm_via_ghost(d)
        } else {
            self.norm_via_polys(d)
        }
    }

    /// `N^d` on ghost components: `y_t = x_{t/g}^g` with `g = gcd(d, t)`.
    pub fn norm_via_ghost(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(WittError::invalid("norm index must be positive"));
        }
        let x = self.ghost();
        let comps = (1..=self.len())
            .map(|t| {
                let g = d.gcd(&t);
                x.comps[t / g - 1].pow(g as u64)
            })
            .collect();
        WittVec::from_ghost(&GhostVec { ring: self.ring.clone(), comps })
    }

    /// `N^d` by substituting into the universal norm polynomials.
    pub fn norm_via_polys(&self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(WittError::invalid("norm index must be positive"));
        }
        if self.is_empty() {
            return Ok(self.clone());
        }
        let set = universal::gen_polys(PolyKind::Norm(d), self.len())?;
        set.eval_witt(self, None)
    }

    /// First `m` coordinates.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        if m > self.len() {
            return Err(WittError::invalid(format!("cannot restrict length {} to {m}", self.len())));
        }
        Ok(WittVec { ring: self.ring.clone(), coords: self.coords[..m].to_vec() })
    }

    /// Apply a base-ring homomorphism coordinate-wise.
    pub fn map_ring(&self, target: &Ring) -> Result<Self> {
        let coords = self.coords.iter().map(|c| c.map_to(target)).collect::<Result<_>>()?;
        Ok(WittVec { ring: target.clone(), coords })
    }
}

impl GhostVec {
    pub fn new(ring: &Ring, comps: Vec<Elem>) -> Result<Self> {
        for c in &comps {
            ring.ensure_same(c.ring())?;
        }
        Ok(GhostVec { ring: ring.clone(), comps })
    }

    pub fn from_ints(ring: &Ring, comps: &[i64]) -> Self {
        GhostVec { ring: ring.clone(), comps: comps.iter().map(|&c| ring.from_int(c)).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> &[Elem] {
        &self.comps
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        check_len(self.len(), other.len())?;
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect();
        Ok(GhostVec { ring: self.ring.clone(), comps })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    /// Dwork's congruences `wₙ ≡ φ_p(w_{n/p}) mod p^{v_p(n)}` for all `p | n`.
    ///
    /// `φ_p` is the identity on ℤ and `xᵢ ↦ xᵢᵖ` on polynomial variables.
    /// Polynomial congruences are checked coefficient-wise.
    pub fn dwork_check(&self) -> Result<DworkOutcome> {
        let supported = match self.ring.kind() {
            RingKind::Integers => true,
            RingKind::Polynomial { base, .. } => matches!(base.kind(), RingKind::Integers),
            _ => false,
        };
        if !supported {
            return Err(WittError::UnsupportedRing {
                ring: self.ring.to_string(),
                detail: "Dwork's criterion is implemented over Z and Z[vars]".into(),
            });
        }
        for n in 2..=self.len() {
            for p in prime_factors(n as u64) {
                let v = multiplicity(n as u64, p);
                let modulus = BigInt::from(p).pow(v);
                let lifted = frobenius_lift(&self.comps[n / p as usize - 1], p);
                let diff = &self.comps[n - 1] - &lifted;
                let content = diff.content().expect("integer coefficients");
                if !content.is_multiple_of(&modulus) {
                    return Ok(DworkOutcome::Fail { prime: p, index: n });
                }
            }
        }
        Ok(DworkOutcome::Pass)
    }
}

/// `x ↦ x` on ℤ, `xᵢ ↦ xᵢᵖ` on polynomial generators.
fn frobenius_lift(w: &Elem, p: u64) -> Elem {
    let ring = w.ring();
    if !ring.is_polynomial() {
        return w.clone();
    }
    let powers: Vec<Elem> = (0..ring.vars().len())
        .map(|i| ring.gen(i).expect("index in range").pow(p))
        .collect();
    w.evaluate(&powers, ring).expect("substitution within the same ring")
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

fn multiplicity(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

fn fmt_tuple(f: &mut fmt::Formatter<'_>, items: &[Elem]) -> fmt::Result {
    write!(f, "(")?;
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{c}")?;
    }
    write!(f, ")")
}

impl fmt::Display for WittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.coords)
    }
}

impl fmt::Debug for WittVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WittVec{self}")
    }
}

impl fmt::Display for GhostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_tuple(f, &self.comps)
    }
}

impl fmt::Debug for GhostVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GhostVec{self}")
    }
}

impl fmt::Display for DworkOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DworkOutcome::Pass => write!(f, "pass"),
            DworkOutcome::Fail { prime, index } => write!(f, "fail at p={prime}, n={index}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring_ab() -> Ring {
        Ring::polynomial(Ring::integers(), ["a", "b"]).unwrap()
    }

    fn wv(r: &Ring, cs: &[&str]) -> WittVec {
        WittVec::new(r, cs.iter().map(|c| r.parse_elem(c).unwrap()).collect()).unwrap()
    }

    fn gv(r: &Ring, cs: &[&str]) -> GhostVec {
        GhostVec::new(r, cs.iter().map(|c| r.parse_elem(c).unwrap()).collect()).unwrap()
    }

    #[test]
    fn teichmuller_map() {
        let r = ring_ab();
        let t = wv(&r, &["a", "0", "0"]).teichmuller();
        assert_eq!(t, FormalSum::atom(&r, 3, 1, r.var("a").unwrap()).unwrap());
        let t2 = wv(&r, &["0", "a"]).teichmuller();
        assert_eq!(t2, FormalSum::atom(&r, 2, 2, r.var("a").unwrap()).unwrap());
    }

    #[test]
    fn addition() {
        let r = ring_ab();
        assert_eq!(wv(&r, &["a", "0"]).add(&wv(&r, &["b", "0"])).unwrap(), wv(&r, &["a+b", "-a*b"]));
        let x = wv(&r, &["a", "b", "a*b"]);
        assert_eq!(x.add(&WittVec::zero(&r, 3)).unwrap(), x);
        let z2 = Ring::modular(2).unwrap();
        let one = WittVec::from_ints(&z2, &[1, 0]);
        assert_eq!(one.add(&one).unwrap(), WittVec::from_ints(&z2, &[0, 1]));
    }

    #[test]
    fn multiplication() {
        let r = ring_ab();
        let p = wv(&r, &["0", "a", "0", "0"]).mul(&wv(&r, &["0", "b", "0", "0"])).unwrap();
        assert_eq!(p, wv(&r, &["0", "2*a*b", "0", "-a^2*b^2"]));
        let x = wv(&r, &["a", "b", "a*b", "1"]);
        assert_eq!(WittVec::one(&r, 4).mul(&x).unwrap(), x);
        let ta = WittVec::teichmuller_of(&r.var("a").unwrap(), 4);
        let tb = WittVec::teichmuller_of(&r.var("b").unwrap(), 4);
        assert_eq!(ta.mul(&tb).unwrap(), wv(&r, &["a*b", "0", "0", "0"]));
    }

    #[test]
    fn negation() {
        let r = ring_ab();
        assert_eq!(WittVec::zero(&r, 3).neg(), WittVec::zero(&r, 3));
        assert_eq!(wv(&r, &["a", "0"]).neg(), wv(&r, &["-a", "-a^2"]));
    }

    #[test]
    fn verschiebung_and_frobenius() {
        let r = ring_ab();
        let x = wv(&r, &["a", "b", "0", "0"]).restrict(2).unwrap();
        let padded = WittVec::new(&r, [x.coords().to_vec(), vec![r.zero(), r.zero()]].concat()).unwrap();
        assert_eq!(padded.verschiebung(2).unwrap(), wv(&r, &["0", "a", "0", "b"]));
        assert_eq!(padded.verschiebung(1).unwrap(), padded);

        let f = wv(&r, &["a", "b"]).frobenius(2).unwrap();
        assert_eq!(f, wv(&r, &["a^2 + 2*b"]));
        let y = wv(&r, &["a", "b", "a*b"]);
        assert_eq!(y.frobenius(1).unwrap(), y);
        let ta = WittVec::teichmuller_of(&r.var("a").unwrap(), 4);
        assert_eq!(ta.frobenius(2).unwrap(), wv(&r, &["a^2", "0"]));
    }

    #[test]
    fn ghost_examples() {
        let z = Ring::integers();
        assert_eq!(WittVec::from_ints(&z, &[1, 1, 1, 1]).ghost(), GhostVec::from_ints(&z, &[1, 3, 4, 7]));
        let r = ring_ab();
        assert_eq!(wv(&r, &["a", "0", "0"]).ghost(), gv(&r, &["a", "a^2", "a^3"]));
        assert!(WittVec::zero(&z, 4).ghost().components().iter().all(Elem::is_zero));
    }

    #[test]
    fn verschiebung_on_ghosts() {
        let r = ring_ab();
        let x = wv(&r, &["a", "b", "a+b", "a*b", "1", "b^2"]);
        let v = x.verschiebung(2).unwrap().ghost();
        let g = x.ghost();
        for k in 1..=6 {
            let expect = if k % 2 == 0 { g.components()[k / 2 - 1].mul_i64(2) } else { r.zero() };
            assert_eq!(v.components()[k - 1], expect);
        }
    }

    #[test]
    fn unghost_examples() {
        let r = ring_ab();
        let w = gv(&r, &["0", "4*a*b", "0", "4*a^2*b^2"]);
        assert_eq!(WittVec::from_ghost(&w).unwrap(), wv(&r, &["0", "2*a*b", "0", "-a^2*b^2"]));
        let z = Ring::integers();
        assert_eq!(
            WittVec::from_ghost(&GhostVec::from_ints(&z, &[1, 3, 4, 7])).unwrap(),
            WittVec::from_ints(&z, &[1, 1, 1, 1])
        );
        let err = WittVec::from_ghost(&GhostVec::from_ints(&z, &[0, 1])).unwrap_err();
        assert_eq!(err.kind(), "DivisibilityFailure");
    }

    #[test]
    fn norm_examples() {
        let r = Ring::polynomial(Ring::integers(), ["a"]).unwrap();
        let ta = WittVec::teichmuller_of(&r.var("a").unwrap(), 4);
        assert_eq!(ta.norm(2).unwrap(), ta);
        let one = WittVec::one(&r, 5);
        assert_eq!(one.norm(3).unwrap(), one);
        assert_eq!(wv(&r, &["0", "a", "0", "0"]).norm(2).unwrap(), wv(&r, &["0", "0", "0", "a^2"]));
    }

    #[test]
    fn norm_routes_agree_over_z() {
        let z = Ring::integers();
        let x = WittVec::from_ints(&z, &[2, -1, 3, 0, 1]);
        for d in 1..=3 {
            assert_eq!(x.norm_via_ghost(d).unwrap(), x.norm_via_polys(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn restriction() {
        let r = ring_ab();
        let x = wv(&r, &["a", "b", "a*b"]);
        assert_eq!(x.restrict(2).unwrap(), wv(&r, &["a", "b"]));
        assert_eq!(x.restrict(3).unwrap(), x);
        assert!(x.restrict(4).is_err());
    }

    #[test]
    fn dwork_examples() {
        let z = Ring::integers();
        assert_eq!(GhostVec::from_ints(&z, &[1, 3, 4, 7]).dwork_check().unwrap(), DworkOutcome::Pass);
        assert_eq!(
            GhostVec::from_ints(&z, &[1, 3, 4, 9]).dwork_check().unwrap(),
            DworkOutcome::Fail { prime: 2, index: 4 }
        );
        assert_eq!(GhostVec::from_ints(&z, &[0, 0, 0, 0]).dwork_check().unwrap(), DworkOutcome::Pass);
        let q = Ring::rationals();
        assert!(GhostVec::from_ints(&q, &[1]).dwork_check().is_err());
    }

    #[test]
    fn dwork_on_polynomial_ghosts() {
        let r = ring_ab();
        let g = wv(&r, &["a", "b", "a*b", "a+b", "1", "b^2"]).ghost();
        assert_eq!(g.dwork_check().unwrap(), DworkOutcome::Pass);
    }

    #[test]
    fn mismatches_are_reported() {
        let z = Ring::integers();
        let z4 = Ring::modular(4).unwrap();
        let e = WittVec::zero(&z, 2).add(&WittVec::zero(&z4, 2)).unwrap_err();
        assert_eq!(e.kind(), "RingMismatch");
        let e = WittVec::zero(&z, 2).mul(&WittVec::zero(&z, 3)).unwrap_err();
        assert_eq!(e.kind(), "LengthMismatch");
    }
}
