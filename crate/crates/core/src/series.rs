//! Truncated power series: the unit group `1 + tA[[t]]` and plain series `tA[[t]]`.
//!
//! Series multiplication is Witt addition in this model. Witt multiplication
//! goes through the atom presentation in [`crate::formal`], so it needs no
//! integer division and works over torsion rings.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{check_len, Result, WittError};
use crate::formal::FormalSum;
use crate::ring::{Elem, Ring};
use crate::witt::{GhostVec, WittVec};

/// `1 + c₁t + … + cₙtⁿ` modulo `tⁿ⁺¹`. The constant term is implicit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitSeries {
    ring: Ring,
    coeffs: Vec<Elem>,
}

/// `c₁t + … + cₙtⁿ` modulo `tⁿ⁺¹`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlainSeries {
    ring: Ring,
    coeffs: Vec<Elem>,
}

fn check_ring(ring: &Ring, items: &[Elem]) -> Result<()> {
    items.iter().try_for_each(|e| ring.ensure_same(e.ring()))
}

impl UnitSeries {
    pub fn new(ring: &Ring, coeffs: Vec<Elem>) -> Result<Self> {
        check_ring(ring, &coeffs)?;
        Ok(UnitSeries { ring: ring.clone(), coeffs })
    }

    pub fn one(ring: &Ring, precision: usize) -> Self {
        UnitSeries { ring: ring.clone(), coeffs: vec![ring.zero(); precision] }
    }

    /// Truncate a polynomial `1 + a₁t + … + a_mt^m` to the given precision.
    pub fn from_polynomial(ring: &Ring, higher: &[Elem], precision: usize) -> Result<Self> {
        check_ring(ring, higher)?;
        let mut coeffs: Vec<Elem> = higher.iter().take(precision).cloned().collect();
        coeffs.resize(precision, ring.zero());
        Ok(UnitSeries { ring: ring.clone(), coeffs })
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_ints(ring: &Ring, higher: &[i64]) -> Self {
        UnitSeries { ring: ring.clone(), coeffs: higher.iter().map(|&c| ring.from_int(c)).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficients of `t¹ … tⁿ`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `tᵏ`, including the constant term 1.
    pub fn coeff(&self, k: usize) -> Elem {
        if k == 0 {
            self.ring.one()
        } else {
            self.coeffs[k - 1].clone()
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.iter().all(Elem::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        check_len(self.precision(), other.precision())
    }

    fn full(&self) -> Vec<Elem> {
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(self.ring.one());
        v.extend(self.coeffs.iter().cloned());
        v
    }

    fn from_full(ring: &Ring, mut full: Vec<Elem>) -> Self {
        full.remove(0);
        UnitSeries { ring: ring.clone(), coeffs: full }
    }

    /// Cauchy product; this is Witt addition.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a = self.full();
        let b = other.full();
        let n = self.precision();
        let coeffs = (1..=n)
            .map(|k| {
                let mut acc = self.ring.zero();
                for j in 0..=k {
                    if !a[j].is_zero() && !b[k - j].is_zero() {
                        acc = &acc + &(&a[j] * &b[k - j]);
                    }
                }
                acc
            })
            .collect();
        Ok(UnitSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn inverse(&self) -> Self {
        let c = self.full();
        let n = self.precision();
        let mut inv = vec![self.ring.one()];
        for k in 1..=n {
            let mut acc = self.ring.zero();
            for j in 1..=k {
                if !c[j].is_zero() {
                    acc = &acc + &(&c[j] * &inv[k - j]);
                }
            }
            inv.push(-acc);
        }
        UnitSeries::from_full(&self.ring, inv)
    }

    /// Integer power in the multiplicative group (Witt scalar multiple).
    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = UnitSeries::one(&self.ring, self.precision());
        for _ in 0..k.unsigned_abs() {
            result = result.mul(&base).expect("same ring and precision");
        }
        result
    }

    /// Multiply in place by `(1 − a tⁱ)^power`.
    pub(crate) fn mul_binomial(&mut self, a: &Elem, i: usize, power: i64) {
        let n = self.precision();
        if i == 0 || i > n || a.is_zero() || power == 0 {
            return;
        }
        let mut c = self.full();
        if power > 0 {
            for _ in 0..power {
                for k in (i..=n).rev() {
                    if !c[k - i].is_zero() {
                        c[k] = &c[k] - &(a * &c[k - i]);
                    }
                }
            }
        } else {
            for _ in 0..(-power) {
                for k in i..=n {
                    if !c[k - i].is_zero() {
                        c[k] = &c[k] + &(a * &c[k - i]);
                    }
                }
            }
        }
        *self = UnitSeries::from_full(&self.ring, c);
    }

    /// `∏ (1 − aᵢtⁱ)` for Witt coordinates `(a₁, …, aₙ)`.
    pub fn from_coords(w: &WittVec) -> Self {
        let mut s = UnitSeries::one(w.ring(), w.len());
        for (i, a) in w.coords().iter().enumerate() {
            s.mul_binomial(a, i + 1, 1);
        }
        s
    }

    /// The unique `(a₁, …, aₙ)` with `∏(1 − aᵢtⁱ) ≡ self`, by long division.
    pub fn factor(&self) -> WittVec {
        let n = self.precision();
        let mut residual = self.clone();
        let mut coords = Vec::with_capacity(n);
        for i in 1..=n {
            let a = -residual.coeff(i);
            residual.mul_binomial(&a, i, -1);
            coords.push(a);
        }
        debug_assert!(residual.is_one());
        WittVec::new(&self.ring, coords).expect("coordinates share the series ring")
    }

    /// `−t p′(t) / p(t)`: the ghost components as a generating series.
    ///
    /// Uses the Newton recurrence `g_k = −k c_k − Σ_{j<k} c_j g_{k−j}`, so no
    /// integer division is needed.
    pub fn ghost(&self) -> PlainSeries {
        let c = self.full();
        let n = self.precision();
        let mut g: Vec<Elem> = vec![self.ring.zero()];
        for k in 1..=n {
            let mut acc = -c[k].mul_int(&BigInt::from(k));
            for j in 1..k {
                if !c[j].is_zero() && !g[k - j].is_zero() {
                    acc = &acc - &(&c[j] * &g[k - j]);
                }
            }
            g.push(acc);
        }
        g.remove(0);
        PlainSeries { ring: self.ring.clone(), coeffs: g }
    }

    /// Inverse of [`UnitSeries::ghost`]: `exp(−∫ g(t)/t dt)`.
    ///
    /// Each step divides by `k`; fails with a divisibility error when the ring
    /// does not admit that division.
    pub fn from_ghost(g: &PlainSeries) -> Result<Self> {
        let ring = g.ring();
        let gs = g.full();
        let n = g.precision();
        let mut c = vec![ring.one()];
        for k in 1..=n {
            let mut acc = gs[k].clone();
            for j in 1..k {
                if !c[j].is_zero() && !gs[k - j].is_zero() {
                    acc = &acc + &(&c[j] * &gs[k - j]);
                }
            }
            c.push((-acc).exact_div_int(&BigInt::from(k))?);
        }
        Ok(UnitSeries::from_full(ring, c))
    }

    /// `exp(h)` for `h ∈ tA[[t]]`, via `k e_k = Σ j h_j e_{k−j}`.
    pub fn exp(h: &PlainSeries) -> Result<Self> {
        let ring = h.ring();
        let hs = h.full();
        let n = h.precision();
        let mut e = vec![ring.one()];
        for k in 1..=n {
            let mut acc = ring.zero();
            for j in 1..=k {
                if !hs[j].is_zero() {
                    acc = &acc + &(&hs[j].mul_int(&BigInt::from(j)) * &e[k - j]);
                }
            }
            e.push(acc.exact_div_int(&BigInt::from(k))?);
        }
        Ok(UnitSeries::from_full(ring, e))
    }

    /// Witt product: factor, multiply atoms by the gcd/lcm rule, expand back.
    pub fn witt_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let x = FormalSum::teichmuller(&self.factor());
        let y = FormalSum::teichmuller(&other.factor());
        Ok(x.mul(&y)?.to_series())
    }

    /// `p(tⁱ)` truncated to the same precision.
    pub fn substitute_power(&self, i: usize) -> Self {
        assert!(i >= 1, "substitution power must be positive");
        let n = self.precision();
        let mut coeffs = vec![self.ring.zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            let idx = (k + 1) * i;
            if idx <= n {
                coeffs[idx - 1] = c.clone();
            }
        }
        UnitSeries { ring: self.ring.clone(), coeffs }
    }

    pub fn truncate(&self, precision: usize) -> Result<Self> {
        if precision > self.precision() {
            return Err(WittError::invalid(format!(
                "cannot extend precision {} to {precision}",
                self.precision()
            )));
        }
        Ok(UnitSeries { ring: self.ring.clone(), coeffs: self.coeffs[..precision].to_vec() })
    }

    /// Number of leading zero coefficients after the constant term.
    pub fn order_of_contact(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl PlainSeries {
    pub fn new(ring: &Ring, coeffs: Vec<Elem>) -> Result<Self> {
        check_ring(ring, &coeffs)?;
        Ok(PlainSeries { ring: ring.clone(), coeffs })
    }

    pub fn zero(ring: &Ring, precision: usize) -> Self {
        PlainSeries { ring: ring.clone(), coeffs: vec![ring.zero(); precision] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    fn full(&self) -> Vec<Elem> {
        let mut v = vec![self.ring.zero()];
        v.extend(self.coeffs.iter().cloned());
        v
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        check_len(self.precision(), other.precision())?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(PlainSeries { ring: self.ring.clone(), coeffs })
    }

    /// The generating function `Σ wₖ tᵏ` of a ghost vector.
    pub fn from_ghost_vec(g: &GhostVec) -> Self {
        PlainSeries { ring: g.ring().clone(), coeffs: g.components().to_vec() }
    }

    pub fn to_ghost_vec(&self) -> GhostVec {
        GhostVec::new(&self.ring, self.coeffs.clone()).expect("same ring")
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, lead: Option<&str>, coeffs: &[Elem]) -> fmt::Result {
    let mut first = true;
    if let Some(l) = lead {
        write!(f, "{l}")?;
        first = false;
    }
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let power = if k == 0 { "t".to_string() } else { format!("t^{}", k + 1) };
        let s = c.to_string();
        let simple = !s[1..].contains([' ', '+', '-']);
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if simple => (true, rest.to_string()),
            _ => (false, s),
        };
        let body = if simple { body } else { format!("({body})") };
        let body = if body == "1" { power } else { format!("{body}*{power}") };
        if first {
            write!(f, "{}{body}", if neg { "-" } else { "" })?;
            first = false;
        } else {
            write!(f, " {} {body}", if neg { '-' } else { '+' })?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for UnitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, Some("1"), &self.coeffs)?;
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}

impl fmt::Display for PlainSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, None, &self.coeffs)?;
        write!(f, " + O(t^{})", self.precision() + 1)
    }
}

impl fmt::Debug for UnitSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Debug for PlainSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
