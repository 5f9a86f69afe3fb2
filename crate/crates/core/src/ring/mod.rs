//! Exact commutative rings: ℤ, ℤ/m, ℚ and multivariate polynomials over them.
//!
//! A [`Ring`] is a cheap, shareable descriptor. An [`Elem`] pairs a value in
//! canonical form with its ring, so equality of elements is equality of
//! representations. Arithmetic through the operator traits panics when the
//! operands live in different rings; the `try_*` methods report the mismatch
//! instead. Higher layers check rings once at their entry points.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::{Coeff, Exponents, Poly};

use crate::error::{Result, WittError};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ring(Arc<RingKind>);

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingKind {
    Integers,
    Modular(BigInt),
    Rationals,
    /// Polynomials over a non-polynomial base in the listed variables.
    Polynomial { base: Ring, vars: Vec<String> },
}

impl Ring {
    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }

    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }

    pub fn modular(m: impl Into<BigInt>) -> Result<Ring> {
        let m = m.into();
        if m < BigInt::from(2) {
            return Err(WittError::invalid(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring(Arc::new(RingKind::Modular(m))))
    }

    pub fn polynomial<S: Into<String>>(base: Ring, vars: impl IntoIterator<Item = S>) -> Result<Ring> {
        if let RingKind::Polynomial { .. } = base.kind() {
            return Err(WittError::invalid("polynomial base ring must not itself be a polynomial ring"));
        }
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(WittError::invalid(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(WittError::invalid(format!("duplicate variable {v}")));
            }
        }
        Ok(Ring(Arc::new(RingKind::Polynomial { base, vars })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// The modulus applied to integer coefficients, if any.
    pub fn modulus(&self) -> Option<&BigInt> {
        match self.kind() {
            RingKind::Modular(m) => Some(m),
            RingKind::Polynomial { base, .. } => base.modulus(),
            _ => None,
        }
    }

    /// Coefficient ring: the base for polynomial rings, the ring itself otherwise.
    pub fn scalars(&self) -> &Ring {
        match self.kind() {
            RingKind::Polynomial { base, .. } => base,
            _ => self,
        }
    }

    pub fn vars(&self) -> &[String] {
        match self.kind() {
            RingKind::Polynomial { vars, .. } => vars,
            _ => &[],
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind(), RingKind::Polynomial { .. })
    }

    /// True for ℤ, ℚ and polynomial rings over them.
    pub fn is_torsion_free(&self) -> bool {
        self.modulus().is_none()
    }

    /// True for ℚ and polynomial rings over ℚ.
    pub fn is_q_algebra(&self) -> bool {
        matches!(self.scalars().kind(), RingKind::Rationals)
    }

    fn uses_rational_coeffs(&self) -> bool {
        self.is_q_algebra()
    }

    fn same(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    pub(crate) fn ensure_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(WittError::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_bigint(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(&BigInt::one())
    }

    pub fn from_int(&self, k: i64) -> Elem {
        self.from_bigint(&BigInt::from(k))
    }

    /// Image of an integer under the unique map ℤ → A.
    pub fn from_bigint(&self, k: &BigInt) -> Elem {
        let m = self.modulus();
        let value = match self.kind() {
            RingKind::Integers => Value::Int(k.clone()),
            RingKind::Modular(m) => Value::Int(k.mod_floor(m)),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(k.clone())),
            RingKind::Polynomial { vars, .. } => {
                if self.uses_rational_coeffs() {
                    Value::PolyQ(Poly::constant(BigRational::from_integer(k.clone()), vars.len(), None))
                } else {
                    Value::PolyZ(Poly::constant(k.clone(), vars.len(), m))
                }
            }
        };
        Elem { ring: self.clone(), value }
    }

    /// Embed a rational number; requires a ℚ-algebra or an exact division.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        self.from_bigint(q.numer()).exact_div_int(q.denom())
    }

    /// The generator for the variable at position `i`.
    pub fn gen(&self, i: usize) -> Result<Elem> {
        let vars = self.vars();
        if i >= vars.len() {
            return Err(WittError::invalid(format!("ring {self} has no variable #{i}")));
        }
        let mut exps = vec![0u32; vars.len()];
        exps[i] = 1;
        Ok(self.monomial(exps, &BigInt::one()))
    }

    pub fn var(&self, name: &str) -> Result<Elem> {
        let i = self
            .vars()
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| WittError::invalid(format!("ring {self} has no variable {name}")))?;
        self.gen(i)
    }

    /// `c · x^exps` with an integer coefficient.
    pub fn monomial(&self, exps: Exponents, c: &BigInt) -> Elem {
        debug_assert_eq!(exps.len(), self.vars().len());
        let value = if self.uses_rational_coeffs() {
            Value::PolyQ(Poly::monomial(exps, BigRational::from_integer(c.clone()), None))
        } else {
            Value::PolyZ(Poly::monomial(exps, c.clone(), self.modulus()))
        };
        Elem { ring: self.clone(), value }
    }

    /// Parse an element from an expression such as `2*a*b - a^2` or `3/4`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        parse::parse_expr(self, s)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular(m) => write!(f, "Z/{m}"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::Polynomial { base, vars } => write!(f, "poly:{base}[{}]", vars.join(",")),
        }
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl FromStr for Ring {
    type Err = WittError;

    /// Accepts `Z`, `Z/m`, `Q` and `poly:<base>[v1,v2,...]`.
    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("poly:") {
            let open = rest.find('[').ok_or_else(|| WittError::parse(format!("missing '[' in ring {s:?}")))?;
            let inner = rest[open + 1..]
                .strip_suffix(']')
                .ok_or_else(|| WittError::parse(format!("missing ']' in ring {s:?}")))?;
            let base: Ring = rest[..open].parse()?;
            let vars: Vec<&str> = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner.split(',').map(str::trim).collect()
            };
            return Ring::polynomial(base, vars);
        }
        match s {
            "Z" | "ZZ" => Ok(Ring::integers()),
            "Q" | "QQ" => Ok(Ring::rationals()),
            _ => {
                let m = s
                    .strip_prefix("Z/")
                    .ok_or_else(|| WittError::parse(format!("unknown ring {s:?}")))?;
                let m: BigInt = m.trim().parse().map_err(|_| WittError::parse(format!("bad modulus in {s:?}")))?;
                Ring::modular(m)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Value {
    /// Integers, and residues in `[0, m)` for ℤ/m.
    Int(BigInt),
    Rat(BigRational),
    /// Polynomials over ℤ or ℤ/m.
    PolyZ(Poly<BigInt>),
    PolyQ(Poly<BigRational>),
}

/// A ring element in canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem {
    ring: Ring,
    value: Value,
}

/// Borrowed view of an element's canonical representation.
#[derive(Debug, Clone, Copy)]
pub enum ElemRepr<'a> {
    Integer(&'a BigInt),
    Residue(&'a BigInt),
    Rational(&'a BigRational),
    IntPoly(&'a Poly<BigInt>),
    RatPoly(&'a Poly<BigRational>),
}

impl Elem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn repr(&self) -> ElemRepr<'_> {
        match (&self.value, self.ring.kind()) {
            (Value::Int(v), RingKind::Modular(_)) => ElemRepr::Residue(v),
            (Value::Int(v), _) => ElemRepr::Integer(v),
            (Value::Rat(v), _) => ElemRepr::Rational(v),
            (Value::PolyZ(p), _) => ElemRepr::IntPoly(p),
            (Value::PolyQ(p), _) => ElemRepr::RatPoly(p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_zero(),
            Value::Rat(v) => v.is_zero(),
            Value::PolyZ(p) => p.is_zero(),
            Value::PolyQ(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    /// The integer (or residue) value for ℤ and ℤ/m elements.
    pub fn as_integer(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rat(v) => Some(v),
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Elem) -> Result<Elem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Elem) -> Result<Elem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Elem) -> Result<Elem> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Elem) -> Elem {
        let m = self.ring.modulus();
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int((a + b).reduce(m)),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::PolyZ(a), Value::PolyZ(b)) => Value::PolyZ(a.add(b, m)),
            (Value::PolyQ(a), Value::PolyQ(b)) => Value::PolyQ(a.add(b, None)),
            _ => unreachable!("values of one ring share a representation"),
        };
        Elem { ring: self.ring.clone(), value }
    }

    fn mul_unchecked(&self, other: &Elem) -> Elem {
        let m = self.ring.modulus();
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int((a * b).reduce(m)),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::PolyZ(a), Value::PolyZ(b)) => Value::PolyZ(a.mul(b, m)),
            (Value::PolyQ(a), Value::PolyQ(b)) => Value::PolyQ(a.mul(b, None)),
            _ => unreachable!("values of one ring share a representation"),
        };
        Elem { ring: self.ring.clone(), value }
    }

    fn neg_ref(&self) -> Elem {
        let m = self.ring.modulus();
        let value = match &self.value {
            Value::Int(a) => Value::Int((-a).reduce(m)),
            Value::Rat(a) => Value::Rat(-a),
            Value::PolyZ(a) => Value::PolyZ(a.neg(m)),
            Value::PolyQ(a) => Value::PolyQ(a.neg(None)),
        };
        Elem { ring: self.ring.clone(), value }
    }

    pub fn pow(&self, mut k: u64) -> Elem {
        if let (Value::Int(a), Some(m)) = (&self.value, self.ring.modulus()) {
            return Elem { ring: self.ring.clone(), value: Value::Int(a.modpow(&BigInt::from(k), m)) };
        }
        let mut result = self.ring.one();
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `k · self` for an integer `k`.
    pub fn mul_int(&self, k: &BigInt) -> Elem {
        let m = self.ring.modulus();
        let value = match &self.value {
            Value::Int(a) => Value::Int((a * k).reduce(m)),
            Value::Rat(a) => Value::Rat(a * BigRational::from_integer(k.clone())),
            Value::PolyZ(a) => Value::PolyZ(a.scale(k, m)),
            Value::PolyQ(a) => Value::PolyQ(a.scale(&BigRational::from_integer(k.clone()), None)),
        };
        Elem { ring: self.ring.clone(), value }
    }

    pub fn mul_i64(&self, k: i64) -> Elem {
        self.mul_int(&BigInt::from(k))
    }

    /// The unique `y` with `k · y = self`, if it exists.
    ///
    /// Over ℤ/m a solution is unique exactly when `gcd(k, m) = 1`; any other
    /// divisor yields [`WittError::Divisibility`] even if solutions exist.
    pub fn exact_div_int(&self, k: &BigInt) -> Result<Elem> {
        let fail = || WittError::Divisibility { value: self.to_string(), divisor: k.to_string() };
        if k.is_zero() {
            return Err(fail());
        }
        let m = self.ring.modulus();
        let inverse = match m {
            Some(m) => Some(mod_inverse(k, m).ok_or_else(fail)?),
            None => None,
        };
        let value = match (&self.value, inverse) {
            (Value::Int(a), Some(inv)) => Value::Int((a * inv).reduce(m)),
            (Value::Int(a), None) => {
                let (q, r) = a.div_rem(k);
                if !r.is_zero() {
                    return Err(fail());
                }
                Value::Int(q)
            }
            (Value::Rat(a), _) => Value::Rat(a / BigRational::from_integer(k.clone())),
            (Value::PolyZ(p), Some(inv)) => Value::PolyZ(p.scale(&inv, m)),
            (Value::PolyZ(p), None) => Value::PolyZ(
                p.try_map_coeffs(
                    |c| {
                        let (q, r) = c.div_rem(k);
                        r.is_zero().then_some(q)
                    },
                    None,
                )
                .ok_or_else(fail)?,
            ),
            (Value::PolyQ(p), _) => {
                let inv = BigRational::new(BigInt::one(), k.clone());
                Value::PolyQ(p.scale(&inv, None))
            }
        };
        Ok(Elem { ring: self.ring.clone(), value })
    }

    /// The canonical ring homomorphism into `target`.
    ///
    /// Supported maps: ℤ into any ring, ℤ/m → ℤ/k for `k | m`, ℚ into
    /// ℚ-algebras, and coefficient-wise maps between polynomial rings whose
    /// source variables all occur (by name) in the target.
    pub fn map_to(&self, target: &Ring) -> Result<Elem> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        let no_map = || WittError::UnsupportedRing {
            ring: self.ring.to_string(),
            detail: format!("no canonical homomorphism to {target}"),
        };
        match &self.value {
            Value::Int(a) => {
                if let RingKind::Modular(m) = self.ring.kind() {
                    match target.modulus() {
                        Some(k) if m.is_multiple_of(k) => {}
                        _ => return Err(no_map()),
                    }
                }
                Ok(target.from_bigint(a))
            }
            Value::Rat(q) => {
                if target.is_q_algebra() {
                    target.from_rational(q)
                } else {
                    Err(no_map())
                }
            }
            Value::PolyZ(_) | Value::PolyQ(_) => {
                if !target.is_polynomial() {
                    return Err(no_map());
                }
                let positions = self
                    .ring
                    .vars()
                    .iter()
                    .map(|v| target.vars().iter().position(|w| w == v))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(no_map)?;
                let mut acc = target.zero();
                for (exps, c) in self.scalar_terms() {
                    let mut texps = vec![0u32; target.vars().len()];
                    for (i, e) in exps.iter().enumerate() {
                        texps[positions[i]] = *e;
                    }
                    let coeff = c.map_to(target.scalars()).map_err(|_| no_map())?;
                    acc = &acc + &target.lift_scalar(&coeff).mul_monomial(&texps);
                }
                Ok(acc)
            }
        }
    }

    /// Substitute `values[i]` for the i-th variable of a polynomial element.
    ///
    /// Coefficients are carried into the values' ring by [`Elem::map_to`].
    /// For a non-polynomial element this is just `map_to(target)`.
    pub fn evaluate(&self, values: &[Elem], target: &Ring) -> Result<Elem> {
        for v in values {
            target.ensure_same(v.ring())?;
        }
        if !self.ring.is_polynomial() {
            return self.map_to(target);
        }
        if values.len() != self.ring.vars().len() {
            return Err(WittError::invalid(format!(
                "expected {} substitution values, got {}",
                self.ring.vars().len(),
                values.len()
            )));
        }
        let terms = self.scalar_terms();
        let mut max_exp = vec![0u32; values.len()];
        for (exps, _) in &terms {
            for (m, e) in max_exp.iter_mut().zip(exps) {
                *m = (*m).max(*e);
            }
        }
        let powers: Vec<Vec<Elem>> = values
            .iter()
            .zip(&max_exp)
            .map(|(v, &m)| {
                let mut p = vec![target.one()];
                for _ in 0..m {
                    let next = p.last().unwrap() * v;
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = target.zero();
        for (exps, c) in terms {
            let mut term = c.map_to(target)?;
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Terms of a polynomial as (exponents, coefficient in the base ring).
    pub fn scalar_terms(&self) -> Vec<(Exponents, Elem)> {
        let base = self.ring.scalars().clone();
        match &self.value {
            Value::PolyZ(p) => p
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), Elem { ring: base.clone(), value: Value::Int(c.clone()) }))
                .collect(),
            Value::PolyQ(p) => p
                .terms()
                .iter()
                .map(|(e, c)| (e.clone(), Elem { ring: base.clone(), value: Value::Rat(c.clone()) }))
                .collect(),
            _ => vec![(Vec::new(), self.clone())],
        }
    }

    /// Multiply a polynomial element by the monomial `x^exps`.
    fn mul_monomial(&self, exps: &[u32]) -> Elem {
        let shift = |e: &Exponents| -> Exponents { e.iter().zip(exps).map(|(a, b)| a + b).collect() };
        let value = match &self.value {
            Value::PolyZ(p) => Value::PolyZ(Poly::from_terms(
                p.terms().iter().map(|(e, c)| (shift(e), c.clone())),
                None,
            )),
            Value::PolyQ(p) => Value::PolyQ(Poly::from_terms(
                p.terms().iter().map(|(e, c)| (shift(e), c.clone())),
                None,
            )),
            other => other.clone(),
        };
        Elem { ring: self.ring.clone(), value }
    }

    /// For integer and polynomial-over-ℤ elements: the gcd of all coefficients.
    pub fn content(&self) -> Option<BigInt> {
        match &self.value {
            Value::Int(a) if self.ring.modulus().is_none() => Some(a.abs()),
            Value::PolyZ(p) if self.ring.modulus().is_none() => {
                Some(p.terms().values().fold(BigInt::zero(), |g, c| g.gcd(c)))
            }
            _ => None,
        }
    }
}

impl Ring {
    /// Constant polynomial (or the element itself) from a scalar of the base ring.
    fn lift_scalar(&self, c: &Elem) -> Elem {
        match (self.kind(), &c.value) {
            (RingKind::Polynomial { vars, .. }, Value::Int(k)) => {
                Elem { ring: self.clone(), value: Value::PolyZ(Poly::constant(k.clone(), vars.len(), self.modulus())) }
            }
            (RingKind::Polynomial { vars, .. }, Value::Rat(q)) => {
                Elem { ring: self.clone(), value: Value::PolyQ(Poly::constant(q.clone(), vars.len(), None)) }
            }
            _ => c.clone(),
        }
    }
}

fn mod_inverse(k: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = k.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(a) => write!(f, "{a}"),
            Value::Rat(q) => write!(f, "{q}"),
            Value::PolyZ(p) => fmt_poly(f, p, self.ring.vars()),
            Value::PolyQ(p) => fmt_poly(f, p, self.ring.vars()),
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn fmt_poly<C: Coeff + fmt::Display + Signed>(f: &mut fmt::Formatter<'_>, p: &Poly<C>, vars: &[String]) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (idx, (exps, c)) in p.terms().iter().rev().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if idx == 0 {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        let mono: Vec<String> = exps
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{}", mono.join("*"))?;
        } else {
            write!(f, "{mag}*{}", mono.join("*"))?;
        }
    }
    Ok(())
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                assert!(self.ring.same(&rhs.ring), "ring mismatch: {} vs {}", self.ring, rhs.ring);
                self.$inner(rhs)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: Elem) -> Elem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $method(self, rhs: &Elem) -> Elem {
                (&self).$method(rhs)
            }
        }
    };
}

impl Elem {
    fn sub_unchecked(&self, other: &Elem) -> Elem {
        self.add_unchecked(&other.neg_ref())
    }
}

forward_binop!(Add, add, add_unchecked);
forward_binop!(Sub, sub, sub_unchecked);
forward_binop!(Mul, mul, mul_unchecked);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_ref()
    }
}

/// Sum of an iterator of elements of `ring`.
pub fn sum<'a>(ring: &Ring, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
    items.into_iter().fold(ring.zero(), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz() -> Ring {
        Ring::integers()
    }

    #[test]
    fn integer_arithmetic() {
        let r = zz();
        assert_eq!(&r.from_int(2) + &r.from_int(3), r.from_int(5));
        assert_eq!(&r.from_int(2) * &r.from_int(3), r.from_int(6));
        assert_eq!(r.from_int(2).pow(3), r.from_int(8));
        assert_eq!(r.from_int(-7).pow(0), r.one());
    }

    #[test]
    fn modular_arithmetic() {
        let r = Ring::modular(4).unwrap();
        assert_eq!(&r.from_int(3) + &r.from_int(3), r.from_int(2));
        assert_eq!(&r.from_int(2) * &r.from_int(2), r.zero());
        assert_eq!(r.from_int(-1).as_integer().unwrap(), &BigInt::from(3));
        assert!(Ring::modular(1).is_err());
    }

    #[test]
    fn polynomial_arithmetic() {
        let r = Ring::polynomial(zz(), ["x", "y"]).unwrap();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        assert!((&x + &(-&x)).is_zero());
        assert_eq!(&(&x + &y) * &(&x - &y), r.parse_elem("x^2 - y^2").unwrap());
        let xp1 = &x + &r.one();
        assert_eq!(xp1.pow(2), r.parse_elem("x^2 + 2*x + 1").unwrap());
        assert_eq!(r.from_int(5).pow(0), r.one());
    }

    #[test]
    fn exact_division() {
        let r = zz();
        assert_eq!(r.from_int(6).exact_div_int(&BigInt::from(3)).unwrap(), r.from_int(2));
        let err = r.from_int(5).exact_div_int(&BigInt::from(2)).unwrap_err();
        assert_eq!(err.kind(), "DivisibilityFailure");

        let p = Ring::polynomial(zz(), ["x"]).unwrap();
        let f = p.parse_elem("4*x^2 + 2*x").unwrap();
        assert_eq!(f.exact_div_int(&BigInt::from(2)).unwrap(), p.parse_elem("2*x^2 + x").unwrap());
        assert!(p.parse_elem("3*x + 2").unwrap().exact_div_int(&BigInt::from(2)).is_err());

        let q = Ring::rationals();
        assert_eq!(q.from_int(5).exact_div_int(&BigInt::from(2)).unwrap(), q.parse_elem("5/2").unwrap());

        let m = Ring::modular(7).unwrap();
        assert_eq!(m.from_int(1).exact_div_int(&BigInt::from(3)).unwrap(), m.from_int(5));
        // 2y = 2 has two solutions mod 4, so there is no unique quotient.
        let m4 = Ring::modular(4).unwrap();
        assert!(m4.from_int(2).exact_div_int(&BigInt::from(2)).is_err());
        assert!(m4.from_int(1).exact_div_int(&BigInt::from(2)).is_err());
    }

    #[test]
    fn base_homomorphisms() {
        let z3 = Ring::modular(3).unwrap();
        assert_eq!(zz().from_int(7).map_to(&z3).unwrap(), z3.one());

        let p = Ring::polynomial(zz(), ["x", "y"]).unwrap();
        let f = p.parse_elem("x^2*y").unwrap();
        let v = f.evaluate(&[zz().from_int(2), zz().from_int(3)], &zz()).unwrap();
        assert_eq!(v, zz().from_int(12));

        let p2 = Ring::polynomial(Ring::modular(2).unwrap(), ["x", "y"]).unwrap();
        let g = p.parse_elem("x + y").unwrap().map_to(&p2).unwrap();
        assert_eq!(g, p2.parse_elem("x + y").unwrap());

        assert!(Ring::rationals().one().map_to(&zz()).is_err());
        assert!(Ring::modular(6).unwrap().one().map_to(&Ring::modular(4).unwrap()).is_err());
        assert!(Ring::modular(6).unwrap().one().map_to(&z3).is_ok());
    }

    #[test]
    fn ring_descriptors_round_trip_through_strings() {
        for s in ["Z", "Z/6", "Q", "poly:Z[a,b]", "poly:Q[x]", "poly:Z/2[x,y]"] {
            let r: Ring = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("poly:Z[a,a]".parse::<Ring>().is_err());
        assert!("poly:Z[]".parse::<Ring>().is_ok());
        assert!("R".parse::<Ring>().is_err());
    }

    #[test]
    fn display_is_parseable() {
        let p = Ring::polynomial(Ring::rationals(), ["a", "b"]).unwrap();
        let f = p.parse_elem("2/3*a^2*b - b + 7").unwrap();
        assert_eq!(p.parse_elem(&f.to_string()).unwrap(), f);
    }
}
