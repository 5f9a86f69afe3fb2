//! Square matrices as endomorphisms of free modules, and virtual differences.
//!
//! This is the linear-algebra model behind the Witt vector identities:
//! characteristic series `det(1 − tf)`, iterated traces, companion-block
//! Verschiebung, composition powers as Frobenius, the rotated tensor power as
//! norm, and exterior powers.

use std::fmt;

use crate::error::{Result, WittError};
use crate::ring::{Elem, Ring};
use crate::series::UnitSeries;
use crate::witt::GhostVec;

/// Default cap on the dimension of [`MatrixEndo::norm`] results.
pub const DEFAULT_NORM_BOUND: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixEndo {
    ring: Ring,
    dim: usize,
    /// Row-major.
    entries: Vec<Elem>,
}

/// The K₀ class `[plus] − [minus]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VirtualEndo {
    pub plus: MatrixEndo,
    pub minus: MatrixEndo,
}

impl MatrixEndo {
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(WittError::invalid(format!("matrix is not square: row of length {} in dimension {dim}", row.len())));
            }
            for e in row {
                ring.ensure_same(e.ring())?;
                entries.push(e);
            }
        }
        Ok(MatrixEndo { ring: ring.clone(), dim, entries })
    }

    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(ring, rows.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect())
    }

    pub fn zero(ring: &Ring, dim: usize) -> Self {
        MatrixEndo { ring: ring.clone(), dim, entries: vec![ring.zero(); dim * dim] }
    }

    pub fn identity(ring: &Ring, dim: usize) -> Self {
        let mut m = Self::zero(ring, dim);
        for i in 0..dim {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn diag(ring: &Ring, d: &[Elem]) -> Self {
        let mut m = Self::zero(ring, d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Companion matrix with `det(1 − tC) = 1 + c₁t + … + c_mt^m`.
    ///
    /// Ones on the subdiagonal, `−c_{m−i}` in row `i` of the last column.
    pub fn companion(ring: &Ring, coeffs: &[Elem]) -> Result<Self> {
        let m = coeffs.len();
        let mut c = Self::zero(ring, m);
        for i in 1..m {
            c.set(i, i - 1, ring.one());
        }
        for (i, a) in coeffs.iter().rev().enumerate() {
            ring.ensure_same(a.ring())?;
            c.set(i, m - 1, -a);
        }
        Ok(c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(<[Elem]>::to_vec).collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        crate::error::check_len(self.dim, other.dim)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(MatrixEndo { ring: self.ring.clone(), dim: self.dim, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.dim;
        let mut out = Self::zero(&self.ring, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::identity(&self.ring, self.dim);
        for _ in 0..k {
            acc = acc.mul(self).expect("same ring and dimension");
        }
        acc
    }

    pub fn trace(&self) -> Elem {
        (0..self.dim).fold(self.ring.zero(), |acc, i| &acc + self.get(i, i))
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        MatrixEndo { ring: self.ring.clone(), dim: rows.len(), entries }
    }

    /// Coefficients `[1, c₁, …, c_m]` of `det(λ − f) = λ^m + c₁λ^{m−1} + …`,
    /// by Berkowitz's division-free algorithm.
    pub fn berkowitz(&self) -> Vec<Elem> {
        let n = self.dim;
        match n {
            0 => return vec![self.ring.one()],
            1 => return vec![self.ring.one(), -self.get(0, 0)],
            _ => {}
        }
        let a = self.get(0, 0);
        let rest: Vec<usize> = (1..n).collect();
        let sub = self.submatrix(&rest, &rest);
        let row: Vec<Elem> = rest.iter().map(|&j| self.get(0, j).clone()).collect();
        let mut col: Vec<Elem> = rest.iter().map(|&i| self.get(i, 0).clone()).collect();

        // First column of the Toeplitz factor: 1, −a, −RC, −RAC, −RA²C, …
        let mut diags = vec![self.ring.one(), -a];
        for step in 0..n - 1 {
            let rc = row.iter().zip(&col).fold(self.ring.zero(), |acc, (r, c)| &acc + &(r * c));
            diags.push(-rc);
            if step + 1 < n - 1 {
                col = (0..n - 1)
                    .map(|i| (0..n - 1).fold(self.ring.zero(), |acc, j| &acc + &(sub.get(i, j) * &col[j])))
                    .collect();
            }
        }
        let inner = sub.berkowitz();
        (0..=n)
            .map(|i| {
                (0..inner.len())
                    .filter(|&j| j <= i)
                    .fold(self.ring.zero(), |acc, j| &acc + &(&diags[i - j] * &inner[j]))
            })
            .collect()
    }

    pub fn determinant(&self) -> Elem {
        let c = self.berkowitz();
        let last = c[self.dim].clone();
        if self.dim.is_multiple_of(2) {
            last
        } else {
            -last
        }
    }

    /// `det(1 − tf)` truncated to `precision`.
    pub fn char_poly(&self, precision: usize) -> UnitSeries {
        let c = self.berkowitz();
        UnitSeries::from_polynomial(&self.ring, &c[1..], precision).expect("same ring")
    }

    /// `(Tr f, Tr f², …, Tr f^N)`.
    pub fn trace_powers(&self, n: usize) -> GhostVec {
        let mut comps = Vec::with_capacity(n);
        let mut power = Self::identity(&self.ring, self.dim);
        for _ in 0..n {
            power = power.mul(self).expect("same ring and dimension");
            comps.push(power.trace());
        }
        GhostVec::new(&self.ring, comps).expect("same ring")
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        let n = self.dim + other.dim;
        let mut out = Self::zero(&self.ring, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out.set(self.dim + i, self.dim + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Kronecker product; the left factor is the slow index.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        let (m, k) = (self.dim, other.dim);
        let mut out = Self::zero(&self.ring, m * k);
        for i1 in 0..m {
            for j1 in 0..m {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..k {
                    for j2 in 0..k {
                        out.set(i1 * k + i2, j1 * k + j2, a * other.get(i2, j2));
                    }
                }
            }
        }
        Ok(out)
    }

    /// The `im × im` block matrix with `f` in the top-right block and
    /// identity blocks on the subdiagonal.
    pub fn companion_verschiebung(&self, i: usize) -> Result<Self> {
        if i == 0 {
            return Err(WittError::invalid("Verschiebung index must be positive"));
        }
        let m = self.dim;
        let mut out = Self::zero(&self.ring, i * m);
        for r in 0..m {
            for c in 0..m {
                out.set(r, (i - 1) * m + c, self.get(r, c).clone());
            }
        }
        for b in 1..i {
            for r in 0..m {
                out.set(b * m + r, (b - 1) * m + r, self.ring.one());
            }
        }
        Ok(out)
    }

    /// `f` composed with itself `k` times.
    pub fn frobenius(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(WittError::invalid("Frobenius index must be positive"));
        }
        Ok(self.pow(k))
    }

    pub fn norm(&self, d: usize) -> Result<Self> {
        self.norm_with_bound(d, DEFAULT_NORM_BOUND)
    }

    /// `rot ∘ (f ⊗ 1 ⊗ … ⊗ 1)` on the `d`-fold tensor power, where `rot`
    /// shifts index tuples left by one.
    pub fn norm_with_bound(&self, d: usize, bound: usize) -> Result<Self> {
        if d == 0 {
            return Err(WittError::invalid("norm index must be positive"));
        }
        let m = self.dim;
        let size = u32::try_from(d)
            .ok()
            .and_then(|d| m.checked_pow(d))
            .ok_or(WittError::SizeBound { size: usize::MAX, bound })?;
        if size > bound {
            return Err(WittError::SizeBound { size, bound });
        }
        let mut out = Self::zero(&self.ring, size);
        if m == 0 {
            return Ok(out);
        }
        let stride = size / m;
        for col in 0..size {
            let j1 = col / stride;
            let tail = col % stride;
            for i in 0..m {
                let f = self.get(i, j1);
                if !f.is_zero() {
                    out.set(tail * m + i, col, f.clone());
                }
            }
        }
        Ok(out)
    }

    /// `Λʲf` on the lexicographically ordered basis of `j`-subsets.
    pub fn exterior_power(&self, j: usize) -> Result<Self> {
        if j > self.dim {
            return Err(WittError::invalid(format!("exterior power {j} exceeds dimension {}", self.dim)));
        }
        let subsets = combinations(self.dim, j);
        let rows = subsets
            .iter()
            .map(|s| subsets.iter().map(|t| self.submatrix(s, t).determinant()).collect())
            .collect();
        Self::from_rows(&self.ring, rows)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl VirtualEndo {
    pub fn new(plus: MatrixEndo, minus: MatrixEndo) -> Result<Self> {
        plus.ring.ensure_same(&minus.ring)?;
        Ok(VirtualEndo { plus, minus })
    }

    /// Companion matrices realizing `(1 + a₁t + …)/(1 + b₁t + …)`.
    pub fn from_rational_series(ring: &Ring, numer: &[Elem], denom: &[Elem]) -> Result<Self> {
        Ok(VirtualEndo {
            plus: MatrixEndo::companion(ring, numer)?,
            minus: MatrixEndo::companion(ring, denom)?,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.plus.ring
    }

    /// `ch(plus) / ch(minus)`.
    pub fn virtual_char(&self, precision: usize) -> UnitSeries {
        let num = self.plus.char_poly(precision);
        let den = self.minus.char_poly(precision);
        num.mul(&den.inverse()).expect("same ring and precision")
    }

    pub fn trace_powers(&self, n: usize) -> GhostVec {
        self.plus.trace_powers(n).sub(&self.minus.trace_powers(n)).expect("same ring and length")
    }
}

impl fmt::Display for MatrixEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dim == 0 {
            return write!(f, "[]");
        }
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", padded.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MatrixEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixEndo({}x{} over {}: {:?})", self.dim, self.dim, self.ring, self.rows())
    }
}
