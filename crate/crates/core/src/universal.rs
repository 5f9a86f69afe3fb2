//! Universal Witt polynomials, generated by running the exact pipelines over
//! integer polynomial rings.
//!
//! Sum, product and Frobenius polynomials can be produced by two independent
//! routes: the division-free presentation route (series factorization and the
//! atom product) and the ghost route (pointwise ghost arithmetic followed by
//! V-division). Norm and p-typical polynomials use the ghost route only.
//!
//! Generated sets are cached in memory by `(kind, n)`, and optionally on disk
//! as JSON when a cache directory has been configured.

use std::collections::HashMap;
use std::fmt;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use serde_json::{json, Value as Json};

use crate::error::{Result, WittError};
use crate::json;
use crate::ptypical::PTypicalWitt;
use crate::ring::{Elem, Ring};
use crate::witt::{is_prime, GhostVec, WittVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyKind {
    Sum,
    Prod,
    /// `Fᵏ: W_{nk} → W_n`.
    Frobenius(usize),
    /// `N^d: W_n → W_n`.
    Norm(usize),
    PtSum(u64),
    PtProd(u64),
    PtNeg(u64),
    /// `F: W_{p^{n+1}} → W_{p^n}` on p-typical vectors.
    PtFrobenius(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Series factorization and the gcd/lcm atom product; no division.
    Presentation,
    /// Pointwise ghost arithmetic followed by V-division.
    Ghost,
}

impl PolyKind {
    pub fn is_ptypical(self) -> bool {
        matches!(self, PolyKind::PtSum(_) | PolyKind::PtProd(_) | PolyKind::PtNeg(_) | PolyKind::PtFrobenius(_))
    }

    /// Number of Witt-vector operands.
    pub fn arity(self) -> usize {
        match self {
            PolyKind::Sum | PolyKind::Prod | PolyKind::PtSum(_) | PolyKind::PtProd(_) => 2,
            _ => 1,
        }
    }

    /// Number of output coordinates for parameter `n`.
    pub fn output_len(self, n: usize) -> usize {
        if self.is_ptypical() {
            n + 1
        } else {
            n
        }
    }

    /// Coordinates each operand must carry.
    pub fn input_len(self, n: usize) -> usize {
        match self {
            PolyKind::Frobenius(k) => n * k,
            PolyKind::PtFrobenius(_) => n + 2,
            k if k.is_ptypical() => n + 1,
            _ => n,
        }
    }

    /// Short name used in JSON, file names and the CLI.
    pub fn name(self) -> &'static str {
        match self {
            PolyKind::Sum => "sum",
            PolyKind::Prod => "prod",
            PolyKind::Frobenius(_) => "frob",
            PolyKind::Norm(_) => "norm",
            PolyKind::PtSum(_) => "psum",
            PolyKind::PtProd(_) => "pprod",
            PolyKind::PtNeg(_) => "pneg",
            PolyKind::PtFrobenius(_) => "pfrob",
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            PolyKind::Sum | PolyKind::PtSum(_) => "s",
            PolyKind::Prod | PolyKind::PtProd(_) => "m",
            PolyKind::Frobenius(_) | PolyKind::PtFrobenius(_) => "f",
            PolyKind::Norm(_) => "n",
            PolyKind::PtNeg(_) => "i",
        }
    }

    fn parameter(self) -> Option<(&'static str, u64)> {
        match self {
            PolyKind::Frobenius(k) => Some(("k", k as u64)),
            PolyKind::Norm(d) => Some(("d", d as u64)),
            PolyKind::PtSum(p) | PolyKind::PtProd(p) | PolyKind::PtNeg(p) | PolyKind::PtFrobenius(p) => Some(("p", p)),
            _ => None,
        }
    }

    /// Parse from a name plus the optional parameters `p`, `d`, `k`.
    pub fn from_parts(name: &str, p: Option<u64>, d: Option<usize>, k: Option<usize>) -> Result<PolyKind> {
        let need_p = || p.ok_or_else(|| WittError::invalid(format!("{name} needs a prime p")));
        let kind = match name {
            "sum" => PolyKind::Sum,
            "prod" => PolyKind::Prod,
            "frob" => PolyKind::Frobenius(k.ok_or_else(|| WittError::invalid("frob needs k"))?),
            "norm" => PolyKind::Norm(d.ok_or_else(|| WittError::invalid("norm needs d"))?),
            "psum" => PolyKind::PtSum(need_p()?),
            "pprod" => PolyKind::PtProd(need_p()?),
            "pneg" => PolyKind::PtNeg(need_p()?),
            "pfrob" => PolyKind::PtFrobenius(need_p()?),
            other => return Err(WittError::invalid(format!("unknown polynomial kind {other:?}"))),
        };
        kind.validate()?;
        Ok(kind)
    }

    fn validate(self) -> Result<()> {
        match self {
            PolyKind::Frobenius(0) | PolyKind::Norm(0) => Err(WittError::invalid("operator index must be positive")),
            PolyKind::PtSum(p) | PolyKind::PtProd(p) | PolyKind::PtNeg(p) | PolyKind::PtFrobenius(p) if !is_prime(p) => {
                Err(WittError::invalid(format!("{p} is not prime")))
            }
            _ => Ok(()),
        }
    }

    fn default_route(self) -> Route {
        match self {
            PolyKind::Sum | PolyKind::Prod | PolyKind::Frobenius(_) => Route::Presentation,
            _ => Route::Ghost,
        }
    }

    fn cache_key(self, n: usize) -> String {
        match self.parameter() {
            Some((_, v)) => format!("{}{v}-n{n}", self.name()),
            None => format!("{}-n{n}", self.name()),
        }
    }
}

impl fmt::Display for PolyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.parameter() {
            Some((key, v)) => write!(f, "{}({key}={v})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// The coordinate polynomials of one Witt operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalPolySet {
    kind: PolyKind,
    n: usize,
    ring: Ring,
    polys: Vec<Elem>,
}

/// The polynomial ring `ℤ[x.., y..]` used for a kind and parameter.
pub fn poly_ring(kind: PolyKind, n: usize) -> Ring {
    let len = kind.input_len(n);
    let start = if kind.is_ptypical() { 0 } else { 1 };
    let mut vars: Vec<String> = (start..start + len).map(|i| format!("x{i}")).collect();
    if kind.arity() == 2 {
        vars.extend((start..start + len).map(|i| format!("y{i}")));
    }
    Ring::polynomial(Ring::integers(), vars).expect("generated variable names are valid")
}

fn integrality(e: WittError) -> WittError {
    match e {
        WittError::Divisibility { value, divisor } => {
            WittError::Internal(format!("ghost route produced {value} / {divisor}"))
        }
        other => other,
    }
}

/// Generate a set by an explicit route, bypassing the cache.
pub fn gen_polys_via(kind: PolyKind, n: usize, route: Route) -> Result<UniversalPolySet> {
    kind.validate()?;
    if n == 0 {
        return Err(WittError::invalid("n must be at least 1"));
    }
    let ring = poly_ring(kind, n);
    let len = kind.input_len(n);
    let gens: Vec<Elem> = (0..ring.vars().len()).map(|i| ring.gen(i).expect("in range")).collect();
    let xs = gens[..len].to_vec();
    let ys = if kind.arity() == 2 { gens[len..].to_vec() } else { Vec::new() };

    let polys: Vec<Elem> = if kind.is_ptypical() {
        if route != Route::Ghost {
            return Err(WittError::invalid("p-typical polynomials are generated by the ghost route"));
        }
        gen_ptypical(kind, &ring, xs, ys)?
    } else {
        let x = WittVec::new(&ring, xs)?;
        let y = WittVec::new(&ring, ys);
        let out = match (kind, route) {
            (PolyKind::Sum, Route::Presentation) => x.add(&y?)?,
            (PolyKind::Prod, Route::Presentation) => x.mul(&y?)?,
            (PolyKind::Frobenius(k), Route::Presentation) => x.frobenius(k)?,
            (PolyKind::Norm(_), Route::Presentation) => {
                return Err(WittError::invalid("norm polynomials are generated by the ghost route"));
            }
            (PolyKind::Sum, Route::Ghost) => {
                WittVec::from_ghost(&x.ghost().add(&y?.ghost())?).map_err(integrality)?
            }
            (PolyKind::Prod, Route::Ghost) => {
                WittVec::from_ghost(&x.ghost().mul(&y?.ghost())?).map_err(integrality)?
            }
            (PolyKind::Frobenius(k), Route::Ghost) => {
                let g = x.ghost();
                let shifted = (1..=n).map(|t| g.components()[t * k - 1].clone()).collect();
                WittVec::from_ghost(&GhostVec::new(&ring, shifted)?).map_err(integrality)?
            }
            (PolyKind::Norm(d), Route::Ghost) => x.norm_via_ghost(d).map_err(integrality)?,
            _ => unreachable!("p-typical kinds handled above"),
        };
        out.coords().to_vec()
    };
    Ok(UniversalPolySet { kind, n, ring, polys })
}

fn gen_ptypical(kind: PolyKind, ring: &Ring, xs: Vec<Elem>, ys: Vec<Elem>) -> Result<Vec<Elem>> {
    let (p, ghost) = match kind {
        PolyKind::PtSum(p) => {
            let gx = PTypicalWitt::new(ring, p, xs)?.ghost();
            let gy = PTypicalWitt::new(ring, p, ys)?.ghost();
            (p, gx.add(&gy)?)
        }
        PolyKind::PtProd(p) => {
            let gx = PTypicalWitt::new(ring, p, xs)?.ghost();
            let gy = PTypicalWitt::new(ring, p, ys)?.ghost();
            (p, gx.mul(&gy)?)
        }
        PolyKind::PtNeg(p) => {
            let gx = PTypicalWitt::new(ring, p, xs)?.ghost();
            let comps = gx.components().iter().map(|c| -c).collect();
            (p, GhostVec::new(ring, comps)?)
        }
        PolyKind::PtFrobenius(p) => {
            let gx = PTypicalWitt::new(ring, p, xs)?.ghost();
            (p, GhostVec::new(ring, gx.components()[1..].to_vec())?)
        }
        _ => unreachable!("only p-typical kinds"),
    };
    let w = PTypicalWitt::from_ghost(p, &ghost).map_err(integrality)?;
    Ok(w.coords().to_vec())
}

type Cache = Mutex<HashMap<(PolyKind, usize), Arc<UniversalPolySet>>>;

fn memory_cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_dir_slot() -> &'static RwLock<Option<PathBuf>> {
    static DIR: OnceLock<RwLock<Option<PathBuf>>> = OnceLock::new();
    DIR.get_or_init(|| RwLock::new(None))
}

/// Configure (or clear) the on-disk cache directory.
pub fn set_cache_dir(dir: Option<PathBuf>) {
    *cache_dir_slot().write().expect("cache dir lock") = dir;
}

pub fn cache_dir() -> Option<PathBuf> {
    cache_dir_slot().read().expect("cache dir lock").clone()
}

fn load_from_disk(kind: PolyKind, n: usize) -> Option<UniversalPolySet> {
    let path = cache_dir()?.join(format!("{}.json", kind.cache_key(n)));
    let text = std::fs::read_to_string(path).ok()?;
    let value: Json = serde_json::from_str(&text).ok()?;
    let set = UniversalPolySet::from_json(&value).ok()?;
    (set.kind == kind && set.n == n).then_some(set)
}

fn store_to_disk(set: &UniversalPolySet) {
    let Some(dir) = cache_dir() else { return };
    if std::fs::create_dir_all(&dir).is_err() {
        return;
    }
    let path = dir.join(format!("{}.json", set.kind.cache_key(set.n)));
    let tmp = path.with_extension("json.tmp");
    let body = serde_json::to_string(&set.to_json()).expect("json serializes");
    // Write-then-rename so concurrent readers never see a partial file.
    if std::fs::write(&tmp, body).is_ok() {
        let _ = std::fs::rename(&tmp, &path);
    }
}

/// Generate (or fetch from cache) the polynomials for `kind` at parameter `n`.
pub fn gen_polys(kind: PolyKind, n: usize) -> Result<Arc<UniversalPolySet>> {
    if let Some(set) = memory_cache().lock().expect("cache lock").get(&(kind, n)) {
        return Ok(Arc::clone(set));
    }
    let set = match load_from_disk(kind, n) {
        Some(set) => set,
        None => {
            let set = gen_polys_via(kind, n, kind.default_route())?;
            store_to_disk(&set);
            set
        }
    };
    let set = Arc::new(set);
    memory_cache().lock().expect("cache lock").entry((kind, n)).or_insert_with(|| Arc::clone(&set));
    Ok(set)
}

impl UniversalPolySet {
    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn polys(&self) -> &[Elem] {
        &self.polys
    }

    /// Substitute operand coordinates; all values must share one ring.
    pub fn eval(&self, xs: &[Elem], ys: Option<&[Elem]>) -> Result<Vec<Elem>> {
        let len = self.kind.input_len(self.n);
        let bad_arity = || {
            WittError::invalid(format!(
                "{} expects {} operand(s) of length {len}",
                self.kind,
                self.kind.arity()
            ))
        };
        if xs.len() != len {
            return Err(bad_arity());
        }
        let mut values = xs.to_vec();
        match (self.kind.arity(), ys) {
            (2, Some(ys)) if ys.len() == len => values.extend_from_slice(ys),
            (1, None) => {}
            _ => return Err(bad_arity()),
        }
        let target = xs[0].ring().clone();
        self.polys.iter().map(|p| p.evaluate(&values, &target)).collect()
    }

    /// [`UniversalPolySet::eval`] for big Witt vector operands.
    pub fn eval_witt(&self, xs: &WittVec, ys: Option<&WittVec>) -> Result<WittVec> {
        if self.kind.is_ptypical() {
            return Err(WittError::invalid("p-typical polynomials take p-typical operands"));
        }
        if let Some(y) = ys {
            xs.ring().ensure_same(y.ring())?;
        }
        let out = self.eval(xs.coords(), ys.map(|y| y.coords()))?;
        WittVec::new(xs.ring(), out)
    }

    /// Largest variable index (1-based within its block) each polynomial uses.
    pub fn max_variable_index(&self) -> Vec<usize> {
        let len = self.kind.input_len(self.n);
        self.polys
            .iter()
            .map(|p| {
                p.scalar_terms()
                    .iter()
                    .flat_map(|(e, _)| e.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, _)| i % len + 1))
                    .max()
                    .unwrap_or(0)
            })
            .collect()
    }

    pub fn to_json(&self) -> Json {
        let mut obj = json!({
            "kind": self.kind.name(),
            "n": self.n,
            "vars": self.ring.vars(),
            "polys": self.polys.iter().map(json::elem_to_json).collect::<Vec<_>>(),
        });
        if let Some((key, v)) = self.kind.parameter() {
            obj[key] = json!(v);
        }
        obj
    }

    pub fn from_json(v: &Json) -> Result<Self> {
        let name = v["kind"].as_str().ok_or_else(|| WittError::parse("missing kind"))?;
        let n = v["n"].as_u64().ok_or_else(|| WittError::parse("missing n"))? as usize;
        let kind = PolyKind::from_parts(
            name,
            v["p"].as_u64(),
            v["d"].as_u64().map(|d| d as usize),
            v["k"].as_u64().map(|k| k as usize),
        )?;
        let ring = poly_ring(kind, n);
        let polys = v["polys"]
            .as_array()
            .ok_or_else(|| WittError::parse("missing polys"))?
            .iter()
            .map(|p| json::elem_from_json(&ring, p))
            .collect::<Result<Vec<_>>>()?;
        if polys.len() != kind.output_len(n) {
            return Err(WittError::parse("wrong number of polynomials"));
        }
        Ok(UniversalPolySet { kind, n, ring, polys })
    }

    /// One `name_i = polynomial` line per coordinate.
    pub fn pretty(&self) -> String {
        let start = if self.kind.is_ptypical() { 0 } else { 1 };
        self.polys
            .iter()
            .enumerate()
            .map(|(i, p)| format!("{}{} = {p}", self.kind.symbol(), i + start))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(set: &UniversalPolySet, s: &str) -> Elem {
        set.ring().parse_elem(s).unwrap()
    }

    #[test]
    fn sum_polys_n2() {
        let set = gen_polys(PolyKind::Sum, 2).unwrap();
        assert_eq!(set.polys()[0], el(&set, "x1 + y1"));
        assert_eq!(set.polys()[1], el(&set, "x2 + y2 - x1*y1"));
    }

    #[test]
    fn prod_polys_n2() {
        let set = gen_polys(PolyKind::Prod, 2).unwrap();
        assert_eq!(set.polys()[0], el(&set, "x1*y1"));
        assert_eq!(set.polys()[1], el(&set, "x1^2*y2 + x2*y1^2 + 2*x2*y2"));
    }

    #[test]
    fn ptypical_product_coordinate_one() {
        for p in [2u64, 3] {
            let set = gen_polys(PolyKind::PtProd(p), 1).unwrap();
            assert_eq!(set.polys()[0], el(&set, "x0*y0"));
            let expect = format!("x0^{p}*y1 + x1*y0^{p} + {p}*x1*y1");
            assert_eq!(set.polys()[1], el(&set, &expect));
        }
    }

    #[test]
    fn eval_matches_direct_operations() {
        let r = Ring::polynomial(Ring::integers(), ["a", "b"]).unwrap();
        let a = WittVec::new(&r, vec![r.var("a").unwrap(), r.zero()]).unwrap();
        let b = WittVec::new(&r, vec![r.var("b").unwrap(), r.zero()]).unwrap();
        let sum = gen_polys(PolyKind::Sum, 2).unwrap();
        assert_eq!(sum.eval_witt(&a, Some(&b)).unwrap(), a.add(&b).unwrap());
        let prod = gen_polys(PolyKind::Prod, 2).unwrap();
        let one = WittVec::one(&r, 2);
        assert_eq!(prod.eval_witt(&one, Some(&a)).unwrap(), a);
    }

    #[test]
    fn arity_errors() {
        let set = gen_polys(PolyKind::Sum, 2).unwrap();
        let z = Ring::integers();
        let x = WittVec::zero(&z, 2);
        assert!(set.eval_witt(&x, None).is_err());
        assert!(set.eval_witt(&x, Some(&WittVec::zero(&z, 3))).is_err());
    }

    #[test]
    fn norm_has_no_presentation_route() {
        assert!(gen_polys_via(PolyKind::Norm(2), 2, Route::Presentation).is_err());
        assert!(gen_polys_via(PolyKind::PtSum(4), 1, Route::Ghost).is_err());
    }

    #[test]
    fn json_round_trip() {
        let set = gen_polys(PolyKind::Frobenius(2), 2).unwrap();
        let back = UniversalPolySet::from_json(&set.to_json()).unwrap();
        assert_eq!(&back, set.as_ref());
    }

    #[test]
    fn pretty_output() {
        let set = gen_polys(PolyKind::Sum, 2).unwrap();
        let text = set.pretty();
        assert!(text.starts_with("s1 = "));
        assert!(text.contains("\ns2 = "));
    }
}
