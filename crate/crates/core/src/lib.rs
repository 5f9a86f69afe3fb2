//! Exact big and p-typical Witt vectors over pluggable commutative rings.
//!
//! A big Witt vector of length `n` over a ring `A` has three faces:
//!
//! * coordinates `(a₁, …, a_n)` — [`WittVec`];
//! * the unit power series `∏ (1 − aᵢtⁱ)` — [`UnitSeries`];
//! * formal sums of atoms `Vⁱ[a]` — [`FormalSum`].
//!
//! Addition is the product of series, multiplication is computed atomwise,
//! and the ghost map `gh_n = Σ_{d|n} d·a_d^{n/d}` turns both into
//! componentwise operations. The p-typical quotient lives in [`ptypical`],
//! the universal addition/multiplication polynomials in [`universal`], and a
//! linear-algebra model through characteristic series of matrices in
//! [`endo`].
//!
//! ```
//! use wittkit::{Ring, WittVec};
//!
//! let r: Ring = "poly:Z[a,b]".parse().unwrap();
//! let x = WittVec::new(&r, vec![r.zero(), r.var("a").unwrap()]).unwrap();
//! let y = WittVec::new(&r, vec![r.zero(), r.var("b").unwrap()]).unwrap();
//! let xy = x.mul(&y).unwrap();
//! assert_eq!(xy.coords()[1].to_string(), "2*a*b");
//! ```

pub mod endo;
pub mod error;
pub mod formal;
pub mod json;
pub mod ptypical;
pub mod ring;
pub mod series;
pub mod universal;
pub mod witt;

pub use endo::{MatrixEndo, VirtualEndo};
pub use error::{Result, WittError};
pub use formal::{CycleSum, FormalSum, VAtom};
pub use ptypical::{artin_hasse, artin_hasse_coeffs, PTypicalWitt};
pub use ring::{Elem, ElemRepr, Ring, RingKind};
pub use series::{PlainSeries, UnitSeries};
pub use universal::{gen_polys, gen_polys_via, PolyKind, Route, UniversalPolySet};
pub use witt::{DworkOutcome, GhostVec, WittVec};
