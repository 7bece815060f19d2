//! Exact symbolic kernel for Atiyah classes, Chern characters and
//! semiregularity maps of modules over polynomial rings over ℚ.
//!
//! The kernel works at cocycle level on Koszul resolutions of complete
//! intersections. Everything is exact: identities between classes are
//! decided either as literal equalities of representatives or by solving
//! finite graded linear systems over ℚ.
//!
//! Module map:
//!
//! - [`polyforms`]: polynomials and differential forms
//! - [`chaincore`]: free complexes, chain maps, the Hom-complex bracket,
//!   shifts, cones and coboundary solving
//! - [`koszul`]: Koszul complexes of regular sequences
//! - [`atiyah`]: connections, Atiyah cocycles, contractions
//! - [`cousin`]: the Cousin complex and the local trace
//! - [`semireg`]: Chern characters, semiregularity maps, second
//!   fundamental forms
//! - [`integraldep`]: integral closure invariants of monomial ideals
//! - [`session`] and [`commands`]: the text front end used by the `sr` binary

pub mod atiyah;
pub mod chaincore;
pub mod commands;
pub mod cousin;
pub mod error;
pub mod integraldep;
pub mod koszul;
pub mod linalg;
pub mod polyforms;
mod scan;
pub mod selftest;
pub mod semireg;
pub mod session;
pub mod subset;

#[cfg(doctest)]
mod guide;


pub use error::{Error, Result};
pub use polyforms::{Form, Poly, Rational, Ring};
