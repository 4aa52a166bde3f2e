//! Exact valuation rings over lexicographic value groups, finite-rank local
//! rings glued from them along labelled root trees, and the poset
//! combinatorics of their prime spectra.
//!
//! Arithmetic is generic over [`OrderedField`]. The aliases at the crate root
//! fix the coefficient field to `ℚ` (fast path) or to the tower
//! `ℚ(t_1, …, t_m)` of [`Scalar`].

pub mod analysis;
pub mod boolprod;
pub mod embed;
pub mod error;
pub mod hahn;
pub mod realize;
pub mod rootsys;
pub mod scalars;
pub mod svring;

pub use error::{Error, Result};
pub use rootsys::RootPoset;
pub use scalars::{GroupElement, OrderedField, Rational, Scalar, Sign};
pub use svring::{Node, RingSpec, TupleElt};

/// Generalized polynomials with rational coefficients.
pub type QPoly = hahn::GenPoly<Rational>;
/// Elements of `K_d` with rational coefficients.
pub type QValElt = hahn::ValElt<Rational>;
/// Generalized polynomials over `ℚ(t_1, …, t_m)`.
pub type KPoly = hahn::GenPoly<Scalar>;
/// Elements of `K_d` over `ℚ(t_1, …, t_m)`.
pub type KValElt = hahn::ValElt<Scalar>;
/// Ring elements with rational coefficients.
pub type QTuple = svring::TupleElt<Rational>;
/// Ring elements over `ℚ(t_1, …, t_m)`.
pub type KTuple = svring::TupleElt<Scalar>;
