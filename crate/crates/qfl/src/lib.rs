//! Exact computer algebra for the quasisymmetric flag variety.
//!
//! The crate is organized around three layers:
//!
//! * combinatorics: noncrossing permutations with the Kreweras and Bruhat
//!   orders ([`permnc`]), and bicolored nested forests with their word
//!   calculus, colored Tamari rewriting, faces, and fixed-point sets
//!   ([`forest`]);
//! * operator calculus: exact multivariate polynomials over `BigInt` with
//!   divided differences, the quasisymmetric substitution operators, double
//!   Schubert and double forest polynomials, and the Φ degree functionals
//!   ([`polyalg`]);
//! * geometry: moment graphs and flowup bases ([`gkm`]), exact rational
//!   matrix models of charts, Plücker vectors, and moment polytopes
//!   ([`geom`]), with closed-form counting and batch verification suites
//!   ([`census`]).
//!
//! Everything is exact: integer or rational arithmetic only, no floats.

pub mod census;
pub mod forest;
pub mod geom;
pub mod gkm;
pub mod permnc;
pub mod polyalg;

pub use permnc::Perm;
pub use forest::BnForest;
pub use polyalg::MPoly;
