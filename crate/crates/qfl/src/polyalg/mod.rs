//! Exact polynomial operator calculus in two alphabets x and t.
//!
//! The heart is [`mpoly::MPoly`], integer-coefficient polynomials in up to
//! 16 x-variables and 16 t-variables. On top of it sit the trimming
//! operators, double Schubert polynomials, forest polynomials with their
//! dual functionals, and the quasisymmetric ideal machinery.

pub mod eqsym;
pub mod forestpoly;
pub mod linalg;
pub mod mpoly;
pub mod ops;
pub mod schubert;

pub use mpoly::MPoly;
