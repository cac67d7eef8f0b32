//! Exact symbolic verification toolkit for a cascade of determinantal
//! Calabi–Yau threefolds: structured matrices of linear forms and their
//! minor/Pfaffian ideals, a Gröbner engine for dimensions, degrees and point
//! counts over GF(p), and a Schubert-calculus layer for Porteous degrees,
//! Euler characteristics and Chow-group ranks over the rationals.
//!
//! The `scenario` module binds everything into named verification scenarios
//! with structured pass/fail reports; the `verify` binary in the companion
//! crate drives them from the command line.

pub mod error;
pub mod field;
pub mod monomial;
pub mod poly;
pub mod linalg;
pub mod detmat;
pub mod groebner;
pub mod chow;
pub mod scenario;

pub use error::CascadeError;
