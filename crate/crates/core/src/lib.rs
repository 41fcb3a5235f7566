//! Exact computer algebra for q-deformed Steenrod operators and q-harmonic polynomials.

pub mod constructions;
pub mod diffops;
pub mod error;
pub mod harmonics;
pub mod linalg;
pub mod monomial;
pub mod perm;
pub mod poly;
pub mod qpoly;
pub mod repr;
pub mod ring;
pub mod symfun;
pub mod text;

pub use error::{Error, Result};
pub use monomial::{monomial_basis, Monomial};
pub use perm::Perm;
pub use poly::{AnyPolynomial, ArithOp, Degree, Polynomial};
pub use qpoly::{QPoly, QRatFunc};
pub use ring::{QRing, Rational, Ring, RingKind};
pub use text::parse_poly;
