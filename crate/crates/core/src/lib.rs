//! Exact computer algebra for polynomial differential operators.
//!
//! The crate is organised around [`WeylOp`], a normal-ordered element of the
//! Weyl algebra with rational coefficients:
//!
//! - [`weyl`]: arithmetic, order, and the action on polynomials;
//! - [`symbol`]: principal symbols and characteristic-ideal generators;
//! - [`dmodule`]: polynomial solutions of operator systems, bounded ideal
//!   membership, and the example modules;
//! - [`p1`]: differential operators on the projective line;
//! - [`sl2`]: `sl₂`, its enveloping algebra, and the map onto global
//!   operators on the projective line;
//! - [`syntax`]: parsing and printing.

pub mod dmodule;
pub mod error;
pub mod linalg;
pub mod p1;
pub mod sl2;
pub mod symbol;
pub mod syntax;
#[cfg(feature = "testing")]
pub mod testing;
pub mod weyl;

pub use error::{Error, Result};
pub use weyl::{MultiIndex, Order, Poly, TermKey, WeylOp};

/// Arbitrary-precision rational coefficient.
pub type Rational = num_rational::BigRational;
