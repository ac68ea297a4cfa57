//! Surface syntax for operators and enveloping-algebra elements.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := unary ("*" unary)*          left-associative, not commutative
//! unary   := "-" unary | power
//! power   := atom ("^" "-"? integer)?
//! atom    := integer ("/" integer)? | ident | "(" expr ")" | "[" expr "," expr "]"
//! ```
//!
//! Identifiers are `x1..xn`, `d1..dn`, and for one variable also `z`, `dz`
//! and (Laurent mode) `zinv`. The `sl₂` dialect uses `E`, `F`, `H`.

mod lexer;
mod parser;
mod print;

pub use parser::{eval, eval_pbw, parse, parse_pbw, OpExpr, ParseError, Signature};
pub use print::{coordinate_name, derivation_name, xi_name, Renamed};
