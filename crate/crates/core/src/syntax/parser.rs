use std::fmt;

use num_traits::{ToPrimitive, Zero};

use super::lexer::{tokenize, Spanned, Tok};
use crate::error::{Error, Result};
use crate::sl2::{pbw_mul, PBWElem, Sl2Basis};
use crate::weyl::{MultiIndex, WeylOp};
use crate::Rational;

/// Which algebra identifiers resolve into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Signature {
    Weyl { nvars: usize, laurent: bool },
    Sl2,
}

/// Parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Num(Rational),
    /// Zero-based coordinate index.
    Coord(usize),
    /// Zero-based derivation index.
    Deriv(usize),
    Gen(Sl2Basis),
    Neg(Box<OpExpr>),
    Add(Box<OpExpr>, Box<OpExpr>),
    Sub(Box<OpExpr>, Box<OpExpr>),
    Mul(Box<OpExpr>, Box<OpExpr>),
    /// Negative exponents only on a coordinate in Laurent mode.
    Pow(Box<OpExpr>, i64),
    Bracket(Box<OpExpr>, Box<OpExpr>),
}

/// Parse failure with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

const OPERAND: &[&str] = &["number", "identifier", "`(`", "`[`", "`-`"];

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, at: &Spanned, message: impl Into<String>, expected: &[&str]) -> ParseError {
        ParseError {
            line: at.line,
            column: at.column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let at = self.peek();
        self.error_at(at, format!("unexpected {}", at.tok.describe()), expected)
    }

    fn expect(&mut self, tok: Tok, name: &str) -> std::result::Result<(), ParseError> {
        if self.peek().tok == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn expr(&mut self) -> std::result::Result<OpExpr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = OpExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = OpExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> std::result::Result<OpExpr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = OpExpr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<OpExpr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(OpExpr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<OpExpr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let sign_tok = self.peek().clone();
        let negative = sign_tok.tok == Tok::Minus;
        if negative {
            self.bump();
        }
        let at = self.peek().clone();
        let Tok::Int(n) = at.tok.clone() else {
            return Err(self.unexpected(&["integer exponent"]));
        };
        self.bump();
        let magnitude = n
            .to_i64()
            .filter(|&v| v <= u32::MAX as i64)
            .ok_or_else(|| self.error_at(&at, "exponent too large", &[]))?;
        if negative {
            let laurent = matches!(self.sig, Signature::Weyl { laurent: true, .. });
            if !laurent {
                return Err(self.error_at(
                    &sign_tok,
                    "negative exponent requires laurent mode",
                    &[],
                ));
            }
            if !matches!(base, OpExpr::Coord(_)) {
                return Err(self.error_at(
                    &sign_tok,
                    "negative exponents apply only to a coordinate",
                    &[],
                ));
            }
            return Ok(OpExpr::Pow(Box::new(base), -magnitude));
        }
        Ok(OpExpr::Pow(Box::new(base), magnitude))
    }

    fn atom(&mut self) -> std::result::Result<OpExpr, ParseError> {
        let at = self.peek().clone();
        match at.tok {
            Tok::Int(n) => {
                self.bump();
                if self.peek().tok == Tok::Slash {
                    self.bump();
                    let den_at = self.peek().clone();
                    let Tok::Int(d) = den_at.tok.clone() else {
                        return Err(self.unexpected(&["integer denominator"]));
                    };
                    self.bump();
                    if d.is_zero() {
                        return Err(self.error_at(&den_at, "zero denominator", &[]));
                    }
                    return Ok(OpExpr::Num(Rational::new(n, d)));
                }
                Ok(OpExpr::Num(Rational::from_integer(n)))
            }
            Tok::Ident(ref name) => {
                self.bump();
                self.resolve(name, &at)
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::LBracket => {
                self.bump();
                let a = self.expr()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.expr()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(OpExpr::Bracket(Box::new(a), Box::new(b)))
            }
            _ => Err(self.unexpected(OPERAND)),
        }
    }

    fn resolve(&self, name: &str, at: &Spanned) -> std::result::Result<OpExpr, ParseError> {
        match *self.sig {
            Signature::Sl2 => Sl2Basis::parse(name).map(OpExpr::Gen).ok_or_else(|| {
                self.error_at(at, format!("unknown identifier `{name}`"), &["E", "F", "H"])
            }),
            Signature::Weyl { nvars, laurent } => {
                if nvars == 1 {
                    match name {
                        "z" => return Ok(OpExpr::Coord(0)),
                        "dz" => return Ok(OpExpr::Deriv(0)),
                        "zinv" if laurent => {
                            return Ok(OpExpr::Pow(Box::new(OpExpr::Coord(0)), -1))
                        }
                        "zinv" => {
                            return Err(self.error_at(at, "`zinv` requires laurent mode", &[]))
                        }
                        _ => {}
                    }
                }
                let indexed = |prefix: char| {
                    name.strip_prefix(prefix)
                        .filter(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                        .and_then(|rest| rest.parse::<usize>().ok())
                };
                let (kind, k) = match (indexed('x'), indexed('d')) {
                    (Some(k), _) => ('x', k),
                    (_, Some(k)) => ('d', k),
                    _ => {
                        let mut expected = vec![format!("x1..x{nvars}"), format!("d1..d{nvars}")];
                        if nvars == 1 {
                            expected.extend(["z".to_string(), "dz".to_string()]);
                            if laurent {
                                expected.push("zinv".to_string());
                            }
                        }
                        return Err(ParseError {
                            line: at.line,
                            column: at.column,
                            message: format!("unknown identifier `{name}`"),
                            expected,
                        });
                    }
                };
                if k == 0 || k > nvars {
                    return Err(self.error_at(
                        at,
                        format!("`{name}` is out of range for {nvars} variable(s)"),
                        &[],
                    ));
                }
                Ok(if kind == 'x' {
                    OpExpr::Coord(k - 1)
                } else {
                    OpExpr::Deriv(k - 1)
                })
            }
        }
    }
}

/// Parses a complete expression.
pub fn parse(source: &str, sig: &Signature) -> std::result::Result<OpExpr, ParseError> {
    let toks = tokenize(source)?;
    let mut p = Parser { toks, pos: 0, sig };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "`^`", "end of input"]));
    }
    Ok(e)
}

/// Parses an `sl₂` expression in `E`, `F`, `H`.
pub fn parse_pbw(source: &str) -> std::result::Result<OpExpr, ParseError> {
    parse(source, &Signature::Sl2)
}

/// Evaluates an operator expression in `D(n)`.
pub fn eval(expr: &OpExpr, nvars: usize, laurent: bool) -> Result<WeylOp> {
    let rec = |e: &OpExpr| eval(e, nvars, laurent);
    Ok(match expr {
        OpExpr::Num(c) => WeylOp::constant(nvars, laurent, c.clone()),
        OpExpr::Coord(i) => {
            check_var(*i, nvars)?;
            WeylOp::x(nvars, laurent, *i)
        }
        OpExpr::Deriv(i) => {
            check_var(*i, nvars)?;
            WeylOp::d(nvars, laurent, *i)
        }
        OpExpr::Gen(_) => {
            return Err(Error::Unsupported(
                "sl2 generator in an operator expression",
            ))
        }
        OpExpr::Neg(a) => rec(a)?.neg(),
        OpExpr::Add(a, b) => rec(a)?.add(&rec(b)?)?,
        OpExpr::Sub(a, b) => rec(a)?.sub(&rec(b)?)?,
        OpExpr::Mul(a, b) => rec(a)?.mul(&rec(b)?)?,
        OpExpr::Bracket(a, b) => rec(a)?.commutator(&rec(b)?)?,
        OpExpr::Pow(a, k) if *k >= 0 => rec(a)?.pow(*k as u32),
        OpExpr::Pow(a, k) => match **a {
            OpExpr::Coord(i) => {
                check_var(i, nvars)?;
                let mut x = vec![0; nvars];
                x[i] = *k;
                WeylOp::monomial(
                    nvars,
                    laurent,
                    Rational::from_integer(1.into()),
                    MultiIndex::new(x),
                    MultiIndex::zeros(nvars),
                )?
            }
            _ => return Err(Error::NegativeExponent),
        },
    })
}

fn check_var(i: usize, nvars: usize) -> Result<()> {
    if i >= nvars {
        return Err(Error::ArityMismatch {
            left: nvars,
            right: i + 1,
        });
    }
    Ok(())
}

/// Evaluates an expression in `U(sl₂)`.
pub fn eval_pbw(expr: &OpExpr) -> Result<PBWElem> {
    Ok(match expr {
        OpExpr::Num(c) => PBWElem::scalar(c.clone()),
        OpExpr::Gen(g) => PBWElem::generator(*g),
        OpExpr::Coord(_) | OpExpr::Deriv(_) => {
            return Err(Error::Unsupported("operator variable in an sl2 expression"))
        }
        OpExpr::Neg(a) => eval_pbw(a)?.scale(&Rational::from_integer((-1).into())),
        OpExpr::Add(a, b) => eval_pbw(a)?.add(&eval_pbw(b)?),
        OpExpr::Sub(a, b) => eval_pbw(a)?.sub(&eval_pbw(b)?),
        OpExpr::Mul(a, b) => pbw_mul(&eval_pbw(a)?, &eval_pbw(b)?),
        OpExpr::Bracket(a, b) => {
            let (x, y) = (eval_pbw(a)?, eval_pbw(b)?);
            pbw_mul(&x, &y).sub(&pbw_mul(&y, &x))
        }
        OpExpr::Pow(a, k) if *k >= 0 => eval_pbw(a)?.pow(*k as u32),
        OpExpr::Pow(..) => return Err(Error::NegativeExponent),
    })
}
