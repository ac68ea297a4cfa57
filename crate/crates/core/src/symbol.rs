//! Principal symbols.
//!
//! The order filtration on `D(n)` has a commutative polynomial ring in
//! `x_1..x_n, ξ_1..ξ_n` as associated graded ring. [`sym_p`] reads off the
//! image of an operator of order at most `p` by keeping its `|J| = p` terms
//! and renaming `∂^J` to `ξ^J`. [`sigma_p`] is the iterated commutator with
//! multiplication operators, the route the symbol is usually defined by;
//! the two are tied together by `(1/p!) σ_p(T)(l_ξ, …, l_ξ) = Sym_p(T)(x, ξ)`
//! with `l_ξ = Σ ξ_i x_i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weyl::{monomial_value, MultiIndex, Order, Poly, TermKey, WeylOp};
use crate::Rational;

/// Commutative polynomial in `x_1..x_n, ξ_1..ξ_n`.
///
/// The key's `d` slot holds the ξ-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoly {
    nvars: usize,
    terms: BTreeMap<TermKey, Rational>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(nvars: usize, c: Rational, x: MultiIndex, xi: MultiIndex) -> Result<Self> {
        for idx in [&x, &xi] {
            if idx.len() != nvars {
                return Err(Error::IndexLength {
                    expected: nvars,
                    got: idx.len(),
                });
            }
        }
        if !xi.is_non_negative() {
            return Err(Error::NegativeExponent);
        }
        let mut s = SymPoly::zero(nvars);
        s.insert(TermKey { x, d: xi }, c);
        Ok(s)
    }

    fn insert(&mut self, key: TermKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms keyed by `(x-exponents, ξ-exponents)`, ascending graded-lex.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check(other.nvars)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        self.check(other.nvars)?;
        let mut out = SymPoly::zero(self.nvars);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.insert(
                    TermKey {
                        x: k1.x.plus(&k2.x),
                        d: k1.d.plus(&k2.d),
                    },
                    c1 * c2,
                );
            }
        }
        Ok(out)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.nvars != n {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: n,
            });
        }
        Ok(())
    }

    /// Exact value at `(x, ξ)`.
    pub fn eval(&self, x: &[Rational], xi: &[Rational]) -> Result<Rational> {
        for pt in [x, xi] {
            if pt.len() != self.nvars {
                return Err(Error::PointDimension {
                    expected: self.nvars,
                    got: pt.len(),
                });
            }
        }
        Ok(self
            .terms
            .iter()
            .map(|(k, c)| c * monomial_value(&k.x, x) * monomial_value(&k.d, xi))
            .fold(Rational::zero(), |a, b| a + b))
    }
}

/// Same as [`SymPoly::eval`].
pub fn eval_sympoly(s: &SymPoly, x: &[Rational], xi: &[Rational]) -> Result<Rational> {
    s.eval(x, xi)
}

fn check_order(t: &WeylOp, p: usize) -> Result<()> {
    let order = t.order();
    if order > Order::Finite(p) {
        return Err(Error::OrderBound { order, bound: p });
    }
    Ok(())
}

/// `[…[[T, a_1], a_2], …, a_p]` with each `a_i` acting by multiplication.
/// Requires `order(T) ≤ p`, so the result has order zero.
pub fn sigma_p(t: &WeylOp, args: &[Poly]) -> Result<Poly> {
    check_order(t, args.len())?;
    let mut acc = t.clone();
    for a in args {
        acc = acc.commutator(&a.to_op())?;
    }
    Ok(acc
        .as_poly()
        .expect("p commutators with functions annihilate the ∂-part of an order-p operator"))
}

/// The p-symbol: terms with `|J| = p`, with `∂^J` renamed to `ξ^J`.
pub fn sym_p(t: &WeylOp, p: usize) -> Result<SymPoly> {
    check_order(t, p)?;
    let mut out = SymPoly::zero(t.nvars());
    for (key, c) in t.terms() {
        if key.d.degree() as usize == p {
            out.insert(key.clone(), c.clone());
        }
    }
    Ok(out)
}

/// `sym_p(T, order(T))`; the zero operator has no principal symbol.
pub fn principal_symbol(t: &WeylOp) -> Result<SymPoly> {
    match t.order() {
        Order::Undefined => Err(Error::ZeroGenerator),
        Order::Finite(p) => sym_p(t, p),
    }
}

/// Top symbols of the generators of a presenting left ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharIdealGens {
    pub generators: Vec<SymPoly>,
    pub source: Vec<WeylOp>,
}

impl CharIdealGens {
    /// True when every generator symbol vanishes at `(x, ξ)`.
    pub fn vanishes_at(&self, x: &[Rational], xi: &[Rational]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(x, xi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn char_ideal_gens(presenting: &[WeylOp]) -> Result<CharIdealGens> {
    let generators = presenting
        .iter()
        .map(principal_symbol)
        .collect::<Result<Vec<_>>>()?;
    Ok(CharIdealGens {
        generators,
        source: presenting.to_vec(),
    })
}

/// `l_ξ = Σ ξ_i x_i`.
pub fn linear_form(xi: &[Rational], laurent: bool) -> Poly {
    let n = xi.len();
    Poly::from_terms(
        n,
        laurent,
        xi.iter()
            .enumerate()
            .map(|(i, c)| (MultiIndex::unit(n, i), c.clone())),
    )
    .expect("unit indices are valid")
}

/// `p!` as a rational.
pub(crate) fn factorial(p: usize) -> Rational {
    (1..=p).fold(Rational::one(), |acc, k| {
        acc * Rational::from_integer(k.into())
    })
}

/// `(1/p!) σ_p(T)(l_ξ, …, l_ξ)`, a polynomial in `x` for a fixed ξ.
pub fn symbol_via_commutators(t: &WeylOp, p: usize, xi: &[Rational]) -> Result<Poly> {
    if xi.len() != t.nvars() {
        return Err(Error::PointDimension {
            expected: t.nvars(),
            got: xi.len(),
        });
    }
    let l = linear_form(xi, t.is_laurent());
    let args = vec![l; p];
    Ok(sigma_p(t, &args)?.scale(&factorial(p).recip()))
}
