//! Normal-ordered arithmetic in the Weyl algebra `D(n)` and its Laurent
//! extension.
//!
//! Every operator is stored as a finite sum `Σ c · x^I ∂^J` with all
//! coordinate factors to the left of all derivations. Products are brought
//! back to that form with the per-variable Leibniz expansion
//!
//! ```text
//! ∂^b x^c = Σ_k C(b, k) · c(c-1)…(c-k+1) · x^(c-k) ∂^(b-k)
//! ```
//!
//! which for `c ≥ 0` is `C(b,k)·C(c,k)·k!` and for negative `c` (Laurent
//! mode) keeps all `k ≤ b` terms.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Exponent vector `(e_1, …, e_n)`.
///
/// Ordered graded-lexicographically: total degree first, then the entries
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(exponents: Vec<i64>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector with a one in slot `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_non_negative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn minus(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<i64>> for MultiIndex {
    fn from(v: Vec<i64>) -> Self {
        MultiIndex(v)
    }
}

/// Key of a normal-ordered monomial `x^I ∂^J`.
///
/// Ordered by `(|I| + |J|, I, J)`; printing walks this order from the top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermKey {
    pub x: MultiIndex,
    pub d: MultiIndex,
}

impl TermKey {
    pub fn total_degree(&self) -> i64 {
        self.x.degree() + self.d.degree()
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.d.cmp(&other.d))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Filtration order of an operator. `Undefined` (the zero operator) sorts
/// below every finite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Undefined,
    Finite(usize),
}

impl Order {
    pub fn finite(self) -> Option<usize> {
        match self {
            Order::Undefined => None,
            Order::Finite(p) => Some(p),
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Undefined => f.write_str("undefined"),
            Order::Finite(p) => write!(f, "{p}"),
        }
    }
}

fn check_index(n: usize, laurent: bool, idx: &MultiIndex, allow_negative: bool) -> Result<()> {
    if idx.len() != n {
        return Err(Error::IndexLength {
            expected: n,
            got: idx.len(),
        });
    }
    if !idx.is_non_negative() && !(laurent && allow_negative) {
        return Err(Error::NegativeExponent);
    }
    Ok(())
}

fn check_compatible(n1: usize, l1: bool, n2: usize, l2: bool) -> Result<()> {
    if n1 != n2 {
        return Err(Error::ArityMismatch {
            left: n1,
            right: n2,
        });
    }
    if l1 != l2 {
        return Err(Error::LaurentMismatch);
    }
    Ok(())
}

/// `c (c-1) … (c-k+1)`, valid for negative `c`.
pub(crate) fn falling_factorial(c: i64, k: i64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(c - i))
}

pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Expansion of `∂^b x^c` as pairs `(k, C(b,k)·c(c-1)…(c-k+1))`, nonzero only.
fn commute_one(b: i64, c: i64) -> Vec<(i64, BigInt)> {
    (0..=b)
        .map(|k| (k, binomial(b, k) * falling_factorial(c, k)))
        .filter(|(_, coef)| !coef.is_zero())
        .collect()
}

/// A polynomial, or Laurent polynomial, in `n` commuting coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize, laurent: bool) -> Self {
        assert!(nvars >= 1, "at least one variable is required");
        Poly {
            nvars,
            laurent,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, laurent: bool, c: Rational) -> Self {
        let mut p = Poly::zero(nvars, laurent);
        p.insert(MultiIndex::zeros(nvars), c);
        p
    }

    pub fn one(nvars: usize, laurent: bool) -> Self {
        Poly::constant(nvars, laurent, Rational::one())
    }

    /// The coordinate `x_i` (zero-based).
    pub fn var(nvars: usize, laurent: bool, i: usize) -> Self {
        Poly::monomial(nvars, laurent, Rational::one(), MultiIndex::unit(nvars, i))
            .expect("unit index is valid")
    }

    pub fn monomial(nvars: usize, laurent: bool, c: Rational, exps: MultiIndex) -> Result<Self> {
        check_index(nvars, laurent, &exps, true)?;
        let mut p = Poly::zero(nvars, laurent);
        p.insert(exps, c);
        Ok(p)
    }

    pub fn from_terms<I>(nvars: usize, laurent: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, Rational)>,
    {
        let mut p = Poly::zero(nvars, laurent);
        for (e, c) in terms {
            check_index(nvars, laurent, &e, true)?;
            p.insert(e, c);
        }
        Ok(p)
    }

    fn insert(&mut self, e: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &MultiIndex) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    fn check(&self, other: &Poly) -> Result<()> {
        check_compatible(self.nvars, self.laurent, other.nvars, other.laurent)
    }

    pub fn add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Poly) -> Result<Poly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        let mut out = Poly::zero(self.nvars, self.laurent);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let mut out = Poly::zero(self.nvars, self.laurent);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert(e1.plus(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Formal partial derivative in coordinate `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.laurent);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k != 0 {
                out.insert(
                    e.minus(&MultiIndex::unit(self.nvars, i)),
                    c * Rational::from_integer(k.into()),
                );
            }
        }
        out
    }

    /// Exact evaluation. Fails on a dimension mismatch; a negative power of a
    /// zero coordinate panics.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::PointDimension {
                expected: self.nvars,
                got: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| c * monomial_value(e, point))
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// The multiplication operator by this polynomial.
    pub fn to_op(&self) -> WeylOp {
        let mut op = WeylOp::zero(self.nvars, self.laurent);
        for (e, c) in &self.terms {
            op.insert(
                TermKey {
                    x: e.clone(),
                    d: MultiIndex::zeros(self.nvars),
                },
                c.clone(),
            );
        }
        op
    }

    /// Same polynomial viewed with a different Laurent flag.
    pub fn with_laurent(&self, laurent: bool) -> Result<Poly> {
        if !laurent && self.terms.keys().any(|e| !e.is_non_negative()) {
            return Err(Error::NegativeExponent);
        }
        Ok(Poly {
            laurent,
            ..self.clone()
        })
    }
}

pub(crate) fn monomial_value(e: &MultiIndex, point: &[Rational]) -> Rational {
    e.as_slice()
        .iter()
        .zip(point)
        .map(|(&k, v)| {
            if k >= 0 {
                num_traits::pow(v.clone(), k as usize)
            } else {
                num_traits::pow(v.recip(), (-k) as usize)
            }
        })
        .fold(Rational::one(), |a, b| a * b)
}

/// An element of `D(n)`, or of the Laurent-Weyl algebra when `laurent` is
/// set, in normal order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylOp {
    nvars: usize,
    laurent: bool,
    terms: BTreeMap<TermKey, Rational>,
}

impl WeylOp {
    pub fn zero(nvars: usize, laurent: bool) -> Self {
        assert!(nvars >= 1, "at least one variable is required");
        WeylOp {
            nvars,
            laurent,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, laurent: bool, c: Rational) -> Self {
        let mut op = WeylOp::zero(nvars, laurent);
        op.insert(
            TermKey {
                x: MultiIndex::zeros(nvars),
                d: MultiIndex::zeros(nvars),
            },
            c,
        );
        op
    }

    pub fn one(nvars: usize, laurent: bool) -> Self {
        WeylOp::constant(nvars, laurent, Rational::one())
    }

    /// The coordinate `x_i` (zero-based).
    pub fn x(nvars: usize, laurent: bool, i: usize) -> Self {
        WeylOp::monomial(
            nvars,
            laurent,
            Rational::one(),
            MultiIndex::unit(nvars, i),
            MultiIndex::zeros(nvars),
        )
        .expect("unit index is valid")
    }

    /// The derivation `∂_i` (zero-based).
    pub fn d(nvars: usize, laurent: bool, i: usize) -> Self {
        WeylOp::monomial(
            nvars,
            laurent,
            Rational::one(),
            MultiIndex::zeros(nvars),
            MultiIndex::unit(nvars, i),
        )
        .expect("unit index is valid")
    }

    /// `c · x^I ∂^J`.
    pub fn monomial(
        nvars: usize,
        laurent: bool,
        c: Rational,
        x: MultiIndex,
        d: MultiIndex,
    ) -> Result<Self> {
        check_index(nvars, laurent, &x, true)?;
        check_index(nvars, laurent, &d, false)?;
        let mut op = WeylOp::zero(nvars, laurent);
        op.insert(TermKey { x, d }, c);
        Ok(op)
    }

    pub fn from_terms<I>(nvars: usize, laurent: bool, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, Rational)>,
    {
        let mut op = WeylOp::zero(nvars, laurent);
        for (x, d, c) in terms {
            check_index(nvars, laurent, &x, true)?;
            check_index(nvars, laurent, &d, false)?;
            op.insert(TermKey { x, d }, c);
        }
        Ok(op)
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

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order; `.rev()` gives printing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, x: &MultiIndex, d: &MultiIndex) -> Rational {
        self.terms
            .get(&TermKey {
                x: x.clone(),
                d: d.clone(),
            })
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn check(&self, other: &WeylOp) -> Result<()> {
        check_compatible(self.nvars, self.laurent, other.nvars, other.laurent)
    }

    pub fn add(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WeylOp) -> Result<WeylOp> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WeylOp {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> WeylOp {
        let mut out = WeylOp::zero(self.nvars, self.laurent);
        for (k, c) in &self.terms {
            out.insert(k.clone(), c * s);
        }
        out
    }

    /// Adds the constant `c`.
    pub fn add_scalar(&self, c: &Rational) -> WeylOp {
        let mut out = self.clone();
        out.insert(
            TermKey {
                x: MultiIndex::zeros(self.nvars),
                d: MultiIndex::zeros(self.nvars),
            },
            c.clone(),
        );
        out
    }

    /// Product in normal order.
    pub fn mul(&self, other: &WeylOp) -> Result<WeylOp> {
        self.check(other)?;
        let mut out = WeylOp::zero(self.nvars, self.laurent);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let coef = c1 * c2;
                // x^I (∂^J x^K) ∂^L, one variable at a time.
                let expansions: Vec<Vec<(i64, BigInt)>> = (0..self.nvars)
                    .map(|i| commute_one(k1.d.get(i), k2.x.get(i)))
                    .collect();
                let x_base = k1.x.plus(&k2.x);
                let d_base = k1.d.plus(&k2.d);
                let mut shifts = vec![0i64; self.nvars];
                expand_product(
                    &expansions,
                    0,
                    &mut shifts,
                    BigInt::one(),
                    &mut |ks, weight| {
                        let shift = MultiIndex::new(ks.to_vec());
                        out.insert(
                            TermKey {
                                x: x_base.minus(&shift),
                                d: d_base.minus(&shift),
                            },
                            &coef * Rational::from_integer(weight),
                        );
                    },
                );
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, other: &WeylOp) -> Result<WeylOp> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> WeylOp {
        let mut acc = WeylOp::one(self.nvars, self.laurent);
        for _ in 0..k {
            acc = acc.mul(self).expect("same algebra");
        }
        acc
    }

    /// Largest `|J|` over the stored terms.
    pub fn order(&self) -> Order {
        self.terms
            .keys()
            .map(|k| k.d.degree() as usize)
            .max()
            .map_or(Order::Undefined, Order::Finite)
    }

    /// Largest `|I| + |J|`, `None` for zero.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(TermKey::total_degree).max()
    }

    /// Action on (Laurent) polynomials: coordinates multiply, derivations
    /// differentiate.
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        check_compatible(self.nvars, self.laurent, f.nvars, f.laurent)?;
        let mut out = Poly::zero(self.nvars, self.laurent);
        for (key, c) in &self.terms {
            for (m, fc) in &f.terms {
                let weight = (0..self.nvars).fold(BigInt::one(), |acc, i| {
                    acc * falling_factorial(m.get(i), key.d.get(i))
                });
                if weight.is_zero() {
                    continue;
                }
                out.insert(
                    m.minus(&key.d).plus(&key.x),
                    c * fc * Rational::from_integer(weight),
                );
            }
        }
        Ok(out)
    }

    /// The operator as a polynomial when it has order zero.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.terms.keys().any(|k| !k.d.is_zero()) {
            return None;
        }
        let mut p = Poly::zero(self.nvars, self.laurent);
        for (k, c) in &self.terms {
            p.insert(k.x.clone(), c.clone());
        }
        Some(p)
    }

    /// Lifts a plain operator into the Laurent algebra of the same arity.
    pub fn to_laurent(&self) -> WeylOp {
        WeylOp {
            laurent: true,
            ..self.clone()
        }
    }

    /// Drops the Laurent flag; fails if a negative power is present.
    pub fn to_plain(&self) -> Result<WeylOp> {
        if self.terms.keys().any(|k| !k.x.is_non_negative()) {
            return Err(Error::NegativeExponent);
        }
        Ok(WeylOp {
            laurent: false,
            ..self.clone()
        })
    }

    pub fn has_negative_powers(&self) -> bool {
        self.terms.keys().any(|k| !k.x.is_non_negative())
    }
}

fn expand_product(
    expansions: &[Vec<(i64, BigInt)>],
    var: usize,
    shifts: &mut Vec<i64>,
    weight: BigInt,
    emit: &mut impl FnMut(&[i64], BigInt),
) {
    if var == expansions.len() {
        emit(shifts, weight);
        return;
    }
    for (k, c) in &expansions[var] {
        shifts[var] = *k;
        expand_product(expansions, var + 1, shifts, &weight * c, emit);
    }
    shifts[var] = 0;
}
