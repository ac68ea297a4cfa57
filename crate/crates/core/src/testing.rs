//! Random instances for property and acceptance tests.

use rand::Rng;

use crate::sl2::PBWElem;
use crate::weyl::{MultiIndex, Poly, WeylOp};
use crate::Rational;

/// Nonzero rational with numerator in `±1..=7` and denominator in `1..=4`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Rational::new(num.into(), rng.gen_range(1i64..=4).into())
}

fn index<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> MultiIndex {
    MultiIndex::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// Up to `max_terms` terms with every exponent in `0..=max_exp` (coordinate
/// exponents in `-max_exp..=max_exp` in Laurent mode).
pub fn weyl_op<R: Rng>(
    rng: &mut R,
    n: usize,
    laurent: bool,
    max_terms: usize,
    max_exp: i64,
) -> WeylOp {
    let lo = if laurent { -max_exp } else { 0 };
    let count = rng.gen_range(1..=max_terms);
    WeylOp::from_terms(
        n,
        laurent,
        (0..count).map(|_| {
            (
                index(rng, n, lo, max_exp),
                index(rng, n, 0, max_exp),
                rational(rng),
            )
        }),
    )
    .expect("generated indices are valid")
}

/// Random operator of order exactly `order`.
pub fn op_of_order<R: Rng>(
    rng: &mut R,
    n: usize,
    order: usize,
    max_terms: usize,
    max_exp: i64,
) -> WeylOp {
    loop {
        let base = weyl_op(rng, n, false, max_terms, max_exp);
        // keep only terms of order ≤ `order`, then add a top term
        let low = WeylOp::from_terms(
            n,
            false,
            base.terms()
                .filter(|(k, _)| k.d.degree() as usize <= order)
                .map(|(k, c)| (k.x.clone(), k.d.clone(), c.clone())),
        )
        .expect("valid");
        let mut d = vec![0i64; n];
        let mut left = order as i64;
        while left > 0 {
            d[rng.gen_range(0..n)] += 1;
            left -= 1;
        }
        let top = WeylOp::monomial(
            n,
            false,
            rational(rng),
            index(rng, n, 0, max_exp),
            MultiIndex::new(d),
        )
        .expect("valid");
        let op = low.add(&top).expect("same algebra");
        if op.order().finite() == Some(order) {
            return op;
        }
    }
}

pub fn poly<R: Rng>(rng: &mut R, n: usize, laurent: bool, max_terms: usize, max_exp: i64) -> Poly {
    let lo = if laurent { -max_exp } else { 0 };
    let count = rng.gen_range(1..=max_terms);
    Poly::from_terms(
        n,
        laurent,
        (0..count).map(|_| (index(rng, n, lo, max_exp), rational(rng))),
    )
    .expect("generated indices are valid")
}

/// Up to `max_terms` PBW monomials of total degree `≤ max_degree`.
pub fn pbw_elem<R: Rng>(rng: &mut R, max_terms: usize, max_degree: u32) -> PBWElem {
    let count = rng.gen_range(1..=max_terms);
    (0..count).fold(PBWElem::zero(), |acc, _| {
        let deg = rng.gen_range(0..=max_degree);
        let i = rng.gen_range(0..=deg);
        let j = rng.gen_range(0..=deg - i);
        acc.add(&PBWElem::monomial(rational(rng), (i, j, deg - i - j)))
    })
}
