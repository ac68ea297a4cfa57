//! Independent reference implementations shared by the integration and
//! acceptance tests. Nothing here calls the library's product or solver.
#![allow(dead_code)]

use std::collections::BTreeMap;

use dmod_core::dmodule::PolyVec;
use dmod_core::{MultiIndex, Rational, WeylOp};
use num_traits::{One, Zero};

/// Letters of an unordered word in D(n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Letter {
    X(usize),
    D(usize),
}

/// Normal form by single-step rewriting: `D_i X_i → X_i D_i + 1`,
/// `D_i X_j → X_j D_i`, and sorting of commuting letters.
pub fn rewrite_normal_form(word: Vec<Letter>, n: usize) -> WeylOp {
    let mut pending: BTreeMap<Vec<Letter>, Rational> = BTreeMap::new();
    pending.insert(word, Rational::from_integer(1.into()));
    let mut out = WeylOp::zero(n, false);
    while let Some((w, c)) = pending.pop_first() {
        let step = w.windows(2).position(|p| p[0] > p[1]);
        let Some(p) = step else {
            let mut x = vec![0i64; n];
            let mut d = vec![0i64; n];
            for l in &w {
                match l {
                    Letter::X(i) => x[*i] += 1,
                    Letter::D(i) => d[*i] += 1,
                }
            }
            let term =
                WeylOp::monomial(n, false, c, MultiIndex::new(x), MultiIndex::new(d)).unwrap();
            out = out.add(&term).unwrap();
            continue;
        };
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        *pending
            .entry(swapped)
            .or_insert_with(|| Rational::from_integer(0.into())) += c.clone();
        if let (Letter::D(i), Letter::X(j)) = (w[p], w[p + 1]) {
            if i == j {
                let mut shorter = w[..p].to_vec();
                shorter.extend_from_slice(&w[p + 2..]);
                *pending
                    .entry(shorter)
                    .or_insert_with(|| Rational::from_integer(0.into())) += c;
            }
        }
    }
    out
}

/// `l₁^k₁ l₂^k₂ …` as a flat word.
pub fn word(ops: &[(Letter, i64)]) -> Vec<Letter> {
    ops.iter()
        .flat_map(|&(l, k)| std::iter::repeat_n(l, k as usize))
        .collect()
}

/// Exponent vectors of total degree ≤ d, in enumeration order.
pub fn all_monomials(n: usize, d: i64) -> Vec<Vec<i64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in all_monomials(n - 1, d - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

/// `x^I ∂^J` applied to `x^M`, computed termwise.
pub fn act_on_monomial(x: &[i64], d: &[i64], m: &[i64]) -> Option<(Vec<i64>, Rational)> {
    let mut c = Rational::one();
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.len() {
        for k in 0..d[i] {
            c *= Rational::from_integer((m[i] - k).into());
        }
        if c.is_zero() {
            return None;
        }
        out.push(m[i] - d[i] + x[i]);
    }
    Some((out, c))
}

/// Null space dimension by plain rational Gauss-Jordan.
pub fn nullity(mut rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= pv * &f;
                }
            }
        }
        rank += 1;
    }
    ncols - rank
}

pub struct Raw {
    pub rows: Vec<Vec<Rational>>,
    pub ncols: usize,
    pub monos: Vec<Vec<i64>>,
}

pub fn raw_constraints(sys: &[Vec<WeylOp>], n: usize, d: i64) -> Raw {
    let monos = all_monomials(n, d);
    let cols = sys[0].len();
    let ncols = cols * monos.len();
    let mut eqs: BTreeMap<(usize, Vec<i64>), Vec<Rational>> = BTreeMap::new();
    for (i, row) in sys.iter().enumerate() {
        for (j, op) in row.iter().enumerate() {
            for (mi, m) in monos.iter().enumerate() {
                for (key, c) in op.terms() {
                    if let Some((out, f)) = act_on_monomial(key.x.as_slice(), key.d.as_slice(), m) {
                        eqs.entry((i, out))
                            .or_insert_with(|| vec![Rational::zero(); ncols])
                            [j * monos.len() + mi] += c * f;
                    }
                }
            }
        }
    }
    Raw {
        rows: eqs.into_values().collect(),
        ncols,
        monos,
    }
}

pub fn coordinates(raw: &Raw, v: &PolyVec) -> Vec<Rational> {
    let mut out = Vec::with_capacity(raw.ncols);
    for p in v.entries() {
        for m in &raw.monos {
            out.push(p.coefficient(&MultiIndex::new(m.clone())));
        }
    }
    out
}
