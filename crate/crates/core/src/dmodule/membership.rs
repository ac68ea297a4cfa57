use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::dmodule::monomials_up_to;
use crate::error::{Error, Result};
use crate::linalg;
use crate::weyl::{MultiIndex, TermKey, WeylOp};
use crate::Rational;

/// Outcome of a degree-bounded left-ideal membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `t = Σ_k cofactors[k] · gens[k]`.
    Member { cofactors: Vec<WeylOp> },
    /// No combination with every `m · g` of total degree `≤ degree_bound`.
    NotFound { degree_bound: usize },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member { .. })
    }
}

/// Is `t` in the span of `{ x^A ∂^B · g : g ∈ gens, deg(x^A ∂^B · g) ≤ d }`?
///
/// A negative answer only means no certificate exists inside the window.
pub fn ideal_member_bounded(t: &WeylOp, gens: &[WeylOp], d: usize) -> Result<Membership> {
    let (n, laurent) = (t.nvars(), t.is_laurent());
    for g in gens {
        if g.nvars() != n {
            return Err(Error::ArityMismatch {
                left: n,
                right: g.nvars(),
            });
        }
        if g.is_laurent() != laurent {
            return Err(Error::LaurentMismatch);
        }
    }
    if t.total_degree().is_some_and(|deg| deg > d as i64) {
        return Err(Error::Unsupported(
            "degree bound is below the total degree of the target",
        ));
    }

    // (generator index, multiplier) for every admissible product
    let multipliers: Vec<(MultiIndex, MultiIndex)> = monomials_up_to(2 * n, d)
        .into_iter()
        .map(|e| {
            let s = e.as_slice();
            (
                MultiIndex::new(s[..n].to_vec()),
                MultiIndex::new(s[n..].to_vec()),
            )
        })
        .collect();
    let mut columns: Vec<(usize, WeylOp, WeylOp)> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        let Some(gdeg) = g.total_degree() else {
            continue;
        };
        for (a, b) in &multipliers {
            if a.degree() + b.degree() + gdeg > d as i64 {
                continue;
            }
            let m = WeylOp::monomial(n, laurent, Rational::one(), a.clone(), b.clone())?;
            let prod = m.mul(g)?;
            if !prod.is_zero() {
                columns.push((k, m, prod));
            }
        }
    }

    let mut coords: BTreeMap<TermKey, usize> = BTreeMap::new();
    for key in t.terms().map(|(k, _)| k).chain(
        columns
            .iter()
            .flat_map(|(_, _, p)| p.terms().map(|(k, _)| k)),
    ) {
        let next = coords.len();
        coords.entry(key.clone()).or_insert(next);
    }
    let mut rows = vec![vec![Rational::zero(); columns.len()]; coords.len()];
    for (col, (_, _, prod)) in columns.iter().enumerate() {
        for (key, c) in prod.terms() {
            rows[coords[key]][col] = c.clone();
        }
    }
    let mut rhs = vec![Rational::zero(); coords.len()];
    for (key, c) in t.terms() {
        rhs[coords[key]] = c.clone();
    }

    match linalg::solve(&rows, &rhs, columns.len()) {
        None => Ok(Membership::NotFound { degree_bound: d }),
        Some(x) => {
            let mut cofactors = vec![WeylOp::zero(n, laurent); gens.len()];
            for ((k, m, _), coef) in columns.iter().zip(&x) {
                if !coef.is_zero() {
                    cofactors[*k] = cofactors[*k].add(&m.scale(coef))?;
                }
            }
            Ok(Membership::Member { cofactors })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> WeylOp {
        WeylOp::x(1, false, 0)
    }

    fn dz() -> WeylOp {
        WeylOp::d(1, false, 0)
    }

    fn recombine(cofactors: &[WeylOp], gens: &[WeylOp]) -> WeylOp {
        cofactors
            .iter()
            .zip(gens)
            .fold(WeylOp::zero(1, false), |acc, (u, g)| {
                acc.add(&u.mul(g).unwrap()).unwrap()
            })
    }

    #[test]
    fn generator_is_a_member() {
        let g = z()
            .mul(&dz())
            .unwrap()
            .add_scalar(&Rational::new((-5).into(), 2.into()));
        let res = ideal_member_bounded(&g, std::slice::from_ref(&g), 2).unwrap();
        let Membership::Member { cofactors } = res else {
            panic!("expected membership")
        };
        assert_eq!(cofactors, vec![WeylOp::one(1, false)]);
    }

    #[test]
    fn second_euler_power() {
        let e = z().mul(&dz()).unwrap();
        let t = z().pow(2).mul(&dz().pow(2)).unwrap();
        // (z∂ - 1)(z∂) = z²∂²
        assert_eq!(e.add_scalar(&-Rational::one()).mul(&e).unwrap(), t);
        let res = ideal_member_bounded(&t, std::slice::from_ref(&e), 4).unwrap();
        let Membership::Member { cofactors } = res else {
            panic!("expected membership")
        };
        assert_eq!(recombine(&cofactors, &[e]), t);
    }

    #[test]
    fn constant_not_in_derivative_ideal() {
        let res = ideal_member_bounded(&WeylOp::one(1, false), &[dz()], 3).unwrap();
        assert_eq!(res, Membership::NotFound { degree_bound: 3 });
    }

    #[test]
    fn bound_below_target_degree_is_rejected() {
        let t = z().pow(3);
        assert!(ideal_member_bounded(&t, &[dz()], 2).is_err());
        assert!(matches!(
            ideal_member_bounded(&t, &[WeylOp::d(2, false, 0)], 4),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
