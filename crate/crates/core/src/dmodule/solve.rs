use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::weyl::{MultiIndex, Poly, WeylOp};
use crate::Rational;

/// A `p × q` matrix of operators sharing arity and Laurent flag. Row `i`
/// encodes the equation `Σ_j P_ij f_j = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpMatrix {
    entries: Vec<Vec<WeylOp>>,
    nvars: usize,
    laurent: bool,
}

impl OpMatrix {
    pub fn new(entries: Vec<Vec<WeylOp>>) -> Result<Self> {
        let first = entries
            .first()
            .and_then(|r| r.first())
            .ok_or(Error::Unsupported("operator matrix must be non-empty"))?;
        let (nvars, laurent) = (first.nvars(), first.is_laurent());
        let cols = entries[0].len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    got: row.len(),
                });
            }
            for op in row {
                if op.nvars() != nvars {
                    return Err(Error::ArityMismatch {
                        left: nvars,
                        right: op.nvars(),
                    });
                }
                if op.is_laurent() != laurent {
                    return Err(Error::LaurentMismatch);
                }
            }
        }
        Ok(OpMatrix {
            entries,
            nvars,
            laurent,
        })
    }

    /// A single scalar equation `P f = 0`.
    pub fn scalar(op: WeylOp) -> Self {
        OpMatrix::new(vec![vec![op]]).expect("one entry is always consistent")
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_laurent(&self) -> bool {
        self.laurent
    }

    pub fn entry(&self, i: usize, j: usize) -> &WeylOp {
        &self.entries[i][j]
    }

    /// `[P_ij][f_j]^T`.
    pub fn apply(&self, f: &PolyVec) -> Result<Vec<Poly>> {
        if f.len() != self.cols() {
            return Err(Error::ArityMismatch {
                left: self.cols(),
                right: f.len(),
            });
        }
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&f.0)
                    .try_fold(Poly::zero(self.nvars, self.laurent), |acc, (op, fj)| {
                        acc.add(&op.apply(fj)?)
                    })
            })
            .collect()
    }

    pub fn annihilates(&self, f: &PolyVec) -> Result<bool> {
        Ok(self.apply(f)?.iter().all(Poly::is_zero))
    }
}

/// A candidate solution `(f_1, …, f_q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVec(pub Vec<Poly>);

impl PolyVec {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.0
    }
}

/// Reduced-echelon basis of the polynomial solutions of degree at most
/// `degree_bound`.
///
/// Coordinates are ordered component-major, and by ascending graded-lex
/// monomial inside a component; each basis vector's first nonzero
/// coordinate is one and is zero in every other basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionBasis {
    pub degree_bound: usize,
    pub basis: Vec<PolyVec>,
}

impl SolutionBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// All exponent vectors in `n` variables of total degree `≤ d`, ascending
/// graded-lex.
pub fn monomials_up_to(n: usize, d: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if cur.len() == n {
            out.push(MultiIndex::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d as i64, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// Polynomial solutions of `sys` with every component of degree `≤ d`.
pub fn poly_solutions(sys: &OpMatrix, d: usize) -> Result<SolutionBasis> {
    if sys.is_laurent() {
        return Err(Error::Unsupported(
            "polynomial solutions of laurent systems have no finite monomial basis",
        ));
    }
    let n = sys.nvars();
    let monos = monomials_up_to(n, d);
    let q = sys.cols();
    let ncols = q * monos.len();

    // one equation per (row, output monomial)
    let mut equations: BTreeMap<(usize, MultiIndex), Vec<Rational>> = BTreeMap::new();
    for i in 0..sys.rows() {
        for j in 0..q {
            let op = sys.entry(i, j);
            for (m_idx, m) in monos.iter().enumerate() {
                let col = j * monos.len() + m_idx;
                let basis_poly =
                    Poly::monomial(n, false, Rational::from_integer(1.into()), m.clone())?;
                for (out_mono, c) in op.apply(&basis_poly)?.terms() {
                    equations
                        .entry((i, out_mono.clone()))
                        .or_insert_with(|| vec![Rational::zero(); ncols])[col] += c;
                }
            }
        }
    }
    let rows: Vec<Vec<Rational>> = equations.into_values().collect();
    let basis = linalg::kernel(&rows, ncols)
        .into_iter()
        .map(|v| {
            PolyVec(
                (0..q)
                    .map(|j| {
                        Poly::from_terms(
                            n,
                            false,
                            monos
                                .iter()
                                .enumerate()
                                .map(|(m_idx, m)| (m.clone(), v[j * monos.len() + m_idx].clone())),
                        )
                        .expect("non-negative monomials")
                    })
                    .collect(),
            )
        })
        .collect();
    Ok(SolutionBasis {
        degree_bound: d,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn z() -> WeylOp {
        WeylOp::x(1, false, 0)
    }

    fn dz() -> WeylOp {
        WeylOp::d(1, false, 0)
    }

    fn mono_poly(n: usize, e: Vec<i64>) -> Poly {
        Poly::monomial(n, false, q(1), e.into()).unwrap()
    }

    #[test]
    fn monomial_enumeration() {
        let m = monomials_up_to(2, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], MultiIndex::zeros(2));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(monomials_up_to(3, 3).len(), 20);
    }

    #[test]
    fn kernel_of_derivative() {
        let sol = poly_solutions(&OpMatrix::scalar(dz()), 4).unwrap();
        assert_eq!(sol.basis, vec![PolyVec(vec![Poly::one(1, false)])]);
    }

    #[test]
    fn exponential_has_no_polynomial_solution() {
        let sys = OpMatrix::scalar(dz().add_scalar(&q(-1)));
        for d in 0..=8 {
            assert!(poly_solutions(&sys, d).unwrap().basis.is_empty());
        }
    }

    #[test]
    fn euler_operator_picks_out_one_power() {
        let p = z().mul(&dz()).unwrap().add_scalar(&q(-3));
        let sol = poly_solutions(&OpMatrix::scalar(p.clone()), 5).unwrap();
        assert_eq!(sol.basis, vec![PolyVec(vec![mono_poly(1, vec![3])])]);
        assert!(poly_solutions(&OpMatrix::scalar(p), 2)
            .unwrap()
            .basis
            .is_empty());
    }

    #[test]
    fn simultaneous_kernel() {
        let sys = OpMatrix::new(vec![
            vec![WeylOp::d(2, false, 0)],
            vec![WeylOp::d(2, false, 1)],
        ])
        .unwrap();
        let sol = poly_solutions(&sys, 3).unwrap();
        assert_eq!(sol.basis, vec![PolyVec(vec![Poly::one(2, false)])]);
    }

    #[test]
    fn two_component_system() {
        // f1' = f2, f2' = 0 → (1, 0) and (z, 1)
        let sys = OpMatrix::new(vec![
            vec![dz(), WeylOp::constant(1, false, q(-1))],
            vec![WeylOp::zero(1, false), dz()],
        ])
        .unwrap();
        let sol = poly_solutions(&sys, 3).unwrap();
        assert_eq!(sol.dimension(), 2);
        for v in &sol.basis {
            assert!(sys.annihilates(v).unwrap());
        }
        assert_eq!(
            sol.basis[0],
            PolyVec(vec![Poly::one(1, false), Poly::zero(1, false)])
        );
        assert_eq!(
            sol.basis[1],
            PolyVec(vec![mono_poly(1, vec![1]), Poly::one(1, false)])
        );
    }

    #[test]
    fn rejects_laurent_and_ragged_input() {
        let sys = OpMatrix::scalar(WeylOp::d(1, true, 0));
        assert!(matches!(
            poly_solutions(&sys, 2),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            OpMatrix::new(vec![vec![dz(), dz()], vec![dz()]]),
            Err(Error::RaggedMatrix { .. })
        ));
        assert!(matches!(
            OpMatrix::new(vec![vec![dz(), WeylOp::d(2, false, 0)]]),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
