//! Fraction-free Gauss-Jordan elimination over the integers.
//!
//! Rational rows are scaled to primitive integer rows, eliminated with
//! cross-multiplication, and re-normalised by their content after every
//! step. Division into rationals happens only when a kernel vector or a
//! solution is read off the final echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Reduced echelon form with integer rows.
///
/// Every pivot row is primitive with a positive pivot, and each pivot column
/// is zero outside its pivot row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.pivots.contains(c))
            .collect()
    }

    /// Rows scaled so every pivot is one.
    pub fn normalized_rows(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &p)| {
                row.iter()
                    .map(|v| Rational::new(v.clone(), row[p].clone()))
                    .collect()
            })
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect();
    primitive(ints)
}

fn primitive(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

/// Reduced echelon form of the given rational rows (all of length `ncols`).
pub fn echelon(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length must equal the column count");
            integer_row(r)
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..ncols {
        if next == work.len() {
            break;
        }
        let Some(found) = (next..work.len())
            .filter(|&r| !work[r][col].is_zero())
            .min_by_key(|&r| work[r][col].abs())
        else {
            continue;
        };
        work.swap(next, found);
        if work[next][col].is_negative() {
            for v in work[next].iter_mut() {
                *v = -&*v;
            }
        }
        let pivot_row = work[next].clone();
        let pv = pivot_row[col].clone();
        for (r, row) in work.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            let reduced: Vec<BigInt> = row
                .iter()
                .zip(&pivot_row)
                .map(|(a, b)| &pv * a - &factor * b)
                .collect();
            *row = primitive(reduced);
        }
        pivots.push(col);
        next += 1;
    }
    work.truncate(next);
    Echelon {
        rows: work,
        pivots,
        ncols,
    }
}

/// Basis of `{ v : A v = 0 }` in reduced echelon form: the first nonzero
/// coordinate of every vector is one, and that coordinate vanishes in all
/// other basis vectors.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let ech = echelon(rows, ncols);
    let raw: Vec<Vec<Rational>> = ech
        .free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
                v[p] = -Rational::new(row[f].clone(), row[p].clone());
            }
            v
        })
        .collect();
    rref(&raw, ncols)
}

/// Nonzero rows of the reduced row echelon form.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    echelon(rows, ncols).normalized_rows()
}

/// A solution of `A x = b` with all free coordinates set to zero, or `None`
/// when the system is inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side entry per row");
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let ech = echelon(&augmented, ncols + 1);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = Rational::new(row[ncols].clone(), row[p].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|row| row.iter().map(|&v| r(v)).collect())
            .collect()
    }

    fn apply(rows: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
        rows.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(r(0), |a, b| a + b)
            })
            .collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&a, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(apply(&a, v).iter().all(Zero::is_zero));
        }
        // echelon normalisation: leading ones in distinct columns
        assert_eq!(k[0][0], r(1));
        assert_eq!(k[1][0], r(0));
        assert_eq!(k[1][1], r(1));
    }

    #[test]
    fn kernel_of_invertible_matrix_is_empty() {
        let a = mat(&[&[2, 1], &[1, 1]]);
        assert!(kernel(&a, 2).is_empty());
    }

    #[test]
    fn kernel_with_no_rows_is_everything() {
        let k = kernel(&[], 2);
        assert_eq!(k, mat(&[&[1, 0], &[0, 1]]));
    }

    #[test]
    fn rational_entries_are_cleared() {
        let a = vec![vec![
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 3.into()),
        ]];
        let k = kernel(&a, 2);
        assert_eq!(k, vec![vec![r(1), Rational::new((-3).into(), 2.into())]]);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let x = solve(&a, &[r(3), r(1)], 2).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
        let b = mat(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[r(1), r(3)], 2).is_none());
    }

    #[test]
    fn echelon_reports_rank() {
        let a = mat(&[&[0, 0, 1], &[0, 2, 4], &[0, 1, 2]]);
        let e = echelon(&a, 3);
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots, vec![1, 2]);
        assert_eq!(e.free_columns(), vec![0]);
    }
}
