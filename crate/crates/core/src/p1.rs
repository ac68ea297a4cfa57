//! Differential operators on the projective line.
//!
//! The line is covered by `U0` (coordinate `z`) and `U1` (coordinate
//! `ζ = 1/z`). Operators on `U0` restrict to the overlap unchanged; operators
//! on `U1` restrict through `ζ ↦ z⁻¹`, `∂_ζ ↦ -z²∂`. All three chart algebras
//! are one-variable [`WeylOp`]s, the overlap with the Laurent flag set.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::weyl::{MultiIndex, TermKey, WeylOp};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chart {
    U0,
    U1,
    U01,
}

/// An operator tagged with the chart it lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartOp {
    chart: Chart,
    op: WeylOp,
}

impl ChartOp {
    pub fn new(chart: Chart, op: WeylOp) -> Result<Self> {
        if op.nvars() != 1 {
            return Err(Error::ArityMismatch {
                left: 1,
                right: op.nvars(),
            });
        }
        if op.is_laurent() != (chart == Chart::U01) {
            return Err(Error::LaurentMismatch);
        }
        Ok(ChartOp { chart, op })
    }

    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn op(&self) -> &WeylOp {
        &self.op
    }

    /// Restriction to the overlap.
    pub fn restrict(&self) -> Result<ChartOp> {
        let op = match self.chart {
            Chart::U0 => self.op.to_laurent(),
            Chart::U1 => transition_u1_to_u01(&self.op)?,
            Chart::U01 => self.op.clone(),
        };
        ChartOp::new(Chart::U01, op)
    }
}

fn check_chart_operator(op: &WeylOp) -> Result<()> {
    if op.nvars() != 1 {
        return Err(Error::ArityMismatch {
            left: 1,
            right: op.nvars(),
        });
    }
    if op.is_laurent() {
        return Err(Error::Unsupported(
            "chart operators must be plain, not laurent",
        ));
    }
    Ok(())
}

fn laurent_monomial(c: Rational, x: i64, d: i64) -> WeylOp {
    WeylOp::monomial(1, true, c, vec![x].into(), vec![d].into()).expect("valid laurent monomial")
}

/// Image of a `U1` operator on the overlap: `ζ ↦ z⁻¹`, `∂_ζ ↦ -z²∂`.
pub fn transition_u1_to_u01(op: &WeylOp) -> Result<WeylOp> {
    check_chart_operator(op)?;
    let dzeta = laurent_monomial(-Rational::one(), 2, 1);
    let mut out = WeylOp::zero(1, true);
    for (key, c) in op.terms() {
        let zeta_part = laurent_monomial(c.clone(), -key.x.get(0), 0);
        let term = zeta_part.mul(&dzeta.pow(key.d.get(0) as u32))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// A pair of chart operators that agree on the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSection {
    pub u0_form: WeylOp,
    pub u1_form: WeylOp,
}

impl GlobalSection {
    /// Checks `restrict(u0_form) = transition(u1_form)`.
    pub fn is_consistent(&self) -> Result<bool> {
        check_chart_operator(&self.u0_form)?;
        Ok(self.u0_form.to_laurent() == transition_u1_to_u01(&self.u1_form)?)
    }
}

fn chart_monomials(max_order: usize, max_coeff_degree: usize) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = (0..=max_order as i64)
        .flat_map(|j| (0..=max_coeff_degree as i64).map(move |i| (i, j)))
        .collect();
    out.sort_by_key(|&(i, j)| TermKey {
        x: MultiIndex::new(vec![i]),
        d: MultiIndex::new(vec![j]),
    });
    out
}

fn plain_monomial(c: Rational, i: i64, j: i64) -> WeylOp {
    WeylOp::monomial(1, false, c, vec![i].into(), vec![j].into()).expect("valid monomial")
}

/// Rows of the coefficient system over the overlap's monomial coordinates,
/// one column per image.
fn coordinate_rows(images: &[WeylOp]) -> Vec<Vec<Rational>> {
    let mut rows: BTreeMap<TermKey, Vec<Rational>> = BTreeMap::new();
    for (col, img) in images.iter().enumerate() {
        for (key, c) in img.terms() {
            rows.entry(key.clone())
                .or_insert_with(|| vec![Rational::zero(); images.len()])[col] = c.clone();
        }
    }
    rows.into_values().collect()
}

/// Looks for a `U1` operator with `ζ`-degree and order at most
/// `max_search_degree` whose restriction equals that of `u0_op`. `None`
/// means no partner exists inside the bound.
pub fn is_global(u0_op: &WeylOp, max_search_degree: usize) -> Result<Option<GlobalSection>> {
    check_chart_operator(u0_op)?;
    let monos = chart_monomials(max_search_degree, max_search_degree);
    let images = monos
        .iter()
        .map(|&(i, j)| transition_u1_to_u01(&plain_monomial(Rational::one(), i, j)))
        .collect::<Result<Vec<_>>>()?;
    let target = u0_op.to_laurent();

    // target terms must be representable too
    let mut all = images.clone();
    all.push(target.clone());
    let mut rows = coordinate_rows(&all);
    let rhs: Vec<Rational> = rows
        .iter_mut()
        .map(|r| r.pop().expect("target column"))
        .collect();

    Ok(linalg::solve(&rows, &rhs, monos.len()).map(|x| {
        let u1_form = monos
            .iter()
            .zip(x)
            .fold(WeylOp::zero(1, false), |acc, (&(i, j), c)| {
                acc.add(&plain_monomial(c, i, j)).expect("same algebra")
            });
        GlobalSection {
            u0_form: u0_op.clone(),
            u1_form,
        }
    }))
}

/// Global sections of order at most `max_order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSectionsBasis {
    pub max_order: usize,
    /// Coefficient-degree bound used in both charts; `2 · max_order`.
    pub coefficient_degree_bound: usize,
    pub sections: Vec<GlobalSection>,
}

/// Echelonized basis of the global sections of filtration order at most
/// `max_order`.
///
/// A global section of order `≤ m` is a combination of words of length `≤ m`
/// in `∂`, `z∂`, `z²∂`, so its coefficients in either chart have degree
/// `≤ 2m`; both charts are searched up to that degree. The `u0_form`s are in
/// reduced echelon form over ascending graded-lex monomials.
pub fn global_sections_basis(max_order: usize) -> Result<GlobalSectionsBasis> {
    let bound = 2 * max_order;
    let monos = chart_monomials(max_order, bound);
    let m = monos.len();
    // columns: u0 monomials, then u1 monomials with negated images
    let mut images: Vec<WeylOp> = monos
        .iter()
        .map(|&(i, j)| plain_monomial(Rational::one(), i, j).to_laurent())
        .collect();
    for &(i, j) in &monos {
        images.push(transition_u1_to_u01(&plain_monomial(
            -Rational::one(),
            i,
            j,
        ))?);
    }
    let rows = coordinate_rows(&images);
    let kernel = linalg::kernel(&rows, 2 * m);
    let sections = kernel
        .into_iter()
        .map(|v| {
            let build = |offset: usize| {
                monos
                    .iter()
                    .enumerate()
                    .fold(WeylOp::zero(1, false), |acc, (k, &(i, j))| {
                        acc.add(&plain_monomial(v[offset + k].clone(), i, j))
                            .expect("same algebra")
                    })
            };
            GlobalSection {
                u0_form: build(0),
                u1_form: build(m),
            }
        })
        .collect();
    Ok(GlobalSectionsBasis {
        max_order,
        coefficient_degree_bound: bound,
        sections,
    })
}

/// The images of `E, H, F`: `(-∂, -2z∂, z²∂)`.
pub fn sl2_triple() -> (WeylOp, WeylOp, WeylOp) {
    let r = |n: i64| Rational::from_integer(n.into());
    (
        plain_monomial(r(-1), 0, 1),
        plain_monomial(r(-2), 1, 1),
        plain_monomial(r(1), 2, 1),
    )
}

/// `H² + 2EF + 2FE` evaluated on the triple; identically zero.
pub fn casimir_image() -> WeylOp {
    let (e, h, f) = sl2_triple();
    let two = Rational::from_integer(2.into());
    let h2 = h.mul(&h).expect("same algebra");
    let ef = e.mul(&f).expect("same algebra").scale(&two);
    let fe = f.mul(&e).expect("same algebra").scale(&two);
    h2.add(&ef).and_then(|s| s.add(&fe)).expect("same algebra")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn transition_of_generators() {
        let zeta = WeylOp::x(1, false, 0);
        let dzeta = WeylOp::d(1, false, 0);
        assert_eq!(
            transition_u1_to_u01(&zeta).unwrap(),
            laurent_monomial(r(1), -1, 0)
        );
        assert_eq!(
            transition_u1_to_u01(&dzeta).unwrap(),
            laurent_monomial(r(-1), 2, 1)
        );
        let img = transition_u1_to_u01(&dzeta.commutator(&zeta).unwrap()).unwrap();
        assert_eq!(img, WeylOp::one(1, true));
        let direct = transition_u1_to_u01(&dzeta)
            .unwrap()
            .commutator(&transition_u1_to_u01(&zeta).unwrap())
            .unwrap();
        assert_eq!(direct, WeylOp::one(1, true));
        assert!(transition_u1_to_u01(&WeylOp::d(1, true, 0)).is_err());
    }

    #[test]
    fn global_checks() {
        let z2d = plain_monomial(r(1), 2, 1);
        let sec = is_global(&z2d, 3).unwrap().expect("z²∂ is global");
        assert_eq!(sec.u1_form, plain_monomial(r(-1), 0, 1));
        assert!(sec.is_consistent().unwrap());
        assert!(is_global(&plain_monomial(r(-1), 0, 1), 3)
            .unwrap()
            .is_some());
        assert!(is_global(&WeylOp::x(1, false, 0), 6).unwrap().is_none());
    }

    #[test]
    fn low_order_bases() {
        let b0 = global_sections_basis(0).unwrap();
        assert_eq!(b0.sections.len(), 1);
        assert_eq!(b0.sections[0].u0_form, WeylOp::one(1, false));
        let b1 = global_sections_basis(1).unwrap();
        let u0: Vec<_> = b1.sections.iter().map(|s| s.u0_form.clone()).collect();
        assert_eq!(
            u0,
            vec![
                WeylOp::one(1, false),
                plain_monomial(r(1), 0, 1),
                plain_monomial(r(1), 1, 1),
                plain_monomial(r(1), 2, 1)
            ]
        );
        assert!(b1.sections.iter().all(|s| s.is_consistent().unwrap()));
    }

    #[test]
    fn casimir_components() {
        let (e, h, f) = sl2_triple();
        assert_eq!(
            e.mul(&f).unwrap(),
            plain_monomial(r(-1), 2, 2)
                .add(&plain_monomial(r(-2), 1, 1))
                .unwrap()
        );
        assert_eq!(
            h.mul(&h).unwrap(),
            plain_monomial(r(4), 2, 2)
                .add(&plain_monomial(r(4), 1, 1))
                .unwrap()
        );
        assert!(casimir_image().is_zero());
    }

    #[test]
    fn chart_op_flags() {
        assert!(ChartOp::new(Chart::U01, WeylOp::d(1, false, 0)).is_err());
        let u1 = ChartOp::new(Chart::U1, WeylOp::d(1, false, 0)).unwrap();
        assert_eq!(u1.restrict().unwrap().op(), &laurent_monomial(r(-1), 2, 1));
    }
}
