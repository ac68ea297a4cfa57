use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::weyl::WeylOp;
use crate::Rational;

/// Truncation of `D/D(z∂ - λ)` to the weight vectors `v_k`, `|k| ≤ N`.
///
/// `v_0` plays the role of `z^λ`; `z·v_k = v_{k+1}` and
/// `∂·v_k = (λ + k) v_{k-1}`. Moves that leave the window are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightWindow {
    lambda: Rational,
    halfwidth: i64,
}

/// Finite combination of window vectors, keyed by weight index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WindowVector(BTreeMap<i64, Rational>);

impl WindowVector {
    pub fn basis(k: i64) -> Self {
        WindowVector(BTreeMap::from([(k, Rational::from_integer(1.into()))]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> Rational {
        self.0.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.0.iter()
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = WindowVector::default();
        for (k, c) in &self.0 {
            out.add_term(*k, c * s);
        }
        out
    }
}

impl WeightWindow {
    /// Requires `N ≥ 1`.
    pub fn new(lambda: Rational, halfwidth: i64) -> Result<Self> {
        if halfwidth < 1 {
            return Err(Error::Unsupported("window halfwidth must be at least 1"));
        }
        Ok(WeightWindow { lambda, halfwidth })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub fn halfwidth(&self) -> i64 {
        self.halfwidth
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        -self.halfwidth..=self.halfwidth
    }

    /// Coefficient of `∂·v_k = (λ + k) v_{k-1}`.
    pub fn d_coefficient(&self, k: i64) -> Rational {
        &self.lambda + Rational::from_integer(k.into())
    }

    fn check(&self, k: i64) -> Result<()> {
        if k.abs() > self.halfwidth {
            return Err(Error::OutsideWindow {
                index: k,
                halfwidth: self.halfwidth,
            });
        }
        Ok(())
    }

    pub fn apply_z(&self, v: &WindowVector) -> WindowVector {
        let mut out = WindowVector::default();
        for (k, c) in &v.0 {
            if *k < self.halfwidth {
                out.add_term(k + 1, c.clone());
            }
        }
        out
    }

    pub fn apply_d(&self, v: &WindowVector) -> WindowVector {
        let mut out = WindowVector::default();
        for (k, c) in &v.0 {
            if *k > -self.halfwidth {
                out.add_term(k - 1, c * self.d_coefficient(*k));
            }
        }
        out
    }

    /// Action of a one-variable plain operator, term by term:
    /// `c z^i ∂^j · v = c z^i (∂^j v)`.
    pub fn act(&self, op: &WeylOp, v: &WindowVector) -> Result<WindowVector> {
        if op.nvars() != 1 || op.is_laurent() {
            return Err(Error::Unsupported(
                "the weight ladder carries one-variable plain operators only",
            ));
        }
        let mut out = WindowVector::default();
        for (key, c) in op.terms() {
            let mut w = v.clone();
            for _ in 0..key.d.get(0) {
                w = self.apply_d(&w);
            }
            for _ in 0..key.x.get(0) {
                w = self.apply_z(&w);
            }
            for (k, wc) in w.0 {
                out.add_term(k, wc * c);
            }
        }
        Ok(out)
    }

    pub fn vector(&self, k: i64) -> Result<WindowVector> {
        self.check(k)?;
        Ok(WindowVector::basis(k))
    }
}

/// Indices reachable from `v_{k0}` by `z` and `∂` moves inside the window;
/// a `∂` move with coefficient zero is blocked.
pub fn window_generates(w: &WeightWindow, k0: i64) -> Result<BTreeSet<i64>> {
    w.check(k0)?;
    let mut seen = BTreeSet::from([k0]);
    let mut queue = VecDeque::from([k0]);
    while let Some(k) = queue.pop_front() {
        let mut next = Vec::with_capacity(2);
        if k < w.halfwidth {
            next.push(k + 1);
        }
        if k > -w.halfwidth && !w.d_coefficient(k).is_zero() {
            next.push(k - 1);
        }
        for m in next {
            if seen.insert(m) {
                queue.push_back(m);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn non_integral_weight_has_no_blocked_moves() {
        let w = WeightWindow::new(q(1, 2), 3).unwrap();
        for k in -2..=3 {
            assert!(!w.apply_d(&WindowVector::basis(k)).is_zero());
        }
        let full: BTreeSet<i64> = w.indices().collect();
        assert_eq!(window_generates(&w, 0).unwrap(), full);
    }

    #[test]
    fn integral_weight_blocks_at_minus_lambda() {
        let w = WeightWindow::new(q(0, 1), 3).unwrap();
        assert!(w.apply_d(&WindowVector::basis(0)).is_zero());
        assert_eq!(
            window_generates(&w, 1).unwrap(),
            BTreeSet::from([0, 1, 2, 3])
        );
        assert_eq!(window_generates(&w, -1).unwrap(), w.indices().collect());
    }

    #[test]
    fn euler_eigenvalues() {
        let w = WeightWindow::new(q(1, 2), 3).unwrap();
        let z = WeylOp::x(1, false, 0);
        let d = WeylOp::d(1, false, 0);
        let e = z.mul(&d).unwrap();
        let v2 = w.vector(2).unwrap();
        assert_eq!(w.act(&e, &v2).unwrap(), v2.scale(&q(5, 2)));
    }

    #[test]
    fn window_errors() {
        assert!(WeightWindow::new(q(0, 1), 0).is_err());
        let w = WeightWindow::new(q(0, 1), 2).unwrap();
        assert!(matches!(
            window_generates(&w, 3),
            Err(Error::OutsideWindow { .. })
        ));
        assert!(w
            .act(&WeylOp::d(2, false, 0), &WindowVector::basis(0))
            .is_err());
    }
}
