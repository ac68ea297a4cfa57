use crate::error::{Error, Result};
use crate::weyl::{Poly, WeylOp};
use crate::Rational;

/// A top-degree form `f dz` on the line, a right module over `D(1)`.
///
/// Functions act by multiplication and a vector field `ζ` acts by
/// `α·ζ = -Lie_ζ(α)`; for `ζ = g∂` this is `-(g f' + f g') dz`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensityForm {
    coeff: Poly,
}

impl DensityForm {
    pub fn new(coeff: Poly) -> Result<Self> {
        if coeff.nvars() != 1 || coeff.is_laurent() {
            return Err(Error::Unsupported(
                "density forms live on the affine line (one plain variable)",
            ));
        }
        Ok(DensityForm { coeff })
    }

    /// `dz`.
    pub fn dz() -> Self {
        DensityForm {
            coeff: Poly::one(1, false),
        }
    }

    pub fn coeff(&self) -> &Poly {
        &self.coeff
    }

    /// `α · f = f α`.
    pub fn act_function(&self, f: &Poly) -> Result<DensityForm> {
        DensityForm::new(self.coeff.mul(f)?)
    }

    /// `α · (g∂) = -Lie_{g∂}(α)`, from the Lie derivative formula.
    pub fn act_vector_field(&self, g: &Poly) -> Result<DensityForm> {
        let f = &self.coeff;
        let lie = g.mul(&f.derivative(0))?.add(&f.mul(&g.derivative(0))?)?;
        DensityForm::new(lie.neg())
    }

    /// Right action of an arbitrary operator. On a normal-ordered term
    /// `z^i ∂^j` the form is first multiplied by `z^i`, then acted on by
    /// `∂` `j` times, where `(f dz)·∂ = -f' dz`.
    pub fn right_act(&self, t: &WeylOp) -> Result<DensityForm> {
        if t.nvars() != 1 || t.is_laurent() {
            return Err(Error::Unsupported(
                "density forms are acted on by one-variable plain operators",
            ));
        }
        let mut out = Poly::zero(1, false);
        for (key, c) in t.terms() {
            let zi = Poly::monomial(1, false, Rational::from_integer(1.into()), key.x.clone())?;
            let mut f = self.coeff.mul(&zi)?;
            for _ in 0..key.d.get(0) {
                f = f.derivative(0).neg();
            }
            out = out.add(&f.scale(c))?;
        }
        DensityForm::new(out)
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

    #[test]
    fn action_examples() {
        let zpoly = Poly::var(1, false, 0);
        assert_eq!(DensityForm::dz().right_act(&z()).unwrap().coeff(), &zpoly);
        assert!(DensityForm::dz()
            .right_act(&dz())
            .unwrap()
            .coeff()
            .is_zero());
        let z_dz = DensityForm::new(zpoly).unwrap();
        assert_eq!(
            z_dz.right_act(&dz()).unwrap(),
            DensityForm::dz()
                .right_act(&WeylOp::constant(
                    1,
                    false,
                    Rational::from_integer((-1).into())
                ))
                .unwrap()
        );
    }

    #[test]
    fn operator_route_matches_lie_formula() {
        let f = Poly::from_terms(
            1,
            false,
            [
                (vec![2].into(), Rational::from_integer(3.into())),
                (vec![0].into(), Rational::from_integer(1.into())),
            ],
        )
        .unwrap();
        let g = Poly::from_terms(
            1,
            false,
            [(vec![1].into(), Rational::from_integer((-2).into()))],
        )
        .unwrap();
        let alpha = DensityForm::new(f).unwrap();
        let field = g.to_op().mul(&dz()).unwrap();
        assert_eq!(
            alpha.right_act(&field).unwrap(),
            alpha.act_vector_field(&g).unwrap()
        );
    }

    #[test]
    fn rejects_other_arities() {
        assert!(DensityForm::new(Poly::one(2, false)).is_err());
        assert!(DensityForm::dz().right_act(&WeylOp::d(1, true, 0)).is_err());
    }
}
