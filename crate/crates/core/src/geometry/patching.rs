//! The matrix `Λ` with `θ^i = Λ^i_j du^j`.

use crate::forms::Calculus;
use crate::ncpoly::{NCElement, NcError};
use crate::scalars::ScalarExpr;

use super::GeometryError;

#[derive(Clone, Debug, PartialEq)]
pub struct PatchingReport {
    /// Diagonal of `Λ` from the frame relations.
    pub computed: [NCElement; 2],
    /// `√q diag(v u^-1, u v^-1)`.
    pub displayed: [NCElement; 2],
    /// `computed / displayed`, entry by entry.
    pub ratio: [ScalarExpr; 2],
    /// `θ^i = Λ^i_i du^i` holds with the computed entries.
    pub reproduces_frame: bool,
}

fn monomial_ratio(a: &NCElement, b: &NCElement) -> Result<ScalarExpr, GeometryError> {
    let (ca, a1, a2) = a.as_monomial().ok_or_else(|| NcError::NotInvertible(a.render()))?;
    let (cb, b1, b2) = b.as_monomial().ok_or_else(|| NcError::NotInvertible(b.render()))?;
    if (a1, a2) != (b1, b2) {
        return Err(NcError::NotInvertible(format!("{} / {}", a.render(), b.render())).into());
    }
    Ok(ca.try_div(&cb)?)
}

pub fn patching_lambda() -> Result<PatchingReport, GeometryError> {
    let calc = Calculus::uv();
    let u = NCElement::u();
    let v = NCElement::v();
    let du = calc.d0(&u)?;
    let dv = calc.d0(&v)?;
    debug_assert!(du.c[1].is_zero() && dv.c[0].is_zero());
    let computed = [du.c[0].inverse_monomial()?, dv.c[1].inverse_monomial()?];
    let ui = u.inverse_monomial()?;
    let vi = v.inverse_monomial()?;
    let sq = ScalarExpr::q_half_pow(1);
    let displayed = [(&v * &ui).scale(&sq), (&u * &vi).scale(&sq)];
    let ratio = [
        monomial_ratio(&computed[0], &displayed[0])?,
        monomial_ratio(&computed[1], &displayed[1])?,
    ];
    let reproduces_frame =
        du.left_mul(&computed[0])? == calc.frame(0) && dv.left_mul(&computed[1])? == calc.frame(1);
    Ok(PatchingReport {
        computed,
        displayed,
        ratio,
        reproduces_frame,
    })
}
